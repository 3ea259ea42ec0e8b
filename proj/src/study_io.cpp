#include "vofde/study_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vofde {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string opt_d(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

std::string opt_i(const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::optional<double> parse_d(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::stod(s);
}

std::optional<int> parse_i(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::stoi(s);
}

}  // namespace

std::string to_csv(const std::vector<StudyRow>& rows) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.n << ',' << r.solver << ',' << opt_d(r.error) << ','
            << opt_d(r.order) << ',' << opt_d(r.cpu_m) << ','
            << opt_d(r.cpu_s) << ',' << opt_i(r.s) << ',' << opt_i(r.k) << ','
            << opt_i(r.band) << ',' << opt_i(r.base) << '\n';
    }
    return out.str();
}

std::vector<StudyRow> from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::invalid_argument("from_csv: bad or missing header");
    std::vector<StudyRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 10)
            throw std::invalid_argument("from_csv: expected 10 fields, got " +
                                        std::to_string(f.size()));
        StudyRow r;
        r.n = std::stoll(f[0]);
        r.solver = f[1];
        r.error = parse_d(f[2]);
        r.order = parse_d(f[3]);
        r.cpu_m = parse_d(f[4]);
        r.cpu_s = parse_d(f[5]);
        r.s = parse_i(f[6]);
        r.k = parse_i(f[7]);
        r.band = parse_i(f[8]);
        r.base = parse_i(f[9]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_csv_file(const std::string& path, const std::vector<StudyRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << to_csv(rows);
}

std::vector<int> parse_size_range(const std::string& text) {
    auto parse_one = [](const std::string& s) {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size() || v < 1)
            throw std::invalid_argument("grid sizes must be integers >= 1: '" +
                                        s + "'");
        return v;
    };
    std::vector<int> sizes;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int lo = parse_one(text.substr(0, dots));
        const int hi = parse_one(text.substr(dots + 2));
        if (hi < lo)
            throw std::invalid_argument("range upper bound below lower bound");
        for (long long n = lo; n <= hi; n *= 2) sizes.push_back(static_cast<int>(n));
        return sizes;
    }
    for (const auto& piece : split(text, ','))
        sizes.push_back(parse_one(piece));
    return sizes;
}

std::string format_table(const std::vector<StudyRow>& rows) {
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%8s %-6s %12s %7s %10s %10s %4s %3s %5s %5s\n",
                  "n", "solver", "error", "order", "cpu_m", "cpu_s", "s", "k",
                  "band", "base");
    out << buf;
    for (const auto& r : rows) {
        auto d = [](const std::optional<double>& v, const char* fmt) {
            char b[64];
            if (!v) return std::string("-");
            std::snprintf(b, sizeof b, fmt, *v);
            return std::string(b);
        };
        auto i = [](const std::optional<int>& v) {
            return v ? std::to_string(*v) : std::string("-");
        };
        std::snprintf(buf, sizeof buf,
                      "%8lld %-6s %12s %7s %10s %10s %4s %3s %5s %5s",
                      r.n, r.solver.c_str(), d(r.error, "%.5e").c_str(),
                      d(r.order, "%.2f").c_str(), d(r.cpu_m, "%.3f").c_str(),
                      d(r.cpu_s, "%.3f").c_str(), i(r.s).c_str(),
                      i(r.k).c_str(), i(r.band).c_str(), i(r.base).c_str());
        out << buf;
        if (r.quad_tol) out << "  tol=" << d(r.quad_tol, "%.1e");
        if (r.note) out << "  FAILED: " << *r.note;
        out << '\n';
    }
    return out.str();
}

}  // namespace vofde
