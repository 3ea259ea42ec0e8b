#pragma once

#include <string>
#include <vector>

#include "vofde/experiments.hpp"

namespace vofde {

// Pinned CSV schema; floats are printed with 17 significant digits so the
// text round-trips bit-exactly.
inline constexpr const char* kCsvHeader =
    "n,solver,error,order,cpu_m_seconds,cpu_s_seconds,s,k,band,base";

std::string format_double(double v);

std::string to_csv(const std::vector<StudyRow>& rows);
std::vector<StudyRow> from_csv(const std::string& text);
void write_csv_file(const std::string& path, const std::vector<StudyRow>& rows);

// Aligned human-readable table (errors in scientific form, orders to two
// decimals, timings in seconds).
std::string format_table(const std::vector<StudyRow>& rows);

// Grid-size syntax: "A" -> {A}; "A..B" -> doublings A, 2A, 4A, ... <= B;
// "a,b,c" -> the listed values. All sizes must be >= 1.
std::vector<int> parse_size_range(const std::string& text);

}  // namespace vofde
