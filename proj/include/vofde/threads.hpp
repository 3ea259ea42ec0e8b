#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <utility>

namespace vofde {

// Worker-thread cap for OpenMP regions. Reads VOFDE_THREADS once; 0 or
// unset means the OpenMP runtime default.
int max_threads();

// Exceptions may not escape an OpenMP region; loop bodies that call user
// callbacks run through this collector and the first exception is rethrown
// after the region ends.
class ExceptionCollector {
public:
    template <typename Fn>
    void run(Fn&& fn) noexcept {
        if (failed_.load(std::memory_order_relaxed)) return;
        try {
            std::forward<Fn>(fn)();
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu_);
            if (!ptr_) ptr_ = std::current_exception();
            failed_.store(true, std::memory_order_relaxed);
        }
    }
    void rethrow() {
        if (ptr_) std::rethrow_exception(ptr_);
    }

private:
    std::mutex mu_;
    std::exception_ptr ptr_;
    std::atomic<bool> failed_{false};
};

}  // namespace vofde
