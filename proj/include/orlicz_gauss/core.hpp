#ifndef ORLICZ_GAUSS_CORE_HPP
#define ORLICZ_GAUSS_CORE_HPP

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace orlicz_gauss {

inline constexpr const char* kVersion = "0.1.0";

// Overflow convention: any value whose magnitude exceeds this threshold (or
// that is non-finite) collapses to +infinity, so modulars and bisections see
// a total order that includes divergence.
inline constexpr double kOverflowThreshold = 1e300;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double clamp_overflow(double v) {
    if (!std::isfinite(v) || v > kOverflowThreshold) return kInf;
    return v;
}

// Neumaier compensated summation, fixed order.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Thread cap from ORLICZ_GAUSS_THREADS (default 1: fully deterministic and
// sequential unless the caller opts in).
inline unsigned max_threads() {
    static const unsigned cached = [] {
        const char* env = std::getenv("ORLICZ_GAUSS_THREADS");
        if (!env) return 1u;
        const long v = std::strtol(env, nullptr, 10);
        if (v <= 1) return 1u;
        const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        return std::min(static_cast<unsigned>(v), hw);
    }();
    return cached;
}

// Deterministic chunked reduction: results are grouped into fixed-size chunks
// summed in index order, so the value is independent of the thread count.
template <class Fn>
double chunked_weighted_sum(std::size_t n, const Fn& term) {
    constexpr std::size_t kChunk = 8192;
    const std::size_t num_chunks = (n + kChunk - 1) / kChunk;
    const unsigned threads = max_threads();

    std::vector<double> chunk_sums(num_chunks, 0.0);
    auto run_chunk = [&](std::size_t c) {
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(lo + kChunk, n);
        CompensatedSum s;
        for (std::size_t i = lo; i < hi; ++i) s.add(term(i));
        chunk_sums[c] = s.value();
    };

    if (threads <= 1 || num_chunks <= 1) {
        for (std::size_t c = 0; c < num_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const unsigned workers = std::min<std::size_t>(threads, num_chunks);
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t c = next.fetch_add(1); c < num_chunks;
                     c = next.fetch_add(1)) {
                    run_chunk(c);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    CompensatedSum total;
    for (double s : chunk_sums) {
        if (!std::isfinite(s)) return kInf;
        total.add(s);
    }
    return clamp_overflow(total.value());
}

}  // namespace orlicz_gauss

#endif  // ORLICZ_GAUSS_CORE_HPP
