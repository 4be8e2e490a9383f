#pragma once

// Deterministic chunked reductions.
//
// Work over [begin, end) is cut into chunks whose boundaries depend only on
// the range and the chunk size, never on the thread count.  Each chunk is
// reduced independently (possibly on different threads) and the partials are
// merged in chunk order, so floating-point results are bit-identical for any
// OMP_NUM_THREADS.

#include <cmath>
#include <cstdint>
#include <exception>
#include <vector>

#include <omp.h>

namespace ramanujan {

// Neumaier compensated sum.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    void add(const CompensatedSum& other) noexcept {
        add(other.sum_);
        add(other.comp_);
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline constexpr std::uint64_t kDefaultChunk = std::uint64_t{1} << 15;

struct ChunkRange {
    std::uint64_t begin;
    std::uint64_t end;
};

inline std::vector<ChunkRange> make_chunks(std::uint64_t begin, std::uint64_t end,
                                           std::uint64_t chunk = kDefaultChunk) {
    std::vector<ChunkRange> out;
    for (std::uint64_t lo = begin; lo < end; lo += chunk)
        out.push_back({lo, lo + chunk < end ? lo + chunk : end});
    return out;
}

// Runs body(i) for i in [0, n) in parallel.  An exception thrown by any
// iteration is captured and the one from the lowest index is rethrown after
// the loop, since exceptions may not leave an OpenMP region.
template <typename Body>
void parallel_for_index(std::size_t n, Body body) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

// Runs body(chunk, partial) for every chunk in parallel, then folds the
// partials left to right with merge(acc, partial).
template <typename Partial, typename Body, typename Merge>
Partial chunked_reduce(const std::vector<ChunkRange>& chunks, Partial init, Body body,
                       Merge merge) {
    std::vector<Partial> partials(chunks.size(), init);
    parallel_for_index(chunks.size(), [&](std::size_t i) { body(chunks[i], partials[i]); });
    Partial acc = init;
    for (auto& p : partials)
        merge(acc, p);
    return acc;
}

inline int available_threads() { return omp_get_max_threads(); }
inline void set_threads(int n) {
    if (n > 0)
        omp_set_num_threads(n);
}

} // namespace ramanujan
