#include "ramanujan/sieve_table.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ramanujan/error.hpp"

namespace ramanujan::sieve {

namespace {

constexpr std::uint64_t kBlock = std::uint64_t{1} << 18; // multiple of 64

void check_range(const SieveTable& t, std::uint64_t n) {
    if (n < 1 || n > t.limit())
        fail(ErrorCode::invalid_input,
             "sieve: " + std::to_string(n) + " outside table [1, " + std::to_string(t.limit()) +
                 "]");
}

std::vector<std::uint32_t> small_primes(std::uint64_t bound) {
    std::vector<bool> composite(bound + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i])
            continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= bound; j += i)
            composite[j] = true;
    }
    return out;
}

} // namespace

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        const std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint32_t SieveTable::spf(std::uint64_t n) const {
    check_range(*this, n);
    return spf_[n];
}

bool SieveTable::is_squarefree(std::uint64_t n) const {
    check_range(*this, n);
    return (squarefree_bits_[n >> 6] >> (n & 63)) & 1u;
}

std::uint64_t SieveTable::prime_count(std::uint64_t x) const {
    if (x > limit_)
        fail(ErrorCode::invalid_input, "sieve: prime_count beyond table");
    return static_cast<std::uint64_t>(
        std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

std::vector<PrimePower> SieveTable::factorize(std::uint64_t n) const {
    check_range(*this, n);
    std::vector<PrimePower> out;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    return out;
}

bool SieveTable::squarefree_primes(std::uint64_t n, std::vector<std::uint32_t>& out) const {
    out.clear();
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        n /= p;
        if (n % p == 0)
            return false;
        out.push_back(p);
    }
    return true;
}

std::uint64_t SieveTable::bytes_required(std::uint64_t limit) {
    // spf + squarefree bits + a generous prime list estimate
    const double primes = limit < 20 ? 8.0 : 1.3 * static_cast<double>(limit) /
                                                 std::log(static_cast<double>(limit));
    return (limit + 1) * sizeof(std::uint32_t) + (limit / 64 + 1) * 8 +
           static_cast<std::uint64_t>(primes) * sizeof(std::uint32_t);
}

SieveTable build_table_serial(std::uint64_t limit) {
    SieveTable t;
    t.limit_ = limit;
    t.spf_.assign(limit + 1, 0);
    t.squarefree_bits_.assign(limit / 64 + 1, 0);
    if (limit >= 1) {
        t.spf_[1] = 1;
        t.squarefree_bits_[0] |= 2u;
    }
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (t.spf_[i] == 0) {
            t.spf_[i] = static_cast<std::uint32_t>(i);
            t.primes_.push_back(static_cast<std::uint32_t>(i));
        }
        const std::uint32_t si = t.spf_[i];
        for (std::uint32_t p : t.primes_) {
            if (p > si || static_cast<std::uint64_t>(p) * i > limit)
                break;
            t.spf_[p * i] = p;
        }
        // i = p m with p = spf(i): squarefree iff p does not divide m and m squarefree
        const std::uint64_t m = i / si;
        const bool sf = (m % si != 0) && ((t.squarefree_bits_[m >> 6] >> (m & 63)) & 1u);
        if (sf)
            t.squarefree_bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    return t;
}

SieveTable build_table_parallel(std::uint64_t limit) {
    SieveTable t;
    t.limit_ = limit;
    t.spf_.assign(limit + 1, 0);
    t.squarefree_bits_.assign(limit / 64 + 1, 0);
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    const auto base = small_primes(root);

    const std::uint64_t blocks = (limit + 1 + kBlock - 1) / kBlock;
    const auto nblocks = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < nblocks; ++b) {
        const std::uint64_t lo = static_cast<std::uint64_t>(b) * kBlock;
        const std::uint64_t hi = std::min(lo + kBlock, limit + 1); // exclusive
        for (std::uint64_t n = lo; n < hi; ++n)
            t.squarefree_bits_[n >> 6] |= std::uint64_t{1} << (n & 63);
        // Ascending primes: first writer is the smallest factor.
        for (std::uint32_t p : base) {
            const std::uint64_t pp = static_cast<std::uint64_t>(p);
            if (pp * pp >= hi)
                break;
            std::uint64_t start = std::max(pp * pp, (lo + pp - 1) / pp * pp);
            for (std::uint64_t j = start; j < hi; j += pp)
                if (t.spf_[j] == 0)
                    t.spf_[j] = p;
        }
        for (std::uint32_t p : base) {
            const std::uint64_t sq = static_cast<std::uint64_t>(p) * p;
            if (sq >= hi)
                break;
            std::uint64_t start = std::max(sq, (lo + sq - 1) / sq * sq);
            for (std::uint64_t j = start; j < hi; j += sq)
                t.squarefree_bits_[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
        }
        for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n < hi; ++n)
            if (t.spf_[n] == 0)
                t.spf_[n] = static_cast<std::uint32_t>(n);
    }
    t.squarefree_bits_[0] &= ~std::uint64_t{1}; // 0 is not a positive integer
    if (limit >= 1)
        t.spf_[1] = 1;
    for (std::uint64_t n = 2; n <= limit; ++n)
        if (t.spf_[n] == n)
            t.primes_.push_back(static_cast<std::uint32_t>(n));
    return t;
}

SieveTable build_table(std::uint64_t limit, const BuildOptions& options) {
    if (limit < 2)
        fail(ErrorCode::invalid_input, "build_table: limit must be >= 2");
    if (limit > kMaxLimit)
        fail(ErrorCode::resource_limit, "build_table: limit exceeds 2e8");
    if (limit > kDefaultLimit && !options.allow_large)
        fail(ErrorCode::resource_limit,
             "build_table: limit above 1e7 requires the large-table flag");
    if (SieveTable::bytes_required(limit) > options.memory_budget_bytes)
        fail(ErrorCode::resource_limit, "build_table: table for limit " + std::to_string(limit) +
                                            " exceeds the memory budget");
    return options.parallel ? build_table_parallel(limit) : build_table_serial(limit);
}

} // namespace ramanujan::sieve
