#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ramanujan::sieve {

inline constexpr std::uint64_t kDefaultLimit = 10'000'000;
inline constexpr std::uint64_t kMaxLimit = 200'000'000;

struct BuildOptions {
    // Limits above kDefaultLimit need this set (segmented build only).
    bool allow_large = false;
    std::uint64_t memory_budget_bytes = std::uint64_t{1} << 30;
    bool parallel = true;
};

struct PrimePower {
    std::uint32_t prime;
    std::uint32_t exponent;
};

// Smallest-prime-factor table, squarefree flags and prime list up to a limit.
// Immutable once built; safe to share between threads.
class SieveTable {
public:
    std::uint64_t limit() const noexcept { return limit_; }
    std::uint32_t spf(std::uint64_t n) const;
    bool is_squarefree(std::uint64_t n) const;
    bool is_prime(std::uint64_t n) const { return n >= 2 && spf(n) == n; }
    std::span<const std::uint32_t> primes() const noexcept { return primes_; }

    // Number of primes <= x (x <= limit).
    std::uint64_t prime_count(std::uint64_t x) const;

    std::vector<PrimePower> factorize(std::uint64_t n) const;

    // Distinct prime factors when n is squarefree, empty optional-like flag otherwise.
    bool squarefree_primes(std::uint64_t n, std::vector<std::uint32_t>& out) const;

    static std::uint64_t bytes_required(std::uint64_t limit);

private:
    friend SieveTable build_table(std::uint64_t, const BuildOptions&);
    friend SieveTable build_table_serial(std::uint64_t);
    friend SieveTable build_table_parallel(std::uint64_t);

    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint64_t> squarefree_bits_;
    std::vector<std::uint32_t> primes_;
};

SieveTable build_table(std::uint64_t limit, const BuildOptions& options = {});

// Linear sieve; reference for the segmented parallel build.
SieveTable build_table_serial(std::uint64_t limit);

// Segmented sieve with OpenMP over 64-aligned blocks.
SieveTable build_table_parallel(std::uint64_t limit);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

} // namespace ramanujan::sieve
