#pragma once

/*
 * Data-parallel kernels.
 *
 * Each kernel has an OpenMP version (used by the library) and a plain serial
 * version kept as the reference for tests and benchmarks.  The OpenMP
 * versions split their range into fixed chunks and merge partials in chunk
 * order, so their output does not depend on the thread count.  Serial and
 * parallel results agree exactly on integer-valued data and to rounding
 * otherwise.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ramanujan/multiplicative.hpp"
#include "ramanujan/satake.hpp"
#include "ramanujan/sieve_table.hpp"

namespace ramanujan::kernels {

// H(t) = sum of f(n) over n <= t with (n, q) = 1.
double squarefree_sum_serial(const sieve::MultFuncSpec& f, std::uint64_t t, std::uint64_t q,
                             const sieve::SieveTable& table);
double squarefree_sum_omp(const sieve::MultFuncSpec& f, std::uint64_t t, std::uint64_t q,
                          const sieve::SieveTable& table);

// sum_{n <= x} f(n) log(x / n).
double log_weighted_direct_serial(const sieve::MultFuncSpec& f, double x, std::uint64_t q,
                                  const sieve::SieveTable& table);
double log_weighted_direct_omp(const sieve::MultFuncSpec& f, double x, std::uint64_t q,
                               const sieve::SieveTable& table);

// integral_1^x H(t) dt / t with H piecewise constant on [k, k + 1).
double log_weighted_integrated_serial(const sieve::MultFuncSpec& f, double x, std::uint64_t q,
                                      const sieve::SieveTable& table);
double log_weighted_integrated_omp(const sieve::MultFuncSpec& f, double x, std::uint64_t q,
                                   const sieve::SieveTable& table);

struct IdentitySweep {
    std::uint64_t samples = 0;
    std::uint64_t non_tempered = 0;
    double max_square_residual = 0.0;
    double max_product_residual = 0.0;
    double max_adjoint_route_gap = 0.0; // |lambda|^2 - 1 vs parameter sum
    double min_a2 = 0.0;
    double min_a4 = 0.0;
    std::uint64_t envelope_violations = 0;
    std::uint64_t implication_violations = 0; // not RP but A <= 3 or A[4] <= 5
};

// Samples alternate: even indices Sato-Tate tempered, odd indices
// non-tempered with nu uniform in (0, 7/64].
satake::SatakeLocal sweep_sample(std::uint64_t index, std::uint64_t seed);

IdentitySweep hecke_identity_sweep_serial(std::uint64_t count, std::uint64_t seed);
IdentitySweep hecke_identity_sweep_omp(std::uint64_t count, std::uint64_t seed);

struct PrefixWitness {
    std::uint64_t r;
    std::uint64_t t;
    double value;
};

// For each squarefree r <= z (in increasing order) forms the running sums
// sum_{n <= t, (n, r q) = 1} h(n), t = 1..z, and returns the first (r, t)
// at which a running sum is negative.  `values[n]` holds h(n) for n <= z.
std::optional<PrefixWitness> negative_coprime_prefix_serial(std::span<const double> values,
                                                            std::uint64_t z, std::uint64_t q,
                                                            const sieve::SieveTable& table);
std::optional<PrefixWitness> negative_coprime_prefix_omp(std::span<const double> values,
                                                         std::uint64_t z, std::uint64_t q,
                                                         const sieve::SieveTable& table);

} // namespace ramanujan::kernels
