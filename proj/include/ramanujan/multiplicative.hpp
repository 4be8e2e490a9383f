#pragma once

/*
 * Squarefree-supported multiplicative functions.
 *
 * Every function here vanishes off the squarefree integers and is determined
 * by its values at primes:  f(p1 p2 ... pk) = f(p1) f(p2) ... f(pk).
 *
 *   threshold weight   h(p) = chi0 for p <= y, chi1 for p > y
 *   coefficient table  f(p) read from a per-prime table
 *   convolution        (l * r)(p) = l(p) + r(p)  on squarefree support
 *   moebius quotient   g with num = weight * g, i.e. g(p) = num(p) - weight(p)
 *
 * An optional coprimality modulus zeroes every prime dividing it.
 *
 * dirichlet_convolve and moebius_factor below do NOT use these prime-level
 * shortcuts; they run the divisor sums directly, so they serve as an
 * independent check of the closed forms.
 */

#include <cstdint>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "ramanujan/sieve_table.hpp"

namespace ramanujan::sieve {

class MultFuncSpec {
public:
    struct Threshold {
        double y;
        double chi0;
        double chi1;
    };
    struct Table {
        std::shared_ptr<const std::vector<double>> by_prime; // index = p
    };
    struct Convolution {
        std::shared_ptr<const MultFuncSpec> left;
        std::shared_ptr<const MultFuncSpec> right;
    };
    struct MoebiusQuotient {
        std::shared_ptr<const MultFuncSpec> numerator;
        std::shared_ptr<const MultFuncSpec> weight;
    };
    using Kind = std::variant<Threshold, Table, Convolution, MoebiusQuotient>;

    static MultFuncSpec threshold_weight(double y, double chi0, double chi1);
    // values[p] is f(p); entries at non-primes are ignored.
    static MultFuncSpec coefficient_table(std::vector<double> values);
    static MultFuncSpec from_prime_function(std::uint64_t coverage,
                                            const std::function<double(std::uint64_t)>& f);
    static MultFuncSpec convolution(MultFuncSpec left, MultFuncSpec right);
    static MultFuncSpec moebius_quotient(MultFuncSpec numerator, MultFuncSpec weight);

    // Copy with the additional constraint (n, q) = 1.
    MultFuncSpec coprime_to(std::uint64_t q) const;

    const Kind& kind() const noexcept { return kind_; }
    std::uint64_t modulus() const noexcept { return modulus_; }

    // Largest prime at which the function is defined (unbounded for thresholds).
    std::uint64_t coverage() const;

    double prime_value(std::uint64_t p) const;

    // f(n): 0 unless n is squarefree and coprime to the modulus.
    double value(std::uint64_t n, const SieveTable& table) const;

private:
    explicit MultFuncSpec(Kind kind) : kind_(std::move(kind)) {}

    Kind kind_;
    std::uint64_t modulus_ = 1;
};

// sum_{d | n} left(d) right(n / d), by explicit divisor enumeration.
double dirichlet_convolve(const MultFuncSpec& left, const MultFuncSpec& right, std::uint64_t n,
                          const SieveTable& table);

// g(n) for squarefree n defined by b(m) = sum_{d | m} h(d) g(m / d) for all
// m | n, solved recursively over the divisor lattice of n.
double moebius_factor(const MultFuncSpec& b, const MultFuncSpec& h, std::uint64_t n,
                      const SieveTable& table);

} // namespace ramanujan::sieve
