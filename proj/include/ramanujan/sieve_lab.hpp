#pragma once

/*
 * Brute-force sieve laboratory.
 *
 * Everything here is computed by direct enumeration over a SieveTable:
 * partial sums H(t), log-weighted sums S(x), the singular-series constant
 * c(a), the asymptotic comparison against the DDE solution, and the
 * positivity check for S(z) >= sum h(n) log(z/n).
 */

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "ramanujan/error.hpp"
#include "ramanujan/kernels.hpp"
#include "ramanujan/multiplicative.hpp"
#include "ramanujan/sieve_table.hpp"

namespace ramanujan::sieve {

using Rational = boost::rational<std::int64_t>;

inline constexpr double kLogRouteTolerance = 1e-9;

// H(t) = sum of spec(n) over squarefree n <= t with (n, q) = 1.
double h_sum(const MultFuncSpec& spec, double t, std::uint64_t q, const SieveTable& table);

struct LogWeighted {
    double direct;
    double integrated;
    double rel_gap; // |direct - integrated| / max(1, |direct|)

    bool agrees() const noexcept { return rel_gap <= kLogRouteTolerance; }
};

// S(x) = sum spec(n) log(x / n), computed directly and as the integral of H.
LogWeighted log_weighted_sum(const MultFuncSpec& spec, double x, std::uint64_t q,
                             const SieveTable& table);

struct EulerConstant {
    std::uint64_t a;
    unsigned chi;
    std::uint64_t truncation;
    double base;          // c(1) truncated at `truncation`
    Rational local_ratio; // c(a) / c(1) = prod_{p | a} p / (p + chi)
    double value;         // base * local_ratio
    double direct_value;  // product evaluated directly over p not dividing a
    double tail_bound;    // bound on |log(tail)| beyond the truncation
};

// c(a) = (phi(a)/a)^chi prod_{p not | a} (1 - 1/p)^chi (1 + chi/p); the
// two-form constant is chi = 2.  Primes come from `table`, which must reach
// the truncation.
EulerConstant euler_constant_c(std::uint64_t a, std::uint64_t truncation,
                               const SieveTable& table, unsigned chi = 2);

struct PrimorialRow {
    unsigned k;
    std::uint64_t a;
    double c;
    double loglog_sq_times_c; // c(a) (log log a)^2
};

struct PrimorialScan {
    std::vector<PrimorialRow> rows;
    double kappa; // min over the rows, i.e. the calibrated constant
};

PrimorialScan primorial_scan(unsigned max_k, std::uint64_t truncation, const SieveTable& table,
                             unsigned chi = 2);

struct AsymptoticRow {
    double y;
    double u;
    double exact;
    double predicted;
    double rel_error;
};

// Compares H(y^u) for the threshold weight (chi0, chi1) against
// c(q) sigma(u) (log y)^{chi0 - 1} y^u.  chi0 must be a positive integer.
std::vector<AsymptoticRow> asymptotic_report(std::uint64_t y, std::span<const double> u_grid,
                                             std::uint64_t q, double chi0, double chi1,
                                             const SieveTable& table);

std::string asymptotic_csv(std::span<const AsymptoticRow> rows);

struct LowerBoundResult {
    bool precondition_ok = false;
    std::optional<std::uint64_t> negative_g_prime; // prime with g(p) < 0
    std::optional<kernels::PrefixWitness> prefix_witness;
    double s_value = 0.0; // sum B(n) log(z/n)
    double h_value = 0.0; // sum h(n) log(z/n)
    bool holds = false;   // s_value >= h_value up to rounding

    // False only if the precondition holds and the inequality does not.
    bool consistent() const noexcept { return !precondition_ok || holds; }
};

LowerBoundResult lower_bound_check(const MultFuncSpec& b, const MultFuncSpec& h, double z,
                                   std::uint64_t q, const SieveTable& table);

// Coefficients of x^0..x^order in
//   (1 - a1 x + a1 x^2 - x^3)(1 - a2 x + a2 x^2 - x^3)(1 + (a1 + a2) x).
template <typename T>
std::vector<T> local_factor_coeffs(const T& a1, const T& a2, unsigned order) {
    if (order > 6)
        fail(ErrorCode::invalid_input, "local_factor_coeffs: order must be <= 6");
    const T one(1);
    const std::vector<T> f1{one, -a1, a1, -one};
    const std::vector<T> f2{one, -a2, a2, -one};
    const std::vector<T> f3{one, a1 + a2};
    auto mul = [](const std::vector<T>& l, const std::vector<T>& r) {
        std::vector<T> out(l.size() + r.size() - 1, T(0));
        for (std::size_t i = 0; i < l.size(); ++i)
            for (std::size_t j = 0; j < r.size(); ++j)
                out[i + j] += l[i] * r[j];
        return out;
    };
    auto full = mul(mul(f1, f2), f3);
    full.resize(order + 1);
    return full;
}

// Bound on |x^2 coefficient| when |a1|, |a2| <= E = p^{7/32} + 1 + p^{-7/32}:
// |a1 a2| + |a1| + |a2| + |a1 + a2|^2 <= 5E^2 + 2E.
double local_factor_x2_envelope(std::uint64_t p);

} // namespace ramanujan::sieve
