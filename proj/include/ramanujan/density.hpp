#pragma once

/*
 * Chebyshev-weight density machinery.
 *
 * For a family phi_1..phi_m at an unramified prime p,
 *
 *   U(p) = (1 + 3 sum_j A_j(p) + 5 A[4]_1(p))^2.
 *
 * At a prime where every member fails the Ramanujan bound, A_j(p) > 3 and
 * A[4]_1(p) > 5, so U(p) > (26 + 9m)^2.  Averaging U over primes then bounds
 * the density of such primes by 1 / (26 + 9m).
 */

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#include "ramanujan/form.hpp"
#include "ramanujan/satake.hpp"
#include "ramanujan/sieve_table.hpp"

namespace ramanujan::density {

using Rational = boost::rational<std::int64_t>;

// |lambda| <= 2 + guard counts as Ramanujan on tabulated data.
inline constexpr double kBoundaryGuard = 1e-9;

struct FormFamily {
    std::vector<forms::FormMeta> members;
    // The distinct-RP hypothesis cannot be checked from coefficients; it is
    // carried as an assumption and echoed in every report.
    bool distinct_rp_assumed = true;
    std::string assumption_note = "pairwise distinct RP sets assumed, not verified";

    std::size_t m() const noexcept { return members.size(); }
};

// (1 + 3 sum_j A_j + 5 A[4]_1)^2.
double chebyshev_weight(std::span<const satake::CoeffTriple> coeffs, std::size_t m);

// The m = 2 expansion of U via both Hecke identities, compared with the
// square.  Throws invalid_input if either triple fails the identities.
struct ExpansionCheck {
    double squared;
    double expanded;
    double residual;
};
ExpansionCheck expansion_check(const satake::CoeffTriple& first,
                               const satake::CoeffTriple& second);
double expansion_residual(const satake::CoeffTriple& first, const satake::CoeffTriple& second);

struct ExpansionSweep {
    std::uint64_t pairs = 0;
    double max_residual = 0.0;
    double max_relative_residual = 0.0; // residual / max(1, U)
};

// Pairs (s_2i, s_2i+1) of the identity-sweep stream, each in both orders.
ExpansionSweep expansion_sweep(std::uint64_t pairs, std::uint64_t seed);
ExpansionSweep expansion_sweep_serial(std::uint64_t pairs, std::uint64_t seed);

enum class BoundVariant { unconditional, conditional };

// 1 - 1/(26 + 9m), or the conditional 1 - 1/(1 + 9m + 25m^2).
Rational density_lower_bound(std::int64_t m, BoundVariant variant);
std::string variant_label(BoundVariant variant);

// max(d1 + d2 - 1, 0).
Rational pigeonhole_intersection(const Rational& d1, const Rational& d2);

struct DensityReport {
    std::uint64_t X = 0;
    std::uint64_t m = 0;
    std::uint64_t pi_X = 0; // primes <= X coprime to every level
    std::uint64_t exceptional_count = 0;
    std::vector<std::uint64_t> exceptional_primes;
    double running_mean_U = 0.0;
    double sample_std_U = 0.0;
    double min_exceptional_U = 0.0;
    std::uint64_t threshold_violations = 0; // exceptional p with U(p) <= (26 + 9m)^2
    double implied_upper = 0.0;             // exceptional_count / pi_X
    double chebyshev_upper = 0.0;           // running_mean_U / (26 + 9m)^2
    Rational theory_bound;                  // 1 / (26 + 9m)
    std::vector<std::string> assumptions;
};

nlohmann::json to_json(const DensityReport& report);

// Primes p <= X not dividing any level.  Throws data_gap if any member lacks
// a coefficient at such a prime.
DensityReport exceptional_scan(const FormFamily& family, std::uint64_t X,
                               const sieve::SieveTable& table);
DensityReport exceptional_scan_serial(const FormFamily& family, std::uint64_t X,
                                      const sieve::SieveTable& table);

struct TrendRow {
    std::uint64_t X;
    std::uint64_t pi_X;
    double sum;
    double ratio; // sum / pi_X
};

// sum_{p <= X} stream(p) / pi(X) at each grid point.
std::vector<TrendRow> pnt_trend(const std::function<double(std::uint64_t)>& stream,
                                std::span<const std::uint64_t> x_grid,
                                const sieve::SieveTable& table);

} // namespace ramanujan::density
