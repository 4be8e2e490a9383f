#pragma once

/*
 * Sieve differential-difference equations.
 *
 * For weights chi0 > 0 > chi1 (the mean of the sieve weight on primes up to
 * y and beyond y), with e0 = chi0 - 1 and kappa = chi0 - chi1:
 *
 *   sigma(u) = u^{e0}                                    0 < u <= 1
 *   (u^{-e0} sigma(u))' = -kappa u^{-(e0+1)} sigma(u-1)  u > 1
 *
 * (2, -2) is the two-form instance (sigma(u) = u on (0, 1]); (1, -3) is the
 * three-form instance.  The equation is solved by the method of steps: on
 * each unit interval the delayed term is already known from the previous
 * interval, so the right-hand side is explicit and classical RK4 applies.
 */

#include <cstdint>
#include <optional>
#include <vector>

namespace ramanujan::dde {

class DdeSpec {
public:
    DdeSpec(double chi0, double chi1);

    double chi0() const noexcept { return chi0_; }
    double chi1() const noexcept { return chi1_; }
    double initial_exponent() const noexcept { return chi0_ - 1.0; }
    double delay_coefficient() const noexcept { return chi0_ - chi1_; }

    // sigma on (0, 1]; the value at 0 is the right limit.
    double initial_value(double u) const;

private:
    double chi0_;
    double chi1_;
};

inline constexpr double kMinStep = 1e-7;
inline constexpr double kMaxStep = 1e-2;

class PiecewiseSolution {
public:
    const DdeSpec& spec() const noexcept { return spec_; }
    double grid_step() const noexcept { return 1.0 / static_cast<double>(steps_per_unit_); }
    std::uint64_t steps_per_unit() const noexcept { return steps_per_unit_; }
    double u_max() const noexcept { return static_cast<double>(segments_.size()); }
    std::size_t segment_count() const noexcept { return segments_.size(); }

    // Node values of the unit interval [k, k+1]; entry i sits at u = k + i h.
    const std::vector<double>& segment(std::size_t k) const { return segments_.at(k); }

    double node_u(std::size_t k, std::size_t i) const;

    // sigma at an arbitrary u in (0, u_max]: nodes are returned as stored,
    // other points take one RK4 sub-step from the node on their left.
    double evaluate(double u) const;

    // Cubic Lagrange interpolation on the stored nodes of one segment.
    double interpolate(double u) const;

    std::optional<double> first_zero;

private:
    friend PiecewiseSolution solve(const DdeSpec&, double, double);
    PiecewiseSolution(DdeSpec spec, std::uint64_t steps_per_unit)
        : spec_(spec), steps_per_unit_(steps_per_unit) {}

    double delayed(double u) const;
    double rhs(double u) const;

    DdeSpec spec_;
    std::uint64_t steps_per_unit_;
    std::vector<std::vector<double>> segments_;
};

// Integrates up to ceil(u_max).  The step is rounded so that a whole number
// of steps fills each unit interval.
PiecewiseSolution solve(const DdeSpec& spec, double u_max, double step);

struct ZeroOptions {
    double tol = 1e-6;
    double initial_step = 1e-3;
    double u_cap = 10.0;
};

struct ZeroResult {
    double zero;
    double step;            // step of the final solve
    double previous_zero;   // estimate at twice the step
    int refinements;
};

// Smallest u > 1 with sigma(u) = 0: sign-change scan over nodes, bisection
// to tol, repeated with halved steps until two estimates agree to tol.
ZeroResult first_zero(const DdeSpec& spec, const ZeroOptions& options = {});

// Zero on a single fixed grid (no refinement).
std::optional<double> zero_on_grid(const PiecewiseSolution& solution, double tol);

// Closed forms: (0, 1] for any spec, (1, 2] when e0 is a non-negative
// integer, (2, 3] when e0 = 1.
double analytic_segment(const DdeSpec& spec, double u);

// Li_2(x) for x in [0, 1].
double dilog(double x);

} // namespace ramanujan::dde
