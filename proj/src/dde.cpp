#include "ramanujan/dde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ramanujan/error.hpp"

namespace ramanujan::dde {

namespace {

// Lagrange weights for the four nodes 0..3 evaluated at position t.
double lagrange4(const double* v, double t) {
    const double l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    const double l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    const double l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    const double l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    return l0 * v[0] + l1 * v[1] + l2 * v[2] + l3 * v[3];
}

// Value at fractional node position `pos` of one segment with n + 1 nodes.
double interpolate_segment(const std::vector<double>& nodes, double pos) {
    const auto n = static_cast<std::int64_t>(nodes.size()) - 1;
    const auto i0 = static_cast<std::int64_t>(std::floor(pos));
    const std::int64_t start = std::clamp<std::int64_t>(i0 - 1, 0, n - 3);
    return lagrange4(nodes.data() + start, pos - static_cast<double>(start));
}

bool is_nonnegative_integer(double x) { return x >= 0.0 && std::floor(x) == x; }

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

// integral_1^u (v-1)^m / v^{m+1} dv
double first_segment_integral(int m, double u) {
    double total = 0.0;
    for (int j = 0; j <= m; ++j) {
        const double c = binomial(m, j) * (((m - j) % 2 == 0) ? 1.0 : -1.0);
        const int power = j - m; // exponent of v in the integrand is power - 1
        if (power == 0)
            total += c * std::log(u);
        else
            total += c * (std::pow(u, power) - 1.0) / static_cast<double>(power);
    }
    return total;
}

double sigma_on_first_segment(const DdeSpec& spec, double u) {
    const int m = static_cast<int>(spec.initial_exponent());
    const double w = 1.0 - spec.delay_coefficient() * first_segment_integral(m, u);
    return std::pow(u, m) * w;
}

// Antiderivative of sigma(v-1) / v^2 for e0 = 1, v in (2, 3].
double second_segment_antiderivative(double kappa, double v) {
    const double lv = std::log(v);
    const double lvm1 = std::log(v - 1.0);
    const double j = 0.5 * lv * lv + dilog(1.0 / v) + lvm1 / v - (lvm1 - lv);
    return (1.0 + kappa) * lv + (1.0 + 2.0 * kappa) / v - kappa * j;
}

} // namespace

DdeSpec::DdeSpec(double chi0, double chi1) : chi0_(chi0), chi1_(chi1) {
    if (!(chi0 > 0.0 && chi1 < 0.0))
        fail(ErrorCode::invalid_input, "dde: weights must satisfy chi0 > 0 > chi1");
}

double DdeSpec::initial_value(double u) const {
    const double e0 = initial_exponent();
    if (e0 == 0.0)
        return 1.0;
    return std::pow(u, e0);
}

double PiecewiseSolution::node_u(std::size_t k, std::size_t i) const {
    return static_cast<double>(k) + static_cast<double>(i) * grid_step();
}

double PiecewiseSolution::interpolate(double u) const {
    if (u <= 1.0)
        return spec_.initial_value(u);
    if (u > u_max())
        fail(ErrorCode::unsupported_range, "dde: u beyond solved range");
    const auto k = static_cast<std::size_t>(std::ceil(u)) - 1;
    const double pos = (u - static_cast<double>(k)) * static_cast<double>(steps_per_unit_);
    return interpolate_segment(segments_[k], pos);
}

double PiecewiseSolution::delayed(double u) const {
    const double x = u - 1.0;
    return x <= 1.0 ? spec_.initial_value(x) : interpolate(x);
}

double PiecewiseSolution::rhs(double u) const {
    return -spec_.delay_coefficient() * std::pow(u, -(spec_.initial_exponent() + 1.0)) *
           delayed(u);
}

double PiecewiseSolution::evaluate(double u) const {
    if (!(u > 0.0))
        fail(ErrorCode::unsupported_range, "dde: sigma is defined for u > 0");
    if (u <= 1.0)
        return spec_.initial_value(u);
    if (u > u_max())
        fail(ErrorCode::unsupported_range, "dde: u beyond solved range");
    const auto k = static_cast<std::size_t>(std::ceil(u)) - 1;
    const double pos = (u - static_cast<double>(k)) * static_cast<double>(steps_per_unit_);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const auto& seg = segments_[k];
    if (static_cast<double>(i) == pos)
        return seg[i];
    const double e0 = spec_.initial_exponent();
    const double u0 = node_u(k, i);
    const double s = u - u0;
    const double w0 = std::pow(u0, -e0) * seg[i];
    const double w = w0 + s / 6.0 * (rhs(u0) + 4.0 * rhs(u0 + 0.5 * s) + rhs(u));
    return std::pow(u, e0) * w;
}

PiecewiseSolution solve(const DdeSpec& spec, double u_max, double step) {
    if (!(step >= kMinStep && step <= kMaxStep))
        fail(ErrorCode::invalid_input,
             "dde: step must lie in [1e-7, 1e-2], got " + std::to_string(step));
    if (!(u_max >= 1.0))
        fail(ErrorCode::invalid_input, "dde: u_max must be >= 1");

    const auto n = static_cast<std::uint64_t>(std::llround(1.0 / step));
    PiecewiseSolution sol(spec, n);
    const double h = sol.grid_step();
    const auto units = static_cast<std::size_t>(std::ceil(u_max));
    sol.segments_.reserve(units);

    std::vector<double> first(n + 1);
    for (std::uint64_t i = 0; i <= n; ++i)
        first[i] = spec.initial_value(static_cast<double>(i) * h);
    sol.segments_.push_back(std::move(first));

    const double e0 = spec.initial_exponent();
    const double kappa = spec.delay_coefficient();
    for (std::size_t k = 1; k < units; ++k) {
        const auto& prev = sol.segments_[k - 1];
        std::vector<double> cur(n + 1);
        cur[0] = prev[n];
        // Delayed values: exact on (0, 1], stored nodes / cubic midpoints after.
        auto delayed_node = [&](std::uint64_t i) {
            return k == 1 ? spec.initial_value(static_cast<double>(i) * h) : prev[i];
        };
        auto delayed_mid = [&](std::uint64_t i) {
            return k == 1 ? spec.initial_value((static_cast<double>(i) + 0.5) * h)
                          : interpolate_segment(prev, static_cast<double>(i) + 0.5);
        };
        auto weight = [&](double u) { return -kappa * std::pow(u, -(e0 + 1.0)); };

        double u = static_cast<double>(k);
        double w = std::pow(u, -e0) * cur[0];
        double f_left = weight(u) * delayed_node(0);
        for (std::uint64_t i = 0; i < n; ++i) {
            const double u_next = sol.node_u(k, i + 1);
            const double f_mid = weight(u + 0.5 * h) * delayed_mid(i);
            const double f_right = weight(u_next) * delayed_node(i + 1);
            w += h / 6.0 * (f_left + 4.0 * f_mid + f_right);
            cur[i + 1] = std::pow(u_next, e0) * w;
            u = u_next;
            f_left = f_right;
        }
        sol.segments_.push_back(std::move(cur));
    }
    sol.first_zero = zero_on_grid(sol, 1e-9);
    return sol;
}

std::optional<double> zero_on_grid(const PiecewiseSolution& solution, double tol) {
    const std::size_t n = solution.steps_per_unit();
    for (std::size_t k = 1; k < solution.segment_count(); ++k) {
        const auto& seg = solution.segment(k);
        for (std::size_t i = 0; i < n; ++i) {
            if (seg[i] > 0.0 && seg[i + 1] <= 0.0) {
                if (seg[i + 1] == 0.0)
                    return solution.node_u(k, i + 1);
                double lo = solution.node_u(k, i);
                double hi = solution.node_u(k, i + 1);
                while (hi - lo > tol / 16.0) {
                    const double mid = 0.5 * (lo + hi);
                    if (mid <= lo || mid >= hi)
                        break;
                    (solution.evaluate(mid) > 0.0 ? lo : hi) = mid;
                }
                return 0.5 * (lo + hi);
            }
        }
    }
    return std::nullopt;
}

ZeroResult first_zero(const DdeSpec& spec, const ZeroOptions& options) {
    if (!(options.tol >= 1e-9))
        fail(ErrorCode::invalid_input, "first_zero: tol must be >= 1e-9");
    if (!(options.u_cap > 1.0))
        fail(ErrorCode::invalid_input, "first_zero: u cap must exceed 1");

    auto zero_at = [&](double step) {
        auto sol = solve(spec, options.u_cap, step);
        auto z = zero_on_grid(sol, options.tol);
        if (!z)
            fail(ErrorCode::not_found, "first_zero: no sign change below u = " +
                                           std::to_string(options.u_cap));
        return *z;
    };

    double step = options.initial_step;
    double previous = zero_at(step);
    int refinements = 0;
    for (;;) {
        const double next_step = step / 2.0;
        if (next_step < kMinStep)
            return ZeroResult{previous, step, previous, refinements};
        const double z = zero_at(next_step);
        ++refinements;
        if (std::abs(z - previous) < options.tol)
            return ZeroResult{z, next_step, previous, refinements};
        previous = z;
        step = next_step;
    }
}

double analytic_segment(const DdeSpec& spec, double u) {
    if (!(u > 0.0))
        fail(ErrorCode::unsupported_range, "analytic_segment: u must be positive");
    if (u <= 1.0)
        return spec.initial_value(u);

    const double e0 = spec.initial_exponent();
    if (!is_nonnegative_integer(e0) || e0 > 16.0)
        fail(ErrorCode::unsupported_range,
             "analytic_segment: closed forms need a small non-negative integer e0");
    if (u <= 2.0)
        return sigma_on_first_segment(spec, u);

    if (u <= 3.0 && e0 == 1.0) {
        const double kappa = spec.delay_coefficient();
        const double at_two = sigma_on_first_segment(spec, 2.0);
        const double integral = second_segment_antiderivative(kappa, u) -
                                second_segment_antiderivative(kappa, 2.0);
        return u * (at_two / 2.0 - kappa * integral);
    }
    fail(ErrorCode::unsupported_range,
         "analytic_segment: no closed form at u = " + std::to_string(u));
}

double dilog(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        fail(ErrorCode::unsupported_range, "dilog: argument must lie in [0, 1]");
    constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
    if (x == 1.0)
        return pi2_6;
    if (x > 0.5)
        return pi2_6 - std::log(x) * std::log1p(-x) - dilog(1.0 - x);
    double term = x;
    double total = 0.0;
    for (int k = 1; k < 200; ++k) {
        const double add = term / (static_cast<double>(k) * static_cast<double>(k));
        total += add;
        if (add < 1e-18 * total)
            break;
        term *= x;
    }
    return total;
}

} // namespace ramanujan::dde
