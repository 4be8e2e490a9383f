#include "ramanujan/satake.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ramanujan/error.hpp"
#include "ramanujan/rng.hpp"

namespace ramanujan::satake {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kShapeTolerance = 1e-9;

void require_prime_like(std::uint64_t p) {
    if (p < 2)
        fail(ErrorCode::invalid_input, "satake: prime must be >= 2, got " + std::to_string(p));
}

Complex normalized_unit(Complex unit) {
    const double m = std::abs(unit);
    if (!(std::abs(m - 1.0) <= 1e-12))
        fail(ErrorCode::invalid_input, "satake: unit factor must have modulus 1");
    return unit;
}

const std::vector<std::uint64_t>& primes_below(std::uint64_t bound) {
    thread_local std::uint64_t cached_bound = 0;
    thread_local std::vector<std::uint64_t> cached;
    if (cached_bound != bound) {
        cached.clear();
        for (std::uint64_t n = 2; n < bound; ++n) {
            bool prime = true;
            for (std::uint64_t d = 2; d * d <= n; ++d)
                if (n % d == 0) {
                    prime = false;
                    break;
                }
            if (prime)
                cached.push_back(n);
        }
        cached_bound = bound;
    }
    return cached;
}

} // namespace

SatakeLocal SatakeLocal::tempered(std::uint64_t p, double theta, Complex unit) {
    require_prime_like(p);
    if (!(theta >= 0.0 && theta <= kPi))
        fail(ErrorCode::invalid_input, "satake: tempered angle must lie in [0, pi]");
    return SatakeLocal(p, Tempered{theta}, normalized_unit(unit));
}

SatakeLocal SatakeLocal::non_tempered(std::uint64_t p, double nu, Complex unit) {
    require_prime_like(p);
    if (!(nu > 0.0 && nu <= kKimSarnakExponent))
        fail(ErrorCode::invalid_input,
             "satake: deviation nu must lie in (0, 7/64], got " + std::to_string(nu));
    return SatakeLocal(p, NonTempered{nu}, normalized_unit(unit));
}

SatakeLocal SatakeLocal::from_eigenvalue(std::uint64_t p, Complex lambda, Complex chi,
                                         double boundary_guard) {
    require_prime_like(p);
    normalized_unit(chi);
    Complex unit = std::sqrt(chi);
    Complex mu = lambda / unit;
    if (std::abs(mu.imag()) > kShapeTolerance * std::max(1.0, std::abs(mu)))
        fail(ErrorCode::invalid_input,
             "satake: lambda / sqrt(chi) is not real; parameters fit neither shape");
    double m = mu.real();
    if (m < 0.0) {
        unit = -unit;
        m = -m;
    }
    if (m <= 2.0 + boundary_guard)
        return SatakeLocal(p, Tempered{std::acos(std::min(m / 2.0, 1.0))}, unit);

    const double nu = std::acosh(m / 2.0) / std::log(static_cast<double>(p));
    if (nu > kKimSarnakExponent * (1.0 + 1e-12))
        fail(ErrorCode::invalid_input,
             "satake: |lambda(" + std::to_string(p) + ")| = " + std::to_string(m) +
                 " exceeds the Kim-Sarnak bound");
    return SatakeLocal(p, NonTempered{std::min(nu, kKimSarnakExponent)}, unit);
}

SatakeLocal SatakeLocal::from_parameters(std::uint64_t p, Complex alpha, Complex beta) {
    require_prime_like(p);
    const Complex product = alpha * beta;
    if (!(std::abs(std::abs(product) - 1.0) <= 1e-12))
        fail(ErrorCode::invalid_input, "satake: |alpha * beta| must equal 1");
    if (std::abs(alpha) < std::abs(beta))
        std::swap(alpha, beta);

    const double log_p = std::log(static_cast<double>(p));
    const double magnitude = std::abs(alpha);
    if (std::abs(magnitude - 1.0) <= kShapeTolerance) {
        Complex unit = std::sqrt(product);
        double theta = std::arg(alpha / unit);
        if (theta < 0.0)
            theta = -theta; // swap roles of alpha and beta
        return SatakeLocal(p, Tempered{std::clamp(theta, 0.0, kPi)}, unit);
    }

    const Complex unit = alpha / magnitude;
    if (std::abs(beta / std::abs(beta) - unit) > kShapeTolerance)
        fail(ErrorCode::invalid_input, "satake: non-tempered pair must share its unit factor");
    const double nu = std::log(magnitude) / log_p;
    if (nu > kKimSarnakExponent * (1.0 + 1e-12))
        fail(ErrorCode::invalid_input, "satake: deviation exceeds the Kim-Sarnak bound");
    return SatakeLocal(p, NonTempered{nu}, unit);
}

Complex SatakeLocal::alpha() const {
    if (const auto* t = std::get_if<Tempered>(&shape_))
        return unit_ * std::polar(1.0, t->theta);
    const double nu = std::get<NonTempered>(shape_).nu;
    return unit_ * std::pow(static_cast<double>(p_), nu);
}

Complex SatakeLocal::beta() const {
    if (const auto* t = std::get_if<Tempered>(&shape_))
        return unit_ * std::polar(1.0, -t->theta);
    const double nu = std::get<NonTempered>(shape_).nu;
    return unit_ * std::pow(static_cast<double>(p_), -nu);
}

double adjoint_coeff(const SatakeLocal& s) { return std::norm(s.lambda()) - 1.0; }

double adjoint_coeff_from_parameters(const SatakeLocal& s) {
    const Complex r = s.alpha() / s.beta();
    return (r + 1.0 + 1.0 / r).real();
}

CoeffTriple sym_coeffs(const SatakeLocal& s) {
    const Complex a = s.alpha();
    const Complex b = s.beta();
    const Complex r = a / b;
    const Complex ri = b / a;
    const Complex cube = a * a * a + a * a * b + a * b * b + b * b * b;
    return CoeffTriple{
        .a2 = (r + 1.0 + ri).real(),
        .a3_abs_sq = std::norm(cube),
        .a4 = (r * r + r + 1.0 + ri + ri * ri).real(),
    };
}

IdentityResiduals check_hecke_identities(const CoeffTriple& c) {
    return IdentityResiduals{
        .square = std::abs(c.a2 * c.a2 - (c.a4 + c.a2 + 1.0)),
        .product = std::abs(c.a2 * c.a4 - (c.a3_abs_sq - 1.0)),
    };
}

IdentityResiduals check_hecke_identities(const SatakeLocal& s) {
    return check_hecke_identities(sym_coeffs(s));
}

bool is_ramanujan_local(const SatakeLocal& s) { return s.is_tempered(); }

Envelope kim_sarnak_envelope(std::uint64_t p) {
    require_prime_like(p);
    const double x = static_cast<double>(p);
    const double e = std::pow(x, kKimSarnakExponent);
    const double e2 = std::pow(x, 2.0 * kKimSarnakExponent);
    return Envelope{e + 1.0 / e, e2 + 1.0 / e2 + 1.0};
}

void validate_sample_options(const SampleOptions& options) {
    if (options.mode == SampleMode::non_tempered &&
        !(options.nu_max > 0.0 && options.nu_max <= kKimSarnakExponent))
        fail(ErrorCode::invalid_input, "sample_satake: nu-max must lie in (0, 7/64]");
    if (options.prime_bound < 3)
        fail(ErrorCode::invalid_input, "sample_satake: prime bound must exceed 2");
}

double sato_tate_angle(std::uint64_t index, std::uint64_t seed) {
    auto gen = indexed_rng(seed, index);
    for (;;) {
        const double theta = kPi * unit_uniform(gen);
        const double s = std::sin(theta);
        if (unit_uniform(gen) < s * s)
            return theta;
    }
}

SatakeLocal sample_one(std::uint64_t index, const SampleOptions& options, std::uint64_t seed) {
    const auto& primes = primes_below(options.prime_bound);
    auto gen = indexed_rng(seed, index);
    const std::uint64_t p = primes[gen() % primes.size()];
    switch (options.mode) {
    case SampleMode::sato_tate:
        // Angle stream keyed off a derived seed so it is independent of the prime draw.
        return SatakeLocal::tempered(p, sato_tate_angle(index, seed ^ 0x9e3779b97f4a7c15ULL));
    case SampleMode::uniform_angle:
        return SatakeLocal::tempered(p, kPi * unit_uniform(gen));
    case SampleMode::non_tempered: {
        const double nu = options.nu_max * (1.0 - unit_uniform(gen));
        return SatakeLocal::non_tempered(p, nu);
    }
    }
    fail(ErrorCode::invalid_input, "sample_satake: unknown mode");
}

std::vector<SatakeLocal> sample_satake(std::size_t count, const SampleOptions& options,
                                       std::uint64_t seed) {
    if (count < 1)
        fail(ErrorCode::invalid_input, "sample_satake: count must be >= 1");
    validate_sample_options(options);
    std::vector<SatakeLocal> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(sample_one(i, options, seed));
    return out;
}

} // namespace ramanujan::satake
