#pragma once

/*
 * Local Hecke data of a Maass form at an unramified prime p.
 *
 * The Satake pair {alpha, beta} has alpha*beta = chi(p) (unit modulus) and
 * alpha + beta = lambda(p).  Two shapes occur:
 *
 *   tempered      alpha = u e^{i theta},  beta = u e^{-i theta},  theta in [0, pi]
 *   non-tempered  alpha = u p^{nu},       beta = u p^{-nu},       0 < nu <= 7/64
 *
 * with |u| = 1.  From the pair we read off the coefficients of the adjoint
 * lift, the cube lift and the character-twisted fourth lift:
 *
 *   A      = a/b + 1 + b/a
 *   A[3]   = a^3 + a^2 b + a b^2 + b^3
 *   A[4]   = a^2/b^2 + a/b + 1 + b/a + b^2/a^2
 *
 * which satisfy A^2 = A[4] + A + 1 and A * A[4] = |A[3]|^2 - 1.
 */

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

namespace ramanujan::satake {

using Complex = std::complex<double>;

inline constexpr double kKimSarnakExponent = 7.0 / 64.0;
inline constexpr double kIdentityTolerance = 1e-10;

struct Tempered {
    double theta;
};

struct NonTempered {
    double nu;
};

using LocalShape = std::variant<Tempered, NonTempered>;

class SatakeLocal {
public:
    static SatakeLocal tempered(std::uint64_t p, double theta, Complex unit = 1.0);
    static SatakeLocal non_tempered(std::uint64_t p, double nu, Complex unit = 1.0);

    // Roots of X^2 - lambda X + chi.  |lambda / sqrt(chi)| <= 2 + boundary_guard
    // is read as tempered (the guard absorbs rounding in tabulated data).
    static SatakeLocal from_eigenvalue(std::uint64_t p, Complex lambda, Complex chi = 1.0,
                                       double boundary_guard = 0.0);

    // Validates |alpha beta| = 1 and that the pair fits one of the two shapes.
    static SatakeLocal from_parameters(std::uint64_t p, Complex alpha, Complex beta);

    std::uint64_t p() const noexcept { return p_; }
    const LocalShape& shape() const noexcept { return shape_; }
    Complex unit() const noexcept { return unit_; }
    bool is_tempered() const noexcept { return std::holds_alternative<Tempered>(shape_); }

    Complex alpha() const;
    Complex beta() const;
    Complex lambda() const { return alpha() + beta(); }
    Complex chi() const { return unit_ * unit_; }

private:
    SatakeLocal(std::uint64_t p, LocalShape shape, Complex unit)
        : p_(p), shape_(shape), unit_(unit) {}

    std::uint64_t p_;
    LocalShape shape_;
    Complex unit_;
};

struct CoeffTriple {
    double a2;        // A(p)
    double a3_abs_sq; // |A[3](p)|^2
    double a4;        // A[4](p)
};

struct IdentityResiduals {
    double square;  // |A^2 - (A[4] + A + 1)|
    double product; // |A A[4] - (|A[3]|^2 - 1)|
};

struct Envelope {
    double eigenvalue; // p^{7/64} + p^{-7/64}
    double adjoint;    // p^{7/32} + p^{-7/32} + 1
};

// |lambda|^2 - 1, the twisted value lambda(p^2) conj(chi(p)).
double adjoint_coeff(const SatakeLocal& s);

// Same quantity as the parameter sum alpha/beta + 1 + beta/alpha.
double adjoint_coeff_from_parameters(const SatakeLocal& s);

CoeffTriple sym_coeffs(const SatakeLocal& s);

IdentityResiduals check_hecke_identities(const SatakeLocal& s);
IdentityResiduals check_hecke_identities(const CoeffTriple& c);

bool is_ramanujan_local(const SatakeLocal& s);

Envelope kim_sarnak_envelope(std::uint64_t p);

enum class SampleMode { sato_tate, uniform_angle, non_tempered };

struct SampleOptions {
    SampleMode mode = SampleMode::sato_tate;
    double nu_max = kKimSarnakExponent;
    // Primes are drawn uniformly from those below this bound.
    std::uint64_t prime_bound = 1000;
};

// Item `index` of the seeded stream; sample_satake(n) is items 0..n-1.
SatakeLocal sample_one(std::uint64_t index, const SampleOptions& options, std::uint64_t seed);

std::vector<SatakeLocal> sample_satake(std::size_t count, const SampleOptions& options,
                                       std::uint64_t seed);

// Sato-Tate angle (density (2/pi) sin^2 theta on [0, pi]) by rejection.
double sato_tate_angle(std::uint64_t index, std::uint64_t seed);

void validate_sample_options(const SampleOptions& options);

} // namespace ramanujan::satake
