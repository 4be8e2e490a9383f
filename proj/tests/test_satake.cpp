#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ramanujan/error.hpp"
#include "ramanujan/satake.hpp"

using namespace ramanujan;
using namespace ramanujan::satake;
using std::numbers::pi;

namespace {

// Tempered closed forms in c = cos(theta), trivial character.
CoeffTriple closed_form(double theta) {
    const double c = std::cos(theta);
    const double a3 = 8 * c * c * c - 4 * c;
    return {4 * c * c - 1, a3 * a3, 16 * c * c * c * c - 12 * c * c + 1};
}

// Non-tempered parameter sums with unit 1: alpha = p^nu, beta = p^-nu.
CoeffTriple non_tempered_form(double p, double nu) {
    const double s = std::pow(p, nu);
    const double r = s * s;
    const double a3 = s * s * s + s + 1 / s + 1 / (s * s * s);
    return {r + 1 + 1 / r, a3 * a3, r * r + r + 1 + 1 / r + 1 / (r * r)};
}

void check_triple(const CoeffTriple& got, const CoeffTriple& want, double eps = 1e-12) {
    CHECK(got.a2 == doctest::Approx(want.a2).epsilon(eps));
    CHECK(got.a3_abs_sq == doctest::Approx(want.a3_abs_sq).epsilon(eps));
    CHECK(got.a4 == doctest::Approx(want.a4).epsilon(eps));
}

} // namespace

TEST_CASE("adjoint coefficient examples") {
    CHECK(adjoint_coeff(SatakeLocal::tempered(5, 0.0)) == doctest::Approx(3.0));
    CHECK(adjoint_coeff(SatakeLocal::tempered(5, pi / 2)) == doctest::Approx(-1.0));

    const double ks = std::pow(2.0, 7.0 / 64) + std::pow(2.0, -7.0 / 64);
    CHECK(ks == doctest::Approx(2.005751).epsilon(1e-6));
    const auto s = SatakeLocal::from_eigenvalue(2, ks);
    CHECK_FALSE(s.is_tempered());
    CHECK(adjoint_coeff(s) == doctest::Approx(3.0230345078388).epsilon(1e-12));
    CHECK(adjoint_coeff(s) == doctest::Approx(adjoint_coeff_from_parameters(s)).epsilon(1e-12));
}

TEST_CASE("sym_coeffs examples") {
    check_triple(sym_coeffs(SatakeLocal::tempered(3, 0.0)), {3, 16, 5});
    const auto half = sym_coeffs(SatakeLocal::tempered(3, pi / 2));
    CHECK(half.a2 == doctest::Approx(-1.0));
    CHECK(half.a3_abs_sq == doctest::Approx(0.0));
    CHECK(half.a4 == doctest::Approx(1.0));
    // theta = pi/3: c = 1/2 gives A = 0, A[3] = 1 - 2 = -1, A[4] = -1.
    const auto third = sym_coeffs(SatakeLocal::tempered(3, pi / 3));
    CHECK(third.a2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(third.a3_abs_sq == doctest::Approx(1.0));
    CHECK(third.a4 == doctest::Approx(-1.0));
}

TEST_CASE("sym_coeffs matches closed forms across the angle range") {
    for (int k = 0; k <= 200; ++k) {
        const double theta = pi * k / 200.0;
        const auto got = sym_coeffs(SatakeLocal::tempered(7, theta));
        const auto want = closed_form(theta);
        CHECK(std::abs(got.a2 - want.a2) < 1e-12);
        CHECK(std::abs(got.a3_abs_sq - want.a3_abs_sq) < 1e-11);
        CHECK(std::abs(got.a4 - want.a4) < 1e-12);
    }
}

TEST_CASE("sym_coeffs matches non-tempered parameter sums") {
    for (double p : {2.0, 5.0, 101.0, 997.0})
        for (double nu : {1e-3, 1.0 / 32, 0.05, 7.0 / 64})
            check_triple(sym_coeffs(SatakeLocal::non_tempered(static_cast<std::uint64_t>(p), nu)),
                         non_tempered_form(p, nu), 1e-12);
}

TEST_CASE("Hecke identity examples") {
    for (const auto& s : {SatakeLocal::tempered(3, pi / 3), SatakeLocal::tempered(3, 0.0),
                          SatakeLocal::non_tempered(5, 7.0 / 64)}) {
        const auto r = check_hecke_identities(s);
        CHECK(r.square < kIdentityTolerance);
        CHECK(r.product < kIdentityTolerance);
    }
    // The boundary triple satisfies both identities exactly: 9 = 5 + 3 + 1, 15 = 16 - 1.
    const auto r = check_hecke_identities(CoeffTriple{3, 16, 5});
    CHECK(r.square == 0.0);
    CHECK(r.product == 0.0);
    // A triple with the spec's |A[3]|^2 = 0 at theta = pi/3 breaks the product identity.
    CHECK(check_hecke_identities(CoeffTriple{0, 0, -1}).product == doctest::Approx(1.0));
}

TEST_CASE("identities hold for a non-trivial central character") {
    for (double phi : {0.3, 1.7, 2.9}) {
        const Complex chi = std::polar(1.0, phi);
        const Complex unit = std::polar(1.0, phi / 2);
        for (double mu : {0.0, 1.3, 2.0, 2.2}) {
            const auto s = SatakeLocal::from_eigenvalue(101, mu * unit, chi);
            const auto r = check_hecke_identities(s);
            CHECK(r.square < kIdentityTolerance);
            CHECK(r.product < kIdentityTolerance);
            CHECK(std::abs(s.lambda() - mu * unit) < 1e-12);
            CHECK(std::abs(s.chi() - chi) < 1e-12);
            CHECK(adjoint_coeff(s) ==
                  doctest::Approx(adjoint_coeff_from_parameters(s)).epsilon(1e-12));
        }
    }
}

TEST_CASE("Ramanujan predicate") {
    CHECK(is_ramanujan_local(SatakeLocal::from_eigenvalue(7, 2.0)));
    CHECK(is_ramanujan_local(SatakeLocal::from_eigenvalue(7, 0.0)));
    CHECK(is_ramanujan_local(SatakeLocal::from_eigenvalue(7, -2.0)));

    const auto s = SatakeLocal::non_tempered(7, 1.0 / 32);
    CHECK_FALSE(is_ramanujan_local(s));
    const double want = std::pow(7.0, 1.0 / 16) + 1 + std::pow(7.0, -1.0 / 16);
    CHECK(adjoint_coeff(s) == doctest::Approx(want).epsilon(1e-12));
    CHECK(adjoint_coeff(s) > 3.0);
    CHECK(sym_coeffs(s).a4 > 5.0);
}

TEST_CASE("Kim-Sarnak envelope") {
    const auto e = kim_sarnak_envelope(2);
    CHECK(e.eigenvalue == doctest::Approx(2.0057503602988).epsilon(1e-12));
    CHECK(e.adjoint == doctest::Approx(3.0230345078388).epsilon(1e-12));
    double last = 0;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 101, 1009, 10007}) {
        const auto ep = kim_sarnak_envelope(p);
        CHECK(ep.eigenvalue > last);
        last = ep.eigenvalue;
    }
    CHECK_THROWS_AS(SatakeLocal::from_eigenvalue(2, 2.1), Error);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(SatakeLocal::from_parameters(5, 2.0, 2.0), Error);
    CHECK_THROWS_AS(SatakeLocal::non_tempered(5, 0.2), Error);
    CHECK_THROWS_AS(SatakeLocal::non_tempered(5, 0.0), Error);
    CHECK_THROWS_AS(SatakeLocal::tempered(1, 0.3), Error);
    // From parameters recovers the shape.
    const auto t = SatakeLocal::from_parameters(11, std::polar(1.0, 0.4), std::polar(1.0, -0.4));
    REQUIRE(t.is_tempered());
    CHECK(std::get<Tempered>(t.shape()).theta == doctest::Approx(0.4));
    const double s = std::pow(11.0, 0.05);
    const auto n = SatakeLocal::from_parameters(11, s, 1 / s);
    REQUIRE_FALSE(n.is_tempered());
    CHECK(std::get<NonTempered>(n.shape()).nu == doctest::Approx(0.05));
}

TEST_CASE("sampling") {
    SampleOptions st;
    const auto a = sample_satake(1000, st, 42);
    double mean = 0;
    for (const auto& s : a)
        mean += adjoint_coeff(s);
    mean /= 1000.0;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(1000.0));

    SampleOptions nt;
    nt.mode = SampleMode::non_tempered;
    nt.nu_max = 7.0 / 64;
    for (const auto& s : sample_satake(10, nt, 1))
        CHECK_FALSE(is_ramanujan_local(s));

    SampleOptions ua;
    ua.mode = SampleMode::uniform_angle;
    const auto x = sample_satake(5, ua, 7);
    const auto y = sample_satake(5, ua, 7);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(x[i].p() == y[i].p());
        CHECK(x[i].alpha() == y[i].alpha());
    }

    SampleOptions bad;
    bad.mode = SampleMode::non_tempered;
    bad.nu_max = 0.2;
    CHECK_THROWS_AS(sample_satake(3, bad, 1), Error);
    CHECK_THROWS_AS(sample_satake(0, st, 1), Error);
}

TEST_CASE("Sato-Tate angle moments") {
    // E[A] = 0, E[A^2] = 1, E[|A[3]|^2] = 1 under (2/pi) sin^2.
    const int n = 200000;
    double m1 = 0, m2 = 0, m3 = 0;
    for (int i = 0; i < n; ++i) {
        const auto c = closed_form(sato_tate_angle(static_cast<std::uint64_t>(i), 9));
        m1 += c.a2;
        m2 += c.a2 * c.a2;
        m3 += c.a3_abs_sq;
    }
    CHECK(std::abs(m1 / n) < 0.01);
    CHECK(std::abs(m2 / n - 1.0) < 0.02);
    CHECK(std::abs(m3 / n - 1.0) < 0.02);
}

TEST_CASE("property sweep: bounds and implication") {
    for (auto mode : {SampleMode::sato_tate, SampleMode::uniform_angle, SampleMode::non_tempered}) {
        SampleOptions o;
        o.mode = mode;
        for (const auto& s : sample_satake(20000, o, 3)) {
            const auto c = sym_coeffs(s);
            // A = 4c^2 - 1 >= -1; A[4] = 16c^4 - 12c^2 + 1 bottoms out at c^2 = 3/8.
            CHECK(c.a2 >= -1.0 - 1e-12);
            CHECK(c.a4 >= -1.25 - 1e-12);
            const auto env = kim_sarnak_envelope(s.p());
            CHECK(std::abs(s.lambda()) <= env.eigenvalue * (1 + 1e-12));
            CHECK(std::abs(c.a2) <= env.adjoint * (1 + 1e-12));
            if (!is_ramanujan_local(s)) {
                CHECK(c.a2 > 3.0);
                CHECK(c.a4 > 5.0);
            }
        }
    }
}
