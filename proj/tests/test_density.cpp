#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ramanujan/density.hpp"
#include "ramanujan/error.hpp"
#include "ramanujan/ingest.hpp"
#include "ramanujan/parallel.hpp"

using namespace ramanujan;
using namespace ramanujan::density;
using satake::CoeffTriple;
using std::numbers::pi;

namespace {

const sieve::SieveTable& table() {
    static const auto t = sieve::build_table(100'000);
    return t;
}

CoeffTriple closed_form(double theta) {
    const double c = std::cos(theta);
    const double a3 = 8 * c * c * c - 4 * c;
    return {4 * c * c - 1, a3 * a3, 16 * c * c * c * c - 12 * c * c + 1};
}

FormFamily fixture_family(const std::string& a, const std::string& b) {
    const std::filesystem::path dir = RAMANUJAN_TEST_FIXTURE_DIR;
    FormFamily f;
    for (const auto& label : {a, b})
        f.members.push_back(
            ingest::to_form(ingest::read_record(dir / (label + ".json"), ingest::Source::fixture)));
    return f;
}

FormFamily sato_tate_family(std::uint64_t coverage) {
    FormFamily f;
    for (std::uint64_t seed : {11u, 12u}) {
        forms::FormMeta m;
        m.label = "st-" + std::to_string(seed);
        m.source = std::make_shared<forms::SatoTateSource>(seed, coverage);
        f.members.push_back(m);
    }
    return f;
}

// E[U] for two independent Sato-Tate forms by midpoint quadrature; the
// integrand is a trigonometric polynomial so 256 nodes per axis is exact
// to rounding.
double sato_tate_mean_U() {
    const int n = 256;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t1 = pi * (i + 0.5) / n;
        const double w1 = 2.0 / pi * std::sin(t1) * std::sin(t1) * pi / n;
        const auto c1 = closed_form(t1);
        for (int j = 0; j < n; ++j) {
            const double t2 = pi * (j + 0.5) / n;
            const double w2 = 2.0 / pi * std::sin(t2) * std::sin(t2) * pi / n;
            const double inner = 1 + 3 * (c1.a2 + closed_form(t2).a2) + 5 * c1.a4;
            total += w1 * w2 * inner * inner;
        }
    }
    return total;
}

} // namespace

TEST_CASE("Chebyshev weight examples") {
    const CoeffTriple top{3, 16, 5}, zero{-1, 0, 1};
    const CoeffTriple two_top[] = {top, top};
    const CoeffTriple two_zero[] = {zero, zero};
    const CoeffTriple three_top[] = {top, top, top};
    CHECK(chebyshev_weight(two_top, 2) == 1936.0);
    CHECK(chebyshev_weight(two_zero, 2) == 0.0);
    CHECK(chebyshev_weight(three_top, 3) == 53.0 * 53.0);
    CHECK_THROWS_AS(chebyshev_weight(two_top, 3), Error);
    CHECK_THROWS_AS(chebyshev_weight(std::span(two_top).first(1), 1), Error);
}

TEST_CASE("expansion examples") {
    const auto zero = expansion_check(closed_form(0), closed_form(0));
    CHECK(zero.squared == doctest::Approx(1936.0));
    CHECK(zero.expanded == doctest::Approx(1936.0));
    CHECK(zero.residual < 1e-9);
    const auto third = expansion_check(closed_form(pi / 3), closed_form(pi / 3));
    CHECK(third.squared == doctest::Approx(16.0));
    CHECK(third.expanded == doctest::Approx(16.0));
    CHECK(third.residual < 1e-9);
    // The triple (0, 0, -1) fails the product identity and is rejected.
    CHECK_THROWS_AS(expansion_check({0, 0, -1}, {0, 0, -1}), Error);
}

TEST_CASE("expansion sweep over 1e5 pairs") {
    const auto s = expansion_sweep(100'000, 1);
    CHECK(s.pairs == 100'000);
    CHECK(s.max_residual < 1e-9);
    const auto ref = expansion_sweep_serial(1000, 1);
    const auto omp = expansion_sweep(1000, 1);
    CHECK(ref.max_residual == omp.max_residual);
}

TEST_CASE("density constants") {
    CHECK(density_lower_bound(1, BoundVariant::unconditional) == Rational(34, 35));
    CHECK(density_lower_bound(2, BoundVariant::unconditional) == Rational(43, 44));
    CHECK(density_lower_bound(2, BoundVariant::conditional) == Rational(118, 119));
    Rational prev(0);
    for (std::int64_t m = 1; m <= 50; ++m) {
        const auto d = density_lower_bound(m, BoundVariant::unconditional);
        CHECK(d > prev);
        CHECK(d < Rational(1));
        CHECK(Rational(1) - d == Rational(1, 26 + 9 * m));
        CHECK(density_lower_bound(m, BoundVariant::conditional) >= d);
        prev = d;
    }
    CHECK_THROWS_AS(density_lower_bound(0, BoundVariant::unconditional), Error);

    CHECK(pigeonhole_intersection(Rational(34, 35), Rational(34, 35)) == Rational(33, 35));
    CHECK(pigeonhole_intersection(Rational(1), Rational(2, 7)) == Rational(2, 7));
    CHECK(pigeonhole_intersection(Rational(1, 2), Rational(1, 3)) == Rational(0));
    CHECK_THROWS_AS(pigeonhole_intersection(Rational(3, 2), Rational(1, 3)), Error);
    CHECK_THROWS_AS(pigeonhole_intersection(Rational(-1, 2), Rational(1, 3)), Error);
}

TEST_CASE("fixture scans") {
    const auto tempered = exceptional_scan(
        fixture_family("fixture-tempered-1", "fixture-tempered-2"), 10'000, table());
    CHECK(tempered.exceptional_count == 0);
    CHECK(tempered.implied_upper == 0.0);
    CHECK(tempered.theory_bound == Rational(1, 44));

    const auto mixed =
        exceptional_scan(fixture_family("fixture-mixed-1", "fixture-mixed-2"), 10'000, table());
    CHECK(mixed.exceptional_count == 2);
    CHECK(mixed.exceptional_primes == std::vector<std::uint64_t>{11, 101});
    CHECK(mixed.min_exceptional_U > 1936.0);
    CHECK(mixed.threshold_violations == 0);
    CHECK(mixed.implied_upper ==
          doctest::Approx(2.0 / static_cast<double>(mixed.pi_X)).epsilon(1e-15));

    const auto j = to_json(mixed);
    CHECK(j.at("exceptional_count") == 2);
    CHECK(j.at("theory_bound") == "1/44");
    CHECK(!j.at("assumptions").empty());
}

TEST_CASE("data gaps are reported") {
    FormFamily f = sato_tate_family(1000);
    forms::FormMeta gappy;
    gappy.label = "gappy";
    gappy.source = std::make_shared<forms::TableSource>(
        std::vector<std::pair<std::uint64_t, double>>{{2, 0.5}, {5, 0.1}, {7, -1.0}}, 7);
    f.members[1] = gappy;
    try {
        exceptional_scan(f, 7, table());
        FAIL("expected data_gap");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::data_gap);
        CHECK(std::string(e.what()).find('3') != std::string::npos);
    }
    CHECK_THROWS_AS(exceptional_scan(sato_tate_family(1000), 2000, table()), Error);
}

TEST_CASE("levels exclude ramified primes") {
    FormFamily f = sato_tate_family(1000);
    f.members[0].level = 6;
    const auto r = exceptional_scan(f, 1000, table());
    CHECK(r.pi_X == table().prime_count(1000) - 2);
}

TEST_CASE("Sato-Tate family mean of U") {
    const double analytic = sato_tate_mean_U();
    CHECK(analytic == doctest::Approx(44.0).epsilon(1e-10));
    const auto r = exceptional_scan(sato_tate_family(100'000), 100'000, table());
    CHECK(r.exceptional_count == 0);
    CHECK(std::abs(r.running_mean_U - analytic) <
          4.0 * r.sample_std_U / std::sqrt(static_cast<double>(r.pi_X)));
    CHECK(r.chebyshev_upper == doctest::Approx(r.running_mean_U / 1936.0));
}

TEST_CASE("serial and parallel scans agree") {
    const auto family = sato_tate_family(100'000);
    int saved = available_threads();
    const auto ref = exceptional_scan_serial(family, 100'000, table());
    for (int n : {1, 3}) {
        set_threads(n);
        const auto r = exceptional_scan(family, 100'000, table());
        CHECK(r.pi_X == ref.pi_X);
        CHECK(r.exceptional_count == ref.exceptional_count);
        CHECK(r.running_mean_U == doctest::Approx(ref.running_mean_U).epsilon(1e-13));
        CHECK(r.sample_std_U == doctest::Approx(ref.sample_std_U).epsilon(1e-10));
    }
    set_threads(saved);
}

TEST_CASE("prime-number-theorem trends") {
    const std::vector<std::uint64_t> grid{1000, 10'000, 100'000};
    for (const auto& row : pnt_trend([](std::uint64_t) { return 1.0; }, grid, table()))
        CHECK(row.ratio == 1.0);

    const auto a_rows = pnt_trend(
        [](std::uint64_t p) { return closed_form(satake::sato_tate_angle(p, 11)).a2; }, grid,
        table());
    for (std::size_t i = 1; i < a_rows.size(); ++i)
        CHECK(std::abs(a_rows[i].ratio) < std::abs(a_rows[i - 1].ratio));
    CHECK(std::abs(a_rows.back().ratio) < 0.05);

    const auto a3_rows = pnt_trend(
        [](std::uint64_t p) { return closed_form(satake::sato_tate_angle(p, 11)).a3_abs_sq; },
        grid, table());
    CHECK(std::abs(a3_rows.back().ratio - 1.0) < 0.1);

    const std::vector<std::uint64_t> bad{1000, 100};
    CHECK_THROWS_AS(pnt_trend([](std::uint64_t) { return 1.0; }, bad, table()), Error);
}
