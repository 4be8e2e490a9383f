#include <doctest.h>

#include <cmath>

#include "ramanujan/bounds.hpp"
#include "ramanujan/error.hpp"

using namespace ramanujan;
using namespace ramanujan::bounds;

namespace {

forms::FormMeta meta(std::uint64_t level, double t) {
    forms::FormMeta m;
    m.label = "N" + std::to_string(level);
    m.level = level;
    m.t = t;
    return m;
}

} // namespace

TEST_CASE("conductor") {
    CHECK(conductor(meta(1, 0)) == 1.0);
    CHECK(conductor(meta(5, 0)) == 25.0);
    CHECK(conductor(meta(2, 3)) == 64.0);
    CHECK(conductor(meta(2, -3)) == 64.0);
    CHECK_THROWS_AS(conductor(meta(0, 1)), Error);
    for (std::uint64_t k : {2, 3, 7})
        CHECK(conductor(meta(3 * k, 1.25)) ==
              doctest::Approx(static_cast<double>(k * k) * conductor(meta(3, 1.25)))
                  .epsilon(1e-12));
}

TEST_CASE("rounding helpers") {
    CHECK(truncate_below(2.2352795914, 5) == doctest::Approx(2.23527).epsilon(1e-15));
    // A value already on the grid steps down one unit: strictly below.
    CHECK(truncate_below(2.5, 5) == doctest::Approx(2.49999).epsilon(1e-15));
    CHECK(round_up(1.0 / 2.23527, 6) == doctest::Approx(0.447374).epsilon(1e-15));
    CHECK(round_up(0.5, 6) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("two-form exponent") {
    const auto r = least_prime_exponent(2);
    CHECK(std::abs(r.zero - 2.2352795914) < 1e-8);
    CHECK(r.U_used == doctest::Approx(2.23527).epsilon(1e-15));
    CHECK(std::round(r.exponent * 1e6) == 447374.0);
    CHECK(r.exponent * r.U_used >= 1.0);
    CHECK(r.exponent * 2.23527 >= 1.0);
    CHECK_FALSE(r.closed_form_zero.has_value());
}

TEST_CASE("three-form exponent") {
    const auto r = least_prime_exponent(3);
    CHECK(std::abs(r.zero - std::exp(0.25)) < 1e-8);
    REQUIRE(r.closed_form_zero.has_value());
    CHECK(*r.closed_form_zero == doctest::Approx(std::exp(0.25)).epsilon(1e-15));
    CHECK(r.U_used == doctest::Approx(1.28402).epsilon(1e-15));
    // The stated truncation gives 0.778805; the untruncated zero gives 0.778801.
    CHECK(std::round(r.exponent * 1e6) == 778805.0);
    CHECK(std::round(r.untruncated_exponent * 1e6) == 778801.0);
    CHECK(std::abs(r.untruncated_exponent - 0.778798) < 5e-6);
    CHECK(r.exponent * r.U_used >= 1.0);
    CHECK_THROWS_AS(least_prime_exponent(4), Error);
}

TEST_CASE("least-prime bound") {
    const forms::FormMeta trivial[] = {meta(1, 0), meta(1, 0)};
    const auto b2 = least_prime_bound(trivial);
    CHECK(b2.base == 1.0);
    CHECK(std::round(b2.exponent * 1e6) == 447374.0);
    CHECK(b2.implied_constant == "unspecified");

    const forms::FormMeta three[] = {meta(2, 1), meta(3, 0), meta(1, 2)};
    const auto b3 = least_prime_bound(three);
    CHECK(b3.base == 36.0);
    CHECK(b3.exponent > 0.0);
    CHECK(b3.exponent < 1.0);

    // (Q1 Q2)^{1/(2U)} = base^{1/U}.
    const forms::FormMeta pair[] = {meta(5, 2.5), meta(3, 0.75)};
    const auto b = least_prime_bound(pair);
    const double q = conductor(pair[0]) * conductor(pair[1]);
    CHECK(std::pow(q, 1.0 / (2 * b.U_used)) ==
          doctest::Approx(std::pow(b.base, 1.0 / b.U_used)).epsilon(1e-12));

    const forms::FormMeta one[] = {meta(1, 0)};
    CHECK_THROWS_AS(least_prime_bound(one), Error);

    const auto j = to_json(b3);
    CHECK(j.at("base") == 36.0);
    CHECK(j.at("implied_constant") == "unspecified");
}

TEST_CASE("convexity exponent") {
    CHECK(convexity_exponent(23.0 / 32) == doctest::Approx(9.0 / 64).epsilon(1e-15));
    CHECK(convexity_exponent(53.0 / 64) == doctest::Approx(11.0 / 128).epsilon(1e-15));
    CHECK(convexity_exponent(1.0 - 1e-12) < 1e-11);
    CHECK_THROWS_AS(convexity_exponent(1.0), Error);
    CHECK_THROWS_AS(convexity_exponent(0.0), Error);
}
