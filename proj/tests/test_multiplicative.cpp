#include <doctest.h>

#include <cmath>

#include "ramanujan/error.hpp"
#include "ramanujan/multiplicative.hpp"

using namespace ramanujan;
using namespace ramanujan::sieve;

namespace {

const SieveTable& table() {
    static const auto t = build_table(20000);
    return t;
}

// Integer prime values keep every product exact in double precision.
MultFuncSpec integer_spec(std::uint64_t coverage, int shift) {
    return MultFuncSpec::from_prime_function(
        coverage, [shift](std::uint64_t p) { return static_cast<double>(int(p % 7) - shift); });
}

// Reference divisor sum written independently of the library routine.
double brute_convolve(const MultFuncSpec& l, const MultFuncSpec& r, std::uint64_t n) {
    double s = 0;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0)
            s += l.value(d, table()) * r.value(n / d, table());
    return s;
}

} // namespace

TEST_CASE("spec values") {
    const auto h = MultFuncSpec::threshold_weight(10, 2, -2);
    CHECK(h.value(1, table()) == 1.0);
    CHECK(h.value(7, table()) == 2.0);
    CHECK(h.value(11, table()) == -2.0);
    CHECK(h.value(77, table()) == -4.0);
    CHECK(h.value(12, table()) == 0.0);
    const auto hq = h.coprime_to(6);
    CHECK(hq.value(10, table()) == 0.0);
    CHECK(hq.value(35, table()) == 4.0);
    CHECK_THROWS_AS(MultFuncSpec::threshold_weight(0.5, 2, -2), Error);
    CHECK_THROWS_AS(h.coprime_to(0), Error);
}

TEST_CASE("dirichlet_convolve examples") {
    const auto a1 = integer_spec(20000, 2);
    const auto a2 = integer_spec(20000, 4);
    CHECK(dirichlet_convolve(a1, a2, 1, table()) == 1.0);
    for (std::uint64_t p : {2, 3, 5, 13, 101, 9973})
        CHECK(dirichlet_convolve(a1, a2, p, table()) ==
              a1.prime_value(p) + a2.prime_value(p));
    const auto b = MultFuncSpec::convolution(a1, a2);
    CHECK(dirichlet_convolve(a1, a2, 6, table()) == b.value(2, table()) * b.value(3, table()));
    CHECK(dirichlet_convolve(a1, a2, 6, table()) == brute_convolve(a1, a2, 6));
    CHECK_THROWS_AS(dirichlet_convolve(a1, a2, 30000, table()), Error);
}

TEST_CASE("convolution closed form matches divisor sums") {
    const auto a1 = integer_spec(20000, 2);
    const auto a2 = integer_spec(20000, 4);
    const auto b = MultFuncSpec::convolution(a1, a2);
    for (std::uint64_t n = 1; n <= 3000; ++n) {
        if (!table().is_squarefree(n))
            continue;
        REQUIRE(b.value(n, table()) == dirichlet_convolve(a1, a2, n, table()));
        if (n <= 500)
            REQUIRE(b.value(n, table()) == brute_convolve(a1, a2, n));
    }
}

TEST_CASE("moebius_factor examples") {
    std::vector<double> bv(20, 0.0), hv(20, 0.0);
    bv[7] = 5;
    hv[7] = 2;
    bv[2] = 3;
    hv[2] = -1;
    bv[3] = 4;
    hv[3] = 1;
    const auto b = MultFuncSpec::coefficient_table(bv);
    const auto h = MultFuncSpec::coefficient_table(hv);
    CHECK(moebius_factor(b, h, 7, table()) == 3.0);
    CHECK(moebius_factor(b, h, 1, table()) == 1.0);
    const double g6 = moebius_factor(b, h, 6, table());
    CHECK(g6 == 4.0 * 3.0);
    // Re-convolution: B(6) = sum over d | 6 of h(d) g(6/d).
    const double g2 = moebius_factor(b, h, 2, table());
    const double g3 = moebius_factor(b, h, 3, table());
    CHECK(b.value(6, table()) == g6 + hv[2] * g3 + hv[3] * g2 + hv[2] * hv[3]);
    CHECK_THROWS_AS(moebius_factor(b, h, 12, table()), Error);
    CHECK_THROWS_AS(moebius_factor(b, h, 30000, table()), Error);
}

TEST_CASE("h * g = B round-trip on squarefree n <= 1e4") {
    const auto a1 = integer_spec(20000, 2);
    const auto a2 = integer_spec(20000, 5);
    const auto b = MultFuncSpec::convolution(a1, a2);
    const auto h = MultFuncSpec::threshold_weight(50, 2, -2);
    const auto g = MultFuncSpec::moebius_quotient(b, h);
    std::size_t checked = 0;
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        if (!table().is_squarefree(n))
            continue;
        const double gn = moebius_factor(b, h, n, table());
        REQUIRE(gn == g.value(n, table()));
        REQUIRE(dirichlet_convolve(h, g, n, table()) == b.value(n, table()));
        ++checked;
    }
    CHECK(checked == 6083);
}
