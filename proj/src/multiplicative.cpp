#include "ramanujan/multiplicative.hpp"

#include <string>

#include "ramanujan/error.hpp"

namespace ramanujan::sieve {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

MultFuncSpec MultFuncSpec::threshold_weight(double y, double chi0, double chi1) {
    if (!(y >= 1.0))
        fail(ErrorCode::invalid_input, "threshold weight: y must be >= 1");
    return MultFuncSpec(Threshold{y, chi0, chi1});
}

MultFuncSpec MultFuncSpec::coefficient_table(std::vector<double> values) {
    return MultFuncSpec(Table{std::make_shared<const std::vector<double>>(std::move(values))});
}

MultFuncSpec MultFuncSpec::from_prime_function(std::uint64_t coverage,
                                               const std::function<double(std::uint64_t)>& f) {
    std::vector<double> values(coverage + 1, 0.0);
    for (std::uint64_t p = 2; p <= coverage; ++p)
        values[p] = f(p);
    return coefficient_table(std::move(values));
}

MultFuncSpec MultFuncSpec::convolution(MultFuncSpec left, MultFuncSpec right) {
    return MultFuncSpec(Convolution{std::make_shared<const MultFuncSpec>(std::move(left)),
                                    std::make_shared<const MultFuncSpec>(std::move(right))});
}

MultFuncSpec MultFuncSpec::moebius_quotient(MultFuncSpec numerator, MultFuncSpec weight) {
    return MultFuncSpec(
        MoebiusQuotient{std::make_shared<const MultFuncSpec>(std::move(numerator)),
                        std::make_shared<const MultFuncSpec>(std::move(weight))});
}

MultFuncSpec MultFuncSpec::coprime_to(std::uint64_t q) const {
    if (q < 1)
        fail(ErrorCode::invalid_input, "coprimality modulus must be >= 1");
    MultFuncSpec out = *this;
    out.modulus_ = modulus_ / gcd(modulus_, q) * q;
    return out;
}

std::uint64_t MultFuncSpec::coverage() const {
    return std::visit(
        overloaded{
            [](const Threshold&) { return std::uint64_t{UINT64_MAX}; },
            [](const Table& t) { return static_cast<std::uint64_t>(t.by_prime->size() - 1); },
            [](const Convolution& c) {
                return std::min(c.left->coverage(), c.right->coverage());
            },
            [](const MoebiusQuotient& m) {
                return std::min(m.numerator->coverage(), m.weight->coverage());
            },
        },
        kind_);
}

double MultFuncSpec::prime_value(std::uint64_t p) const {
    if (modulus_ != 1 && modulus_ % p == 0)
        return 0.0;
    return std::visit(
        overloaded{
            [p](const Threshold& t) {
                return static_cast<double>(p) <= t.y ? t.chi0 : t.chi1;
            },
            [p](const Table& t) {
                if (p >= t.by_prime->size())
                    fail(ErrorCode::invalid_input,
                         "coefficient table has no value at p = " + std::to_string(p));
                return (*t.by_prime)[p];
            },
            [p](const Convolution& c) {
                return c.left->prime_value(p) + c.right->prime_value(p);
            },
            [p](const MoebiusQuotient& m) {
                return m.numerator->prime_value(p) - m.weight->prime_value(p);
            },
        },
        kind_);
}

double MultFuncSpec::value(std::uint64_t n, const SieveTable& table) const {
    if (n == 1)
        return 1.0;
    if (!table.is_squarefree(n))
        return 0.0;
    double v = 1.0;
    while (n > 1) {
        const std::uint32_t p = table.spf(n);
        n /= p;
        v *= prime_value(p);
        if (v == 0.0)
            break;
    }
    return v;
}

double dirichlet_convolve(const MultFuncSpec& left, const MultFuncSpec& right, std::uint64_t n,
                          const SieveTable& table) {
    if (n < 1 || n > table.limit())
        fail(ErrorCode::invalid_input, "dirichlet_convolve: n outside table");
    std::vector<std::uint64_t> divisors{1};
    for (const auto& [p, e] : table.factorize(n)) {
        const std::size_t base = divisors.size();
        std::uint64_t pk = 1;
        for (std::uint32_t k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i)
                divisors.push_back(divisors[i] * pk);
        }
    }
    double total = 0.0;
    for (std::uint64_t d : divisors)
        total += left.value(d, table) * right.value(n / d, table);
    return total;
}

double moebius_factor(const MultFuncSpec& b, const MultFuncSpec& h, std::uint64_t n,
                      const SieveTable& table) {
    if (n < 1 || n > table.limit())
        fail(ErrorCode::invalid_input, "moebius_factor: n outside table");
    if (!table.is_squarefree(n))
        fail(ErrorCode::invalid_input,
             "moebius_factor: " + std::to_string(n) + " is not squarefree");

    std::vector<std::uint64_t> primes;
    for (const auto& pe : table.factorize(n))
        primes.push_back(pe.prime);
    const std::size_t k = primes.size();
    const std::size_t subsets = std::size_t{1} << k;

    std::vector<std::uint64_t> product(subsets, 1);
    for (std::size_t s = 1; s < subsets; ++s) {
        const std::size_t low = s & (~s + 1);
        std::size_t bit = 0;
        while ((std::size_t{1} << bit) != low)
            ++bit;
        product[s] = product[s ^ low] * primes[bit];
    }

    const double h1 = h.value(1, table);
    std::vector<double> g(subsets, 0.0);
    // Subsets in increasing numeric order have all proper subsets first.
    for (std::size_t s = 0; s < subsets; ++s) {
        double rest = 0.0;
        for (std::size_t t = s; t != 0; t = (t - 1) & s)
            rest += h.value(product[t], table) * g[s ^ t];
        g[s] = (b.value(product[s], table) - rest) / h1;
    }
    return g[subsets - 1];
}

} // namespace ramanujan::sieve
