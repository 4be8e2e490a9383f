#include "ramanujan/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ramanujan/error.hpp"
#include "ramanujan/kernels.hpp"
#include "ramanujan/parallel.hpp"

namespace ramanujan::density {

namespace {

constexpr std::uint64_t kPrimeChunk = 2048;

double threshold_value(std::size_t m) {
    const double t = 26.0 + 9.0 * static_cast<double>(m);
    return t * t;
}

std::vector<std::uint64_t> scan_primes(const FormFamily& family, std::uint64_t X,
                                       const sieve::SieveTable& table) {
    if (family.m() < 2)
        fail(ErrorCode::invalid_input, "exceptional_scan: family needs at least 2 members");
    for (const auto& f : family.members) {
        if (f.level < 1)
            fail(ErrorCode::invalid_input, "exceptional_scan: level must be >= 1");
        if (!f.source)
            fail(ErrorCode::data_gap, "exceptional_scan: " + f.label + " has no coefficients");
    }
    if (X > table.limit())
        fail(ErrorCode::invalid_input, "exceptional_scan: X exceeds sieve table limit");
    std::vector<std::uint64_t> out;
    for (std::uint32_t p : table.primes()) {
        if (p > X)
            break;
        const bool ramified = std::any_of(family.members.begin(), family.members.end(),
                                          [p](const auto& f) { return f.level % p == 0; });
        if (!ramified)
            out.push_back(p);
    }
    return out;
}

struct ScanPartial {
    std::uint64_t count = 0;
    std::vector<std::uint64_t> exceptional;
    std::vector<std::uint64_t> gaps;
    CompensatedSum sum_u;
    CompensatedSum sum_u2;
    double min_exceptional_u = std::numeric_limits<double>::infinity();
    std::uint64_t violations = 0;

    void merge(const ScanPartial& o) {
        count += o.count;
        exceptional.insert(exceptional.end(), o.exceptional.begin(), o.exceptional.end());
        gaps.insert(gaps.end(), o.gaps.begin(), o.gaps.end());
        sum_u.add(o.sum_u);
        sum_u2.add(o.sum_u2);
        min_exceptional_u = std::min(min_exceptional_u, o.min_exceptional_u);
        violations += o.violations;
    }
};

void scan_prime(const FormFamily& family, std::uint64_t p, ScanPartial& acc) {
    std::vector<satake::CoeffTriple> triples;
    triples.reserve(family.m());
    bool any_rp = false;
    for (const auto& f : family.members) {
        const auto lambda = f.source->eigenvalue(p);
        if (!lambda) {
            acc.gaps.push_back(p);
            return;
        }
        const auto local = satake::SatakeLocal::from_eigenvalue(p, *lambda, 1.0, kBoundaryGuard);
        any_rp = any_rp || satake::is_ramanujan_local(local);
        triples.push_back(satake::sym_coeffs(local));
    }
    const double u = chebyshev_weight(triples, family.m());
    ++acc.count;
    acc.sum_u.add(u);
    acc.sum_u2.add(u * u);
    if (!any_rp) {
        acc.exceptional.push_back(p);
        acc.min_exceptional_u = std::min(acc.min_exceptional_u, u);
        if (!(u > threshold_value(family.m())))
            ++acc.violations;
    }
}

DensityReport finish(const FormFamily& family, std::uint64_t X, ScanPartial total) {
    if (!total.gaps.empty()) {
        std::ostringstream os;
        os << "missing coefficients at " << total.gaps.size() << " prime(s):";
        for (std::size_t i = 0; i < std::min<std::size_t>(total.gaps.size(), 10); ++i)
            os << ' ' << total.gaps[i];
        if (total.gaps.size() > 10)
            os << " ...";
        fail(ErrorCode::data_gap, os.str());
    }
    DensityReport r;
    r.X = X;
    r.m = family.m();
    r.pi_X = total.count;
    r.exceptional_count = total.exceptional.size();
    r.exceptional_primes = std::move(total.exceptional);
    r.threshold_violations = total.violations;
    r.min_exceptional_U = r.exceptional_count ? total.min_exceptional_u : 0.0;
    if (r.pi_X > 0) {
        const double n = static_cast<double>(r.pi_X);
        r.running_mean_U = total.sum_u.value() / n;
        r.implied_upper = static_cast<double>(r.exceptional_count) / n;
        if (r.pi_X > 1) {
            const double var = (total.sum_u2.value() - n * r.running_mean_U * r.running_mean_U) /
                               (n - 1.0);
            r.sample_std_U = std::sqrt(std::max(0.0, var));
        }
    }
    r.chebyshev_upper = r.running_mean_U / threshold_value(family.m());
    r.theory_bound = Rational(1, 26 + 9 * static_cast<std::int64_t>(family.m()));
    if (family.distinct_rp_assumed)
        r.assumptions.push_back(family.assumption_note);
    r.assumptions.push_back("trivial central character");
    r.assumptions.push_back("primes dividing any level excluded");
    r.assumptions.push_back("|lambda(p)| <= 2 + 1e-9 treated as Ramanujan");
    return r;
}

std::string rational_string(const Rational& r) {
    std::ostringstream os;
    os << r.numerator() << '/' << r.denominator();
    return os.str();
}

} // namespace

double chebyshev_weight(std::span<const satake::CoeffTriple> coeffs, std::size_t m) {
    if (m < 2)
        fail(ErrorCode::invalid_input, "chebyshev_weight: m must be >= 2");
    if (coeffs.size() != m)
        fail(ErrorCode::invalid_input, "chebyshev_weight: expected " + std::to_string(m) +
                                           " coefficient triples, got " +
                                           std::to_string(coeffs.size()));
    double form = 1.0 + 5.0 * coeffs[0].a4;
    for (const auto& c : coeffs)
        form += 3.0 * c.a2;
    return form * form;
}

ExpansionCheck expansion_check(const satake::CoeffTriple& first,
                               const satake::CoeffTriple& second) {
    for (const auto* c : {&first, &second}) {
        const auto r = satake::check_hecke_identities(*c);
        const double worst = std::max(r.square, r.product);
        if (worst > satake::kIdentityTolerance * std::max(1.0, std::abs(c->a4) * std::abs(c->a2)))
            fail(ErrorCode::invalid_input,
                 "expansion_residual: coefficient triple fails the Hecke identities (residual " +
                     std::to_string(worst) + ")");
    }
    const satake::CoeffTriple pair[] = {first, second};
    ExpansionCheck out{};
    out.squared = chebyshev_weight(pair, 2);
    const double a1 = first.a2, a2 = second.a2, b1 = first.a4, b2 = second.a4;
    out.expanded = -11.0 + 15.0 * a1 + 15.0 * a2 + 19.0 * b1 + 9.0 * b2 + 18.0 * a1 * a2 +
                   30.0 * b1 * a2 + 30.0 * first.a3_abs_sq + 25.0 * b1 * b1;
    out.residual = std::abs(out.squared - out.expanded);
    return out;
}

double expansion_residual(const satake::CoeffTriple& first, const satake::CoeffTriple& second) {
    return expansion_check(first, second).residual;
}

namespace {

void observe_pair(std::uint64_t i, std::uint64_t seed, ExpansionSweep& acc) {
    const auto a = satake::sym_coeffs(kernels::sweep_sample(2 * i, seed));
    const auto b = satake::sym_coeffs(kernels::sweep_sample(2 * i + 1, seed));
    for (const auto& e : {expansion_check(a, b), expansion_check(b, a)}) {
        acc.max_residual = std::max(acc.max_residual, e.residual);
        acc.max_relative_residual =
            std::max(acc.max_relative_residual, e.residual / std::max(1.0, e.squared));
    }
    ++acc.pairs;
}

void merge_sweep(ExpansionSweep& acc, const ExpansionSweep& part) {
    acc.pairs += part.pairs;
    acc.max_residual = std::max(acc.max_residual, part.max_residual);
    acc.max_relative_residual = std::max(acc.max_relative_residual, part.max_relative_residual);
}

} // namespace

ExpansionSweep expansion_sweep_serial(std::uint64_t pairs, std::uint64_t seed) {
    ExpansionSweep acc;
    for (std::uint64_t i = 0; i < pairs; ++i)
        observe_pair(i, seed, acc);
    return acc;
}

ExpansionSweep expansion_sweep(std::uint64_t pairs, std::uint64_t seed) {
    return chunked_reduce(
        make_chunks(0, pairs, 4096), ExpansionSweep{},
        [&](const ChunkRange& c, ExpansionSweep& acc) {
            for (std::uint64_t i = c.begin; i < c.end; ++i)
                observe_pair(i, seed, acc);
        },
        merge_sweep);
}

Rational density_lower_bound(std::int64_t m, BoundVariant variant) {
    if (m < 1)
        fail(ErrorCode::invalid_input, "density_lower_bound: m must be >= 1");
    const std::int64_t denom =
        variant == BoundVariant::unconditional ? 26 + 9 * m : 1 + 9 * m + 25 * m * m;
    return Rational(1) - Rational(1, denom);
}

std::string variant_label(BoundVariant variant) {
    return variant == BoundVariant::unconditional
               ? "unconditional"
               : "conditional: needs a zero-free region currently out of reach";
}

Rational pigeonhole_intersection(const Rational& d1, const Rational& d2) {
    for (const auto& d : {d1, d2})
        if (d < Rational(0) || d > Rational(1))
            fail(ErrorCode::invalid_input,
                 "pigeonhole_intersection: density " + rational_string(d) + " outside [0, 1]");
    const Rational s = d1 + d2 - Rational(1);
    return s < Rational(0) ? Rational(0) : s;
}

nlohmann::json to_json(const DensityReport& r) {
    return {
        {"X", r.X},
        {"m", r.m},
        {"pi_X", r.pi_X},
        {"exceptional_count", r.exceptional_count},
        {"exceptional_primes", r.exceptional_primes},
        {"running_mean_U", r.running_mean_U},
        {"sample_std_U", r.sample_std_U},
        {"min_exceptional_U", r.min_exceptional_U},
        {"threshold_violations", r.threshold_violations},
        {"implied_upper", r.implied_upper},
        {"chebyshev_upper", r.chebyshev_upper},
        {"theory_bound", rational_string(r.theory_bound)},
        {"assumptions", r.assumptions},
    };
}

DensityReport exceptional_scan_serial(const FormFamily& family, std::uint64_t X,
                                      const sieve::SieveTable& table) {
    const auto primes = scan_primes(family, X, table);
    ScanPartial total;
    for (std::uint64_t p : primes)
        scan_prime(family, p, total);
    return finish(family, X, std::move(total));
}

DensityReport exceptional_scan(const FormFamily& family, std::uint64_t X,
                               const sieve::SieveTable& table) {
    const auto primes = scan_primes(family, X, table);
    const auto chunks = make_chunks(0, primes.size(), kPrimeChunk);
    auto total = chunked_reduce(
        chunks, ScanPartial{},
        [&](const ChunkRange& c, ScanPartial& acc) {
            for (std::uint64_t i = c.begin; i < c.end; ++i)
                scan_prime(family, primes[i], acc);
        },
        [](ScanPartial& acc, const ScanPartial& part) { acc.merge(part); });
    return finish(family, X, std::move(total));
}

std::vector<TrendRow> pnt_trend(const std::function<double(std::uint64_t)>& stream,
                                std::span<const std::uint64_t> x_grid,
                                const sieve::SieveTable& table) {
    if (x_grid.empty())
        return {};
    if (!std::is_sorted(x_grid.begin(), x_grid.end()))
        fail(ErrorCode::invalid_input, "pnt_trend: X grid must be increasing");
    if (x_grid.back() > table.limit())
        fail(ErrorCode::invalid_input, "pnt_trend: X exceeds sieve table limit");
    std::vector<TrendRow> rows;
    CompensatedSum sum;
    std::uint64_t count = 0;
    const auto primes = table.primes();
    std::size_t i = 0;
    for (std::uint64_t X : x_grid) {
        while (i < primes.size() && primes[i] <= X) {
            sum.add(stream(primes[i]));
            ++count;
            ++i;
        }
        rows.push_back({X, count, sum.value(),
                        count ? sum.value() / static_cast<double>(count) : 0.0});
    }
    return rows;
}

} // namespace ramanujan::density
