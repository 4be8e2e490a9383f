#include "ramanujan/sieve_lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ramanujan/dde.hpp"
#include "ramanujan/parallel.hpp"

namespace ramanujan::sieve {

namespace {

constexpr std::uint64_t kMinTruncation = 1000;
constexpr std::uint64_t kConstantTruncation = 1'000'000;

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        out.push_back(p);
        while (n % p == 0)
            n /= p;
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

// log((1 - 1/p)^chi (1 + chi/p))
double log_euler_factor(double p, unsigned chi) {
    return chi * std::log1p(-1.0 / p) + std::log1p(chi / p);
}

} // namespace

double h_sum(const MultFuncSpec& spec, double t, std::uint64_t q, const SieveTable& table) {
    if (q < 1)
        fail(ErrorCode::invalid_input, "h_sum: q must be >= 1");
    if (t < 1.0)
        return 0.0;
    return kernels::squarefree_sum_omp(spec, static_cast<std::uint64_t>(std::floor(t)), q, table);
}

LogWeighted log_weighted_sum(const MultFuncSpec& spec, double x, std::uint64_t q,
                             const SieveTable& table) {
    if (q < 1)
        fail(ErrorCode::invalid_input, "log_weighted_sum: q must be >= 1");
    if (!(x >= 1.0))
        fail(ErrorCode::invalid_input, "log_weighted_sum: x must be >= 1");
    LogWeighted out{};
    out.direct = kernels::log_weighted_direct_omp(spec, x, q, table);
    out.integrated = kernels::log_weighted_integrated_omp(spec, x, q, table);
    out.rel_gap = std::abs(out.direct - out.integrated) / std::max(1.0, std::abs(out.direct));
    return out;
}

EulerConstant euler_constant_c(std::uint64_t a, std::uint64_t truncation, const SieveTable& table,
                               unsigned chi) {
    if (a < 1)
        fail(ErrorCode::invalid_input, "euler_constant_c: a must be >= 1");
    if (chi < 1)
        fail(ErrorCode::invalid_input, "euler_constant_c: chi must be >= 1");
    if (truncation < kMinTruncation)
        fail(ErrorCode::invalid_input, "euler_constant_c: truncation must be >= 1000");
    if (truncation > table.limit())
        fail(ErrorCode::invalid_input, "euler_constant_c: truncation exceeds sieve table");

    const auto divisors = distinct_prime_factors(a);
    EulerConstant out{};
    out.a = a;
    out.chi = chi;
    out.truncation = truncation;

    out.local_ratio = Rational(1);
    for (std::uint64_t p : divisors)
        out.local_ratio *= Rational(static_cast<std::int64_t>(p),
                                    static_cast<std::int64_t>(p + chi));

    CompensatedSum all;
    CompensatedSum coprime;
    for (std::uint32_t p : table.primes()) {
        if (p > truncation)
            break;
        const double term = log_euler_factor(p, chi);
        all.add(term);
        if (a % p != 0)
            coprime.add(term);
    }
    double phi_ratio = 1.0;
    for (std::uint64_t p : divisors)
        phi_ratio *= 1.0 - 1.0 / static_cast<double>(p);

    out.base = std::exp(all.value());
    out.value = out.base * boost::rational_cast<double>(out.local_ratio);
    out.direct_value = std::pow(phi_ratio, chi) * std::exp(coprime.value());
    const double T = static_cast<double>(truncation);
    out.tail_bound = 0.5 * chi * (chi + 1) / (T * std::log(T));
    return out;
}

PrimorialScan primorial_scan(unsigned max_k, std::uint64_t truncation, const SieveTable& table,
                             unsigned chi) {
    PrimorialScan scan{};
    std::uint64_t a = 1;
    const auto primes = table.primes();
    if (max_k > 15 || max_k > primes.size())
        fail(ErrorCode::invalid_input, "primorial_scan: k too large");
    for (unsigned k = 1; k <= max_k; ++k) {
        a *= primes[k - 1];
        const double c = euler_constant_c(a, truncation, table, chi).value;
        const double ll = std::log(std::log(static_cast<double>(a)));
        scan.rows.push_back({k, a, c, c * ll * ll});
    }
    scan.kappa = scan.rows.empty() ? 0.0 : scan.rows.front().loglog_sq_times_c;
    for (const auto& r : scan.rows)
        scan.kappa = std::min(scan.kappa, r.loglog_sq_times_c);
    return scan;
}

std::vector<AsymptoticRow> asymptotic_report(std::uint64_t y, std::span<const double> u_grid,
                                             std::uint64_t q, double chi0, double chi1,
                                             const SieveTable& table) {
    if (y < 2)
        fail(ErrorCode::invalid_input, "asymptotic_report: y must be >= 2");
    if (u_grid.empty())
        fail(ErrorCode::invalid_input, "asymptotic_report: empty u grid");
    if (chi0 < 1.0 || chi0 != std::floor(chi0))
        fail(ErrorCode::invalid_input, "asymptotic_report: chi0 must be a positive integer");
    const double u_max = *std::max_element(u_grid.begin(), u_grid.end());
    const double u_min = *std::min_element(u_grid.begin(), u_grid.end());
    if (!(u_min > 0.0))
        fail(ErrorCode::invalid_input, "asymptotic_report: u must be positive");
    const double yd = static_cast<double>(y);
    if (std::floor(std::pow(yd, u_max)) > static_cast<double>(table.limit()))
        fail(ErrorCode::invalid_input, "asymptotic_report: y^u exceeds the sieve table limit");

    std::optional<SieveTable> local;
    const SieveTable* ctable = &table;
    if (table.limit() < kConstantTruncation) {
        local = build_table(kConstantTruncation);
        ctable = &*local;
    }
    const auto chi = static_cast<unsigned>(chi0);
    const double c = euler_constant_c(q, kConstantTruncation, *ctable, chi).value;

    const dde::DdeSpec spec(chi0, chi1);
    const auto sigma = dde::solve(spec, std::max(1.0, u_max), 1e-4);
    const auto weight = MultFuncSpec::threshold_weight(yd, chi0, chi1);
    const double log_factor = std::pow(std::log(yd), chi0 - 1.0);

    std::vector<AsymptoticRow> rows;
    for (double u : u_grid) {
        const double t = std::pow(yd, u);
        AsymptoticRow row{yd, u, 0.0, 0.0, 0.0};
        row.exact = h_sum(weight, t, q, table);
        row.predicted = c * sigma.evaluate(u) * log_factor * t;
        row.rel_error = (row.exact - row.predicted) / row.predicted;
        rows.push_back(row);
    }
    return rows;
}

std::string asymptotic_csv(std::span<const AsymptoticRow> rows) {
    std::ostringstream os;
    os.precision(12);
    os << "y,u,exact,predicted,rel_error\n";
    for (const auto& r : rows)
        os << r.y << ',' << r.u << ',' << r.exact << ',' << r.predicted << ',' << r.rel_error
           << '\n';
    return os.str();
}

LowerBoundResult lower_bound_check(const MultFuncSpec& b, const MultFuncSpec& h, double z,
                                   std::uint64_t q, const SieveTable& table) {
    if (q < 1)
        fail(ErrorCode::invalid_input, "lower_bound_check: q must be >= 1");
    if (!(z >= 1.0))
        fail(ErrorCode::invalid_input, "lower_bound_check: z must be >= 1");
    const auto top = static_cast<std::uint64_t>(std::floor(z));
    if (top > table.limit())
        fail(ErrorCode::invalid_input, "lower_bound_check: z exceeds sieve table limit");

    LowerBoundResult out;
    for (std::uint32_t p : table.primes()) {
        if (p > top)
            break;
        if (q % p == 0)
            continue;
        if (moebius_factor(b, h, p, table) < 0.0) {
            out.negative_g_prime = p;
            break;
        }
    }

    std::vector<double> values(top + 1, 0.0);
    for (std::uint64_t n = 1; n <= top; ++n)
        values[n] = h.value(n, table);
    out.prefix_witness = kernels::negative_coprime_prefix_omp(values, top, q, table);
    out.precondition_ok = !out.negative_g_prime && !out.prefix_witness;

    out.s_value = log_weighted_sum(b, z, q, table).direct;
    out.h_value = log_weighted_sum(h, z, q, table).direct;
    out.holds = out.s_value >= out.h_value - 1e-9 * std::max(1.0, std::abs(out.h_value));
    return out;
}

double local_factor_x2_envelope(std::uint64_t p) {
    const double e = std::pow(static_cast<double>(p), 7.0 / 32.0);
    const double bound = e + 1.0 + 1.0 / e;
    return 5.0 * bound * bound + 2.0 * bound;
}

} // namespace ramanujan::sieve
