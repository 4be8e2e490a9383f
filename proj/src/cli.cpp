#include "ramanujan/cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ramanujan/bounds.hpp"
#include "ramanujan/dde.hpp"
#include "ramanujan/density.hpp"
#include "ramanujan/error.hpp"
#include "ramanujan/ingest.hpp"
#include "ramanujan/kernels.hpp"
#include "ramanujan/parallel.hpp"
#include "ramanujan/sieve_lab.hpp"

namespace ramanujan::cli {

namespace {

using nlohmann::json;

// Numeric flags are read as text and converted afterwards so that every bad
// flag can be reported at once.
class FlagChecker {
public:
    double real(const std::string& flag, const std::string& text) {
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (text.empty() || *end != '\0' || errno != 0 || !std::isfinite(v)) {
            problem(flag, "'" + text + "' is not a number");
            return 0.0;
        }
        return v;
    }

    std::uint64_t count(const std::string& flag, const std::string& text) {
        errno = 0;
        char* end = nullptr;
        // Accept integral values written in exponent form, e.g. 1e5.
        const double v = std::strtod(text.c_str(), &end);
        if (text.empty() || *end != '\0' || errno != 0 || !(v >= 0.0) || v > 9.0e15 ||
            v != std::floor(v)) {
            problem(flag, "'" + text + "' is not a non-negative integer");
            return 0;
        }
        return static_cast<std::uint64_t>(v);
    }

    void require(bool ok, const std::string& flag, const std::string& why) {
        if (!ok)
            problem(flag, why);
    }

    void problem(const std::string& flag, const std::string& why) {
        problems_.push_back(flag + ": " + why);
    }

    void throw_if_any() const {
        if (problems_.empty())
            return;
        std::string msg = "invalid flags:";
        for (const auto& p : problems_)
            msg += " [" + p + "]";
        fail(ErrorCode::invalid_input, msg);
    }

private:
    std::vector<std::string> problems_;
};

struct Output {
    json result;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    bool ok = true;
};

std::string num(double v, int precision = 12) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

std::string rational_text(const density::Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep))
        out.push_back(item);
    return out;
}

void render(const Output& o, const json& config, const std::string& format, std::ostream& os) {
    if (format == "json") {
        os << json{{"config", config}, {"result", o.result}}.dump(2) << '\n';
        return;
    }
    os << "# config " << config.dump() << '\n';
    if (format == "csv") {
        for (std::size_t i = 0; i < o.columns.size(); ++i)
            os << (i ? "," : "") << o.columns[i];
        os << '\n';
        for (const auto& row : o.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << row[i];
            os << '\n';
        }
        return;
    }
    std::vector<std::size_t> width(o.columns.size(), 0);
    for (std::size_t i = 0; i < o.columns.size(); ++i)
        width[i] = o.columns[i].size();
    for (const auto& row : o.rows)
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i]))
               << cells[i];
        }
        os << '\n';
    };
    line(o.columns);
    for (const auto& row : o.rows)
        line(row);
}

// Key/value table for scalar results.
void key_values(Output& o, const std::vector<std::pair<std::string, std::string>>& kv) {
    o.columns = {"quantity", "value"};
    for (const auto& [k, v] : kv)
        o.rows.push_back({k, v});
}

int exit_code(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_input:
    case ErrorCode::unsupported_range: return kUsage;
    case ErrorCode::data_gap:
    case ErrorCode::parse_error:
    case ErrorCode::not_found: return kDataGap;
    case ErrorCode::resource_limit: return kResource;
    case ErrorCode::unavailable: return kNetwork;
    }
    return kFailure;
}

void emit_error(std::ostream& err, std::string_view kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

sieve::SieveTable table_for(std::uint64_t needed, std::uint64_t requested, bool allow_large) {
    const std::uint64_t limit = requested ? requested : std::max<std::uint64_t>(needed, 1000);
    if (limit < needed)
        fail(ErrorCode::invalid_input, "--limit " + std::to_string(limit) +
                                           " is below the required " + std::to_string(needed));
    sieve::BuildOptions options;
    options.allow_large = allow_large;
    return sieve::build_table(limit, options);
}

// ---------------------------------------------------------------- commands

struct DdeFlags {
    std::string chi0 = "2", chi1 = "-2";
};

void add_dde_flags(CLI::App* app, DdeFlags& f) {
    app->add_option("--chi0", f.chi0, "Mean weight on primes up to y (dimensionless, > 0)")
        ->capture_default_str();
    app->add_option("--chi1", f.chi1, "Mean weight on primes beyond y (dimensionless, < 0)")
        ->capture_default_str();
}

dde::DdeSpec read_dde(FlagChecker& check, const DdeFlags& f) {
    const double chi0 = check.real("--chi0", f.chi0);
    const double chi1 = check.real("--chi1", f.chi1);
    check.require(chi0 > 0.0, "--chi0", "must be > 0");
    check.require(chi1 < 0.0, "--chi1", "must be < 0");
    return {chi0 > 0.0 ? chi0 : 1.0, chi1 < 0.0 ? chi1 : -1.0};
}

struct SolveFlags {
    DdeFlags dde;
    std::string u_max = "3", step = "1e-3", print_step = "0.25";
};

Output cmd_solve(const SolveFlags& f) {
    FlagChecker check;
    const auto spec = read_dde(check, f.dde);
    const double u_max = check.real("--u-max", f.u_max);
    const double step = check.real("--step", f.step);
    const double print_step = check.real("--print-step", f.print_step);
    check.require(u_max > 0.0 && u_max <= 50.0, "--u-max", "must lie in (0, 50]");
    check.require(step >= dde::kMinStep && step <= dde::kMaxStep, "--step",
                  "must lie in [1e-7, 1e-2]");
    check.require(print_step > 0.0, "--print-step", "must be > 0");
    check.throw_if_any();

    const auto sol = dde::solve(spec, u_max, step);
    Output o;
    o.columns = {"u", "sigma"};
    json us = json::array(), sigmas = json::array();
    const auto n = static_cast<std::uint64_t>(std::floor(u_max / print_step + 1e-9));
    for (std::uint64_t k = 1; k <= n; ++k) {
        const double u = static_cast<double>(k) * print_step;
        const double s = sol.evaluate(u);
        us.push_back(u);
        sigmas.push_back(s);
        o.rows.push_back({num(u), num(s)});
    }
    o.result = {{"grid_step", sol.grid_step()}, {"u", us}, {"sigma", sigmas}};
    o.result["first_zero"] = sol.first_zero ? json(*sol.first_zero) : json(nullptr);
    return o;
}

struct ZeroFlags {
    DdeFlags dde;
    std::string tol = "1e-6", step = "1e-3", u_cap = "10";
};

Output cmd_first_zero(const ZeroFlags& f) {
    FlagChecker check;
    const auto spec = read_dde(check, f.dde);
    dde::ZeroOptions options;
    options.tol = check.real("--tol", f.tol);
    options.initial_step = check.real("--step", f.step);
    options.u_cap = check.real("--u-cap", f.u_cap);
    check.require(options.tol >= 1e-9, "--tol", "must be >= 1e-9");
    check.require(options.initial_step >= dde::kMinStep && options.initial_step <= dde::kMaxStep,
                  "--step", "must lie in [1e-7, 1e-2]");
    check.require(options.u_cap > 1.0 && options.u_cap <= 50.0, "--u-cap",
                  "must lie in (1, 50]");
    check.throw_if_any();

    const auto z = dde::first_zero(spec, options);
    Output o;
    o.result = {{"zero", z.zero},
                {"step", z.step},
                {"previous_zero", z.previous_zero},
                {"refinements", z.refinements}};
    key_values(o, {{"zero", num(z.zero)},
                   {"step", num(z.step)},
                   {"previous_zero", num(z.previous_zero)},
                   {"refinements", std::to_string(z.refinements)}});
    return o;
}

struct SieveFlags {
    DdeFlags dde;
    std::string y = "10", q = "1", t, x, u, limit = "0";
    bool allow_large = false;
};

Output cmd_sieve(const SieveFlags& f) {
    FlagChecker check;
    const auto spec = read_dde(check, f.dde);
    const auto y = check.count("--y", f.y);
    const auto q = check.count("--q", f.q);
    const double t = f.t.empty() ? static_cast<double>(y) : check.real("--t", f.t);
    const double x = f.x.empty() ? static_cast<double>(y) : check.real("--x", f.x);
    const auto limit = check.count("--limit", f.limit);
    std::vector<double> u_grid;
    if (!f.u.empty())
        for (const auto& item : split(f.u, ','))
            u_grid.push_back(check.real("--u", item));
    check.require(y >= 2, "--y", "must be >= 2");
    check.require(q >= 1, "--q", "must be >= 1");
    check.require(t >= 1.0, "--t", "must be >= 1");
    check.require(x >= 1.0, "--x", "must be >= 1");
    check.require(std::all_of(u_grid.begin(), u_grid.end(), [](double u) { return u > 0.0; }),
                  "--u", "values must be > 0");
    check.throw_if_any();

    double needed = std::max(t, x);
    for (double u : u_grid)
        needed = std::max(needed, std::floor(std::pow(static_cast<double>(y), u)));
    if (needed > static_cast<double>(sieve::kMaxLimit))
        fail(ErrorCode::resource_limit, "requested range exceeds the 2e8 table ceiling");
    const auto table =
        table_for(static_cast<std::uint64_t>(needed), limit, f.allow_large);
    const auto weight =
        sieve::MultFuncSpec::threshold_weight(static_cast<double>(y), spec.chi0(), spec.chi1());

    Output o;
    const double h = sieve::h_sum(weight, t, q, table);
    const auto s = sieve::log_weighted_sum(weight, x, q, table);
    o.ok = s.agrees();
    o.result = {{"table_limit", table.limit()},
                {"h_sum", {{"t", t}, {"value", h}}},
                {"log_weighted_sum",
                 {{"x", x},
                  {"direct", s.direct},
                  {"integrated", s.integrated},
                  {"rel_gap", s.rel_gap},
                  {"agrees", s.agrees()}}}};
    if (u_grid.empty()) {
        key_values(o, {{"H(t)", num(h)},
                       {"S(x) direct", num(s.direct)},
                       {"S(x) integrated", num(s.integrated)},
                       {"rel_gap", num(s.rel_gap, 3)}});
        return o;
    }
    const auto rows = sieve::asymptotic_report(y, u_grid, q, spec.chi0(), spec.chi1(), table);
    json arr = json::array();
    o.columns = {"y", "u", "exact", "predicted", "rel_error"};
    for (const auto& r : rows) {
        arr.push_back({{"y", r.y},
                       {"u", r.u},
                       {"exact", r.exact},
                       {"predicted", r.predicted},
                       {"rel_error", r.rel_error}});
        o.rows.push_back({num(r.y), num(r.u), num(r.exact), num(r.predicted), num(r.rel_error)});
    }
    o.result["asymptotic"] = std::move(arr);
    return o;
}

struct DensityFlags {
    std::string m, formula = "paper", family, X = "10000";
    bool offline = false;
};

Output cmd_density(const DensityFlags& f) {
    FlagChecker check;
    const bool formula_mode = !f.m.empty();
    const bool scan_mode = !f.family.empty();
    if (formula_mode == scan_mode)
        check.problem("--m/--family", "give exactly one of --m (formula) or --family (scan)");
    Output o;
    if (formula_mode) {
        const auto m = check.count("--m", f.m);
        check.require(m >= 1, "--m", "must be >= 1");
        check.require(f.formula == "paper" || f.formula == "remark", "--formula",
                      "must be 'paper' or 'remark'");
        check.throw_if_any();
        const auto variant = f.formula == "paper" ? density::BoundVariant::unconditional
                                                  : density::BoundVariant::conditional;
        const auto bound = density::density_lower_bound(static_cast<std::int64_t>(m), variant);
        o.result = {{"m", m},
                    {"formula", f.formula},
                    {"lower_bound", rational_text(bound)},
                    {"value", boost::rational_cast<double>(bound)},
                    {"status", density::variant_label(variant)}};
        key_values(o, {{"lower_bound", rational_text(bound)},
                       {"value", num(boost::rational_cast<double>(bound))},
                       {"status", density::variant_label(variant)}});
        return o;
    }
    const auto X = check.count("--X", f.X);
    const auto labels = split(f.family, ',');
    check.require(labels.size() >= 2, "--family", "needs at least two labels");
    check.require(X >= 2 && X <= sieve::kDefaultLimit, "--X", "must lie in [2, 1e7]");
    check.throw_if_any();

    auto config = ingest::IngestConfig::from_env();
    config.network_enabled = !f.offline;
    density::FormFamily family;
    for (const auto& label : labels)
        family.members.push_back(ingest::to_form(ingest::fetch(label, X, config)));
    const auto table = sieve::build_table(std::max<std::uint64_t>(X, 2));
    const auto report = density::exceptional_scan(family, X, table);
    o.ok = report.threshold_violations == 0;
    o.result = density::to_json(report);
    key_values(o, {{"X", std::to_string(report.X)},
                   {"pi_X", std::to_string(report.pi_X)},
                   {"exceptional_count", std::to_string(report.exceptional_count)},
                   {"running_mean_U", num(report.running_mean_U)},
                   {"implied_upper", num(report.implied_upper)},
                   {"chebyshev_upper", num(report.chebyshev_upper)},
                   {"theory_bound", rational_text(report.theory_bound)}});
    return o;
}

struct BoundFlags {
    std::string forms = "1:0,1:0";
};

Output cmd_bound(const BoundFlags& f) {
    FlagChecker check;
    std::vector<forms::FormMeta> metas;
    for (const auto& item : split(f.forms, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) {
            check.problem("--forms", "'" + item + "' is not N:t");
            continue;
        }
        forms::FormMeta m;
        m.level = check.count("--forms", parts[0]);
        m.t = check.real("--forms", parts[1]);
        check.require(m.level >= 1, "--forms", "level must be >= 1");
        metas.push_back(m);
    }
    check.require(metas.size() == 2 || metas.size() == 3, "--forms", "give 2 or 3 forms");
    check.throw_if_any();

    const auto b = bounds::least_prime_bound(metas);
    Output o;
    o.result = bounds::to_json(b);
    json conductors = json::array();
    for (const auto& m : metas)
        conductors.push_back(bounds::conductor(m));
    o.result["conductors"] = conductors;
    key_values(o, {{"base", num(b.base)},
                   {"exponent", num(b.exponent, 7)},
                   {"implied_constant", b.implied_constant},
                   {"source_zero", num(b.source_zero)},
                   {"U_used", num(b.U_used, 7)},
                   {"untruncated_exponent", num(b.untruncated_exponent, 7)}});
    return o;
}

struct IdentityFlags {
    std::string samples = "100000";
};

Output cmd_identity(const IdentityFlags& f, std::uint64_t seed) {
    FlagChecker check;
    const auto n = check.count("--samples", f.samples);
    check.require(n >= 1 && n <= 100'000'000, "--samples", "must lie in [1, 1e8]");
    check.throw_if_any();

    const auto s = kernels::hecke_identity_sweep_omp(n, seed);
    const auto e = density::expansion_sweep(n, seed);
    constexpr double tol = 1e-9;
    Output o;
    o.ok = s.max_square_residual < tol && s.max_product_residual < tol &&
           e.max_residual < tol && s.envelope_violations == 0 && s.implication_violations == 0;
    o.result = {{"samples", s.samples},
                {"non_tempered", s.non_tempered},
                {"max_square_residual", s.max_square_residual},
                {"max_product_residual", s.max_product_residual},
                {"max_adjoint_route_gap", s.max_adjoint_route_gap},
                {"max_expansion_residual", e.max_residual},
                {"min_A", s.min_a2},
                {"min_A4", s.min_a4},
                {"envelope_violations", s.envelope_violations},
                {"implication_violations", s.implication_violations},
                {"passed", o.ok}};
    key_values(o, {{"samples", std::to_string(s.samples)},
                   {"max_square_residual", num(s.max_square_residual, 3)},
                   {"max_product_residual", num(s.max_product_residual, 3)},
                   {"max_expansion_residual", num(e.max_residual, 3)},
                   {"envelope_violations", std::to_string(s.envelope_violations)},
                   {"implication_violations", std::to_string(s.implication_violations)},
                   {"passed", o.ok ? "true" : "false"}});
    return o;
}

struct FetchFlags {
    std::string label, coverage = "0";
    bool offline = false;
    bool dump = false;
};

Output cmd_fetch(const FetchFlags& f) {
    FlagChecker check;
    check.require(!f.label.empty(), "--label", "required");
    const auto coverage = check.count("--coverage", f.coverage);
    check.throw_if_any();

    auto config = ingest::IngestConfig::from_env();
    config.network_enabled = !f.offline;
    const auto record = ingest::fetch(f.label, coverage, config);
    const auto findings = ingest::validate(record);
    Output o;
    o.ok = !ingest::has_errors(findings);
    json list = json::array();
    for (const auto& x : findings)
        list.push_back({{"severity", ingest::to_string(x.severity)},
                        {"p", x.p},
                        {"message", x.message}});
    o.result = {{"label", record.label},
                {"level", record.level},
                {"spectral_parameter", record.spectral_parameter},
                {"coverage", record.coverage},
                {"coefficient_count", record.coefficients.size()},
                {"source", record.source == ingest::Source::remote ? "remote" : "fixture"},
                {"fetched_at", record.fetched_at},
                {"findings", list}};
    if (f.dump)
        o.result["record"] = ingest::to_json(record);
    o.columns = {"p", "a_p"};
    for (const auto& [p, a] : record.coefficients)
        o.rows.push_back({std::to_string(p), num(a, 17)});
    return o;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hecke-Maass Ramanujan toolkit", "ramanujan"};
    app.require_subcommand(1);
    std::string format = "json";
    std::string out_path;
    std::string threads = "0";
    std::string seed = "1";
    app.add_option("--format", format, "Output format: table, csv or json")->capture_default_str();
    app.add_option("--out", out_path, "Write output to this file instead of stdout");
    app.add_option("--threads", threads, "OpenMP threads (count; 0 = all cores)")
        ->capture_default_str();
    app.add_option("--seed", seed, "Seed for sampled streams (integer)")->capture_default_str();
    app.fallthrough();

    SolveFlags solve;
    auto* s_solve = app.add_subcommand("solve-dde", "Tabulate the DDE solution sigma(u)");
    add_dde_flags(s_solve, solve.dde);
    s_solve->add_option("--u-max", solve.u_max, "Largest u (dimensionless)")->capture_default_str();
    s_solve->add_option("--step", solve.step, "Integration step in u")->capture_default_str();
    s_solve->add_option("--print-step", solve.print_step, "Spacing of printed u values")
        ->capture_default_str();

    ZeroFlags zero;
    auto* s_zero = app.add_subcommand("first-zero", "First zero of sigma beyond u = 1");
    add_dde_flags(s_zero, zero.dde);
    s_zero->add_option("--tol", zero.tol, "Agreement tolerance in u between refinements")
        ->capture_default_str();
    s_zero->add_option("--step", zero.step, "Initial integration step in u")
        ->capture_default_str();
    s_zero->add_option("--u-cap", zero.u_cap, "Give up beyond this u")->capture_default_str();

    SieveFlags sv;
    auto* s_sieve = app.add_subcommand("sieve-verify", "Brute-force H(t), S(x) and asymptotics");
    add_dde_flags(s_sieve, sv.dde);
    s_sieve->add_option("--y", sv.y, "Weight threshold y (integer)")->capture_default_str();
    s_sieve->add_option("--q", sv.q, "Coprimality modulus q (integer)")->capture_default_str();
    s_sieve->add_option("--t", sv.t, "Upper end t of H(t) (real; default y)");
    s_sieve->add_option("--x", sv.x, "Upper end x of S(x) (real; default y)");
    s_sieve->add_option("--u", sv.u, "Comma-separated u values for the asymptotic report");
    s_sieve->add_option("--limit", sv.limit, "Sieve table size (integer; 0 = as needed)")
        ->capture_default_str();
    s_sieve->add_flag("--allow-large", sv.allow_large, "Permit tables above 1e7 (up to 2e8)");

    DensityFlags dn;
    auto* s_density = app.add_subcommand("density-report", "Density constants or exceptional scan");
    s_density->add_option("--m", dn.m, "Family size m for the density constant (integer)");
    s_density->add_option("--formula", dn.formula, "paper or remark")->capture_default_str();
    s_density->add_option("--family", dn.family, "Comma-separated record labels to scan");
    s_density->add_option("--X", dn.X, "Scan primes up to X (integer)")->capture_default_str();
    s_density->add_flag("--offline", dn.offline, "Do not contact the remote endpoint");

    BoundFlags bd;
    auto* s_bound = app.add_subcommand("bound", "Least-prime bound (base, exponent)");
    s_bound->add_option("--forms", bd.forms, "Comma-separated N:t pairs (level:spectral parameter)")
        ->capture_default_str();

    IdentityFlags id;
    auto* s_identity = app.add_subcommand("identity-check", "Seeded Hecke identity sweep");
    s_identity->add_option("--samples", id.samples, "Number of Satake samples (count)")
        ->capture_default_str();

    FetchFlags ft;
    auto* s_fetch = app.add_subcommand("fetch", "Fetch and validate a coefficient record");
    s_fetch->add_option("--label", ft.label, "Record label");
    s_fetch->add_option("--coverage", ft.coverage, "Cut at p <= coverage (integer; 0 = all)")
        ->capture_default_str();
    s_fetch->add_flag("--offline", ft.offline, "Use cache or fixtures only");
    s_fetch->add_flag("--dump", ft.dump, "Include the full record in JSON output");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        emit_error(err, "usage", e.what());
        return kUsage;
    }

    try {
        FlagChecker check;
        check.require(format == "table" || format == "csv" || format == "json", "--format",
                      "must be table, csv or json");
        const auto nthreads = check.count("--threads", threads);
        const auto seed_value = check.count("--seed", seed);
        check.throw_if_any();
        set_threads(static_cast<int>(nthreads));

        const std::string name = app.get_subcommands().front()->get_name();
        json config = {{"subcommand", name}, {"format", format}, {"seed", seed_value},
                       {"threads", nthreads}};
        for (const auto* opt : app.get_subcommands().front()->get_options()) {
            if (opt->get_name() == "--help" || opt->get_lnames().empty())
                continue;
            const auto results = opt->results();
            const std::string key = opt->get_lnames().front();
            if (opt->get_type_size() == 0)
                config[key] = opt->count() > 0;
            else if (!results.empty())
                config[key] = results.back();
            else if (!opt->get_default_str().empty())
                config[key] = opt->get_default_str();
        }

        Output o;
        if (name == "solve-dde")
            o = cmd_solve(solve);
        else if (name == "first-zero")
            o = cmd_first_zero(zero);
        else if (name == "sieve-verify")
            o = cmd_sieve(sv);
        else if (name == "density-report")
            o = cmd_density(dn);
        else if (name == "bound")
            o = cmd_bound(bd);
        else if (name == "identity-check")
            o = cmd_identity(id, seed_value);
        else
            o = cmd_fetch(ft);

        if (out_path.empty()) {
            render(o, config, format, out);
        } else {
            std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
            if (!file)
                fail(ErrorCode::invalid_input, "cannot open --out path " + out_path);
            render(o, config, format, file);
        }
        return o.ok ? kOk : kFailure;
    } catch (const Error& e) {
        emit_error(err, to_string(e.code()), e.what());
        return exit_code(e.code());
    } catch (const std::exception& e) {
        emit_error(err, "internal", e.what());
        return kFailure;
    }
}

} // namespace ramanujan::cli
