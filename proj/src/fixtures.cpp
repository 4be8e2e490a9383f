#include "ramanujan/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "ramanujan/error.hpp"
#include "ramanujan/form.hpp"

namespace ramanujan::fixtures {

namespace {

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<bool> composite(n + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i)
            composite[j] = true;
    }
    return out;
}

std::vector<std::uint64_t> exceeding_two(const ingest::CoeffRecord& r) {
    std::vector<std::uint64_t> out;
    for (const auto& [p, a] : r.coefficients)
        if (std::abs(a) > 2.0)
            out.push_back(p);
    return out;
}

} // namespace

std::vector<FixtureSpec> default_specs() {
    return {
        {"fixture-tempered-1", 101, 9.25, {}, 0.0},
        {"fixture-tempered-2", 202, 13.75, {}, 0.0},
        {"fixture-mixed-1", 303, 11.5, {11, 101, 1009}, 0.1},
        {"fixture-mixed-2", 404, 17.125, {11, 101}, 0.09},
    };
}

ingest::CoeffRecord build_record(const FixtureSpec& spec) {
    std::map<std::uint64_t, double> overrides;
    for (std::uint64_t p : spec.non_tempered_primes)
        overrides[p] = spec.nu;
    const forms::SatoTateSource source(spec.seed, kCoverage, overrides);

    ingest::CoeffRecord r;
    r.label = spec.label;
    r.level = 1;
    r.spectral_parameter = spec.spectral_parameter;
    r.coverage = kCoverage;
    r.fetched_at = kTimestamp;
    r.source = ingest::Source::fixture;
    for (std::uint64_t p : primes_up_to(kCoverage))
        r.coefficients.emplace_back(p, *source.eigenvalue(p));

    if (exceeding_two(r) != spec.non_tempered_primes)
        fail(ErrorCode::invalid_input,
             "fixture " + spec.label + ": |a_p| > 2 set differs from its specification");
    return r;
}

nlohmann::json build_manifest(const std::vector<ingest::CoeffRecord>& records) {
    nlohmann::json entries = nlohmann::json::array();
    std::map<std::string, std::vector<std::uint64_t>> exceeding;
    for (const auto& r : records) {
        exceeding[r.label] = exceeding_two(r);
        entries.push_back({{"label", r.label},
                           {"level", r.level},
                           {"coverage", r.coverage},
                           {"non_tempered_primes", exceeding[r.label]}});
    }
    nlohmann::json families = nlohmann::json::array();
    const auto family = [&](const std::string& a, const std::string& b) {
        if (!exceeding.count(a) || !exceeding.count(b))
            return;
        std::vector<std::uint64_t> both;
        std::set_intersection(exceeding[a].begin(), exceeding[a].end(), exceeding[b].begin(),
                              exceeding[b].end(), std::back_inserter(both));
        families.push_back({{"members", {a, b}}, {"exceptional_primes", both}});
    };
    family("fixture-tempered-1", "fixture-tempered-2");
    family("fixture-mixed-1", "fixture-mixed-2");
    return {{"schema", ingest::kSchemaVersion}, {"records", entries}, {"families", families}};
}

void write_fixtures(const std::filesystem::path& dir) {
    std::vector<ingest::CoeffRecord> records;
    for (const auto& spec : default_specs()) {
        records.push_back(build_record(spec));
        ingest::write_record_atomic(ingest::record_path(dir, spec.label), records.back());
    }
    std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorCode::unavailable, "cannot write manifest in " + dir.string());
    out << build_manifest(records).dump(1) << '\n';
}

} // namespace ramanujan::fixtures
