#pragma once

// Deterministic synthetic coefficient records for offline runs and tests.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramanujan/ingest.hpp"

namespace ramanujan::fixtures {

inline constexpr std::uint64_t kCoverage = 10'000;
inline constexpr const char* kTimestamp = "1970-01-01T00:00:00Z";

struct FixtureSpec {
    std::string label;
    std::uint64_t seed;
    double spectral_parameter;
    std::vector<std::uint64_t> non_tempered_primes;
    double nu;
};

// fixture-tempered-1/2 and fixture-mixed-1/2.
std::vector<FixtureSpec> default_specs();

ingest::CoeffRecord build_record(const FixtureSpec& spec);

// Manifest listing every record's primes with |a_p| > 2 (found by scanning
// the generated data, and checked against the spec) and, for the mixed pair,
// the primes where both members exceed 2.
nlohmann::json build_manifest(const std::vector<ingest::CoeffRecord>& records);

// Writes every record plus manifest.json into `dir`.
void write_fixtures(const std::filesystem::path& dir);

} // namespace ramanujan::fixtures
