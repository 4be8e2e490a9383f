#pragma once

/*
 * Maass-form coefficient records: remote fetch, local cache and fixtures.
 *
 * Records hold unnormalized Hecke eigenvalues lambda(p).  The cache keeps one
 * JSON document per label:
 *
 *   {"schema": 1, "label": ..., "level": N, "spectral_parameter": t,
 *    "coefficients": [[p, a_p], ...], "fetched_at": ...}
 *
 * Lookup order for fetch(): remote endpoint (if configured and enabled),
 * then cache, then the fixture directory.  A successful remote fetch
 * refreshes the cache.
 */

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ramanujan/form.hpp"

namespace ramanujan::ingest {

inline constexpr int kSchemaVersion = 1;

enum class Source { remote, fixture };

struct CoeffRecord {
    std::string label;
    std::uint64_t level = 1;
    double spectral_parameter = 0.0;
    std::vector<std::pair<std::uint64_t, double>> coefficients;
    std::string fetched_at;
    Source source = Source::fixture;
    std::uint64_t coverage = 0; // largest p the record claims to cover

    bool operator==(const CoeffRecord&) const = default;
};

struct IngestConfig {
    std::optional<std::string> endpoint; // RAMANUJAN_DATA_URL
    std::filesystem::path cache_dir;     // RAMANUJAN_CACHE_DIR
    std::filesystem::path fixture_dir;   // RAMANUJAN_FIXTURE_DIR
    bool network_enabled = true;
    int timeout_seconds = 10;

    static IngestConfig from_env();
};

// coverage = 0 returns the whole record; otherwise the record is cut at
// `coverage`, which it must reach.
CoeffRecord fetch(const std::string& label, std::uint64_t coverage, const IngestConfig& config);

nlohmann::json to_json(const CoeffRecord& record);
// Accepts the cache schema, or an object {"data": [record]} as returned by
// list-style endpoints.  Throws parse_error naming the offending field.
CoeffRecord parse_record(const nlohmann::json& doc, Source source);

std::string serialize(const CoeffRecord& record);
CoeffRecord read_record(const std::filesystem::path& path, Source source);
// Write to a temporary file in the same directory, then rename over `path`.
void write_record_atomic(const std::filesystem::path& path, const CoeffRecord& record);

std::filesystem::path record_path(const std::filesystem::path& dir, const std::string& label);

enum class Severity { error, warning, info };

struct Finding {
    Severity severity;
    std::uint64_t p;
    std::string message;
};

std::string to_string(Severity s);

// Kim-Sarnak violations and malformed entries are errors; missing primes
// below the coverage bound are warnings; primes dividing the level are info.
std::vector<Finding> validate(const CoeffRecord& record);

bool has_errors(const std::vector<Finding>& findings);

forms::FormMeta to_form(const CoeffRecord& record);

} // namespace ramanujan::ingest
