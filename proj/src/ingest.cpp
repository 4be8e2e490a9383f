#include "ramanujan/ingest.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <regex>
#include <sstream>

#include <httplib.h>
#include <unistd.h>

#include "ramanujan/error.hpp"
#include "ramanujan/satake.hpp"

#ifndef RAMANUJAN_DEFAULT_FIXTURE_DIR
#define RAMANUJAN_DEFAULT_FIXTURE_DIR "data/fixtures"
#endif

namespace ramanujan::ingest {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::optional<std::string> env(const char* name) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0')
        return std::nullopt;
    return std::string(v);
}

void check_label(const std::string& label) {
    static const std::regex ok("[A-Za-z0-9][A-Za-z0-9._-]*");
    if (!std::regex_match(label, ok) || label.find("..") != std::string::npos)
        fail(ErrorCode::invalid_input, "fetch: invalid label '" + label + "'");
}

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    fail(ErrorCode::parse_error, "record field '" + field + "': " + why);
}

const json& field(const json& doc, const char* name) {
    const auto it = doc.find(name);
    if (it == doc.end())
        bad_field(name, "missing");
    return *it;
}

std::uint64_t as_uint(const json& v, const std::string& name) {
    if (v.is_number_unsigned())
        return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    bad_field(name, "expected a non-negative integer");
}

double as_double(const json& v, const std::string& name) {
    if (!v.is_number())
        bad_field(name, "expected a number");
    return v.get<double>();
}

CoeffRecord cut(CoeffRecord record, std::uint64_t coverage) {
    if (coverage == 0)
        return record;
    if (record.coverage < coverage)
        fail(ErrorCode::data_gap, "record " + record.label + " covers p <= " +
                                      std::to_string(record.coverage) + ", requested " +
                                      std::to_string(coverage));
    auto& c = record.coefficients;
    c.erase(std::upper_bound(c.begin(), c.end(), coverage,
                             [](std::uint64_t v, const auto& e) { return v < e.first; }),
            c.end());
    record.coverage = coverage;
    return record;
}

struct Endpoint {
    std::string host; // scheme://host[:port]
    std::string prefix;
};

Endpoint split_endpoint(const std::string& url) {
    static const std::regex re("^(https?://[^/]+)(/.*)?$");
    std::smatch m;
    if (!std::regex_match(url, m, re))
        fail(ErrorCode::invalid_input, "RAMANUJAN_DATA_URL is not an http(s) URL: " + url);
    std::string prefix = m[2].matched ? m[2].str() : "";
    while (!prefix.empty() && prefix.back() == '/')
        prefix.pop_back();
    return {m[1].str(), prefix};
}

// nullopt on transport failure; throws on a malformed or missing record.
std::optional<CoeffRecord> fetch_remote(const std::string& url, const std::string& label,
                                        int timeout_seconds) {
    const auto ep = split_endpoint(url);
    httplib::Client client(ep.host);
    client.set_connection_timeout(timeout_seconds, 0);
    client.set_read_timeout(timeout_seconds, 0);
    const auto res = client.Get(ep.prefix + "/" + label);
    if (!res)
        return std::nullopt;
    if (res->status == 404)
        fail(ErrorCode::not_found, "remote has no record '" + label + "'");
    if (res->status != 200)
        return std::nullopt;
    json doc;
    try {
        doc = json::parse(res->body);
    } catch (const json::exception& e) {
        fail(ErrorCode::parse_error, std::string("remote response is not JSON: ") + e.what());
    }
    auto record = parse_record(doc, Source::remote);
    if (record.fetched_at.empty())
        record.fetched_at = utc_now();
    return record;
}

} // namespace

IngestConfig IngestConfig::from_env() {
    IngestConfig c;
    c.endpoint = env("RAMANUJAN_DATA_URL");
    if (auto dir = env("RAMANUJAN_CACHE_DIR"))
        c.cache_dir = *dir;
    else if (auto xdg = env("XDG_CACHE_HOME"))
        c.cache_dir = fs::path(*xdg) / "ramanujan";
    else if (auto home = env("HOME"))
        c.cache_dir = fs::path(*home) / ".cache" / "ramanujan";
    else
        c.cache_dir = ".ramanujan-cache";
    c.fixture_dir = env("RAMANUJAN_FIXTURE_DIR").value_or(RAMANUJAN_DEFAULT_FIXTURE_DIR);
    return c;
}

json to_json(const CoeffRecord& r) {
    json coeffs = json::array();
    for (const auto& [p, a] : r.coefficients)
        coeffs.push_back(json::array({p, a}));
    return {
        {"schema", kSchemaVersion},
        {"label", r.label},
        {"level", r.level},
        {"spectral_parameter", r.spectral_parameter},
        {"coverage", r.coverage},
        {"coefficients", std::move(coeffs)},
        {"fetched_at", r.fetched_at},
    };
}

CoeffRecord parse_record(const json& input, Source source) {
    const json* doc = &input;
    if (doc->is_object() && doc->contains("data") && !doc->contains("label")) {
        const auto& data = (*doc)["data"];
        if (!data.is_array() || data.size() != 1)
            bad_field("data", "expected an array with exactly one record");
        doc = &data[0];
    }
    if (!doc->is_object())
        fail(ErrorCode::parse_error, "record is not a JSON object");

    CoeffRecord r;
    r.source = source;
    if (doc->contains("schema") && as_uint((*doc)["schema"], "schema") != kSchemaVersion)
        bad_field("schema", "unsupported version");
    const auto& label = field(*doc, "label");
    if (!label.is_string())
        bad_field("label", "expected a string");
    r.label = label.get<std::string>();
    r.level = as_uint(field(*doc, "level"), "level");
    if (r.level < 1)
        bad_field("level", "must be >= 1");
    r.spectral_parameter = as_double(field(*doc, "spectral_parameter"), "spectral_parameter");

    const auto& coeffs = field(*doc, "coefficients");
    if (!coeffs.is_array())
        bad_field("coefficients", "expected an array of [p, a_p] pairs");
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const auto& e = coeffs[i];
        const std::string name = "coefficients[" + std::to_string(i) + "]";
        if (!e.is_array() || e.size() != 2)
            bad_field(name, "expected [p, a_p]");
        r.coefficients.emplace_back(as_uint(e[0], name + "[0]"), as_double(e[1], name + "[1]"));
    }
    if (doc->contains("coverage"))
        r.coverage = as_uint((*doc)["coverage"], "coverage");
    else
        r.coverage = r.coefficients.empty() ? 0 : r.coefficients.back().first;
    if (doc->contains("fetched_at")) {
        if (!(*doc)["fetched_at"].is_string())
            bad_field("fetched_at", "expected a string");
        r.fetched_at = (*doc)["fetched_at"].get<std::string>();
    }
    return r;
}

std::string serialize(const CoeffRecord& record) { return to_json(record).dump(1) + "\n"; }

CoeffRecord read_record(const fs::path& path, Source source) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::not_found, "cannot open " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    json doc;
    try {
        doc = json::parse(text.str());
    } catch (const json::exception& e) {
        fail(ErrorCode::parse_error, path.string() + ": " + e.what());
    }
    return parse_record(doc, source);
}

void write_record_atomic(const fs::path& path, const CoeffRecord& record) {
    static std::atomic<unsigned> counter{0};
    fs::create_directories(path.parent_path());
    const fs::path tmp = path.parent_path() / ("." + path.filename().string() + ".tmp." +
                                               std::to_string(::getpid()) + "." +
                                               std::to_string(counter++));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            fail(ErrorCode::unavailable, "cannot write " + tmp.string());
        out << serialize(record);
        out.flush();
        if (!out)
            fail(ErrorCode::unavailable, "write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

fs::path record_path(const fs::path& dir, const std::string& label) {
    check_label(label);
    return dir / (label + ".json");
}

CoeffRecord fetch(const std::string& label, std::uint64_t coverage, const IngestConfig& config) {
    check_label(label);
    const auto cached = record_path(config.cache_dir, label);
    std::string remote_failure;
    if (config.endpoint && config.network_enabled) {
        if (auto record = fetch_remote(*config.endpoint, label, config.timeout_seconds)) {
            if (record->label != label)
                bad_field("label", "remote returned '" + record->label + "'");
            write_record_atomic(cached, *record);
            return cut(std::move(*record), coverage);
        }
        remote_failure = "remote " + *config.endpoint + " unreachable";
    }
    if (fs::exists(cached))
        return cut(read_record(cached, Source::fixture), coverage);
    if (!config.fixture_dir.empty()) {
        const auto fixture = record_path(config.fixture_dir, label);
        if (fs::exists(fixture))
            return cut(read_record(fixture, Source::fixture), coverage);
    }
    if (!remote_failure.empty())
        fail(ErrorCode::unavailable, remote_failure + " and no cached copy of '" + label + "'");
    fail(ErrorCode::unavailable,
         "no endpoint configured and no cache or fixture for '" + label + "'");
}

std::string to_string(Severity s) {
    switch (s) {
    case Severity::error: return "error";
    case Severity::warning: return "warning";
    case Severity::info: return "info";
    }
    return "unknown";
}

std::vector<Finding> validate(const CoeffRecord& record) {
    std::vector<Finding> out;
    std::uint64_t previous = 0;
    for (const auto& [p, a] : record.coefficients) {
        if (p <= previous)
            out.push_back({Severity::error, p, "primes not strictly increasing"});
        previous = std::max(previous, p);
        if (!is_prime(p)) {
            out.push_back({Severity::error, p, "entry at a non-prime index"});
            continue;
        }
        if (!std::isfinite(a)) {
            out.push_back({Severity::error, p, "non-finite coefficient"});
            continue;
        }
        const double envelope = satake::kim_sarnak_envelope(p).eigenvalue;
        if (std::abs(a) > envelope * (1.0 + 1e-12)) {
            std::ostringstream os;
            os.precision(7);
            os << "|a_p| = " << std::abs(a) << " exceeds the Kim-Sarnak envelope " << envelope;
            out.push_back({Severity::error, p, os.str()});
        }
        if (record.level % p == 0)
            out.push_back({Severity::info, p, "ramified (p | level); excluded from scans"});
    }
    std::size_t i = 0;
    for (std::uint64_t p = 2; p <= record.coverage; ++p) {
        if (!is_prime(p))
            continue;
        while (i < record.coefficients.size() && record.coefficients[i].first < p)
            ++i;
        if (i == record.coefficients.size() || record.coefficients[i].first != p)
            out.push_back({Severity::warning, p, "missing coefficient below coverage bound"});
    }
    return out;
}

bool has_errors(const std::vector<Finding>& findings) {
    return std::any_of(findings.begin(), findings.end(),
                       [](const Finding& f) { return f.severity == Severity::error; });
}

forms::FormMeta to_form(const CoeffRecord& record) {
    forms::FormMeta meta;
    meta.label = record.label;
    meta.level = record.level;
    meta.t = record.spectral_parameter;
    meta.source = std::make_shared<forms::TableSource>(record.coefficients, record.coverage);
    return meta;
}

} // namespace ramanujan::ingest
