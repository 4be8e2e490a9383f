#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "ramanujan/error.hpp"
#include "ramanujan/ingest.hpp"

using namespace ramanujan;
using namespace ramanujan::ingest;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = RAMANUJAN_TEST_FIXTURE_DIR;

// Scratch directory removed on scope exit.
struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("ramanujan-test-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::unavailable;
}

CoeffRecord small_record() {
    CoeffRecord r;
    r.label = "small";
    r.level = 3;
    r.spectral_parameter = 4.5;
    r.coefficients = {{2, 0.5}, {3, 0.0}, {5, -1.25}, {7, 1.75}};
    r.coverage = 7;
    r.fetched_at = "1970-01-01T00:00:00Z";
    return r;
}

IngestConfig offline(const fs::path& cache, const fs::path& fixtures = {}) {
    IngestConfig c;
    c.cache_dir = cache;
    c.fixture_dir = fixtures;
    c.network_enabled = false;
    return c;
}

} // namespace

TEST_CASE("committed fixtures validate") {
    for (const char* label :
         {"fixture-tempered-1", "fixture-tempered-2", "fixture-mixed-1", "fixture-mixed-2"}) {
        const auto r = read_record(kFixtures / (std::string(label) + ".json"), Source::fixture);
        CHECK(r.label == label);
        CHECK(r.coverage == 10000);
        CHECK(r.coefficients.size() == 1229);
        const auto findings = validate(r);
        CHECK_FALSE(has_errors(findings));
        for (const auto& f : findings)
            CHECK(f.severity == Severity::info);
    }
}

TEST_CASE("validation findings") {
    auto r = small_record();
    CHECK_FALSE(has_errors(validate(r)));

    r.coefficients[0].second = 2.1; // above 2^{7/64} + 2^{-7/64}
    auto f = validate(r);
    CHECK(has_errors(f));
    CHECK(f.front().p == 2);
    CHECK(f.front().severity == Severity::error);

    r = small_record();
    r.coefficients.erase(r.coefficients.begin() + 1); // drop p = 3
    f = validate(r);
    CHECK_FALSE(has_errors(f));
    bool gap = false;
    for (const auto& x : f)
        gap = gap || (x.p == 3 && x.severity == Severity::warning);
    CHECK(gap);

    r = small_record();
    r.coefficients.push_back({9, 0.1});
    r.coverage = 9;
    CHECK(has_errors(validate(r)));

    r = small_record();
    r.coefficients[2].second = std::nan("");
    CHECK(has_errors(validate(r)));

    r = small_record();
    std::swap(r.coefficients[1], r.coefficients[2]);
    CHECK(has_errors(validate(r)));
}

TEST_CASE("cache round-trip is byte-identical") {
    TempDir dir;
    const auto r = small_record();
    const auto path = record_path(dir.path, r.label);
    write_record_atomic(path, r);
    const auto back = read_record(path, Source::fixture);
    CHECK(back == r);
    CHECK(slurp(path) == serialize(r));
    write_record_atomic(path, back);
    CHECK(slurp(path) == serialize(r));
    for (const auto& e : fs::directory_iterator(dir.path))
        CHECK(e.path().filename() == "small.json");

    const auto fixture = kFixtures / "fixture-mixed-1.json";
    CHECK(serialize(read_record(fixture, Source::fixture)) == slurp(fixture));
}

TEST_CASE("parse errors name the field") {
    auto doc = to_json(small_record());
    CHECK(parse_record(doc, Source::fixture) == small_record());
    CHECK(parse_record(nlohmann::json{{"data", {doc}}}, Source::fixture) == small_record());

    auto missing = doc;
    missing.erase("level");
    try {
        parse_record(missing, Source::fixture);
        FAIL("expected parse_error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::parse_error);
        CHECK(std::string(e.what()).find("level") != std::string::npos);
    }
    auto bad = doc;
    bad["coefficients"][1] = "x";
    CHECK(code_of([&] { parse_record(bad, Source::fixture); }) == ErrorCode::parse_error);
    auto schema = doc;
    schema["schema"] = 99;
    CHECK(code_of([&] { parse_record(schema, Source::fixture); }) == ErrorCode::parse_error);
    CHECK(code_of([&] { parse_record(nlohmann::json::array(), Source::fixture); }) ==
          ErrorCode::parse_error);

    TempDir dir;
    std::ofstream(dir.path / "junk.json") << "{not json";
    CHECK(code_of([&] { read_record(dir.path / "junk.json", Source::fixture); }) ==
          ErrorCode::parse_error);
    CHECK(code_of([&] { read_record(dir.path / "none.json", Source::fixture); }) ==
          ErrorCode::not_found);
}

TEST_CASE("offline fetch order: cache, then fixtures") {
    TempDir cache;
    const auto cfg = offline(cache.path, kFixtures);
    const auto from_fixture = fetch("fixture-tempered-1", 0, cfg);
    CHECK(from_fixture.source == Source::fixture);
    CHECK(from_fixture.coverage == 10000);

    auto edited = from_fixture;
    edited.spectral_parameter = 1.0;
    write_record_atomic(record_path(cache.path, edited.label), edited);
    CHECK(fetch("fixture-tempered-1", 0, cfg).spectral_parameter == 1.0);

    const auto cut = fetch("fixture-tempered-2", 1000, cfg);
    CHECK(cut.coverage == 1000);
    CHECK(cut.coefficients.back().first == 997);
    CHECK(cut.coefficients.size() == 168);

    CHECK(code_of([&] { fetch("fixture-tempered-2", 20000, cfg); }) == ErrorCode::data_gap);
    CHECK(code_of([&] { fetch("no-such-form", 0, cfg); }) == ErrorCode::unavailable);
    CHECK(code_of([&] { fetch("../escape", 0, cfg); }) == ErrorCode::invalid_input);
}

TEST_CASE("remote fetch then cache matches the fixture data") {
    httplib::Server server;
    std::atomic<int> hits{0};
    server.Get(R"(/api/(.+))", [&](const httplib::Request& req, httplib::Response& res) {
        ++hits;
        const auto path = kFixtures / (req.matches[1].str() + ".json");
        if (!fs::exists(path)) {
            res.status = 404;
            return;
        }
        res.set_content(slurp(path), "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    if (port <= 0) {
        MESSAGE("loopback bind failed; remote path not exercised");
        return;
    }
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    TempDir cache;
    IngestConfig cfg;
    cfg.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/api/";
    cfg.cache_dir = cache.path;
    cfg.timeout_seconds = 5;

    const auto remote = fetch("fixture-mixed-2", 0, cfg);
    CHECK(remote.source == Source::remote);
    CHECK(hits == 1);
    CHECK(fs::exists(record_path(cache.path, "fixture-mixed-2")));
    CHECK(code_of([&] { fetch("fixture-absent", 0, cfg); }) == ErrorCode::not_found);

    server.stop();
    worker.join();

    const auto cached = fetch("fixture-mixed-2", 0, offline(cache.path));
    const auto fixture = read_record(kFixtures / "fixture-mixed-2.json", Source::fixture);
    CHECK(cached == fixture);
    CHECK(remote.coefficients == fixture.coefficients);
    CHECK(slurp(record_path(cache.path, "fixture-mixed-2")) ==
          slurp(kFixtures / "fixture-mixed-2.json"));

    // Endpoint down, nothing cached: unavailable.
    TempDir empty;
    cfg.cache_dir = empty.path;
    CHECK(code_of([&] { fetch("fixture-mixed-2", 0, cfg); }) == ErrorCode::unavailable);
}

TEST_CASE("conversion to a form") {
    const auto r = small_record();
    const auto form = to_form(r);
    CHECK(form.label == "small");
    CHECK(form.level == 3);
    CHECK(form.t == 4.5);
    CHECK(form.source->coverage() == 7);
    CHECK(form.source->eigenvalue(5) == -1.25);
    CHECK_FALSE(form.source->eigenvalue(11).has_value());
}
