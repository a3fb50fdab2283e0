#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ellq/checks.hpp"

using namespace ellq;
namespace fs = std::filesystem;

TEST_CASE("key=value and JSON configs agree") {
    auto a = parse_config_text("# comment\ntau_im = 0.9\nhbar_re=0.2 # trailing\nseed = 7\n");
    auto b = parse_config_text(R"({"tau_im": 0.9, "hbar_re": 0.2, "seed": 7})");
    CHECK(a.P.tau == b.P.tau);
    CHECK(a.P.hbar == b.P.hbar);
    CHECK(a.seed == 7);
    CHECK(b.seed == 7);
    CHECK(config_json(a) == config_json(b));
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config_text("colour = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("tau_im = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("tau_im = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("hbar_re = 0.5\nhbar_im = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("{\"tau_im\": \"x\"}"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("{broken"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("just text\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/ellq.cfg"), ConfigError);
}

TEST_CASE("q-character cache") {
    fs::path dir = fs::temp_directory_path() / "ellq-cache-test";
    fs::remove_all(dir);
    QCharCache cache(dir.string());
    auto mu = make_partition({2, 1, 0}, 3);
    bool hit = true;
    QCharacter a = cache.get(3, mu, 0, &hit);
    CHECK_FALSE(hit);
    QCharacter b = cache.get(3, mu, 0, &hit);
    CHECK(hit);
    CHECK(a == b);
    CHECK(a == qchar_evaluation(mu, 0, 3));
    // a different key lands in a different file
    CHECK(cache.path_for(QCharCache::key(3, mu, 0)) != cache.path_for(QCharCache::key(3, mu, 1)));
    CHECK(QCharCache::digest("abc") == QCharCache::digest("abc"));
    // damaged entry is recomputed
    { std::ofstream(cache.path_for(QCharCache::key(3, mu, 0))) << "{not json"; }
    QCharacter c = cache.get(3, mu, 0, &hit);
    CHECK_FALSE(hit);
    CHECK(c == a);
    fs::remove_all(dir);
}

TEST_CASE("sampler retries pole trips, then gives up") {
    Sampler S(5);
    int calls = 0;
    int v = S.try_sample([&](Sampler&) {
        if (++calls < 3) throw PoleError("near a pole");
        return 42;
    });
    CHECK(v == 42);
    CHECK(S.retries_used() == 2);
    calls = 0;
    CHECK_THROWS_AS(S.try_sample([&](Sampler&) -> int { ++calls; throw PoleError("always"); }), PoleError);
    CHECK(calls == 11);
    Sampler A(9), B(9);
    for (int i = 0; i < 5; ++i) CHECK(A.point() == B.point());
}

TEST_CASE("reports are deterministic and carry tolerances") {
    RunConfig cfg;
    cfg.cache_dir = (fs::temp_directory_path() / "ellq-report-test").string();
    auto r1 = dybe_report(cfg, 2, 5).to_json(cfg).dump();
    auto r2 = dybe_report(cfg, 2, 5).to_json(cfg).dump();
    CHECK(r1 == r2);
    cfg.seed += 1;
    CHECK(dybe_report(cfg, 2, 5).to_json(cfg).dump() != r1);
    auto j = nlohmann::json::parse(r1);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["claims"][0].contains("tol"));
    CHECK_FALSE(j.contains("elapsed_ms"));
    cfg.timings = true;
    CHECK(theta_report(cfg, 3).to_json(cfg).contains("elapsed_ms"));
    fs::remove_all(cfg.cache_dir);
}

TEST_CASE("budget") {
    Deadline d(0.0);
    CHECK_THROWS_AS(d.check("probe"), BudgetExceeded);
    RunConfig cfg;
    cfg.budget_seconds = 0.0;
    CHECK_THROWS_AS(dybe_report(cfg, 2, 3), BudgetExceeded);
}

TEST_CASE("small subcommand reports") {
    RunConfig cfg;
    cfg.cache_dir = (fs::temp_directory_path() / "ellq-report-test2").string();
    auto q = qchar_report(cfg, 3, {2, 1, 0}, 0);
    CHECK(q.pass());
    CHECK(q.details["count"] == 8);
    auto t = tsystem_report(cfg, 2, 1, 1, 0);
    CHECK(t.pass());
    CHECK(t.details["unit_mod_one_dimensional"] == true);
    fs::remove_all(cfg.cache_dir);
}
