#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "alcor/serialize.hpp"
#include "support.hpp"

using namespace alcor;
using namespace testsupport;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("alcor-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

FrequentSet sample_set() {
    FrequentSet f;
    f.set_level(1, {{{bts_type(0)}, 5, 0.25}, {{bts_type(1)}, 4, 0.2}});
    f.set_level(2, {{{bts_type(0), bts_type(1)}, 3, 0.15}});
    return f;
}

} // namespace

TEST_CASE("frequent sets round trip through the file format") {
    TempDir dir;
    auto set = sample_set();
    FrequentSetMeta meta{30, 20, 3};
    auto path = dir.file("frequent.json");
    write_frequent_set_file(path, set, meta);

    auto loaded = read_frequent_set_file(path);
    CHECK(loaded.set == set);
    CHECK(loaded.meta.window_seconds == 30);
    CHECK(loaded.meta.tuple_count == 20);
    CHECK(loaded.meta.min_count == 3);
}

TEST_CASE("frequent sets mined from random queues round trip") {
    auto model = small_model();
    SplitMix64 rng(3);
    TempDir dir;
    for (int iter = 0; iter < 10; ++iter) {
        auto q = random_queue(rng, 150, 4, 200);
        auto f = mine(q, model, WindowSpec(15), SupportThreshold::count(2));
        auto path = dir.file("f" + std::to_string(iter) + ".json");
        write_frequent_set_file(path, f, {15, q.size(), 2});
        CHECK(read_frequent_set_file(path).set == f);
    }
}

TEST_CASE("serialization is byte deterministic") {
    auto set = sample_set();
    FrequentSetMeta meta{30, 20, 3};
    CHECK(frequent_set_to_json(set, meta) == frequent_set_to_json(set, meta));
}

TEST_CASE("rule reports carry the schema fields") {
    CorrelationRule r;
    r.antecedent = {bts_type(0)};
    r.consequent = {bts_type(1)};
    r.whole = {bts_type(0), bts_type(1)};
    r.confidence = 0.5;
    r.support = 0.25;
    r.antecedent_support = 0.5;
    r.consequent_support = 0.5;
    r.whole_count = 5;
    r.antecedent_count = 10;
    r.consequent_count = 10;
    r.interval = 30;

    RuleReportMeta meta{30, 0.4, false};
    auto text = rules_to_json(std::vector<CorrelationRule>{r}, meta);
    auto j = nlohmann::json::parse(text);
    CHECK(j["format"] == "alcor-rules");
    REQUIRE(j["rules"].size() == 1);
    const auto& rule = j["rules"][0];
    CHECK(rule["confidence"] == 0.5);
    CHECK(rule["antecedent"][0] == nlohmann::json::array({30, 42, 0}));
    CHECK(rule["whole_count"] == 5);
    CHECK(rule["interval_seconds"] == 30);
    CHECK(!rule.contains("ratio_confidence"));

    SUBCASE("diagnostics adds the ratio form") {
        meta.diagnostics = true;
        auto with = nlohmann::json::parse(
            rules_to_json(std::vector<CorrelationRule>{r}, meta));
        CHECK(with["rules"][0].contains("ratio_confidence"));
    }
}

TEST_CASE("rule text rendering shows the interval arrow") {
    CorrelationRule r;
    r.antecedent = {bts_type(0)};
    r.consequent = {bts_type(1), bts_type(2)};
    r.whole = {bts_type(0), bts_type(1), bts_type(2)};
    r.confidence = 1.25;
    r.support = 0.01;
    r.interval = 60;
    std::ostringstream out;
    write_rules_text(out, std::vector<CorrelationRule>{r}, {60, 0.5, false});
    auto s = out.str();
    CHECK(s.find("--60s-->") != std::string::npos);
    CHECK(s.find("conf=1.250000") != std::string::npos);
    CHECK(s.find("W=60") != std::string::npos);
}

TEST_CASE("manifest serializes every injection") {
    WorkloadManifest m;
    m.seed = 9;
    m.horizon = 1000;
    m.events = 40;
    m.noise_events = 20;
    m.alarm_types = 8;
    PatternManifest pm;
    pm.sequence = {bts_type(0), bts_type(1)};
    pm.kind = PatternKind::Intra;
    pm.injections = 2;
    pm.guaranteed_count = 2;
    pm.max_spread = 5;
    pm.injection_timestamps = {{10, 12}, {500, 504}};
    m.patterns.push_back(pm);

    auto j = nlohmann::json::parse(manifest_to_json(m));
    CHECK(j["totals"]["events"] == 40);
    REQUIRE(j["patterns"].size() == 1);
    CHECK(j["patterns"][0]["kind"] == "intra");
    CHECK(j["patterns"][0]["injection_timestamps"][1][1] == 504);
}

TEST_CASE("atomic writes replace files and leave no temporaries") {
    TempDir dir;
    auto path = dir.file("out.txt");
    atomic_write_file(path, "first");
    atomic_write_file(path, "second");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    CHECK(content == "second");
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dir.path))
        ++files;
    CHECK(files == 1);
}

TEST_CASE("reading garbage fails cleanly") {
    TempDir dir;
    auto path = dir.file("junk.json");
    atomic_write_file(path, "{not json");
    CHECK_THROWS_AS(read_frequent_set_file(path), IoError);
    atomic_write_file(path, "{\"format\": \"something-else\"}");
    CHECK_THROWS_AS(read_frequent_set_file(path), IoError);
    CHECK_THROWS_AS(read_frequent_set_file(dir.file("missing.json")), IoError);
}
