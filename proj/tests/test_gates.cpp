#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.h"
#include "qaforge/gates.h"

using namespace qaforge;

namespace {

AnalysisBundle bundle_with(std::map<std::string, double> metrics, const std::string& label = "I") {
    AnalysisBundle b;
    b.version_label = label;
    b.metrics = std::move(metrics);
    return b;
}

GateSpec spec_of(const std::string& gates_json) {
    return GateSpec::from_json_text(R"({"schema":"gates.v1","gates":)" + gates_json + "}");
}

}  // namespace

TEST_CASE("coverage below threshold passes") {
    AnalysisBundle b = bundle_with({{"clone.conventional.unit_coverage", 22.2}});
    GateSpec spec = spec_of(R"([{"id":"cov","metric":"clone.conventional.unit_coverage","op":"<","threshold":25}])");
    GateResult r = evaluate_gates(spec, b);
    CHECK(r.overall_pass);
    CHECK(r.exit_code == 0);
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0].passed);
    CHECK(r.entries[0].value == doctest::Approx(22.2));
}

TEST_CASE("violated equality gate fails hard") {
    AnalysisBundle b = bundle_with({{"arch.violations_component", 2}});
    GateSpec spec = spec_of(R"([{"id":"arch","metric":"arch.violations_component","op":"=","threshold":0}])");
    GateResult r = evaluate_gates(spec, b);
    CHECK_FALSE(r.overall_pass);
    CHECK(r.exit_code == 1);
}

TEST_CASE("empty gate list passes overall") {
    GateResult r = evaluate_gates(GateSpec{}, bundle_with({}));
    CHECK(r.overall_pass);
    CHECK(r.exit_code == 0);
}

TEST_CASE("soft gate failure warns but does not fail the run") {
    AnalysisBundle b = bundle_with({{"findings.total", 10}});
    GateSpec spec = spec_of(R"([{"id":"soft","metric":"findings.total","op":"<","threshold":5,"hard":false}])");
    GateResult r = evaluate_gates(spec, b);
    CHECK(r.overall_pass);
    CHECK(r.exit_code == 0);
    CHECK_FALSE(r.entries[0].passed);
}

TEST_CASE("unknown metric key is a config error on that gate") {
    AnalysisBundle b = bundle_with({{"findings.total", 1}});
    GateSpec spec = spec_of(R"([
      {"id":"bad","metric":"no.such.metric","op":"<","threshold":5},
      {"id":"good","metric":"findings.total","op":"<","threshold":5}])");
    GateResult r = evaluate_gates(spec, b);
    CHECK(r.exit_code == 2);
    REQUIRE(r.entries.size() == 2);
    CHECK(r.entries[0].config_error);
    CHECK_FALSE(r.entries[0].passed);
    CHECK(r.entries[1].passed);
}

TEST_CASE("gate order never changes the verdict") {
    AnalysisBundle b = bundle_with({{"findings.total", 10}, {"clone.conventional.unit_coverage", 40}});
    std::string g1 = R"({"id":"a","metric":"findings.total","op":"<","threshold":5})";
    std::string g2 = R"({"id":"b","metric":"clone.conventional.unit_coverage","op":"<","threshold":50})";
    GateResult forward = evaluate_gates(spec_of("[" + g1 + "," + g2 + "]"), b);
    GateResult backward = evaluate_gates(spec_of("[" + g2 + "," + g1 + "]"), b);
    CHECK(forward.overall_pass == backward.overall_pass);
    CHECK(forward.exit_code == backward.exit_code);
}

TEST_CASE("findings gates filter by category, confidence and severity") {
    AnalysisBundle b;
    b.version_label = "I";
    b.findings.push_back({TaxonomyClass::Bug, "security", 5, 95.0, "src/net.src"});
    b.findings.push_back({TaxonomyClass::Bug, "security", 5, 60.0, "src/net.src"});
    b.findings.push_back({TaxonomyClass::Smell, "style", 2, 99.0, "src/ui.src"});
    GateSpec spec = spec_of(R"([{
      "id":"sec","metric":"findings.count","op":"=","threshold":0,
      "filter":{"category":"security","min_confidence":90}}])");
    GateResult r = evaluate_gates(spec, b);
    CHECK_FALSE(r.overall_pass);
    CHECK(r.entries[0].value == doctest::Approx(1.0));
}

TEST_CASE("scoped clone coverage is recomputed from per-file rows") {
    AnalysisBundle b;
    b.version_label = "I";
    b.metrics["clone.conventional.unit_coverage"] = 50.0;
    FileRow critical;
    critical.path = "critical/core.src";
    critical.analysed_units = 100;
    critical.cloned_units = 10;
    FileRow other;
    other.path = "misc/tools.src";
    other.analysed_units = 100;
    other.cloned_units = 90;
    b.files = {critical, other};

    GateSpec spec = spec_of(R"([{
      "id":"critical-cov","metric":"clone.conventional.unit_coverage",
      "op":"<","threshold":25,"scope":{"paths":["^critical/.*"]}}])");
    GateResult r = evaluate_gates(spec, b);
    CHECK(r.entries[0].value == doctest::Approx(10.0));  // 10/100, not the global 50
    CHECK(r.overall_pass);
}

TEST_CASE("change-set scope uses the bundle's change set") {
    AnalysisBundle b;
    b.version_label = "I";
    b.violations.push_back({"ui", "data", DefectClass::LayerCircumvention, {"src/changed.src"}});
    b.violations.push_back({"logic", "data", DefectClass::Other, {"src/stable.src"}});
    b.metrics["arch.violations_entity"] = 2;
    b.change_set = std::vector<std::string>{"src/changed.src"};

    GateSpec spec = spec_of(R"([{
      "id":"cs","metric":"arch.violations_entity","op":"=","threshold":0,
      "scope":{"change_set":true}}])");
    GateResult r = evaluate_gates(spec, b);
    CHECK(r.entries[0].value == doctest::Approx(1.0));
    CHECK_FALSE(r.overall_pass);

    AnalysisBundle no_changes = b;
    no_changes.change_set.reset();
    GateResult err = evaluate_gates(spec, no_changes);
    CHECK(err.exit_code == 2);
    CHECK(err.entries[0].config_error);
}

TEST_CASE("trend directions follow polarity") {
    PolarityTable polarity;  // lower is better by default
    std::vector<AnalysisBundle> improving{bundle_with({{"m", 18.2}}, "I"), bundle_with({{"m", 15.1}}, "II"),
                                          bundle_with({{"m", 13.7}}, "III")};
    auto series = compute_trends(improving, polarity);
    REQUIRE(series.size() == 1);
    CHECK(series[0].direction == TrendDirection::Improving);

    std::vector<AnalysisBundle> worsening{bundle_with({{"m", 238.8}}, "I"), bundle_with({{"m", 309.6}}, "II"),
                                          bundle_with({{"m", 336.0}}, "III")};
    CHECK(compute_trends(worsening, polarity)[0].direction == TrendDirection::Worsening);

    std::vector<AnalysisBundle> flat{bundle_with({{"m", 5.0}}, "I"), bundle_with({{"m", 5.0}}, "II")};
    CHECK(compute_trends(flat, polarity)[0].direction == TrendDirection::Flat);
}

TEST_CASE("polarity flip reverses the direction") {
    std::vector<AnalysisBundle> rising{bundle_with({{"m", 1.0}}, "I"), bundle_with({{"m", 2.0}}, "II")};
    PolarityTable lower;
    CHECK(compute_trends(rising, lower)[0].direction == TrendDirection::Worsening);
    PolarityTable higher = PolarityTable::from_json_text(R"({"metrics":{"m":"higher_is_better"}})");
    CHECK(compute_trends(rising, higher)[0].direction == TrendDirection::Improving);
}

TEST_CASE("reversing the version order flips improving and worsening") {
    std::mt19937 rng(5);
    PolarityTable polarity;
    for (int round = 0; round < 50; ++round) {
        std::vector<AnalysisBundle> bundles;
        int n = std::uniform_int_distribution<int>(2, 6)(rng);
        for (int i = 0; i < n; ++i)
            bundles.push_back(bundle_with({{"m", std::uniform_real_distribution<double>(0, 100)(rng)}},
                                          "v" + std::to_string(i)));
        auto forward = compute_trends(bundles, polarity);
        std::reverse(bundles.begin(), bundles.end());
        auto backward = compute_trends(bundles, polarity);
        if (forward[0].direction == TrendDirection::Flat) {
            CHECK(backward[0].direction == TrendDirection::Flat);
        } else {
            CHECK(forward[0].direction != backward[0].direction);
        }
    }
}

TEST_CASE("fewer than two bundles cannot form a trend") {
    CHECK_THROWS_AS(compute_trends({bundle_with({{"m", 1.0}})}, PolarityTable{}), FatalError);
}

TEST_CASE("only metrics present in every bundle form series") {
    std::vector<AnalysisBundle> bundles{bundle_with({{"a", 1}, {"b", 2}}, "I"),
                                        bundle_with({{"a", 3}}, "II")};
    auto series = compute_trends(bundles, PolarityTable{});
    REQUIRE(series.size() == 1);
    CHECK(series[0].metric == "a");
}

TEST_CASE("bundle json round trips") {
    AnalysisBundle b;
    b.version_label = "II";
    b.metrics["findings.total"] = 3;
    FileRow row;
    row.path = "a.src";
    row.analysed_units = 10;
    b.files.push_back(row);
    b.findings.push_back({TaxonomyClass::Bug, "security", 5, 80.0, "a.src"});
    b.violations.push_back({"x", "y", DefectClass::CircularDependency, {"a.src"}});
    b.change_set = std::vector<std::string>{"a.src"};
    std::string text = bundle_to_json_text(b);
    AnalysisBundle loaded = bundle_from_json_text(text);
    CHECK(bundle_to_json_text(loaded) == text);
}

TEST_CASE("per-file rows agree with the corpus-wide clone metrics") {
    std::mt19937 rng(31415);
    for (int round = 0; round < 20; ++round) {
        std::vector<std::vector<int>> files;
        int nfiles = std::uniform_int_distribution<int>(1, 4)(rng);
        for (int f = 0; f < nfiles; ++f) {
            std::vector<int> codes;
            int n = std::uniform_int_distribution<int>(5, 60)(rng);
            for (int i = 0; i < n; ++i) codes.push_back(std::uniform_int_distribution<int>(0, 9)(rng));
            files.push_back(std::move(codes));
        }
        Corpus corpus = oracle::corpus_from_codes(files);
        CloneParams params;
        params.min_length = 3;
        params.max_gaps = 0;
        auto classes = detect_clones(corpus, params);
        CloneMetrics metrics = compute_metrics(classes, corpus);
        AnalysisBundle b = make_bundle("I", corpus, classes, metrics, classes, metrics, ConformanceResult{}, {},
                                       {}, CodeMetrics{});
        long long cloned = 0, redundant = 0, analysed = 0;
        for (const auto& row : b.files) {
            cloned += row.cloned_units;
            redundant += row.redundant_units;
            analysed += row.analysed_units;
        }
        CHECK(analysed == metrics.analysed_units);
        CHECK(cloned == metrics.cloned_units);
        CHECK(100.0 * analysed / (analysed - redundant) == doctest::Approx(metrics.blow_up));
    }
}
