#include <doctest.h>

#include <random>
#include <set>

#include "oracles.h"
#include "qaforge/clone_detect.h"

using namespace qaforge;

namespace {

// A = u1..u20; B equals A with unit 10 substituted.
Corpus substitution_fixture() {
    std::vector<int> a(20), b(20);
    for (int i = 0; i < 20; ++i) a[i] = b[i] = i + 1;
    b[9] = 99;
    return oracle::corpus_from_codes({a, b});
}

CloneParams paper_params() {
    CloneParams p;
    p.min_length = 10;
    p.max_gaps = 1;
    p.max_gap_ratio = 0.30;
    return p;
}

std::set<std::pair<int, int>> covered_units(const std::vector<CloneClass>& classes) {
    std::set<std::pair<int, int>> covered;
    for (const auto& c : classes)
        for (const auto& inst : c.instances)
            for (int u = inst.start_unit; u <= inst.end_unit; ++u) {
                bool in_gap = false;
                for (const auto& g : inst.gap_spans) in_gap = in_gap || (u >= g.start_unit && u <= g.end_unit);
                if (!in_gap) covered.insert({inst.file_id, u});
            }
    return covered;
}

}  // namespace

TEST_CASE("substituted statement merges into one gapped class") {
    Corpus corpus = substitution_fixture();
    auto classes = detect_gapped(corpus, paper_params());
    REQUIRE(classes.size() == 1);
    const CloneClass& c = classes[0];
    CHECK(c.gapped);
    CHECK(c.length == 19);
    REQUIRE(c.instances.size() == 2);
    for (const auto& inst : c.instances) {
        CHECK(inst.start_unit == 0);
        CHECK(inst.end_unit == 19);
        REQUIRE(inst.gap_spans.size() == 1);
        CHECK(inst.gap_spans[0].start_unit == 9);
        CHECK(inst.gap_spans[0].end_unit == 9);
    }
}

TEST_CASE("zero gap ratio leaves only the conventional suffix class") {
    Corpus corpus = substitution_fixture();
    CloneParams params = paper_params();
    params.max_gap_ratio = 0.0;
    auto classes = detect_gapped(corpus, params);
    REQUIRE(classes.size() == 1);
    CHECK_FALSE(classes[0].gapped);
    CHECK(classes[0].length == 10);
    CHECK(classes[0].instances[0].start_unit == 10);
    CHECK(classes[0].instances[0].end_unit == 19);
    CHECK(classes[0].instances[0].gap_spans.empty());
}

TEST_CASE("max_gaps zero reduces to conventional detection byte for byte") {
    std::mt19937 rng(31);
    for (int round = 0; round < 15; ++round) {
        auto files = oracle::random_corpus_codes(rng, 200);
        Corpus corpus = oracle::corpus_from_codes(files);
        CloneParams params;
        params.min_length = std::uniform_int_distribution<int>(2, 6)(rng);
        params.max_gaps = 0;
        auto conventional = detect_clones(corpus, params);
        auto gapped = detect_gapped(corpus, params);
        CHECK(clone_report_json(corpus, params, conventional, CloneMetrics{}, {}, CloneMetrics{}) ==
              clone_report_json(corpus, params, gapped, CloneMetrics{}, {}, CloneMetrics{}));
    }
}

TEST_CASE("gapped coverage is a superset of conventional coverage") {
    std::mt19937 rng(57);
    for (int round = 0; round < 25; ++round) {
        auto files = oracle::random_corpus_codes(rng, 180);
        // Plant a near-miss: copy a segment and damage one unit.
        if (files[0].size() >= 30) {
            std::vector<int> mutated(files[0].begin(), files[0].begin() + 25);
            mutated[12] = 100 + round;
            files.push_back(std::move(mutated));
        }
        Corpus corpus = oracle::corpus_from_codes(files);
        CloneParams params;
        params.min_length = std::uniform_int_distribution<int>(4, 8)(rng);
        params.max_gaps = 1;
        params.max_gap_ratio = 0.30;
        auto conventional = detect_clones(corpus, params);
        auto gapped = detect_gapped(corpus, params);
        auto conv_cov = covered_units(conventional);
        auto gap_cov = covered_units(gapped);
        for (const auto& unit : conv_cov) CHECK(gap_cov.count(unit) == 1);
    }
}

TEST_CASE("gapped merges respect method boundaries") {
    // Two files, each with the same two methods; the gap would have to cross
    // the boundary between them.
    std::vector<int> a, b;
    for (int i = 0; i < 8; ++i) a.push_back(i + 1);
    a.push_back(50);  // method boundary marker position (scope changes below)
    for (int i = 0; i < 8; ++i) a.push_back(i + 20);
    b = a;
    b[3] = 77;   // damage inside first method
    b[13] = 88;  // damage inside second method
    Corpus corpus = oracle::corpus_from_codes({a, b});
    // Assign method scopes: first 9 units scope 0, rest scope 1.
    for (auto& file : corpus.files)
        for (auto& unit : file.units) unit.method_scope = unit.index <= 8 ? 0 : 1;

    auto merged_instance_crosses = [&](const std::vector<CloneClass>& classes) {
        bool crosses = false;
        for (const auto& c : classes)
            for (const auto& inst : c.instances) {
                if (inst.gap_spans.empty()) continue;  // retained exact matches may span
                int scope = corpus.files[inst.file_id].units[inst.start_unit].method_scope;
                for (int u = inst.start_unit; u <= inst.end_unit; ++u)
                    crosses = crosses || corpus.files[inst.file_id].units[u].method_scope != scope;
            }
        return crosses;
    };

    CloneParams params;
    params.min_length = 4;
    params.max_gaps = 2;
    params.max_gap_ratio = 0.40;
    params.respect_method_boundaries = true;
    CHECK_FALSE(merged_instance_crosses(detect_gapped(corpus, params)));

    params.respect_method_boundaries = false;
    CHECK(merged_instance_crosses(detect_gapped(corpus, params)));
}

TEST_CASE("gapped detection is deterministic") {
    std::mt19937 rng(321);
    auto files = oracle::random_corpus_codes(rng, 200);
    Corpus corpus = oracle::corpus_from_codes(files);
    CloneParams params = paper_params();
    params.min_length = 4;
    auto first = detect_gapped(corpus, params);
    auto second = detect_gapped(corpus, params);
    CHECK(clone_report_json(corpus, params, first, CloneMetrics{}, {}, CloneMetrics{}) ==
          clone_report_json(corpus, params, second, CloneMetrics{}, {}, CloneMetrics{}));
}
