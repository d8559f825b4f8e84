#include <doctest.h>

#include <random>

#include "oracles.h"
#include "qaforge/clone_detect.h"
#include "qaforge/suffix_array.h"

using namespace qaforge;

namespace {

CloneParams params_with(int min_length) {
    CloneParams p;
    p.min_length = min_length;
    p.max_gaps = 0;
    return p;
}

std::vector<std::vector<int>> codes_of(const Corpus& corpus) {
    std::vector<std::vector<int>> files;
    for (const auto& f : corpus.files) {
        std::vector<int> codes;
        for (const auto& u : f.units) codes.push_back(u.token_ids.front());
        files.push_back(std::move(codes));
    }
    return files;
}

}  // namespace

TEST_CASE("suffix array and lcp agree with a naive sort") {
    std::mt19937 rng(7);
    for (int round = 0; round < 25; ++round) {
        int n = std::uniform_int_distribution<int>(1, 120)(rng);
        std::vector<int> seq(n);
        for (int& v : seq) v = std::uniform_int_distribution<int>(0, 5)(rng);
        auto sa = build_suffix_array(seq);
        REQUIRE(sa.size() == seq.size());
        auto suffix_less = [&](int a, int b) {
            return std::lexicographical_compare(seq.begin() + a, seq.end(), seq.begin() + b, seq.end());
        };
        for (size_t i = 1; i < sa.size(); ++i) CHECK(suffix_less(sa[i - 1], sa[i]));
        auto lcp = build_lcp(seq, sa);
        for (size_t i = 1; i < sa.size(); ++i) {
            int a = sa[i - 1], b = sa[i], common = 0;
            while (a + common < n && b + common < n && seq[a + common] == seq[b + common]) ++common;
            CHECK(lcp[i] == common);
        }
    }
}

TEST_CASE("two identical files form one class spanning both") {
    std::vector<int> file(20);
    for (int i = 0; i < 20; ++i) file[i] = i;
    Corpus corpus = oracle::corpus_from_codes({file, file});
    auto classes = detect_clones(corpus, params_with(10));
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].length == 20);
    CHECK(classes[0].instances.size() == 2);
    CHECK_FALSE(classes[0].gapped);

    CloneMetrics m = compute_metrics(classes, corpus);
    CHECK(m.unit_coverage == doctest::Approx(100.0));
    CHECK(m.blow_up == doctest::Approx(200.0));
    CHECK(m.cloned_units == 40);
    CHECK(m.longest_clone == 20);
    CHECK(m.max_instances == 2);
}

TEST_CASE("prefix duplication yields the maximal shared prefix") {
    std::vector<int> a(15), b(12);
    for (int i = 0; i < 15; ++i) a[i] = i;
    for (int i = 0; i < 12; ++i) b[i] = i;
    Corpus corpus = oracle::corpus_from_codes({a, b});
    auto classes = detect_clones(corpus, params_with(10));
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].length == 12);
    CHECK(classes[0].instances.size() == 2);

    auto expected = oracle::brute_force_repeats(codes_of(corpus), 10);
    CHECK(oracle::canonical_classes(classes) == expected);

    CloneMetrics m = compute_metrics(classes, corpus);
    CHECK(m.cloned_units == 24);
    CHECK(m.unit_coverage == doctest::Approx(100.0 * 24 / 27));
    CHECK(m.blow_up == doctest::Approx(100.0 * 27 / 15));
}

TEST_CASE("all-distinct units yield no clones") {
    std::vector<int> a{1, 2, 3, 4, 5}, b{6, 7, 8, 9, 10};
    Corpus corpus = oracle::corpus_from_codes({a, b});
    CHECK(detect_clones(corpus, params_with(2)).empty());
}

TEST_CASE("empty corpus detects nothing and metrics are undefined") {
    Corpus corpus = oracle::corpus_from_codes({});
    CHECK(detect_clones(corpus, params_with(2)).empty());
    CHECK_THROWS_AS(compute_metrics({}, corpus), FatalError);
}

TEST_CASE("clone params are validated") {
    Corpus corpus = oracle::corpus_from_codes({{1, 2, 3}});
    CloneParams bad;
    bad.min_length = 1;
    CHECK_THROWS_AS(detect_clones(corpus, bad), FatalError);
    bad = CloneParams{};
    bad.max_gap_ratio = 1.0;
    CHECK_THROWS_AS(detect_clones(corpus, bad), FatalError);
    bad = CloneParams{};
    bad.max_gaps = -1;
    CHECK_THROWS_AS(detect_clones(corpus, bad), FatalError);
}

TEST_CASE("detector equals the brute-force oracle on random corpora") {
    std::mt19937 rng(1234);
    for (int round = 0; round < 40; ++round) {
        auto files = oracle::random_corpus_codes(rng, 220);
        Corpus corpus = oracle::corpus_from_codes(files);
        int min_length = std::uniform_int_distribution<int>(2, 8)(rng);
        auto classes = detect_clones(corpus, params_with(min_length));
        auto expected = oracle::brute_force_repeats(files, min_length);
        REQUIRE(oracle::canonical_classes(classes) == expected);
    }
}

TEST_CASE("decreasing min_length never decreases coverage") {
    std::mt19937 rng(99);
    for (int round = 0; round < 20; ++round) {
        auto files = oracle::random_corpus_codes(rng, 200);
        Corpus corpus = oracle::corpus_from_codes(files);
        if (corpus.total_units() == 0) continue;
        double previous = -1.0;
        for (int min_length = 8; min_length >= 2; --min_length) {
            CloneMetrics m = compute_metrics(detect_clones(corpus, params_with(min_length)), corpus);
            CHECK(m.unit_coverage >= previous);
            previous = m.unit_coverage;
        }
    }
}

TEST_CASE("adding a duplicated file never decreases cloned units") {
    std::mt19937 rng(4242);
    for (int round = 0; round < 20; ++round) {
        auto files = oracle::random_corpus_codes(rng, 150);
        Corpus corpus = oracle::corpus_from_codes(files);
        if (corpus.total_units() == 0) continue;
        CloneMetrics before = compute_metrics(detect_clones(corpus, params_with(3)), corpus);
        auto extended = files;
        extended.push_back(files[std::uniform_int_distribution<size_t>(0, files.size() - 1)(rng)]);
        Corpus bigger = oracle::corpus_from_codes(extended);
        CloneMetrics after = compute_metrics(detect_clones(bigger, params_with(3)), bigger);
        CHECK(after.cloned_units >= before.cloned_units);
    }
}

TEST_CASE("blow-up is 100 exactly when nothing is redundant") {
    std::vector<int> a{1, 2, 3, 4, 5, 6};
    Corpus corpus = oracle::corpus_from_codes({a});
    CloneMetrics m = compute_metrics(detect_clones(corpus, params_with(2)), corpus);
    CHECK(m.blow_up == doctest::Approx(100.0));
    CHECK(m.cloned_units == 0);
}

TEST_CASE("fingerprints are stable and duplicate-free per sequence") {
    std::vector<int> file(20);
    for (int i = 0; i < 20; ++i) file[i] = i % 7;
    Corpus corpus = oracle::corpus_from_codes({file, file});
    auto first = detect_clones(corpus, params_with(5));
    auto second = detect_clones(corpus, params_with(5));
    REQUIRE(first.size() == second.size());
    for (size_t i = 0; i < first.size(); ++i) CHECK(first[i].fingerprint == second[i].fingerprint);
}

TEST_CASE("suppression removes listed classes and tolerates noise") {
    std::vector<int> file(20);
    for (int i = 0; i < 20; ++i) file[i] = i;
    Corpus corpus = oracle::corpus_from_codes({file, file});
    auto classes = detect_clones(corpus, params_with(10));
    REQUIRE(classes.size() == 1);
    std::string fp = classes[0].fingerprint;

    auto untouched = suppress_with_fingerprints(classes, {});
    CHECK(untouched.classes.size() == 1);
    CHECK(untouched.warnings.empty());

    auto removed = suppress_with_fingerprints(classes, {"# header", fp + "  # the only clone", "not-a-hash"});
    CHECK(removed.classes.empty());
    REQUIRE(removed.warnings.size() == 1);
    CHECK(removed.warnings[0].find("not-a-hash") != std::string::npos);

    CloneMetrics m = compute_metrics(removed.classes, corpus);
    CHECK(m.unit_coverage == doctest::Approx(0.0));
}

TEST_CASE("corpus-wide identifier rename keeps classes, coverage and fingerprints") {
    std::mt19937 rng(777);
    LanguageProfile profile = cstyle_profile();
    for (int round = 0; round < 10; ++round) {
        // Build two files of small statements over identifier vocabulary.
        auto make_corpus = [&](const std::vector<std::string>& names) {
            Corpus corpus;
            corpus.profile = profile;
            std::mt19937 local(round);  // same structure per round
            for (int f = 0; f < 2; ++f) {
                SourceFile file;
                file.path = "f" + std::to_string(f) + ".src";
                int n = std::uniform_int_distribution<int>(10, 40)(local);
                for (int u = 0; u < n; ++u) {
                    Unit unit;
                    unit.file_id = f;
                    unit.index = u;
                    int lhs = std::uniform_int_distribution<int>(0, 5)(local);
                    int rhs = std::uniform_int_distribution<int>(0, 5)(local);
                    unit.token_ids = {corpus.tokens.intern(TokenKind::Identifier, names[lhs]),
                                      corpus.tokens.intern(TokenKind::Punct, "="),
                                      corpus.tokens.intern(TokenKind::Identifier, names[rhs]),
                                      corpus.tokens.intern(TokenKind::Terminator, ";")};
                    unit.start_line = u + 1;
                    unit.end_line = u + 1;
                    file.units.push_back(std::move(unit));
                }
                corpus.files.push_back(std::move(file));
            }
            return normalize(corpus, Normalization::Identifiers);
        };
        Corpus original = make_corpus({"a", "b", "c", "d", "e", "f"});
        Corpus renamed = make_corpus({"alpha", "beta", "gamma", "delta", "eps", "zeta"});

        CloneParams params = params_with(3);
        auto classes_a = detect_clones(original, params);
        auto classes_b = detect_clones(renamed, params);
        CHECK(oracle::canonical_classes(classes_a) == oracle::canonical_classes(classes_b));
        REQUIRE(classes_a.size() == classes_b.size());
        for (size_t i = 0; i < classes_a.size(); ++i)
            CHECK(classes_a[i].fingerprint == classes_b[i].fingerprint);
        if (original.total_units() > 0) {
            CloneMetrics ma = compute_metrics(classes_a, original);
            CloneMetrics mb = compute_metrics(classes_b, renamed);
            CHECK(ma.unit_coverage == doctest::Approx(mb.unit_coverage));
            CHECK(ma.blow_up == doctest::Approx(mb.blow_up));
        }
    }
}

TEST_CASE("renaming identifiers in a single instance keeps class and fingerprint") {
    LanguageProfile profile = cstyle_profile();
    auto build = [&](bool renamed) {
        Corpus corpus;
        corpus.profile = profile;
        for (int f = 0; f < 2; ++f) {
            SourceFile file;
            file.path = "f" + std::to_string(f) + ".src";
            for (int u = 0; u < 12; ++u) {
                std::string lhs = (renamed && f == 1) ? "renamed" + std::to_string(u) : "name" + std::to_string(u);
                Unit unit;
                unit.file_id = f;
                unit.index = u;
                unit.token_ids = {corpus.tokens.intern(TokenKind::Identifier, lhs),
                                  corpus.tokens.intern(TokenKind::Punct, "="),
                                  corpus.tokens.intern(TokenKind::Number, std::to_string(u)),
                                  corpus.tokens.intern(TokenKind::Terminator, ";")};
                unit.start_line = u + 1;
                unit.end_line = u + 1;
                file.units.push_back(std::move(unit));
            }
            corpus.files.push_back(std::move(file));
        }
        return normalize(corpus, Normalization::Identifiers);
    };
    CloneParams params = params_with(10);
    auto plain = detect_clones(build(false), params);
    auto mutated = detect_clones(build(true), params);
    REQUIRE(plain.size() == 1);
    REQUIRE(mutated.size() == 1);
    CHECK(plain[0].fingerprint == mutated[0].fingerprint);
    CHECK(oracle::canonical_classes(plain) == oracle::canonical_classes(mutated));
}
