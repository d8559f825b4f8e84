#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "qaforge/source_model.h"

namespace fs = std::filesystem;
using namespace qaforge;

namespace {

struct TempTree {
    fs::path root;
    explicit TempTree(const std::string& tag) {
        root = fs::temp_directory_path() / ("qaforge_test_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(root);
        fs::create_directories(root);
    }
    ~TempTree() { fs::remove_all(root); }
    void add(const std::string& rel, const std::string& content) {
        fs::path p = root / rel;
        fs::create_directories(p.parent_path());
        std::ofstream out(p);
        out << content;
    }
};

}  // namespace

TEST_CASE("exclusion patterns remove matching files") {
    TempTree tree("exclude");
    tree.add("a.src", "a = 1;\n");
    tree.add("gen/parser.src", "p = 2;\n");
    Corpus corpus = load_corpus(tree.root.string(), cstyle_profile(), {"gen/.*"});
    REQUIRE(corpus.files.size() == 1);
    CHECK(corpus.files[0].path == "a.src");
}

TEST_CASE("empty directory loads an empty corpus") {
    TempTree tree("empty");
    Corpus corpus = load_corpus(tree.root.string(), cstyle_profile(), {});
    CHECK(corpus.files.empty());
    CHECK(corpus.total_units() == 0);
}

TEST_CASE("statement counts add up across files") {
    TempTree tree("counts");
    tree.add("a.src", "a=1; b=2; c=3; d=4; e=5;\n");                       // 5 units
    tree.add("b.src", "f() { x=1; y=2; }\ng() { z=3; }\n");                // 3+2+... hand count below
    tree.add("c.src", "s1; s2; s3; s4; s5; s6; s7; s8; s9;\n");            // 9 units
    Corpus corpus = load_corpus(tree.root.string(), cstyle_profile(), {});
    REQUIRE(corpus.files.size() == 3);
    CHECK(corpus.files[0].units.size() == 5);
    // b.src: header, x, y, close, header, z, close
    CHECK(corpus.files[1].units.size() == 7);
    CHECK(corpus.files[2].units.size() == 9);
    CHECK(corpus.total_units() == 21);
}

TEST_CASE("file ordering is lexicographic and loading is idempotent") {
    TempTree tree("order");
    tree.add("z.src", "z = 1;\n");
    tree.add("a/inner.src", "i = 2;\n");
    tree.add("m.src", "m = 3;\n");
    Corpus first = load_corpus(tree.root.string(), cstyle_profile(), {});
    REQUIRE(first.files.size() == 3);
    CHECK(first.files[0].path == "a/inner.src");
    CHECK(first.files[1].path == "m.src");
    CHECK(first.files[2].path == "z.src");

    Corpus second = load_corpus(tree.root.string(), cstyle_profile(), {});
    CHECK(corpus_to_json_text(first) == corpus_to_json_text(second));
}

TEST_CASE("a file that fails tokenization is skipped with a warning") {
    TempTree tree("broken");
    tree.add("good.src", "g = 1;\n");
    tree.add("bad.src", "/* unterminated\n");
    Corpus corpus = load_corpus(tree.root.string(), cstyle_profile(), {});
    REQUIRE(corpus.files.size() == 1);
    CHECK(corpus.files[0].path == "good.src");
    REQUIRE(corpus.warnings.size() == 1);
    CHECK(corpus.warnings[0].find("bad.src") != std::string::npos);
}

TEST_CASE("unreadable root is fatal") {
    CHECK_THROWS_AS(load_corpus("/no/such/dir/anywhere", cstyle_profile(), {}), FatalError);
}

TEST_CASE("bad exclusion pattern is fatal") {
    TempTree tree("badpattern");
    tree.add("a.src", "a = 1;\n");
    CHECK_THROWS_AS(load_corpus(tree.root.string(), cstyle_profile(), {"("}), FatalError);
}

TEST_CASE("identifier normalization unifies renamed statements") {
    TempTree tree("norm");
    tree.add("a.src", "int a = b; int x = y; return 1; return 2;\n");
    Corpus corpus = load_corpus(tree.root.string(), cstyle_profile(), {});
    REQUIRE(corpus.files.size() == 1);
    const auto& units = corpus.files[0].units;
    REQUIRE(units.size() == 4);

    Corpus ident = normalize(corpus, Normalization::Identifiers);
    CHECK(ident.files[0].units[0].token_ids == ident.files[0].units[1].token_ids);
    CHECK(ident.files[0].units[2].token_ids != ident.files[0].units[3].token_ids);

    Corpus literals = normalize(corpus, Normalization::IdentifiersLiterals);
    CHECK(literals.files[0].units[2].token_ids == literals.files[0].units[3].token_ids);

    Corpus none = normalize(corpus, Normalization::None);
    for (size_t u = 0; u < units.size(); ++u)
        CHECK(none.files[0].units[u].token_ids == units[u].token_ids);
}

TEST_CASE("normalization is pure: equal raw sequences stay equal") {
    TempTree tree("pure");
    tree.add("a.src", "p = q + r;\n");
    tree.add("b.src", "p = q + r;\n");
    Corpus corpus = load_corpus(tree.root.string(), cstyle_profile(), {});
    Corpus norm = normalize(corpus, Normalization::Identifiers);
    CHECK(norm.files[0].units[0].token_ids == norm.files[1].units[0].token_ids);
}

TEST_CASE("corpus snapshot round trips") {
    TempTree tree("roundtrip");
    tree.add("a.src", "import util.log;\nf() { a = 1; }\n");
    Corpus corpus = load_corpus(tree.root.string(), cstyle_profile(), {}, "v1");
    std::string snapshot = corpus_to_json_text(corpus);
    Corpus loaded = corpus_from_json_text(snapshot);
    CHECK(corpus_to_json_text(loaded) == snapshot);
    REQUIRE(loaded.files.size() == 1);
    REQUIRE(loaded.files[0].imports.size() == 1);
    CHECK(loaded.files[0].imports[0].target == "util.log");
    CHECK(loaded.version_label == "v1");
}

TEST_CASE("profiles resolve through QAFORGE_PROFILE_DIR") {
    TempTree tree("profiledir");
    LanguageProfile custom = cstyle_profile();
    custom.name = "customlang";
    tree.add("customlang.json", profile_to_json_text(custom));
    setenv("QAFORGE_PROFILE_DIR", tree.root.c_str(), 1);
    LanguageProfile loaded = load_profile("customlang");
    unsetenv("QAFORGE_PROFILE_DIR");
    CHECK(loaded.name == "customlang");
    CHECK_THROWS_AS(load_profile("missinglang"), FatalError);
}
