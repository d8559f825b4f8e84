#include <doctest.h>

#include "qaforge/source_model.h"
#include "qaforge/tokenizer.h"

using namespace qaforge;

namespace {

std::vector<Unit> segment(const std::string& text, std::vector<std::string>* warnings_out = nullptr) {
    LanguageProfile profile = cstyle_profile();
    TokenizedFile tf = tokenize(text, profile);
    TokenTable table;
    std::vector<std::string> warnings;
    auto units = segment_units(tf.tokens, profile, 0, table, warnings);
    if (warnings_out) *warnings_out = warnings;
    return units;
}

}  // namespace

TEST_CASE("tokenizer drops comments and whitespace") {
    LanguageProfile profile = cstyle_profile();
    TokenizedFile tf = tokenize("a = 1; // trailing\n/* block\n comment */ b = 2;\n", profile);
    for (const auto& t : tf.tokens) CHECK(t.text.find("comment") == std::string::npos);
    CHECK(tf.line_count == 3);
    CHECK(tf.comment_line_count == 3);
    CHECK(tf.code_line_count == 2);
}

TEST_CASE("tokenizer classifies kinds and tracks lines") {
    LanguageProfile profile = cstyle_profile();
    TokenizedFile tf = tokenize("if (x >= 10) {\n  s = \"a;b\";\n}\n", profile);
    REQUIRE(tf.tokens.size() == 12);
    CHECK(tf.tokens[0].kind == TokenKind::Keyword);
    CHECK(tf.tokens[3].kind == TokenKind::Punct);
    CHECK(tf.tokens[3].text == ">=");
    CHECK(tf.tokens[4].kind == TokenKind::Number);
    CHECK(tf.tokens[6].kind == TokenKind::BlockOpen);
    CHECK(tf.tokens[6].line == 1);
    CHECK(tf.tokens[9].kind == TokenKind::String);
    CHECK(tf.tokens[9].text == "\"a;b\"");  // terminator inside string stays put
    CHECK(tf.tokens.back().kind == TokenKind::BlockClose);
    CHECK(tf.tokens.back().line == 3);
}

TEST_CASE("tokenizer rejects unterminated constructs") {
    LanguageProfile profile = cstyle_profile();
    CHECK_THROWS_AS(tokenize("/* never closed", profile), TokenizeError);
    CHECK_THROWS_AS(tokenize("s = \"open;\n", profile), TokenizeError);
}

TEST_CASE("two statements make two units") {
    auto units = segment("a = 1; b = 2;");
    REQUIRE(units.size() == 2);
    CHECK(units[0].index == 0);
    CHECK(units[1].index == 1);
}

TEST_CASE("block header, body and close are separate units") {
    auto units = segment("if (x) { y(); }");
    REQUIRE(units.size() == 3);
    CHECK(units[0].token_ids.size() == 5);  // if ( x ) {
    CHECK(units[2].token_ids.size() == 1);  // }
}

TEST_CASE("comment-only input yields no units") {
    CHECK(segment("// nothing\n/* here */\n").empty());
}

TEST_CASE("unbalanced close degrades to line-wise units") {
    std::vector<std::string> warnings;
    auto units = segment("a = 1;\n}\nb = 2; c = 3;\nd = 4;\n", &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("line-wise") != std::string::npos);
    // a=1; then line-wise: "}", "b = 2; c = 3;", "d = 4;"
    REQUIRE(units.size() == 4);
    CHECK(units[2].token_ids.size() == 8);
}

TEST_CASE("unit spans are ordered and non-overlapping") {
    auto units = segment("a = 1;\nif (x) {\n  b = 2;\n}\nc = 3;\n");
    for (size_t i = 1; i < units.size(); ++i) {
        CHECK(units[i].start_line >= units[i - 1].start_line);
        CHECK(units[i].index == units[i - 1].index + 1);
        CHECK(!units[i].token_ids.empty());
    }
}

TEST_CASE("method scopes follow the boundary depth") {
    LanguageProfile profile = cstyle_profile();  // methods open at depth 1
    auto units = segment("int f() {\n a = 1;\n if (x) { b = 2; }\n}\nint s;\nint g() { c = 3; }\n");
    // f: header, a, if-header, b, close, close / file: int s; / g: header, c, close
    REQUIRE(units.size() == 10);
    CHECK(units[0].method_scope == 0);   // f header
    CHECK(units[3].method_scope == 0);   // nested body stays in f
    CHECK(units[5].method_scope == 0);   // closing brace of f
    CHECK(units[6].method_scope == -1);  // file-level statement
    CHECK(units[7].method_scope == 1);   // g header
    CHECK(units[0].in_method_scope());
    CHECK(!units[6].in_method_scope());
}

TEST_CASE("profile validation catches broken delimiters and patterns") {
    LanguageProfile p = cstyle_profile();
    p.import_pattern = "(unclosed";
    CHECK_THROWS_AS(p.validate(), FatalError);

    LanguageProfile q = cstyle_profile();
    q.block_open = {";"};  // collides with the statement terminator
    CHECK_THROWS_AS(q.validate(), FatalError);

    LanguageProfile r = cstyle_profile();
    r.statement_terminators = {};
    CHECK_THROWS_AS(r.validate(), FatalError);
}

TEST_CASE("profile json round trip") {
    LanguageProfile p = cstyle_profile();
    LanguageProfile q = profile_from_json_text(profile_to_json_text(p));
    CHECK(q.name == p.name);
    CHECK(q.keywords == p.keywords);
    CHECK(q.import_pattern == p.import_pattern);
    CHECK(q.method_boundary_depth == p.method_boundary_depth);
}
