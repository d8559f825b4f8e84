#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qaforge {

// Thrown for unrecoverable input problems (bad config, unreadable root, ...).
// The CLI maps it to exit code 2.
struct FatalError : std::exception {
    explicit FatalError(std::string msg) : message(std::move(msg)) {}
    const char* what() const noexcept override { return message.c_str(); }
    std::string message;
};

// Lexical description of a language: enough to tokenize, segment statements
// and pull import edges, without building an AST.
struct LanguageProfile {
    std::string name;
    std::vector<std::string> line_comments;
    std::vector<std::pair<std::string, std::string>> block_comments;
    std::vector<std::string> string_delimiters;
    std::vector<std::string> statement_terminators;
    std::vector<std::string> block_open;
    std::vector<std::string> block_close;
    std::set<std::string> keywords;
    // Branch/loop/case keywords counted for cyclomatic complexity.
    std::set<std::string> complexity_keywords;
    // Regex with one capture group: the imported entity name.
    std::string import_pattern;
    // Block nesting depth at which an opened scope counts as a method body.
    int method_boundary_depth = 1;
    // Optional extension filter for corpus loading ("src" matches *.src).
    // Empty means every regular file is loaded.
    std::vector<std::string> file_extensions;

    // Validates the invariants: delimiters non-empty and mutually distinct
    // across categories, import_pattern compiles. Throws FatalError with all
    // problems listed.
    void validate() const;
};

LanguageProfile profile_from_json_text(const std::string& text);
std::string profile_to_json_text(const LanguageProfile& profile);

// Loads <path> directly when it names a file; otherwise resolves
// "<name>.json" against QAFORGE_PROFILE_DIR and ./profiles.
LanguageProfile load_profile(const std::string& name_or_path);

// Built-in profile for brace/semicolon languages; used by tests and as a
// template for user profiles.
LanguageProfile cstyle_profile();

}  // namespace qaforge
