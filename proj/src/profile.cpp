#include "qaforge/profile.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace qaforge {

void LanguageProfile::validate() const {
    std::vector<std::string> errors;
    if (name.empty()) errors.push_back("profile name empty");

    std::set<std::string> seen;
    auto check = [&](const std::string& delim, const char* what) {
        if (delim.empty()) {
            errors.push_back(std::string(what) + " delimiter empty");
            return;
        }
        if (!seen.insert(delim).second)
            errors.push_back(std::string(what) + " delimiter '" + delim + "' duplicates another delimiter");
    };
    for (const auto& d : line_comments) check(d, "line comment");
    for (const auto& [open, close] : block_comments) {
        check(open, "block comment open");
        check(close, "block comment close");
    }
    for (const auto& d : string_delimiters) check(d, "string");
    for (const auto& d : statement_terminators) check(d, "statement terminator");
    for (const auto& d : block_open) check(d, "block open");
    for (const auto& d : block_close) check(d, "block close");

    if (statement_terminators.empty()) errors.push_back("no statement terminators declared");
    if (method_boundary_depth < 0) errors.push_back("method_boundary_depth negative");

    if (!import_pattern.empty()) {
        try {
            std::regex re(import_pattern);
        } catch (const std::regex_error& e) {
            errors.push_back("import_pattern does not compile: " + std::string(e.what()));
        }
    }

    if (!errors.empty()) {
        std::string msg = "invalid language profile '" + name + "':";
        for (const auto& e : errors) msg += "\n  - " + e;
        throw FatalError(msg);
    }
}

namespace {

std::vector<std::string> string_list(const json& j, const char* key) {
    std::vector<std::string> out;
    if (j.contains(key))
        for (const auto& v : j.at(key)) out.push_back(v.get<std::string>());
    return out;
}

}  // namespace

LanguageProfile profile_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FatalError(std::string("profile is not valid JSON: ") + e.what());
    }
    LanguageProfile p;
    p.name = j.value("name", "");
    p.line_comments = string_list(j, "line_comments");
    if (j.contains("block_comments"))
        for (const auto& pair : j.at("block_comments"))
            p.block_comments.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    p.string_delimiters = string_list(j, "string_delimiters");
    p.statement_terminators = string_list(j, "statement_terminators");
    p.block_open = string_list(j, "block_open");
    p.block_close = string_list(j, "block_close");
    for (const auto& k : string_list(j, "keywords")) p.keywords.insert(k);
    for (const auto& k : string_list(j, "complexity_keywords")) p.complexity_keywords.insert(k);
    p.import_pattern = j.value("import_pattern", "");
    p.method_boundary_depth = j.value("method_boundary_depth", 1);
    p.file_extensions = string_list(j, "file_extensions");
    p.validate();
    return p;
}

std::string profile_to_json_text(const LanguageProfile& p) {
    json j;
    j["schema"] = "profile.v1";
    j["name"] = p.name;
    j["line_comments"] = p.line_comments;
    json bc = json::array();
    for (const auto& [open, close] : p.block_comments) bc.push_back({open, close});
    j["block_comments"] = bc;
    j["string_delimiters"] = p.string_delimiters;
    j["statement_terminators"] = p.statement_terminators;
    j["block_open"] = p.block_open;
    j["block_close"] = p.block_close;
    j["keywords"] = p.keywords;
    j["complexity_keywords"] = p.complexity_keywords;
    j["import_pattern"] = p.import_pattern;
    j["method_boundary_depth"] = p.method_boundary_depth;
    j["file_extensions"] = p.file_extensions;
    return j.dump(2) + "\n";
}

LanguageProfile load_profile(const std::string& name_or_path) {
    std::vector<fs::path> candidates;
    fs::path direct(name_or_path);
    bool is_path = direct.has_extension() || name_or_path.find('/') != std::string::npos;
    if (is_path) {
        candidates.push_back(direct);
    } else {
        if (const char* dir = std::getenv("QAFORGE_PROFILE_DIR"))
            candidates.push_back(fs::path(dir) / (name_or_path + ".json"));
        candidates.push_back(fs::path("profiles") / (name_or_path + ".json"));
    }
    for (const auto& c : candidates) {
        std::ifstream in(c);
        if (!in) continue;
        std::stringstream ss;
        ss << in.rdbuf();
        return profile_from_json_text(ss.str());
    }
    if (!is_path && name_or_path == "cstyle") return cstyle_profile();
    throw FatalError("language profile not found: " + name_or_path);
}

LanguageProfile cstyle_profile() {
    LanguageProfile p;
    p.name = "cstyle";
    p.line_comments = {"//"};
    p.block_comments = {{"/*", "*/"}};
    p.string_delimiters = {"\"", "'"};
    p.statement_terminators = {";"};
    p.block_open = {"{"};
    p.block_close = {"}"};
    p.keywords = {"if",    "else",  "for",    "while",  "do",     "switch", "case",
                  "break", "return", "continue", "default", "struct", "class",  "void",
                  "int",   "float", "double", "char",   "bool",   "true",   "false",
                  "new",   "try",   "catch",  "throw",  "import", "static", "const"};
    p.complexity_keywords = {"if", "for", "while", "case", "catch", "do"};
    p.import_pattern = R"(^\s*import\s+([A-Za-z0-9_./]+)\s*;)";
    p.method_boundary_depth = 1;
    p.validate();
    return p;
}

}  // namespace qaforge
