#include "qaforge/source_model.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace qaforge {

Normalization normalization_from_name(const std::string& name) {
    if (name == "none") return Normalization::None;
    if (name == "identifiers") return Normalization::Identifiers;
    if (name == "identifiers+literals") return Normalization::IdentifiersLiterals;
    throw FatalError("unknown normalization scheme: " + name);
}

std::string normalization_name(Normalization scheme) {
    switch (scheme) {
        case Normalization::None: return "none";
        case Normalization::Identifiers: return "identifiers";
        case Normalization::IdentifiersLiterals: return "identifiers+literals";
    }
    return "none";
}

TokenTable::TokenTable() {
    intern(TokenKind::Identifier, "<id>");
    intern(TokenKind::Number, "<lit>");
}

int TokenTable::intern(TokenKind kind, const std::string& text) {
    auto key = std::make_pair(kind, text);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    int code = static_cast<int>(entries_.size());
    entries_.emplace_back(kind, text);
    index_.emplace(std::move(key), code);
    return code;
}

size_t Corpus::total_units() const {
    size_t n = 0;
    for (const auto& f : files) n += f.units.size();
    return n;
}

std::vector<Unit> segment_units(const std::vector<Token>& tokens, const LanguageProfile& profile,
                                int file_id, TokenTable& table, std::vector<std::string>& warnings) {
    std::vector<Unit> units;
    std::vector<int> pending;
    int pending_start_line = 0;
    int pending_end_line = 0;
    int pending_depth = 0;
    int pending_scope = -1;

    int depth = 0;
    int method_scope = -1;   // current method id, -1 outside
    int next_scope_id = 0;
    int method_top_depth = -1;  // depth of the innermost method block

    auto flush = [&]() {
        if (pending.empty()) return;
        Unit u;
        u.file_id = file_id;
        u.index = static_cast<int>(units.size());
        u.token_ids = std::move(pending);
        u.start_line = pending_start_line;
        u.end_line = pending_end_line;
        u.block_depth = pending_depth;
        u.method_scope = pending_scope;
        units.push_back(std::move(u));
        pending.clear();
    };

    auto append = [&](const Token& t) {
        if (pending.empty()) {
            pending_start_line = t.line;
            pending_depth = depth;
            pending_scope = method_scope;
        }
        pending_end_line = t.line;
        pending.push_back(table.intern(t.kind, t.text));
    };

    bool line_wise = false;
    size_t i = 0;
    for (; i < tokens.size() && !line_wise; ++i) {
        const Token& t = tokens[i];
        switch (t.kind) {
            case TokenKind::Terminator:
                append(t);
                flush();
                break;
            case TokenKind::BlockOpen:
                append(t);
                ++depth;
                if (depth == profile.method_boundary_depth && method_scope < 0) {
                    method_scope = next_scope_id++;
                    method_top_depth = depth;
                    // The header unit (signature + open delimiter) belongs to
                    // the method it opens.
                    pending_scope = method_scope;
                }
                flush();
                break;
            case TokenKind::BlockClose: {
                flush();
                if (depth == 0) {
                    warnings.push_back("file " + std::to_string(file_id) + ": unbalanced block delimiter at line " +
                                       std::to_string(t.line) + ", remainder segmented line-wise");
                    line_wise = true;
                    --i;  // reprocess this token line-wise
                    break;
                }
                append(t);
                flush();
                --depth;
                if (method_scope >= 0 && depth < method_top_depth) {
                    method_scope = -1;
                    method_top_depth = -1;
                }
                break;
            }
            default:
                append(t);
                break;
        }
    }
    if (line_wise) {
        flush();
        int current_line = -1;
        for (; i < tokens.size(); ++i) {
            if (tokens[i].line != current_line) {
                flush();
                current_line = tokens[i].line;
            }
            append(tokens[i]);
        }
    }
    flush();
    if (depth > 0 && !line_wise)
        warnings.push_back("file " + std::to_string(file_id) + ": " + std::to_string(depth) +
                           " unclosed block delimiter(s) at end of file");
    return units;
}

Corpus load_corpus(const std::string& root_path, const LanguageProfile& profile,
                   const std::vector<std::string>& exclusions, const std::string& version_label) {
    profile.validate();
    fs::path root(root_path);
    std::error_code ec;
    if (!fs::is_directory(root, ec))
        throw FatalError("corpus root is not a readable directory: " + root_path);

    std::vector<std::regex> exclude_res;
    for (const auto& pattern : exclusions) {
        try {
            exclude_res.emplace_back(pattern);
        } catch (const std::regex_error& e) {
            throw FatalError("exclusion pattern '" + pattern + "' does not compile: " + e.what());
        }
    }

    std::vector<std::string> paths;
    for (auto it = fs::recursive_directory_iterator(root, fs::directory_options::skip_permission_denied);
         it != fs::recursive_directory_iterator(); ++it) {
        if (!it->is_regular_file()) continue;
        std::string rel = fs::relative(it->path(), root).generic_string();
        if (!profile.file_extensions.empty()) {
            std::string ext = it->path().extension().string();
            if (!ext.empty() && ext.front() == '.') ext.erase(0, 1);
            if (std::find(profile.file_extensions.begin(), profile.file_extensions.end(), ext) ==
                profile.file_extensions.end())
                continue;
        }
        bool excluded = false;
        for (const auto& re : exclude_res)
            if (std::regex_match(rel, re)) {
                excluded = true;
                break;
            }
        if (!excluded) paths.push_back(std::move(rel));
    }
    std::sort(paths.begin(), paths.end());

    std::optional<std::regex> import_re;
    if (!profile.import_pattern.empty()) import_re.emplace(profile.import_pattern);

    Corpus corpus;
    corpus.profile = profile;
    corpus.version_label = version_label;
    for (const auto& rel : paths) {
        std::ifstream in(root / rel, std::ios::binary);
        if (!in) {
            corpus.warnings.push_back(rel + ": unreadable, skipped");
            continue;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        TokenizedFile tf;
        try {
            tf = tokenize(text, profile);
        } catch (const TokenizeError& e) {
            corpus.warnings.push_back(rel + ": tokenization failed (" + e.message + "), skipped");
            continue;
        }
        SourceFile file;
        file.path = rel;
        file.line_count = tf.line_count;
        file.comment_line_count = tf.comment_line_count;
        file.code_line_count = tf.code_line_count;
        if (import_re) {
            std::istringstream lines(text);
            std::string line;
            int lineno = 0;
            while (std::getline(lines, line)) {
                ++lineno;
                std::smatch m;
                if (std::regex_search(line, m, *import_re) && m.size() > 1)
                    file.imports.push_back({m[1].str(), lineno});
            }
        }
        int file_id = static_cast<int>(corpus.files.size());
        file.units = segment_units(tf.tokens, profile, file_id, corpus.tokens, corpus.warnings);
        corpus.files.push_back(std::move(file));
    }
    return corpus;
}

Corpus normalize(const Corpus& corpus, Normalization scheme) {
    Corpus out = corpus;
    out.scheme = scheme;
    if (scheme == Normalization::None) return out;
    for (auto& file : out.files) {
        for (auto& unit : file.units) {
            for (int& code : unit.token_ids) {
                TokenKind kind = corpus.tokens.kind_of(code);
                if (kind == TokenKind::Identifier) {
                    code = TokenTable::kIdentifierPlaceholder;
                } else if (scheme == Normalization::IdentifiersLiterals &&
                           (kind == TokenKind::Number || kind == TokenKind::String)) {
                    code = TokenTable::kLiteralPlaceholder;
                }
            }
        }
    }
    return out;
}

std::string corpus_to_json_text(const Corpus& corpus) {
    json j;
    j["schema"] = "corpus.v1";
    j["profile"] = corpus.profile.name;
    j["normalization"] = normalization_name(corpus.scheme);
    j["version_label"] = corpus.version_label;
    json tokens = json::array();
    for (size_t code = 0; code < corpus.tokens.size(); ++code)
        tokens.push_back({{"kind", static_cast<int>(corpus.tokens.kind_of(static_cast<int>(code)))},
                          {"text", corpus.tokens.text_of(static_cast<int>(code))}});
    j["tokens"] = tokens;
    json files = json::array();
    for (const auto& f : corpus.files) {
        json units = json::array();
        for (const auto& u : f.units)
            units.push_back({{"tokens", u.token_ids},
                             {"start_line", u.start_line},
                             {"end_line", u.end_line},
                             {"depth", u.block_depth},
                             {"method_scope", u.method_scope}});
        json imports = json::array();
        for (const auto& imp : f.imports) imports.push_back({{"target", imp.target}, {"line", imp.line}});
        files.push_back({{"path", f.path},
                         {"line_count", f.line_count},
                         {"comment_line_count", f.comment_line_count},
                         {"code_line_count", f.code_line_count},
                         {"imports", imports},
                         {"units", units}});
    }
    j["files"] = files;
    j["warnings"] = corpus.warnings;
    return j.dump(2) + "\n";
}

Corpus corpus_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FatalError(std::string("corpus snapshot is not valid JSON: ") + e.what());
    }
    if (j.value("schema", "") != "corpus.v1") throw FatalError("corpus snapshot has unknown schema");
    Corpus corpus;
    corpus.profile.name = j.value("profile", "");
    corpus.scheme = normalization_from_name(j.value("normalization", "none"));
    corpus.version_label = j.value("version_label", "");
    for (const auto& t : j.at("tokens"))
        corpus.tokens.intern(static_cast<TokenKind>(t.at("kind").get<int>()), t.at("text").get<std::string>());
    int file_id = 0;
    for (const auto& fj : j.at("files")) {
        SourceFile f;
        f.path = fj.at("path").get<std::string>();
        f.line_count = fj.value("line_count", 0);
        f.comment_line_count = fj.value("comment_line_count", 0);
        f.code_line_count = fj.value("code_line_count", 0);
        if (fj.contains("imports"))
            for (const auto& ij : fj.at("imports"))
                f.imports.push_back({ij.at("target").get<std::string>(), ij.value("line", 0)});
        int index = 0;
        for (const auto& uj : fj.at("units")) {
            Unit u;
            u.file_id = file_id;
            u.index = index++;
            u.token_ids = uj.at("tokens").get<std::vector<int>>();
            u.start_line = uj.value("start_line", 1);
            u.end_line = uj.value("end_line", 1);
            u.block_depth = uj.value("depth", 0);
            u.method_scope = uj.value("method_scope", -1);
            f.units.push_back(std::move(u));
        }
        corpus.files.push_back(std::move(f));
        ++file_id;
    }
    for (const auto& w : j.value("warnings", std::vector<std::string>{})) corpus.warnings.push_back(w);
    return corpus;
}

}  // namespace qaforge
