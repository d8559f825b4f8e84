#pragma once

#include <map>
#include <string>
#include <vector>

#include "qaforge/profile.h"
#include "qaforge/tokenizer.h"

namespace qaforge {

enum class Normalization {
    None,
    Identifiers,
    IdentifiersLiterals,
};

Normalization normalization_from_name(const std::string& name);
std::string normalization_name(Normalization scheme);

// Interned token codes shared by all files of a corpus. Codes 0 and 1 are
// reserved for the identifier and literal placeholders that normalization
// substitutes.
class TokenTable {
public:
    static constexpr int kIdentifierPlaceholder = 0;
    static constexpr int kLiteralPlaceholder = 1;

    TokenTable();
    int intern(TokenKind kind, const std::string& text);
    TokenKind kind_of(int code) const { return entries_[code].first; }
    const std::string& text_of(int code) const { return entries_[code].second; }
    size_t size() const { return entries_.size(); }

private:
    std::vector<std::pair<TokenKind, std::string>> entries_;
    std::map<std::pair<TokenKind, std::string>, int> index_;
};

// One source statement. The atom of clone measurement.
struct Unit {
    int file_id = 0;
    int index = 0;                // ordinal within file
    std::vector<int> token_ids;   // never empty
    int start_line = 1;
    int end_line = 1;
    int block_depth = 0;          // nesting depth at the unit's first token
    int method_scope = -1;        // distinct id per method body, -1 = file level
    bool in_method_scope() const { return method_scope >= 0; }
};

struct ImportRef {
    std::string target;  // entity named by the import statement
    int line = 0;
};

struct SourceFile {
    std::string path;  // relative to the corpus root, '/' separators
    std::vector<Unit> units;
    std::vector<ImportRef> imports;  // matches of the profile's import pattern
    int line_count = 0;
    int comment_line_count = 0;
    int code_line_count = 0;
};

struct Corpus {
    LanguageProfile profile;
    Normalization scheme = Normalization::None;
    std::string version_label;
    std::vector<SourceFile> files;
    TokenTable tokens;
    std::vector<std::string> warnings;

    size_t total_units() const;
    const Unit& unit(int file_id, int index) const { return files[file_id].units[index]; }
};

// Segments a token stream into units: a unit ends at each statement
// terminator or block delimiter; a close delimiter forms a unit of its own.
// Unbalanced delimiters degrade the remainder to line-wise units and append
// a warning.
std::vector<Unit> segment_units(const std::vector<Token>& tokens, const LanguageProfile& profile,
                                int file_id, TokenTable& table, std::vector<std::string>& warnings);

// Recursively loads root_path, skipping files whose corpus-relative path
// fully matches any exclusion regex. Files are ordered lexicographically by
// path; a file that fails tokenization is skipped with a per-file warning.
Corpus load_corpus(const std::string& root_path, const LanguageProfile& profile,
                   const std::vector<std::string>& exclusions, const std::string& version_label = "");

// Pure: maps identifier (and under IdentifiersLiterals also literal) token
// codes to the reserved placeholders. None is the identity.
Corpus normalize(const Corpus& corpus, Normalization scheme);

// corpus.v1 snapshot, byte-stable for identical inputs.
std::string corpus_to_json_text(const Corpus& corpus);
Corpus corpus_from_json_text(const std::string& text);

}  // namespace qaforge
