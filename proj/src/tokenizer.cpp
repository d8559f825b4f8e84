#include "qaforge/tokenizer.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

namespace qaforge {

namespace {

bool starts_with(const std::string& text, size_t pos, const std::string& prefix) {
    return text.compare(pos, prefix.size(), prefix) == 0;
}

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Multi-character operators lexed as one token; anything else punctuation
// is a single character.
const std::array<const char*, 20> kOperators = {
    "<<=", ">>=", "->", "::", "==", "!=", "<=", ">=", "&&", "||",
    "++",  "--",  "+=", "-=", "*=", "/=", "<<", ">>", "=>", "..",
};

}  // namespace

TokenizedFile tokenize(const std::string& text, const LanguageProfile& profile) {
    TokenizedFile out;
    std::set<int> comment_lines;
    std::set<int> code_lines;

    size_t pos = 0;
    int line = 1;
    const size_t n = text.size();

    auto advance = [&](size_t count) {
        for (size_t i = 0; i < count && pos < n; ++i) {
            if (text[pos] == '\n') ++line;
            ++pos;
        }
    };

    auto match_any = [&](const std::vector<std::string>& delims) -> const std::string* {
        for (const auto& d : delims)
            if (starts_with(text, pos, d)) return &d;
        return nullptr;
    };

    while (pos < n) {
        char c = text[pos];
        if (c == '\n' || c == '\r' || c == ' ' || c == '\t' || c == '\f' || c == '\v') {
            advance(1);
            continue;
        }

        if (const std::string* lc = match_any(profile.line_comments)) {
            comment_lines.insert(line);
            while (pos < n && text[pos] != '\n') advance(1);
            (void)lc;
            continue;
        }

        bool block_comment = false;
        for (const auto& [open, close] : profile.block_comments) {
            if (!starts_with(text, pos, open)) continue;
            block_comment = true;
            comment_lines.insert(line);
            advance(open.size());
            size_t close_at = text.find(close, pos);
            if (close_at == std::string::npos)
                throw TokenizeError("unterminated block comment starting at line " + std::to_string(line));
            while (pos < close_at) {
                comment_lines.insert(line);
                advance(1);
            }
            comment_lines.insert(line);
            advance(close.size());
            break;
        }
        if (block_comment) continue;

        if (const std::string* sd = match_any(profile.string_delimiters)) {
            int start_line = line;
            advance(sd->size());
            std::string value;
            bool closed = false;
            while (pos < n) {
                if (text[pos] == '\\' && pos + 1 < n) {
                    value += text[pos];
                    value += text[pos + 1];
                    advance(2);
                    continue;
                }
                if (starts_with(text, pos, *sd)) {
                    advance(sd->size());
                    closed = true;
                    break;
                }
                if (text[pos] == '\n')
                    throw TokenizeError("unterminated string literal at line " + std::to_string(start_line));
                value += text[pos];
                advance(1);
            }
            if (!closed)
                throw TokenizeError("unterminated string literal at line " + std::to_string(start_line));
            out.tokens.push_back({TokenKind::String, *sd + value + *sd, start_line});
            code_lines.insert(start_line);
            continue;
        }

        // Terminators and block delimiters win over generic lexing so that
        // profiles may use punctuation or words for them. A word delimiter
        // must not swallow an identifier prefix ("end" inside "endgame").
        auto delim_boundary_ok = [&](const std::string& d) {
            return !is_ident_start(d[0]) || pos + d.size() >= n || !is_ident_char(text[pos + d.size()]);
        };
        if (const std::string* t = match_any(profile.statement_terminators); t && delim_boundary_ok(*t)) {
            out.tokens.push_back({TokenKind::Terminator, *t, line});
            code_lines.insert(line);
            advance(t->size());
            continue;
        }
        if (const std::string* t = match_any(profile.block_open); t && delim_boundary_ok(*t)) {
            out.tokens.push_back({TokenKind::BlockOpen, *t, line});
            code_lines.insert(line);
            advance(t->size());
            continue;
        }
        if (const std::string* t = match_any(profile.block_close); t && delim_boundary_ok(*t)) {
            out.tokens.push_back({TokenKind::BlockClose, *t, line});
            code_lines.insert(line);
            advance(t->size());
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(c))) {
            int start_line = line;
            std::string num;
            while (pos < n && (is_ident_char(text[pos]) || text[pos] == '.')) {
                num += text[pos];
                advance(1);
            }
            out.tokens.push_back({TokenKind::Number, num, start_line});
            code_lines.insert(start_line);
            continue;
        }

        if (is_ident_start(c)) {
            int start_line = line;
            std::string word;
            while (pos < n && is_ident_char(text[pos])) {
                word += text[pos];
                advance(1);
            }
            TokenKind kind = profile.keywords.count(word) ? TokenKind::Keyword : TokenKind::Identifier;
            out.tokens.push_back({kind, word, start_line});
            code_lines.insert(start_line);
            continue;
        }

        // Punctuation: multi-char operator or single char.
        std::string op(1, c);
        for (const char* candidate : kOperators) {
            if (starts_with(text, pos, candidate)) {
                op = candidate;
                break;
            }
        }
        out.tokens.push_back({TokenKind::Punct, op, line});
        code_lines.insert(line);
        advance(op.size());
    }

    out.line_count = line - (n > 0 && text.back() == '\n' ? 1 : 0);
    if (n == 0) out.line_count = 0;
    out.comment_line_count = static_cast<int>(comment_lines.size());
    out.code_line_count = static_cast<int>(code_lines.size());
    return out;
}

}  // namespace qaforge
