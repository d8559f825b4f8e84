#pragma once

#include <string>
#include <vector>

#include "qaforge/profile.h"

namespace qaforge {

enum class TokenKind {
    Identifier,
    Keyword,
    Number,
    String,
    Punct,
    Terminator,
    BlockOpen,
    BlockClose,
};

struct Token {
    TokenKind kind;
    std::string text;
    int line = 1;  // 1-based
};

// Raised when a file cannot be tokenized (unterminated string or block
// comment). Callers skip the file with a warning.
struct TokenizeError : std::exception {
    explicit TokenizeError(std::string msg) : message(std::move(msg)) {}
    const char* what() const noexcept override { return message.c_str(); }
    std::string message;
};

struct TokenizedFile {
    std::vector<Token> tokens;  // comments and whitespace already dropped
    int line_count = 0;
    int comment_line_count = 0;  // lines carrying any comment content
    int code_line_count = 0;     // lines carrying at least one token
};

TokenizedFile tokenize(const std::string& text, const LanguageProfile& profile);

}  // namespace qaforge
