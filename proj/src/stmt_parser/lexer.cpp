#include "stmtsim/lexer.hpp"

#include <algorithm>
#include <array>
#include <optional>

namespace stmtsim {

std::string_view to_string(TokenKind kind)
{
    switch (kind) {
    case TokenKind::Identifier: return "ident";
    case TokenKind::Numeral: return "numeral";
    case TokenKind::Operator: return "op";
    case TokenKind::BinderKeyword: return "binder";
    case TokenKind::Bracket: return "bracket";
    case TokenKind::Punctuation: return "punct";
    case TokenKind::Keyword: return "keyword";
    }
    return "?";
}

namespace {

struct Decoded
{
    char32_t cp;
    std::size_t length;
};

std::optional<Decoded> decode_utf8(std::string_view s, std::size_t pos)
{
    auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    unsigned char b0 = byte(pos);
    if (b0 < 0x80)
        return Decoded{b0, 1};
    std::size_t len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return std::nullopt;
    }
    if (pos + len > s.size())
        return std::nullopt;
    for (std::size_t i = 1; i < len; ++i) {
        unsigned char b = byte(pos + i);
        if ((b & 0xC0) != 0x80)
            return std::nullopt;
        cp = (cp << 6) | (b & 0x3F);
    }
    return Decoded{cp, len};
}

bool is_space(char32_t cp)
{
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v' || cp == 0xA0;
}

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_ident_start(char32_t cp)
{
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || cp == '_')
        return true;
    if (cp >= 0xC0 && cp <= 0x24F)
        return cp != 0xD7 && cp != 0xF7;
    if (cp >= 0x370 && cp <= 0x3FF)
        return cp != 0x3BB; // λ is the lambda binder
    if (cp >= 0x1F00 && cp <= 0x1FFF) // Greek extended
        return true;
    if (cp >= 0x2100 && cp <= 0x214F) // letterlike: ℝ ℚ ℕ ℤ ℂ
        return true;
    if (cp >= 0x1D400 && cp <= 0x1D7FF) // mathematical alphanumerics
        return true;
    return false;
}

bool is_ident_continue(char32_t cp)
{
    if (is_ident_start(cp) || is_digit(cp) || cp == '\'')
        return true;
    if (cp >= 0x2080 && cp <= 0x209C) // subscripts ₀..₉, ₐ..
        return true;
    return cp == 0x1D62 || cp == 0x2C7C; // ᵢ ⱼ
}

// Longest match first within each leading byte; scanned in order.
constexpr std::array<std::string_view, 40> kOperators = {
    "<->", "->", "<=", ">=", "!=",
    "∃!", "∀", "∃", "λ", "→", "↔", "∧", "∨", "¬", "≠", "≤", "≥", "∈", "∉", "∑", "∏",
    "×", "↑", "∣", "∘", "⁻¹", "⊆", "⊂", "∩", "∪", "•",
    "+", "-", "*", "/", "^", "%", "=", "<", ">",
};

constexpr std::array<std::string_view, 10> kBrackets = {
    "(", ")", "{", "}", "[", "]", "⟨", "⟩", "⦃", "⦄",
};

constexpr std::array<std::string_view, 7> kPunctuation = {
    ":=", "=>", ",", ":", ";", "|", ".",
};

constexpr std::array<std::string_view, 11> kKeywords = {
    "theorem", "lemma", "example", "let", "by", "sorry", "in", "have", "show", "from", "def",
};

std::optional<std::string_view> match_table(std::string_view rest, auto const &table)
{
    for (std::string_view entry : table)
        if (rest.substr(0, entry.size()) == entry)
            return entry;
    return std::nullopt;
}

class Lexer
{
  public:
    Lexer(std::string_view source, bool lenient) : src_(source), lenient_(lenient) {}

    std::vector<Token> run()
    {
        while (pos_ < src_.size()) {
            auto d = decode_utf8(src_, pos_);
            if (!d) {
                if (lenient_) {
                    emit(TokenKind::Punctuation, pos_, pos_ + 1);
                    continue;
                }
                throw LexError("invalid UTF-8 byte sequence", {pos_, pos_ + 1});
            }
            if (is_space(d->cp)) {
                pos_ += d->length;
                continue;
            }
            if (is_ident_start(d->cp)) {
                lex_identifier();
                continue;
            }
            if (is_digit(d->cp)) {
                lex_numeral();
                continue;
            }
            std::string_view rest = src_.substr(pos_);
            if (rest[0] == '.' && rest.size() > 1 && is_digit(static_cast<unsigned char>(rest[1]))
                && adjacent_to_operand()) {
                std::size_t end = pos_ + 1;
                while (end < src_.size() && is_digit(static_cast<unsigned char>(src_[end])))
                    ++end;
                emit(TokenKind::Operator, pos_, end);
                continue;
            }
            if (auto op = match_table(rest, kPunctuation); op && (*op == ":=" || *op == "=>")) {
                emit(TokenKind::Punctuation, pos_, pos_ + op->size());
                continue;
            }
            if (auto op = match_table(rest, kOperators)) {
                emit(TokenKind::Operator, pos_, pos_ + op->size());
                continue;
            }
            if (auto br = match_table(rest, kBrackets)) {
                emit(TokenKind::Bracket, pos_, pos_ + br->size());
                continue;
            }
            if (auto p = match_table(rest, kPunctuation)) {
                emit(TokenKind::Punctuation, pos_, pos_ + p->size());
                continue;
            }
            if (lenient_) {
                emit(TokenKind::Punctuation, pos_, pos_ + d->length);
                continue;
            }
            throw LexError("unrecognized character '" + std::string(src_.substr(pos_, d->length)) + "'",
                           {pos_, pos_ + d->length});
        }
        return std::move(tokens_);
    }

  private:
    void emit(TokenKind kind, std::size_t begin, std::size_t end)
    {
        tokens_.push_back(Token{kind, std::string(src_.substr(begin, end - begin)), {begin, end}});
        pos_ = end;
    }

    bool adjacent_to_operand() const
    {
        if (tokens_.empty())
            return false;
        const Token &prev = tokens_.back();
        if (prev.span.end != pos_)
            return false;
        return prev.kind == TokenKind::Identifier
            || (prev.kind == TokenKind::Bracket && (prev.text == ")" || prev.text == "⟩"))
            || (prev.kind == TokenKind::Operator && prev.text.starts_with('.'));
    }

    void lex_identifier()
    {
        std::size_t begin = pos_;
        std::size_t end = pos_;
        for (;;) {
            while (end < src_.size()) {
                auto d = decode_utf8(src_, end);
                if (!d || !is_ident_continue(d->cp))
                    break;
                end += d->length;
            }
            // dotted names: Finset.range, Nat.succ_le
            if (end + 1 < src_.size() && src_[end] == '.') {
                auto d = decode_utf8(src_, end + 1);
                if (d && is_ident_start(d->cp)) {
                    end += 1;
                    continue;
                }
            }
            break;
        }
        std::string_view word = src_.substr(begin, end - begin);
        // universe-polymorphic sorts written `Type*` / `Sort*`
        if ((word == "Type" || word == "Sort") && end < src_.size() && src_[end] == '*') {
            emit(TokenKind::Identifier, begin, end + 1);
            return;
        }
        if (word == "fun") {
            emit(TokenKind::BinderKeyword, begin, end);
            return;
        }
        if (std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end()) {
            emit(TokenKind::Keyword, begin, end);
            return;
        }
        emit(TokenKind::Identifier, begin, end);
    }

    void lex_numeral()
    {
        std::size_t end = pos_;
        while (end < src_.size() && is_digit(static_cast<unsigned char>(src_[end])))
            ++end;
        if (end + 1 < src_.size() && src_[end] == '.' && is_digit(static_cast<unsigned char>(src_[end + 1]))) {
            ++end;
            while (end < src_.size() && is_digit(static_cast<unsigned char>(src_[end])))
                ++end;
        }
        emit(TokenKind::Numeral, pos_, end);
    }

    std::string_view src_;
    bool lenient_;
    std::size_t pos_ = 0;
    std::vector<Token> tokens_;
};

} // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source, false).run(); }

std::vector<Token> tokenize_lenient(std::string_view source) { return Lexer(source, true).run(); }

std::string_view canonical_operator(std::string_view op)
{
    if (op == "->") return "→";
    if (op == "<->") return "↔";
    if (op == "<=") return "≤";
    if (op == ">=") return "≥";
    if (op == "!=") return "≠";
    if (op == "λ") return "fun";
    return op;
}

} // namespace stmtsim
