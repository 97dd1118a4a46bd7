#include "stmtsim/parser.hpp"

#include "stmtsim/operator_table.hpp"

#include <algorithm>

namespace stmtsim {

namespace {

const std::vector<std::string> kExpressionStart = {
    "identifier", "numeral", "(", "⟨", "|", "¬", "-", "↑", "∀", "∃", "fun", "∑", "let",
};

class Parser
{
  public:
    explicit Parser(std::string_view source) : src_(source), toks_(tokenize(source)) {}

    StatementAst statement()
    {
        StatementAst ast;
        if (at_keyword("theorem") || at_keyword("lemma") || at_keyword("def")) {
            advance();
            const Token &name = expect_kind(TokenKind::Identifier, "theorem name");
            ast.name = name.text;
        } else if (at_keyword("example")) {
            advance();
        } else {
            ast.body = expression(0);
            finish_declaration();
            return ast;
        }

        while (at_bracket("(") || at_bracket("{") || at_bracket("[") || at_bracket("⦃"))
            ast.binders.push_back(bracketed_binder(/*allow_anonymous_instance=*/true));

        expect_punct(":");
        ast.body = expression(0);
        finish_declaration();
        return ast;
    }

    Expr whole_expression()
    {
        Expr e = expression(0);
        if (!eof())
            fail("unexpected token '" + peek().text + "'", {"end of input"});
        return e;
    }

  private:
    // ----- token helpers -------------------------------------------------

    bool eof() const { return pos_ >= toks_.size(); }
    const Token &peek() const { return toks_[pos_]; }
    const Token &advance() { return toks_[pos_++]; }

    Span here() const
    {
        if (eof())
            return {src_.size(), src_.size()};
        return peek().span;
    }

    bool at(TokenKind kind, std::string_view text) const
    {
        return !eof() && peek().kind == kind && peek().text == text;
    }
    bool at_keyword(std::string_view w) const { return at(TokenKind::Keyword, w); }
    bool at_bracket(std::string_view b) const { return at(TokenKind::Bracket, b); }
    bool at_punct(std::string_view p) const { return at(TokenKind::Punctuation, p); }
    bool at_op(std::string_view op) const
    {
        return !eof() && peek().kind == TokenKind::Operator && canonical_operator(peek().text) == op;
    }

    [[noreturn]] void fail(const std::string &message, std::vector<std::string> expected) const
    {
        std::string full = message;
        if (!expected.empty()) {
            full += "; expected one of:";
            for (const auto &e : expected)
                full += " " + e;
        }
        throw ParseError(full, here(), std::move(expected));
    }

    std::string describe_current() const { return eof() ? std::string("end of input") : "'" + peek().text + "'"; }

    const Token &expect_kind(TokenKind kind, const std::string &what)
    {
        if (eof() || peek().kind != kind)
            fail("expected " + what + " but found " + describe_current(), {what});
        return advance();
    }

    void expect_punct(std::string_view p)
    {
        if (!at_punct(p))
            fail("expected '" + std::string(p) + "' but found " + describe_current(), {std::string(p)});
        advance();
    }

    void expect_bracket(std::string_view b)
    {
        if (!at_bracket(b))
            fail("expected '" + std::string(b) + "' but found " + describe_current(), {std::string(b)});
        advance();
    }

    void finish_declaration()
    {
        if (at_punct(":=")) {
            pos_ = toks_.size(); // proof tail is discarded
            return;
        }
        if (!eof())
            fail("unexpected token '" + peek().text + "'", {":=", "end of input"});
    }

    bool newline_before_current() const
    {
        if (eof() || pos_ == 0)
            return false;
        std::size_t from = toks_[pos_ - 1].span.end;
        std::size_t to = peek().span.begin;
        return src_.substr(from, to - from).find('\n') != std::string_view::npos;
    }

    bool stop_here() const { return newline_stop_ > 0 && newline_before_current(); }

    static Span join(Span a, Span b) { return {std::min(a.begin, b.begin), std::max(a.end, b.end)}; }

    // ----- expressions ---------------------------------------------------

    Expr expression(int min_power)
    {
        Expr lhs = prefix_expression();
        for (;;) {
            if (eof() || stop_here() || peek().kind != TokenKind::Operator)
                break;
            std::string op(canonical_operator(peek().text));
            auto info = infix_info(op);
            if (!info || info->power < min_power)
                break;
            advance();
            int right_power = info->assoc == Assoc::Right ? info->power : info->power + 1;
            Expr rhs = expression(right_power);
            Expr node{ExprKind::Infix, op, {}, {}, join(lhs.span, rhs.span)};
            node.args.push_back(std::move(lhs));
            node.args.push_back(std::move(rhs));
            lhs = std::move(node);
        }
        return lhs;
    }

    Expr prefix_expression()
    {
        if (eof())
            fail("expected expression but found end of input", kExpressionStart);
        const Token &t = peek();
        if (t.kind == TokenKind::Operator) {
            std::string op(canonical_operator(t.text));
            if (op == "¬" || op == "-") {
                Span start = advance().span;
                Expr operand = expression(*prefix_operand_power(op));
                Expr node{ExprKind::Prefix, op, {}, {}, join(start, operand.span)};
                node.args.push_back(std::move(operand));
                return node;
            }
            if (op == "∀" || op == "∃" || op == "∃!" || op == "fun")
                return binder_expression(op);
            if (op == "∑" || op == "∏")
                return big_operator(op);
            if (op != "↑")
                fail("expected expression but found operator '" + t.text + "' (missing left operand?)",
                     kExpressionStart);
        }
        if (t.kind == TokenKind::BinderKeyword)
            return binder_expression("fun");
        if (t.kind == TokenKind::Keyword && t.text == "let")
            return let_expression();
        return application();
    }

    static bool starts_argument(const Token &t)
    {
        switch (t.kind) {
        case TokenKind::Identifier:
        case TokenKind::Numeral:
            return true;
        case TokenKind::Bracket:
            return t.text == "(" || t.text == "⟨";
        case TokenKind::Operator:
            return t.text == "↑";
        default:
            return false;
        }
    }

    Expr application()
    {
        Expr head = argument();
        std::vector<Expr> args;
        while (!eof() && !stop_here() && starts_argument(peek()))
            args.push_back(argument());
        if (args.empty())
            return head;
        Span span = join(head.span, args.back().span);
        Expr node{ExprKind::App, "", {}, {}, span};
        node.args.push_back(std::move(head));
        for (auto &a : args)
            node.args.push_back(std::move(a));
        return node;
    }

    /// Primary expression plus postfix projections; no juxtaposition.
    Expr argument()
    {
        Expr e = primary();
        while (!eof() && peek().kind == TokenKind::Operator
               && (peek().text == "⁻¹" || (peek().text.starts_with('.') && peek().span.begin == e.span.end))) {
            const Token &t = advance();
            Expr node{ExprKind::Postfix, t.text, {}, {}, join(e.span, t.span)};
            node.args.push_back(std::move(e));
            e = std::move(node);
        }
        return e;
    }

    Expr primary()
    {
        if (eof())
            fail("expected expression but found end of input", kExpressionStart);
        const Token &t = peek();
        switch (t.kind) {
        case TokenKind::Identifier: {
            advance();
            return Expr{ExprKind::Ident, t.text, {}, {}, t.span};
        }
        case TokenKind::Numeral: {
            advance();
            return Expr{ExprKind::Numeral, t.text, {}, {}, t.span};
        }
        case TokenKind::Operator:
            if (t.text == "↑") {
                Span start = advance().span;
                Expr operand = argument();
                Expr node{ExprKind::Prefix, "↑", {}, {}, join(start, operand.span)};
                node.args.push_back(std::move(operand));
                return node;
            }
            break;
        case TokenKind::Bracket:
            if (t.text == "(")
                return parenthesized();
            if (t.text == "⟨")
                return anonymous_constructor();
            break;
        case TokenKind::Punctuation:
            if (t.text == "|")
                return absolute_value();
            break;
        default:
            break;
        }
        if (t.kind == TokenKind::Operator)
            fail("expected expression but found operator '" + t.text + "' (missing left operand?)", kExpressionStart);
        fail("expected expression but found " + describe_current(), kExpressionStart);
    }

    struct NewlineScope
    {
        explicit NewlineScope(Parser &p, bool enable) : p_(p), saved_(p.newline_stop_)
        {
            p_.newline_stop_ = enable ? 1 : 0;
        }
        ~NewlineScope() { p_.newline_stop_ = saved_; }
        Parser &p_;
        int saved_;
    };

    Expr parenthesized()
    {
        Span start = advance().span;
        NewlineScope scope(*this, false);
        Expr first = expression(0);
        if (at_punct(",")) {
            Expr tuple{ExprKind::Tuple, "", {}, {}, start};
            tuple.args.push_back(std::move(first));
            while (at_punct(",")) {
                advance();
                tuple.args.push_back(expression(0));
            }
            tuple.span = join(start, here());
            expect_bracket(")");
            return tuple;
        }
        if (at_punct(":")) {
            advance();
            Expr type = expression(0);
            Expr asc{ExprKind::Ascription, "", {}, {}, join(start, here())};
            asc.args.push_back(std::move(first));
            asc.args.push_back(std::move(type));
            expect_bracket(")");
            return asc;
        }
        Span close = here();
        expect_bracket(")");
        Expr paren{ExprKind::Paren, "", {}, {}, join(start, close)};
        paren.args.push_back(std::move(first));
        return paren;
    }

    Expr anonymous_constructor()
    {
        Span start = advance().span;
        NewlineScope scope(*this, false);
        Expr node{ExprKind::AnonCtor, "", {}, {}, start};
        if (!at_bracket("⟩")) {
            node.args.push_back(expression(0));
            while (at_punct(",")) {
                advance();
                node.args.push_back(expression(0));
            }
        }
        node.span = join(start, here());
        expect_bracket("⟩");
        return node;
    }

    Expr absolute_value()
    {
        Span start = advance().span;
        NewlineScope scope(*this, false);
        Expr inner = expression(0);
        Span close = here();
        if (!at_punct("|"))
            fail("expected closing '|' but found " + describe_current(), {"|"});
        advance();
        Expr node{ExprKind::Abs, "", {}, {}, join(start, close)};
        node.args.push_back(std::move(inner));
        return node;
    }

    // ----- binders -------------------------------------------------------

    std::vector<std::string> identifiers()
    {
        std::vector<std::string> names;
        while (!eof() && peek().kind == TokenKind::Identifier)
            names.push_back(advance().text);
        return names;
    }

    BinderGroup bracketed_binder(bool allow_anonymous_instance)
    {
        const Token &open = advance();
        BinderGroup group;
        std::string close;
        if (open.text == "(") {
            group.kind = BinderKind::Explicit;
            close = ")";
        } else if (open.text == "{" || open.text == "⦃") {
            group.kind = BinderKind::Implicit;
            close = open.text == "{" ? "}" : "⦄";
        } else {
            group.kind = BinderKind::Instance;
            close = "]";
        }
        NewlineScope scope(*this, false);

        if (group.kind == BinderKind::Instance) {
            // `[inst : C R]` or anonymous `[C R]`
            bool named = pos_ + 1 < toks_.size() && peek().kind == TokenKind::Identifier
                && toks_[pos_ + 1].kind == TokenKind::Punctuation && toks_[pos_ + 1].text == ":";
            if (named) {
                group.names.push_back(advance().text);
                advance();
            } else if (allow_anonymous_instance) {
                group.names.push_back("inst✝");
            } else {
                fail("expected binder name", {"identifier"});
            }
            group.type.push_back(expression(0));
            expect_bracket(close);
            return group;
        }

        group.names = identifiers();
        if (group.names.empty())
            fail("expected binder name but found " + describe_current(), {"identifier"});
        if (at_punct(":")) {
            advance();
            group.type.push_back(expression(0));
        }
        expect_bracket(close);
        return group;
    }

    std::vector<BinderGroup> binder_groups(bool allow_predicates)
    {
        std::vector<BinderGroup> groups;
        for (;;) {
            if (at_bracket("(") || at_bracket("{") || at_bracket("⦃") || at_bracket("[")) {
                groups.push_back(bracketed_binder(false));
                continue;
            }
            if (!eof() && peek().kind == TokenKind::Identifier) {
                BinderGroup group;
                group.names = identifiers();
                if (at_punct(":")) {
                    advance();
                    group.type.push_back(expression(0));
                } else if (allow_predicates && !eof() && peek().kind == TokenKind::Operator
                           && is_binder_predicate(canonical_operator(peek().text))) {
                    group.predicate_op = canonical_operator(advance().text);
                    group.predicate_rhs.push_back(expression(prec::kCompare + 1));
                }
                groups.push_back(std::move(group));
                continue;
            }
            break;
        }
        if (groups.empty())
            fail("expected binder but found " + describe_current(), {"identifier", "("});
        return groups;
    }

    Expr binder_expression(const std::string &op)
    {
        Span start = advance().span;
        NewlineScope scope(*this, false);
        bool is_fun = op == "fun";
        std::vector<BinderGroup> groups = binder_groups(!is_fun);
        if (is_fun) {
            if (at_punct("=>") || at_punct(","))
                advance();
            else
                fail("expected '=>' but found " + describe_current(), {"=>"});
        } else {
            expect_punct(",");
        }
        Expr body = expression(0);
        Expr node{ExprKind::Binder, op, {}, std::move(groups), join(start, body.span)};
        node.args.push_back(std::move(body));
        return node;
    }

    Expr big_operator(const std::string &op)
    {
        Span start = advance().span;
        NewlineScope scope(*this, false);
        BinderGroup group;
        group.names.push_back(expect_kind(TokenKind::Identifier, "bound variable").text);
        if (at_op("∈") || at_keyword("in") || at_punct(":")) {
            advance();
            group.type.push_back(expression(prec::kCompare + 1));
        }
        expect_punct(",");
        Expr body = expression(prec::kBigOpBody);
        Expr node{ExprKind::BigOp, op, {}, {}, join(start, body.span)};
        node.groups.push_back(std::move(group));
        node.args.push_back(std::move(body));
        return node;
    }

    Expr let_expression()
    {
        Span start = advance().span;
        std::string name = expect_kind(TokenKind::Identifier, "let-bound name").text;
        BinderGroup group;
        group.names.push_back(name);
        if (at_punct(":")) {
            advance();
            NewlineScope scope(*this, true);
            group.type.push_back(expression(0));
        }
        expect_punct(":=");
        Expr value;
        {
            NewlineScope scope(*this, true);
            value = expression(0);
        }
        if (at_punct(";") || at_keyword("in"))
            advance();
        else if (!newline_before_current())
            fail("expected ';' after let value but found " + describe_current(), {";", "newline"});
        Expr body = expression(0);
        Expr node{ExprKind::Let, name, {}, {}, join(start, body.span)};
        node.groups.push_back(std::move(group));
        node.args.push_back(std::move(value));
        node.args.push_back(std::move(body));
        return node;
    }

    std::string_view src_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int newline_stop_ = 0;
};

} // namespace

StatementAst parse_statement(std::string_view source) { return Parser(source).statement(); }

Expr parse_expression(std::string_view source) { return Parser(source).whole_expression(); }

std::string caret_diagnostic(std::string_view source, Span span)
{
    std::size_t begin = std::min(span.begin, source.size());
    std::size_t line_start = source.rfind('\n', begin == 0 ? 0 : begin - 1);
    line_start = (line_start == std::string_view::npos || begin == 0) ? 0 : line_start + 1;
    if (begin > 0 && source[begin - 1] == '\n')
        line_start = begin;
    std::size_t line_end = source.find('\n', begin);
    if (line_end == std::string_view::npos)
        line_end = source.size();
    std::string_view line = source.substr(line_start, line_end - line_start);

    // column in code points so the caret lines up under multi-byte symbols
    auto columns = [](std::string_view s) {
        std::size_t n = 0;
        for (unsigned char c : s)
            if ((c & 0xC0) != 0x80)
                ++n;
        return n;
    };
    std::size_t col = columns(source.substr(line_start, begin - line_start));
    std::size_t end = std::min(std::max(span.end, begin), line_end);
    std::size_t width = std::max<std::size_t>(1, columns(source.substr(begin, end - begin)));
    return std::string(line) + "\n" + std::string(col, ' ') + std::string(width, '^');
}

} // namespace stmtsim
