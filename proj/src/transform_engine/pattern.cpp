#include "stmtsim/pattern.hpp"

#include <cctype>

namespace stmtsim {

namespace {

class SexprReader
{
  public:
    explicit SexprReader(std::string_view text) : text_(text) {}

    OperatorTree read_all()
    {
        OperatorTree t = read();
        skip_space();
        if (pos_ != text_.size())
            fail("trailing input");
        return t;
    }

  private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string &what) const
    {
        throw PatternError("pattern \"" + std::string(text_) + "\": " + what + " at offset " + std::to_string(pos_));
    }

    std::string atom()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')'
               && !std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start)
            fail("expected an atom");
        return std::string(text_.substr(start, pos_ - start));
    }

    OperatorTree read()
    {
        skip_space();
        if (pos_ >= text_.size())
            fail("unexpected end");
        if (text_[pos_] == ')')
            fail("unexpected ')'");
        if (text_[pos_] != '(')
            return leaf(atom());
        ++pos_;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '(')
            fail("compound heads are written with app");
        std::string head = atom();
        std::vector<OperatorTree> kids;
        while (true) {
            skip_space();
            if (pos_ >= text_.size())
                fail("missing ')'");
            if (text_[pos_] == ')') {
                ++pos_;
                break;
            }
            kids.push_back(read());
        }
        if (kids.empty())
            fail("'" + head + "' has no arguments");
        return node(head, std::move(kids));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void collect_metavariables(const OperatorTree &t, std::set<std::string> &out)
{
    std::string_view h = head_of(t.label);
    if (is_metavariable(h))
        out.insert(std::string(h));
    for (const auto &c : t.children)
        collect_metavariables(c, out);
}

bool bind_var(Bindings &b, const std::string &name, const OperatorTree &value)
{
    auto [it, inserted] = b.try_emplace(name, value);
    return inserted || it->second == value;
}

bool match_into(const OperatorTree &p, const OperatorTree &t, Bindings &b)
{
    if (p.is_leaf()) {
        if (is_metavariable(p.label))
            return bind_var(b, p.label, t);
        return t.is_leaf() && t.label == p.label;
    }
    if (t.children.size() != p.children.size())
        return false;
    std::string_view ph = head_of(p.label);
    if (is_metavariable(ph)) {
        if (!bind_var(b, std::string(ph), leaf(std::string(head_of(t.label)))))
            return false;
    } else if (p.label != t.label) {
        return false;
    }
    for (std::size_t i = 0; i < p.children.size(); ++i)
        if (!match_into(p.children[i], t.children[i], b))
            return false;
    return true;
}

} // namespace

OperatorTree parse_sexpr(std::string_view text) { return SexprReader(text).read_all(); }

bool is_metavariable(std::string_view label) { return label.size() > 1 && label[0] == '?'; }

std::set<std::string> metavariables(const OperatorTree &pattern)
{
    std::set<std::string> out;
    collect_metavariables(pattern, out);
    return out;
}

std::optional<Bindings> match_pattern(const OperatorTree &pattern, const OperatorTree &tree)
{
    Bindings b;
    if (!match_into(pattern, tree, b))
        return std::nullopt;
    return b;
}

OperatorTree instantiate(const OperatorTree &pattern, const Bindings &bindings)
{
    auto lookup = [&](std::string_view name) -> const OperatorTree & {
        auto it = bindings.find(std::string(name));
        if (it == bindings.end())
            throw PatternError("unbound metavariable " + std::string(name));
        return it->second;
    };
    if (pattern.is_leaf())
        return is_metavariable(pattern.label) ? lookup(pattern.label) : pattern;
    std::vector<OperatorTree> kids;
    kids.reserve(pattern.children.size());
    for (const auto &c : pattern.children)
        kids.push_back(instantiate(c, bindings));
    std::string_view h = head_of(pattern.label);
    if (!is_metavariable(h))
        return OperatorTree(pattern.label, std::move(kids));
    const OperatorTree &head = lookup(h);
    if (head.is_leaf())
        return node(head.label, std::move(kids));
    kids.insert(kids.begin(), head);
    return node("app", std::move(kids));
}

} // namespace stmtsim
