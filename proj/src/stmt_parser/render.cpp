#include "stmtsim/operator_tree.hpp"

#include "stmtsim/operator_table.hpp"

namespace stmtsim {

namespace {

void render(const OperatorTree &t, std::string &out);

void operand(const OperatorTree &t, std::string &out)
{
    if (t.is_leaf()) {
        out += t.label;
        return;
    }
    out += '(';
    render(t, out);
    out += ')';
}

void render_binding(std::string_view h, const OperatorTree &t, std::string &out)
{
    const std::size_t n = t.children.size();
    const OperatorTree &domain = t.children[n - 2];
    const OperatorTree &body = t.children[n - 1];
    if (h == "let") {
        out += "let " + t.children[0].label + " := ";
        operand(domain, out);
        out += "; ";
        render(body, out);
        return;
    }
    if (h == "∑" || h == "∏") {
        out += std::string(h) + " " + t.children[0].label + " ∈ ";
        operand(domain, out);
        out += ", ";
        operand(body, out);
        return;
    }
    out += std::string(h) + " (";
    for (std::size_t i = 0; i + 2 < n; ++i) {
        if (i > 0)
            out += ' ';
        out += t.children[i].label;
    }
    out += " : ";
    operand(domain, out);
    out += h == "fun" ? ") => " : "), ";
    render(body, out);
}

void render(const OperatorTree &t, std::string &out)
{
    if (t.is_leaf()) {
        out += t.label;
        return;
    }
    std::string_view h = head_of(t.label);
    const auto &kids = t.children;

    if (is_binding_node(t)) {
        render_binding(h, t, out);
        return;
    }
    if (kids.size() == 2 && infix_info(h)) {
        operand(kids[0], out);
        out += ' ';
        out += h;
        out += ' ';
        operand(kids[1], out);
        return;
    }
    if (kids.size() == 1 && prefix_operand_power(h)) {
        out += h;
        operand(kids[0], out);
        return;
    }
    if (kids.size() == 1 && (h.starts_with('.') || h == "⁻¹")) {
        if (kids[0].is_leaf() && !kids[0].label.empty() && !(kids[0].label[0] >= '0' && kids[0].label[0] <= '9'))
            out += kids[0].label;
        else {
            out += '(';
            render(kids[0], out);
            out += ')';
        }
        out += h;
        return;
    }
    if (kids.size() == 2 && h == "Prod.mk") {
        out += '(';
        render(kids[0], out);
        out += ", ";
        render(kids[1], out);
        out += ')';
        return;
    }
    if (h == "⟨⟩") {
        out += "⟨";
        for (std::size_t i = 0; i < kids.size(); ++i) {
            if (i > 0)
                out += ", ";
            render(kids[i], out);
        }
        out += "⟩";
        return;
    }
    if (h == "abs" && kids.size() == 1) {
        out += '|';
        render(kids[0], out);
        out += '|';
        return;
    }
    if (h == ":" && kids.size() == 2) {
        out += '(';
        operand(kids[0], out);
        out += " : ";
        render(kids[1], out);
        out += ')';
        return;
    }
    std::size_t first_arg = 0;
    if (h == "app") {
        out += '(';
        render(kids[0], out);
        out += ')';
        first_arg = 1;
    } else {
        out += h;
    }
    for (std::size_t i = first_arg; i < kids.size(); ++i) {
        out += ' ';
        operand(kids[i], out);
    }
}

} // namespace

std::string render_text(const OperatorTree &t)
{
    std::string out;
    render(t, out);
    return out;
}

} // namespace stmtsim
