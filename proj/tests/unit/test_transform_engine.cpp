#include "stmtsim/normalize.hpp"
#include "stmtsim/opt_builder.hpp"
#include "stmtsim/parser.hpp"
#include "stmtsim/pattern.hpp"
#include "stmtsim/rules.hpp"
#include "stmtsim/ted.hpp"
#include "stmtsim/transted.hpp"

#include "corpus.hpp"
#include "evaluator.hpp"
#include "worked_examples.hpp"

#include <doctest.h>

#include <random>

using namespace stmtsim;
using stmtsim::testing::Env;
using stmtsim::testing::Evaluator;
using stmtsim::testing::Value;

namespace {

const RewriteRule &rule(const std::string &name)
{
    for (const auto &r : RuleLibrary::shipped().rules())
        if (r.name == name)
            return r;
    throw std::runtime_error("no rule " + name);
}

OperatorTree goal(std::string_view l, std::string_view r)
{
    return node("=", {expr_to_opt(parse_expression(l)), expr_to_opt(parse_expression(r))});
}

SearchBudget node_budget(std::size_t n)
{
    SearchBudget b;
    b.max_expanded_nodes = n;
    b.max_wall_time.reset();
    return b;
}

std::vector<std::string> trace_rules(const TransTedResult &r)
{
    std::vector<std::string> out;
    for (const auto &s : r.trace)
        out.push_back(s.rule);
    return out;
}

} // namespace

TEST_CASE("s-expression patterns")
{
    CHECK(parse_sexpr("(= (f ?x) ?y)") == node("=", {node("f", {leaf("?x")}), leaf("?y")}));
    CHECK(parse_sexpr("a") == leaf("a"));
    CHECK_THROWS_AS(parse_sexpr("(f"), PatternError);
    CHECK_THROWS_AS(parse_sexpr("(f)"), PatternError);
    CHECK_THROWS_AS(parse_sexpr("a b"), PatternError);
    CHECK(metavariables(parse_sexpr("(?f ?x (g ?y))")) == std::set<std::string>{"?f", "?x", "?y"});
}

TEST_CASE("pattern matching binds consistently")
{
    auto p = parse_sexpr("(+ ?a ?a)");
    CHECK(match_pattern(p, expr_to_opt(parse_expression("x + x"))));
    CHECK_FALSE(match_pattern(p, expr_to_opt(parse_expression("x + y"))));
    auto head = parse_sexpr("(= (?f ?x) (?f ?y))");
    auto b = match_pattern(head, goal("f a", "f b"));
    REQUIRE(b);
    CHECK(b->at("?f") == leaf("f"));
    CHECK_FALSE(match_pattern(head, goal("f a", "g b")));
    CHECK(instantiate(parse_sexpr("(?f ?y)"), *b) == node("f", {leaf("b")}));
    Bindings compound{{"?f", node("∘", {leaf("g"), leaf("h")})}, {"?y", leaf("z")}};
    CHECK(instantiate(parse_sexpr("(?f ?y)"), compound).label == "app<SLOT>");
}

TEST_CASE("rule files load, validate and round-trip")
{
    const auto &lib = RuleLibrary::shipped();
    CHECK(lib.to_json() == RuleLibrary::shipped_json());
    CHECK(RuleLibrary::from_json(lib.to_json()).to_json() == lib.to_json());
    CHECK(lib.has(Builtin::ForallSwap));
    CHECK(rule("comm(+)").lhs == parse_sexpr("(+ ?a ?b)"));
    CHECK(rule("eq-symm").root_only);
    CHECK_FALSE(rule("let-inline").root_only);

    CHECK_THROWS_AS(RuleLibrary::from_json("{}"), RuleError);
    CHECK_THROWS_AS(RuleLibrary::from_json(R"j([{"name":"x","lhs":"(f ?a)","rhs":"?b"}])j"), RuleError);
    CHECK_THROWS_AS(RuleLibrary::from_json(R"j([{"name":"x","lhs":"?a","rhs":"?a"}])j"), RuleError);
    CHECK_THROWS_AS(RuleLibrary::from_json(R"j([{"name":"x","lhs":"(f ?a)","rhs":"?a","guard":"leaf"}])j"), RuleError);
    CHECK_THROWS_AS(RuleLibrary::from_json(R"j([{"name":"x","lhs":"(f ?a)","rhs":"?a"},{"name":"x","lhs":"(g ?a)","rhs":"?a"}])j"),
                    RuleError);
    CHECK_THROWS_AS(RuleLibrary::from_json(R"j([{"name":"ext","lhs":"(f ?a)","rhs":"?a"}])j"), RuleError);
    CHECK_THROWS_AS(RuleLibrary::from_file("/nonexistent/rules.json"), RuleFileError);

    auto custom = RuleLibrary::from_json(R"j([{"name":"c","lhs":"(?op ?a ?b)","rhs":"(?op ?b ?a)","commutes":["+","⊓"]}])j");
    REQUIRE(custom.rules().size() == 2);
    CHECK(custom.rules()[1].name == "c(⊓)");
}

TEST_CASE("merge_to_equality")
{
    auto a = parse_statement("theorem t (x : ℝ) : x = x := by sorry");
    auto m = merge_to_equality(a, a);
    CHECK(m.label == "=<SLOT>");
    CHECK(m.children[0] == m.children[1]);

    using stmtsim::testing::kExercise;
    auto e = merge_to_equality(parse_statement(kExercise.label), parse_statement(kExercise.prediction));
    CHECK(e.children[0] == statement_opt("∀ (x : ℝ), ∀ (y : ℚ), y ≠ 0 → Irrational x → Irrational (x * y)"));
    CHECK(e.children[1] == statement_opt("∀ (r : ℚ), ∀ (x : ℝ), Irrational x → r ≠ 0 → Irrational (r * x)"));

    using stmtsim::testing::kMathd;
    auto m2 = merge_to_equality(parse_statement(kMathd.label), parse_statement(kMathd.prediction));
    CHECK(m2.children[0] == statement_opt("∀ (m b : ℝ), m * 7 + b = -1 → m * -1 + b = 7 → m + b = 5"));
}

TEST_CASE("apply_rule examples")
{
    CHECK(apply_rule(rule("congr-arg"), goal("f x", "f y"), {}) == goal("x", "y"));
    CHECK_FALSE(apply_rule(rule("congr-arg"), goal("f x z", "f y w"), {}));
    CHECK_FALSE(apply_rule(rule("congr-arg"), goal("f x", "g y"), {}));
    CHECK(apply_rule(rule("congr-fun"), goal("f x", "g x"), {}) == goal("f", "g"));

    auto imp = goal("a ∧ b → c", "d");
    CHECK(apply_rule(rule("and-imp"), imp, {0}) == goal("a → b → c", "d"));
    CHECK_FALSE(apply_rule(rule("and-imp"), imp, {1}));

    auto fa = goal("∀ x : A, p x", "∀ y : A, q y");
    CHECK(apply_rule(rule("forall-congr"), fa, {}) == goal("p x", "q x"));
    CHECK_FALSE(apply_rule(rule("forall-congr"), goal("∀ x : A, p x", "∀ y : B, q y"), {}));
    // the right side mentions a free x, so both bound names become fresh
    CHECK(apply_rule(rule("forall-congr"), goal("∀ x : A, p x", "∀ y : A, q y x"), {}) == goal("p x'", "q x' x"));
    CHECK(apply_rule(rule("forall-congr"), goal("∀ x y : A, p x y", "∀ u v : A, p u v"), {})
          == goal("∀ y : A, p x y", "∀ v : A, p x v"));

    CHECK(apply_rule(rule("implies-congr"), goal("a → b", "a → c"), {}) == goal("b", "c"));
    CHECK(apply_rule(rule("ext"), goal("fun x : A => x + 1", "fun y : A => 1 + y"), {}) == goal("x + 1", "1 + x"));

    CHECK(apply_rule(rule("forall-swap"), goal("∀ x : A, ∀ y : B, p x y", "q"), {0})
          == goal("∀ y : B, ∀ x : A, p x y", "q"));
    CHECK_FALSE(apply_rule(rule("forall-swap"), goal("∀ x : A, ∀ y : B x, p x y", "q"), {0}));

    CHECK(apply_rule(rule("let-inline"), goal("let B := (7, -1); B.2 = 1", "q"), {0}) == goal("(7, -1).2 = 1", "q"));
    CHECK(apply_rule(rule("proj-snd"), goal("(7, -1).2", "q"), {0}) == goal("-1", "q"));
    CHECK(apply_rule(rule("mul-neg-one"), goal("m * -1", "q"), {0}) == goal("-m", "q"));
    CHECK(apply_rule(rule("ne-zero-is-regular"), goal("y ≠ 0", "q"), {0}) == goal("IsRegular y", "q"));
    CHECK(apply_rule(rule("eq-symm"), goal("a", "b"), {}) == goal("b", "a"));
    CHECK_FALSE(apply_rule(rule("eq-symm"), goal("a = b", "c"), {0}));
    CHECK(apply_rule(rule("const-fold"), goal("2 + 3 * 4", "x"), {}) == goal("14", "x"));
    CHECK(apply_rule(rule("cast-collapse"), goal("↑(↑x) + ↑2", "y"), {}) == goal("↑x + 2", "y"));
    // comm on a + a changes nothing
    CHECK_FALSE(apply_rule(rule("comm(+)"), goal("a + a", "b"), {0}));
}

TEST_CASE("constant folding agrees across numeric types")
{
    CHECK(const_fold(expr_to_opt(parse_expression("2 ^ 10 - 24"))) == leaf("1000"));
    CHECK(const_fold(expr_to_opt(parse_expression("3 - 5"))) == expr_to_opt(parse_expression("3 - 5")));
    CHECK(const_fold(expr_to_opt(parse_expression("-1 - 2"))) == node("-", {leaf("3")}));
    CHECK(const_fold(expr_to_opt(parse_expression("7 / 2"))) == expr_to_opt(parse_expression("7 / 2")));
    CHECK(const_fold(expr_to_opt(parse_expression("8 / 2"))) == leaf("4"));
    CHECK(const_fold(expr_to_opt(parse_expression("17 % 5"))) == leaf("2"));
    CHECK(const_fold(expr_to_opt(parse_expression("- -3"))) == leaf("3"));
    CHECK(const_fold(expr_to_opt(parse_expression("-1"))) == node("-", {leaf("1")}));
    CHECK(const_fold(expr_to_opt(parse_expression("x + 0 * 2"))) == expr_to_opt(parse_expression("x + 0")));
}

TEST_CASE("enumerate_children")
{
    SearchNode start;
    start.goal = goal("a + b", "b + a");
    start.heuristic = 2;
    auto kids = enumerate_children(start, RuleLibrary::shipped());
    bool found = false;
    for (const auto &k : kids) {
        if (k.completed() && k.trace.back().rule == "comm(+)") {
            found = true;
            CHECK(k.heuristic == 0);
            CHECK(k.depth == 1);
        }
    }
    CHECK(found);

    SearchNode done;
    CHECK_THROWS_AS(enumerate_children(done, RuleLibrary::shipped()), std::logic_error);

    SearchNode stuck;
    stuck.goal = goal("x", "y");
    CHECK(enumerate_children(stuck, RuleLibrary::from_json(R"j([{"name":"comm","lhs":"(?op ?a ?b)","rhs":"(?op ?b ?a)","commutes":["+"]}])j"))
              .empty());

    // heuristics match the side distance
    for (const auto &k : kids)
        if (!k.completed())
            CHECK(k.heuristic == ted_unit(k.goal->children[0], k.goal->children[1]));
}

TEST_CASE("transted basics")
{
    auto same = transted_text("theorem t (x : ℝ) : x = x := by sorry", "theorem u (x : ℝ) : x = x := by sorry");
    CHECK(same.proved_equal);
    CHECK(same.distance == 0);
    CHECK(same.trace.empty());
    CHECK(same.similarity == 1.0);

    auto comm = transted_text("a + b = c", "b + a = c", node_budget(100));
    CHECK(comm.proved_equal);
    CHECK(comm.distance == 0);
    CHECK(trace_rules(comm) == std::vector<std::string>{"comm(+)"});

    auto one = transted_text("a + b * c = d", "d = c * b + a + 0", node_budget(1));
    CHECK(one.distance == one.initial_distance);
    CHECK(one.expanded == 1);

    SearchBudget bad = node_budget(0);
    CHECK_THROWS_AS(transted_text("a", "b", bad), BudgetError);
    SearchBudget bad_depth = node_budget(10);
    bad_depth.max_depth = 0;
    CHECK_THROWS_AS(bad_depth.validate(), BudgetError);
    SearchBudget bad_time = node_budget(10);
    bad_time.max_wall_time = std::chrono::milliseconds(0);
    CHECK_THROWS_AS(bad_time.validate(), BudgetError);
}

TEST_CASE("numeric normalization runs before the identity check")
{
    auto r = transted_text("theorem t : x = 2 + 2 := by sorry", "theorem t : x = 4 := by sorry", node_budget(1));
    CHECK(r.proved_equal);
    CHECK(r.distance == 0);
}

TEST_CASE("unparseable statements degrade to token trees")
{
    auto r = transted_text("a ⊕ b", "a ⊕ c", node_budget(10));
    CHECK(r.degraded);
    CHECK(r.distance == 1);
    CHECK_FALSE(r.proved_equal);
}

TEST_CASE("worked examples close within the default budget")
{
    SearchBudget b;
    b.max_wall_time.reset();
    for (const auto *ex : {&testing::kExercise, &testing::kMathd}) {
        auto r = transted_text(ex->label, ex->prediction, b);
        CAPTURE(ex->label);
        CHECK(r.proved_equal);
        CHECK(r.distance == 0);
        CHECK(r.similarity == 1.0);
        CHECK(transted_similarity(r, r.left, r.right) == 1.0);
        CHECK(ted_similarity(r.left, r.right) < 0.5);
    }
}

TEST_CASE("similarity endpoints")
{
    TransTedResult r;
    r.distance = 3;
    auto t1 = node("+", {leaf("a"), leaf("b")});
    CHECK(transted_similarity(r, t1, leaf("c")) == 0.0);
}

TEST_CASE("search properties on corpus pairs")
{
    const auto &corpus = testing::corpus_statements();
    for (std::size_t i = 0; i + 1 < corpus.size(); i += 2) {
        CAPTURE(corpus[i]);
        CAPTURE(corpus[i + 1]);
        auto small = transted_text(corpus[i], corpus[i + 1], node_budget(20));
        auto large = transted_text(corpus[i], corpus[i + 1], node_budget(60));
        auto mirrored = transted_text(corpus[i + 1], corpus[i], node_budget(60));
        CHECK(small.distance <= small.initial_distance);
        CHECK(large.distance <= small.distance);
        CHECK(mirrored.distance == large.distance);
        CHECK(mirrored.trace == large.trace);
        CHECK(mirrored.expanded == large.expanded);
        if (large.proved_equal)
            CHECK(large.distance == 0);
        auto again = transted_text(corpus[i], corpus[i + 1], node_budget(60));
        CHECK(again.trace == large.trace);
        CHECK(again.distance == large.distance);
    }
}

TEST_CASE("pattern rules preserve meaning on random instances")
{
    Evaluator ev;
    std::mt19937_64 rng(5);
    const std::vector<std::string> numeric{"x", "y", "1", "2", "x + 1", "-y", "x * y"};
    const std::vector<std::string> props{"x < y", "x = 1", "y ≠ 0", "x ≤ 2", "¬ x = y", "x > 0 ∧ y < 1"};
    for (const auto &r : RuleLibrary::shipped().rules()) {
        if (r.builtin != Builtin::None)
            continue;
        CAPTURE(r.name);
        // fill metavariables with numeric or propositional terms
        for (const bool logical : {false, true}) {
            for (int trial = 0; trial < 20; ++trial) {
                Bindings b;
                for (const auto &v : metavariables(r.lhs)) {
                    const auto &pool = logical ? props : numeric;
                    b[v] = expr_to_opt(parse_expression(pool[rng() % pool.size()]));
                }
                const OperatorTree before = instantiate(r.lhs, b);
                const OperatorTree after = instantiate(r.rhs, b);
                for (int x = -2; x <= 2; ++x) {
                    for (int y = -2; y <= 2; ++y) {
                        Env env{{"x", Value::number(x)}, {"y", Value::number(y)}};
                        auto v1 = ev.eval(before, env);
                        if (!v1)
                            continue; // ill-typed instance
                        auto v2 = ev.eval(after, env);
                        REQUIRE(v2);
                        CHECK(*v1 == *v2);
                    }
                }
            }
        }
    }
}

TEST_CASE("builtin rules only produce goals that imply the original")
{
    Evaluator ev;
    auto holds_everywhere = [&](const OperatorTree &g, const std::vector<std::string> &vars) -> std::optional<bool> {
        std::vector<int> vals(vars.size(), -2);
        while (true) {
            Env env;
            for (std::size_t i = 0; i < vars.size(); ++i)
                env[vars[i]] = Value::number(vals[i]);
            auto v = ev.eval(g, env);
            if (!v || v->kind != Value::Kind::Bool)
                return std::nullopt;
            if (!v->truth)
                return false;
            std::size_t i = 0;
            while (i < vals.size() && ++vals[i] > 2)
                vals[i++] = -2;
            if (i == vals.size())
                return true;
        }
    };
    struct Case
    {
        std::string rule;
        std::string l, r;
        NodePath pos;
    };
    const std::vector<Case> cases{
        {"congr-arg", "f (x + y)", "f (y + x)", {}},
        {"congr-arg", "f x", "f y", {}},
        {"forall-congr", "∀ a : A, a + x = x + a", "∀ b : A, b + x = x + b", {}},
        {"forall-congr", "∀ a : A, a < x", "∀ b : A, b ≤ x", {}},
        {"forall-congr", "∃ a : A, a * a = x", "∃ b : A, b * b = x", {}},
        {"implies-congr", "x > 0 → y > 0", "x > 0 → y ≥ 1", {}},
        {"implies-congr", "x > 1 → y = 0", "x ≥ 2 → y = 0", {}},
        {"forall-swap", "∀ a : A, ∀ b : B, a < b ∨ b ≤ a", "True", {0}},
        {"let-inline", "let z := x + 1; z * z", "(x + 1) * (x + 1)", {0}},
    };
    for (const auto &c : cases) {
        CAPTURE(c.rule);
        CAPTURE(c.l);
        auto g = goal(c.l, c.r);
        auto next = apply_rule(rule(c.rule), g, c.pos);
        REQUIRE(next);
        auto new_truth = holds_everywhere(*next, {"x", "y", "a"});
        auto old_truth = holds_everywhere(g, {"x", "y", "a"});
        REQUIRE(new_truth);
        REQUIRE(old_truth);
        if (*new_truth)
            CHECK(*old_truth);
    }
}
