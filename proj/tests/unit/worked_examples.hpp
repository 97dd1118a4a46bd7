#pragma once

namespace stmtsim::testing {

struct StatementPair
{
    const char *id;
    const char *label;
    const char *prediction;
};

inline constexpr StatementPair kExercise{
    "exercise_1_1b",
    "theorem exercise_1_1b (x : ℝ) (y : ℚ) (h : y ≠ 0) : ( Irrational x ) -> Irrational ( x * y ) := by sorry",
    "theorem mul_rat_tac_11959 (r : ℚ) (x : ℝ) (h : Irrational x) (hr : r ≠ 0) : Irrational (r * x) := by sorry",
};

inline constexpr StatementPair kMathd{
    "mathd_algebra_142",
    "theorem mathd_algebra_142 (m b : ℝ) (h₀ : m * 7 + b = -1) (h₁ : m * -1 + b = 7) : m + b = 5 := by sorry",
    "theorem my_favorite_theorem : let B : ℝ × ℝ := (7, -1); let C : ℝ × ℝ := (-1, 7); ∀ m b : ℝ, (B.2 = m * B.1 "
    "+ b ∧ C.2 = m * C.1 + b) → m + b = 5  := by sorry",
};

} // namespace stmtsim::testing
