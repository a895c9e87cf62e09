#pragma once

#include <string>

#include "ftau/normal_form.hpp"

namespace ftau {

// Image in the abelianisation Z^2 (+) Z/2, written in the basis (x1-bar,
// y0-bar, z-bar) with x0-bar = 2 y0-bar - x1-bar eliminated and
// z-bar = x1-bar - y1-bar the order-two class.
struct AbelianImage {
    std::int64_t c_x1 = 0;
    std::int64_t c_y0 = 0;
    int c_z = 0;  // mod 2

    friend bool operator==(const AbelianImage&, const AbelianImage&) = default;

    AbelianImage operator+(const AbelianImage& o) const {
        return {c_x1 + o.c_x1, c_y0 + o.c_y0, (c_z + o.c_z) & 1};
    }

    bool is_zero() const { return c_x1 == 0 && c_y0 == 0 && c_z == 0; }

    std::string str() const {
        return "(" + std::to_string(c_x1) + ", " + std::to_string(c_y0) + ", " +
               std::to_string(c_z) + ")";
    }
};

// Exponent sums pushed through the relations 2 y0 = x0 + x1 and 2 y1 = 2 x1:
// every x_i with i >= 1 lands on x1-bar and every y_i with i >= 1 on
// y1-bar = x1-bar - z-bar.
inline AbelianImage abelianise(const Word& w) {
    std::int64_t a0 = 0, a1 = 0, b0 = 0, b1 = 0;
    for (const Generator& g : w) {
        std::int64_t e = g.exponent;
        if (g.family == Family::x)
            (g.index == 0 ? a0 : a1) += e;
        else
            (g.index == 0 ? b0 : b1) += e;
    }
    return {-a0 + a1 + b1, 2 * a0 + b0, static_cast<int>(((b1 % 2) + 2) % 2)};
}

// ---------------------------------------------------------------------------
// Caret census of a diagram (both trees need all-x right spines). Left carets
// hang on the chain of left children from the root, right carets on the chain
// of right children; the root counts as a right caret.

struct TreeCensus {
    int interior_x = 0;  // n_i
    int interior_y = 0;  // m_i
    int left_x = 0;      // r_i
    int left_y = 0;      // s_i
};

struct CaretCensus {
    TreeCensus source;  // T1
    TreeCensus target;  // T2
};

namespace detail {

inline TreeCensus census_tree(const Tree& t) {
    for (const Tree* cur = &t; !is_leaf(*cur); cur = &(*cur)->right)
        if ((*cur)->type != CaretType::x)
            throw SpineNotNormalized("census requires an all-x right spine");
    TreeCensus c;
    // all_l / all_r: reached from the root by left-only / right-only edges.
    // The root carries both and lands on the right chain.
    auto rec = [&](auto&& self, const Tree& u, bool all_l, bool all_r) -> void {
        if (is_leaf(u)) return;
        bool is_x = u->type == CaretType::x;
        if (!all_r) {
            if (all_l)
                ++(is_x ? c.left_x : c.left_y);
            else
                ++(is_x ? c.interior_x : c.interior_y);
        }
        self(self, u->left, all_l, false);
        self(self, u->right, false, all_r);
    };
    rec(rec, t, true, true);
    return c;
}

} // namespace detail

inline CaretCensus census(const Element& g) {
    return {detail::census_tree(g.source), detail::census_tree(g.target)};
}

// Commutator-subgroup membership read off the diagram: equal leftmost and
// rightmost leaf levels (identity near 0 and 1) and even totals for the
// x1-bar and y1-bar exponents.
inline bool in_commutator(const Element& g) {
    CaretCensus c = census(g);
    if (leftmost_leaf_level(g.source) != leftmost_leaf_level(g.target)) return false;
    if (rightmost_leaf_level(g.source) != rightmost_leaf_level(g.target)) return false;
    int x1_total = c.source.interior_x + c.source.left_x + c.target.interior_x + c.target.left_x;
    int y1_total = c.source.interior_y + c.target.interior_y;
    return x1_total % 2 == 0 && y1_total % 2 == 0;
}

} // namespace ftau
