#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ftau/word.hpp"

namespace ftau {

struct SpineNotNormalized : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Leaf index of the first leaf of the subtree addressed by `path`.
inline int leaf_offset(const Tree& t, std::string_view path) {
    int offset = 0;
    const Tree* cur = &t;
    for (char c : path) {
        if (c == 'R') offset += leaf_count((*cur)->left);
        cur = c == 'L' ? &(*cur)->left : &(*cur)->right;
    }
    return offset;
}

// Rightmost (then deepest) y-caret whose left child is a caret.
inline std::optional<std::string> find_pushable_y(const Tree& t) {
    std::optional<std::string> best;
    int best_offset = -1;
    std::string path;
    auto rec = [&](auto&& self, const Tree& u, int offset) -> void {
        if (is_leaf(u)) return;
        if (u->type == CaretType::y && !is_leaf(u->left) && offset >= best_offset) {
            best_offset = offset;
            best = path;
        }
        path += 'L';
        self(self, u->left, offset);
        path.back() = 'R';
        self(self, u->right, offset + leaf_count(u->left));
        path.pop_back();
    };
    rec(rec, t, 0);
    return best;
}

inline std::optional<std::string> find_any_y(const Tree& t) {
    std::string path;
    std::optional<std::string> found;
    auto rec = [&](auto&& self, const Tree& u) -> void {
        if (is_leaf(u) || found) return;
        if (u->type == CaretType::y) {
            found = path;
            return;
        }
        path += 'L';
        self(self, u->left);
        path.back() = 'R';
        self(self, u->right);
        path.pop_back();
    };
    rec(rec, t);
    return found;
}

// Switch every y-caret on the right spines to x-type (pair-level, so added
// carets are mirrored on the partner tree).
inline Element xify_spines(Element g) {
    for (bool in_target : {false, true}) {
        std::string path;
        for (;;) {
            const Tree& t = in_target ? g.target : g.source;
            const Tree* cur = &t;
            for (char c : path) cur = c == 'L' ? &(*cur)->left : &(*cur)->right;
            if (is_leaf(*cur)) break;
            if ((*cur)->type == CaretType::y)
                g = in_target ? switch_caret_in_target(g, path) : switch_caret_in_source(g, path);
            path += 'R';
        }
    }
    return g;
}

// One caret-pushing step at the pushable y-caret `path` (Figure 10; Figure 11
// variant when only x-carets may be added). Preconditions: the node is a
// y-caret whose left child is a caret, and in the y(x(A, y(D,B)), C) case D
// is a leaf.
template <bool InTarget>
inline Element push_y_step(Element g, const std::string& path, bool x_adds_only) {
    const Tree& t = InTarget ? g.target : g.source;
    auto bm = [&](Element e, const std::string& p) {
        return InTarget ? basic_move_target(e, p) : basic_move_source(e, p);
    };
    const TreeNode* v = node_at(t, path);
    const Tree& l = v->left;
    if (l->type == CaretType::y) return bm(std::move(g), path);
    const Tree& r = l->right;
    if (is_leaf(r)) {
        int j = leaf_offset(t, path + "LR");
        g = add_caret_pair(g, j, CaretType::x);
        g = bm(std::move(g), path + "L");
        return bm(std::move(g), path);
    }
    if (r->type == CaretType::x) {
        g = bm(std::move(g), path + "L");
        return bm(std::move(g), path);
    }
    if (!is_leaf(r->left)) throw std::logic_error("push_y_step: inner y-caret still has a left child");
    if (!x_adds_only) {
        int j = leaf_offset(t, path + "LR");
        g = add_caret_pair(g, j, CaretType::y);
        g = bm(std::move(g), path + "LR");
        g = bm(std::move(g), path + "L");
        return bm(std::move(g), path);
    }
    int j = leaf_offset(t, path + "LR");
    g = add_caret_pair(g, j, CaretType::x);
    g = add_caret_pair(g, j + 1, CaretType::x);
    g = bm(std::move(g), path + "LRL");
    g = bm(std::move(g), path + "LR");
    g = bm(std::move(g), path + "L");
    return bm(std::move(g), path);
}

template <bool InTarget>
inline Element push_down_all_y(Element g, bool x_adds_only) {
    long guard = 1000000;
    for (;;) {
        const Tree& t = InTarget ? g.target : g.source;
        std::optional<std::string> path = find_pushable_y(t);
        if (!path) return g;
        g = push_y_step<InTarget>(std::move(g), *path, x_adds_only);
        if (--guard == 0) throw std::logic_error("push_down_all_y did not terminate");
    }
}

// Remove each bottom y-caret of the target by adding a matched y-caret pair
// and performing a basic move.
inline Element eliminate_target_y(Element g) {
    long guard = 1000000;
    for (;;) {
        std::optional<std::string> path = find_any_y(g.target);
        if (!path) return g;
        const TreeNode* v = node_at(g.target, *path);
        if (!is_leaf(v->left)) throw std::logic_error("eliminate_target_y: y-caret has a left child");
        int j = leaf_offset(g.target, *path + "L");
        g = add_caret_pair(g, j, CaretType::y);
        g = basic_move_target(g, *path);
        if (--guard == 0) throw std::logic_error("eliminate_target_y did not terminate");
    }
}

} // namespace detail

// The Lemma 6.1 shape of a tree pair: all-x right spines, a y-free target,
// and source y-carets with no left children. Represents the same element.
inline Element seminormal_diagram(const Element& g) {
    Element e = detail::xify_spines(g);
    e = detail::push_down_all_y<true>(std::move(e), /*x_adds_only=*/false);
    e = detail::eliminate_target_y(std::move(e));
    e = detail::push_down_all_y<false>(std::move(e), /*x_adds_only=*/true);
    return e;
}

// ---------------------------------------------------------------------------
// Leaf exponents. The chain of carets read at leaf i consists of the
// non-spine carets whose leftmost leaf is leaf i; a y-caret can only sit at
// the bottom of such a chain once the diagram is in Lemma 6.1 shape.

struct LeafExponents {
    std::vector<int> x;  // number of x-carets in the chain at leaf i
    std::vector<int> y;  // number of y-carets (0 or 1 in seminormal shape)
};

inline LeafExponents leaf_exponents(const Tree& t) {
    LeafExponents out;
    out.x.assign(static_cast<std::size_t>(leaf_count(t)), 0);
    out.y.assign(out.x.size(), 0);
    auto rec = [&](auto&& self, const Tree& u, int offset, bool on_spine) -> void {
        if (is_leaf(u)) return;
        if (!on_spine) {
            if (u->type == CaretType::x)
                ++out.x[static_cast<std::size_t>(offset)];
            else
                ++out.y[static_cast<std::size_t>(offset)];
        }
        self(self, u->left, offset, false);
        self(self, u->right, offset + leaf_count(u->left), on_spine);
    };
    rec(rec, t, 0, true);
    return out;
}

// Read the seminormal word off a Lemma 6.1 diagram: positive part from the
// source by leaf exponents, negative part from the target as in F.
inline Word read_seminormal(const Element& g) {
    auto check_spine = [](const Tree& t) {
        for (const Tree* cur = &t; !is_leaf(*cur); cur = &(*cur)->right)
            if ((*cur)->type != CaretType::x)
                throw SpineNotNormalized("right spine carries a y-caret");
    };
    check_spine(g.source);
    check_spine(g.target);
    auto check_bottom_y = [](auto&& self, const Tree& t) -> void {
        if (is_leaf(t)) return;
        if (t->type == CaretType::y && !is_leaf(t->left))
            throw std::logic_error("read_seminormal: y-caret with a left child");
        self(self, t->left);
        self(self, t->right);
    };
    check_bottom_y(check_bottom_y, g.source);
    LeafExponents pos = leaf_exponents(g.source);
    LeafExponents neg = leaf_exponents(g.target);
    Word w;
    for (std::size_t i = 0; i < pos.x.size(); ++i) {
        for (int k = 0; k < pos.x[i]; ++k) w.push_back({Family::x, static_cast<int>(i), 1});
        if (pos.y[i] > 1) throw std::logic_error("read_seminormal: doubled y-caret in a chain");
        if (pos.y[i] == 1) w.push_back({Family::y, static_cast<int>(i), 1});
    }
    for (std::size_t ri = neg.x.size(); ri-- > 0;) {
        if (neg.y[ri] != 0) throw std::logic_error("read_seminormal: y-caret in the target tree");
        for (int k = 0; k < neg.x[ri]; ++k) w.push_back({Family::x, static_cast<int>(ri), -1});
    }
    return w;
}

inline Word to_seminormal(const Element& g) { return read_seminormal(seminormal_diagram(g)); }

// ---------------------------------------------------------------------------
// Normal form: seminormal exponent table with no exposed cancellations (R1)
// and no hidden cancellations (R2) left.

struct NormalFormWord {
    std::vector<int> a;    // positive x-exponents, a[i] >= 0
    std::vector<int> eps;  // y-exponents, 0 or 1
    std::vector<int> b;    // negative x-exponents, b[i] >= 0

    friend bool operator==(const NormalFormWord&, const NormalFormWord&) = default;

    int at(const std::vector<int>& v, std::size_t i) const { return i < v.size() ? v[i] : 0; }

    // Highest index carrying a positive (resp. negative) generator; -1 if the
    // part is empty. Empty parts contribute 0 to the metric formula.
    int n() const {
        for (std::size_t i = std::max(a.size(), eps.size()); i-- > 0;)
            if (at(a, i) + at(eps, i) > 0) return static_cast<int>(i);
        return -1;
    }
    int m() const {
        for (std::size_t i = b.size(); i-- > 0;)
            if (b[i] > 0) return static_cast<int>(i);
        return -1;
    }

    bool is_identity() const { return n() < 0 && m() < 0; }

    Word to_word() const {
        Word w;
        std::size_t top = std::max({a.size(), eps.size(), b.size()});
        for (std::size_t i = 0; i < top; ++i) {
            for (int k = 0; k < at(a, i); ++k) w.push_back({Family::x, static_cast<int>(i), 1});
            if (at(eps, i)) w.push_back({Family::y, static_cast<int>(i), 1});
        }
        for (std::size_t ri = top; ri-- > 0;)
            for (int k = 0; k < at(b, ri); ++k) w.push_back({Family::x, static_cast<int>(ri), -1});
        return w;
    }

    std::string str() const { return word_str(to_word()); }
};

namespace detail {

inline NormalFormWord table_from_seminormal(const Word& w) {
    NormalFormWord nf;
    auto bump = [](std::vector<int>& v, int i, int by) {
        if (v.size() <= static_cast<std::size_t>(i)) v.resize(static_cast<std::size_t>(i) + 1, 0);
        v[static_cast<std::size_t>(i)] += by;
    };
    int last_pos = -1;
    bool seen_neg = false;
    int last_neg = std::numeric_limits<int>::max();
    for (const Generator& g : w) {
        if (g.exponent > 0) {
            if (seen_neg || g.index < last_pos) throw std::logic_error("word is not seminormal");
            if (g.family == Family::x) {
                if (g.index == last_pos && nf.at(nf.eps, static_cast<std::size_t>(g.index)))
                    throw std::logic_error("word is not seminormal");
                bump(nf.a, g.index, 1);
            } else {
                bump(nf.eps, g.index, 1);
                if (nf.eps[static_cast<std::size_t>(g.index)] > 1)
                    throw std::logic_error("word is not seminormal");
            }
            last_pos = g.index;
        } else {
            if (g.family != Family::x || g.index > last_neg)
                throw std::logic_error("word is not seminormal");
            bump(nf.b, g.index, 1);
            seen_neg = true;
            last_neg = g.index;
        }
    }
    return nf;
}

inline void pad_to(NormalFormWord& nf, std::size_t size) {
    nf.a.resize(std::max(nf.a.size(), size), 0);
    nf.eps.resize(std::max(nf.eps.size(), size), 0);
    nf.b.resize(std::max(nf.b.size(), size), 0);
}

inline void erase_slot(NormalFormWord& nf, std::size_t i) {
    nf.a.erase(nf.a.begin() + static_cast<std::ptrdiff_t>(i));
    nf.eps.erase(nf.eps.begin() + static_cast<std::ptrdiff_t>(i));
    nf.b.erase(nf.b.begin() + static_cast<std::ptrdiff_t>(i));
}

inline void trim(NormalFormWord& nf) {
    while (!nf.a.empty() && nf.a.back() == 0 && nf.eps.back() == 0 && nf.b.back() == 0)
        erase_slot(nf, nf.a.size() - 1);
}

} // namespace detail

// Rewrite a seminormal table to the unique normal form. (R1) cancels matching
// x_i pairs when nothing of index i or i+1 separates them, conjugating the
// middle down by one index. (R2) collapses the hidden cancellation
// x_i y_i x_{i+2} u x_{i+1}^-1 x_i^-1 = y_i u' with u of index >= i+3, whose
// letters come down by two indices. Both strictly shorten the word.
inline NormalFormWord normal_form_of_table(NormalFormWord nf) {
    detail::pad_to(nf, nf.a.size() + 3);
    for (;;) {
        detail::pad_to(nf, std::max({nf.a.size(), nf.eps.size(), nf.b.size()}) + 3);
        bool rewrote = false;
        for (std::size_t i = 0; i + 2 < nf.a.size() && !rewrote; ++i) {
            if (nf.a[i] > 0 && nf.b[i] > 0 && nf.a[i + 1] == 0 && nf.b[i + 1] == 0 &&
                nf.eps[i] == 0 && nf.eps[i + 1] == 0) {
                --nf.a[i];
                --nf.b[i];
                detail::erase_slot(nf, i + 1);
                rewrote = true;
                break;
            }
            if (nf.a[i] >= 1 && nf.eps[i] == 1 && nf.b[i] >= 1 && nf.a[i + 1] == 0 &&
                nf.eps[i + 1] == 0 && nf.b[i + 1] == 1 && nf.a[i + 2] == 1 &&
                nf.eps[i + 2] == 0 && nf.b[i + 2] == 0) {
                --nf.a[i];
                --nf.b[i];
                nf.b[i + 1] = 0;
                nf.a[i + 2] = 0;
                detail::erase_slot(nf, i + 2);
                detail::erase_slot(nf, i + 1);
                rewrote = true;
                break;
            }
        }
        if (!rewrote) break;
    }
    detail::trim(nf);
    return nf;
}

inline NormalFormWord normalize(const Word& w) {
    Word sw = to_seminormal(word_to_element(w));
    return normal_form_of_table(detail::table_from_seminormal(sw));
}

inline NormalFormWord normalize(const Element& g) {
    return normal_form_of_table(detail::table_from_seminormal(to_seminormal(g)));
}

// ---------------------------------------------------------------------------
// The diagram of a normal form via leaf exponents: attach one caret per
// positive letter to the source, one per negative letter to the target, then
// pad the shorter spine.

namespace detail {

inline Tree attach_letters(const std::vector<std::pair<Family, int>>& letters) {
    Tree t = leaf();
    for (auto [fam, i] : letters) {
        while (leaf_count(t) < i + 2) t = graft_at_leaf(t, leaf_count(t) - 1, x_caret());
        t = graft_at_leaf(t, i, caret(fam == Family::x ? CaretType::x : CaretType::y, leaf(), leaf()));
    }
    return t;
}

} // namespace detail

inline Element normal_form_diagram(const NormalFormWord& nf) {
    std::vector<std::pair<Family, int>> pos, neg;
    std::size_t top = std::max({nf.a.size(), nf.eps.size(), nf.b.size()});
    for (std::size_t i = 0; i < top; ++i) {
        for (int k = 0; k < nf.at(nf.a, i); ++k) pos.emplace_back(Family::x, static_cast<int>(i));
        if (nf.at(nf.eps, i)) pos.emplace_back(Family::y, static_cast<int>(i));
        // negative part letters enter ascending as well; the target tree is
        // built from the magnitudes exactly like a positive x-word
        for (int k = 0; k < nf.at(nf.b, i); ++k) neg.emplace_back(Family::x, static_cast<int>(i));
    }
    Tree t1 = detail::attach_letters(pos);
    Tree t2 = detail::attach_letters(neg);
    while (leaf_count(t1) < leaf_count(t2)) t1 = graft_at_leaf(t1, leaf_count(t1) - 1, x_caret());
    while (leaf_count(t2) < leaf_count(t1)) t2 = graft_at_leaf(t2, leaf_count(t2) - 1, x_caret());
    return {std::move(t1), std::move(t2)};
}

// ---------------------------------------------------------------------------
// Presentation checker: relations (1)-(5) up to a generator index bound, plus
// the ten relators of the finite presentation.

struct RelatorCheck {
    std::string name;
    bool holds;
};

inline std::vector<RelatorCheck> check_presentation(int max_index) {
    std::vector<RelatorCheck> out;
    auto check = [&](const std::string& lhs, const std::string& rhs) {
        bool ok = equals(word_to_element(parse_word(lhs)), word_to_element(parse_word(rhs)));
        out.push_back({lhs + " = " + rhs, ok});
    };
    auto gen = [](Family f, int i) {
        return std::string(1, f == Family::x ? 'x' : 'y') + std::to_string(i);
    };
    for (int i = 0; i < max_index; ++i) {
        for (int j = i + 1; j <= max_index; ++j) {
            for (Family top : {Family::x, Family::y}) {
                for (Family bottom : {Family::x, Family::y}) {
                    check(gen(top, j) + " " + gen(bottom, i),
                          gen(bottom, i) + " " + gen(top, j + 1));
                }
            }
        }
    }
    for (int i = 0; i <= max_index; ++i)
        check(gen(Family::y, i) + " " + gen(Family::y, i),
              gen(Family::x, i) + " " + gen(Family::x, i + 1));
    return out;
}

inline std::vector<RelatorCheck> check_finite_presentation() {
    std::vector<RelatorCheck> out;
    auto check = [&](const std::string& lhs, const std::string& rhs) {
        bool ok = equals(word_to_element(parse_word(lhs)), word_to_element(parse_word(rhs)));
        out.push_back({lhs + " = " + rhs, ok});
    };
    check("x2 x1", "x1 x3");
    check("x3 x1", "x1 x4");
    check("x2 y1", "y1 x3");
    check("x3 y1", "y1 x4");
    check("y2 x1", "x1 y3");
    check("y3 x1", "x1 y4");
    check("y2 y1", "y1 y3");
    check("y3 y1", "y1 y4");
    check("y0 y0", "x0 x1");
    check("y1 y1", "x1 x2");
    return out;
}

} // namespace ftau
