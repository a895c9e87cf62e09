#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ftau/ztau.hpp"

namespace ftau {

struct InvalidMove : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CaretType : std::uint8_t { x, y };

inline CaretType flip(CaretType t) { return t == CaretType::x ? CaretType::y : CaretType::x; }

// Binary tree over the tau-subdivision of an interval. A null Tree is a leaf.
// An x-caret splits a level-k interval into tau^{k+2} (left) and tau^{k+1}
// (right) pieces; a y-caret splits it the other way round.
struct TreeNode;
using Tree = std::shared_ptr<const TreeNode>;

struct TreeNode {
    CaretType type;
    Tree left;
    Tree right;
};

inline Tree leaf() { return nullptr; }
inline bool is_leaf(const Tree& t) { return t == nullptr; }

inline Tree caret(CaretType type, Tree left, Tree right) {
    return std::make_shared<const TreeNode>(TreeNode{type, std::move(left), std::move(right)});
}
inline Tree x_caret(Tree l = nullptr, Tree r = nullptr) {
    return caret(CaretType::x, std::move(l), std::move(r));
}
inline Tree y_caret(Tree l = nullptr, Tree r = nullptr) {
    return caret(CaretType::y, std::move(l), std::move(r));
}

inline int caret_count(const Tree& t) {
    if (is_leaf(t)) return 0;
    return 1 + caret_count(t->left) + caret_count(t->right);
}

inline int leaf_count(const Tree& t) { return caret_count(t) + 1; }

inline bool equal_trees(const Tree& s, const Tree& t) {
    if (s == t) return true;
    if (is_leaf(s) || is_leaf(t)) return false;
    return s->type == t->type && equal_trees(s->left, t->left) && equal_trees(s->right, t->right);
}

// Child levels relative to a node at level k: x-caret puts its left child at
// k+2 and right child at k+1, a y-caret mirrors that.
inline int left_child_level(CaretType t, int k) { return t == CaretType::x ? k + 2 : k + 1; }
inline int right_child_level(CaretType t, int k) { return t == CaretType::x ? k + 1 : k + 2; }

inline int leftmost_leaf_level(const Tree& t, int level = 0) {
    if (is_leaf(t)) return level;
    return leftmost_leaf_level(t->left, left_child_level(t->type, level));
}

inline int rightmost_leaf_level(const Tree& t, int level = 0) {
    if (is_leaf(t)) return level;
    return rightmost_leaf_level(t->right, right_child_level(t->type, level));
}

// ---------------------------------------------------------------------------
// Text form: "." for a leaf, "x(T,T)" / "y(T,T)" for carets.

inline void print_tree(const Tree& t, std::string& out) {
    if (is_leaf(t)) {
        out += '.';
        return;
    }
    out += t->type == CaretType::x ? 'x' : 'y';
    out += '(';
    print_tree(t->left, out);
    out += ',';
    print_tree(t->right, out);
    out += ')';
}

inline std::string tree_str(const Tree& t) {
    std::string out;
    print_tree(t, out);
    return out;
}

namespace detail {
inline Tree parse_tree_at(std::string_view text, std::size_t& i, int depth = 0) {
    if (depth > 10000) throw ParseError(i, "tree nested less than 10000 deep");
    if (i >= text.size()) throw ParseError(i, "'.', 'x' or 'y'");
    char c = text[i];
    if (c == '.') {
        ++i;
        return leaf();
    }
    if (c != 'x' && c != 'y') throw ParseError(i, "'.', 'x' or 'y'");
    CaretType type = c == 'x' ? CaretType::x : CaretType::y;
    ++i;
    if (i >= text.size() || text[i] != '(') throw ParseError(i, "'('");
    ++i;
    Tree l = parse_tree_at(text, i, depth + 1);
    if (i >= text.size() || text[i] != ',') throw ParseError(i, "','");
    ++i;
    Tree r = parse_tree_at(text, i, depth + 1);
    if (i >= text.size() || text[i] != ')') throw ParseError(i, "')'");
    ++i;
    return caret(type, std::move(l), std::move(r));
}
} // namespace detail

inline Tree parse_tree(std::string_view text) {
    std::size_t i = 0;
    Tree t = detail::parse_tree_at(text, i);
    if (i != text.size()) throw ParseError(i, "end of tree");
    return t;
}

// ---------------------------------------------------------------------------
// Node paths: strings over {L,R} from the root.

inline const TreeNode* node_at(const Tree& t, std::string_view path) {
    const Tree* cur = &t;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (is_leaf(*cur)) throw InvalidMove("path runs past a leaf at offset " + std::to_string(i));
        char c = path[i];
        if (c == 'L')
            cur = &(*cur)->left;
        else if (c == 'R')
            cur = &(*cur)->right;
        else
            throw ParseError(i, "'L' or 'R'");
    }
    if (is_leaf(*cur)) throw InvalidMove("path addresses a leaf, not a caret");
    return cur->get();
}

inline Tree replace_at(const Tree& t, std::string_view path, Tree replacement) {
    if (path.empty()) return replacement;
    if (is_leaf(t)) throw InvalidMove("path runs past a leaf");
    char c = path[0];
    if (c == 'L') return caret(t->type, replace_at(t->left, path.substr(1), std::move(replacement)), t->right);
    if (c == 'R') return caret(t->type, t->left, replace_at(t->right, path.substr(1), std::move(replacement)));
    throw ParseError(0, "'L' or 'R'");
}

// Path (over {L,R}) from the root to leaf number `index`.
inline std::string leaf_path(const Tree& t, int index) {
    std::string path;
    const Tree* cur = &t;
    int i = index;
    while (!is_leaf(*cur)) {
        int nl = leaf_count((*cur)->left);
        if (i < nl) {
            path += 'L';
            cur = &(*cur)->left;
        } else {
            path += 'R';
            i -= nl;
            cur = &(*cur)->right;
        }
    }
    if (i != 0) throw std::out_of_range("leaf index out of range");
    return path;
}

// Replace leaf number `index` by the given subtree.
inline Tree graft_at_leaf(const Tree& t, int index, const Tree& graft) {
    if (is_leaf(t)) {
        if (index != 0) throw std::out_of_range("leaf index out of range");
        return graft;
    }
    int nl = leaf_count(t->left);
    if (index < nl) return caret(t->type, graft_at_leaf(t->left, index, graft), t->right);
    return caret(t->type, t->left, graft_at_leaf(t->right, index - nl, graft));
}

// Replace leaf j by grafts[j] for every leaf at once.
inline Tree graft_all(const Tree& t, const std::vector<Tree>& grafts) {
    int next = 0;
    auto rec = [&](auto&& self, const Tree& u) -> Tree {
        if (is_leaf(u)) return grafts[static_cast<std::size_t>(next++)];
        Tree l = self(self, u->left);
        Tree r = self(self, u->right);
        return caret(u->type, std::move(l), std::move(r));
    };
    if (grafts.size() != static_cast<std::size_t>(leaf_count(t)))
        throw std::invalid_argument("graft_all: one graft per leaf required");
    return rec(rec, t);
}

// ---------------------------------------------------------------------------
// Partition of [0,1] induced by a tree. Interval j has length tau^{levels[j]}.

struct Partition {
    std::vector<ZTau> breakpoints;  // size = leaves + 1, from 0 to 1
    std::vector<int> levels;        // size = leaves

    friend bool operator==(const Partition&, const Partition&) = default;
};

namespace detail {
inline void sweep_partition(const Tree& t, int level, ZTau offset, Partition& out) {
    if (is_leaf(t)) {
        out.breakpoints.push_back(offset);
        out.levels.push_back(level);
        return;
    }
    sweep_partition(t->left, left_child_level(t->type, level), offset, out);
    ZTau split = offset + tau_pow(left_child_level(t->type, level));
    sweep_partition(t->right, right_child_level(t->type, level), split, out);
}
} // namespace detail

inline Partition tree_partition(const Tree& t) {
    Partition p;
    detail::sweep_partition(t, 0, ZTau::zero(), p);
    p.breakpoints.push_back(ZTau::one());
    return p;
}

inline std::string partition_str(const Partition& p) {
    std::string out;
    for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
        if (i) out += ", ";
        out += "(" + p.breakpoints[i].str() + ")";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Basic move: x(A, x(B, C)) <-> y(y(A, B), C). Both sides give the same
// subdivision (the split points are tau^{k+2} and tau^{k+1} in either order).

inline bool basic_move_applies(const TreeNode* n) {
    if (n->type == CaretType::x)
        return !is_leaf(n->right) && n->right->type == CaretType::x;
    return !is_leaf(n->left) && n->left->type == CaretType::y;
}

namespace detail {
inline Tree basic_move_node(const TreeNode* n) {
    if (n->type == CaretType::x) {
        if (is_leaf(n->right) || n->right->type != CaretType::x)
            throw InvalidMove("basic move needs x(A, x(B, C)) or y(y(A, B), C)");
        return y_caret(y_caret(n->left, n->right->left), n->right->right);
    }
    if (is_leaf(n->left) || n->left->type != CaretType::y)
        throw InvalidMove("basic move needs x(A, x(B, C)) or y(y(A, B), C)");
    return x_caret(n->left->left, x_caret(n->left->right, n->right));
}
} // namespace detail

inline Tree apply_basic_move(const Tree& t, std::string_view path) {
    const TreeNode* n = node_at(t, path);
    return replace_at(t, path, detail::basic_move_node(n));
}

// ---------------------------------------------------------------------------
// Caret switching (adds at most one caret, refines the partition).
// Descend short-side children while the type alternates; at the bottom either
// a basic move applies directly or one caret of the bottom type is added.

namespace detail {
inline Tree switch_subtree_root(const Tree& t) {
    CaretType ct = t->type;
    const Tree& short_child = ct == CaretType::x ? t->right : t->left;
    Tree prepared;
    if (is_leaf(short_child)) {
        prepared = caret(ct, leaf(), leaf());
    } else if (short_child->type == ct) {
        prepared = short_child;
    } else {
        prepared = switch_subtree_root(short_child);
    }
    const TreeNode with{ct, ct == CaretType::x ? t->left : prepared,
                        ct == CaretType::x ? prepared : t->right};
    return basic_move_node(&with);
}
} // namespace detail

inline Tree switch_caret_type(const Tree& t, std::string_view path) {
    const TreeNode* n = node_at(t, path);
    Tree sub(t, n);  // aliasing share of the addressed subtree
    return replace_at(t, path, detail::switch_subtree_root(sub));
}

// ---------------------------------------------------------------------------
// Canonical x-biased form: rewrite y(y(A,B),C) -> x(A,x(B,C)) bottom-up until
// no occurrence remains. Partition-preserving; each rewrite removes two
// y-carets, so one post-order pass reaches the fixpoint.

inline Tree canonical_x_form(const Tree& t) {
    if (is_leaf(t)) return t;
    Tree l = canonical_x_form(t->left);
    Tree r = canonical_x_form(t->right);
    if (t->type == CaretType::y && !is_leaf(l) && l->type == CaretType::y)
        return x_caret(l->left, x_caret(l->right, std::move(r)));
    return caret(t->type, std::move(l), std::move(r));
}

// ---------------------------------------------------------------------------
// Common refinement (Prop. 2.1). Walk both trees from the root; on a type
// mismatch switch the first tree's caret to match the second, on a leaf graft
// the other side's remaining subtree. Besides the refined tree itself, the
// per-leaf grafts are returned so tree-pair diagrams can carry the added
// carets over to their partner trees.

struct Refinement {
    Tree common;                 // partition contains both input partitions
    std::vector<Tree> grafts1;   // one per leaf of t1
    std::vector<Tree> grafts2;   // one per leaf of t2
};

namespace detail {

inline std::vector<Tree> leaf_grafts(const Tree& t) {
    return std::vector<Tree>(static_cast<std::size_t>(leaf_count(t)), leaf());
}

// Grafts describing `switched` as an extension of `before`. Both trees give
// the same partition except for at most one extra breakpoint (Lemma 2.3),
// which shows up as a single caret grafted on the leaf whose interval it
// splits.
inline std::vector<Tree> switch_grafts(const Tree& before, const Tree& switched) {
    Partition pb = tree_partition(before);
    Partition ps = tree_partition(switched);
    std::vector<Tree> grafts = leaf_grafts(before);
    if (pb.breakpoints.size() == ps.breakpoints.size()) return grafts;
    if (ps.breakpoints.size() != pb.breakpoints.size() + 1)
        throw std::logic_error("switch added more than one caret");
    std::size_t j = 0;
    while (j + 1 < ps.breakpoints.size() && pb.breakpoints[j] == ps.breakpoints[j]) ++j;
    // Extra breakpoint sits inside interval j-1 of `before`.
    std::size_t interval = j - 1;
    ZTau offset = ps.breakpoints[j] - pb.breakpoints[interval];
    int level = pb.levels[interval];
    if (offset == tau_pow(level + 2))
        grafts[interval] = x_caret();
    else if (offset == tau_pow(level + 1))
        grafts[interval] = y_caret();
    else
        throw std::logic_error("switch breakpoint is not a single caret split");
    return grafts;
}

// Replace each leaf of `base` by a graft, where `fine` lists one graft per
// leaf of the already-grafted tree (so a two-leaf graft consumes two entries).
inline std::vector<Tree> compose_grafts(const std::vector<Tree>& base, const std::vector<Tree>& fine) {
    std::vector<Tree> out;
    out.reserve(base.size());
    std::size_t k = 0;
    for (const Tree& g : base) {
        int nl = leaf_count(g);
        std::vector<Tree> slice(fine.begin() + static_cast<std::ptrdiff_t>(k),
                                fine.begin() + static_cast<std::ptrdiff_t>(k + nl));
        k += static_cast<std::size_t>(nl);
        out.push_back(graft_all(g, slice));
    }
    if (k != fine.size()) throw std::logic_error("graft composition mismatch");
    return out;
}

inline Refinement refine_rec(const Tree& t1, const Tree& t2) {
    if (is_leaf(t1)) {
        Refinement r;
        r.common = t2;
        r.grafts1 = {t2};
        r.grafts2 = leaf_grafts(t2);
        return r;
    }
    if (is_leaf(t2)) {
        Refinement r;
        r.common = t1;
        r.grafts1 = leaf_grafts(t1);
        r.grafts2 = {t1};
        return r;
    }
    if (t1->type == t2->type) {
        Refinement l = refine_rec(t1->left, t2->left);
        Refinement r = refine_rec(t1->right, t2->right);
        Refinement out;
        out.common = caret(t1->type, l.common, r.common);
        out.grafts1 = std::move(l.grafts1);
        out.grafts1.insert(out.grafts1.end(), r.grafts1.begin(), r.grafts1.end());
        out.grafts2 = std::move(l.grafts2);
        out.grafts2.insert(out.grafts2.end(), r.grafts2.begin(), r.grafts2.end());
        return out;
    }
    // Root types disagree: switch t1's root to t2's type, record the at most
    // one caret this adds, then recurse with aligned roots.
    Tree switched = switch_subtree_root(t1);
    std::vector<Tree> pre = switch_grafts(t1, switched);
    Refinement l = refine_rec(switched->left, t2->left);
    Refinement r = refine_rec(switched->right, t2->right);
    Refinement out;
    out.common = caret(t2->type, l.common, r.common);
    std::vector<Tree> fine = std::move(l.grafts1);
    fine.insert(fine.end(), r.grafts1.begin(), r.grafts1.end());
    out.grafts1 = compose_grafts(pre, fine);
    out.grafts2 = std::move(l.grafts2);
    out.grafts2.insert(out.grafts2.end(), r.grafts2.begin(), r.grafts2.end());
    return out;
}

} // namespace detail

inline Refinement common_refinement(const Tree& t1, const Tree& t2) {
    return detail::refine_rec(t1, t2);
}

// The spec-facing pair view: both results carry the same partition and extend
// their respective inputs by grafts only.
inline std::pair<Tree, Tree> common_refinement_pair(const Tree& t1, const Tree& t2) {
    Refinement r = common_refinement(t1, t2);
    return {graft_all(t1, r.grafts1), graft_all(t2, r.grafts2)};
}

// ---------------------------------------------------------------------------
// Reconstruct a tree realizing exactly the given partition, if one exists.
// Backtracking over the two split choices per interval, with a probe budget;
// not every level-valid partition is realizable.

namespace detail {

inline std::optional<Tree> partition_search(const Partition& p, std::size_t lo, std::size_t hi,
                                            int level, long& budget) {
    if (--budget < 0) throw std::runtime_error("tree_from_partition: probe budget exhausted");
    if (hi - lo == 1) {
        if (p.levels[lo] != level) return std::nullopt;
        return Tree(nullptr);
    }
    for (CaretType type : {CaretType::x, CaretType::y}) {
        ZTau split = p.breakpoints[lo] + tau_pow(left_child_level(type, level));
        // Binary search for the split among the interior breakpoints.
        std::size_t a = lo + 1, b = hi;
        while (a < b) {
            std::size_t mid = (a + b) / 2;
            if (p.breakpoints[mid] < split)
                a = mid + 1;
            else
                b = mid;
        }
        if (a >= hi || !(p.breakpoints[a] == split)) continue;
        std::optional<Tree> l = partition_search(p, lo, a, left_child_level(type, level), budget);
        if (!l) continue;
        std::optional<Tree> r = partition_search(p, a, hi, right_child_level(type, level), budget);
        if (!r) continue;
        return caret(type, std::move(*l), std::move(*r));
    }
    return std::nullopt;
}

} // namespace detail

inline std::optional<Tree> tree_from_partition(const Partition& p, long budget = 1000000) {
    if (p.breakpoints.size() != p.levels.size() + 1 || p.levels.empty()) return std::nullopt;
    if (!(p.breakpoints.front() == ZTau::zero()) || !(p.breakpoints.back() == ZTau::one()))
        return std::nullopt;
    return detail::partition_search(p, 0, p.levels.size(), 0, budget);
}

} // namespace ftau
