#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ftau/tree.hpp"

namespace ftau {

struct OutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Group element of F_tau: a pair of trees with equal leaf counts, read as the
// PL homeomorphism sending the j-th source interval affinely onto the j-th
// target interval.
struct Element {
    Tree source;  // T1, domain subdivision
    Tree target;  // T2, range subdivision

    static Element identity() { return {leaf(), leaf()}; }
};

inline std::string element_str(const Element& g) {
    return "(" + tree_str(g.source) + " | " + tree_str(g.target) + ")";
}

inline Element parse_element(std::string_view text) {
    std::size_t i = 0, n = text.size();
    auto expect = [&](char c) {
        if (i >= n || text[i] != c) throw ParseError(i, std::string("'") + c + "'");
        ++i;
    };
    auto skip_ws = [&] { while (i < n && text[i] == ' ') ++i; };
    expect('(');
    skip_ws();
    Tree src = detail::parse_tree_at(text, i);
    skip_ws();
    expect('|');
    skip_ws();
    Tree tgt = detail::parse_tree_at(text, i);
    skip_ws();
    expect(')');
    if (i != n) throw ParseError(i, "end of element");
    if (leaf_count(src) != leaf_count(tgt)) throw ParseError(0, "trees with equal leaf counts");
    return {std::move(src), std::move(tgt)};
}

// Left-to-right composition: multiply(g, h) applies g first, then h. The
// common refinement of g's target and h's source dictates which carets get
// carried over to g's source and h's target.
inline Element multiply(const Element& g, const Element& h) {
    Refinement r = common_refinement(g.target, h.source);
    return {graft_all(g.source, r.grafts1), graft_all(h.target, r.grafts2)};
}

inline Element invert(const Element& g) { return {g.target, g.source}; }

// Exact evaluation: locate p in the source partition, map affinely onto the
// matching target interval with slope tau^{target level - source level}.
inline ZTau eval(const Element& g, const ZTau& p) {
    if (sign(p) == Sign::negative || sign(p - ZTau::one()) == Sign::positive)
        throw OutOfRange("eval: point outside [0,1]");
    Partition src = tree_partition(g.source);
    Partition tgt = tree_partition(g.target);
    std::size_t j = src.levels.size() - 1;
    while (j > 0 && p < src.breakpoints[j]) --j;
    return tgt.breakpoints[j] + tau_pow(tgt.levels[j] - src.levels[j]) * (p - src.breakpoints[j]);
}

// Semantic equality of the PL maps, decided exactly: two maps that are affine
// between consecutive points of the union of their breakpoints are equal iff
// they agree on that union.
inline bool equals(const Element& g, const Element& h) {
    Partition pg = tree_partition(g.source);
    Partition ph = tree_partition(h.source);
    std::vector<ZTau> points;
    points.reserve(pg.breakpoints.size() + ph.breakpoints.size());
    std::size_t i = 0, j = 0;
    while (i < pg.breakpoints.size() || j < ph.breakpoints.size()) {
        if (j == ph.breakpoints.size() ||
            (i < pg.breakpoints.size() && pg.breakpoints[i] <= ph.breakpoints[j])) {
            if (i < pg.breakpoints.size() && j < ph.breakpoints.size() &&
                pg.breakpoints[i] == ph.breakpoints[j])
                ++j;
            points.push_back(pg.breakpoints[i++]);
        } else {
            points.push_back(ph.breakpoints[j++]);
        }
    }
    for (const ZTau& p : points)
        if (eval(g, p) != eval(h, p)) return false;
    return true;
}

// Slope exponents at the endpoints: slope at 0 is tau^{s0} with s0 the level
// difference of the leftmost leaves, symmetrically at 1.
inline std::pair<int, int> boundary_slopes(const Element& g) {
    return {leftmost_leaf_level(g.target) - leftmost_leaf_level(g.source),
            rightmost_leaf_level(g.target) - rightmost_leaf_level(g.source)};
}

// ---------------------------------------------------------------------------
// The genuine breakpoints of the map: diagram breakpoints where the slope
// exponent actually changes. Two elements are equal iff these lists agree,
// which makes the serialized list a perfect dedup key.

struct MapPiece {
    ZTau point;   // interior breakpoint of the map
    ZTau image;   // its image
};

inline std::vector<MapPiece> map_breakpoints(const Element& g) {
    Partition src = tree_partition(g.source);
    Partition tgt = tree_partition(g.target);
    std::vector<MapPiece> out;
    for (std::size_t j = 0; j + 1 < src.levels.size(); ++j) {
        int e0 = tgt.levels[j] - src.levels[j];
        int e1 = tgt.levels[j + 1] - src.levels[j + 1];
        if (e0 != e1) out.push_back({src.breakpoints[j + 1], tgt.breakpoints[j + 1]});
    }
    return out;
}

inline int affine_piece_count(const Element& g) {
    return static_cast<int>(map_breakpoints(g).size()) + 1;
}

inline std::string map_fingerprint(const Element& g) {
    std::string out;
    for (const MapPiece& p : map_breakpoints(g)) {
        out += p.point.str();
        out += '>';
        out += p.image.str();
        out += ';';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Diagram surgery that keeps the map fixed. Basic moves inside either tree
// leave its partition untouched; adding a matched caret pair subdivides the
// j-th source and target intervals in the same proportion.

inline Element basic_move_source(const Element& g, std::string_view path) {
    return {apply_basic_move(g.source, path), g.target};
}

inline Element basic_move_target(const Element& g, std::string_view path) {
    return {g.source, apply_basic_move(g.target, path)};
}

inline Element add_caret_pair(const Element& g, int leaf_index, CaretType type) {
    Tree c = caret(type, leaf(), leaf());
    return {graft_at_leaf(g.source, leaf_index, c), graft_at_leaf(g.target, leaf_index, c)};
}

namespace detail {

// Pair-level caret switch: run the Lemma 2.3 recursion inside one tree of the
// diagram, mirroring the at-most-one added caret onto the partner tree so the
// element is unchanged.
template <bool InTarget>
inline Element pair_switch_impl(const Element& g, std::string_view path) {
    const Tree& t = InTarget ? g.target : g.source;
    Tree before(t, node_at(t, path));
    Tree switched = switch_subtree_root(before);
    std::vector<Tree> grafts = switch_grafts(before, switched);
    Tree other = InTarget ? g.source : g.target;
    // Leaves of the addressed subtree start at this offset in the whole tree.
    int offset = 0;
    {
        const Tree* cur = &t;
        for (char c : path) {
            if (c == 'L') {
                cur = &(*cur)->left;
            } else {
                offset += leaf_count((*cur)->left);
                cur = &(*cur)->right;
            }
        }
    }
    for (std::size_t j = 0; j < grafts.size(); ++j)
        if (!is_leaf(grafts[j]))
            other = graft_at_leaf(other, offset + static_cast<int>(j), grafts[j]);
    Tree switched_whole = replace_at(t, path, switched);
    if (InTarget) return {std::move(other), std::move(switched_whole)};
    return {std::move(switched_whole), std::move(other)};
}

} // namespace detail

inline Element switch_caret_in_source(const Element& g, std::string_view path) {
    return detail::pair_switch_impl<false>(g, path);
}

inline Element switch_caret_in_target(const Element& g, std::string_view path) {
    return detail::pair_switch_impl<true>(g, path);
}

} // namespace ftau
