#include "ftau/abelian.hpp"

#include <random>

#include "support.hpp"

using namespace ftau;
using testutil::random_word;

static void test_abelianise_examples() {
    CHECK_EQ(abelianise(parse_word("x1 y1^-1")), (AbelianImage{0, 0, 1}));  // z
    CHECK_EQ(abelianise(parse_word("x1 y1^-1 x1 y1^-1")), (AbelianImage{0, 0, 0}));  // z^2
    CHECK_EQ(abelianise(parse_word("y0")), (AbelianImage{0, 1, 0}));
    CHECK_EQ(abelianise(parse_word("x0")), (AbelianImage{-1, 2, 0}));
    CHECK_EQ(abelianise(parse_word("x1")), (AbelianImage{1, 0, 0}));
    CHECK_EQ(abelianise(parse_word("y1")), (AbelianImage{1, 0, 1}));
    CHECK_EQ(abelianise(parse_word("")), (AbelianImage{0, 0, 0}));
}

static void test_homomorphism_random() {
    std::mt19937 rng(211);
    for (int i = 0; i < 2000; ++i) {
        Word u = random_word(rng, 5), v = random_word(rng, 5);
        CHECK_EQ(abelianise(concat(u, v)), abelianise(u) + abelianise(v));
    }
}

static void test_relators_die() {
    // Well-definedness: every relator of the presentation abelianises to 0.
    auto dead = [](const std::string& lhs, const std::string& rhs) {
        Word w = concat(parse_word(lhs), inverse(parse_word(rhs)));
        return abelianise(w).is_zero();
    };
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j <= 5; ++j) {
            auto s = [](char f, int k) { return std::string(1, f) + std::to_string(k); };
            CHECK(dead(s('x', j) + " " + s('x', i), s('x', i) + " " + s('x', j + 1)));
            CHECK(dead(s('x', j) + " " + s('y', i), s('y', i) + " " + s('x', j + 1)));
            CHECK(dead(s('y', j) + " " + s('x', i), s('x', i) + " " + s('y', j + 1)));
            CHECK(dead(s('y', j) + " " + s('y', i), s('y', i) + " " + s('y', j + 1)));
        }
        CHECK(dead("y" + std::to_string(i) + " y" + std::to_string(i),
                   "x" + std::to_string(i) + " x" + std::to_string(i + 1)));
    }
}

static void test_census_examples() {
    {
        CaretCensus c = census(Element::identity());
        CHECK_EQ(c.source.left_x + c.source.left_y + c.source.interior_x + c.source.interior_y, 0);
        CHECK_EQ(c.target.left_x + c.target.left_y + c.target.interior_x + c.target.interior_y, 0);
    }
    {
        CaretCensus c = census(generator_element({Family::x, 0, 1}));
        CHECK_EQ(c.source.left_x, 1);  // the extra caret on the last left leg
        CHECK_EQ(c.source.interior_x, 0);
        CHECK_EQ(c.target.left_x, 0);
        CHECK_EQ(c.target.interior_x, 0);
    }
    {
        CaretCensus c = census(generator_element({Family::y, 0, 1}));
        CHECK_EQ(c.source.left_y, 1);
        CHECK_EQ(c.source.left_x + c.source.interior_x + c.source.interior_y, 0);
    }
    bool threw = false;
    try {
        census(Element{parse_tree("y(.,.)"), parse_tree("y(.,.)")});
    } catch (const SpineNotNormalized&) {
        threw = true;
    }
    CHECK(threw);
}

// The section 4 component formulas, checked against the word-side map.
static void test_census_consistency() {
    std::mt19937 rng(223);
    for (int i = 0; i < 300; ++i) {
        Word w = random_word(rng, 5);
        Element d = seminormal_diagram(word_to_element(w));
        CaretCensus c = census(d);
        AbelianImage img = abelianise(w);
        std::int64_t x1_from_census = (c.source.interior_x - c.source.left_x -
                                       c.target.interior_x + c.target.left_x) +
                                      (c.source.interior_y - c.target.interior_y);
        // The y0-bar coordinate is minus the slope exponent at 0, i.e. the
        // difference of the leftmost leaf levels 2r + s.
        std::int64_t y0_from_census = (2 * c.source.left_x + c.source.left_y) -
                                      (2 * c.target.left_x + c.target.left_y);
        int z_from_census = static_cast<int>(
            (((c.source.interior_y - c.target.interior_y) % 2) + 2) % 2);
        CHECK_EQ(img.c_x1, x1_from_census);
        CHECK_EQ(img.c_y0, y0_from_census);
        CHECK_EQ(img.c_z, z_from_census);
    }
}

static void test_in_commutator() {
    CHECK(in_commutator(Element::identity()));
    CHECK(!in_commutator(generator_element({Family::x, 0, 1})));
    CHECK(!in_commutator(generator_element({Family::y, 0, 1})));
    // Commutators land in the kernel by construction.
    auto comm = [](const char* a, const char* b) {
        Word u = parse_word(a), v = parse_word(b);
        return concat(concat(u, v), concat(inverse(u), inverse(v)));
    };
    for (auto [a, b] : {std::pair{"x0", "y0"}, {"x0", "x1"}, {"y0", "y1"}, {"x1", "y0"}})
        CHECK(in_commutator(seminormal_diagram(word_to_element(comm(a, b)))));
    // z = x1 y1^-1 has trivial slopes but a live torsion class.
    Element z = seminormal_diagram(word_to_element(parse_word("x1 y1^-1")));
    CHECK(!in_commutator(z));
    Element z2 = seminormal_diagram(word_to_element(parse_word("x1 y1^-1 x1 y1^-1")));
    CHECK(in_commutator(z2));
}

static void test_slope_linkage() {
    std::mt19937 rng(227);
    for (int i = 0; i < 200; ++i) {
        Word w = random_word(rng, 5);
        Element d = seminormal_diagram(word_to_element(w));
        auto [s0, s1] = boundary_slopes(d);
        bool left_equal = leftmost_leaf_level(d.source) == leftmost_leaf_level(d.target);
        bool right_equal = rightmost_leaf_level(d.source) == rightmost_leaf_level(d.target);
        CHECK_EQ(left_equal, s0 == 0);
        CHECK_EQ(right_equal, s1 == 0);
    }
}

static void test_kernel_equivalence_random() {
    std::mt19937 rng(229);
    for (int i = 0; i < 300; ++i) {
        Word w = random_word(rng, 5);
        Element d = seminormal_diagram(word_to_element(w));
        CHECK_EQ(in_commutator(d), abelianise(w).is_zero());
    }
}

int main() {
    RUN(test_abelianise_examples);
    RUN(test_homomorphism_random);
    RUN(test_relators_die);
    RUN(test_census_examples);
    RUN(test_census_consistency);
    RUN(test_in_commutator);
    RUN(test_slope_linkage);
    RUN(test_kernel_equivalence_random);
    std::printf("test_abelian: %d checks passed\n", g_checks);
    return 0;
}
