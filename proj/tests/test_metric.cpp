#include "ftau/metric.hpp"

#include <random>

#include "support.hpp"

using namespace ftau;
using testutil::random_word;

static void test_metric_D_examples() {
    CHECK_EQ(metric_D(normalize(parse_word(""))), 0);
    CHECK_EQ(metric_D(normalize(parse_word("y0 x1 y1"))), 4);  // 1 + 2 + 0 + 1 + 0
    CHECK_EQ(metric_D(normalize(parse_word("x0 x1"))), 3);     // 2 + 1
    CHECK_EQ(metric_D(normalize(parse_word("x0"))), 1);
    CHECK_EQ(metric_D(normalize(parse_word("x0^-1"))), 1);
    CHECK_EQ(metric_D(normalize(parse_word("x2"))), 3);        // a_2 = 1, n = 2
}

static void test_metric_N_examples() {
    CHECK_EQ(metric_N(word_to_element(parse_word(""))), 0);
    CHECK_EQ(metric_N(word_to_element(parse_word("x0"))), 2);
    // The normal form y0 x1 y1 reads off a four-caret diagram (three chain
    // carets on a one-caret spine paired with the four-caret spine).
    CHECK_EQ(metric_N(word_to_element(parse_word("y0 x1 y1"))), 4);
    CHECK_EQ(metric_N(word_to_element(parse_word("y0 y0"))), 3);  // = x0 x1
}

static void test_bfs_radius_one() {
    BfsBall ball = bfs_ball(1);
    CHECK_EQ(ball.entries.size(), std::size_t{9});  // identity + 8 distinct generators
    std::optional<int> l = ball.length_of(normalize(parse_word("y0")));
    CHECK(l && *l == 1);
    CHECK(!ball.length_of(normalize(parse_word("x2"))));
}

static void test_bfs_lengths() {
    BfsBall ball = bfs_ball(3);
    auto len = [&](const char* w) {
        std::optional<int> l = ball.length_of(normalize(parse_word(w)));
        CHECK(l.has_value());
        return *l;
    };
    CHECK_EQ(len("e"), 0);
    CHECK_EQ(len("y0 y0"), 2);      // equals x0 x1 as well
    CHECK_EQ(len("x0 x1"), 2);
    CHECK_EQ(len("x2"), 3);         // x2 = x0^-1 x1 x0
    CHECK_EQ(len("x1 y1^-1"), 2);   // the torsion class representative z
    // Neighbouring lengths differ by at most one generator.
    for (const BfsEntry& e : ball.entries) {
        if (e.length == ball.radius) continue;
        for (const Word& gen : ambient_generators()) {
            std::optional<int> l = ball.length_of(normalize(concat(e.nf.to_word(), gen)));
            CHECK(l && std::abs(*l - e.length) <= 1);
        }
    }
    bool threw = false;
    try {
        bfs_ball(9);
    } catch (const CapExceeded&) {
        threw = true;
    }
    CHECK(threw);
}

static void test_dedup_matches_equals_oracle() {
    BfsBall ball = bfs_ball(3);
    std::mt19937 rng(319);
    std::vector<Element> elems;
    for (const BfsEntry& e : ball.entries) elems.push_back(word_to_element(e.nf.to_word()));
    for (int i = 0; i < 1000; ++i) {
        std::size_t a = rng() % elems.size();
        std::size_t b = rng() % elems.size();
        CHECK_EQ(equals(elems[a], elems[b]), a == b);
    }
    // Same element reached along different words collapses to one entry.
    CHECK_EQ(ball.distance.count(normalize(parse_word("y0 y0")).str()), std::size_t{1});
}

static void test_metric_chain_small_ball() {
    BfsBall ball = bfs_ball(3);
    for (const BfsEntry& e : ball.entries) {
        int D = metric_D(e.nf);
        int N = metric_N(e.nf);
        int L = e.length;
        if (L == 0) {
            CHECK_EQ(D, 0);
            CHECK_EQ(N, 0);
            continue;
        }
        CHECK(D <= 4 * N);
        CHECK(N <= 12 * L);
        CHECK(L <= 2 * D);
        CHECK(2 * D <= 8 * N);
    }
}

static void test_fz_generator_normal_forms() {
    // The F_z generators derived via normalize; their inverses pick up the
    // x-spine letters.
    CHECK_EQ(normalize(parse_word("y0 y2")).str(), "y0 y2");
    CHECK_EQ(normalize(parse_word("y2 y4")).str(), "y2 y4");
    CHECK_EQ(normalize(inverse(parse_word("y0 y2"))).str(), "y0 y3 x4^-1 x3^-1 x1^-1 x0^-1");
    CHECK_EQ(normalize(inverse(parse_word("y2 y4"))).str(),
             "y2 y5 x6^-1 x5^-1 x3^-1 x2^-1");
    // Sanity: both claims verified against the map oracle.
    CHECK(equals(word_to_element(normalize(inverse(parse_word("y0 y2"))).to_word()),
                 invert(word_to_element(parse_word("y0 y2")))));
}

static void test_distortion_reports() {
    BfsBall ambient = bfs_ball(3);
    for (Subgroup s : {Subgroup::Fx, Subgroup::Fy, Subgroup::Fz}) {
        DistortionReport r = distortion_report(s, 2, 8, &ambient);
        CHECK(!r.rows.empty());
        CHECK(r.max_D_ratio >= r.min_D_ratio);
        CHECK(r.min_D_ratio > 0.0);
        for (const DistortionRow& row : r.rows)
            if (row.ambient_length) CHECK(*row.ambient_length <= row.subgroup_length *
                                          (s == Subgroup::Fz ? 4 : 1));
        std::string csv = distortion_csv(r);
        CHECK(csv.find("word,subgroup_length,D,N") == 0);
    }
    // Fz generators are honest words of ambient length > 1.
    DistortionReport rz = distortion_report(Subgroup::Fz, 1, 8, &ambient);
    CHECK_EQ(rz.rows.size(), std::size_t{5});  // identity + z0^±1 + z1^±1
}

int main() {
    RUN(test_metric_D_examples);
    RUN(test_metric_N_examples);
    RUN(test_bfs_radius_one);
    RUN(test_bfs_lengths);
    RUN(test_dedup_matches_equals_oracle);
    RUN(test_metric_chain_small_ball);
    RUN(test_fz_generator_normal_forms);
    RUN(test_distortion_reports);
    std::printf("test_metric: %d checks passed\n", g_checks);
    return 0;
}
