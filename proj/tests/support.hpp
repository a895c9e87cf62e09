#pragma once

#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>

#include "ftau/element.hpp"
#include "ftau/word.hpp"

// Minimal check harness shared by the test binaries: CHECK aborts with
// context on failure, RUN announces a test function and runs it.

inline int g_checks = 0;

#define CHECK(cond)                                                              \
    do {                                                                         \
        ++g_checks;                                                              \
        if (!(cond)) {                                                           \
            std::fprintf(stderr, "CHECK failed at %s:%d: %s\n", __FILE__,        \
                         __LINE__, #cond);                                       \
            std::exit(1);                                                        \
        }                                                                        \
    } while (0)

#define CHECK_EQ(lhs, rhs)                                                       \
    do {                                                                         \
        ++g_checks;                                                              \
        auto l_ = (lhs);                                                         \
        auto r_ = (rhs);                                                         \
        if (!(l_ == r_)) {                                                       \
            std::fprintf(stderr, "CHECK_EQ failed at %s:%d: %s vs %s\n",         \
                         __FILE__, __LINE__, #lhs, #rhs);                        \
            std::exit(1);                                                        \
        }                                                                        \
    } while (0)

#define RUN(fn)                                                                  \
    do {                                                                         \
        std::printf("%-44s", #fn);                                               \
        std::fflush(stdout);                                                     \
        fn();                                                                    \
        std::printf("ok\n");                                                     \
    } while (0)

namespace testutil {

inline ftau::Tree random_tree(std::mt19937& rng, int carets) {
    if (carets == 0) return ftau::leaf();
    std::uniform_int_distribution<int> split(0, carets - 1);
    std::uniform_int_distribution<int> type(0, 1);
    int left = split(rng);
    ftau::CaretType t = type(rng) ? ftau::CaretType::x : ftau::CaretType::y;
    return ftau::caret(t, random_tree(rng, left), random_tree(rng, carets - 1 - left));
}

inline ftau::Element random_element(std::mt19937& rng, int carets) {
    return {random_tree(rng, carets), random_tree(rng, carets)};
}

inline ftau::Word random_word(std::mt19937& rng, int length, int max_index = 3) {
    std::uniform_int_distribution<int> fam(0, 1);
    std::uniform_int_distribution<int> idx(0, max_index);
    std::uniform_int_distribution<int> exp(0, 1);
    ftau::Word w;
    for (int i = 0; i < length; ++i)
        w.push_back({fam(rng) ? ftau::Family::y : ftau::Family::x, idx(rng), exp(rng) ? 1 : -1});
    return w;
}

} // namespace testutil
