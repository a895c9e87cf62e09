#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ftau/element.hpp"

namespace ftau {

enum class Family : std::uint8_t { x, y };

struct Generator {
    Family family;
    int index;     // >= 0
    int exponent;  // +1 or -1

    friend bool operator==(const Generator&, const Generator&) = default;

    Generator inverse() const { return {family, index, -exponent}; }

    std::string str() const {
        std::string s(1, family == Family::x ? 'x' : 'y');
        s += std::to_string(index);
        if (exponent < 0) s += "^-1";
        return s;
    }
};

using Word = std::vector<Generator>;

inline std::string word_str(const Word& w) {
    if (w.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += w[i].str();
    }
    return out;
}

inline Word inverse(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
    return out;
}

inline Word concat(const Word& u, const Word& v) {
    Word out = u;
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

// Token grammar: ("x"|"y") INDEX ["^-1"], letters separated by whitespace.
// The empty word may be written "e".
inline Word parse_word(std::string_view text) {
    Word out;
    std::size_t i = 0, n = text.size();
    auto skip_ws = [&] {
        while (i < n && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) ++i;
    };
    skip_ws();
    if (i < n && text[i] == 'e' && (i + 1 == n || text[i + 1] == ' ')) {
        ++i;
        skip_ws();
        if (i != n) throw ParseError(i, "end of word after 'e'");
        return out;
    }
    while (i < n) {
        char c = text[i];
        if (c != 'x' && c != 'y') throw ParseError(i, "'x' or 'y'");
        Family fam = c == 'x' ? Family::x : Family::y;
        ++i;
        std::size_t start = i;
        long idx = 0;
        while (i < n && text[i] >= '0' && text[i] <= '9') {
            idx = idx * 10 + (text[i] - '0');
            if (idx > 9999) throw ParseError(start, "generator index <= 9999");
            ++i;
        }
        if (i == start) throw ParseError(i, "generator index");
        int exp = 1;
        if (i < n && text[i] == '^') {
            ++i;
            if (i + 1 < n && text[i] == '-' && text[i + 1] == '1') {
                i += 2;
                exp = -1;
            } else if (i < n && text[i] == '1') {
                ++i;
            } else {
                throw ParseError(i, "exponent 1 or -1");
            }
        }
        out.push_back({fam, static_cast<int>(idx), exp});
        if (i < n && text[i] != ' ' && text[i] != '\t' && text[i] != '\n')
            throw ParseError(i, "whitespace between letters");
        skip_ws();
    }
    return out;
}

// Spine: right chain of x-carets.
inline Tree spine(int carets) {
    Tree t = leaf();
    for (int i = 0; i < carets; ++i) t = x_caret(leaf(), t);
    return t;
}

// Generator diagrams (Figure 8 shape): the target of x_n / y_n is a spine of
// n+2 carets; the source is a spine of n+1 carets with one extra caret of the
// generator's family on the last left leaf.
inline Element generator_element(const Generator& g) {
    Tree extra = caret(g.family == Family::x ? CaretType::x : CaretType::y, leaf(), leaf());
    Tree src = graft_at_leaf(spine(g.index + 1), g.index, extra);
    Element e{std::move(src), spine(g.index + 2)};
    return g.exponent >= 0 ? e : invert(e);
}

inline Element word_to_element(const Word& w) {
    Element acc = Element::identity();
    for (const Generator& g : w) acc = multiply(acc, generator_element(g));
    return acc;
}

} // namespace ftau
