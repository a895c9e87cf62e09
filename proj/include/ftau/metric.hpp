#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ftau/abelian.hpp"
#include "ftau/normal_form.hpp"

namespace ftau {

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// D(g) = sum of all exponents and both top indices of the normal form; empty
// positive or negative parts contribute 0 in place of n or m.
inline int metric_D(const NormalFormWord& nf) {
    int sum = 0;
    for (int v : nf.a) sum += v;
    for (int v : nf.eps) sum += v;
    for (int v : nf.b) sum += v;
    int n = nf.n(), m = nf.m();
    return sum + (n > 0 ? n : 0) + (m > 0 ? m : 0);
}

// N(g) = caret count of the diagram the normal form corresponds to via leaf
// exponents.
inline int metric_N(const NormalFormWord& nf) {
    return caret_count(normal_form_diagram(nf).source);
}

inline int metric_N(const Element& g) { return metric_N(normalize(g)); }

struct MetricReport {
    int D = 0;
    int N = 0;
    std::optional<int> exact_length;  // present when g lies in the supplied ball
};

struct BfsBall;
inline MetricReport metric_report(const NormalFormWord& nf, const BfsBall* ball = nullptr);

// ---------------------------------------------------------------------------
// Exact word lengths over {x0, x1, y0, y1}^±1 by breadth-first search from
// the identity, deduplicating states by the unique normal form.

struct BfsEntry {
    NormalFormWord nf;
    int length = 0;
};

struct BfsBall {
    int radius = 0;
    std::vector<BfsEntry> entries;                  // breadth-first order
    std::unordered_map<std::string, int> distance;  // normal-form word -> length

    std::optional<int> length_of(const NormalFormWord& nf) const {
        auto it = distance.find(nf.str());
        if (it == distance.end()) return std::nullopt;
        return it->second;
    }
};

inline const std::vector<Word>& ambient_generators() {
    static const std::vector<Word> gens = [] {
        std::vector<Word> out;
        for (Family f : {Family::x, Family::y})
            for (int i : {0, 1})
                for (int e : {1, -1}) out.push_back({Generator{f, i, e}});
        return out;
    }();
    return gens;
}

// `generators` entries are words in the ambient letters; distances count one
// per generator application. States expand by multiplying the normal-form
// diagram with the generator diagram, which keeps the trees small.
inline BfsBall bfs_ball_over(const std::vector<Word>& generators, int radius, int cap = 7) {
    if (radius > cap) throw CapExceeded("bfs radius " + std::to_string(radius) +
                                        " exceeds cap " + std::to_string(cap));
    std::vector<Element> gen_elements;
    gen_elements.reserve(generators.size());
    for (const Word& g : generators) gen_elements.push_back(word_to_element(g));
    BfsBall ball;
    ball.radius = radius;
    NormalFormWord id;
    ball.distance.emplace(id.str(), 0);
    ball.entries.push_back({id, 0});
    std::size_t head = 0;
    while (head < ball.entries.size()) {
        BfsEntry cur = ball.entries[head++];
        if (cur.length == radius) continue;
        Element base = normal_form_diagram(cur.nf);
        for (const Element& gen : gen_elements) {
            NormalFormWord next = normalize(multiply(base, gen));
            auto [it, inserted] = ball.distance.emplace(next.str(), cur.length + 1);
            (void)it;
            if (inserted) ball.entries.push_back({std::move(next), cur.length + 1});
        }
    }
    return ball;
}

inline BfsBall bfs_ball(int radius, int cap = 7) {
    return bfs_ball_over(ambient_generators(), radius, cap);
}

inline MetricReport metric_report(const NormalFormWord& nf, const BfsBall* ball) {
    MetricReport r{metric_D(nf), metric_N(nf), std::nullopt};
    if (ball) r.exact_length = ball->length_of(nf);
    return r;
}

// ---------------------------------------------------------------------------
// Distortion experiments for the three F copies of section 8.

enum class Subgroup { Fx, Fy, Fz };

inline const std::vector<Word>& subgroup_generators(Subgroup s) {
    static const std::vector<Word> fx = [] {
        std::vector<Word> out;
        for (int i : {0, 1})
            for (int e : {1, -1}) out.push_back({Generator{Family::x, i, e}});
        return out;
    }();
    static const std::vector<Word> fy = [] {
        std::vector<Word> out;
        for (int i : {0, 1})
            for (int e : {1, -1}) out.push_back({Generator{Family::y, i, e}});
        return out;
    }();
    static const std::vector<Word> fz = [] {
        Word z0 = parse_word("y0 y2");
        Word z1 = parse_word("y2 y4");
        return std::vector<Word>{z0, inverse(z0), z1, inverse(z1)};
    }();
    switch (s) {
        case Subgroup::Fx: return fx;
        case Subgroup::Fy: return fy;
        default: return fz;
    }
}

struct DistortionRow {
    std::string word;          // normal form of the subgroup element
    int subgroup_length = 0;   // BFS length in the subgroup generators
    int D = 0;
    int N = 0;
    std::optional<int> ambient_length;  // present when inside the ambient ball
};

struct DistortionReport {
    Subgroup subgroup;
    int radius = 0;
    std::vector<DistortionRow> rows;
    double min_D_ratio = 0.0;  // over rows with subgroup_length > 0
    double max_D_ratio = 0.0;
    double min_N_ratio = 0.0;
    double max_N_ratio = 0.0;
};

inline DistortionReport distortion_report(Subgroup s, int radius, int cap = 8,
                                          const BfsBall* ambient = nullptr) {
    if (radius > cap) throw CapExceeded("distortion radius exceeds cap");
    BfsBall ball = bfs_ball_over(subgroup_generators(s), radius, radius);
    DistortionReport report;
    report.subgroup = s;
    report.radius = radius;
    bool first = true;
    for (const BfsEntry& e : ball.entries) {
        DistortionRow row;
        row.word = e.nf.str();
        row.subgroup_length = e.length;
        row.D = metric_D(e.nf);
        row.N = metric_N(e.nf);
        if (ambient) row.ambient_length = ambient->length_of(e.nf);
        if (e.length > 0) {
            double dr = static_cast<double>(row.D) / e.length;
            double nr = static_cast<double>(row.N) / e.length;
            if (first) {
                report.min_D_ratio = report.max_D_ratio = dr;
                report.min_N_ratio = report.max_N_ratio = nr;
                first = false;
            } else {
                report.min_D_ratio = std::min(report.min_D_ratio, dr);
                report.max_D_ratio = std::max(report.max_D_ratio, dr);
                report.min_N_ratio = std::min(report.min_N_ratio, nr);
                report.max_N_ratio = std::max(report.max_N_ratio, nr);
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

inline std::string distortion_csv(const DistortionReport& r) {
    std::string out = "word,subgroup_length,D,N,ambient_length,D_per_length,N_per_length\n";
    for (const DistortionRow& row : r.rows) {
        out += '"' + row.word + "\",";
        out += std::to_string(row.subgroup_length) + ',';
        out += std::to_string(row.D) + ',';
        out += std::to_string(row.N) + ',';
        out += row.ambient_length ? std::to_string(*row.ambient_length) : std::string();
        out += ',';
        if (row.subgroup_length > 0) {
            out += std::to_string(static_cast<double>(row.D) / row.subgroup_length) + ',';
            out += std::to_string(static_cast<double>(row.N) / row.subgroup_length);
        } else {
            out += ',';
        }
        out += '\n';
    }
    return out;
}

} // namespace ftau
