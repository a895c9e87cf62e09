// Command-line front end for the F_tau toolkit: normal forms, evaluation,
// abelianisation, metric estimates and the enumeration experiments.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ftau/metric.hpp"

using namespace ftau;

namespace {

int usage() {
    std::cout <<
        "usage: ftau <verb> [args]\n"
        "\n"
        "verbs:\n"
        "  nf WORD [--table]          unique normal form of a word\n"
        "  eval WORD POINT            exact image of a Z[tau] point (literal \"a,b\")\n"
        "  mul WORD WORD              product diagram as a tree pair\n"
        "  inv WORD                   inverse diagram as a tree pair\n"
        "  ab WORD                    abelianisation image (c_x1, c_y0, c_z)\n"
        "  in-comm WORD               commutator-subgroup membership (census test)\n"
        "  metric WORD [--ball R]     D, N and exact length when within the ball (default R=4)\n"
        "  check-relations [--max-index K]   verify relations (1)-(5) and the finite set\n"
        "  ball R [--csv PATH]        breadth-first ball over {x0,x1,y0,y1}^±1\n"
        "  distortion {fx|fy|fz} R [--csv PATH] [--ambient A]\n"
        "                             subgroup distortion table (ambient ball radius A)\n"
        "  tree-partition TREE        breakpoints and levels of a tree subdivision\n"
        "  basic-move TREE PATH       apply a basic move at an L/R path\n"
        "\n"
        "words use tokens x<i>, y<i>, optionally ^-1; trees use \".\" and \"x(T,T)\"/\"y(T,T)\".\n";
    return 2;
}

struct Args {
    std::vector<std::string> positional;
    std::string csv_path;
    int max_index = 8;
    int ball_radius = 4;
    int ambient_radius = -1;
    bool pretty = false;
    bool table = false;
};

Args parse_args(int argc, char** argv, int from) {
    Args a;
    for (int i = from; i < argc; ++i) {
        std::string s = argv[i];
        auto next_int = [&](int& out) {
            if (i + 1 >= argc) throw ParseError(0, "value after " + s);
            out = std::atoi(argv[++i]);
        };
        if (s == "--csv") {
            if (i + 1 >= argc) throw ParseError(0, "path after --csv");
            a.csv_path = argv[++i];
        } else if (s == "--max-index") {
            next_int(a.max_index);
        } else if (s == "--ball") {
            next_int(a.ball_radius);
        } else if (s == "--ambient") {
            next_int(a.ambient_radius);
        } else if (s == "--pretty") {
            a.pretty = true;
        } else if (s == "--table") {
            a.table = true;
        } else {
            a.positional.push_back(std::move(s));
        }
    }
    return a;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

int run(int argc, char** argv) {
    if (argc < 2) return usage();
    std::string verb = argv[1];
    Args args = parse_args(argc, argv, 2);
    const auto& pos = args.positional;

    if (verb == "nf") {
        if (pos.size() != 1) return usage();
        NormalFormWord nf = normalize(parse_word(pos[0]));
        std::cout << nf.str() << "\n";
        if (args.table) {
            std::size_t top = std::max({nf.a.size(), nf.eps.size(), nf.b.size()});
            std::printf("%3s %4s %4s %4s\n", "i", "a", "eps", "b");
            for (std::size_t i = 0; i < top; ++i)
                std::printf("%3zu %4d %4d %4d\n", i, nf.at(nf.a, i), nf.at(nf.eps, i),
                            nf.at(nf.b, i));
        }
    } else if (verb == "eval") {
        if (pos.size() != 2) return usage();
        Element g = word_to_element(parse_word(pos[0]));
        std::cout << eval(g, parse_ztau(pos[1])).str() << "\n";
    } else if (verb == "mul") {
        if (pos.size() != 2) return usage();
        Element g = multiply(word_to_element(parse_word(pos[0])),
                             word_to_element(parse_word(pos[1])));
        std::cout << element_str(g) << "\n";
    } else if (verb == "inv") {
        if (pos.size() != 1) return usage();
        std::cout << element_str(invert(word_to_element(parse_word(pos[0])))) << "\n";
    } else if (verb == "ab") {
        if (pos.size() != 1) return usage();
        std::cout << abelianise(parse_word(pos[0])).str() << "\n";
    } else if (verb == "in-comm") {
        if (pos.size() != 1) return usage();
        Element d = seminormal_diagram(word_to_element(parse_word(pos[0])));
        std::cout << (in_commutator(d) ? "true" : "false") << "\n";
    } else if (verb == "metric") {
        if (pos.size() != 1) return usage();
        NormalFormWord nf = normalize(parse_word(pos[0]));
        BfsBall ball = bfs_ball(args.ball_radius);
        MetricReport r = metric_report(nf, &ball);
        std::cout << "D=" << r.D << " N=" << r.N;
        if (r.exact_length)
            std::cout << " length=" << *r.exact_length;
        else
            std::cout << " length>" << args.ball_radius;
        std::cout << "\n";
    } else if (verb == "check-relations") {
        bool all = true;
        std::vector<RelatorCheck> checks = check_presentation(args.max_index);
        std::vector<RelatorCheck> fin = check_finite_presentation();
        checks.insert(checks.end(), fin.begin(), fin.end());
        for (const RelatorCheck& r : checks) {
            std::cout << (r.holds ? "ok   " : "FAIL ") << r.name << "\n";
            all = all && r.holds;
        }
        std::cout << (all ? "all relations hold" : "some relations FAILED") << "\n";
        if (!all) return 1;
    } else if (verb == "ball") {
        if (pos.size() != 1) return usage();
        int radius = std::atoi(pos[0].c_str());
        BfsBall ball = bfs_ball(radius);
        std::vector<int> per_length(static_cast<std::size_t>(radius) + 1, 0);
        for (const BfsEntry& e : ball.entries) ++per_length[static_cast<std::size_t>(e.length)];
        std::cout << "ball radius " << radius << ": " << ball.entries.size() << " elements\n";
        for (int l = 0; l <= radius; ++l)
            std::cout << "length " << l << ": " << per_length[static_cast<std::size_t>(l)] << "\n";
        if (!args.csv_path.empty()) {
            std::string csv = "word,length\n";
            for (const BfsEntry& e : ball.entries)
                csv += '"' + e.nf.str() + "\"," + std::to_string(e.length) + "\n";
            write_file(args.csv_path, csv);
        }
    } else if (verb == "distortion") {
        if (pos.size() != 2) return usage();
        Subgroup s;
        if (pos[0] == "fx")
            s = Subgroup::Fx;
        else if (pos[0] == "fy")
            s = Subgroup::Fy;
        else if (pos[0] == "fz")
            s = Subgroup::Fz;
        else
            return usage();
        int radius = std::atoi(pos[1].c_str());
        BfsBall ambient;
        const BfsBall* ambient_ptr = nullptr;
        if (args.ambient_radius >= 0) {
            ambient = bfs_ball(args.ambient_radius);
            ambient_ptr = &ambient;
        }
        DistortionReport r = distortion_report(s, radius, 8, ambient_ptr);
        if (args.pretty) {
            std::printf("%-28s %6s %4s %4s %8s\n", "word", "len", "D", "N", "ambient");
            for (const DistortionRow& row : r.rows)
                std::printf("%-28s %6d %4d %4d %8s\n", row.word.c_str(), row.subgroup_length,
                            row.D, row.N,
                            row.ambient_length ? std::to_string(*row.ambient_length).c_str() : "-");
        } else {
            std::cout << distortion_csv(r);
        }
        std::cout << "elements: " << r.rows.size() << "\n";
        std::printf("D/length in [%.4f, %.4f], N/length in [%.4f, %.4f]\n", r.min_D_ratio,
                    r.max_D_ratio, r.min_N_ratio, r.max_N_ratio);
        if (!args.csv_path.empty()) write_file(args.csv_path, distortion_csv(r));
    } else if (verb == "tree-partition") {
        if (pos.size() != 1) return usage();
        Partition p = tree_partition(parse_tree(pos[0]));
        std::cout << partition_str(p) << "\n";
        std::cout << "levels:";
        for (int l : p.levels) std::cout << ' ' << l;
        std::cout << "\n";
    } else if (verb == "basic-move") {
        if (pos.size() != 2) return usage();
        std::cout << tree_str(apply_basic_move(parse_tree(pos[0]), pos[1])) << "\n";
    } else {
        return usage();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
