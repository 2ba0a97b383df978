#pragma once

#include <knotpoly/diagram.hpp>

#include <cstdlib>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(KNOTPOLY_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name));
    if (!in) throw std::runtime_error("cannot open fixture " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline knotpoly::Diagram load_diagram(const std::string& name) {
    return knotpoly::parse_pd(read_fixture(name));
}

// Seed for randomized suites; override with KNOTPOLY_SEED.
inline std::uint64_t test_seed() {
    if (const char* s = std::getenv("KNOTPOLY_SEED")) return std::strtoull(s, nullptr, 0);
    return 0x5EED;
}

inline std::vector<int> all_edges(const knotpoly::Diagram& d) {
    std::vector<int> out;
    for (const auto& cyc : d.components)
        for (int e : cyc) out.push_back(e);
    return out;
}

// Random valid diagram built by composing validity-preserving surgeries on
// small seed diagrams.
inline knotpoly::Diagram random_diagram(std::mt19937_64& rng, int max_crossings) {
    using namespace knotpoly;
    static const char* bases[] = {
        "X[4,2,5,1] X[2,6,3,5] X[6,4,1,3]",
        "X[3,2,4,1] X[2,3,1,4]",
        "X[1,1,2,2] components: (1 2)",
        "X[2,1,1,2]",
        "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]",
    };
    auto pick = [&](int n) { return static_cast<int>(rng() % n); };
    Diagram d = parse_pd(bases[pick(5)]);
    int steps = pick(7);
    for (int k = 0; k < steps; ++k) {
        switch (pick(6)) {
            case 0: {
                auto edges = all_edges(d);
                if (!edges.empty() && static_cast<int>(d.crossings.size()) < max_crossings)
                    d = add_curl(d, edges[pick(static_cast<int>(edges.size()))],
                                 pick(2) ? Handedness::right : Handedness::left);
                break;
            }
            case 1:
                if (!d.crossings.empty())
                    d = switch_crossing(d, pick(static_cast<int>(d.crossings.size())));
                break;
            case 2:
                if (!d.crossings.empty())
                    d = smooth_crossing(d, pick(static_cast<int>(d.crossings.size())),
                                        pick(2) ? Smoothing::A : Smoothing::B);
                break;
            case 3: {
                Diagram extra = parse_pd(bases[pick(3)]);
                if (static_cast<int>(d.crossings.size() + extra.crossings.size()) <= max_crossings)
                    d = disjoint_union(d, extra);
                break;
            }
            case 4:
                d = add_disjoint_circle(d);
                break;
            case 5:
                if (!d.components.empty())
                    d = reverse_component(d, pick(static_cast<int>(d.components.size())));
                break;
        }
    }
    return d;
}

} // namespace testutil
