#pragma once

#include <knotpoly/diagram.hpp>
#include <knotpoly/laurent.hpp>

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

namespace knotpoly {

inline constexpr int default_state_sum_cap = 26;

namespace detail {

// Dense edge numbering for the state sum's union-find.
inline std::map<int, int> dense_edge_ids(const Diagram& d) {
    std::map<int, int> ids;
    for (const auto& cr : d.crossings)
        for (int s = 0; s < 4; ++s)
            ids.emplace(cr.e[s], 0);
    int next = 0;
    for (auto& [e, id] : ids) id = next++;
    return ids;
}

struct StateCounts {
    // count[b][c]: number of smoothing states with b B-smoothings whose fully
    // smoothed diagram has c closed curves (free loops not included)
    std::vector<std::vector<std::int64_t>> count;
    int crossings = 0;
    int edges = 0;
};

inline StateCounts enumerate_states(const Diagram& d, int cap) {
    const int n = static_cast<int>(d.crossings.size());
    if (n > cap) throw cap_error(n, cap);

    auto ids = dense_edge_ids(d);
    const int E = static_cast<int>(ids.size());
    std::vector<std::array<int, 4>> slots(n);
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < 4; ++s) slots[i][s] = ids.at(d.crossings[i].e[s]);

    StateCounts sc;
    sc.crossings = n;
    sc.edges = E;
    sc.count.assign(n + 1, std::vector<std::int64_t>(E + 1, 0));
    if (n == 0) return sc;

    std::vector<int> parent(E);
    auto find = [&parent](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t state = 0; state < total; ++state) {
        for (int i = 0; i < E; ++i) parent[i] = i;
        int merges = 0;
        for (int i = 0; i < n; ++i) {
            const auto& q = slots[i];
            int x0, y0, x1, y1;
            if ((state >> i) & 1) {
                x0 = q[0]; y0 = q[3];  // B: join a-d and b-c
                x1 = q[1]; y1 = q[2];
            } else {
                x0 = q[0]; y0 = q[1];  // A: join a-b and c-d
                x1 = q[2]; y1 = q[3];
            }
            int rx = find(x0), ry = find(y0);
            if (rx != ry) {
                parent[rx] = ry;
                ++merges;
            }
            rx = find(x1), ry = find(y1);
            if (rx != ry) {
                parent[rx] = ry;
                ++merges;
            }
        }
        int loops = E - merges;
        ++sc.count[std::popcount(state)][loops];
    }
    return sc;
}

} // namespace detail

// Sum over all smoothing states of A^(#A - #B) * delta^(curves - 1), curves
// counted on the fully smoothed diagram together with the free loops.
inline LaurentPoly kauffman_bracket(const Diagram& d, int cap = default_state_sum_cap) {
    const int n = static_cast<int>(d.crossings.size());
    if (n == 0) {
        if (d.free_loops == 0)
            throw error("bracket of the empty diagram is undefined");
        return delta().pow(d.free_loops - 1);
    }
    auto sc = detail::enumerate_states(d, cap);

    std::vector<LaurentPoly> dpow(sc.edges + d.free_loops);
    if (!dpow.empty()) {
        dpow[0] = LaurentPoly::one();
        for (std::size_t k = 1; k < dpow.size(); ++k) dpow[k] = dpow[k - 1] * delta();
    }

    LaurentPoly result;
    for (int b = 0; b <= n; ++b)
        for (int c = 1; c <= sc.edges; ++c) {
            std::int64_t cnt = sc.count[b][c];
            if (cnt == 0) continue;
            LaurentPoly term = LaurentPoly::monomial(cnt, n - 2 * b) * dpow[c + d.free_loops - 1];
            result += term;
        }
    return result;
}

inline LaurentPoly normalized_bracket(const Diagram& d, int cap = default_state_sum_cap) {
    int w = writhe(d);
    LaurentPoly prefix = LaurentPoly::monomial((w % 2 == 0) ? 1 : -1, -3 * w);
    return prefix * kauffman_bracket(d, cap);
}

// Laurent polynomial in q = t^(1/4); integer q-exponents encode quarter-integer
// powers of t.
class JonesPoly {
public:
    JonesPoly() = default;
    explicit JonesPoly(LaurentPoly q) : q_(std::move(q)) {}

    const LaurentPoly& q_poly() const { return q_; }

    bool operator==(const JonesPoly& o) const { return q_ == o.q_; }
    bool operator!=(const JonesPoly& o) const { return q_ != o.q_; }

    // Rendering reduces q-exponents to lowest-term t-powers.
    std::string to_string() const {
        if (q_.is_zero()) return "0";
        std::string out;
        bool first = true;
        for (auto& [e, c] : q_.terms()) {
            if (e % 2 != 0)
                throw error("Jones polynomial with an odd q-exponent");
            std::int64_t mag = c < 0 ? -c : c;
            std::string body;
            if (e == 0) {
                body = std::to_string(mag);
            } else {
                if (mag != 1) body = std::to_string(mag);
                body += "t";
                if (e % 4 == 0) {
                    if (e != 4) body += "^" + std::to_string(e / 4);
                } else {
                    body += "^" + std::to_string(e / 2) + "/2";
                }
            }
            if (first) {
                out = (c < 0 ? "-" : "") + body;
                first = false;
            } else {
                out += (c < 0 ? " - " : " + ") + body;
            }
        }
        return out;
    }

private:
    LaurentPoly q_;
};

// Substitute A = t^(-1/4): the A-exponent k becomes the q-exponent -k.
inline JonesPoly jones_from_normalized(const LaurentPoly& normalized) {
    return JonesPoly(normalized.conjugate());
}

inline JonesPoly jones(const Diagram& d, int cap = default_state_sum_cap) {
    return jones_from_normalized(normalized_bracket(d, cap));
}

} // namespace knotpoly
