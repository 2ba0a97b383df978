#pragma once

#include <knotpoly/diagram.hpp>
#include <knotpoly/laurent.hpp>

#include <cstdlib>
#include <map>
#include <set>
#include <vector>

namespace knotpoly {

// Rows are crossings (input order), columns are under-strand arcs in traversal
// order; entries are polynomials in t.
using ArcMatrix = std::vector<std::vector<LaurentPoly>>;

namespace detail {

// Quotient of an exact product: q with p = q * d, over integer Laurent
// polynomials.  Throws if the division is not exact.
inline LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& d) {
    if (d.is_zero()) throw error("polynomial division by zero");
    LaurentPoly r = p, q;
    const int dlead = d.is_zero() ? 0 : d.max_exp();
    const std::int64_t dc = d.coeff(dlead);
    while (!r.is_zero()) {
        int rlead = r.max_exp();
        std::int64_t rc = r.coeff(rlead);
        if (rc % dc != 0) throw error("non-exact polynomial division");
        LaurentPoly term = LaurentPoly::monomial(rc / dc, rlead - dlead);
        q += term;
        r -= term * d;
        if (!r.is_zero() && r.max_exp() >= rlead)
            throw error("non-exact polynomial division");
    }
    return q;
}

inline LaurentPoly det_cofactor_rec(const ArcMatrix& m, std::vector<int>& cols, int row) {
    int n = static_cast<int>(m.size());
    if (row == n) return LaurentPoly::one();
    LaurentPoly sum;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        int c = cols[k];
        if (m[row][c].is_zero()) continue;
        std::vector<int> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (j != k) rest.push_back(cols[j]);
        LaurentPoly sub = m[row][c] * det_cofactor_rec(m, rest, row + 1);
        if (k % 2 == 0)
            sum += sub;
        else
            sum -= sub;
    }
    return sum;
}

} // namespace detail

inline LaurentPoly det_cofactor(const ArcMatrix& m) {
    int n = static_cast<int>(m.size());
    if (n == 0) return LaurentPoly::one();
    std::vector<int> cols(n);
    for (int i = 0; i < n; ++i) cols[i] = i;
    return detail::det_cofactor_rec(m, cols, 0);
}

// Fraction-free Gaussian elimination; every intermediate division is exact.
inline LaurentPoly det_fraction_free(ArcMatrix m) {
    int n = static_cast<int>(m.size());
    if (n == 0) return LaurentPoly::one();
    int sign = 1;
    LaurentPoly prev = LaurentPoly::one();
    for (int k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (!m[r][k].is_zero()) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return LaurentPoly::zero();
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = detail::exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    LaurentPoly result = m[n - 1][n - 1];
    return sign < 0 ? -result : result;
}

inline LaurentPoly poly_determinant(const ArcMatrix& m) {
    return m.size() <= 8 ? det_cofactor(m) : det_fraction_free(m);
}

namespace detail {

inline void require_knot(const Diagram& d) {
    if (d.component_count() != 1 || d.components.size() + d.free_loops != 1)
        throw error("Alexander polynomial is defined for knots only (1 component)");
}

// arc index of every edge: arcs are the maximal runs of the knot's cycle
// between arrivals at an under-crossing
inline std::map<int, int> arc_of_edge(const Diagram& d) {
    const auto& cyc = d.components.at(0);
    const int L = static_cast<int>(cyc.size());
    std::set<int> under_in;
    for (const auto& cr : d.crossings) under_in.insert(cr.e[0]);

    int first_break = -1;
    for (int i = 0; i < L; ++i)
        if (under_in.count(cyc[i])) {
            first_break = i;
            break;
        }
    if (first_break < 0) throw error("no under-crossing arrivals on the knot");

    std::map<int, int> arc;
    int id = 0;
    for (int k = 1; k <= L; ++k) {
        int i = (first_break + k) % L;
        arc[cyc[i]] = id;
        if (under_in.count(cyc[i])) ++id;
    }
    return arc;
}

} // namespace detail

// At each crossing: 1-t on the over-arc; facing along the over-strand, t on
// the under-arc end to the left and -1 on the end to the right.  With signs,
// +1 puts t on the outgoing under-arc, -1 puts t on the incoming one.
inline ArcMatrix crossing_arc_matrix(const Diagram& d) {
    detail::require_knot(d);
    const int n = static_cast<int>(d.crossings.size());
    if (n == 0) throw error("crossing/arc matrix needs at least one crossing");

    auto arc = detail::arc_of_edge(d);
    auto signs = crossing_signs(d);
    const LaurentPoly over = LaurentPoly::parse("1 - t", 't');
    const LaurentPoly pos = LaurentPoly::monomial(1, 1);
    const LaurentPoly neg = -LaurentPoly::one();

    ArcMatrix m(n, std::vector<LaurentPoly>(n));
    for (int i = 0; i < n; ++i) {
        const auto& q = d.crossings[i].e;
        if (arc.at(q[1]) != arc.at(q[3]))
            throw error("over-strand edges lie on different arcs");
        m[i][arc.at(q[1])] += over;
        if (signs[i] > 0) {
            m[i][arc.at(q[0])] += neg;
            m[i][arc.at(q[2])] += pos;
        } else {
            m[i][arc.at(q[0])] += pos;
            m[i][arc.at(q[2])] += neg;
        }
    }
    return m;
}

namespace detail {

inline LaurentPoly normalize_alexander(LaurentPoly p) {
    if (p.is_zero())
        throw error("vanishing Alexander determinant on a knot diagram");
    p = LaurentPoly::monomial(1, -p.min_exp()) * p;
    if (p.coeff(0) < 0) p = -p;
    return p;
}

} // namespace detail

// Determinant of the minor that deletes the given row and column, normalized
// to a positive constant term.
inline LaurentPoly alexander_deleting(const Diagram& d, int row, int col) {
    ArcMatrix m = crossing_arc_matrix(d);
    const int n = static_cast<int>(m.size());
    if (row < 0 || row >= n || col < 0 || col >= n)
        throw error("deleted row/column out of range");
    ArcMatrix minor;
    for (int i = 0; i < n; ++i) {
        if (i == row) continue;
        std::vector<LaurentPoly> r;
        for (int j = 0; j < n; ++j)
            if (j != col) r.push_back(m[i][j]);
        minor.push_back(std::move(r));
    }
    return detail::normalize_alexander(poly_determinant(minor));
}

inline LaurentPoly alexander(const Diagram& d) {
    detail::require_knot(d);
    if (d.crossings.empty()) return LaurentPoly::one();
    const int n = static_cast<int>(d.crossings.size());
    return alexander_deleting(d, n - 1, n - 1);
}

} // namespace knotpoly
