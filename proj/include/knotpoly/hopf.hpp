#pragma once

#include <knotpoly/bracket.hpp>
#include <knotpoly/diagram.hpp>
#include <knotpoly/laurent.hpp>
#include <knotpoly/tangle.hpp>

#include <array>
#include <utility>
#include <vector>

namespace knotpoly {

// Bilinear form giving the bracket of the two-band clasp construction.
// Doubling both components of the Hopf link into bands and inserting a
// tangle into each band yields a link whose bracket depends only on the
// two bracket vectors, through this symmetric matrix.
inline Mat2 hopf_form_matrix() {
    LaurentPoly h00 = LaurentPoly::parse("-A^-14 - A^-6 - 2A^-2 - 2A^2 - A^6 - A^14", 'A');
    LaurentPoly d = delta();
    return Mat2{h00, d * d, d * d, d};
}

inline LaurentPoly hopf_bracket(const BracketVector& vt, const BracketVector& vu) {
    Mat2 m = hopf_form_matrix();
    return m.a * (vt.f * vu.f) + m.b * (vt.f * vu.g + vt.g * vu.f) + m.d * (vt.g * vu.g);
}

inline LaurentPoly hopf_bracket(const TanglePtr& t, const TanglePtr& u) {
    return hopf_bracket(bracket_vector(t), bracket_vector(u));
}

namespace detail {

// Crossings of the doubled Hopf clasp.  Edges 1-5 and 6-10 run along the
// two strands of the first band (west to east through its tangle slot),
// 11-15 and 16-20 along the second.  Slots 1/5/6/10 receive the first
// tangle's NW/NE/SW/SE ends, slots 11/15/16/20 the second's.
inline constexpr std::array<std::array<int, 4>, 8> hopf_template_crossings = {{
    {{12, 2, 13, 1}},
    {{17, 3, 18, 2}},
    {{11, 7, 12, 6}},
    {{16, 8, 17, 7}},
    {{3, 19, 4, 18}},
    {{4, 14, 5, 13}},
    {{8, 20, 9, 19}},
    {{9, 15, 10, 14}},
}};

} // namespace detail

inline Diagram compile_H(const TanglePtr& t, const TanglePtr& u) {
    detail::TangleBuilder b;
    std::array<int, 21> te{};
    for (int k = 1; k <= 20; ++k) te[k] = b.fresh();
    for (const auto& q : detail::hopf_template_crossings)
        b.crossings.push_back(Crossing{{te[q[0]], te[q[1]], te[q[2]], te[q[3]]}});

    detail::TangleBuilder::Ends et = b.build(simplify(detail::expand_omegas(t)));
    detail::TangleBuilder::Ends eu = b.build(simplify(detail::expand_omegas(u)));
    b.glue(et.nw, te[1]);
    b.glue(et.ne, te[5]);
    b.glue(et.sw, te[6]);
    b.glue(et.se, te[10]);
    b.glue(eu.nw, te[11]);
    b.glue(eu.ne, te[15]);
    b.glue(eu.sw, te[16]);
    b.glue(eu.se, te[20]);

    b.compact();
    Diagram closed = detail::retrace(std::move(b.crossings), b.free_loops);
    return detail::relabel_canonical(closed);
}

inline JonesPoly jones_from_bracket_writhe(const LaurentPoly& bracket, int w) {
    LaurentPoly prefactor = LaurentPoly::monomial(w % 2 == 0 ? 1 : -1, -3 * w);
    return jones_from_normalized(prefactor * bracket);
}

struct ThistlethwaiteLink {
    TanglePtr t;
    TanglePtr u;
    Diagram diagram;
    LaurentPoly bracket;
    int writhe;
    JonesPoly jones;
};

// The 15-crossing two-component link whose Jones polynomial equals that of
// the two-component unlink: H(T, U) with T = (-1)^w and U = (inf + 2)^wb.
inline ThistlethwaiteLink thistlethwaite() {
    ThistlethwaiteLink out;
    out.t = t_omega(t_int(-1));
    out.u = t_omega_bar(t_sum(t_inf(), t_int(2)));
    out.diagram = compile_H(out.t, out.u);
    out.bracket = hopf_bracket(out.t, out.u);
    out.writhe = knotpoly::writhe(out.diagram);
    out.jones = jones_from_bracket_writhe(out.bracket, out.writhe);
    return out;
}

struct SFamilyEntry {
    int n = 0;
    TanglePtr tangle;
    BracketVector vector;
    LaurentPoly bracket;
    Diagram diagram;
    int writhe = 0;
    JonesPoly jones;
};

// S(n) = H(T_n, -T_n) with T_0 = inf - 2 and T_{n+1} = T_n^w.  Every member
// has bracket delta, so its Jones polynomial matches an unlink's up to the
// writhe normalisation.
inline SFamilyEntry s_family(int n) {
    if (n < 0) throw error("family index must be nonnegative");
    TanglePtr t = t_sum(t_inf(), t_mirror(t_int(2)));
    for (int k = 0; k < n; ++k) t = simplify(detail::expand_omegas(t_omega(t)));

    SFamilyEntry out;
    out.n = n;
    out.tangle = t;
    out.vector = bracket_vector(t);
    out.bracket = hopf_bracket(t, t_mirror(t));
    out.diagram = compile_H(t, t_mirror(t));
    out.writhe = knotpoly::writhe(out.diagram);
    out.jones = jones_from_bracket_writhe(out.bracket, out.writhe);
    return out;
}

} // namespace knotpoly
