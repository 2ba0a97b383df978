#pragma once

#include <knotpoly/bracket.hpp>
#include <knotpoly/diagram.hpp>
#include <knotpoly/laurent.hpp>

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace knotpoly {

struct TangleExpr;
using TanglePtr = std::shared_ptr<const TangleExpr>;

// Expression tree over integer tangles, the infinity tangle, horizontal and
// vertical sums, product, NW-SE inversion, mirror, and the twist-and-add
// operations w / wb.
struct TangleExpr {
    enum class Kind { Int, Infinity, Sum, VSum, Prod, Inv, Mirror, Omega, OmegaBar };
    Kind kind;
    int n = 0;
    TanglePtr a, b;
};

inline constexpr int max_int_tangle = 4096;

inline TanglePtr t_int(int n) {
    if (n > max_int_tangle || n < -max_int_tangle)
        throw error("integer tangle out of range");
    return std::make_shared<TangleExpr>(TangleExpr{TangleExpr::Kind::Int, n, nullptr, nullptr});
}
inline TanglePtr t_inf() {
    return std::make_shared<TangleExpr>(TangleExpr{TangleExpr::Kind::Infinity, 0, nullptr, nullptr});
}
inline TanglePtr t_node(TangleExpr::Kind k, TanglePtr a, TanglePtr b = nullptr) {
    return std::make_shared<TangleExpr>(TangleExpr{k, 0, std::move(a), std::move(b)});
}
inline TanglePtr t_sum(TanglePtr a, TanglePtr b) { return t_node(TangleExpr::Kind::Sum, std::move(a), std::move(b)); }
inline TanglePtr t_vsum(TanglePtr a, TanglePtr b) { return t_node(TangleExpr::Kind::VSum, std::move(a), std::move(b)); }
inline TanglePtr t_prod(TanglePtr a, TanglePtr b) { return t_node(TangleExpr::Kind::Prod, std::move(a), std::move(b)); }
inline TanglePtr t_inv(TanglePtr a) { return t_node(TangleExpr::Kind::Inv, std::move(a)); }
inline TanglePtr t_mirror(TanglePtr a) { return t_node(TangleExpr::Kind::Mirror, std::move(a)); }
inline TanglePtr t_omega(TanglePtr a) { return t_node(TangleExpr::Kind::Omega, std::move(a)); }
inline TanglePtr t_omega_bar(TanglePtr a) { return t_node(TangleExpr::Kind::OmegaBar, std::move(a)); }

inline bool equal_tangles(const TanglePtr& x, const TanglePtr& y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind || x->n != y->n) return false;
    return equal_tangles(x->a, y->a) && equal_tangles(x->b, y->b);
}

// ---------------------------------------------------------------------------
// Matrices of the vector calculus

namespace detail {
inline LaurentPoly lA(const char* s) { return LaurentPoly::parse(s, 'A'); }
}

inline Mat2 m_plus() {
    using detail::lA;
    return Mat2{lA("A"), LaurentPoly::zero(), lA("A^-1"), lA("-A^-3")};
}
inline Mat2 m_plus_inv() {
    using detail::lA;
    return Mat2{lA("A^-1"), LaurentPoly::zero(), lA("A"), lA("-A^3")};
}
inline Mat2 m_star() {
    using detail::lA;
    return Mat2{lA("-A^3"), lA("A"), LaurentPoly::zero(), lA("A^-1")};
}
inline Mat2 omega_matrix() {
    Mat2 p = m_plus();
    return p * p * m_star() * p * p;
}
inline Mat2 omega_matrix_inv() {
    return omega_matrix().inverse();
}

// ---------------------------------------------------------------------------
// Bracket vectors

inline BracketVector bracket_vector(const TanglePtr& t);

namespace detail {

inline Mat2 sum_matrix(const BracketVector& u) {
    return Mat2{u.f, LaurentPoly::zero(), u.g, u.f + delta() * u.g};
}
inline Mat2 vsum_matrix(const BracketVector& u) {
    return Mat2{delta() * u.f + u.g, u.f, LaurentPoly::zero(), u.g};
}

} // namespace detail

inline BracketVector bracket_vector(const TanglePtr& t) {
    using K = TangleExpr::Kind;
    switch (t->kind) {
        case K::Int: {
            BracketVector v{LaurentPoly::one(), LaurentPoly::zero()};
            Mat2 m = t->n >= 0 ? m_plus() : m_plus_inv();
            for (int k = std::abs(t->n); k > 0; --k) v = m.apply(v);
            return v;
        }
        case K::Infinity:
            return BracketVector{LaurentPoly::zero(), LaurentPoly::one()};
        case K::Sum:
            return detail::sum_matrix(bracket_vector(t->b)).apply(bracket_vector(t->a));
        case K::VSum:
            return detail::vsum_matrix(bracket_vector(t->b)).apply(bracket_vector(t->a));
        case K::Prod:
            return detail::sum_matrix(bracket_vector(t->b))
                .apply(bracket_vector(t_inv(t->a)));
        case K::Inv: {
            BracketVector v = bracket_vector(t->a);
            return BracketVector{v.g.conjugate(), v.f.conjugate()};
        }
        case K::Mirror: {
            BracketVector v = bracket_vector(t->a);
            return BracketVector{v.f.conjugate(), v.g.conjugate()};
        }
        case K::Omega:
            return omega_matrix().apply(bracket_vector(t->a));
        case K::OmegaBar:
            return omega_matrix_inv().apply(bracket_vector(t->a));
    }
    throw error("unreachable tangle kind");
}

struct ClosureBrackets {
    LaurentPoly numerator;
    LaurentPoly denominator;
};

inline ClosureBrackets closure_brackets(const TanglePtr& t) {
    BracketVector v = bracket_vector(t);
    return ClosureBrackets{delta() * v.f + v.g, v.f + delta() * v.g};
}

// ---------------------------------------------------------------------------
// Structural rewrites

enum class TwistDirection { w, wb };

namespace detail {

inline TanglePtr expand_omegas(const TanglePtr& t) {
    using K = TangleExpr::Kind;
    switch (t->kind) {
        case K::Int:
        case K::Infinity:
            return t;
        case K::Sum:
        case K::VSum:
        case K::Prod: {
            TanglePtr a = expand_omegas(t->a), b = expand_omegas(t->b);
            if (a == t->a && b == t->b) return t;
            return t_node(t->kind, a, b);
        }
        case K::Inv:
        case K::Mirror: {
            TanglePtr a = expand_omegas(t->a);
            if (a == t->a) return t;
            return t_node(t->kind, a);
        }
        case K::Omega: {
            TanglePtr a = expand_omegas(t->a);
            return t_sum(t_vsum(t_sum(a, t_int(2)), t_int(1)), t_int(2));
        }
        case K::OmegaBar: {
            TanglePtr a = expand_omegas(t->a);
            return t_sum(t_vsum(t_sum(a, t_mirror(t_int(2))), t_int(-1)), t_mirror(t_int(2)));
        }
    }
    throw error("unreachable tangle kind");
}

} // namespace detail

// Structural expansion of the twist operations: T^w = ((T+2)*1)+2 and
// T^wb = ((T-2)*(-1))-2, applied to every twist node in the tree and once
// around the root.
inline TanglePtr omega_rewrite(const TanglePtr& t, TwistDirection dir) {
    TanglePtr wrapped = dir == TwistDirection::w ? t_omega(t) : t_omega_bar(t);
    return detail::expand_omegas(wrapped);
}

namespace detail {

// Exact, bracket-preserving tidy pass: integer-tangle merges inside
// horizontal sums, identity elements dropped, mirrors pushed to the leaves.
inline TanglePtr simplify_pass(const TanglePtr& t, bool& changed) {
    using K = TangleExpr::Kind;
    switch (t->kind) {
        case K::Int:
        case K::Infinity:
            return t;
        case K::Mirror: {
            const TanglePtr& x = t->a;
            switch (x->kind) {
                case K::Int:
                    changed = true;
                    return t_int(-x->n);
                case K::Infinity:
                    changed = true;
                    return x;
                case K::Mirror:
                    changed = true;
                    return simplify_pass(x->a, changed);
                case K::Sum:
                case K::VSum:
                case K::Prod:
                    changed = true;
                    return simplify_pass(t_node(x->kind, t_mirror(x->a), t_mirror(x->b)), changed);
                case K::Inv:
                    changed = true;
                    return simplify_pass(t_inv(t_mirror(x->a)), changed);
                default: {
                    TanglePtr inner = simplify_pass(x, changed);
                    return inner == x ? t : t_mirror(inner);
                }
            }
        }
        case K::Inv: {
            const TanglePtr& x = t->a;
            if (x->kind == K::Inv) {
                changed = true;
                return simplify_pass(x->a, changed);
            }
            if (x->kind == K::Infinity) {
                changed = true;
                return t_int(0);
            }
            if (x->kind == K::Int && (x->n == 0 || x->n == 1 || x->n == -1)) {
                changed = true;
                return x->n == 0 ? t_inf() : x;
            }
            TanglePtr inner = simplify_pass(x, changed);
            return inner == x ? t : t_inv(inner);
        }
        case K::Prod: {
            TanglePtr a = simplify_pass(t->a, changed), b = simplify_pass(t->b, changed);
            return (a == t->a && b == t->b) ? t : t_prod(a, b);
        }
        case K::Sum: {
            std::vector<TanglePtr> terms;
            auto flatten = [&](auto&& self, const TanglePtr& node) -> void {
                if (node->kind == K::Sum) {
                    self(self, node->a);
                    self(self, node->b);
                } else {
                    terms.push_back(simplify_pass(node, changed));
                }
            };
            flatten(flatten, t);

            std::vector<TanglePtr> merged;
            for (auto& term : terms) {
                if (term->kind == K::Int && term->n == 0) {
                    changed = true;
                    continue;
                }
                if (term->kind == K::Int && !merged.empty() && merged.back()->kind == K::Int) {
                    int s = merged.back()->n + term->n;
                    merged.pop_back();
                    changed = true;
                    if (s != 0) merged.push_back(t_int(s));
                    continue;
                }
                merged.push_back(term);
            }
            if (merged.empty()) {
                changed = true;
                return t_int(0);
            }
            TanglePtr out = merged[0];
            for (std::size_t i = 1; i < merged.size(); ++i) out = t_sum(out, merged[i]);
            if (!equal_tangles(out, t)) changed = true;
            return out;
        }
        case K::VSum: {
            std::vector<TanglePtr> terms;
            auto flatten = [&](auto&& self, const TanglePtr& node) -> void {
                if (node->kind == K::VSum) {
                    self(self, node->a);
                    self(self, node->b);
                } else {
                    terms.push_back(simplify_pass(node, changed));
                }
            };
            flatten(flatten, t);

            std::vector<TanglePtr> kept;
            for (auto& term : terms) {
                if (term->kind == K::Infinity) {
                    changed = true;
                    continue;
                }
                kept.push_back(term);
            }
            if (kept.empty()) {
                changed = true;
                return t_inf();
            }
            TanglePtr out = kept[0];
            for (std::size_t i = 1; i < kept.size(); ++i) out = t_vsum(out, kept[i]);
            if (!equal_tangles(out, t)) changed = true;
            return out;
        }
        default:
            return t;
    }
}

} // namespace detail

inline TanglePtr simplify(TanglePtr t) {
    for (int round = 0; round < 64; ++round) {
        bool changed = false;
        TanglePtr next = detail::simplify_pass(t, changed);
        if (!changed) return next;
        t = next;
    }
    return t;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class TangleParser {
public:
    explicit TangleParser(const std::string& text) : s_(text) {}

    TanglePtr parse() {
        TanglePtr t = parse_sum();
        skip();
        if (pos_ < s_.size())
            throw parse_error("unexpected trailing input", pos_);
        return t;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool peek_is(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool eat_str(const char* lit) {
        skip();
        std::size_t n = std::char_traits<char>::length(lit);
        if (s_.compare(pos_, n, lit) == 0) {
            pos_ += n;
            return true;
        }
        return false;
    }

    TanglePtr parse_sum() {
        TanglePtr left = parse_vsum();
        while (true) {
            if (eat('+')) {
                left = t_sum(left, parse_vsum());
            } else if (peek_is('-')) {
                ++pos_;
                left = t_sum(left, t_mirror(parse_vsum()));
            } else {
                return left;
            }
        }
    }

    TanglePtr parse_vsum() {
        TanglePtr left = parse_prod();
        while (eat('*')) left = t_vsum(left, parse_prod());
        return left;
    }

    TanglePtr parse_prod() {
        TanglePtr left = parse_postfix();
        while (eat('.')) left = t_prod(left, parse_postfix());
        return left;
    }

    TanglePtr parse_postfix() {
        TanglePtr t = parse_primary();
        while (peek_is('^')) {
            std::size_t at = pos_;
            ++pos_;
            if (eat_str("-1")) {
                t = t_inv(t);
            } else if (eat_str("wb")) {
                t = t_omega_bar(t);
            } else if (eat_str("w")) {
                t = t_omega(t);
            } else if (eat_str("\xcf\x89\xcc\x84")) {  // omega with combining macron
                t = t_omega_bar(t);
            } else if (eat_str("\xcf\x89")) {
                t = t_omega(t);
            } else {
                throw parse_error("expected -1, w, or wb after '^'", at);
            }
        }
        return t;
    }

    long parse_number() {
        skip();
        std::size_t at = pos_;
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > max_int_tangle)
                throw parse_error("integer tangle out of range", at);
            ++pos_;
        }
        return v;
    }

    TanglePtr parse_primary() {
        skip();
        if (pos_ >= s_.size()) throw parse_error("unexpected end of tangle expression", pos_);
        char c = s_[pos_];
        if (c == '(') {
            std::size_t at = pos_;
            ++pos_;
            TanglePtr t = parse_sum();
            if (!eat(')'))
                throw parse_error("unclosed '('", at);
            return t;
        }
        if (c == '-') {
            ++pos_;
            skip();
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                return t_int(static_cast<int>(-parse_number()));
            return t_mirror(parse_postfix());
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return t_int(static_cast<int>(parse_number()));
        if (eat_str("inf") || eat_str("\xe2\x88\x9e"))
            return t_inf();
        throw parse_error("expected a tangle atom", pos_);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline TanglePtr parse_tangle(const std::string& text) {
    return detail::TangleParser(text).parse();
}

namespace detail {

inline int tangle_prec(const TanglePtr& t) {
    using K = TangleExpr::Kind;
    switch (t->kind) {
        case K::Mirror: return 0;
        case K::Sum: return 1;
        case K::VSum: return 2;
        case K::Prod: return 3;
        case K::Inv:
        case K::Omega:
        case K::OmegaBar: return 4;
        default: return 5;
    }
}

inline std::string tangle_str(const TanglePtr& t, int min_prec) {
    using K = TangleExpr::Kind;
    std::string out;
    switch (t->kind) {
        case K::Int: out = std::to_string(t->n); break;
        case K::Infinity: out = "inf"; break;
        case K::Sum:
            if (t->b->kind == K::Mirror)
                out = tangle_str(t->a, 1) + " - " + tangle_str(t->b->a, 2);
            else
                out = tangle_str(t->a, 1) + " + " + tangle_str(t->b, 2);
            break;
        case K::VSum:
            out = tangle_str(t->a, 2) + " * " + tangle_str(t->b, 3);
            break;
        case K::Prod:
            out = tangle_str(t->a, 3) + " . " + tangle_str(t->b, 4);
            break;
        case K::Inv:
            out = tangle_str(t->a, 5) + "^-1";
            break;
        case K::Omega:
            out = tangle_str(t->a, 5) + "^w";
            break;
        case K::OmegaBar:
            out = tangle_str(t->a, 5) + "^wb";
            break;
        case K::Mirror:
            out = "-(" + tangle_str(t->a, 1) + ")";
            break;
    }
    if (tangle_prec(t) < min_prec) return "(" + out + ")";
    return out;
}

} // namespace detail

inline std::string to_string(const TanglePtr& t) { return detail::tangle_str(t, 0); }

// ---------------------------------------------------------------------------
// Compilation to diagrams

// Diagram fragment with four boundary endpoints.  Boundary edges appear once
// among the crossing slots (or not at all, when a boundary arc is crossing
// free); inner edges appear twice.
struct TangleDiagram {
    std::vector<Crossing> crossings;
    int nw = 0, ne = 0, sw = 0, se = 0;
    int free_loops = 0;
};

namespace detail {

struct TangleBuilder {
    std::vector<Crossing> crossings;
    std::map<int, int> parent;
    int next = 1;
    int free_loops = 0;

    int fresh() { return next++; }

    int find(int x) {
        if (!parent.count(x)) parent[x] = x;
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    // Joining two arc ends; joining an arc to itself closes a circle.
    void glue(int x, int y) {
        int rx = find(x), ry = find(y);
        if (rx == ry) {
            ++free_loops;
            return;
        }
        parent[std::max(rx, ry)] = std::min(rx, ry);
    }

    struct Ends {
        int nw, ne, sw, se;
    };

    // 0-tangle: two horizontal arcs
    Ends zero() {
        int top = fresh(), bottom = fresh();
        return Ends{top, top, bottom, bottom};
    }

    // infinity tangle: two vertical arcs
    Ends infinity() {
        int left = fresh(), right = fresh();
        return Ends{left, right, left, right};
    }

    Ends twists(int n) {
        if (n == 0) return zero();
        int count = std::abs(n);
        std::vector<int> top(count + 1), bottom(count + 1);
        for (int i = 0; i <= count; ++i) {
            top[i] = fresh();
            bottom[i] = fresh();
        }
        for (int i = 1; i <= count; ++i) {
            if (n > 0)
                crossings.push_back(Crossing{{bottom[i - 1], bottom[i], top[i], top[i - 1]}});
            else
                crossings.push_back(Crossing{{top[i - 1], bottom[i - 1], bottom[i], top[i]}});
        }
        return Ends{top[0], top[count], bottom[0], bottom[count]};
    }

    Ends build(const TanglePtr& t) {
        using K = TangleExpr::Kind;
        switch (t->kind) {
            case K::Int:
                return twists(t->n);
            case K::Infinity:
                return infinity();
            case K::Sum: {
                Ends l = build(t->a), r = build(t->b);
                glue(l.ne, r.nw);
                glue(l.se, r.sw);
                return Ends{l.nw, r.ne, l.sw, r.se};
            }
            case K::VSum: {
                Ends top = build(t->a), bot = build(t->b);
                glue(top.sw, bot.nw);
                glue(top.se, bot.ne);
                return Ends{top.nw, top.ne, bot.sw, bot.se};
            }
            case K::Prod:
                return build(t_sum(t_inv(t->a), t->b));
            case K::Inv: {
                std::size_t start = crossings.size();
                Ends e = build(t->a);
                for (std::size_t i = start; i < crossings.size(); ++i) {
                    auto& q = crossings[i].e;
                    q = {q[0], q[3], q[2], q[1]};
                }
                return Ends{e.nw, e.sw, e.ne, e.se};
            }
            case K::Mirror: {
                std::size_t start = crossings.size();
                Ends e = build(t->a);
                for (std::size_t i = start; i < crossings.size(); ++i) {
                    auto& q = crossings[i].e;
                    q = {q[1], q[2], q[3], q[0]};
                }
                return e;
            }
            case K::Omega:
            case K::OmegaBar:
                return build(expand_omegas(t));
        }
        throw error("unreachable tangle kind");
    }

    // Renumber union-find classes compactly and rewrite the crossing slots.
    std::map<int, int> compact() {
        std::map<int, int> rename;
        auto name = [&](int e) {
            int r = find(e);
            auto it = rename.find(r);
            if (it != rename.end()) return it->second;
            int id = static_cast<int>(rename.size()) + 1;
            rename.emplace(r, id);
            return id;
        };
        for (auto& cr : crossings)
            for (int s = 0; s < 4; ++s) cr.e[s] = name(cr.e[s]);
        // remaining fresh edges (crossing-free arcs) get names on demand via
        // the returned map from class representative to compact id
        std::map<int, int> out;
        for (int e = 1; e < next; ++e) {
            int r = find(e);
            auto it = rename.find(r);
            if (it == rename.end()) {
                int id = static_cast<int>(rename.size()) + 1;
                rename.emplace(r, id);
                out[e] = id;
            } else {
                out[e] = it->second;
            }
        }
        return out;
    }
};

} // namespace detail

inline TangleDiagram compile_tangle(const TanglePtr& t, bool tidy = true) {
    detail::TangleBuilder b;
    TanglePtr prepared = detail::expand_omegas(t);
    if (tidy) prepared = simplify(prepared);
    detail::TangleBuilder::Ends e = b.build(prepared);
    auto names = b.compact();
    TangleDiagram td;
    td.crossings = std::move(b.crossings);
    td.free_loops = b.free_loops;
    td.nw = names.at(e.nw);
    td.ne = names.at(e.ne);
    td.sw = names.at(e.sw);
    td.se = names.at(e.se);
    return td;
}

// Enumerate smoothing states of a 4-ended fragment; each state contributes
// A^(#A-#B) * delta^(closed curves) to the coefficient of whichever trivial
// tangle matches the endpoint connectivity.
inline BracketVector tangle_bracket_statesum(const TangleDiagram& td,
                                             int cap = default_state_sum_cap) {
    const int n = static_cast<int>(td.crossings.size());
    if (n > cap) throw cap_error(n, cap);

    std::map<int, int> ids;
    for (const auto& cr : td.crossings)
        for (int s = 0; s < 4; ++s) ids.emplace(cr.e[s], 0);
    for (int corner : {td.nw, td.ne, td.sw, td.se}) ids.emplace(corner, 0);
    int next_id = 0;
    for (auto& [e, id] : ids) id = next_id++;
    const int E = next_id;

    std::vector<std::array<int, 4>> slots(n);
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < 4; ++s) slots[i][s] = ids.at(td.crossings[i].e[s]);
    const int c_nw = ids.at(td.nw), c_ne = ids.at(td.ne);
    const int c_sw = ids.at(td.sw), c_se = ids.at(td.se);

    std::vector<int> parent(E);
    auto find = [&parent](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    // counts[type][#B][closed curves]
    std::vector<std::vector<std::int64_t>> counts[2];
    for (auto& c : counts) c.assign(n + 1, std::vector<std::int64_t>(E + 1, 0));

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t state = 0; state < total; ++state) {
        for (int i = 0; i < E; ++i) parent[i] = i;
        int merges = 0;
        for (int i = 0; i < n; ++i) {
            const auto& q = slots[i];
            int x0, y0, x1, y1;
            if ((state >> i) & 1) {
                x0 = q[0]; y0 = q[3];
                x1 = q[1]; y1 = q[2];
            } else {
                x0 = q[0]; y0 = q[1];
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
        int r_nw = find(c_nw), r_ne = find(c_ne), r_sw = find(c_sw), r_se = find(c_se);
        int type;
        if (r_nw == r_ne && r_sw == r_se && r_nw != r_sw)
            type = 0;
        else if (r_nw == r_sw && r_ne == r_se && r_nw != r_ne)
            type = 1;
        else
            throw error("smoothing state connects the boundary diagonally");
        int closed = (E - merges) - 2;
        ++counts[type][std::popcount(state)][closed];
    }

    std::vector<LaurentPoly> dpow(E + 1 + td.free_loops);
    dpow[0] = LaurentPoly::one();
    for (std::size_t k = 1; k < dpow.size(); ++k) dpow[k] = dpow[k - 1] * delta();

    BracketVector out;
    for (int type = 0; type < 2; ++type) {
        LaurentPoly acc;
        for (int bcount = 0; bcount <= n; ++bcount)
            for (int c = 0; c <= E; ++c) {
                std::int64_t cnt = counts[type][bcount][c];
                if (cnt == 0) continue;
                acc += LaurentPoly::monomial(cnt, n - 2 * bcount) * dpow[c + td.free_loops];
            }
        if (type == 0)
            out.f = acc;
        else
            out.g = acc;
    }
    return out;
}

namespace detail {

// Canonical edge labels after closing: follow each component cycle, numbering
// edges consecutively, components in first-touch order.
inline Diagram relabel_canonical(const Diagram& d) {
    std::map<int, int> rename;
    int next = 1;
    for (const auto& cyc : d.components)
        for (int e : cyc) rename[e] = next++;
    Diagram out;
    out.free_loops = d.free_loops;
    for (Crossing cr : d.crossings) {
        for (int s = 0; s < 4; ++s) cr.e[s] = rename.at(cr.e[s]);
        out.crossings.push_back(cr);
    }
    for (std::vector<int> cyc : d.components) {
        for (int& e : cyc) e = rename.at(e);
        out.components.push_back(std::move(cyc));
    }
    return out;
}

inline Diagram close_tangle(const TanglePtr& t, bool numerator, bool tidy) {
    TangleBuilder b;
    TanglePtr prepared = expand_omegas(t);
    if (tidy) prepared = simplify(prepared);
    TangleBuilder::Ends e = b.build(prepared);
    if (numerator) {
        b.glue(e.nw, e.ne);
        b.glue(e.sw, e.se);
    } else {
        b.glue(e.nw, e.sw);
        b.glue(e.ne, e.se);
    }
    b.compact();
    Diagram closed = retrace(std::move(b.crossings), b.free_loops);
    return relabel_canonical(closed);
}

} // namespace detail

inline Diagram numerator_closure(const TanglePtr& t, bool tidy = true) {
    return detail::close_tangle(t, true, tidy);
}

inline Diagram denominator_closure(const TanglePtr& t, bool tidy = true) {
    return detail::close_tangle(t, false, tidy);
}

} // namespace knotpoly
