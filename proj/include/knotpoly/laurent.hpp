#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace knotpoly {

class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

class parse_error : public error {
public:
    parse_error(const std::string& msg, std::size_t pos)
        : error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
    parse_error(const std::string& msg, int line, int col)
        : error(msg + " (at line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
          position(0) {}
    std::size_t position;
};

class overflow_error : public error {
public:
    explicit overflow_error(const std::string& msg) : error(msg) {}
};

class cap_error : public error {
public:
    cap_error(int crossings, int cap)
        : error("state-sum cap exceeded: " + std::to_string(crossings) +
                " crossings, cap " + std::to_string(cap)) {}
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw overflow_error("integer overflow in coefficient addition");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw overflow_error("integer overflow in coefficient multiplication");
    return r;
}

// Laurent polynomial in one variable with int64 coefficients.
// Canonical form: no zero coefficients stored; the zero polynomial is the empty map.
class LaurentPoly {
public:
    using map_type = std::map<int, std::int64_t>;

    LaurentPoly() = default;

    static LaurentPoly zero() { return LaurentPoly(); }

    static LaurentPoly one() { return monomial(1, 0); }

    static LaurentPoly monomial(std::int64_t coeff, int exp) {
        LaurentPoly p;
        if (coeff != 0) p.terms_[exp] = coeff;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    const map_type& terms() const { return terms_; }

    std::int64_t coeff(int exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? 0 : it->second;
    }

    int min_exp() const {
        if (is_zero()) throw error("exponent range of the zero polynomial");
        return terms_.begin()->first;
    }

    int max_exp() const {
        if (is_zero()) throw error("exponent range of the zero polynomial");
        return terms_.rbegin()->first;
    }

    void add_term(std::int64_t coeff, int exp) {
        if (coeff == 0) return;
        auto it = terms_.find(exp);
        if (it == terms_.end()) {
            terms_[exp] = coeff;
        } else {
            it->second = checked_add(it->second, coeff);
            if (it->second == 0) terms_.erase(it);
        }
    }

    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (auto& [e, c] : o.terms_) r.add_term(c, e);
        return r;
    }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (auto& [e, c] : terms_) r.terms_[e] = checked_mul(c, -1);
        return r;
    }

    LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }

    LaurentPoly operator*(const LaurentPoly& o) const {
        LaurentPoly r;
        for (auto& [e1, c1] : terms_)
            for (auto& [e2, c2] : o.terms_) {
                int e;
                if (__builtin_add_overflow(e1, e2, &e))
                    throw overflow_error("exponent overflow in multiplication");
                r.add_term(checked_mul(c1, c2), e);
            }
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) { *this = *this + o; return *this; }
    LaurentPoly& operator-=(const LaurentPoly& o) { *this = *this - o; return *this; }
    LaurentPoly& operator*=(const LaurentPoly& o) { *this = *this * o; return *this; }

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly pow(int n) const {
        if (n < 0) throw error("negative power of a general Laurent polynomial");
        LaurentPoly r = one();
        LaurentPoly base = *this;
        while (n > 0) {
            if (n & 1) r = r * base;
            base = n > 1 ? base * base : base;
            n >>= 1;
        }
        return r;
    }

    // Substitute the variable by its inverse.
    LaurentPoly conjugate() const {
        LaurentPoly r;
        for (auto& [e, c] : terms_) r.terms_[-e] = c;
        return r;
    }

    bool is_monomial() const { return terms_.size() == 1; }

    // Reciprocal of a single-term polynomial with unit coefficient sign:
    // (c * x^e)^-1 exists in this ring only when c is +1 or -1.
    LaurentPoly invert_monomial() const {
        if (terms_.size() != 1)
            throw error("reciprocal requires a single-term polynomial");
        auto [e, c] = *terms_.begin();
        if (c != 1 && c != -1)
            throw error("reciprocal requires a unit coefficient");
        return monomial(c, -e);
    }

    std::string to_string(const std::string& var = "A") const;
    static LaurentPoly parse(const std::string& text, char var = 'A');

private:
    map_type terms_;
};

inline LaurentPoly delta() {
    LaurentPoly d;
    d.add_term(-1, -2);
    d.add_term(-1, 2);
    return d;
}

inline std::string LaurentPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [e, c] : terms_) {
        std::int64_t mag = c < 0 ? -c : c;
        std::string body;
        if (e == 0) {
            body = std::to_string(mag);
        } else {
            if (mag != 1) body = std::to_string(mag);
            body += var;
            if (e != 1) body += "^" + std::to_string(e);
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

inline LaurentPoly LaurentPoly::parse(const std::string& text, char var) {
    LaurentPoly result;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto parse_int = [&](const char* what) -> std::int64_t {
        bool neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            neg = text[i] == '-';
            ++i;
        }
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            throw parse_error(std::string("expected ") + what, i);
        std::int64_t v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = checked_mul(v, 10);
            v = checked_add(v, text[i] - '0');
            ++i;
        }
        return neg ? -v : v;
    };

    skip_ws();
    if (i >= text.size()) throw parse_error("empty polynomial", i);
    bool any = false;
    while (true) {
        skip_ws();
        if (i >= text.size()) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            if (!any && text[i] == '+') {
                ++i;
            } else {
                sign = text[i] == '-' ? -1 : 1;
                ++i;
            }
            skip_ws();
        } else if (any) {
            throw parse_error("expected '+' or '-' between terms", i);
        }
        std::int64_t coeff = 1;
        bool saw_coeff = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff = parse_int("coefficient");
            saw_coeff = true;
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip_ws();
            }
        }
        int exp = 0;
        if (i < text.size() && text[i] == var) {
            ++i;
            exp = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                std::int64_t e = parse_int("exponent");
                if (e > 1000000 || e < -1000000)
                    throw parse_error("exponent out of range", i);
                exp = static_cast<int>(e);
            }
        } else if (!saw_coeff) {
            throw parse_error(std::string("expected coefficient or '") + var + "'", i);
        }
        result.add_term(checked_mul(sign, coeff), exp);
        any = true;
    }
    if (!any) throw parse_error("empty polynomial", i);
    return result;
}

// Pair of bracket coefficients (f, g) relative to the two trivial 2-string tangles.
struct BracketVector {
    LaurentPoly f, g;
    bool operator==(const BracketVector& o) const { return f == o.f && g == o.g; }
    bool operator!=(const BracketVector& o) const { return !(*this == o); }
};

// 2x2 matrix over the Laurent ring, row-major entries a b / c d.
struct Mat2 {
    LaurentPoly a, b, c, d;

    static Mat2 identity() {
        return Mat2{LaurentPoly::one(), LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::one()};
    }

    Mat2 operator*(const Mat2& o) const {
        return Mat2{a * o.a + b * o.c, a * o.b + b * o.d,
                    c * o.a + d * o.c, c * o.b + d * o.d};
    }

    BracketVector apply(const BracketVector& v) const {
        return BracketVector{a * v.f + b * v.g, c * v.f + d * v.g};
    }

    Mat2 transpose() const { return Mat2{a, c, b, d}; }

    LaurentPoly det() const { return a * d - b * c; }

    // Inverse over the Laurent ring; requires the determinant to be +-A^k.
    Mat2 inverse() const {
        LaurentPoly inv_det = det().invert_monomial();
        return Mat2{d * inv_det, -b * inv_det, -c * inv_det, a * inv_det};
    }

    Mat2 pow(int n) const {
        if (n < 0) throw error("negative matrix power");
        Mat2 r = identity();
        for (int k = 0; k < n; ++k) r = r * *this;
        return r;
    }

    bool operator==(const Mat2& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
    bool operator!=(const Mat2& o) const { return !(*this == o); }
};

} // namespace knotpoly
