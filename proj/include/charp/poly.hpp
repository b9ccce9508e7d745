#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "charp/fields.hpp"

namespace charp {

// Dense univariate polynomial over a fixed field. Canonical form: no trailing
// zero coefficients; the zero polynomial has an empty coefficient vector.
class Polynomial {
  public:
    explicit Polynomial(Field f) : f_(f) {}
    Polynomial(Field f, std::vector<FieldElement> coeffs);

    static Polynomial zero(Field f) { return Polynomial(f); }
    static Polynomial one(Field f) { return constant(f.one()); }
    static Polynomial x(Field f);
    static Polynomial constant(FieldElement c);
    static Polynomial from_ints(Field f, std::initializer_list<i64> cs);
    static Polynomial from_ints(Field f, const std::vector<i64>& cs);
    // c * x^d
    static Polynomial monomial(FieldElement c, int d);

    Field field() const { return f_; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    FieldElement coeff(int i) const;  // zero outside range
    FieldElement lead() const;        // throws on zero polynomial

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator*(const FieldElement& s) const;
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.f_ == b.f_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // Euclidean division by a nonzero divisor; returns {quotient, remainder}.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;
    Polynomial operator/(const Polynomial& d) const { return divmod(d).first; }
    Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }

    Polynomial monic() const;  // throws on zero
    Polynomial derivative() const;
    FieldElement eval(const FieldElement& x) const;
    Polynomial pow(u64 e) const;
    // P(x + a)
    Polynomial shift(const FieldElement& a) const;
    // x^deg * P(1/x) (coefficients reversed, using the true degree)
    Polynomial reverse() const;
    // Coefficients mapped into a larger field.
    Polynomial embedded(const Embedding& e) const;

  private:
    void trim();
    Field f_;
    std::vector<FieldElement> c_;
};

// Monic gcd (the zero polynomial if both inputs are zero).
Polynomial poly_gcd(Polynomial a, Polynomial b);

// Extended Euclid: returns (g, s, t) with s*a + t*b = g = gcd(a, b), g monic.
struct XgcdResult {
    Polynomial g, s, t;
};
XgcdResult poly_xgcd(const Polynomial& a, const Polynomial& b);

// base^e mod m
Polynomial pow_mod(const Polynomial& base, u64 e, const Polynomial& m);
// x^{p^j} mod m, by j-fold p-th powering
Polynomial frobenius_power(const Polynomial& m, int j);

// All roots of f in the given field (same p; the coefficient field's degree
// must divide the target's) with multiplicities, ordered by enumeration
// index. Found by gcd with x^q - x followed by an exhaustive scan; scans of
// more than `scan_cap()` elements throw SearchCapError.
std::vector<std::pair<FieldElement, int>> roots_in(const Polynomial& f, Field target);

// Scan cap: value of CHARP_MAX_FIELD, default 8'000'000.
u64 scan_cap();

// Least extension degree K (multiple of the coefficient field's degree, at
// most max_ext) such that f splits into linear factors over F_{p^K}.
// Computed from the distinct-degree structure of f's irreducible factors.
Field splitting_field(const Polynomial& f, int max_ext = 12);

// --- truncated power series helpers (index i = coefficient of y^i) ---

// a*b mod y^{N+1}
std::vector<FieldElement> mul_trunc(const std::vector<FieldElement>& a,
                                    const std::vector<FieldElement>& b, int N);
// 1/a mod y^{N+1}; requires a[0] != 0
std::vector<FieldElement> series_inverse(const std::vector<FieldElement>& a, int N);

}  // namespace charp
