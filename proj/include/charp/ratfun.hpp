#pragma once

#include <optional>

#include "charp/poly.hpp"

namespace charp {

// A point of the projective line: a field value or infinity.
class Point {
  public:
    Point() : f_(), v_(std::nullopt) {}  // placeholder; field() is invalid
    static Point infinity(Field f) { return Point(f, std::nullopt); }
    static Point finite(FieldElement v) {
        Field f = v.field();
        return Point(f, std::move(v));
    }

    Field field() const { return f_; }
    bool is_infinity() const { return !v_.has_value(); }
    const FieldElement& value() const {
        if (is_infinity()) throw PreconditionError("the point at infinity has no value");
        return *v_;
    }
    Point embedded(const Embedding& e) const {
        return is_infinity() ? infinity(e.dst()) : finite(e(*v_));
    }

    friend bool operator==(const Point& a, const Point& b) {
        return a.f_ == b.f_ && a.v_ == b.v_;
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    // canonical order: finite points by enumeration index, infinity last
    friend bool operator<(const Point& a, const Point& b);

  private:
    Point(Field f, std::optional<FieldElement> v) : f_(f), v_(std::move(v)) {}
    Field f_;
    std::optional<FieldElement> v_;
};

// z -> (a z + b) / (c z + d), ad - bc != 0.
struct MoebiusMap {
    FieldElement a, b, c, d;

    static MoebiusMap identity(Field f);
    static MoebiusMap negation(Field f);  // z -> -z

    FieldElement det() const { return a * d - b * c; }
    Point apply(const Point& P) const;
    MoebiusMap compose(const MoebiusMap& inner) const;  // this after inner
    MoebiusMap inverse() const;
    // Multiplier on the tangent line at a fixed point (requires apply(P)==P).
    FieldElement tangent_multiplier(const Point& P) const;
    MoebiusMap embedded(const Embedding& e) const;
    friend bool operator==(const MoebiusMap&, const MoebiusMap&);
    bool is_identity() const;
};

class RationalFunction {
  public:
    explicit RationalFunction(Field f)
        : num_(Polynomial::zero(f)), den_(Polynomial::one(f)) {}
    // Reduced on construction: gcd(num, den) = 1, den monic.
    RationalFunction(Polynomial num, Polynomial den);
    static RationalFunction of(Polynomial p) {
        Field f = p.field();
        return RationalFunction(std::move(p), Polynomial::one(f));
    }

    Field field() const { return num_.field(); }
    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction&, const RationalFunction&);
    friend RationalFunction operator-(const RationalFunction&, const RationalFunction&);
    friend RationalFunction operator*(const RationalFunction&, const RationalFunction&);
    friend RationalFunction operator/(const RationalFunction&, const RationalFunction&);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
        return !(a == b);
    }

    RationalFunction derivative() const;  // quotient rule, reduced
    RationalFunction pow(i64 e) const;
    // f((az+b)/(cz+d)); throws on degenerate matrix
    RationalFunction substitute_moebius(const MoebiusMap& m) const;
    RationalFunction embedded(const Embedding& e) const;
    // value at a finite point; throws if P is a pole
    FieldElement eval(const FieldElement& x) const;

  private:
    Polynomial num_, den_;
};

struct LaurentExpansion {
    Point center;
    int start = 0;                     // order of the leading term
    std::vector<FieldElement> coeffs;  // coeffs[i] multiplies t^{start+i}
    FieldElement coeff_at(int order) const;
};

// Expansion of f in the local parameter t = z - P (or t = 1/z at infinity),
// n_terms coefficients starting at the true order.
LaurentExpansion laurent_at(const RationalFunction& f, const Point& P, int n_terms);

// Vanishing order of f at P (negative at poles); throws on the zero function.
int ord_at(const RationalFunction& f, const Point& P);

}  // namespace charp
