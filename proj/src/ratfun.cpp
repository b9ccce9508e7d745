#include "charp/ratfun.hpp"

namespace charp {

bool operator<(const Point& a, const Point& b) {
    if (a.f_ != b.f_) throw PreconditionError("comparing points of different fields");
    if (a.is_infinity()) return false;
    if (b.is_infinity()) return true;
    return a.value() < b.value();
}

MoebiusMap MoebiusMap::identity(Field f) {
    return {f.one(), f.zero(), f.zero(), f.one()};
}

MoebiusMap MoebiusMap::negation(Field f) {
    return {-f.one(), f.zero(), f.zero(), f.one()};
}

Point MoebiusMap::apply(const Point& P) const {
    Field f = a.field();
    if (P.is_infinity()) {
        if (c.is_zero()) return Point::infinity(f);
        return Point::finite(a / c);
    }
    FieldElement den = c * P.value() + d;
    if (den.is_zero()) return Point::infinity(f);
    return Point::finite((a * P.value() + b) / den);
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& m) const {
    return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
}

MoebiusMap MoebiusMap::inverse() const {
    return {d, -b, -c, a};
}

FieldElement MoebiusMap::tangent_multiplier(const Point& P) const {
    if (apply(P) != P) throw PreconditionError("tangent multiplier at a non-fixed point");
    if (P.is_infinity()) {
        // in the local parameter w = 1/z: w -> (d w + c)/(b w + a), multiplier d/a
        return d / a;
    }
    FieldElement t = c * P.value() + d;
    return det() / (t * t);
}

MoebiusMap MoebiusMap::embedded(const Embedding& e) const {
    return {e(a), e(b), e(c), e(d)};
}

bool operator==(const MoebiusMap& x, const MoebiusMap& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

bool MoebiusMap::is_identity() const {
    // projectively: b = c = 0 and a = d
    return b.is_zero() && c.is_zero() && a == d;
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (num_.field() != den_.field())
        throw PreconditionError("field mismatch in rational function");
    if (den_.is_zero()) throw PreconditionError("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Polynomial::one(num_.field());
        return;
    }
    Polynomial g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    FieldElement lead_inv = den_.lead().inverse();
    num_ = num_ * lead_inv;
    den_ = den_ * lead_inv;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return a + (-b);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw PreconditionError("division by the zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::pow(i64 e) const {
    if (e < 0) {
        if (is_zero()) throw PreconditionError("negative power of zero");
        return RationalFunction(den_, num_).pow(-e);
    }
    return RationalFunction(num_.pow((u64)e), den_.pow((u64)e));
}

RationalFunction RationalFunction::substitute_moebius(const MoebiusMap& m) const {
    Field f = field();
    if (m.det().is_zero()) throw PreconditionError("degenerate Moebius substitution");
    // P((az+b)/(cz+d)) = sum p_i (az+b)^i (cz+d)^{D-i} / (cz+d)^D with a
    // common D = max(deg num, deg den), so numerator and denominator share
    // the same clearing factor.
    Polynomial top(f, {m.b, m.a});
    Polynomial bot(f, {m.d, m.c});
    int D = std::max(num_.degree(), den_.degree());
    auto clear = [&](const Polynomial& P) {
        Polynomial acc = Polynomial::zero(f);
        for (int i = 0; i <= P.degree(); ++i) {
            if (P.coeff(i).is_zero()) continue;
            acc = acc + Polynomial::constant(P.coeff(i)) * top.pow(i) * bot.pow(D - i);
        }
        return acc;
    };
    return RationalFunction(clear(num_), clear(den_));
}

RationalFunction RationalFunction::embedded(const Embedding& e) const {
    return RationalFunction(num_.embedded(e), den_.embedded(e));
}

FieldElement RationalFunction::eval(const FieldElement& x) const {
    FieldElement d = den_.eval(x);
    if (d.is_zero()) throw PreconditionError("evaluation at a pole");
    return num_.eval(x) / d;
}

FieldElement LaurentExpansion::coeff_at(int order) const {
    int i = order - start;
    if (i < 0 || i >= (int)coeffs.size()) return center.field().zero();
    return coeffs[i];
}

namespace {

// order of vanishing of a nonzero polynomial at a finite point
int poly_ord_at(const Polynomial& P, const FieldElement& x) {
    Polynomial lin(P.field(), {-x, P.field().one()});
    Polynomial rest = P;
    int ord = 0;
    for (;;) {
        auto [q, r] = rest.divmod(lin);
        if (!r.is_zero()) return ord;
        ++ord;
        rest = q;
        if (rest.is_zero()) return ord;
    }
}

}  // namespace

int ord_at(const RationalFunction& f, const Point& P) {
    if (f.is_zero()) throw PreconditionError("order of the zero function");
    if (P.field() != f.field()) throw PreconditionError("point in the wrong field");
    if (P.is_infinity()) return f.den().degree() - f.num().degree();
    return poly_ord_at(f.num(), P.value()) - poly_ord_at(f.den(), P.value());
}

LaurentExpansion laurent_at(const RationalFunction& f, const Point& P, int n_terms) {
    if (n_terms < 1) throw PreconditionError("laurent_at needs at least one term");
    Field F = f.field();
    if (P.field() != F) throw PreconditionError("point in the wrong field");
    if (f.is_zero()) return {P, 0, {}};

    Polynomial num = f.num(), den = f.den();
    int N = n_terms - 1;
    if (P.is_infinity()) {
        // z = 1/w: f(1/w) = w^{deg den - deg num} * rev(num)(w)/rev(den)(w);
        // both reversed polynomials are units at w = 0
        int start = den.degree() - num.degree();
        auto inv = series_inverse(den.reverse().coeffs(), N);
        auto ser = mul_trunc(num.reverse().coeffs(), inv, N);
        ser.resize(N + 1, F.zero());
        return {P, start, std::move(ser)};
    }
    const FieldElement& x = P.value();
    Polynomial sn = num.shift(x), sd = den.shift(x);  // expansions in t = z - x
    int on = poly_ord_at(sn, F.zero()), od = poly_ord_at(sd, F.zero());
    int start = on - od;
    std::vector<FieldElement> a(sn.coeffs().begin() + on, sn.coeffs().end());
    std::vector<FieldElement> b(sd.coeffs().begin() + od, sd.coeffs().end());
    auto inv = series_inverse(b, N);
    auto ser = mul_trunc(a, inv, N);
    ser.resize(N + 1, F.zero());
    return {P, start, std::move(ser)};
}

}  // namespace charp
