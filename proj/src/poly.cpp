#include "charp/poly.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace charp {

Polynomial::Polynomial(Field f, std::vector<FieldElement> coeffs) : f_(f), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        if (c.field() != f_) throw PreconditionError("polynomial coefficient in foreign field");
    trim();
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Polynomial Polynomial::x(Field f) {
    return Polynomial(f, {f.zero(), f.one()});
}

Polynomial Polynomial::constant(FieldElement c) {
    Field f = c.field();
    if (c.is_zero()) return Polynomial(f);
    return Polynomial(f, {std::move(c)});
}

Polynomial Polynomial::from_ints(Field f, std::initializer_list<i64> cs) {
    return from_ints(f, std::vector<i64>(cs));
}

Polynomial Polynomial::from_ints(Field f, const std::vector<i64>& cs) {
    std::vector<FieldElement> v;
    v.reserve(cs.size());
    for (i64 c : cs) v.push_back(f.from_int(c));
    return Polynomial(f, std::move(v));
}

Polynomial Polynomial::monomial(FieldElement c, int d) {
    Field f = c.field();
    if (c.is_zero()) return Polynomial(f);
    std::vector<FieldElement> v(d + 1, f.zero());
    v[d] = std::move(c);
    return Polynomial(f, std::move(v));
}

FieldElement Polynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return f_.zero();
    return c_[i];
}

FieldElement Polynomial::lead() const {
    if (c_.empty()) throw PreconditionError("zero polynomial has no leading coefficient");
    return c_.back();
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    if (a.f_ != b.f_) throw PreconditionError("field mismatch in polynomial arithmetic");
    Polynomial r(a.f_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), a.f_.zero());
    for (size_t i = 0; i < r.c_.size(); ++i) {
        if (i < a.c_.size()) r.c_[i] += a.c_[i];
        if (i < b.c_.size()) r.c_[i] += b.c_[i];
    }
    r.trim();
    return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.f_ != b.f_) throw PreconditionError("field mismatch in polynomial arithmetic");
    if (a.is_zero() || b.is_zero()) return Polynomial(a.f_);
    Polynomial r(a.f_);
    r.c_.assign(a.c_.size() + b.c_.size() - 1, a.f_.zero());
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
}

Polynomial Polynomial::operator*(const FieldElement& s) const {
    Polynomial r = *this;
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
    if (d.is_zero()) throw PreconditionError("polynomial division by zero");
    if (f_ != d.f_) throw PreconditionError("field mismatch in polynomial division");
    Polynomial q(f_), r = *this;
    if (r.degree() < d.degree()) return {q, r};
    q.c_.assign(r.degree() - d.degree() + 1, f_.zero());
    FieldElement lead_inv = d.lead().inverse();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int off = r.degree() - d.degree();
        FieldElement c = r.lead() * lead_inv;
        q.c_[off] = c;
        for (int j = 0; j <= d.degree(); ++j) r.c_[off + j] -= c * d.c_[j];
        r.trim();
    }
    q.trim();
    return {q, r};
}

Polynomial Polynomial::monic() const {
    return *this * lead().inverse();
}

Polynomial Polynomial::derivative() const {
    Polynomial r(f_);
    if (degree() < 1) return r;
    r.c_.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r.c_.push_back(c_[i] * f_.from_int((i64)i));
    r.trim();
    return r;
}

FieldElement Polynomial::eval(const FieldElement& x) const {
    FieldElement acc = f_.zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Polynomial Polynomial::pow(u64 e) const {
    Polynomial base = *this, r = Polynomial::one(f_);
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

Polynomial Polynomial::shift(const FieldElement& a) const {
    Polynomial xa(f_, {a, f_.one()});
    Polynomial acc(f_);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * xa + Polynomial::constant(c_[i]);
    return acc;
}

Polynomial Polynomial::reverse() const {
    Polynomial r = *this;
    std::reverse(r.c_.begin(), r.c_.end());
    r.trim();
    return r;
}

Polynomial Polynomial::embedded(const Embedding& e) const {
    Polynomial r(e.dst());
    r.c_.reserve(c_.size());
    for (const auto& c : c_) r.c_.push_back(e(c));
    r.trim();
    return r;
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

Polynomial pow_mod(const Polynomial& base, u64 e, const Polynomial& m) {
    Polynomial b = base % m, r = Polynomial::one(base.field());
    while (e) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

Polynomial frobenius_power(const Polynomial& m, int j) {
    Field f = m.field();
    Polynomial g = Polynomial::x(f) % m;
    for (int i = 0; i < j; ++i) g = pow_mod(g, f.p(), m);
    return g;
}

u64 scan_cap() {
    if (const char* s = std::getenv("CHARP_MAX_FIELD")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 8'000'000ull;
}

std::vector<std::pair<FieldElement, int>> roots_in(const Polynomial& f, Field target) {
    if (f.is_zero()) throw PreconditionError("root finding on the zero polynomial");
    Field src = f.field();
    if (src.p() != target.p()) throw PreconditionError("root field has wrong characteristic");
    Polynomial ft = (src == target) ? f : f.embedded(Embedding(src, target));
    if (ft.degree() < 1) return {};
    if (target.size() > scan_cap())
        throw SearchCapError("field of size " + std::to_string(target.size()) +
                             " exceeds the scan cap (set CHARP_MAX_FIELD to raise)");
    // gcd with x^q - x (q = |target|) isolates the roots lying in `target`
    Polynomial m = ft.monic();
    Polynomial xq = frobenius_power(m, target.k());
    Polynomial g = poly_gcd(xq - Polynomial::x(target), m);
    std::vector<std::pair<FieldElement, int>> out;
    if (g.degree() < 1) return out;
    int found = 0;
    for (u64 i = 0; i < target.size() && found < g.degree(); ++i) {
        FieldElement x = target.element(i);
        if (!g.eval(x).is_zero()) continue;
        ++found;
        Polynomial lin(target, {-x, target.one()});
        Polynomial rest = ft;
        int mult = 0;
        for (;;) {
            auto [q, r] = rest.divmod(lin);
            if (!r.is_zero()) break;
            ++mult;
            rest = q;
            if (rest.is_zero()) break;
        }
        out.emplace_back(x, mult);
    }
    return out;
}

namespace {

// A squarefree polynomial whose irreducible-factor degrees are exactly those
// of f (multiplicities dropped). p-th-power factors are collapsed through
// f(x) = t(x^p); the Frobenius twist of the coefficients does not change
// factor degrees, which is all the splitting computation needs.
Polynomial degree_skeleton(Polynomial f) {
    Field base = f.field();
    f = f.monic();
    if (f.degree() == 0) return f;
    Polynomial d = f.derivative();
    if (d.is_zero()) {
        std::vector<FieldElement> tc;
        for (int i = 0; i <= f.degree(); i += (int)base.p()) tc.push_back(f.coeff(i));
        return degree_skeleton(Polynomial(base, std::move(tc)));
    }
    // factors with multiplicity not divisible by p, each once
    Polynomial w = f / poly_gcd(f, d);
    // strip them all; what survives is a perfect p-th power
    Polynomial rest = f;
    for (;;) {
        Polynomial g = poly_gcd(rest, w);
        if (g.degree() == 0) break;
        rest = rest / g;
    }
    if (rest.degree() == 0) return w;
    Polynomial tail = degree_skeleton(rest);
    // avoid duplicate factors shared between w and tail
    Polynomial shared = poly_gcd(w, tail);
    if (shared.degree() > 0) tail = tail / shared;
    return w * tail;
}

}  // namespace

Field splitting_field(const Polynomial& f, int max_ext) {
    if (f.is_zero()) throw PreconditionError("splitting field of the zero polynomial");
    Field base = f.field();
    if (f.degree() <= 0) return base;
    Polynomial rest = degree_skeleton(f);
    int lcm_deg = 1;
    if (rest.degree() > 0) {
        u64 q = 1;
        for (int i = 0; i < base.k(); ++i) q *= base.p();
        Polynomial xpow = Polynomial::x(base) % rest;
        for (int deg = 1; rest.degree() > 0; ++deg) {
            if (deg > rest.degree()) throw Error("distinct-degree decomposition ran away");
            xpow = pow_mod(xpow, q, rest);
            Polynomial g = poly_gcd(xpow - Polynomial::x(base), rest);
            if (g.degree() > 0) {
                lcm_deg = static_cast<int>(std::lcm(lcm_deg, deg));
                rest = rest / g;
                if (rest.degree() == 0) break;
                xpow = xpow % rest;
            }
        }
    }
    long long total = static_cast<long long>(base.k()) * lcm_deg;
    if (total > max_ext)
        throw SearchCapError("splitting field degree " + std::to_string(total) +
                             " exceeds the extension cap " + std::to_string(max_ext));
    return Field::make(base.p(), static_cast<int>(total));
}

std::vector<FieldElement> mul_trunc(const std::vector<FieldElement>& a,
                                    const std::vector<FieldElement>& b, int N) {
    if (a.empty() || b.empty()) return {};
    Field f = a[0].field();
    std::vector<FieldElement> out(std::min<size_t>(N + 1, a.size() + b.size() - 1), f.zero());
    for (size_t i = 0; i < a.size() && i <= (size_t)N; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size() && i + j <= (size_t)N; ++j) {
            if (i + j >= out.size()) break;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

std::vector<FieldElement> series_inverse(const std::vector<FieldElement>& a, int N) {
    if (a.empty() || a[0].is_zero())
        throw PreconditionError("series inversion needs a unit constant term");
    Field f = a[0].field();
    std::vector<FieldElement> inv(N + 1, f.zero());
    inv[0] = a[0].inverse();
    for (int n = 1; n <= N; ++n) {
        FieldElement s = f.zero();
        for (int j = 1; j <= n && j < (int)a.size(); ++j) s += a[j] * inv[n - j];
        inv[n] = -(s * inv[0]);
    }
    return inv;
}

}  // namespace charp
