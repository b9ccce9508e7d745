#include "charp/differentials.hpp"

#include <algorithm>

namespace charp {

int ord_at(const DifferentialForm& w, const Point& P) {
    if (w.is_zero()) throw PreconditionError("order of the zero differential");
    int o = ord_at(w.fn(), P);
    return P.is_infinity() ? o - 2 : o;
}

FieldElement residue_at(const DifferentialForm& w, const Point& P) {
    Field F = w.field();
    if (w.is_zero()) return F.zero();
    if (!P.is_infinity()) {
        int start = ord_at(w.fn(), P);
        if (start >= 0) return F.zero();
        auto e = laurent_at(w.fn(), P, -start);
        return e.coeff_at(-1);
    }
    // omega = f dz = -f(1/w) w^{-2} dw; residue = coefficient of w^{-1}
    // there, i.e. -(coefficient of w in the expansion of f(1/w)).
    int start = w.fn().den().degree() - w.fn().num().degree();
    if (start > 1) return F.zero();
    auto e = laurent_at(w.fn(), P, 2 - start);
    return -e.coeff_at(1);
}

DifferentialForm cartier(const DifferentialForm& w) {
    Field F = w.field();
    if (w.is_zero()) return w;
    const u64 p = F.p();
    const Polynomial& g = w.fn().num();
    const Polynomial& h = w.fn().den();
    // A = g * h^{p-1}, so omega = (A / h^p) dz
    Polynomial A = g * h.pow(p - 1);
    std::vector<FieldElement> out;
    for (int j = 0; (i64)(p * (u64)j + p - 1) <= A.degree(); ++j)
        out.push_back(pth_root(A.coeff((int)(p * (u64)j + p - 1))));
    Polynomial num(F, std::move(out));
    return DifferentialForm(RationalFunction(num, h));
}

FormClass classify(const DifferentialForm& w) {
    if (w.is_zero()) throw PreconditionError("classification of the zero differential");
    DifferentialForm c = cartier(w);
    if (c.is_zero()) return FormClass::Exact;
    if (c == w) return FormClass::Logarithmic;
    return FormClass::Neither;
}

DifferentialForm log_diff(const RationalFunction& u) {
    if (u.is_zero()) throw PreconditionError("du/u requires u != 0");
    return DifferentialForm(u.derivative() / u);
}

std::optional<RationalFunction> exact_antiderivative_ppower(const Polynomial& eta,
                                                            const Polynomial& Q) {
    Field F = eta.field();
    if (F != Q.field()) throw PreconditionError("field mismatch");
    const u64 p = F.p();
    if (eta.is_zero()) return RationalFunction(F);
    for (int i = 1; i <= eta.degree(); i += 2)
        if (!eta.coeff(i).is_zero())
            throw PreconditionError("eta must be supported on even degrees");
    if (eta.degree() > (int)(2 * p - 2))
        throw PreconditionError("deg eta must be at most 2p-2");
    if (!eta.coeff((int)(p - 1)).is_zero()) return std::nullopt;  // obstruction present
    std::vector<FieldElement> gc(eta.degree() + 2, F.zero());
    for (int i = 0; i <= eta.degree(); i += 2) {
        if (eta.coeff(i).is_zero()) continue;
        // term eta_i z^{i+1}/(i+1); i+1 is invertible since i != p-1
        gc[i + 1] = eta.coeff(i) * F.from_int(i + 1).inverse();
    }
    return RationalFunction(Polynomial(F, std::move(gc)), Q.pow(p));
}

DifferentialForm pullback_negate(const DifferentialForm& w) {
    return pullback_moebius(w, MoebiusMap::negation(w.field()));
}

DifferentialForm pullback_moebius(const DifferentialForm& w, const MoebiusMap& m) {
    Field F = w.field();
    if (m.det().is_zero()) throw PreconditionError("degenerate Moebius pullback");
    RationalFunction sub = w.fn().substitute_moebius(m);
    // M'(z) = det / (cz+d)^2
    Polynomial czd(F, {m.d, m.c});
    RationalFunction deriv(Polynomial::constant(m.det()), czd * czd);
    return DifferentialForm(sub * deriv);
}

std::vector<DivisorEntry> divisor(const DifferentialForm& w, int max_ext) {
    if (w.is_zero()) throw PreconditionError("divisor of the zero differential");
    Field F = w.field();
    Polynomial nd = w.fn().num() * w.fn().den();
    Field S = splitting_field(nd, max_ext);
    DifferentialForm ws = (S == F) ? w : w.embedded(Embedding(F, S));
    std::vector<DivisorEntry> out;
    for (auto& [x, m] : roots_in(ws.fn().num(), S)) out.push_back({Point::finite(x), m});
    for (auto& [x, m] : roots_in(ws.fn().den(), S)) out.push_back({Point::finite(x), -m});
    int oinf = ord_at(ws, Point::infinity(S));
    if (oinf != 0) out.push_back({Point::infinity(S), oinf});
    std::sort(out.begin(), out.end(),
              [](const DivisorEntry& a, const DivisorEntry& b) { return a.at < b.at; });
    return out;
}

FieldElement residue_sum(const DifferentialForm& w, int max_ext) {
    Field F = w.field();
    Polynomial nd = w.fn().num() * w.fn().den();
    Field S = splitting_field(nd, max_ext);
    DifferentialForm ws = (S == F) ? w : w.embedded(Embedding(F, S));
    FieldElement acc = S.zero();
    for (auto& [x, m] : roots_in(ws.fn().den(), S)) {
        (void)m;
        acc += residue_at(ws, Point::finite(x));
    }
    acc += residue_at(ws, Point::infinity(S));
    return acc;
}

}  // namespace charp
