#pragma once

#include <optional>

#include "charp/ratfun.hpp"

namespace charp {

enum class FormClass { Exact, Logarithmic, Neither };

// A differential form omega = f dz on the projective line over F_{p^k}.
class DifferentialForm {
  public:
    explicit DifferentialForm(RationalFunction f) : f_(std::move(f)) {}
    static DifferentialForm zero(Field f) { return DifferentialForm(RationalFunction(f)); }

    Field field() const { return f_.field(); }
    const RationalFunction& fn() const { return f_; }
    bool is_zero() const { return f_.is_zero(); }

    DifferentialForm operator-() const { return DifferentialForm(-f_); }
    friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
        return DifferentialForm(a.f_ + b.f_);
    }
    friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) {
        return DifferentialForm(a.f_ - b.f_);
    }
    DifferentialForm scaled(const FieldElement& c) const {
        return DifferentialForm(f_ * RationalFunction::of(Polynomial::constant(c)));
    }
    friend bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
        return a.f_ == b.f_;
    }
    friend bool operator!=(const DifferentialForm& a, const DifferentialForm& b) {
        return !(a == b);
    }
    DifferentialForm embedded(const Embedding& e) const {
        return DifferentialForm(f_.embedded(e));
    }

  private:
    RationalFunction f_;
};

// Vanishing order at P; at infinity ord = deg den - deg num - 2.
int ord_at(const DifferentialForm& w, const Point& P);

// Coefficient of (z-P)^{-1} dz (of -w^{-1} dw at infinity, w = 1/z).
FieldElement residue_at(const DifferentialForm& w, const Point& P);

// The Cartier operator: write omega = (A/h^p) dz with A = g h^{p-1}; then
// C(omega) = (sum_j a_{pj+p-1}^{1/p} z^j / h) dz.
DifferentialForm cartier(const DifferentialForm& w);

// Exact iff C(omega) = 0, Logarithmic iff C(omega) = omega. Throws on zero.
FormClass classify(const DifferentialForm& w);

// du/u; u != 0. The result may be the zero form (u a p-th power).
DifferentialForm log_diff(const RationalFunction& u);

// For omega = eta dz / Q^p with eta supported on even degrees and
// deg eta <= 2p-2: if the z^{p-1} coefficient of eta vanishes, returns
// G = (1/Q^p) sum eta_i z^{2i+1}/(2i+1) with dG = omega.
std::optional<RationalFunction> exact_antiderivative_ppower(const Polynomial& eta,
                                                            const Polynomial& Q);

// Pullback under z -> -z: f(-z) * (-dz).
DifferentialForm pullback_negate(const DifferentialForm& w);

// Pullback under a Moebius map M: f(M(z)) M'(z) dz.
DifferentialForm pullback_moebius(const DifferentialForm& w, const MoebiusMap& m);

// The full divisor over a splitting field of num*den: all points (in that
// field, plus infinity) where the form has nonzero order.
struct DivisorEntry {
    Point at;
    int ord;
};
std::vector<DivisorEntry> divisor(const DifferentialForm& w, int max_ext = 12);

// Sum of residues over the divisor's poles (in the splitting field).
FieldElement residue_sum(const DifferentialForm& w, int max_ext = 12);

}  // namespace charp
