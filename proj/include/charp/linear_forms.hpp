#pragma once

#include <memory>

#include "charp/fields.hpp"

namespace charp {

// Homogeneous linear form in s parameters over a field.
class LinearForm {
  public:
    LinearForm(Field f, int s) : f_(f), c_(s, f.zero()) {}
    LinearForm(Field f, std::vector<FieldElement> coeffs) : f_(f), c_(std::move(coeffs)) {}

    Field field() const { return f_; }
    int params() const { return (int)c_.size(); }
    const FieldElement& coeff(int i) const { return c_[i]; }
    void set_coeff(int i, FieldElement v) { c_[i] = std::move(v); }
    bool is_zero() const;

    LinearForm operator-() const;
    friend LinearForm operator+(const LinearForm& a, const LinearForm& b);
    friend LinearForm operator-(const LinearForm& a, const LinearForm& b);
    LinearForm operator*(const FieldElement& s) const;
    friend bool operator==(const LinearForm& a, const LinearForm& b) {
        return a.f_ == b.f_ && a.c_ == b.c_;
    }

    FieldElement eval(const std::vector<FieldElement>& t) const;
    // Replace parameter i by the given form (in the same parameter space),
    // then delete parameter i. `repl` must not involve parameter i.
    LinearForm substitute(int i, const LinearForm& repl) const;

  private:
    Field f_;
    std::vector<FieldElement> c_;
};

class QuadraticForm;

// Decomposition with respect to parameter 0: q = a*t0^2 + t0*B + C with B
// linear and C quadratic in the remaining parameters (renumbered 0..s-2).
struct QuadraticSplit {
    FieldElement a;
    LinearForm b;
    std::unique_ptr<QuadraticForm> c;
};

// Homogeneous quadratic form in s parameters, dense upper-triangular storage.
class QuadraticForm {
  public:
    QuadraticForm(Field f, int s);

    Field field() const { return f_; }
    int params() const { return s_; }
    bool is_zero() const;
    const FieldElement& coeff(int i, int j) const;  // i <= j
    void add_coeff(int i, int j, const FieldElement& v);

    void add_product(const LinearForm& a, const LinearForm& b, const FieldElement& scale);
    FieldElement eval(const std::vector<FieldElement>& t) const;

    QuadraticSplit split_first() const;

  private:
    int idx(int i, int j) const { return i * s_ - i * (i - 1) / 2 + (j - i); }
    Field f_;
    int s_;
    std::vector<FieldElement> q_;  // [i][j], i <= j
};

}  // namespace charp
