#include "charp/linear_forms.hpp"

namespace charp {

bool LinearForm::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

LinearForm LinearForm::operator-() const {
    LinearForm r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

LinearForm operator+(const LinearForm& a, const LinearForm& b) {
    if (a.f_ != b.f_ || a.params() != b.params())
        throw PreconditionError("linear form mismatch");
    LinearForm r = a;
    for (int i = 0; i < r.params(); ++i) r.c_[i] += b.c_[i];
    return r;
}

LinearForm operator-(const LinearForm& a, const LinearForm& b) { return a + (-b); }

LinearForm LinearForm::operator*(const FieldElement& s) const {
    LinearForm r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

FieldElement LinearForm::eval(const std::vector<FieldElement>& t) const {
    if ((int)t.size() != params()) throw PreconditionError("parameter count mismatch");
    FieldElement acc = f_.zero();
    for (int i = 0; i < params(); ++i) acc += c_[i] * t[i];
    return acc;
}

LinearForm LinearForm::substitute(int i, const LinearForm& repl) const {
    if (repl.params() != params()) throw PreconditionError("parameter count mismatch");
    if (!repl.coeff(i).is_zero())
        throw PreconditionError("substitution would be self-referential");
    LinearForm expanded = repl * c_[i];
    LinearForm out(f_, params() - 1);
    int o = 0;
    for (int j = 0; j < params(); ++j) {
        if (j == i) continue;
        out.set_coeff(o++, c_[j] + expanded.coeff(j));
    }
    return out;
}

QuadraticForm::QuadraticForm(Field f, int s)
    : f_(f), s_(s), q_(s * (s + 1) / 2, f.zero()) {}

bool QuadraticForm::is_zero() const {
    for (const auto& c : q_)
        if (!c.is_zero()) return false;
    return true;
}

const FieldElement& QuadraticForm::coeff(int i, int j) const {
    return q_[idx(i, j)];
}

void QuadraticForm::add_coeff(int i, int j, const FieldElement& v) {
    if (i > j) std::swap(i, j);
    q_[idx(i, j)] += v;
}

void QuadraticForm::add_product(const LinearForm& a, const LinearForm& b,
                                const FieldElement& scale) {
    if (a.params() != s_ || b.params() != s_) throw PreconditionError("parameter mismatch");
    for (int i = 0; i < s_; ++i) {
        if (a.coeff(i).is_zero()) continue;
        for (int j = 0; j < s_; ++j) {
            if (b.coeff(j).is_zero()) continue;
            add_coeff(i, j, a.coeff(i) * b.coeff(j) * scale);
        }
    }
}

FieldElement QuadraticForm::eval(const std::vector<FieldElement>& t) const {
    if ((int)t.size() != s_) throw PreconditionError("parameter count mismatch");
    FieldElement acc = f_.zero();
    for (int i = 0; i < s_; ++i)
        for (int j = i; j < s_; ++j) acc += coeff(i, j) * t[i] * t[j];
    return acc;
}

QuadraticSplit QuadraticForm::split_first() const {
    if (s_ < 1) throw PreconditionError("split of an empty quadratic form");
    QuadraticSplit out{coeff(0, 0), LinearForm(f_, s_ - 1),
                       std::make_unique<QuadraticForm>(f_, s_ - 1)};
    for (int j = 1; j < s_; ++j) out.b.set_coeff(j - 1, coeff(0, j));
    for (int i = 1; i < s_; ++i)
        for (int j = i; j < s_; ++j) out.c->add_coeff(i - 1, j - 1, coeff(i, j));
    return out;
}

}  // namespace charp
