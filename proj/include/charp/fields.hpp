#pragma once

#include <cstdint>
#include <vector>

#include "charp/errors.hpp"

namespace charp {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Immutable description of F_{p^k}. Instances are interned: for fixed (p, k)
// there is exactly one descriptor, whose modulus is the lexicographically
// least monic irreducible of degree k over F_p (coefficients compared from
// degree k-1 down to the constant term). For k = 1 the modulus is x.
struct FieldDesc {
    u64 p;
    int k;
    std::vector<u64> modulus;  // k+1 coefficients, low to high, monic
    u64 size;                  // p^k
};

class FieldElement;

// Lightweight handle to an interned descriptor. Copyable, comparable by
// identity (interning makes structural and pointer equality coincide).
class Field {
  public:
    Field() : d_(nullptr) {}

    // Deterministic field construction. Throws PreconditionError unless p is
    // an odd prime, k >= 1 and p^k fits in 63 bits.
    static Field make(u64 p, int k);

    const FieldDesc& desc() const { return *d_; }
    u64 p() const { return d_->p; }
    int k() const { return d_->k; }
    u64 size() const { return d_->size; }

    FieldElement zero() const;
    FieldElement one() const;
    // Image of an integer under Z -> F_p -> F_{p^k}.
    FieldElement from_int(i64 n) const;
    // Element with the given coefficient vector (length k, values reduced).
    FieldElement from_coeffs(std::vector<u64> coeffs) const;
    // Enumeration: index i in [0, p^k) maps to the element whose coefficients
    // are the base-p digits of i, low to high.
    FieldElement element(u64 index) const;
    u64 index_of(const FieldElement& x) const;

    bool valid() const { return d_ != nullptr; }
    friend bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }
    friend bool operator!=(const Field& a, const Field& b) { return a.d_ != b.d_; }

  private:
    explicit Field(const FieldDesc* d) : d_(d) {}
    const FieldDesc* d_;
    friend class FieldElement;
};

class FieldElement {
  public:
    FieldElement() = default;

    Field field() const { return Field(fd_); }
    const std::vector<u64>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;
    // The residue for prime-field elements (k arbitrary: the constant coeff,
    // only meaningful when the element lies in F_p).
    u64 residue() const { return c_.empty() ? 0 : c_[0]; }
    bool in_prime_field() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    FieldElement inverse() const;  // throws PreconditionError on zero
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        return a * b.inverse();
    }
    FieldElement pow(u64 e) const;

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.fd_ == b.fd_ && a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
    // Total order inside one field (enumeration order); used for canonical sorts.
    friend bool operator<(const FieldElement& a, const FieldElement& b);

  private:
    FieldElement(const FieldDesc* fd, std::vector<u64> c) : fd_(fd), c_(std::move(c)) {}
    const FieldDesc* fd_ = nullptr;
    std::vector<u64> c_;
    friend class Field;
    friend FieldElement pth_root(const FieldElement&);
};

// Inverse of Frobenius: the unique y with y^p = x, computed as x^{p^{k-1}}.
FieldElement pth_root(const FieldElement& x);

// Least element (enumeration order) of multiplicative order exactly n.
// Requires n | p^k - 1; throws PreconditionError otherwise.
FieldElement primitive_root_of_unity(Field f, u64 n);

// Ring homomorphism F_{p^j} -> F_{p^k} for j | k, fixing F_p; the generator
// of the source is sent to the least root of the source modulus in the
// target. Computed once per (source, target) pair and cached.
class Embedding {
  public:
    Embedding(Field src, Field dst);  // throws on p mismatch / j not dividing k
    FieldElement operator()(const FieldElement& x) const;
    Field src() const { return src_; }
    Field dst() const { return dst_; }

  private:
    Field src_, dst_;
    FieldElement gen_image_;
};

bool is_prime(u64 n);

}  // namespace charp
