#pragma once

#include "charp/hurwitz_tree.hpp"
#include "charp/poly.hpp"

namespace charp {

// An automorphism of k[[y]] modulo y^{N+1}, stored as the image of y:
// zero constant term, invertible linear coefficient.
class TruncatedAutomorphism {
  public:
    TruncatedAutomorphism(Field f, int N, std::vector<FieldElement> image);

    Field field() const { return f_; }
    int precision() const { return N_; }
    const std::vector<FieldElement>& image() const { return im_; }
    bool is_identity() const;

    static TruncatedAutomorphism identity(Field f, int N);
    // y -> c y (c a unit)
    static TruncatedAutomorphism scaling(FieldElement c, int N);

    // (this o g): y -> g(this(y)) as ring maps, i.e. substitute this's image
    // into g's image.  Group laws: compose(f, inverse(f)) = identity.
    TruncatedAutomorphism compose(const TruncatedAutomorphism& g) const;
    TruncatedAutomorphism inverse() const;
    TruncatedAutomorphism power(i64 n) const;
    // truncate to a lower precision
    TruncatedAutomorphism truncated(int N) const;

    friend bool operator==(const TruncatedAutomorphism& a, const TruncatedAutomorphism& b);

  private:
    Field f_;
    int N_;
    std::vector<FieldElement> im_;  // size N+1, im_[0] = 0
};

// The normal form y -> y (1 + y^h)^{-1/h} mod y^{N+1}; order p, conductor h.
// Requires gcd(h, p) = 1, h >= 1, N >= h+1.
TruncatedAutomorphism standard_sigma(u64 p, u64 h, int N);

// y -> -y
TruncatedAutomorphism negation_tau(Field f, int N);

// ord_y(sigma(y)/y - 1); throws on the identity (undefined at this precision).
int conductor(const TruncatedAutomorphism& sigma);

struct DihedralReport {
    u64 p = 0, h = 0;
    int precision = 0;
    int conductor = 0;
    std::vector<CheckResult> relations;
    bool all_pass() const {
        for (const auto& r : relations)
            if (!r.pass) return false;
        return true;
    }
};

// With sigma the normal form and tau: y -> -y, checks sigma^p = id,
// tau^2 = id and tau sigma tau^{-1} = sigma^{-1} mod y^{N+1}. The last
// relation holds exactly when h is odd; failures are report entries.
DihedralReport verify_dihedral(u64 p, u64 h, int N);

}  // namespace charp
