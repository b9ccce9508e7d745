#include "charp/local_action.hpp"

namespace charp {

TruncatedAutomorphism::TruncatedAutomorphism(Field f, int N, std::vector<FieldElement> image)
    : f_(f), N_(N), im_(std::move(image)) {
    if (N < 1) throw PreconditionError("precision must be at least 1");
    im_.resize(N + 1, f.zero());
    if (!im_[0].is_zero())
        throw PreconditionError("automorphism image must have zero constant term");
    if (im_[1].is_zero())
        throw PreconditionError("automorphism image must have a unit linear coefficient");
}

bool TruncatedAutomorphism::is_identity() const {
    if (!im_[1].is_one()) return false;
    for (size_t i = 2; i < im_.size(); ++i)
        if (!im_[i].is_zero()) return false;
    return true;
}

TruncatedAutomorphism TruncatedAutomorphism::identity(Field f, int N) {
    std::vector<FieldElement> im(N + 1, f.zero());
    im[1] = f.one();
    return TruncatedAutomorphism(f, N, std::move(im));
}

TruncatedAutomorphism TruncatedAutomorphism::scaling(FieldElement c, int N) {
    Field f = c.field();
    std::vector<FieldElement> im(N + 1, f.zero());
    im[1] = c;
    return TruncatedAutomorphism(f, N, std::move(im));
}

TruncatedAutomorphism TruncatedAutomorphism::compose(const TruncatedAutomorphism& g) const {
    if (f_ != g.f_ || N_ != g.N_) throw PreconditionError("field/precision mismatch");
    // substitute this->im_ into g.im_ (Horner; both have zero constant term)
    std::vector<FieldElement> acc(1, f_.zero());
    for (size_t i = g.im_.size(); i-- > 0;) {
        acc = mul_trunc(acc, im_, N_);
        acc.resize(N_ + 1, f_.zero());
        acc[0] += g.im_[i];
    }
    return TruncatedAutomorphism(f_, N_, std::move(acc));
}

TruncatedAutomorphism TruncatedAutomorphism::inverse() const {
    // Newton iteration for the compositional inverse g: g <- g - (f(g) - y) / f'(g)
    std::vector<FieldElement> y(N_ + 1, f_.zero());
    y[1] = f_.one();
    std::vector<FieldElement> g(N_ + 1, f_.zero());
    g[1] = im_[1].inverse();
    std::vector<FieldElement> fprime(N_, f_.zero());
    for (int i = 1; i <= N_; ++i) fprime[i - 1] = im_[i] * f_.from_int(i);
    auto subst = [&](const std::vector<FieldElement>& poly,
                     const std::vector<FieldElement>& at) {
        std::vector<FieldElement> acc(1, f_.zero());
        for (size_t i = poly.size(); i-- > 0;) {
            acc = mul_trunc(acc, at, N_);
            acc.resize(N_ + 1, f_.zero());
            acc[0] += poly[i];
        }
        return acc;
    };
    for (int round = 0; round < 2 * N_ + 4; ++round) {
        std::vector<FieldElement> fg = subst(im_, g);
        bool done = true;
        std::vector<FieldElement> err(N_ + 1, f_.zero());
        for (int i = 0; i <= N_; ++i) {
            err[i] = fg[i] - y[i];
            if (!err[i].is_zero()) done = false;
        }
        if (done) return TruncatedAutomorphism(f_, N_, std::move(g));
        std::vector<FieldElement> dfg = subst(fprime, g);
        std::vector<FieldElement> corr = mul_trunc(err, series_inverse(dfg, N_), N_);
        corr.resize(N_ + 1, f_.zero());
        for (int i = 0; i <= N_; ++i) g[i] -= corr[i];
    }
    throw Error("compositional inversion did not converge (bug)");
}

TruncatedAutomorphism TruncatedAutomorphism::power(i64 n) const {
    if (n < 0) return inverse().power(-n);
    TruncatedAutomorphism base = *this, acc = identity(f_, N_);
    u64 e = (u64)n;
    while (e) {
        if (e & 1) acc = acc.compose(base);
        base = base.compose(base);
        e >>= 1;
    }
    return acc;
}

TruncatedAutomorphism TruncatedAutomorphism::truncated(int N) const {
    if (N > N_) throw PreconditionError("cannot raise the precision");
    std::vector<FieldElement> im(im_.begin(), im_.begin() + N + 1);
    return TruncatedAutomorphism(f_, N, std::move(im));
}

bool operator==(const TruncatedAutomorphism& a, const TruncatedAutomorphism& b) {
    return a.f_ == b.f_ && a.N_ == b.N_ && a.im_ == b.im_;
}

TruncatedAutomorphism standard_sigma(u64 p, u64 h, int N) {
    if (h < 1 || h % p == 0) throw PreconditionError("conductor must be positive and prime to p");
    if (N < (int)h + 1) throw PreconditionError("precision must be at least h+1");
    Field F = Field::make(p, 1);
    // exponent e = -1/h mod p^M with M = floor(log_p N) + 1; the truncated
    // binomial coefficients only depend on e mod p^M
    u64 pM = p;
    while (pM <= (u64)N) pM *= p;
    u64 hinv = 1;
    {
        // inverse of h mod pM by Euclid
        i64 a = (i64)(h % pM), m = (i64)pM, x0 = 1, x1 = 0;
        i64 r0 = a, r1 = m;
        while (r1) {
            i64 q = r0 / r1;
            std::swap(r0 -= q * r1, r1);
            std::swap(x0 -= q * x1, x1);
        }
        if (r0 != 1) throw Error("h not invertible mod p^M (bug)");
        hinv = (u64)((x0 % m + m) % m);
    }
    u64 e = (pM - hinv) % pM;  // -1/h mod p^M
    // (1 + y^h)^e mod y^{N+1} by binary powering
    std::vector<FieldElement> base(N + 1, F.zero());
    base[0] = F.one();
    if ((int)h <= N) base[h] = F.one();
    std::vector<FieldElement> u(1, F.one());
    u.resize(N + 1, F.zero());
    {
        std::vector<FieldElement> b = base;
        u64 ee = e;
        while (ee) {
            if (ee & 1) u = mul_trunc(u, b, N);
            b = mul_trunc(b, b, N);
            ee >>= 1;
            u.resize(N + 1, F.zero());
            b.resize(N + 1, F.zero());
        }
    }
    // sigma(y) = y * u(y)
    std::vector<FieldElement> im(N + 1, F.zero());
    for (int i = 0; i + 1 <= N; ++i) im[i + 1] = u[i];
    return TruncatedAutomorphism(F, N, std::move(im));
}

TruncatedAutomorphism negation_tau(Field f, int N) {
    return TruncatedAutomorphism::scaling(-f.one(), N);
}

int conductor(const TruncatedAutomorphism& sigma) {
    // ord_y(sigma(y)/y - 1): sigma(y)/y = sum im_[i+1] y^i
    const auto& im = sigma.image();
    if (!im[1].is_one()) return 0;
    for (int i = 2; i < (int)im.size(); ++i)
        if (!im[i].is_zero()) return i - 1;
    throw PreconditionError("identity automorphism: conductor undefined at this precision");
}

DihedralReport verify_dihedral(u64 p, u64 h, int N) {
    DihedralReport rep;
    rep.p = p;
    rep.h = h;
    rep.precision = N;
    TruncatedAutomorphism sigma = standard_sigma(p, h, N);
    Field F = sigma.field();
    TruncatedAutomorphism tau = negation_tau(F, N);
    rep.conductor = conductor(sigma);
    rep.relations.push_back(
        {"conductor_is_h", rep.conductor == (int)h,
         "conductor " + std::to_string(rep.conductor) + " != " + std::to_string(h)});
    rep.relations.push_back(
        {"sigma_order_p", sigma.power((i64)p).is_identity(), "sigma^p != id"});
    rep.relations.push_back({"tau_involution", tau.compose(tau).is_identity(), "tau^2 != id"});
    TruncatedAutomorphism conj = tau.compose(sigma).compose(tau.inverse());
    rep.relations.push_back({"tau_conjugates_to_inverse", conj == sigma.inverse(),
                             "tau sigma tau^{-1} != sigma^{-1}"});
    return rep;
}

}  // namespace charp
