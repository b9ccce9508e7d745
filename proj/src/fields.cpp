#include "charp/fields.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace charp {

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// --- raw polynomial arithmetic over F_p (dense u64 vectors, low to high) ---
// Used only for modulus construction; everything else goes through Polynomial.

using Raw = std::vector<u64>;

void raw_trim(Raw& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Raw raw_mulmod(const Raw& a, const Raw& b, const Raw& f, u64 p) {
    Raw r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    // reduce mod f (monic, degree d)
    size_t d = f.size() - 1;
    for (size_t i = r.size(); i-- > d;) {
        u64 c = r[i];
        if (!c) continue;
        r[i] = 0;
        for (size_t j = 0; j < d; ++j)
            r[i - d + j] = (r[i - d + j] + (p - f[j] % p) * c) % p;
    }
    r.resize(d);
    raw_trim(r);
    return r;
}

Raw raw_powmod(Raw base, u64 e, const Raw& f, u64 p) {
    Raw r{1};
    while (e) {
        if (e & 1) r = raw_mulmod(r, base, f, p);
        base = raw_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Raw raw_gcd(Raw a, Raw b, u64 p) {
    raw_trim(a);
    raw_trim(b);
    while (!b.empty()) {
        // a mod b, b monic-ized on the fly
        u64 lead_inv = 1;
        {
            // inverse of b.back() mod p
            u64 x = b.back() % p, r = 1, e = p - 2;
            while (e) {
                if (e & 1) r = r * x % p;
                x = x * x % p;
                e >>= 1;
            }
            lead_inv = r;
        }
        while (a.size() >= b.size()) {
            u64 c = a.back() * lead_inv % p;
            size_t off = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j)
                a[off + j] = (a[off + j] + (p - b[j] % p) * c) % p;
            raw_trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

// Irreducibility of a monic degree-k polynomial over F_p: x^{p^k} = x mod f,
// and gcd(x^{p^{k/l}} - x, f) = 1 for every prime l | k.
bool raw_irreducible(const Raw& f, u64 p) {
    size_t k = f.size() - 1;
    if (k == 1) return true;
    Raw x{0, 1};
    // frob[j] = x^{p^j} mod f, built by repeated p-th powering
    Raw g = x;
    std::vector<Raw> frob(k + 1);
    frob[0] = x;
    for (size_t j = 1; j <= k; ++j) {
        g = raw_powmod(g, p, f, p);
        frob[j] = g;
    }
    Raw top = frob[k];
    // x^{p^k} - x must vanish mod f
    Raw diff = top;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    raw_trim(diff);
    if (!diff.empty()) return false;
    for (size_t l = 2; l <= k; ++l) {
        if (k % l) continue;
        bool lp = true;
        for (size_t d = 2; d * d <= l; ++d)
            if (l % d == 0) lp = false;
        if (!lp) continue;
        Raw h = frob[k / l];
        if (h.size() < 2) h.resize(2, 0);
        h[1] = (h[1] + p - 1) % p;
        raw_trim(h);
        Raw gg = raw_gcd(h, f, p);
        if (gg.size() != 1) return false;
    }
    return true;
}

// Lexicographically least monic irreducible of degree k over F_p, coefficient
// sequence compared from degree k-1 down to the constant term.
Raw least_irreducible(u64 p, int k) {
    if (k == 1) return Raw{0, 1};  // x: the prime-field marker
    std::vector<u64> low(k, 0);    // low[i] is the coefficient of x^{k-1-i}
    for (;;) {
        Raw f(k + 1, 0);
        f[k] = 1;
        for (int i = 0; i < k; ++i) f[k - 1 - i] = low[i];
        if (raw_irreducible(f, p)) return f;
        // odometer: increment the constant term first? No: lex order on the
        // sequence (c_{k-1}, ..., c_0) means c_0 varies fastest.
        int i = k - 1;
        while (i >= 0 && ++low[i] == p) low[i--] = 0;
        if (i < 0) throw Error("no irreducible polynomial found (unreachable)");
    }
}

struct Registry {
    std::mutex mu;
    std::map<std::pair<u64, int>, std::unique_ptr<FieldDesc>> fields;
};

Registry& registry() {
    static Registry* r = new Registry;
    return *r;
}

}  // namespace

Field Field::make(u64 p, int k) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw PreconditionError("field characteristic must be an odd prime, got " +
                                std::to_string(p));
    if (p >= (1ull << 21))
        throw PreconditionError("characteristic too large (limit 2^21)");
    if (k < 1) throw PreconditionError("extension degree must be >= 1");
    u64 size = 1;
    for (int i = 0; i < k; ++i) {
        if (size > (1ull << 62) / p)
            throw PreconditionError("field size p^k exceeds 2^62");
        size *= p;
    }
    auto& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.fields.find({p, k});
    if (it == reg.fields.end()) {
        auto d = std::make_unique<FieldDesc>();
        d->p = p;
        d->k = k;
        d->modulus = least_irreducible(p, k);
        d->size = size;
        it = reg.fields.emplace(std::make_pair(p, k), std::move(d)).first;
    }
    return Field(it->second.get());
}

FieldElement Field::zero() const { return FieldElement(d_, std::vector<u64>(d_->k, 0)); }

FieldElement Field::one() const {
    std::vector<u64> c(d_->k, 0);
    c[0] = 1;
    return FieldElement(d_, std::move(c));
}

FieldElement Field::from_int(i64 n) const {
    i64 r = n % static_cast<i64>(d_->p);
    if (r < 0) r += static_cast<i64>(d_->p);
    std::vector<u64> c(d_->k, 0);
    c[0] = static_cast<u64>(r);
    return FieldElement(d_, std::move(c));
}

FieldElement Field::from_coeffs(std::vector<u64> coeffs) const {
    if (static_cast<int>(coeffs.size()) != d_->k)
        throw PreconditionError("coefficient vector length must equal the extension degree");
    for (auto& c : coeffs) c %= d_->p;
    return FieldElement(d_, std::move(coeffs));
}

FieldElement Field::element(u64 index) const {
    if (index >= d_->size) throw PreconditionError("element index out of range");
    std::vector<u64> c(d_->k, 0);
    for (int i = 0; i < d_->k; ++i) {
        c[i] = index % d_->p;
        index /= d_->p;
    }
    return FieldElement(d_, std::move(c));
}

u64 Field::index_of(const FieldElement& x) const {
    if (x.field() != *this) throw PreconditionError("element does not belong to this field");
    u64 idx = 0;
    for (int i = d_->k; i-- > 0;) idx = idx * d_->p + x.coeffs()[i];
    return idx;
}

bool FieldElement::is_zero() const {
    for (u64 c : c_)
        if (c) return false;
    return true;
}

bool FieldElement::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i]) return false;
    return true;
}

bool FieldElement::in_prime_field() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i]) return false;
    return true;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& c : r.c_) c = c ? fd_->p - c : 0;
    return r;
}

static void check_same(const FieldDesc* a, const FieldDesc* b) {
    if (a != b) throw PreconditionError("field mismatch in element arithmetic");
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same(fd_, o.fd_);
    for (size_t i = 0; i < c_.size(); ++i) {
        c_[i] += o.c_[i];
        if (c_[i] >= fd_->p) c_[i] -= fd_->p;
    }
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check_same(fd_, o.fd_);
    for (size_t i = 0; i < c_.size(); ++i) {
        c_[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + fd_->p - o.c_[i];
    }
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check_same(fd_, o.fd_);
    const u64 p = fd_->p;
    const int k = fd_->k;
    if (k == 1) {
        c_[0] = c_[0] * o.c_[0] % p;
        return *this;
    }
    std::vector<u64> r(2 * k - 1, 0);
    for (int i = 0; i < k; ++i) {
        if (!c_[i]) continue;
        for (int j = 0; j < k; ++j) r[i + j] = (r[i + j] + c_[i] * o.c_[j]) % p;
    }
    const auto& f = fd_->modulus;
    for (int i = 2 * k - 2; i >= k; --i) {
        u64 c = r[i];
        if (!c) continue;
        r[i] = 0;
        for (int j = 0; j < k; ++j) r[i - k + j] = (r[i - k + j] + (p - f[j]) * c) % p;
    }
    r.resize(k);
    c_ = std::move(r);
    return *this;
}

FieldElement FieldElement::pow(u64 e) const {
    FieldElement base = *this;
    FieldElement r = Field(fd_).one();
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw PreconditionError("division by zero field element");
    return pow(fd_->size - 2);
}

bool operator<(const FieldElement& a, const FieldElement& b) {
    check_same(a.fd_, b.fd_);
    return a.field().index_of(a) < b.field().index_of(b);
}

FieldElement pth_root(const FieldElement& x) {
    FieldElement r = x;
    for (int i = 1; i < x.fd_->k; ++i) r = r.pow(x.fd_->p);
    return r;
}

FieldElement primitive_root_of_unity(Field f, u64 n) {
    if (n == 0) throw PreconditionError("root-of-unity order must be positive");
    u64 group = f.size() - 1;
    if (group % n != 0)
        throw PreconditionError("no primitive " + std::to_string(n) + "-th root of unity: " +
                                std::to_string(n) + " does not divide p^k - 1 = " +
                                std::to_string(group) + "; enlarge the extension degree");
    // prime factors of n
    std::vector<u64> primes;
    u64 m = n;
    for (u64 d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) primes.push_back(m);
    for (u64 i = 1; i < f.size(); ++i) {
        FieldElement e = f.element(i);
        if (!e.pow(n).is_one()) continue;
        bool primitive = true;
        for (u64 q : primes)
            if (e.pow(n / q).is_one()) {
                primitive = false;
                break;
            }
        if (primitive) return e;
    }
    throw Error("no element of order " + std::to_string(n) + " found (unreachable)");
}

namespace {
struct EmbedCache {
    std::mutex mu;
    std::map<std::pair<const FieldDesc*, const FieldDesc*>, FieldElement> images;
};
EmbedCache& embed_cache() {
    static EmbedCache* c = new EmbedCache;
    return *c;
}
}  // namespace

Embedding::Embedding(Field src, Field dst) : src_(src), dst_(dst) {
    if (src.p() != dst.p()) throw PreconditionError("embedding requires equal characteristic");
    if (dst.k() % src.k() != 0)
        throw PreconditionError("source degree must divide target degree for an embedding");
    auto& cache = embed_cache();
    std::lock_guard<std::mutex> lock(cache.mu);
    auto key = std::make_pair(&src.desc(), &dst.desc());
    auto it = cache.images.find(key);
    if (it == cache.images.end()) {
        // least root of the source modulus in the target field
        const auto& mod = src.desc().modulus;
        FieldElement img = dst.zero();
        bool found = false;
        for (u64 i = 0; i < dst.size(); ++i) {
            FieldElement x = dst.element(i);
            FieldElement acc = dst.zero();
            for (size_t j = mod.size(); j-- > 0;) acc = acc * x + dst.from_int((i64)mod[j]);
            if (acc.is_zero()) {
                img = x;
                found = true;
                break;
            }
        }
        if (!found) throw Error("source modulus has no root in target field (unreachable)");
        it = cache.images.emplace(key, img).first;
    }
    gen_image_ = it->second;
}

FieldElement Embedding::operator()(const FieldElement& x) const {
    if (x.field() != src_) throw PreconditionError("embedding applied to foreign element");
    FieldElement acc = dst_.zero();
    const auto& c = x.coeffs();
    for (size_t j = c.size(); j-- > 0;) acc = acc * gen_image_ + dst_.from_int((i64)c[j]);
    return acc;
}

}  // namespace charp
