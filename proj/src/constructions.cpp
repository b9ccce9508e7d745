#include <algorithm>

#include "charp/constructions.hpp"

namespace charp {

namespace {

// multiplicative order of p modulo n (gcd(n, p) = 1)
int ord_of_p_mod(u64 p, u64 n) {
    if (n == 1) return 1;
    u64 v = p % n;
    for (int t = 1; t <= 512; ++t) {
        if (v == 1) return t;
        v = v * p % n;
    }
    throw Error("runaway order computation");
}

u64 lcm_u64(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

}  // namespace

SingleZeroForm omega_single_zero(u64 p, u64 h) {
    if (h == 0) throw PreconditionError("conductor must be positive");
    if (h % p == 0) throw PreconditionError("conductor must be prime to p");
    if (!is_prime(p) || p % 2 == 0) throw PreconditionError("p must be an odd prime");
    int k = ord_of_p_mod(p, h);  // least k with h | p^k - 1
    Field F = Field::make(p, (int)k);
    // omega = h dz / (z^{h+1} - z)
    std::vector<FieldElement> den(h + 2, F.zero());
    den[1] = -F.one();
    den[h + 1] = F.one();
    DifferentialForm omega(
        RationalFunction(Polynomial::constant(F.from_int((i64)h)), Polynomial(F, den)));
    SingleZeroForm out{F, omega, {}, {}};
    out.poles.push_back(Point::finite(F.zero()));
    out.residues.push_back((p - h % p) % p);
    FieldElement zeta = h == 1 ? F.one() : primitive_root_of_unity(F, h);
    for (u64 i = 1; i <= h; ++i) {
        out.poles.push_back(Point::finite(zeta.pow(i)));
        out.residues.push_back(1);
    }
    if (ord_at(out.omega, Point::infinity(F)) != (int)h - 1)
        throw Error("single-zero form has the wrong vanishing order (bug)");
    return out;
}

std::optional<FeasibilityWitness> residue_feasible(u64 p, const ResidueType& a, int max_ext) {
    if (a.size() < 2) throw PreconditionError("need at least two poles");
    u64 sum = 0;
    for (u64 v : a) {
        if (v % p == 0) throw PreconditionError("residues must be nonzero mod p");
        sum = (sum + v) % p;
    }
    if (sum != 0)
        throw PreconditionError("residue sum must vanish mod p (residue theorem)");
    const size_t alpha = a.size();
    for (int k = 1; k <= max_ext; ++k) {
        Field F = Field::make(p, k);
        const u64 q = F.size();
        // poles normalized to z_1 = 0, z_2 = 1 by an affine change
        u64 free = alpha - 2;
        u64 total = 1;
        for (u64 i = 0; i < free; ++i) {
            if (total > scan_cap() / q) throw SearchCapError("pole-configuration scan too large");
            total *= q;
        }
        for (u64 idx = 0; idx < total; ++idx) {
            std::vector<FieldElement> z{F.zero(), F.one()};
            u64 t = idx;
            bool distinct = true;
            for (u64 i = 0; i < free; ++i) {
                FieldElement v = F.element(t % q);
                t /= q;
                for (const auto& w : z)
                    if (w == v) distinct = false;
                z.push_back(v);
            }
            if (!distinct) continue;
            // N(x) = sum a_i prod_{j != i} (x - z_j) must be a nonzero constant
            Polynomial N = Polynomial::zero(F);
            for (size_t i = 0; i < alpha; ++i) {
                Polynomial prod = Polynomial::constant(F.from_int((i64)a[i]));
                for (size_t j = 0; j < alpha; ++j)
                    if (j != i) prod = prod * Polynomial(F, {-z[j], F.one()});
                N = N + prod;
            }
            if (N.degree() != 0) continue;
            Polynomial den = Polynomial::one(F);
            for (const auto& zi : z) den = den * Polynomial(F, {-zi, F.one()});
            DifferentialForm omega(RationalFunction(N, den));
            if (classify(omega) != FormClass::Logarithmic)
                throw Error("integer-residue witness failed the logarithmic check (bug)");
            FeasibilityWitness w{F, {}, omega};
            for (const auto& zi : z) w.poles.push_back(Point::finite(zi));
            return w;
        }
    }
    return std::nullopt;
}

bool symbolic_contradiction_1144(u64 p) {
    // For residues (1, 1, -1, -1) at poles 0, 1, l, m, a single zero at
    // infinity forces l + m = 1 and 2 l m = 0, hence l m = 0 (p odd), which
    // kills the constant term -l m as well and puts l or m into {0, 1}.
    if (p % 2 == 0) return false;
    Field F = Field::make(p, 1);
    if (F.from_int(2).is_zero()) return false;
    // roots of X^2 - (l+m) X + l m = X^2 - X are exactly {0, 1}
    Polynomial quad = Polynomial::from_ints(F, {0, -1, 1});
    auto rr = roots_in(quad, F);
    if (rr.size() != 2) return false;
    return (rr[0].first.is_zero() && rr[1].first.is_one());
}

Polynomial eta_half_coefficient(u64 p, u64 alpha1, u64 alpha2) {
    if (!(1 < alpha2 && alpha2 <= alpha1 && alpha1 < p))
        throw PreconditionError("need 1 < alpha2 <= alpha1 < p");
    u64 alpha = alpha1 + alpha2;
    if (!(p + 1 <= alpha && 2 * alpha <= 3 * p - 1))
        throw PreconditionError("need p+1 <= alpha1+alpha2 <= (3p-1)/2");
    Field F = Field::make(p, 1);
    const u64 A = p - alpha1, B = p - alpha2;
    // Pascal triangle mod p (A, B < p, so entries are exact)
    std::vector<std::vector<u64>> binom(B + A + 1);
    for (u64 n = 0; n <= A + B; ++n) {
        binom[n].assign(n + 1, 1);
        for (u64 r = 1; r < n; ++r) binom[n][r] = (binom[n - 1][r - 1] + binom[n - 1][r]) % p;
    }
    // coefficient of z^{p-1} in (z^2-1)^A (z^2-mu)^B as a polynomial in mu:
    // sum over i+j = (p-1)/2 of C(A,i)(-1)^{A-i} C(B,j)(-1)^{B-j} mu^{B-j}
    const u64 half = (p - 1) / 2;
    std::vector<FieldElement> c(B + 1, F.zero());
    for (u64 i = 0; i <= std::min(A, half); ++i) {
        u64 j = half - i;
        if (j > B) continue;
        i64 sign = ((A - i) + (B - j)) % 2 ? -1 : 1;
        FieldElement term = F.from_int(sign * (i64)(binom[A][i] * binom[B][j] % p));
        c[B - j] += term;
    }
    return Polynomial(F, std::move(c));
}

LargeHPlan plan_large_h(u64 p, u64 h) {
    if (!is_prime(p) || p % 2 == 0) throw PreconditionError("p must be an odd prime");
    if (h % 2 == 0) throw PreconditionError("conductor must be odd");
    if (h <= p) throw PreconditionError("large-conductor plan requires h > p");
    if (h % p == 0) throw PreconditionError("conductor must be prime to p");
    const u64 half = (h + 1) / 2;
    const u64 lo = (p + 3) / 2, hi = (3 * p - 1) / 2;
    LargeHPlan plan;
    plan.p = p;
    plan.h = h;
    bool found = false;
    for (u64 alpha = lo; alpha <= hi; ++alpha) {
        if (alpha % p == half % p) {
            plan.alpha = alpha;
            found = true;
            break;
        }
    }
    // the window covers every residue class except (p+1)/2, which is
    // excluded by gcd(h, p) = 1
    if (!found || half < plan.alpha)
        throw Error("no admissible decomposition h+1 = 2(alpha + p beta) (bug)");
    plan.beta = (half - plan.alpha) / p;
    if (plan.alpha % p == (p + 1) / 2 % p) throw Error("excluded residue class hit (bug)");
    if (plan.alpha <= p) {
        plan.case_tag = 1;
    } else {
        plan.case_tag = 2;
        u64 a1 = std::min(p - 1, plan.alpha - 2);
        while (a1 >= 2 && !(plan.alpha - a1 > 1 && plan.alpha - a1 <= a1 && a1 < p)) --a1;
        plan.alpha1 = a1;
        plan.alpha2 = plan.alpha - a1;
        if (!(1 < plan.alpha2 && plan.alpha2 <= plan.alpha1 && plan.alpha1 < p))
            throw Error("case-2 split failed (bug)");
    }
    return plan;
}

namespace {

// z^2 - c as a polynomial
Polynomial z2_minus(Field F, const FieldElement& c) {
    return Polynomial(F, {-c, F.zero(), F.one()});
}

struct LeafPair {
    Point center_at;          // attachment on the central component (and its negative)
    SingleZeroForm form;      // the leaf differential over its own field
};

// Builds the two-level tree shared by both large-conductor cases.
DecoratedTree assemble_large_tree(const LargeHPlan& plan, const Rat& delta_mid, Field K,
                                  const Polynomial& central_den,
                                  const std::vector<std::pair<FieldElement, u64>>& leaf_spots) {
    // leaf_spots: (attachment point x on the central chart, leaf conductor);
    // each spot spawns the pair of components at +-x.
    const u64 p = plan.p;
    if (!(delta_mid > Rat(0) && delta_mid < Rat(1)))
        throw PreconditionError("the middle different must lie in (0,1)");
    DecoratedTree tree;
    tree.field = K;
    tree.m = 2;
    tree.chi = p - 1;  // chi(tau) = -1
    DifferentialForm central(RationalFunction(Polynomial::one(K), central_den));
    tree.vertices.push_back({central, delta_mid});
    tree.root.vertex = 0;
    tree.root.point = Point::infinity(K);
    tree.root.different = Rat(0);
    tree.root.thickness = delta_mid / (Rat((long long)(p - 1)) * Rat((long long)plan.h));

    std::vector<int> perm{0};
    std::vector<MoebiusMap> maps{MoebiusMap::negation(K)};
    int edge_id = 0;
    for (const auto& [x, he] : leaf_spots) {
        SingleZeroForm leaf = omega_single_zero(p, he);
        Embedding up(leaf.field, K);
        DifferentialForm omega_w = leaf.omega.embedded(up);
        int w = (int)tree.vertices.size();
        tree.vertices.push_back({omega_w, Rat(1)});
        int u = (int)tree.vertices.size();
        tree.vertices.push_back({-omega_w, Rat(1)});
        Rat eps = (Rat(1) - delta_mid) / (Rat((long long)(p - 1)) * Rat((long long)he));
        tree.edges.push_back(
            {edge_id++, 0, w, Point::finite(x), Point::infinity(K), eps});
        tree.edges.push_back(
            {edge_id++, 0, u, Point::finite(-x), Point::infinity(K), eps});
        for (size_t i = 0; i < leaf.poles.size(); ++i) {
            Point at = leaf.poles[i].embedded(up);
            tree.marked.push_back({w, at, leaf.residues[i]});
            tree.marked.push_back({u, at, (p - leaf.residues[i] % p) % p});
        }
        // tau swaps the pair through the identity chart map
        perm.push_back(u);
        perm.push_back(w);
        maps.push_back(MoebiusMap::identity(K));
        maps.push_back(MoebiusMap::identity(K));
    }
    tree.n_components = (int)tree.vertices.size();
    tree.action = {std::move(perm), std::move(maps)};
    return tree;
}

}  // namespace

DecoratedTree build_large_h_tree(u64 p, u64 h, const Rat& delta_mid) {
    LargeHPlan plan = plan_large_h(p, h);

    // field requirements: the central auxiliary points and lambda, plus the
    // roots of unity the leaves need
    u64 K_deg = 1;
    std::vector<u64> leaf_conductors;
    if (plan.case_tag == 1) {
        leaf_conductors.push_back(plan.alpha - 1);
    } else {
        leaf_conductors.push_back(plan.alpha1 - 1);
        leaf_conductors.push_back(plan.alpha2 - 1);
    }
    if (plan.beta > 0) leaf_conductors.push_back(p - 1);
    for (u64 he : leaf_conductors) K_deg = lcm_u64(K_deg, (u64)ord_of_p_mod(p, he));

    FieldElement mu = Field::make(p, 1).zero();
    Polynomial Pmu = Polynomial::zero(Field::make(p, 1));
    if (plan.case_tag == 2) {
        Pmu = eta_half_coefficient(p, plan.alpha1, plan.alpha2);
        // least root of P outside {0, 1}, extending the field if needed
        Field Fm = Field::make(p, 1);
        bool found = false;
        for (int tries = 0; tries < 2 && !found; ++tries) {
            for (auto& [r, m] : roots_in(Pmu, Fm)) {
                (void)m;
                if (!r.is_zero() && !r.is_one()) {
                    mu = r;
                    found = true;
                    break;
                }
            }
            if (!found) Fm = splitting_field(Pmu, 12);
        }
        if (!found) throw SearchCapError("no admissible root of the obstruction polynomial");
        // lambda with lambda^2 = mu, extending by degree 2 if mu is not a square
        Field Fmu = mu.field();
        auto sq = roots_in(z2_minus(Fmu, mu), Fmu);
        if (sq.empty()) {
            Field F2 = Field::make(p, 2 * Fmu.k());
            mu = Embedding(Fmu, F2)(mu);
            sq = roots_in(z2_minus(F2, mu), F2);
            if (sq.empty()) throw Error("mu has no square root in the quadratic extension (bug)");
        }
        K_deg = lcm_u64(K_deg, (u64)mu.field().k());
    }

    Field K = Field::make(p, (int)K_deg);
    FieldElement lambda = K.zero();
    if (plan.case_tag == 2) {
        FieldElement mu_K = Embedding(mu.field(), K)(mu);
        auto sq = roots_in(z2_minus(K, mu_K), K);
        if (sq.empty()) throw Error("square root lost under field join (bug)");
        lambda = sq[0].first;
        mu = mu_K;
    }

    // auxiliary points: least elements x with +-x avoiding 0, +-1, +-lambda
    // and all previously chosen pairs
    std::vector<FieldElement> aux;
    {
        std::vector<FieldElement> forbidden{K.zero(), K.one(), -K.one()};
        if (plan.case_tag == 2) {
            forbidden.push_back(lambda);
            forbidden.push_back(-lambda);
        }
        u64 idx = 0;
        while (aux.size() < plan.beta) {
            if (idx >= K.size())
                throw SearchCapError("field too small for the auxiliary points");
            FieldElement x = K.element(idx++);
            bool ok = !x.is_zero();
            for (const auto& f : forbidden)
                if (x == f || x == -f) ok = false;
            if (!ok) continue;
            aux.push_back(x);
            forbidden.push_back(x);
            forbidden.push_back(-x);
        }
    }

    // central differential and the antiderivative data
    Polynomial den = Polynomial::one(K), Q = Polynomial::one(K), eta = Polynomial::one(K);
    std::vector<std::pair<FieldElement, u64>> spots;
    if (plan.case_tag == 1) {
        Polynomial z21 = z2_minus(K, K.one());
        den = z21.pow(plan.alpha);
        Q = z21;
        eta = z21.pow(p - plan.alpha);
        spots.emplace_back(K.one(), plan.alpha - 1);
    } else {
        Polynomial z21 = z2_minus(K, K.one());
        Polynomial z2l = z2_minus(K, mu);  // mu = lambda^2
        den = z21.pow(plan.alpha1) * z2l.pow(plan.alpha2);
        Q = z21 * z2l;
        eta = z21.pow(p - plan.alpha1) * z2l.pow(p - plan.alpha2);
        spots.emplace_back(K.one(), plan.alpha1 - 1);
        spots.emplace_back(lambda, plan.alpha2 - 1);
    }
    for (const auto& x : aux) {
        Polynomial z2x = z2_minus(K, x * x);
        den = den * z2x.pow(p);
        Q = Q * z2x;
        spots.emplace_back(x, p - 1);
    }

    DecoratedTree tree = assemble_large_tree(plan, delta_mid, K, den, spots);

    // the central form must be exact, constructively so
    const DifferentialForm& central = tree.vertices[0].omega;
    if (classify(central) != FormClass::Exact)
        throw Error("central differential is not Cartier-exact (bug)");
    auto G = exact_antiderivative_ppower(eta, Q);
    if (!G || G->derivative() != central.fn())
        throw Error("central antiderivative mismatch (bug)");
    return tree;
}

DecoratedTree build_small_h_tree(u64 p, u64 h) {
    if (h % 2 == 0) throw PreconditionError("conductor must be odd");
    if (!(3 <= h && h < p)) throw PreconditionError("small-conductor tree requires 3 <= h < p");
    CSolution c = good_solution_elimination(p, h);
    Field Fp = Field::make(p, 1);
    const u64 alpha = (h + 1) / 2;
    int r = (int)alpha - 1;
    std::vector<FieldElement> hc(r + 1, Fp.zero());
    for (int i = 0; i <= r; ++i) hc[r - i] = c.c[i];
    Polynomial hp(Fp, hc);
    Polynomial gp =
        RationalFunction::of(hp).substitute_moebius(MoebiusMap::negation(Fp)).num() *
        ((r % 2) ? -Fp.one() : Fp.one());
    Field S = splitting_field(hp * gp, 12);
    Embedding up(Fp, S);
    DifferentialForm omega = c_solution_form(c, alpha).embedded(up);

    DecoratedTree tree;
    tree.field = S;
    tree.m = 2;
    tree.chi = p - 1;
    tree.n_components = 1;
    tree.vertices.push_back({omega, Rat(1)});
    tree.root.vertex = 0;
    tree.root.point = Point::infinity(S);
    tree.root.different = Rat(0);
    tree.root.thickness = Rat(1, (long long)((p - 1) * h));
    for (auto& [x, mult] : roots_in(hp.embedded(up), S)) {
        if (mult != 1) throw Error("h is not squarefree at a good solution (bug)");
        tree.marked.push_back({0, Point::finite(x), p - 1});  // residue -1
    }
    for (auto& [x, mult] : roots_in(gp.embedded(up), S)) {
        if (mult != 1) throw Error("g is not squarefree at a good solution (bug)");
        tree.marked.push_back({0, Point::finite(x), 1});
    }
    tree.marked.push_back({0, Point::finite(S.one()), alpha % p});
    tree.marked.push_back({0, Point::finite(-S.one()), (p - alpha % p) % p});
    tree.action = {{0}, {MoebiusMap::negation(S)}};
    return tree;
}

}  // namespace charp
