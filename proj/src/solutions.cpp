#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "charp/constructions.hpp"
#include "charp/linear_forms.hpp"
#include "charp/scan_kernel.hpp"

namespace charp {

ResidueType power_of_two_type(u64 alpha) {
    if (alpha < 1) throw PreconditionError("type length must be positive");
    ResidueType a(alpha);
    u64 v = 1;
    for (u64 i = 0; i < alpha; ++i) {
        a[i] = v;
        v *= 2;
    }
    return a;
}

static void check_type(u64 p, const ResidueType& a) {
    if (a.empty()) throw PreconditionError("empty residue type");
    for (u64 v : a)
        if (v % p == 0) throw PreconditionError("residue type entries must be nonzero mod p");
}

bool type_admits_trivial(u64 p, const ResidueType& a) {
    check_type(p, a);
    const size_t n = a.size();
    u64 total = 1;
    for (size_t i = 0; i < n; ++i) {
        if (total > 100'000'000ull) throw SearchCapError("type too long for the sign scan");
        total *= 3;
    }
    for (u64 code = 0; code < total; ++code) {
        u64 c = code;
        i64 sum = 0;
        int nonzero = 0;
        for (size_t i = 0; i < n; ++i) {
            int s = (int)(c % 3) - 1;
            c /= 3;
            if (s != 0) {
                ++nonzero;
                sum += s * (i64)(a[i] % p);
            }
        }
        if (nonzero >= 2 && ((sum % (i64)p) + (i64)p) % (i64)p == 0) return true;
    }
    return false;
}

std::vector<FieldElement> d_vector_z(const std::vector<FieldElement>& z, const ResidueType& a) {
    if (z.size() != a.size()) throw PreconditionError("z and type lengths differ");
    if (z.empty()) throw PreconditionError("empty point");
    Field F = z[0].field();
    size_t alpha = z.size();
    std::vector<FieldElement> d;
    d.reserve(alpha - 1);
    for (size_t j = 0; j + 1 < alpha; ++j) {
        FieldElement s = F.zero();
        for (size_t i = 0; i < alpha; ++i) s += F.from_int((i64)a[i]) * z[i].pow(2 * j + 1);
        d.push_back(s);
    }
    return d;
}

std::vector<FieldElement> d_vector_c(const std::vector<FieldElement>& c, u64 alpha) {
    if (c.empty()) throw PreconditionError("empty coefficient vector");
    Field F = c[0].field();
    int r = (int)c.size() - 1;
    auto C = [&](int j) { return (j >= 0 && j <= r) ? c[j] : F.zero(); };
    FieldElement al = F.from_int((i64)alpha);
    std::vector<FieldElement> d;
    d.reserve(r);
    for (int l = 0; l < r; ++l) {
        FieldElement s = F.zero();
        for (int i = 0; i <= l; ++i) {
            FieldElement t = C(i) * C(2 * l + 1 - i) * F.from_int(2 * l + 1 - 2 * i);
            s += (i % 2 == 0) ? t : -t;
        }
        for (int i = 0; i <= l - 1; ++i) {
            FieldElement t = C(i) * C(2 * l - 1 - i) * F.from_int(2 * l - 1 - 2 * i);
            s -= (i % 2 == 0) ? t : -t;
        }
        for (int i = 0; i <= l - 1; ++i) {
            FieldElement t = F.from_int(2) * al * C(i) * C(2 * l - i);
            s += (i % 2 == 0) ? t : -t;
        }
        FieldElement sq = al * C(l) * C(l);
        s += (l % 2 == 0) ? sq : -sq;
        d.push_back(s);
    }
    return d;
}

SolutionClass classify_solution(const std::vector<FieldElement>& z, const ResidueType& a) {
    if (z.size() != a.size()) throw PreconditionError("z and type lengths differ");
    bool all_zero = true;
    for (const auto& v : z)
        if (!v.is_zero()) all_zero = false;
    if (all_zero) throw PreconditionError("z must not be identically zero");
    Field F = z[0].field();
    const u64 p = F.p();
    check_type(p, a);

    SolutionClass out;
    out.signs.assign(z.size(), 0);
    std::vector<FieldElement> reps;  // squares of class representatives
    std::vector<int> rep_index;
    for (int i = 0; i < (int)z.size(); ++i) {
        if (z[i].is_zero()) {
            out.zero_indices.push_back(i);
            continue;
        }
        FieldElement sq = z[i] * z[i];
        int cls = -1;
        for (int c = 0; c < (int)reps.size(); ++c)
            if (reps[c] == sq) {
                cls = c;
                break;
            }
        if (cls < 0) {
            cls = (int)reps.size();
            reps.push_back(sq);
            rep_index.push_back(i);
            out.classes.emplace_back();
        }
        out.classes[cls].push_back(i);
        out.signs[i] = (z[i] == z[rep_index[cls]]) ? 1 : -1;
    }
    out.good = out.zero_indices.empty();
    for (const auto& cls : out.classes)
        if (cls.size() > 1) out.good = false;

    auto d = d_vector_z(z, a);
    out.is_solution = true;
    for (const auto& v : d)
        if (!v.is_zero()) out.is_solution = false;

    if (out.is_solution && !out.good) {
        // every equal-square class of a trivial solution carries a vanishing
        // signed residue sum (and in particular has size >= 2)
        for (const auto& cls : out.classes) {
            i64 sum = 0;
            for (int i : cls) sum += out.signs[i] * (i64)(a[i] % p);
            if (cls.size() < 2 || ((sum % (i64)p) + (i64)p) % (i64)p != 0)
                throw Error("trivial-solution class with nonvanishing signed sum (bug)");
        }
    }
    return out;
}

int tangent_rank(const std::vector<FieldElement>& z, const ResidueType& a) {
    auto d = d_vector_z(z, a);
    for (const auto& v : d)
        if (!v.is_zero()) throw PreconditionError("tangent_rank requires a solution");
    Field F = z[0].field();
    size_t alpha = z.size();
    // rows j = 0..alpha-2, columns i: (2j+1) a_i z_i^{2j}
    std::vector<std::vector<FieldElement>> M;
    for (size_t j = 0; j + 1 < alpha; ++j) {
        std::vector<FieldElement> row;
        for (size_t i = 0; i < alpha; ++i)
            row.push_back(F.from_int((i64)(2 * j + 1)) * F.from_int((i64)a[i]) *
                          z[i].pow(2 * j));
        M.push_back(std::move(row));
    }
    // Gaussian elimination
    int rank = 0;
    size_t col = 0;
    for (size_t row = 0; row < M.size() && col < alpha; ++col) {
        size_t piv = row;
        while (piv < M.size() && M[piv][col].is_zero()) ++piv;
        if (piv == M.size()) continue;
        std::swap(M[row], M[piv]);
        FieldElement inv = M[row][col].inverse();
        for (size_t rr = row + 1; rr < M.size(); ++rr) {
            if (M[rr][col].is_zero()) continue;
            FieldElement f = M[rr][col] * inv;
            for (size_t cc = col; cc < alpha; ++cc) M[rr][cc] -= f * M[row][cc];
        }
        ++row;
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// elimination
// ---------------------------------------------------------------------------

namespace {

std::string dump_parametrization(const std::vector<LinearForm>& cs) {
    std::ostringstream os;
    for (size_t j = 0; j < cs.size(); ++j) {
        os << "c_" << j << " =";
        for (int i = 0; i < cs[j].params(); ++i)
            os << " " << cs[j].coeff(i).residue() << "*t" << i;
        os << "\n";
    }
    return os.str();
}

// d_l as a quadratic form in the parameters of the current parametrization.
QuadraticForm d_quadratic(const std::vector<LinearForm>& cs, int l, u64 alpha, Field F) {
    int r = (int)cs.size() - 1;
    int s = cs[0].params();
    QuadraticForm q(F, s);
    LinearForm zero(F, s);
    auto C = [&](int j) -> const LinearForm& { return (j >= 0 && j <= r) ? cs[j] : zero; };
    FieldElement al = F.from_int((i64)alpha);
    for (int i = 0; i <= l; ++i) {
        FieldElement sc = F.from_int(2 * l + 1 - 2 * i);
        if (i % 2) sc = -sc;
        q.add_product(C(i), C(2 * l + 1 - i), sc);
    }
    for (int i = 0; i <= l - 1; ++i) {
        FieldElement sc = F.from_int(2 * l - 1 - 2 * i);
        if (i % 2 == 0) sc = -sc;
        q.add_product(C(i), C(2 * l - 1 - i), sc);
    }
    for (int i = 0; i <= l - 1; ++i) {
        FieldElement sc = F.from_int(2) * al;
        if (i % 2) sc = -sc;
        q.add_product(C(i), C(2 * l - i), sc);
    }
    {
        FieldElement sc = al;
        if (l % 2) sc = -sc;
        q.add_product(C(l), C(l), sc);
    }
    return q;
}

}  // namespace

DifferentialForm c_solution_form(const CSolution& cs, u64 alpha) {
    Field F = cs.c[0].field();
    int r = (int)cs.c.size() - 1;
    // h = sum c_i z^{r-i}, g(z) = h(-z)
    std::vector<FieldElement> hc(r + 1, F.zero());
    for (int i = 0; i <= r; ++i) hc[r - i] = cs.c[i];
    Polynomial h(F, hc);
    Polynomial g = RationalFunction::of(h)
                       .substitute_moebius(MoebiusMap::negation(F))
                       .num() *
                   ((r % 2) ? -F.one() : F.one());
    // f = (g/h) ((z-1)/(z+1))^alpha
    RationalFunction base(Polynomial::from_ints(F, {-1, 1}), Polynomial::from_ints(F, {1, 1}));
    RationalFunction f = RationalFunction(g, h) * base.pow((i64)alpha);
    return log_diff(f);
}

CSolution good_solution_elimination(u64 p, u64 h) {
    if (h % 2 == 0 || h < 3 || h >= p)
        throw PreconditionError("elimination requires odd h with 3 <= h < p");
    Field F = Field::make(p, 1);
    u64 alpha = (h + 1) / 2;
    int r = (int)alpha - 1;
    // parametrization of P^r: c_j = t_j
    std::vector<LinearForm> cs;
    for (int j = 0; j <= r; ++j) {
        LinearForm e(F, r + 1);
        e.set_coeff(j, F.one());
        cs.push_back(e);
    }
    for (int l = 0; l < r; ++l) {
        QuadraticForm q = d_quadratic(cs, l, alpha, F);
        auto sp = q.split_first();
        if (!sp.c->is_zero() || sp.b.is_zero()) {
            std::ostringstream what;
            what << "elimination step " << l << ": d_" << l
                 << " does not have t-valuation 1 (quadratic tail "
                 << (sp.c->is_zero() ? "zero" : "nonzero") << ", linear part "
                 << (sp.b.is_zero() ? "zero" : "nonzero") << ")";
            throw EliminationError(what.str(), dump_parametrization(cs));
        }
        // constraint a t_0 + b(t_1..) = 0; eliminate the largest-index
        // parameter appearing in b
        int s = cs[0].params();
        int piv = -1;
        for (int i = s - 2; i >= 0; --i)
            if (!sp.b.coeff(i).is_zero()) {
                piv = i + 1;  // shift: b is indexed over parameters 1..s-1
                break;
            }
        if (piv < 1) throw EliminationError("no pivot available", dump_parametrization(cs));
        FieldElement binv = sp.b.coeff(piv - 1).inverse();
        LinearForm repl(F, s);
        repl.set_coeff(0, -(sp.a * binv));
        for (int i = 1; i < s; ++i) {
            if (i == piv) continue;
            repl.set_coeff(i, -(sp.b.coeff(i - 1) * binv));
        }
        for (auto& c : cs) c = c.substitute(piv, repl);
    }
    if (cs[0].params() != 1)
        throw EliminationError("parametrization did not collapse to a point",
                               dump_parametrization(cs));
    CSolution out;
    for (int j = 0; j <= r; ++j) out.c.push_back(cs[j].coeff(0));
    if (!out.c[0].is_one())
        throw EliminationError("c_0 was eliminated (expected to stay the parameter)",
                               dump_parametrization(cs));
    // full verification of the returned point
    for (const auto& v : d_vector_c(out.c, alpha))
        if (!v.is_zero()) throw EliminationError("eliminated point is not a solution", "");
    std::vector<FieldElement> hc(r + 1, F.zero());
    for (int i = 0; i <= r; ++i) hc[r - i] = out.c[i];
    Polynomial hp(F, hc);
    Polynomial gp = RationalFunction::of(hp)
                        .substitute_moebius(MoebiusMap::negation(F))
                        .num() *
                    ((r % 2) ? -F.one() : F.one());
    Polynomial disc_poly = Polynomial::from_ints(F, {0, 1}) *
                           Polynomial::from_ints(F, {-1, 0, 1}) * hp * gp;
    if (poly_gcd(disc_poly, disc_poly.derivative()).degree() > 0)
        throw EliminationError("eliminated point lies on the discriminant locus", "");
    DifferentialForm omega = c_solution_form(out, alpha);
    if (classify(omega) != FormClass::Logarithmic)
        throw EliminationError("attached form is not logarithmic", "");
    if (ord_at(omega, Point::infinity(F)) != (int)h - 1)
        throw EliminationError("attached form does not vanish to order h-1 at infinity", "");
    return out;
}

// ---------------------------------------------------------------------------
// exhaustive scan
// ---------------------------------------------------------------------------

namespace {

u64 checked_pow(u64 base, u64 e, u64 cap) {
    u64 r = 1;
    for (u64 i = 0; i < e; ++i) {
        if (r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

struct ScanContext {
    Field F;
    u64 p;
    u64 q;
    ResidueType a;
    size_t alpha;
    size_t m_eq;
    // per-equation table of a_last * e^{2j+1}, indexed by element index
    // (built only when q fits in 16 bits)
    bool has_tables = false;
    std::vector<std::vector<FieldElement>> inner_pow;
    ScanTable table;  // lanes of inner_pow[0]
    bool use_kernel = false;
    ScanFilterFn filter = nullptr;
};

void scan_inner(const ScanContext& ctx, const std::vector<FieldElement>& prefix_sums,
                const std::vector<FieldElement>& outer_values, int chart,
                std::vector<SolutionRecord>& out) {
    const Field& F = ctx.F;
    auto emit = [&](u64 e) {
        std::vector<FieldElement> z(ctx.alpha, F.zero());
        z[chart] = F.one();
        for (size_t i = 0; i < outer_values.size(); ++i) z[chart + 1 + i] = outer_values[i];
        z[ctx.alpha - 1] = F.element(e);
        SolutionRecord rec;
        rec.z = z;
        rec.chart = chart;
        rec.cls = classify_solution(z, ctx.a);
        rec.rank = tangent_rank(z, ctx.a);
        out.push_back(std::move(rec));
    };
    if (ctx.has_tables) {
        auto full_check = [&](u64 e) {
            for (size_t j = 1; j < ctx.m_eq; ++j)
                if (!(prefix_sums[j] + ctx.inner_pow[j][e]).is_zero()) return false;
            return true;
        };
        if (ctx.use_kernel) {
            std::vector<std::uint16_t> prefix(F.k());
            for (int l = 0; l < F.k(); ++l)
                prefix[l] = (std::uint16_t)prefix_sums[0].coeffs()[l];
            std::vector<std::uint32_t> cand;
            ctx.filter(ctx.table, prefix.data(), cand);
            for (u64 e : cand)
                if (full_check(e)) emit(e);
        } else {
            for (u64 e = 0; e < ctx.q; ++e) {
                if (!(prefix_sums[0] + ctx.inner_pow[0][e]).is_zero()) continue;
                if (full_check(e)) emit(e);
            }
        }
        return;
    }
    // direct path for fields beyond the table range
    FieldElement a_last = F.from_int((i64)ctx.a[ctx.alpha - 1]);
    for (u64 e = 0; e < ctx.q; ++e) {
        FieldElement x = F.element(e);
        if (!(prefix_sums[0] + a_last * x).is_zero()) continue;
        bool ok = true;
        for (size_t j = 1; j < ctx.m_eq && ok; ++j)
            if (!(prefix_sums[j] + a_last * x.pow(2 * j + 1)).is_zero()) ok = false;
        if (ok) emit(e);
    }
}

}  // namespace

std::vector<SolutionRecord> solve_brute(u64 p, u64 h, const ResidueType& a, int ext,
                                        const BruteOptions& opt) {
    check_type(p, a);
    if (h % 2 == 0 || (h + 1) / 2 != a.size())
        throw PreconditionError("type length must equal (h+1)/2 with h odd");
    Field F = Field::make(p, ext);
    const u64 q = F.size();
    const size_t alpha = a.size();
    if (alpha < 2) throw PreconditionError("need at least two coordinates");
    const size_t m_eq = alpha - 1;

    u64 total = 0;
    for (size_t c = 0; c < alpha; ++c) {
        u64 pts = checked_pow(q, alpha - 1 - c, opt.max_points);
        if (pts > opt.max_points - total)
            throw SearchCapError("projective scan of P^" + std::to_string(alpha - 1) + "(F_" +
                                 std::to_string(p) + "^" + std::to_string(ext) +
                                 ") exceeds the point budget");
        total += pts;
    }

    ScanContext ctx{F, p, q, a, alpha, m_eq, false, {}, {}, false, nullptr};
    if (q <= 65536) {
        ctx.has_tables = true;
        FieldElement a_last = F.from_int((i64)a[alpha - 1]);
        ctx.inner_pow.resize(m_eq);
        for (size_t j = 0; j < m_eq; ++j) {
            ctx.inner_pow[j].reserve(q);
            for (u64 e = 0; e < q; ++e)
                ctx.inner_pow[j].push_back(a_last * F.element(e).pow(2 * j + 1));
        }
        if (opt.use_kernel) {
            ctx.use_kernel = true;
            ctx.filter = select_scan_filter();
            ctx.table.n = q;
            ctx.table.p = (std::uint16_t)p;
            ctx.table.lanes.assign(F.k(), std::vector<std::uint16_t>(q));
            for (u64 e = 0; e < q; ++e)
                for (int l = 0; l < F.k(); ++l)
                    ctx.table.lanes[l][e] = (std::uint16_t)ctx.inner_pow[0][e].coeffs()[l];
        }
    }

    std::vector<SolutionRecord> records;
    for (size_t chart = 0; chart < alpha; ++chart) {
        size_t free = alpha - 1 - chart;
        if (free == 0) {
            std::vector<FieldElement> z(alpha, F.zero());
            z[chart] = F.one();
            bool sol = true;
            for (const auto& v : d_vector_z(z, a))
                if (!v.is_zero()) sol = false;
            if (sol) {
                SolutionRecord rec;
                rec.z = z;
                rec.chart = (int)chart;
                rec.cls = classify_solution(z, a);
                rec.rank = tangent_rank(z, a);
                records.push_back(std::move(rec));
            }
            continue;
        }
        size_t n_outer = free - 1;  // coordinates chart+1 .. alpha-2
        u64 outer_total = 1;
        for (size_t i = 0; i < n_outer; ++i) outer_total *= q;

        auto run_range = [&](u64 lo, u64 hi, std::vector<SolutionRecord>& sink) {
            std::vector<FieldElement> outer(n_outer, F.zero());
            for (u64 idx = lo; idx < hi; ++idx) {
                u64 t = idx;
                for (size_t i = 0; i < n_outer; ++i) {
                    outer[i] = F.element(t % q);
                    t /= q;
                }
                std::vector<FieldElement> prefix;
                prefix.reserve(m_eq);
                for (size_t j = 0; j < m_eq; ++j) {
                    FieldElement s = F.from_int((i64)a[chart]);  // z_chart = 1
                    for (size_t i = 0; i < n_outer; ++i)
                        s += F.from_int((i64)a[chart + 1 + i]) * outer[i].pow(2 * j + 1);
                    prefix.push_back(s);
                }
                scan_inner(ctx, prefix, outer, (int)chart, sink);
            }
        };

        int jobs = std::max(1, opt.jobs);
        if (jobs == 1 || outer_total < 64) {
            run_range(0, outer_total, records);
        } else {
            u64 n_chunks = std::min<u64>(outer_total, (u64)jobs * 8);
            u64 chunk = (outer_total + n_chunks - 1) / n_chunks;
            std::vector<std::vector<SolutionRecord>> results(n_chunks);
            std::vector<std::thread> threads;
            std::atomic<u64> next{0};
            for (int t = 0; t < jobs; ++t) {
                threads.emplace_back([&] {
                    for (;;) {
                        u64 i = next.fetch_add(1);
                        if (i >= n_chunks) break;
                        u64 lo = i * chunk, hi = std::min(outer_total, lo + chunk);
                        run_range(lo, hi, results[i]);
                    }
                });
            }
            for (auto& th : threads) th.join();
            for (auto& rs : results)
                for (auto& r : rs) records.push_back(std::move(r));
        }
    }
    return records;
}

CountReport count_good(u64 p, u64 h, const ResidueType& a, const CountPolicy& policy) {
    check_type(p, a);
    CountReport rep;
    const size_t alpha = a.size();
    rep.bezout = 1;
    for (size_t j = 0; j + 1 < alpha; ++j) rep.bezout *= (2 * j + 1);

    std::vector<u64> n_exact(policy.max_ext + 1, 0);  // exact-degree counts
    std::vector<u64> N_level(policy.max_ext + 1, 0);
    u64 cumulative = 0, prev_cumulative = 0;
    for (int k = 1; k <= policy.max_ext; ++k) {
        u64 q = checked_pow(p, (u64)k, policy.max_points);
        u64 total = 0;
        bool too_big = q > policy.max_points;
        if (!too_big)
            for (size_t c = 0; c < alpha && !too_big; ++c) {
                u64 pts = checked_pow(q, alpha - 1 - c, policy.max_points);
                if (pts > policy.max_points - total) too_big = true;
                total += pts;
            }
        if (too_big) break;  // inconclusive: budget exhausted before stabilization

        BruteOptions opt;
        opt.jobs = policy.jobs;
        opt.max_points = policy.max_points;
        auto recs = solve_brute(p, h, a, k, opt);
        LevelStats st;
        st.k = k;
        st.points = total;
        for (const auto& r : recs)
            (r.cls.good ? st.good : st.trivial)++;
        N_level[k] = st.good;
        u64 lower = 0;
        for (int d = 1; d < k; ++d)
            if (k % d == 0) lower += n_exact[d];
        n_exact[k] = N_level[k] - lower;
        st.new_good = n_exact[k];
        prev_cumulative = cumulative;
        cumulative += n_exact[k];
        rep.levels.push_back(st);
        rep.good = cumulative;
        if (cumulative == rep.bezout) {
            rep.stabilized = true;
            rep.stabilized_at = k;
            break;
        }
        if (k >= 2 && cumulative == prev_cumulative && cumulative > 0) {
            rep.stabilized = true;
            rep.stabilized_at = k;
            break;
        }
    }
    return rep;
}

}  // namespace charp
