#include "charp/hurwitz_tree.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace charp {

bool TreeReport::all_pass() const {
    if (!structural_ok) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const CheckResult* TreeReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

std::string point_str(const Point& P) {
    if (P.is_infinity()) return "inf";
    std::ostringstream os;
    os << "(";
    const auto& c = P.value().coeffs();
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ")";
    return os.str();
}

// The action of the generator on edges and marked points, plus its powers.
struct ActionTable {
    // composite permutation and maps for g^j, j = 0..m-1
    std::vector<std::vector<int>> perm;
    std::vector<std::vector<MoebiusMap>> maps;
};

ActionTable action_powers(const DecoratedTree& t) {
    ActionTable out;
    int n = t.n_components;
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    std::vector<MoebiusMap> idm(n, MoebiusMap::identity(t.field));
    out.perm.push_back(id);
    out.maps.push_back(idm);
    for (u64 j = 1; j < t.m; ++j) {
        const auto& pp = out.perm.back();
        const auto& pm = out.maps.back();
        std::vector<int> np(n);
        std::vector<MoebiusMap> nm;
        nm.reserve(n);
        for (int c = 0; c < n; ++c) {
            np[c] = t.action.perm[pp[c]];
            nm.push_back(t.action.moebius[pp[c]].compose(pm[c]));
        }
        out.perm.push_back(std::move(np));
        out.maps.push_back(std::move(nm));
    }
    return out;
}

struct SpecialPoints {
    // per component: the attachment points of incident edges plus z_0
    std::vector<std::vector<Point>> attach;
    std::vector<std::vector<Point>> marked;
};

}  // namespace

TreeReport validate(const DecoratedTree& t) {
    TreeReport rep;
    rep.different = t.root.different;
    Field F = t.field;
    rep.lambda = F.valid() ? F.zero() : FieldElement();

    // ---------------- structural layer ----------------
    auto structural_fail = [&](const std::string& why) {
        rep.structural_ok = false;
        rep.structural_error = why;
        return rep;
    };
    if (!F.valid()) return structural_fail("missing field");
    const u64 p = F.p();
    const int n = t.n_components;
    if (n < 1 || (int)t.vertices.size() != n) return structural_fail("component/vertex mismatch");
    if (t.m < 1 || t.m % p == 0) return structural_fail("group order must be prime to p");
    if (t.chi % p == 0) return structural_fail("chi must land in the multiplicative group");
    if (t.root.vertex < 0 || t.root.vertex >= n) return structural_fail("root vertex out of range");
    if (t.root.point.field() != F) return structural_fail("root point in a foreign field");
    if ((int)t.edges.size() != n - 1)
        return structural_fail("edge count must be one less than the component count");
    std::set<int> edge_ids;
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge index)
    for (size_t i = 0; i < t.edges.size(); ++i) {
        const auto& e = t.edges[i];
        if (!edge_ids.insert(e.id).second) return structural_fail("duplicate edge id");
        if (e.source < 0 || e.source >= n || e.target < 0 || e.target >= n)
            return structural_fail("dangling edge");
        if (e.source == e.target) return structural_fail("edge loop");
        if (e.source_at.field() != F || e.target_at.field() != F)
            return structural_fail("edge attachment in a foreign field");
        adj[e.source].push_back({e.target, (int)i});
        adj[e.target].push_back({e.source, (int)i});
    }
    // connectivity + orientation away from the root component
    std::vector<int> depth(n, -1);
    std::queue<int> bfs;
    bfs.push(t.root.vertex);
    depth[t.root.vertex] = 0;
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (auto [w, ei] : adj[v])
            if (depth[w] < 0) {
                depth[w] = depth[v] + 1;
                bfs.push(w);
            }
    }
    for (int v = 0; v < n; ++v)
        if (depth[v] < 0) return structural_fail("dual graph is not connected");
    for (const auto& e : t.edges)
        if (depth[e.source] + 1 != depth[e.target])
            return structural_fail("edge " + std::to_string(e.id) +
                                   " is not oriented away from the root");
    if ((int)t.action.perm.size() != n || (int)t.action.moebius.size() != n)
        return structural_fail("action tables must cover every component");
    {
        std::set<int> image(t.action.perm.begin(), t.action.perm.end());
        if ((int)image.size() != n || *image.begin() < 0 || *image.rbegin() >= n)
            return structural_fail("action permutation is not a permutation");
        for (const auto& m : t.action.moebius) {
            if (m.a.field() != F) return structural_fail("action map in a foreign field");
            if (m.det().is_zero()) return structural_fail("degenerate action map");
        }
    }
    for (const auto& mp : t.marked) {
        if (mp.component < 0 || mp.component >= n)
            return structural_fail("marked point on a missing component");
        if (mp.at.field() != F) return structural_fail("marked point in a foreign field");
        if (mp.residue == 0 || mp.residue >= p)
            return structural_fail("marked residue must lie in 1..p-1");
    }
    for (const auto& v : t.vertices)
        if (!v.omega.is_zero() && v.omega.field() != F)
            return structural_fail("vertex form in a foreign field");
    rep.structural_ok = true;

    auto check = [&](const std::string& name, bool pass, const std::string& witness = "") {
        rep.checks.push_back({name, pass, pass ? "" : witness});
    };

    // ---------------- ranges ----------------
    {
        bool ok = t.root.different >= Rat(0) && t.root.different < Rat(1);
        std::string w = "root different " + rat_to_string(t.root.different);
        for (int v = 0; v < n; ++v) {
            const Rat& d = t.vertices[v].different;
            if (!(d > Rat(0) && d <= Rat(1))) {
                ok = false;
                w = "component " + std::to_string(v) + " different " + rat_to_string(d);
            }
        }
        if (!(t.root.thickness > Rat(0))) {
            ok = false;
            w = "root thickness";
        }
        for (const auto& e : t.edges)
            if (!(e.thickness > Rat(0))) {
                ok = false;
                w = "edge " + std::to_string(e.id) + " thickness";
            }
        check("different_and_thickness_ranges", ok, w);
    }

    // ---------------- special points / stable marking ----------------
    SpecialPoints sp;
    sp.attach.assign(n, {});
    sp.marked.assign(n, {});
    for (const auto& e : t.edges) {
        sp.attach[e.source].push_back(e.source_at);
        sp.attach[e.target].push_back(e.target_at);
    }
    sp.attach[t.root.vertex].push_back(t.root.point);
    for (const auto& mp : t.marked) sp.marked[mp.component].push_back(mp.at);
    {
        bool ok = true;
        std::string w;
        for (int v = 0; v < n && ok; ++v) {
            std::vector<Point> all = sp.attach[v];
            all.insert(all.end(), sp.marked[v].begin(), sp.marked[v].end());
            std::sort(all.begin(), all.end());
            if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
                ok = false;
                w = "component " + std::to_string(v) + " has coincident special points";
            } else if (all.size() < 3) {
                ok = false;
                w = "component " + std::to_string(v) + " has only " +
                    std::to_string(all.size()) + " special points";
            }
        }
        check("stably_marked", ok, w);
        check("marked_point_count", t.marked.size() >= 2,
              "need at least two marked points, got " + std::to_string(t.marked.size()));
    }

    // ---------------- action geometry ----------------
    ActionTable at = action_powers(t);
    {
        // the generator composed m times must be the identity
        bool ok = true;
        const auto& pm = at.perm.back();
        const auto& mm = at.maps.back();
        for (int c = 0; c < n; ++c) {
            int img = t.action.perm[pm[c]];
            MoebiusMap full = t.action.moebius[pm[c]].compose(mm[c]);
            if (img != c || !full.is_identity()) ok = false;
        }
        check("action_order_divides_m", ok, "generator^m is not the identity");
        u64 chipow = 1;
        for (u64 i = 0; i < t.m; ++i) chipow = chipow * t.chi % p;
        check("character_well_defined", chipow == 1, "chi(generator)^m != 1");
    }
    check("action_fixes_root",
          t.action.perm[t.root.vertex] == t.root.vertex &&
              t.action.moebius[t.root.vertex].apply(t.root.point) == t.root.point,
          "the distinguished point is not fixed");
    if (t.action.perm[t.root.vertex] == t.root.vertex &&
        t.action.moebius[t.root.vertex].apply(t.root.point) == t.root.point)
        rep.lambda = t.action.moebius[t.root.vertex].tangent_multiplier(t.root.point);

    // edges must map to edges (source/target aligned with the orientation)
    std::vector<int> edge_image(t.edges.size(), -1);
    {
        bool ok = true;
        std::string w;
        for (size_t i = 0; i < t.edges.size(); ++i) {
            const auto& e = t.edges[i];
            int ns = t.action.perm[e.source], nt = t.action.perm[e.target];
            Point nsa = t.action.moebius[e.source].apply(e.source_at);
            Point nta = t.action.moebius[e.target].apply(e.target_at);
            int found = -1;
            for (size_t j = 0; j < t.edges.size(); ++j) {
                const auto& f = t.edges[j];
                if (f.source == ns && f.target == nt && f.source_at == nsa &&
                    f.target_at == nta) {
                    found = (int)j;
                    break;
                }
            }
            if (found < 0) {
                ok = false;
                w = "edge " + std::to_string(e.id) + " has no image";
            }
            edge_image[i] = found;
        }
        check("action_permutes_edges", ok, w);
    }

    // marked points map to marked points with chi-scaled residues
    {
        bool ok = true;
        std::string w;
        for (const auto& mp : t.marked) {
            int nc = t.action.perm[mp.component];
            Point na = t.action.moebius[mp.component].apply(mp.at);
            u64 want = mp.residue * t.chi % p;
            bool found = false;
            for (const auto& other : t.marked)
                if (other.component == nc && other.at == na && other.residue == want) {
                    found = true;
                    break;
                }
            if (!found) {
                ok = false;
                w = "marked point " + point_str(mp.at) + " on component " +
                    std::to_string(mp.component);
                break;
            }
        }
        check("residue_equivariance", ok, w);
    }

    // ---------------- per-vertex differential checks ----------------
    bool support_ok_all = true;
    for (int v = 0; v < n; ++v) {
        const DifferentialForm& w = t.vertices[v].omega;
        std::string tag = "component " + std::to_string(v);
        if (w.is_zero()) {
            check("omega_nonzero", false, tag);
            support_ok_all = false;
            continue;
        }
        // all zeros and poles must be special points of this component
        std::vector<Point> special = sp.attach[v];
        special.insert(special.end(), sp.marked[v].begin(), sp.marked[v].end());
        auto is_special = [&](const Point& P) {
            return std::find(special.begin(), special.end(), P) != special.end();
        };
        bool ok = true;
        std::string witness;
        auto scan_roots = [&](const Polynomial& poly) {
            int covered = 0;
            for (auto& [x, m] : roots_in(poly, F)) {
                covered += m;
                if (!is_special(Point::finite(x))) {
                    ok = false;
                    witness = tag + ": zero/pole at " + point_str(Point::finite(x)) +
                              " is not a special point";
                }
            }
            if (covered != poly.degree()) {
                ok = false;
                witness = tag + ": zeros/poles outside the base field";
            }
        };
        scan_roots(w.fn().num());
        scan_roots(w.fn().den());
        if (!is_special(Point::infinity(F)) && ord_at(w, Point::infinity(F)) != 0) {
            ok = false;
            witness = tag + ": unexpected zero/pole at infinity";
        }
        check("omega_support", ok, witness);
        if (!ok) support_ok_all = false;
    }

    // condition (v): simple poles with the prescribed residues at marked points
    {
        bool ok = true;
        std::string w;
        for (const auto& mp : t.marked) {
            const DifferentialForm& om = t.vertices[mp.component].omega;
            if (om.is_zero()) continue;
            if (ord_at(om, mp.at) != -1) {
                ok = false;
                w = "not a simple pole at " + point_str(mp.at);
                break;
            }
            if (residue_at(om, mp.at) != F.from_int((i64)mp.residue)) {
                ok = false;
                w = "residue mismatch at " + point_str(mp.at);
                break;
            }
        }
        check("simple_poles_at_marked", ok, w);
    }

    // condition (ii): the different dictates the torsor class of omega
    {
        bool ok = true;
        std::string w;
        for (int v = 0; v < n; ++v) {
            const auto& vd = t.vertices[v];
            if (vd.omega.is_zero()) continue;
            FormClass cls = classify(vd.omega);
            if (vd.different == Rat(1)) {
                if (cls != FormClass::Logarithmic) {
                    ok = false;
                    w = "component " + std::to_string(v) + " should carry a logarithmic form";
                    break;
                }
                // constructive cross-check when every pole is simple: omega
                // must be du/u for u = prod (z - z_b)^{a_b}
                auto dr = roots_in(vd.omega.fn().den(), F);
                bool simple = true;
                for (auto& [x, m] : dr)
                    if (m != 1) simple = false;
                if (simple) {
                    RationalFunction u = RationalFunction::of(Polynomial::one(F));
                    for (auto& [x, m] : dr) {
                        (void)m;
                        u64 lift = 0;
                        FieldElement res = residue_at(vd.omega, Point::finite(x));
                        if (!res.in_prime_field()) {
                            simple = false;
                            break;
                        }
                        lift = res.residue();
                        u = u * RationalFunction::of(Polynomial(F, {-x, F.one()})).pow((i64)lift);
                    }
                    if (simple && log_diff(u) != vd.omega) {
                        ok = false;
                        w = "component " + std::to_string(v) +
                            ": Cartier-fixed form is not a logarithmic derivative of its "
                            "residue data";
                        break;
                    }
                }
            } else {
                if (cls != FormClass::Exact) {
                    ok = false;
                    w = "component " + std::to_string(v) + " should carry an exact form";
                    break;
                }
            }
        }
        check("different_classifies_form", ok, w);
    }

    // condition (i): chi-equivariance of the forms under the generator
    {
        bool ok = true;
        std::string w;
        FieldElement chi_el = F.from_int((i64)t.chi);
        for (int v = 0; v < n; ++v) {
            const auto& om_img = t.vertices[t.action.perm[v]].omega;
            const auto& om = t.vertices[v].omega;
            if (om.is_zero() || om_img.is_zero()) continue;
            if (pullback_moebius(om_img, t.action.moebius[v]) != om.scaled(chi_el)) {
                ok = false;
                w = "component " + std::to_string(v);
                break;
            }
        }
        check("chi_equivariance", ok, w);
    }

    // ---------------- edge checks ----------------
    long long conductor = 0;
    {
        bool orders_ok = true, coupling_ok = true, positive_ok = true;
        std::string wo, wc, wp;
        const auto& root_om = t.vertices[t.root.vertex].omega;
        if (!root_om.is_zero()) {
            conductor = ord_at(root_om, t.root.point) + 1;
            Rat rhs = t.root.different +
                      Rat((long long)(p - 1)) * t.root.thickness * Rat(conductor);
            if (conductor <= 0) {
                positive_ok = false;
                wp = "root edge";
            }
            if (t.vertices[t.root.vertex].different != rhs) {
                coupling_ok = false;
                wc = "root edge";
            }
        }
        for (const auto& e : t.edges) {
            const auto& ws = t.vertices[e.source].omega;
            const auto& wt = t.vertices[e.target].omega;
            if (ws.is_zero() || wt.is_zero()) continue;
            int os = ord_at(ws, e.source_at), ot = ord_at(wt, e.target_at);
            if (os != -ot - 2) {
                orders_ok = false;
                wo = "edge " + std::to_string(e.id) + ": " + std::to_string(os) +
                     " != -" + std::to_string(ot) + "-2";
            }
            long long he = ot + 1;
            if (he <= 0) {
                positive_ok = false;
                wp = "edge " + std::to_string(e.id);
            }
            Rat rhs = t.vertices[e.source].different +
                      Rat((long long)(p - 1)) * e.thickness * Rat(he);
            if (t.vertices[e.target].different != rhs) {
                coupling_ok = false;
                wc = "edge " + std::to_string(e.id);
            }
        }
        check("edge_orders", orders_ok, wo);
        check("different_coupling", coupling_ok, wc);
        check("edge_conductors_positive", positive_ok, wp);
    }
    rep.conductor = conductor;

    // ---------------- derived identities ----------------
    // marked points beyond each edge: h_e = count - 1
    {
        bool ok = true;
        std::string w;
        std::vector<int> marked_on(n, 0);
        for (const auto& mp : t.marked) marked_on[mp.component]++;
        // accumulate beyond-counts by walking from the deepest components up
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] > depth[b]; });
        std::vector<int> beyond(n, 0);
        std::vector<int> parent_edge(n, -1);
        for (size_t i = 0; i < t.edges.size(); ++i) parent_edge[t.edges[i].target] = (int)i;
        for (int v : order) {
            beyond[v] += marked_on[v];
            if (parent_edge[v] >= 0) beyond[t.edges[parent_edge[v]].source] += beyond[v];
        }
        for (const auto& e : t.edges) {
            const auto& wt = t.vertices[e.target].omega;
            if (wt.is_zero()) continue;
            long long he = ord_at(wt, e.target_at) + 1;
            if (he != beyond[e.target] - 1) {
                ok = false;
                w = "edge " + std::to_string(e.id) + ": conductor " + std::to_string(he) +
                    " vs " + std::to_string(beyond[e.target]) + " marked points beyond";
            }
        }
        if (conductor != (long long)t.marked.size() - 1) {
            ok = false;
            w = "root: conductor " + std::to_string(conductor) + " vs " +
                std::to_string(t.marked.size()) + " marked points";
        }
        check("conductor_counts", ok, w);
    }

    // multiplicative <=> leaf <=> carries a marked point
    {
        bool ok = true;
        std::string w;
        std::vector<bool> is_leaf(n, true);
        for (const auto& e : t.edges) is_leaf[e.source] = false;
        std::vector<bool> has_marked(n, false);
        for (const auto& mp : t.marked) has_marked[mp.component] = true;
        for (int v = 0; v < n; ++v) {
            bool mult = t.vertices[v].different == Rat(1);
            if (mult != is_leaf[v] || is_leaf[v] != has_marked[v]) {
                ok = false;
                w = "component " + std::to_string(v);
                break;
            }
        }
        check("leaf_multiplicative", ok, w);
    }

    // stabilizer tangent characters: lambda_e^{-h_e} = chi on the stabilizer,
    // and the two branch characters at a singular point are mutually inverse
    {
        bool tame_ok = true, inv_ok = true;
        std::string wt_, wi;
        // root edge: the stabilizer is all of C
        if (!t.vertices[t.root.vertex].omega.is_zero() &&
            t.action.perm[t.root.vertex] == t.root.vertex &&
            t.action.moebius[t.root.vertex].apply(t.root.point) == t.root.point) {
            FieldElement lam = rep.lambda;
            FieldElement chi_el = F.from_int((i64)t.chi);
            if (conductor > 0 && lam.inverse().pow((u64)conductor) != chi_el) {
                tame_ok = false;
                wt_ = "root edge";
            }
        }
        for (size_t i = 0; i < t.edges.size(); ++i) {
            const auto& e = t.edges[i];
            // orbit length of the edge under the generator
            u64 d = 0;
            {
                int cur = (int)i;
                for (u64 j = 1; j <= t.m; ++j) {
                    cur = edge_image[cur];
                    if (cur < 0) break;
                    if (cur == (int)i) {
                        d = j;
                        break;
                    }
                }
            }
            if (d == 0 || d == t.m) continue;  // trivial stabilizer
            u64 stab = t.m / d;
            (void)stab;
            // composite map of g^d on the two sides
            MoebiusMap on_target = at.maps[d][e.target];
            MoebiusMap on_source = at.maps[d][e.source];
            if (t.action.perm[at.perm[d - 1][e.target]] != e.target) continue;
            FieldElement lt = on_target.tangent_multiplier(e.target_at);
            FieldElement ls = on_source.tangent_multiplier(e.source_at);
            if (!(lt * ls).is_one()) {
                inv_ok = false;
                wi = "edge " + std::to_string(e.id);
            }
            const auto& wt2 = t.vertices[e.target].omega;
            if (!wt2.is_zero()) {
                long long he = ord_at(wt2, e.target_at) + 1;
                u64 chid = 1;
                for (u64 j = 0; j < d; ++j) chid = chid * t.chi % p;
                if (he > 0 && lt.inverse().pow((u64)he) != F.from_int((i64)chid)) {
                    tame_ok = false;
                    wt_ = "edge " + std::to_string(e.id);
                }
            }
        }
        check("tame_character", tame_ok, wt_);
        check("inverse_branch_characters", inv_ok, wi);
    }

    // chi trivial or injective; if injective, m | h+1
    {
        u64 ord = 1, v = t.chi % p;
        while (v != 1) {
            v = v * t.chi % p;
            ++ord;
        }
        bool ok = (ord == 1 || ord == t.m);
        std::string w = "chi has order " + std::to_string(ord) + " with |C| = " +
                        std::to_string(t.m);
        if (ok && ord == t.m && t.m > 1 && conductor >= 0 && (conductor + 1) % (long long)t.m != 0) {
            ok = false;
            w = "m = " + std::to_string(t.m) + " does not divide h+1 = " +
                std::to_string(conductor + 1);
        }
        check("character_injective_or_trivial", ok, w);
    }

    // residue theorem on every component (needs the support check to hold)
    {
        bool ok = true;
        std::string w;
        if (support_ok_all) {
            for (int v = 0; v < n; ++v) {
                const auto& om = t.vertices[v].omega;
                if (om.is_zero()) continue;
                FieldElement acc = F.zero();
                for (auto& [x, m] : roots_in(om.fn().den(), F)) {
                    (void)m;
                    acc += residue_at(om, Point::finite(x));
                }
                acc += residue_at(om, Point::infinity(F));
                if (!acc.is_zero()) {
                    ok = false;
                    w = "component " + std::to_string(v);
                    break;
                }
            }
        }
        check("component_residue_theorem", ok, w);
    }

    // type vector: residues as balanced integers, sorted
    for (const auto& mp : t.marked) {
        i64 r = (i64)mp.residue;
        if (r > (i64)(p - 1) / 2) r -= (i64)p;
        rep.type.push_back(r);
    }
    std::sort(rep.type.begin(), rep.type.end());

    rep.liftable = rep.all_pass() && t.root.different == Rat(0);
    return rep;
}

DecoratedTree subtree_beyond(const DecoratedTree& t, int edge_id) {
    int ei = -1;
    for (size_t i = 0; i < t.edges.size(); ++i)
        if (t.edges[i].id == edge_id) ei = (int)i;
    if (ei < 0) throw PreconditionError("no such edge (the root edge has no id)");
    const TreeEdge& cut = t.edges[ei];

    // components beyond the cut
    std::vector<std::vector<int>> adj(t.n_components);
    for (const auto& e : t.edges) {
        if (e.id == edge_id) continue;
        adj[e.source].push_back(e.target);
        adj[e.target].push_back(e.source);
    }
    std::vector<bool> beyond(t.n_components, false);
    std::queue<int> bfs;
    bfs.push(cut.target);
    beyond[cut.target] = true;
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int w : adj[v])
            if (!beyond[w]) {
                beyond[w] = true;
                bfs.push(w);
            }
    }
    std::vector<int> newid(t.n_components, -1);
    int cnt = 0;
    for (int v = 0; v < t.n_components; ++v)
        if (beyond[v]) newid[v] = cnt++;

    // stabilizer of the cut edge: the least power of the generator mapping
    // it to itself
    ActionTable at = action_powers(t);
    u64 d = t.m;
    for (u64 j = 1; j < t.m; ++j) {
        int ns = at.perm[j][cut.source], nt = at.perm[j][cut.target];
        Point nsa = at.maps[j][cut.source].apply(cut.source_at);
        Point nta = at.maps[j][cut.target].apply(cut.target_at);
        if (ns == cut.source && nt == cut.target && nsa == cut.source_at &&
            nta == cut.target_at) {
            d = j;
            break;
        }
    }
    u64 new_m = t.m / d;
    u64 new_chi = 1;
    for (u64 j = 0; j < d; ++j) new_chi = new_chi * t.chi % t.field.p();
    if (new_m == 1) new_chi = 1;

    DecoratedTree out;
    out.field = t.field;
    out.m = new_m;
    out.chi = new_chi;
    out.n_components = cnt;
    out.vertices.reserve(cnt);
    for (int v = 0; v < t.n_components; ++v)
        if (beyond[v]) out.vertices.push_back(t.vertices[v]);
    int next_edge = 0;
    for (const auto& e : t.edges) {
        if (e.id == edge_id || !beyond[e.source] || !beyond[e.target]) continue;
        out.edges.push_back(
            {next_edge++, newid[e.source], newid[e.target], e.source_at, e.target_at,
             e.thickness});
    }
    out.root.vertex = newid[cut.target];
    out.root.point = cut.target_at;
    out.root.different = t.vertices[cut.source].different;
    out.root.thickness = cut.thickness;
    for (const auto& mp : t.marked)
        if (beyond[mp.component]) out.marked.push_back({newid[mp.component], mp.at, mp.residue});
    out.action.perm.assign(cnt, 0);
    out.action.moebius.assign(cnt, MoebiusMap::identity(t.field));
    const u64 di = d % t.m;  // g^m is the identity
    for (int v = 0; v < t.n_components; ++v) {
        if (!beyond[v]) continue;
        int img = at.perm[di][v];
        if (!beyond[img]) throw Error("stabilizer does not preserve the subtree (bug)");
        out.action.perm[newid[v]] = newid[img];
        out.action.moebius[newid[v]] = at.maps[di][v];
    }
    return out;
}

}  // namespace charp
