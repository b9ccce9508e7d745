#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "charp/constructions.hpp"
#include "charp/json_io.hpp"

using namespace charp;

namespace {

// Single-component fixture with an even conductor: h = 2, |B| = 3. Violates
// the order-two symmetry in several ways; the validator must say so.
DecoratedTree even_h_fixture() {
    Field F = Field::make(7, 1);
    DecoratedTree t;
    t.field = F;
    t.m = 2;
    t.chi = 6;
    t.n_components = 1;
    DifferentialForm omega(RationalFunction(Polynomial::from_ints(F, {2}),
                                            Polynomial::from_ints(F, {0, -1, 0, 1})));
    t.vertices.push_back({omega, Rat(1)});
    t.root.vertex = 0;
    t.root.point = Point::infinity(F);
    t.root.different = Rat(0);
    t.root.thickness = Rat(1, 12);
    t.marked.push_back({0, Point::finite(F.zero()), 5});
    t.marked.push_back({0, Point::finite(F.one()), 1});
    t.marked.push_back({0, Point::finite(-F.one()), 1});
    t.action = {{0}, {MoebiusMap::negation(F)}};
    return t;
}

DecoratedTree relabeled(const DecoratedTree& t, const std::vector<int>& newid) {
    DecoratedTree out = t;
    out.vertices.assign(t.n_components, t.vertices[0]);
    out.action.perm.assign(t.n_components, 0);
    out.action.moebius.assign(t.n_components, MoebiusMap::identity(t.field));
    for (int v = 0; v < t.n_components; ++v) {
        out.vertices[newid[v]] = t.vertices[v];
        out.action.perm[newid[v]] = newid[t.action.perm[v]];
        out.action.moebius[newid[v]] = t.action.moebius[v];
    }
    for (auto& e : out.edges) {
        e.source = newid[e.source];
        e.target = newid[e.target];
    }
    out.root.vertex = newid[t.root.vertex];
    for (auto& mp : out.marked) mp.component = newid[mp.component];
    return out;
}

}  // namespace

TEST_CASE("even conductor fails the order-two constraints") {
    TreeReport rep = validate(even_h_fixture());
    CHECK(rep.structural_ok);
    CHECK(rep.conductor == 2);
    REQUIRE(rep.find("character_injective_or_trivial") != nullptr);
    CHECK(!rep.find("character_injective_or_trivial")->pass);  // 2 does not divide h+1 = 3
    CHECK(!rep.find("tame_character")->pass);                  // (-1)^{-2} = 1 != chi
    CHECK(!rep.find("chi_equivariance")->pass);
    CHECK(!rep.liftable);
}

TEST_CASE("perturbations are caught with witnesses") {
    DecoratedTree good = build_small_h_tree(7, 5);
    REQUIRE(validate(good).all_pass());

    SUBCASE("doubled root thickness breaks the different coupling") {
        DecoratedTree bad = good;
        bad.root.thickness = bad.root.thickness * 2;
        TreeReport rep = validate(bad);
        REQUIRE(rep.find("different_coupling") != nullptr);
        CHECK(!rep.find("different_coupling")->pass);
        CHECK(rep.find("different_coupling")->witness == "root edge");
        CHECK(!rep.liftable);
    }
    SUBCASE("wrong residue breaks condition (v) and equivariance") {
        DecoratedTree bad = good;
        bad.marked[0].residue = bad.marked[0].residue % (bad.field.p() - 1) + 1;
        TreeReport rep = validate(bad);
        bool v_fail = !rep.find("simple_poles_at_marked")->pass ||
                      !rep.find("residue_equivariance")->pass;
        CHECK(v_fail);
    }
    SUBCASE("nonzero root different kills liftability but no check") {
        DecoratedTree bad = good;
        bad.root.different = Rat(1, 2);
        bad.root.thickness = Rat(1, 2) / Rat(6 * 5);  // keep the coupling exact
        TreeReport rep = validate(bad);
        CHECK(rep.all_pass());
        CHECK(!rep.liftable);
    }
    SUBCASE("broken tree graph is a structural error") {
        DecoratedTree bad = good;
        bad.n_components = 2;
        bad.vertices.push_back(bad.vertices[0]);  // second component, no edge
        bad.action.perm = {0, 1};
        bad.action.moebius.push_back(MoebiusMap::negation(bad.field));
        TreeReport rep = validate(bad);
        CHECK(!rep.structural_ok);
    }
}

TEST_CASE("validation is invariant under relabeling") {
    DecoratedTree t = build_large_h_tree(7, 9);
    REQUIRE(validate(t).liftable);
    std::vector<int> perm(t.n_components);
    for (int i = 0; i < t.n_components; ++i) perm[i] = (i + 1) % t.n_components;
    DecoratedTree r = relabeled(t, perm);
    TreeReport rep = validate(r);
    for (const auto& c : rep.checks) {
        INFO(c.name, ": ", c.witness);
        CHECK(c.pass);
    }
    CHECK(rep.conductor == 9);
    CHECK(rep.liftable);
}

TEST_CASE("subtrees beyond leaf edges") {
    DecoratedTree t = build_large_h_tree(7, 23);
    REQUIRE(validate(t).liftable);
    for (const auto& e : t.edges) {
        DecoratedTree sub = subtree_beyond(t, e.id);
        TreeReport rep = validate(sub);
        for (const auto& c : rep.checks) {
            INFO("edge ", e.id, " ", c.name, ": ", c.witness);
            CHECK(c.pass);
        }
        // conductor of the subtree = conductor of the edge; marked count h_e+1
        long long he = ord_at(t.vertices[e.target].omega, e.target_at) + 1;
        CHECK(rep.conductor == he);
        CHECK((long long)sub.marked.size() == he + 1);
        CHECK(!rep.liftable);  // root different is delta_mid > 0
        CHECK(sub.m == 1);     // the involution swaps the paired leaves
    }
    // the (7,23) plan has alpha = 5: the leaves at +-1 have conductor 4
    auto pl = plan_large_h(7, 23);
    CHECK(pl.alpha == 5);
    bool saw4 = false;
    for (const auto& e : t.edges)
        if (ord_at(t.vertices[e.target].omega, e.target_at) + 1 == 4) saw4 = true;
    CHECK(saw4);
    CHECK_THROWS_AS(subtree_beyond(t, 99), PreconditionError);
}

TEST_CASE("serialization round-trip and canonical bytes") {
    for (auto [p, h] : {std::pair<u64, u64>{5, 3}, {7, 5}}) {
        DecoratedTree t = build_small_h_tree(p, h);
        std::string bytes = serialize(t);
        DecoratedTree back = deserialize(bytes);
        CHECK(tree_equal(t, back));
        CHECK(serialize(back) == bytes);
        // canonical: building twice gives byte-identical output
        CHECK(serialize(build_small_h_tree(p, h)) == bytes);
        // marked-point order is canonicalized away
        DecoratedTree shuffled = t;
        std::rotate(shuffled.marked.begin(), shuffled.marked.begin() + 1, shuffled.marked.end());
        CHECK(serialize(shuffled) == bytes);
        // and the report of the round-tripped tree is unchanged
        CHECK(report_to_json(validate(back)) == report_to_json(validate(t)));
    }
    DecoratedTree big = build_large_h_tree(5, 13);
    CHECK(tree_equal(big, deserialize(serialize(big))));
}

TEST_CASE("schema errors carry locations") {
    DecoratedTree t = build_large_h_tree(5, 9);
    json j = tree_to_json(t);
    json bad = j;
    bad["edges"][0].erase("thickness");
    try {
        tree_from_json(bad);
        FAIL("expected a schema error");
    } catch (const SchemaError& e) {
        CHECK(e.location == "/edges/0");
        CHECK(std::string(e.what()).find("thickness") != std::string::npos);
    }
    json bad2 = j;
    bad2["field"]["modulus"] = json::array({1, 1, 1});
    CHECK_THROWS_AS(tree_from_json(bad2), SchemaError);
    json bad3 = j;
    bad3["vertices"][0]["omega"]["den"] = json::array();
    CHECK_THROWS_AS(tree_from_json(bad3), SchemaError);
    CHECK_THROWS_AS(deserialize("not json at all"), SchemaError);
}
