#pragma once

#include <json.hpp>
#include <string>

#include "charp/differentials.hpp"
#include "charp/rationals.hpp"

namespace charp {

// One marked point z_b with its prescribed residue a_b in F_p^x.
struct MarkedPoint {
    int component = 0;
    Point at;
    u64 residue = 0;  // 1..p-1
};

// A singular point of the curve: the edge joining two components, with the
// attachment coordinates on either side and its thickness.
struct TreeEdge {
    int id = 0;
    int source = 0;  // component id on the root side
    int target = 0;  // component id away from the root
    Point source_at;
    Point target_at;
    Rat thickness;
};

// Per-component data: the differential form and the different.
struct VertexData {
    DifferentialForm omega;
    Rat different;
};

// The generator of the cyclic group C acting on the curve: a permutation of
// the components and a Moebius map per component (component c maps onto
// perm[c] via moebius[c]).
struct TreeAction {
    std::vector<int> perm;
    std::vector<MoebiusMap> moebius;
};

// The certificate object: a decorated genus-0 curve with differential data.
struct DecoratedTree {
    Field field;
    u64 m = 1;    // |C|
    u64 chi = 1;  // chi(generator) in F_p^x
    int n_components = 0;
    std::vector<VertexData> vertices;  // indexed by component
    std::vector<TreeEdge> edges;       // non-root edges
    struct Root {
        int vertex = 0;   // component carrying the distinguished point
        Point point;      // z_0
        Rat different;    // delta at the root
        Rat thickness;    // thickness of the root edge
    } root;
    std::vector<MarkedPoint> marked;
    TreeAction action;
};

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string witness;  // what failed, when pass = false
};

struct TreeReport {
    bool structural_ok = false;
    std::string structural_error;
    long long conductor = 0;
    Rat different;
    FieldElement lambda;
    std::vector<i64> type;  // residues as balanced integers, sorted
    std::vector<CheckResult> checks;
    bool liftable = false;
    bool all_pass() const;
    const CheckResult* find(const std::string& name) const;
};

// Evaluates every tree axiom and the derived identities; failures land in
// the report, structural malformation short-circuits into structural_error.
TreeReport validate(const DecoratedTree& tree);

// The sub-certificate beyond a non-root edge: rooted at that edge, with the
// stabilizer of the edge as its group and root different delta_{s(e)}.
DecoratedTree subtree_beyond(const DecoratedTree& tree, int edge_id);

// Canonical JSON (sorted keys, ordered components/points); byte-identical
// output for equal trees.
nlohmann::json tree_to_json(const DecoratedTree& tree);
DecoratedTree tree_from_json(const nlohmann::json& j);  // throws SchemaError
std::string serialize(const DecoratedTree& tree);
DecoratedTree deserialize(const std::string& bytes);

nlohmann::json report_to_json(const TreeReport& r);

bool tree_equal(const DecoratedTree& a, const DecoratedTree& b);

}  // namespace charp
