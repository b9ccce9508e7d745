#include <algorithm>

#include "charp/hurwitz_tree.hpp"
#include "charp/json_io.hpp"

namespace charp {

json tree_to_json(const DecoratedTree& t) {
    json j;
    j["field"] = field_to_json(t.field);
    j["m"] = t.m;
    j["chi"] = t.chi;
    j["components"] = t.n_components;

    json verts = json::array();
    for (const auto& v : t.vertices)
        verts.push_back(json{{"omega", ratfun_to_json(v.omega.fn())},
                             {"different", rat_to_json(v.different)}});
    j["vertices"] = verts;

    std::vector<TreeEdge> edges = t.edges;
    std::sort(edges.begin(), edges.end(),
              [](const TreeEdge& a, const TreeEdge& b) { return a.id < b.id; });
    json je = json::array();
    for (const auto& e : edges)
        je.push_back(json{{"id", e.id},
                          {"source", e.source},
                          {"target", e.target},
                          {"source_at", point_to_json(e.source_at)},
                          {"target_at", point_to_json(e.target_at)},
                          {"thickness", rat_to_json(e.thickness)}});
    j["edges"] = je;

    j["root"] = json{{"vertex", t.root.vertex},
                     {"edge", json{{"thickness", rat_to_json(t.root.thickness)}}},
                     {"point", point_to_json(t.root.point)},
                     {"different", rat_to_json(t.root.different)}};

    std::vector<MarkedPoint> marked = t.marked;
    std::sort(marked.begin(), marked.end(), [](const MarkedPoint& a, const MarkedPoint& b) {
        if (a.component != b.component) return a.component < b.component;
        if (a.at != b.at) return a.at < b.at;
        return a.residue < b.residue;
    });
    json jm = json::array();
    for (const auto& mp : marked)
        jm.push_back(json{{"component", mp.component},
                          {"point", point_to_json(mp.at)},
                          {"residue", mp.residue}});
    j["marked_points"] = jm;

    json perm = json::array(), maps = json::array();
    for (int v : t.action.perm) perm.push_back(v);
    for (const auto& m : t.action.moebius)
        maps.push_back(json{{"a", element_to_json(m.a)},
                            {"b", element_to_json(m.b)},
                            {"c", element_to_json(m.c)},
                            {"d", element_to_json(m.d)}});
    j["action"] = json{{"perm", perm}, {"moebius", maps}};
    return j;
}

DecoratedTree tree_from_json(const json& j) {
    DecoratedTree t;
    t.field = field_from_json(require_key(j, "field", ""), "/field");
    Field F = t.field;
    t.m = require_uint(require_key(j, "m", ""), "/m");
    t.chi = require_uint(require_key(j, "chi", ""), "/chi");
    t.n_components = (int)require_uint(require_key(j, "components", ""), "/components");

    const json& verts = require_key(j, "vertices", "");
    if (!verts.is_array()) throw SchemaError("/vertices", "expected an array");
    for (size_t i = 0; i < verts.size(); ++i) {
        std::string where = "/vertices/" + std::to_string(i);
        const json& v = verts[i];
        t.vertices.push_back(
            {DifferentialForm(ratfun_from_json(require_key(v, "omega", where), F,
                                               where + "/omega")),
             rat_from_json(require_key(v, "different", where), where + "/different")});
    }

    const json& edges = require_key(j, "edges", "");
    if (!edges.is_array()) throw SchemaError("/edges", "expected an array");
    for (size_t i = 0; i < edges.size(); ++i) {
        std::string where = "/edges/" + std::to_string(i);
        const json& e = edges[i];
        TreeEdge te;
        te.id = (int)require_uint(require_key(e, "id", where), where + "/id");
        te.source = (int)require_uint(require_key(e, "source", where), where + "/source");
        te.target = (int)require_uint(require_key(e, "target", where), where + "/target");
        te.source_at = point_from_json(require_key(e, "source_at", where), F, where + "/source_at");
        te.target_at = point_from_json(require_key(e, "target_at", where), F, where + "/target_at");
        te.thickness = rat_from_json(require_key(e, "thickness", where), where + "/thickness");
        t.edges.push_back(std::move(te));
    }

    const json& root = require_key(j, "root", "");
    t.root.vertex = (int)require_uint(require_key(root, "vertex", "/root"), "/root/vertex");
    t.root.point = point_from_json(require_key(root, "point", "/root"), F, "/root/point");
    t.root.different = rat_from_json(require_key(root, "different", "/root"), "/root/different");
    const json& redge = require_key(root, "edge", "/root");
    t.root.thickness =
        rat_from_json(require_key(redge, "thickness", "/root/edge"), "/root/edge/thickness");

    const json& marked = require_key(j, "marked_points", "");
    if (!marked.is_array()) throw SchemaError("/marked_points", "expected an array");
    for (size_t i = 0; i < marked.size(); ++i) {
        std::string where = "/marked_points/" + std::to_string(i);
        const json& m = marked[i];
        MarkedPoint mp;
        mp.component = (int)require_uint(require_key(m, "component", where), where + "/component");
        mp.at = point_from_json(require_key(m, "point", where), F, where + "/point");
        mp.residue = require_uint(require_key(m, "residue", where), where + "/residue");
        t.marked.push_back(std::move(mp));
    }

    const json& action = require_key(j, "action", "");
    const json& perm = require_key(action, "perm", "/action");
    if (!perm.is_array()) throw SchemaError("/action/perm", "expected an array");
    for (size_t i = 0; i < perm.size(); ++i)
        t.action.perm.push_back(
            (int)require_uint(perm[i], "/action/perm/" + std::to_string(i)));
    const json& maps = require_key(action, "moebius", "/action");
    if (!maps.is_array()) throw SchemaError("/action/moebius", "expected an array");
    for (size_t i = 0; i < maps.size(); ++i) {
        std::string where = "/action/moebius/" + std::to_string(i);
        const json& m = maps[i];
        t.action.moebius.push_back(
            {element_from_json(require_key(m, "a", where), F, where + "/a"),
             element_from_json(require_key(m, "b", where), F, where + "/b"),
             element_from_json(require_key(m, "c", where), F, where + "/c"),
             element_from_json(require_key(m, "d", where), F, where + "/d")});
    }
    return t;
}

std::string serialize(const DecoratedTree& t) { return tree_to_json(t).dump(2) + "\n"; }

DecoratedTree deserialize(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    return tree_from_json(j);
}

bool tree_equal(const DecoratedTree& a, const DecoratedTree& b) {
    return serialize(a) == serialize(b);
}

json report_to_json(const TreeReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    json j{{"structural_ok", r.structural_ok},
           {"conductor", r.conductor},
           {"different", rat_to_json(r.different)},
           {"lambda", element_to_json(r.lambda)},
           {"type", r.type},
           {"checks", checks},
           {"liftable", r.liftable}};
    if (!r.structural_ok) j["structural_error"] = r.structural_error;
    return j;
}

}  // namespace charp
