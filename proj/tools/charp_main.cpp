#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "charp/constructions.hpp"
#include "charp/json_io.hpp"
#include "charp/local_action.hpp"

using namespace charp;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitSearchCap = 3;

ResidueType parse_type(const std::string& s, u64 p) {
    ResidueType a;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (cur.empty()) throw PreconditionError("empty entry in --type");
            long long v = std::stoll(cur);
            long long r = v % (long long)p;
            if (r < 0) r += (long long)p;
            if (r == 0) throw PreconditionError("type entries must be nonzero mod p");
            a.push_back((u64)r);
            cur.clear();
        } else {
            cur += c;
        }
    }
    return a;
}

json solution_record_json(const SolutionRecord& rec) {
    json z = json::array();
    for (const auto& v : rec.z) z.push_back(element_to_json(v));
    json cls;
    if (rec.cls.good) {
        cls = json{{"kind", "good"}};
    } else {
        json classes = json::array();
        for (const auto& c : rec.cls.classes) classes.push_back(c);
        cls = json{{"kind", "trivial"},
                   {"zero_indices", rec.cls.zero_indices},
                   {"classes", classes},
                   {"signs", rec.cls.signs}};
    }
    return json{{"z", z}, {"chart", rec.chart}, {"classification", cls},
                {"tangent_rank", rec.rank}};
}

json level_json(int k, const std::vector<SolutionRecord>& recs) {
    u64 good = 0, trivial = 0;
    json out = json::array();
    for (const auto& r : recs) {
        (r.cls.good ? good : trivial)++;
        out.push_back(solution_record_json(r));
    }
    return json{{"k", k}, {"good", good}, {"trivial", trivial}, {"records", out}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_construct(u64 p, u64 h, const std::string& delta_mid, const std::string& out_path) {
    if (h % 2 == 0)
        throw PreconditionError(
            "even conductors do not occur for these dihedral actions (Hasse-Arf); "
            "choose an odd h");
    if (h == p || h % p == 0) throw PreconditionError("conductor must be prime to p");
    DecoratedTree tree = (h < p) ? build_small_h_tree(p, h)
                                 : build_large_h_tree(p, h, rat_from_string(delta_mid));
    TreeReport rep = validate(tree);
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw PreconditionError("cannot open output file: " + out_path);
        f << serialize(tree);
        emit(report_to_json(rep));
    } else {
        emit(json{{"tree", tree_to_json(tree)}, {"report", report_to_json(rep)}});
    }
    return rep.liftable ? 0 : kExitCheckFailed;
}

int cmd_validate(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw PreconditionError("cannot open input file: " + path);
    std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    DecoratedTree tree = deserialize(bytes);
    TreeReport rep = validate(tree);
    emit(report_to_json(rep));
    return rep.all_pass() ? 0 : kExitCheckFailed;
}

int cmd_search(u64 p, u64 h, const std::string& type, int max_ext, int jobs) {
    ResidueType a = parse_type(type, p);
    CountPolicy policy;
    policy.max_ext = max_ext;
    policy.jobs = jobs;
    CountReport count = count_good(p, h, a, policy);
    json levels = json::array();
    BruteOptions opt;
    opt.jobs = jobs;
    for (const auto& lv : count.levels)
        levels.push_back(level_json(lv.k, solve_brute(p, h, a, lv.k, opt)));
    emit(json{{"levels", levels},
              {"summary",
               {{"good", count.good},
                {"stabilized", count.stabilized},
                {"stabilized_at", count.stabilized_at},
                {"bezout_bound", count.bezout}}}});
    return 0;
}

int cmd_count(u64 p, u64 h, const std::string& type, int max_ext, int jobs) {
    ResidueType a = parse_type(type, p);
    CountPolicy policy;
    policy.max_ext = max_ext;
    policy.jobs = jobs;
    CountReport rep = count_good(p, h, a, policy);
    json levels = json::array();
    for (const auto& lv : rep.levels)
        levels.push_back(json{{"k", lv.k},
                              {"points", lv.points},
                              {"good", lv.good},
                              {"trivial", lv.trivial},
                              {"new_good", lv.new_good}});
    emit(json{{"good", rep.good},
              {"stabilized", rep.stabilized},
              {"stabilized_at", rep.stabilized_at},
              {"bezout_bound", rep.bezout},
              {"levels", levels}});
    return rep.stabilized ? 0 : kExitSearchCap;
}

int cmd_feasible(u64 p, const std::string& type, int max_ext) {
    ResidueType a = parse_type(type, p);
    auto w = residue_feasible(p, a, max_ext);
    json out;
    out["max_ext"] = max_ext;
    if (w) {
        json poles = json::array();
        for (const auto& P : w->poles) poles.push_back(point_to_json(P));
        out["witness"] = json{{"field", field_to_json(w->field)},
                              {"poles", poles},
                              {"omega", ratfun_to_json(w->omega.fn())}};
    } else {
        out["witness"] = nullptr;
    }
    // the hard-coded contradiction for the one certified-negative type
    ResidueType neg{1, 1, p - 1, p - 1};
    if (a == neg) out["symbolic_contradiction"] = symbolic_contradiction_1144(p);
    emit(out);
    return 0;
}

int cmd_local_action(u64 p, u64 h, int prec) {
    DihedralReport rep = verify_dihedral(p, h, prec);
    json rels = json::array();
    for (const auto& r : rep.relations)
        rels.push_back(json{{"name", r.name}, {"pass", r.pass}, {"witness", r.witness}});
    emit(json{{"p", p},
              {"h", h},
              {"precision", rep.precision},
              {"conductor", rep.conductor},
              {"relations", rels},
              {"all_pass", rep.all_pass()}});
    return rep.all_pass() ? 0 : kExitCheckFailed;
}

int cmd_classify_form(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw PreconditionError("cannot open input file: " + path);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    Field F = field_from_json(require_key(j, "field", ""), "/field");
    RationalFunction fn = ratfun_from_json(j, F, "");
    DifferentialForm w(fn);
    if (w.is_zero()) throw PreconditionError("cannot classify the zero form");
    FormClass cls = classify(w);
    std::string name = cls == FormClass::Exact        ? "exact"
                       : cls == FormClass::Logarithmic ? "logarithmic"
                                                        : "neither";
    emit(json{{"class", name}, {"cartier", ratfun_to_json(cartier(w).fn())}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hurwitz-tree lifting certificates over small finite fields"};
    app.require_subcommand(1);
    // --h is a domain flag (the conductor); keep help on --help only
    app.set_help_flag("--help", "print help");

    u64 p = 0, h = 0;
    std::string type, out_path, delta_mid = "1/2", path;
    int max_ext = 4, jobs = 1, prec = 0;

    app.option_defaults()->ignore_case(false);

    auto* construct = app.add_subcommand("construct", "build and validate a certificate tree");
    construct->set_help_flag("--help", "print help");
    construct->add_option("--p", p, "odd prime")->required();
    construct->add_option("--h", h, "conductor (odd, prime to p)")->required();
    construct->add_option("--delta-mid", delta_mid,
                          "different of the middle vertex for h > p, a rational in (0,1)");
    construct->add_option("--out", out_path, "write the tree JSON here");

    auto* validate_cmd = app.add_subcommand("validate", "validate a certificate tree file");
    validate_cmd->set_help_flag("--help", "print help");
    validate_cmd->add_option("file", path, "tree JSON file")->required();

    auto* search = app.add_subcommand("search", "scan for solutions of the power-sum system");
    search->set_help_flag("--help", "print help");
    search->add_option("--p", p, "odd prime")->required();
    search->add_option("--h", h, "conductor (odd)")->required();
    search->add_option("--type", type, "residue type a_1,...,a_alpha")->required();
    search->add_option("--max-ext", max_ext, "largest extension degree scanned");
    search->add_option("--jobs", jobs, "worker threads");

    auto* count = app.add_subcommand("count", "count good solutions with stabilization");
    count->set_help_flag("--help", "print help");
    count->add_option("--p", p, "odd prime")->required();
    count->add_option("--h", h, "conductor (odd)")->required();
    count->add_option("--type", type, "residue type a_1,...,a_alpha")->required();
    count->add_option("--max-ext", max_ext, "largest extension degree scanned");
    count->add_option("--jobs", jobs, "worker threads");

    auto* feasible = app.add_subcommand(
        "feasible", "search for a single-zero logarithmic form with the given residues");
    feasible->set_help_flag("--help", "print help");
    feasible->add_option("--p", p, "odd prime")->required();
    feasible->add_option("--type", type, "residues a_1,...,a_n (must sum to 0 mod p)")
        ->required();
    feasible->add_option("--max-ext", max_ext, "largest extension degree scanned");

    auto* local = app.add_subcommand("local-action", "verify the dihedral normal-form relations");
    local->set_help_flag("--help", "print help");
    local->add_option("--p", p, "odd prime")->required();
    local->add_option("--h", h, "conductor")->required();
    local->add_option("--prec", prec, "series precision N (default 2ph+1)");

    auto* classify_cmd =
        app.add_subcommand("classify-form", "classify a differential form via Cartier");
    classify_cmd->set_help_flag("--help", "print help");
    classify_cmd->add_option("file", path, "form JSON file {field, num, den}")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*construct) return cmd_construct(p, h, delta_mid, out_path);
        if (*validate_cmd) return cmd_validate(path);
        if (*search) return cmd_search(p, h, type, max_ext, jobs);
        if (*count) return cmd_count(p, h, type, max_ext, jobs);
        if (*feasible) return cmd_feasible(p, type, max_ext);
        if (*local) return cmd_local_action(p, h, prec > 0 ? prec : (int)(2 * p * h + 1));
        if (*classify_cmd) return cmd_classify_form(path);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const SearchCapError& e) {
        std::cerr << "search cap: " << e.what() << "\n";
        return kExitSearchCap;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const EliminationError& e) {
        std::cerr << "elimination failed: " << e.what() << "\n" << e.state_dump;
        return kExitCheckFailed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitPrecondition;
}
