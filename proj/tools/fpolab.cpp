// fpolab: framed partial orders, their embedding preorder, and the
// associated diagram, spacetime, and quantum checks.

#include <cstdlib>
#include <filesystem>
#include <set>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fpolab/dot.hpp"
#include "fpolab/fpolab.hpp"

namespace {

using namespace fpolab;

long long env_budget() {
    if (const char* s = std::getenv("FPOLAB_BUDGET")) {
        try {
            long long v = std::stoll(s);
            if (v > 0) return v;
        } catch (...) {
        }
    }
    return kDefaultBudget;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        save_json(out_path, j);
}

quantum::Mat load_gate(const std::string& gate) {
    if (gate.size() > 5 && gate.substr(gate.size() - 5) == ".json") {
        auto u = gate_from_json(load_json(gate));
        quantum::require_two_qubit_unitary(u);
        return u;
    }
    return quantum::named_gate(gate);
}

struct GlobalOpts {
    long long budget = env_budget();
    unsigned threads = 1;
    unsigned long long seed = 0;
    bool dry_run = false;
};

int cmd_g(const std::string& diagram_path, const std::string& out,
          const GlobalOpts& g) {
    Diagram d = diagram_from_json(load_json(diagram_path));
    require_valid(d);
    if (g.dry_run) return 0;
    auto r = diagram_to_fpo_traced(d);
    json j = fpo_to_json(r.fpo);
    json home = json::object();
    for (const auto& [box, h] : r.box_home) home[box] = h;
    j["box_home"] = home;
    emit(j, out);
    return 0;
}

int cmd_embeds(const std::string& lhs_path, const std::string& rhs_path,
               const std::string& witness, const GlobalOpts& g) {
    Fpo lhs = fpo_from_json(load_json(lhs_path));
    Fpo rhs = fpo_from_json(load_json(rhs_path));
    require_valid(lhs);
    require_valid(rhs);
    if (g.dry_run) return 0;
    auto m = find_fop_map(lhs, rhs, g.budget);
    if (!m) {
        std::cout << "no embedding\n";
        return 1;
    }
    std::cout << "embeds (" << to_string(classify_map(lhs, rhs, *m)) << ")\n";
    if (!witness.empty()) save_json(witness, fopmap_to_json(lhs, rhs, *m));
    return 0;
}

int cmd_classify(const std::string& map_path, const GlobalOpts& g) {
    FopMapFile m = fopmap_from_json(load_json(map_path));
    require_valid(m.source);
    require_valid(m.target);
    if (g.dry_run) return 0;
    MapClass c = classify_map(m.source, m.target, m.assignment);
    std::cout << to_string(c) << "\n";
    return c == MapClass::NotFop ? 1 : 0;
}

int cmd_minrep(const std::string& in, const std::string& out,
               const std::string& strategy, const GlobalOpts& g) {
    Fpo f = fpo_from_json(load_json(in));
    require_valid(f);
    MinimalityStrategy strat = strategy == "idempotent"
                                   ? MinimalityStrategy::IdempotentOnly
                                   : MinimalityStrategy::General;
    if (g.dry_run) return 0;
    Fpo r = minimal_representative(f, strat, g.budget);
    std::cout << canon_key(r) << "\n";
    emit(fpo_to_json(r), out);
    return 0;
}

int cmd_enumerate(int m, int n, int max_order, const std::string& filter_name,
                  const std::string& out, const std::string& cache_dir,
                  const GlobalOpts& g) {
    FpoClass cls{m, n};
    CatalogFilter filter = catalog_filter_from_string(filter_name);
    if (g.dry_run) return 0;
    std::optional<Catalog> cat;
    std::string cache_file;
    if (!cache_dir.empty()) {
        std::filesystem::create_directories(cache_dir);
        cache_file = cache_dir + "/catalog_m" + std::to_string(m) + "n" +
                     std::to_string(n) + "k" + std::to_string(max_order) +
                     "_" + to_string(filter) + ".json";
        if (std::filesystem::exists(cache_file)) {
            try {
                cat = catalog_from_json(load_json(cache_file), cls, max_order,
                                        filter);
            } catch (const std::exception&) {
                cat.reset();  // unreadable caches are rebuilt
            }
        }
    }
    if (!cat) {
        cat = enumerate_minimal_representatives(cls, max_order, filter,
                                                g.threads);
        if (!cache_file.empty()) save_json(cache_file, catalog_to_json(*cat));
    }
    std::set<std::string> orbits;
    for (const auto& e : cat->entries) orbits.insert(e.orbit_rep);
    std::cout << cat->entries.size() << " minimal representatives, "
              << orbits.size() << " orbits\n";
    if (!out.empty()) save_json(out, catalog_to_json(*cat));
    return 0;
}

int cmd_named(const std::string& name, std::optional<int> m,
              std::optional<int> n, const std::string& out, bool as_dot,
              const GlobalOpts& g) {
    std::vector<int> params;
    if (m) params.push_back(*m);
    if (n) params.push_back(*n);
    Fpo f = catalog_named(name, params);
    if (g.dry_run) return 0;
    if (as_dot) {
        if (out.empty())
            std::cout << to_dot(f, name);
        else {
            std::ofstream fs(out);
            fs << to_dot(f, name);
        }
        return 0;
    }
    emit(fpo_to_json(f), out);
    return 0;
}

int cmd_embed_spacetime(const std::string& fpo_path, const std::string& site_spec,
                        const std::string& loc_path, const std::string& witness,
                        bool strict_timelike, const GlobalOpts& g) {
    Fpo f = fpo_from_json(load_json(fpo_path));
    require_valid(f);
    CausalSite site = parse_site_spec(site_spec, strict_timelike);
    Localisation loc = localisation_from_json(load_json(loc_path), site);
    if (g.dry_run) return 0;
    auto emb = c_local_embed(f, site, loc, g.budget);
    if (!emb) {
        std::cout << "no embedding\n";
        return 1;
    }
    std::cout << "embeds\n";
    if (!witness.empty())
        save_json(witness, embedding_to_json(f, site_spec, loc, *emb));
    return 0;
}

int cmd_exogenise(const std::string& in, const std::string& out,
                  const GlobalOpts& g) {
    Fpo f = fpo_from_json(load_json(in));
    require_valid(f);
    if (g.dry_run) return 0;
    Fpo e = exogenise(f, g.budget);
    std::cout << canon_key(e) << "\n";
    emit(fpo_to_json(e), out);
    return 0;
}

int cmd_quantum_evcond(const std::string& gate, const std::string& basis,
                       const std::string& report, const GlobalOpts& g) {
    quantum::Mat u = load_gate(gate);
    if (basis != "zero-plus")
        throw Error("unknown basis: " + basis);
    if (g.dry_run) return 0;
    auto res = quantum::evcond_check(u, quantum::default_evcond_basis());
    if (res.holds) {
        std::cout << "holds (worst deviation " << res.worst_dev << ")\n";
    } else {
        std::cout << "violated: worst deviation " << res.worst_dev
                  << " at witness (" << res.witness[0] << ", " << res.witness[1]
                  << ", " << res.witness[2] << ", " << res.witness[3] << ")\n";
    }
    if (!report.empty()) {
        json j;
        j["holds"] = res.holds;
        j["worst_dev"] = res.worst_dev;
        if (res.has_witness)
            j["witness"] = {res.witness[0], res.witness[1], res.witness[2],
                            res.witness[3]};
        save_json(report, j);
    }
    return res.holds ? 0 : 1;
}

int cmd_quantum_clifford(const std::string& gate, const std::string& report,
                         const GlobalOpts& g) {
    quantum::Mat u = load_gate(gate);
    if (g.dry_run) return 0;
    auto res = quantum::is_clifford_22(u);
    if (res.clifford) {
        for (const auto& [gen, img] : res.tableau)
            std::cout << gen << " -> " << img << "\n";
    } else {
        std::cout << "not Clifford (conjugated " << res.witness
                  << " is not a signed Pauli)\n";
    }
    if (!report.empty()) {
        json j;
        j["clifford"] = res.clifford;
        if (res.clifford)
            j["tableau"] = res.tableau;
        else
            j["witness"] = res.witness;
        save_json(report, j);
    }
    return res.clifford ? 0 : 1;
}

int cmd_quantum_zigzag1(const std::string& gate, const std::string& report,
                        const GlobalOpts& g) {
    quantum::Mat u = load_gate(gate);
    if (g.dry_run) return 0;
    auto cliff = quantum::is_clifford_22(u);
    if (!cliff.clifford)
        throw NotCliffordError("zigzag teleportation needs a Clifford gate");
    double dist = quantum::zigzag1_choi_distance(u);
    std::cout << "choi distance " << dist << "\n";
    if (!report.empty()) {
        json j;
        j["choi_distance"] = dist;
        j["tableau"] = cliff.tableau;
        save_json(report, j);
    }
    return dist < 1e-9 ? 0 : 1;
}

int cmd_dot(const std::string& in, const std::string& out,
            const GlobalOpts& g) {
    Fpo f = fpo_from_json(load_json(in));
    require_valid(f);
    if (g.dry_run) return 0;
    if (out.empty()) {
        std::cout << to_dot(f);
    } else {
        std::ofstream fs(out);
        if (!fs) throw Error("cannot write " + out);
        fs << to_dot(f);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"framed partial orders: embedding, enumeration, conversion"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--budget", g.budget,
                   "search node budget (env FPOLAB_BUDGET)")
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", g.threads, "worker pool size")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "seed for randomized runs");
    app.add_flag("--dry-run", g.dry_run, "validate inputs, skip the search");

    std::string diagram_path, out, lhs, rhs, witness, map_path, in_path;
    std::string strategy = "general", filter_name = "all", cache_dir;
    std::string name, site_spec, loc_path, gate = "cnot",
                basis = "zero-plus", report;
    int m = 0, n = 0, max_order = 0;
    std::optional<int> named_m, named_n;
    bool as_dot = false, strict_timelike = false;

    auto* cg = app.add_subcommand("g", "conversion image of a diagram");
    cg->add_option("--diagram", diagram_path, "diagram JSON")->required();
    cg->add_option("--out", out, "output FPO JSON path");

    auto* ce = app.add_subcommand("embeds", "does lhs embed into rhs?");
    ce->add_option("--lhs", lhs, "FPO JSON")->required();
    ce->add_option("--rhs", rhs, "FPO JSON")->required();
    ce->add_option("--witness", witness, "write the map found here");

    auto* cc = app.add_subcommand("classify", "classify a stored map");
    cc->add_option("--map", map_path, "map JSON")->required();

    auto* cm = app.add_subcommand("minrep", "minimal representative");
    cm->add_option("--in", in_path, "FPO JSON")->required();
    cm->add_option("--out", out, "output FPO JSON path");
    cm->add_option("--strategy", strategy, "general|idempotent")
        ->check(CLI::IsMember({"general", "idempotent"}));

    auto* cn = app.add_subcommand("enumerate", "catalog of minimal types");
    cn->add_option("--inputs", m, "frame inputs")->required();
    cn->add_option("--outputs", n, "frame outputs")->required();
    cn->add_option("--max-order", max_order, "largest order enumerated")
        ->required();
    cn->add_option("--filter", filter_name, "all|causal|markov|det")
        ->check(CLI::IsMember({"all", "causal", "markov", "det"}));
    cn->add_option("--out", out, "catalog JSON path");
    cn->add_option("--cache", cache_dir, "catalog cache directory");

    auto* cnm = app.add_subcommand("named", "catalog family member");
    cnm->add_option("--name", name, "family name")->required();
    cnm->add_option("--m", named_m, "first parameter");
    cnm->add_option("--n", named_n, "second parameter (or only one)");
    cnm->add_option("--out", out, "output path");
    cnm->add_flag("--dot", as_dot, "emit DOT instead of JSON");

    auto* cs = app.add_subcommand("embed-spacetime",
                                  "embed an FPO into a causal site");
    cs->add_option("--fpo", in_path, "FPO JSON")->required();
    cs->add_option("--site", site_spec, "site spec, e.g. mink:d=1,t=-4..4,x=-4..4")
        ->required();
    cs->add_option("--loc", loc_path, "localisation JSON")->required();
    cs->add_option("--witness", witness, "write the embedding here");
    cs->add_flag("--strict-timelike", strict_timelike,
                 "exclude lightlike relations");

    auto* cx = app.add_subcommand("exogenise", "exogenised minimal form");
    cx->add_option("--in", in_path, "FPO JSON")->required();
    cx->add_option("--out", out, "output FPO JSON path");

    auto* cq = app.add_subcommand("quantum", "two-qubit gate checks");
    cq->require_subcommand(1);
    auto* cqe = cq->add_subcommand("evcond", "eigenvalue factorization check");
    cqe->add_option("--gate", gate, "identity|cnot|swap|cz|t|file.json");
    cqe->add_option("--basis", basis, "probe basis");
    cqe->add_option("--report", report, "report JSON path");
    auto* cqc = cq->add_subcommand("clifford", "Clifford tableau");
    cqc->add_option("--gate", gate, "identity|cnot|swap|cz|t|file.json");
    cqc->add_option("--report", report, "report JSON path");
    auto* cqz = cq->add_subcommand("zigzag1", "teleportation Choi distance");
    cqz->add_option("--gate", gate, "identity|cnot|swap|cz|t|file.json");
    cqz->add_option("--report", report, "report JSON path");

    auto* cd = app.add_subcommand("dot", "DOT export of an FPO");
    cd->add_option("--in", in_path, "FPO JSON")->required();
    cd->add_option("--out", out, "output DOT path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (cg->parsed()) return cmd_g(diagram_path, out, g);
        if (ce->parsed()) return cmd_embeds(lhs, rhs, witness, g);
        if (cc->parsed()) return cmd_classify(map_path, g);
        if (cm->parsed()) return cmd_minrep(in_path, out, strategy, g);
        if (cn->parsed())
            return cmd_enumerate(m, n, max_order, filter_name, out, cache_dir,
                                 g);
        if (cnm->parsed()) return cmd_named(name, named_m, named_n, out, as_dot, g);
        if (cs->parsed())
            return cmd_embed_spacetime(in_path, site_spec, loc_path, witness,
                                       strict_timelike, g);
        if (cx->parsed()) return cmd_exogenise(in_path, out, g);
        if (cq->parsed()) {
            if (cqe->parsed()) return cmd_quantum_evcond(gate, basis, report, g);
            if (cqc->parsed()) return cmd_quantum_clifford(gate, report, g);
            if (cqz->parsed()) return cmd_quantum_zigzag1(gate, report, g);
        }
        if (cd->parsed()) return cmd_dot(in_path, out, g);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
