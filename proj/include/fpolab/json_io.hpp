#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpolab/core.hpp"
#include "fpolab/diagram.hpp"
#include "fpolab/enumerate.hpp"
#include "fpolab/quantum.hpp"
#include "fpolab/spacetime.hpp"
#include "fpolab/version.hpp"

namespace fpolab {

using nlohmann::json;

// ------------------------------------------------------------------- FPOs

// Relations are emitted as the covering pairs; any generating set is accepted
// on load (the constructor closes it).
inline json fpo_to_json(const Fpo& f) {
    json j;
    j["elements"] = f.elements();
    j["inputs"] = f.inputs();
    j["outputs"] = f.outputs();
    json rel = json::array();
    for (const auto& [a, b] : hasse_reduction(f)) rel.push_back({a, b});
    j["relations"] = rel;
    return j;
}

inline Fpo fpo_from_json(const json& j) {
    if (!j.is_object() || !j.contains("elements") || !j.contains("inputs") ||
        !j.contains("outputs") || !j.contains("relations"))
        throw FopValidationError(
            "FPO JSON needs elements/inputs/outputs/relations");
    std::vector<std::string> elems = j.at("elements");
    std::vector<std::string> ins = j.at("inputs");
    std::vector<std::string> outs = j.at("outputs");
    std::vector<IdPair> rel;
    for (const auto& r : j.at("relations")) {
        if (!r.is_array() || r.size() != 2)
            throw FopValidationError("relation entries must be pairs");
        rel.emplace_back(r.at(0).get<std::string>(),
                         r.at(1).get<std::string>());
    }
    return Fpo(elems, ins, outs, rel);
}

// ---------------------------------------------------------------- FOP maps

// Witnesses are self-contained: both endpoints ride along with the
// assignment so the file re-validates on its own.
inline json fopmap_to_json(const Fpo& src, const Fpo& dst,
                           const FopAssignment& assign) {
    json j;
    j["source"] = fpo_to_json(src);
    j["target"] = fpo_to_json(dst);
    json a = json::object();
    for (int i = 0; i < src.size(); ++i) a[src.id(i)] = dst.id(assign[i]);
    j["assignment"] = a;
    return j;
}

struct FopMapFile {
    Fpo source;
    Fpo target;
    FopAssignment assignment;  // indexed like source
};

inline FopMapFile fopmap_from_json(const json& j) {
    if (!j.is_object() || !j.contains("source") || !j.contains("target") ||
        !j.contains("assignment"))
        throw FopValidationError(
            "map JSON needs source/target/assignment");
    FopMapFile m{fpo_from_json(j.at("source")), fpo_from_json(j.at("target")),
                 {}};
    m.assignment.assign(m.source.size(), -1);
    for (const auto& [k, v] : j.at("assignment").items()) {
        if (!m.source.has_element(k) ||
            !m.target.has_element(v.get<std::string>()))
            throw FopValidationError("assignment mentions unknown element " +
                                     k);
        m.assignment[m.source.index_of(k)] =
            m.target.index_of(v.get<std::string>());
    }
    for (int i = 0; i < m.source.size(); ++i)
        if (m.assignment[i] < 0)
            throw FopValidationError("assignment misses element " +
                                     m.source.id(i));
    return m;
}

// ---------------------------------------------------------------- diagrams

inline json endpoint_to_json(const Endpoint& e) {
    json j;
    switch (e.kind) {
        case Endpoint::Kind::Box:
            j["kind"] = "box";
            j["box"] = e.box;
            j["port"] = e.port;
            break;
        case Endpoint::Kind::ExtIn:
            j["kind"] = "ext_in";
            j["port"] = e.port;
            break;
        case Endpoint::Kind::ExtOut:
            j["kind"] = "ext_out";
            j["port"] = e.port;
            break;
    }
    return j;
}

inline Endpoint endpoint_from_json(const json& j) {
    std::string kind = j.at("kind");
    if (kind == "box")
        return Endpoint::box_port(j.at("box").get<std::string>(),
                                  j.at("port").get<int>());
    if (kind == "ext_in") return Endpoint::ext_in(j.at("port").get<int>());
    if (kind == "ext_out") return Endpoint::ext_out(j.at("port").get<int>());
    throw FopValidationError("unknown endpoint kind: " + kind);
}

inline json diagram_to_json(const Diagram& d) {
    json j;
    json boxes = json::array();
    for (const auto& b : d.boxes)
        boxes.push_back({{"id", b.id},
                         {"in_ports", b.in_ports},
                         {"out_ports", b.out_ports}});
    j["boxes"] = boxes;
    json wires = json::array();
    for (const auto& w : d.wires)
        wires.push_back(
            {{"from", endpoint_to_json(w.from)}, {"to", endpoint_to_json(w.to)}});
    j["wires"] = wires;
    j["ext_inputs"] = d.ext_inputs;
    j["ext_outputs"] = d.ext_outputs;
    return j;
}

inline Diagram diagram_from_json(const json& j) {
    Diagram d;
    for (const auto& b : j.at("boxes"))
        d.boxes.push_back({b.at("id").get<std::string>(),
                           b.at("in_ports").get<int>(),
                           b.at("out_ports").get<int>()});
    for (const auto& w : j.at("wires"))
        d.wires.push_back(
            {endpoint_from_json(w.at("from")), endpoint_from_json(w.at("to"))});
    d.ext_inputs = j.at("ext_inputs").get<int>();
    d.ext_outputs = j.at("ext_outputs").get<int>();
    return d;
}

// ---------------------------------------------------------------- catalogs

inline json catalog_entry_to_json(const CatalogEntry& e) {
    json j;
    j["form"] = fpo_to_json(e.form);
    j["key"] = e.key;
    j["flags"] = {{"minimal", e.minimal},
                  {"causal", e.causal_relevant},
                  {"markov", e.markov_relevant},
                  {"deterministic", e.deterministic_relevant}};
    j["orbit_rep"] = e.orbit_rep;
    j["orbit_size"] = e.orbit_size;
    return j;
}

inline CatalogEntry catalog_entry_from_json(const json& j) {
    CatalogEntry e{fpo_from_json(j.at("form")),
                   j.at("key").get<std::string>(),
                   j.at("flags").at("minimal").get<bool>(),
                   j.at("flags").at("causal").get<bool>(),
                   j.at("flags").at("markov").get<bool>(),
                   j.at("flags").at("deterministic").get<bool>(),
                   j.at("orbit_rep").get<std::string>(),
                   j.at("orbit_size").get<int>()};
    return e;
}

inline json catalog_to_json(const Catalog& c) {
    json j;
    j["version"] = kCacheTag;
    j["class"] = {c.cls.m, c.cls.n};
    j["max_order"] = c.max_order;
    j["filter"] = to_string(c.filter);
    json entries = json::array();
    for (const auto& e : c.entries) entries.push_back(catalog_entry_to_json(e));
    j["entries"] = entries;
    return j;
}

// Returns nothing when the cache belongs to a different code version or
// a different query.
inline std::optional<Catalog> catalog_from_json(const json& j, FpoClass cls,
                                                int max_order,
                                                CatalogFilter filter) {
    if (!j.is_object() || !j.contains("version") ||
        j.at("version").get<std::string>() != kCacheTag)
        return std::nullopt;
    if (j.at("class").at(0).get<int>() != cls.m ||
        j.at("class").at(1).get<int>() != cls.n ||
        j.at("max_order").get<int>() != max_order ||
        j.at("filter").get<std::string>() != to_string(filter))
        return std::nullopt;
    Catalog c{cls, max_order, filter, {}};
    for (const auto& e : j.at("entries"))
        c.entries.push_back(catalog_entry_from_json(e));
    return c;
}

// ------------------------------------------------------------ localisations

// Values are either lattice coordinates ([t, x, ...]) or explicit point ids.
inline Localisation localisation_from_json(const json& j,
                                           const CausalSite& site) {
    if (!j.is_object())
        throw LocalisationError("localisation JSON must be an object");
    Localisation loc;
    for (const auto& [k, v] : j.items()) {
        std::string pid;
        if (v.is_array()) {
            std::vector<long long> c;
            for (const auto& x : v) c.push_back(x.get<long long>());
            pid = lattice_point_id(c);
        } else if (v.is_string()) {
            pid = v.get<std::string>();
        } else {
            throw LocalisationError("localisation value for " + k +
                                    " must be coordinates or a point id");
        }
        if (!site.has_point(pid))
            throw LocalisationError("localised point " + pid +
                                    " is not in the site");
        loc[k] = pid;
    }
    return loc;
}

inline json embedding_to_json(const Fpo& f, const std::string& site_spec,
                              const Localisation& loc, const Embedding& emb) {
    json j;
    j["fpo"] = fpo_to_json(f);
    j["site"] = site_spec;
    json l = json::object();
    for (const auto& [k, v] : loc) l[k] = v;
    j["localisation"] = l;
    json a = json::object();
    for (const auto& [k, v] : emb) a[k] = v;
    j["assignment"] = a;
    return j;
}

// -------------------------------------------------------------------- gates

inline quantum::Mat gate_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("matrix"))
        throw DimensionError("gate JSON needs dims and matrix");
    std::vector<int> dims = j.at("dims");
    int dim = 1;
    for (int d : dims) dim *= d;
    const auto& m = j.at("matrix");
    if (static_cast<int>(m.size()) != dim * dim)
        throw DimensionError("gate matrix must list dim^2 row-major entries");
    quantum::Mat u(dim, dim);
    for (int i = 0; i < dim * dim; ++i) {
        const auto& c = m.at(i);
        if (!c.is_array() || c.size() != 2)
            throw DimensionError("matrix entries must be [re, im] pairs");
        u(i / dim, i % dim) =
            quantum::cplx(c.at(0).get<double>(), c.at(1).get<double>());
    }
    return u;
}

inline json gate_to_json(const quantum::Mat& u) {
    json j;
    j["dims"] = {2, 2};
    json m = json::array();
    for (Eigen::Index i = 0; i < u.rows(); ++i)
        for (Eigen::Index k = 0; k < u.cols(); ++k)
            m.push_back({u(i, k).real(), u(i, k).imag()});
    j["matrix"] = m;
    return j;
}

// -------------------------------------------------------------------- files

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace fpolab
