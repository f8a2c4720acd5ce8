#pragma once

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fpolab/core.hpp"
#include "fpolab/diagram.hpp"
#include "fpolab/spacetime.hpp"

namespace fpolab {

// Seeded generators backing the randomized property suites. Everything is a
// pure function of the engine state, so a fixed seed fixes the whole run.

namespace detail {
inline int rand_int(std::mt19937_64& eng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(eng);
}
inline bool rand_chance(std::mt19937_64& eng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(eng) < p;
}
}  // namespace detail

// Random valid FPO of class [m, n] with at most max_internals internal
// elements. Generating edges always point from inputs / earlier internals
// toward later internals / outputs, so the frame stays extremal and closure
// never hits a cycle.
inline Fpo random_fpo(std::mt19937_64& eng, int m, int n, int max_internals) {
    int k = detail::rand_int(eng, 0, max_internals);
    std::vector<std::string> ins, outs, elems;
    for (int i = 0; i < m; ++i) ins.push_back("I" + std::to_string(i + 1));
    for (int i = 0; i < n; ++i) outs.push_back("O" + std::to_string(i + 1));
    std::vector<std::string> ws;
    for (int i = 0; i < k; ++i) ws.push_back("w" + std::to_string(i + 1));
    elems = ins;
    elems.insert(elems.end(), outs.begin(), outs.end());
    elems.insert(elems.end(), ws.begin(), ws.end());
    std::vector<IdPair> rel;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (detail::rand_chance(eng, 0.35)) rel.emplace_back(ws[i], ws[j]);
    for (const auto& in : ins) {
        for (const auto& w : ws)
            if (detail::rand_chance(eng, 0.45)) rel.emplace_back(in, w);
        for (const auto& out : outs)
            if (detail::rand_chance(eng, 0.2)) rel.emplace_back(in, out);
    }
    for (const auto& w : ws)
        for (const auto& out : outs)
            if (detail::rand_chance(eng, 0.45)) rel.emplace_back(w, out);
    return Fpo(elems, ins, outs, rel);
}

// Like random_fpo, but every internal element ends up below something (the
// causal-relevance precondition of exogenisation).
inline Fpo random_causal_fpo(std::mt19937_64& eng, int m, int n,
                             int max_internals) {
    Fpo f = random_fpo(eng, m, n, max_internals);
    std::vector<IdPair> extra;
    for (int x : f.internals()) {
        bool below = false;
        for (int e = 0; e < f.size(); ++e)
            if (f.lt(x, e)) below = true;
        if (!below)
            extra.emplace_back(
                f.id(x), f.id(f.output_at(detail::rand_int(eng, 0, n - 1))));
    }
    if (extra.empty()) return f;
    std::vector<IdPair> rel = f.strict_pairs();
    rel.insert(rel.end(), extra.begin(), extra.end());
    return Fpo(f.elements(), f.inputs(), f.outputs(), rel);
}

// Random valid diagram: boxes are wired in a fixed topological order, every
// box input draws from an open earlier out-port or mints a fresh external
// input, and every still-open out-port drains into a fresh external output.
inline Diagram random_diagram(std::mt19937_64& eng, int max_boxes) {
    int nb = detail::rand_int(eng, 1, max_boxes);
    Diagram d;
    std::vector<Endpoint> open;  // box out-ports not yet consumed
    for (int b = 0; b < nb; ++b) {
        BoxSpec box{"b" + std::to_string(b + 1), detail::rand_int(eng, 0, 2),
                    detail::rand_int(eng, 0, 2)};
        if (box.in_ports == 0 && box.out_ports == 0) box.out_ports = 1;
        for (int p = 0; p < box.in_ports; ++p) {
            Endpoint to = Endpoint::box_port(box.id, p);
            if (!open.empty() && detail::rand_chance(eng, 0.7)) {
                int pick = detail::rand_int(
                    eng, 0, static_cast<int>(open.size()) - 1);
                d.wires.push_back({open[pick], to});
                open.erase(open.begin() + pick);
            } else {
                d.wires.push_back({Endpoint::ext_in(d.ext_inputs++), to});
            }
        }
        for (int p = 0; p < box.out_ports; ++p)
            open.push_back(Endpoint::box_port(box.id, p));
        d.boxes.push_back(box);
    }
    for (const auto& src : open)
        d.wires.push_back({src, Endpoint::ext_out(d.ext_outputs++)});
    return d;
}

namespace detail {

// All one-point collapse moves available on f: internal x folded onto t with
// everything strictly below x already (weakly) below t and dually above.
inline std::vector<std::pair<int, int>> collapse_moves(const Fpo& f) {
    std::vector<std::pair<int, int>> moves;
    for (int x : f.internals())
        for (int t = 0; t < f.size(); ++t) {
            if (t == x) continue;
            bool ok = true;
            for (int z = 0; z < f.size() && ok; ++z) {
                if (f.lt(z, x) && !(z == t || f.lt(z, t))) ok = false;
                if (f.lt(x, z) && !(t == z || f.lt(t, z))) ok = false;
            }
            if (ok) moves.emplace_back(x, t);
        }
    return moves;
}

}  // namespace detail

struct ConversionPair {
    Diagram diagram;
    Fpo target;
    std::map<std::string, std::string> assignment;  // 𝒢(diagram) -> target
};

// Seeded (diagram, map) pair for the conversion round-trip property: the
// target is obtained from the diagram's own conversion image by a random
// chain of collapse moves followed by identification to fixpoint, so it is
// both reachable by an order-preserving map and stable under conversion.
inline ConversionPair random_conversion_pair(std::mt19937_64& eng,
                                             int max_boxes) {
    Diagram d = random_diagram(eng, max_boxes);
    Fpo g = diagram_to_fpo(d);
    Fpo cur = g;
    std::map<std::string, std::string> to_cur;
    for (int e = 0; e < g.size(); ++e) to_cur[g.id(e)] = g.id(e);
    int steps = detail::rand_int(eng, 0, 3);
    for (int s = 0; s < steps; ++s) {
        auto moves = detail::collapse_moves(cur);
        if (moves.empty()) break;
        auto [x, t] =
            moves[detail::rand_int(eng, 0, static_cast<int>(moves.size()) - 1)];
        std::string xid = cur.id(x), tid = cur.id(t);
        std::vector<int> keep;
        for (int e = 0; e < cur.size(); ++e)
            if (e != x) keep.push_back(e);
        cur = cur.restricted(keep);
        for (auto& [elem, h] : to_cur)
            if (h == xid) h = tid;
    }
    // Identification to fixpoint keeps the target stable under conversion.
    while (true) {
        auto [next, home] = identify_fpo(cur);
        bool same = next.size() == cur.size();
        for (auto& [elem, h] : to_cur) h = home.at(h);
        cur = next;
        if (same) break;
    }
    return {std::move(d), std::move(cur), std::move(to_cur)};
}

// Random localisation of the given frame onto lattice points, inputs
// favored toward early times and outputs toward late ones.
inline Localisation random_localisation(std::mt19937_64& eng,
                                        const CausalSite& site,
                                        const std::vector<std::string>& inputs,
                                        const std::vector<std::string>& outputs) {
    Localisation loc;
    std::set<int> used;  // localisations place each frame element on its own point
    auto pick = [&](bool early) {
        std::vector<int> pool;
        for (int p = 0; p < site.size(); ++p) {
            if (used.count(p)) continue;
            const auto& c = site.coord(p);
            if (c.empty()) {
                pool.push_back(p);
                continue;
            }
            if (early && c[0] <= 0) pool.push_back(p);
            if (!early && c[0] >= 0) pool.push_back(p);
        }
        if (pool.empty())
            for (int p = 0; p < site.size(); ++p)
                if (!used.count(p)) pool.push_back(p);
        if (pool.empty())
            throw LocalisationError("site too small for the frame");
        int p = pool[detail::rand_int(eng, 0, static_cast<int>(pool.size()) - 1)];
        used.insert(p);
        return site.id(p);
    };
    for (const auto& id : inputs) loc[id] = pick(true);
    for (const auto& id : outputs) loc[id] = pick(false);
    return loc;
}

}  // namespace fpolab
