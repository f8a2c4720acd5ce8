#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fpolab/core.hpp"
#include "fpolab/search.hpp"

namespace fpolab {

// Finite spacetime skeleton: points plus a reflexive, transitively closed
// causal precedence. Lattice-generated sites carry integer coordinates.
class CausalSite {
public:
    CausalSite() = default;

    CausalSite(std::vector<std::string> ids,
               std::vector<std::vector<long long>> coords,
               std::vector<uint8_t> leq_closed, std::string provenance)
        : ids_(std::move(ids)), coords_(std::move(coords)),
          leq_(std::move(leq_closed)), provenance_(std::move(provenance)) {
        for (size_t i = 0; i < ids_.size(); ++i) {
            if (!index_.emplace(ids_[i], static_cast<int>(i)).second)
                throw LocalisationError("duplicate point id: " + ids_[i]);
        }
    }

    int size() const { return static_cast<int>(ids_.size()); }
    bool leq(int p, int q) const {
        return leq_[static_cast<size_t>(p) * size() + q] != 0;
    }
    bool lt(int p, int q) const { return p != q && leq(p, q); }
    const std::string& id(int p) const { return ids_[p]; }
    const std::vector<std::string>& ids() const { return ids_; }
    bool has_point(const std::string& id) const { return index_.count(id); }
    int index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end())
            throw LocalisationError("unknown point id: " + id);
        return it->second;
    }
    const std::vector<long long>& coord(int p) const { return coords_[p]; }
    const std::string& provenance() const { return provenance_; }

private:
    std::vector<std::string> ids_;
    std::vector<std::vector<long long>> coords_;
    std::vector<uint8_t> leq_;
    std::string provenance_;
    std::map<std::string, int> index_;
};

struct Range {
    long long lo = 0;
    long long hi = 0;
};

// Exact-integer causal comparison on 1+d lattice coordinates. Lightlike
// separation counts as related unless strict_timelike is set.
inline bool lattice_leq(const std::vector<long long>& p,
                        const std::vector<long long>& q,
                        bool strict_timelike = false) {
    long long dt = q[0] - p[0];
    if (dt < 0) return false;
    long long s = 0;
    for (size_t i = 1; i < p.size(); ++i) s += (q[i] - p[i]) * (q[i] - p[i]);
    return strict_timelike ? (dt * dt > s || (dt == 0 && s == 0))
                           : dt * dt >= s;
}

inline std::string lattice_point_id(const std::vector<long long>& c) {
    std::string id;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) id += ",";
        id += std::to_string(c[i]);
    }
    return id;
}

// Finite chunk of 1+d Minkowski spacetime: every integer point of the given
// ranges, ordered by the exact lightcone comparison.
inline CausalSite minkowski_lattice(int d, Range t_range,
                                    const std::vector<Range>& x_ranges,
                                    bool strict_timelike = false) {
    if (d < 1 || static_cast<int>(x_ranges.size()) != d)
        throw LocalisationError("lattice needs one spatial range per dimension");
    std::vector<std::vector<long long>> coords;
    std::vector<long long> cur(d + 1);
    std::function<void(int)> rec = [&](int axis) {
        if (axis == d + 1) {
            coords.push_back(cur);
            return;
        }
        Range r = axis == 0 ? t_range : x_ranges[axis - 1];
        for (long long v = r.lo; v <= r.hi; ++v) {
            cur[axis] = v;
            rec(axis + 1);
        }
    };
    rec(0);
    const int n = static_cast<int>(coords.size());
    std::vector<std::string> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = lattice_point_id(coords[i]);
    std::vector<uint8_t> leq(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            leq[static_cast<size_t>(i) * n + j] =
                (i == j || lattice_leq(coords[i], coords[j], strict_timelike))
                    ? 1
                    : 0;
    return CausalSite(std::move(ids), std::move(coords), std::move(leq),
                      "minkowski_lattice");
}

// Side-by-side union with no cross relations; colliding ids on the right
// acquire primes.
inline CausalSite disjoint_union(const CausalSite& a, const CausalSite& b) {
    std::set<std::string> taken(a.ids().begin(), a.ids().end());
    std::vector<std::string> ids = a.ids();
    std::vector<std::vector<long long>> coords;
    for (int i = 0; i < a.size(); ++i) coords.push_back(a.coord(i));
    for (int i = 0; i < b.size(); ++i) {
        std::string fresh = b.id(i);
        while (taken.count(fresh)) fresh += "'";
        taken.insert(fresh);
        ids.push_back(fresh);
        coords.push_back(b.coord(i));
    }
    const int n = static_cast<int>(ids.size());
    std::vector<uint8_t> leq(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) leq[static_cast<size_t>(i) * n + i] = 1;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            if (a.leq(i, j)) leq[static_cast<size_t>(i) * n + j] = 1;
    for (int i = 0; i < b.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            if (b.leq(i, j))
                leq[static_cast<size_t>(a.size() + i) * n + a.size() + j] = 1;
    return CausalSite(std::move(ids), std::move(coords), std::move(leq),
                      "disjoint_union");
}

// Frame element id -> point id.
using Localisation = std::map<std::string, std::string>;

namespace detail {
inline std::string window_internal_id(const std::string& point_id) {
    return "pt:" + point_id;
}
}  // namespace detail

// The finite FOP-search target of a localisation: frame elements sit at their
// localized points; every site point above some localized input or below some
// localized output becomes an internal element ("pt:"-prefixed); the order is
// induced from the site.
inline Fpo site_window_fpo(const CausalSite& site, const Localisation& loc,
                           const std::vector<std::string>& inputs,
                           const std::vector<std::string>& outputs,
                           bool full_site = false) {
    std::map<std::string, int> frame_pt;
    for (const auto& id : inputs) {
        auto it = loc.find(id);
        if (it == loc.end())
            throw LocalisationError("localisation misses input " + id);
        frame_pt[id] = site.index_of(it->second);
    }
    for (const auto& id : outputs) {
        auto it = loc.find(id);
        if (it == loc.end())
            throw LocalisationError("localisation misses output " + id);
        frame_pt[id] = site.index_of(it->second);
    }
    std::set<int> localized;
    for (const auto& [id, p] : frame_pt) {
        // one point per frame element: a partial order cannot express two
        // distinct elements at mutually related positions
        if (!localized.insert(p).second)
            throw LocalisationError("localisation reuses point " + site.id(p));
    }
    std::vector<int> window;
    for (int p = 0; p < site.size(); ++p) {
        if (localized.count(p)) continue;
        bool in_win = full_site;
        for (const auto& id : inputs)
            if (!in_win && site.leq(frame_pt[id], p)) in_win = true;
        for (const auto& id : outputs)
            if (!in_win && site.leq(p, frame_pt[id])) in_win = true;
        if (in_win) window.push_back(p);
    }
    std::vector<std::string> elems = inputs;
    elems.insert(elems.end(), outputs.begin(), outputs.end());
    std::vector<int> elem_pt;
    for (const auto& id : inputs) elem_pt.push_back(frame_pt[id]);
    for (const auto& id : outputs) elem_pt.push_back(frame_pt[id]);
    for (int p : window) {
        elems.push_back(detail::window_internal_id(site.id(p)));
        elem_pt.push_back(p);
    }
    std::vector<IdPair> rel;
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t j = 0; j < elems.size(); ++j)
            if (i != j && elem_pt[i] != elem_pt[j] &&
                site.leq(elem_pt[i], elem_pt[j]))
                rel.emplace_back(elems[i], elems[j]);
    return Fpo(elems, inputs, outputs, rel);
}

// FPO element id -> point id.
using Embedding = std::map<std::string, std::string>;

// C-local embedding search: reduce to FOP-map search into the window FPO.
// The window suffices whenever every internal element is comparable to some
// frame element; otherwise the full site is used.
inline std::optional<Embedding> c_local_embed(const Fpo& f,
                                              const CausalSite& site,
                                              const Localisation& loc,
                                              long long budget = kDefaultBudget) {
    bool anchored = true;
    for (int x : f.internals()) {
        bool cmp = false;
        for (int e = 0; e < f.size() && !cmp; ++e)
            if (!f.is_internal(e) && (f.lt(x, e) || f.lt(e, x))) cmp = true;
        if (!cmp) anchored = false;
    }
    Fpo win = site_window_fpo(site, loc, f.inputs(), f.outputs(), !anchored);
    auto m = find_fop_map(f, win, budget);
    if (!m) return std::nullopt;
    Embedding emb;
    for (int i = 0; i < f.size(); ++i) {
        const std::string& e = win.id((*m)[i]);
        if (e.rfind("pt:", 0) == 0)
            emb[f.id(i)] = e.substr(3);
        else
            emb[f.id(i)] = loc.at(e);
    }
    return emb;
}

// Direct reference search over raw site points (used to cross-check the
// window reduction).
inline std::optional<Embedding> site_embed_brute(const Fpo& f,
                                                 const CausalSite& site,
                                                 const Localisation& loc) {
    std::vector<int> assign(f.size(), -1);
    std::set<int> localized;
    for (int e = 0; e < f.size(); ++e) {
        if (f.is_internal(e)) continue;
        auto it = loc.find(f.id(e));
        if (it == loc.end())
            throw LocalisationError("localisation misses " + f.id(e));
        assign[e] = site.index_of(it->second);
        if (!localized.insert(assign[e]).second)
            throw LocalisationError("localisation reuses point " + it->second);
    }
    for (int a = 0; a < f.size(); ++a)
        for (int b = 0; b < f.size(); ++b)
            if (assign[a] >= 0 && assign[b] >= 0 && f.lt(a, b) &&
                !site.leq(assign[a], assign[b]))
                return std::nullopt;
    const auto& ints = f.internals();
    std::function<bool(size_t)> bt = [&](size_t i) -> bool {
        if (i == ints.size()) return true;
        int x = ints[i];
        for (int p = 0; p < site.size(); ++p) {
            bool ok = true;
            for (int y = 0; y < f.size() && ok; ++y) {
                if (assign[y] < 0) continue;
                if (f.lt(x, y) && !site.leq(p, assign[y])) ok = false;
                if (f.lt(y, x) && !site.leq(assign[y], p)) ok = false;
            }
            if (!ok) continue;
            assign[x] = p;
            if (bt(i + 1)) return true;
            assign[x] = -1;
        }
        return false;
    };
    if (!bt(0)) return std::nullopt;
    Embedding emb;
    for (int i = 0; i < f.size(); ++i) emb[f.id(i)] = site.id(assign[i]);
    return emb;
}

// Textual site description, e.g. "mink:d=1,t=-2..1,x=-4..4". Spatial ranges
// are given as x=..., y=..., z=... (in axis order) or a single x=... reused
// for every axis.
inline CausalSite parse_site_spec(const std::string& spec,
                                  bool strict_timelike = false) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon == std::string::npos ? spec.size()
                                                                 : colon);
    if (kind != "mink")
        throw LocalisationError("unknown site kind: " + kind);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    std::map<std::string, std::string> kv;
    size_t pos = 0;
    while (pos < rest.size()) {
        size_t comma = rest.find(',', pos);
        std::string tok = rest.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? rest.size() : comma + 1;
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw LocalisationError("bad site token: " + tok);
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    auto parse_range = [](const std::string& s) {
        auto dots = s.find("..");
        if (dots == std::string::npos)
            throw LocalisationError("bad range: " + s);
        Range r;
        r.lo = std::stoll(s.substr(0, dots));
        r.hi = std::stoll(s.substr(dots + 2));
        if (r.lo > r.hi) throw LocalisationError("empty range: " + s);
        return r;
    };
    if (!kv.count("d") || !kv.count("t"))
        throw LocalisationError("site spec needs d= and t=");
    int d = std::stoi(kv.at("d"));
    Range t = parse_range(kv.at("t"));
    static const char* axes[] = {"x", "y", "z"};
    std::vector<Range> xs;
    for (int i = 0; i < d; ++i) {
        const char* ax = i < 3 ? axes[i] : nullptr;
        if (ax && kv.count(ax))
            xs.push_back(parse_range(kv.at(ax)));
        else if (kv.count("x"))
            xs.push_back(parse_range(kv.at("x")));
        else
            throw LocalisationError("site spec misses a spatial range");
    }
    return minkowski_lattice(d, t, xs, strict_timelike);
}

// An embedding is valid when it extends the localisation and preserves order
// into the site.
inline bool embedding_valid(const Fpo& f, const CausalSite& site,
                            const Localisation& loc, const Embedding& emb) {
    for (int i = 0; i < f.size(); ++i)
        if (!emb.count(f.id(i)) || !site.has_point(emb.at(f.id(i))))
            return false;
    for (const auto& id : f.inputs())
        if (emb.at(id) != loc.at(id)) return false;
    for (const auto& id : f.outputs())
        if (emb.at(id) != loc.at(id)) return false;
    for (int a = 0; a < f.size(); ++a)
        for (int b = 0; b < f.size(); ++b)
            if (f.lt(a, b) &&
                !site.leq(site.index_of(emb.at(f.id(a))),
                          site.index_of(emb.at(f.id(b)))))
                return false;
    return true;
}

}  // namespace fpolab
