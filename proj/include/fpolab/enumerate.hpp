#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <future>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fpolab/canon.hpp"
#include "fpolab/core.hpp"
#include "fpolab/search.hpp"

namespace fpolab {

// ----------------------------------------------------------- named families

inline Fpo bell() {
    return Fpo({"X", "Y", "A", "B", "s"}, {"X", "Y"}, {"A", "B"},
               {{"X", "A"}, {"Y", "B"}, {"s", "A"}, {"s", "B"}});
}

inline Fpo oneway_l() {
    return Fpo({"X", "Y", "A", "B"}, {"X", "Y"}, {"A", "B"},
               {{"X", "A"}, {"X", "B"}, {"Y", "B"}});
}

inline Fpo oneway_r() {
    return Fpo({"X", "Y", "A", "B"}, {"X", "Y"}, {"A", "B"},
               {{"Y", "A"}, {"Y", "B"}, {"X", "A"}});
}

inline Fpo full_frame(int m, int n) {
    std::vector<std::string> ins, outs, elems;
    for (int i = 1; i <= m; ++i) ins.push_back("I" + std::to_string(i));
    for (int j = 1; j <= n; ++j) outs.push_back("O" + std::to_string(j));
    elems = ins;
    elems.insert(elems.end(), outs.begin(), outs.end());
    std::vector<IdPair> rel;
    for (const auto& i : ins)
        for (const auto& o : outs) rel.emplace_back(i, o);
    return Fpo(elems, ins, outs, rel);
}

inline Fpo bottleneck(int m, int n) {
    std::vector<std::string> ins, outs, elems;
    for (int i = 1; i <= m; ++i) ins.push_back("I" + std::to_string(i));
    for (int j = 1; j <= n; ++j) outs.push_back("O" + std::to_string(j));
    elems = ins;
    elems.insert(elems.end(), outs.begin(), outs.end());
    elems.push_back("x");
    std::vector<IdPair> rel;
    for (const auto& i : ins) rel.emplace_back(i, "x");
    for (const auto& o : outs) rel.emplace_back("x", o);
    return Fpo(elems, ins, outs, rel);
}

// Zigzag for class [2,2]: top elements u0..un fed by bottom elements v1..vn,
// I1 under u0, I2 under un, every u under both outputs.
inline Fpo zz22(int n) {
    if (n < 1) throw UnknownName("ZZ22 requires n >= 1");
    std::vector<std::string> ins{"I1", "I2"}, outs{"O1", "O2"}, ups, downs;
    for (int k = 0; k <= n; ++k) ups.push_back("u" + std::to_string(k));
    for (int k = 1; k <= n; ++k) downs.push_back("v" + std::to_string(k));
    std::vector<std::string> elems = ins;
    elems.insert(elems.end(), outs.begin(), outs.end());
    elems.insert(elems.end(), ups.begin(), ups.end());
    elems.insert(elems.end(), downs.begin(), downs.end());
    std::vector<IdPair> rel{{"I1", ups.front()}, {"I2", ups.back()}};
    for (int k = 1; k <= n; ++k) {
        rel.emplace_back(downs[k - 1], ups[k - 1]);
        rel.emplace_back(downs[k - 1], ups[k]);
    }
    for (const auto& u : ups) {
        rel.emplace_back(u, "O1");
        rel.emplace_back(u, "O2");
    }
    return Fpo(elems, ins, outs, rel);
}

// Zigzag for class [1,3]: fence I = x0, x1, ..., x(2n), x(2n+1) = O3 with
// even positions below their odd neighbours, odd internals under O1 and O2.
inline Fpo zz13(int n) {
    if (n < 1) throw UnknownName("ZZ13 requires n >= 1");
    std::vector<std::string> ins{"I"}, outs{"O1", "O2", "O3"}, xs;
    for (int k = 1; k <= 2 * n; ++k) xs.push_back("x" + std::to_string(k));
    std::vector<std::string> seq{"I"};
    seq.insert(seq.end(), xs.begin(), xs.end());
    seq.push_back("O3");
    std::vector<IdPair> rel;
    for (int idx = 0; idx <= 2 * n; idx += 2) {
        if (idx - 1 >= 1) rel.emplace_back(seq[idx], seq[idx - 1]);
        if (idx + 1 <= 2 * n + 1) rel.emplace_back(seq[idx], seq[idx + 1]);
    }
    for (int idx = 1; idx < 2 * n; idx += 2) {
        rel.emplace_back(seq[idx], "O1");
        rel.emplace_back(seq[idx], "O2");
    }
    std::vector<std::string> elems = ins;
    elems.insert(elems.end(), outs.begin(), outs.end());
    elems.insert(elems.end(), xs.begin(), xs.end());
    return Fpo(elems, ins, outs, rel);
}

// Named-structure lookup. Parameterised families read their arguments from
// params; fixed structures take none.
inline Fpo catalog_named(const std::string& name,
                         const std::vector<int>& params = {}) {
    std::string u;
    for (char c : name) u += static_cast<char>(std::toupper(c));
    auto want = [&](size_t k) {
        if (params.size() != k)
            throw UnknownName(name + " expects " + std::to_string(k) +
                              " parameter(s), got " +
                              std::to_string(params.size()));
    };
    if (u == "BELL") {
        want(0);
        return bell();
    }
    if (u == "ONEWAY_L") {
        want(0);
        return oneway_l();
    }
    if (u == "ONEWAY_R") {
        want(0);
        return oneway_r();
    }
    if (u == "FULL_FRAME") {
        want(2);
        return full_frame(params[0], params[1]);
    }
    if (u == "BOTTLENECK") {
        want(2);
        return bottleneck(params[0], params[1]);
    }
    if (u == "ZZ22") {
        want(1);
        return zz22(params[0]);
    }
    if (u == "ZZ13") {
        want(1);
        return zz13(params[0]);
    }
    throw UnknownName("unknown named structure: " + name);
}

// ------------------------------------------------------------- enumeration

// Every FPO type of the class with at most max_order elements, exactly once,
// in canonical labelling, sorted by canonical key. Orderly generation: the
// frame-only seeds are all input-to-output relation patterns; each further
// order attaches one internal element in every consistent way (below-set D,
// above-set U with no u <= d), closing and deduplicating canonically.
inline std::vector<Fpo> enumerate_fpo_types(FpoClass cls, int max_order) {
    const int m = cls.m, n = cls.n;
    std::vector<Fpo> out;
    if (max_order < m + n) return out;
    std::map<std::string, Fpo> level;
    {
        std::vector<std::string> ins, outs, elems;
        for (int i = 1; i <= m; ++i) ins.push_back("I" + std::to_string(i));
        for (int j = 1; j <= n; ++j) outs.push_back("O" + std::to_string(j));
        elems = ins;
        elems.insert(elems.end(), outs.begin(), outs.end());
        const int bits = m * n;
        for (long mask = 0; mask < (1L << bits); ++mask) {
            std::vector<IdPair> rel;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j)
                    if (mask & (1L << (i * n + j)))
                        rel.emplace_back(ins[i], outs[j]);
            Fpo f(elems, ins, outs, rel);
            Fpo c = canon_fpo(f);
            level.emplace(canon_key(c), std::move(c));
        }
    }
    std::map<std::string, Fpo> all = level;
    for (int order = m + n + 1; order <= max_order; ++order) {
        std::map<std::string, Fpo> next;
        for (const auto& [key, f] : level) {
            const int sz = f.size();
            // relation profile of the new internal element vs each existing
            // element: 0 unrelated, 1 existing below new, 2 new below existing
            std::vector<int> prof(sz, 0);
            std::string fresh = "w";
            while (f.has_element(fresh)) fresh += "w";
            while (true) {
                bool consistent = true;
                for (int a = 0; a < sz && consistent; ++a) {
                    if (prof[a] == 1 && f.is_output(a)) consistent = false;
                    if (prof[a] == 2 && f.is_input(a)) consistent = false;
                }
                // no element of the above-set may sit at or below one of the
                // below-set (that would force a cycle through the new element)
                for (int u = 0; u < sz && consistent; ++u) {
                    if (prof[u] != 2) continue;
                    for (int d = 0; d < sz && consistent; ++d)
                        if (prof[d] == 1 && f.leq(u, d)) consistent = false;
                }
                if (consistent) {
                    std::vector<std::string> elems = f.elements();
                    elems.push_back(fresh);
                    std::vector<IdPair> rel = f.strict_pairs();
                    for (int a = 0; a < sz; ++a) {
                        if (prof[a] == 1) rel.emplace_back(f.id(a), fresh);
                        if (prof[a] == 2) rel.emplace_back(fresh, f.id(a));
                    }
                    Fpo g(elems, f.inputs(), f.outputs(), rel);
                    Fpo c = canon_fpo(g);
                    std::string k = canon_key(c);
                    if (!next.count(k)) next.emplace(std::move(k), std::move(c));
                }
                int p = 0;
                while (p < sz && prof[p] == 2) prof[p++] = 0;
                if (p == sz) break;
                ++prof[p];
            }
        }
        level = next;
        for (const auto& [k, f] : level) all.emplace(k, f);
    }
    out.reserve(all.size());
    for (const auto& [k, f] : all) out.push_back(f);
    return out;
}

enum class CatalogFilter { All, Causal, Markov, Deterministic };

inline CatalogFilter catalog_filter_from_string(const std::string& s) {
    if (s == "all") return CatalogFilter::All;
    if (s == "causal") return CatalogFilter::Causal;
    if (s == "markov") return CatalogFilter::Markov;
    if (s == "det" || s == "deterministic") return CatalogFilter::Deterministic;
    throw UnknownName("unknown catalog filter: " + s);
}

inline std::string to_string(CatalogFilter f) {
    switch (f) {
        case CatalogFilter::All: return "all";
        case CatalogFilter::Causal: return "causal";
        case CatalogFilter::Markov: return "markov";
        case CatalogFilter::Deterministic: return "det";
    }
    return "all";
}

struct CatalogEntry {
    Fpo form;  // canonical labelling
    std::string key;
    bool minimal = false;
    bool causal_relevant = false;
    bool markov_relevant = false;
    bool deterministic_relevant = false;
    std::string orbit_rep;
    int orbit_size = 0;
};

struct Catalog {
    FpoClass cls;
    int max_order = 0;
    CatalogFilter filter = CatalogFilter::All;
    std::vector<CatalogEntry> entries;  // canonical-key order
};

// Minimal representatives of the class up to max_order, filtered by the
// relevance predicate. Minimality checks can fan out over worker threads;
// results and ordering are schedule-independent.
inline Catalog enumerate_minimal_representatives(
    FpoClass cls, int max_order, CatalogFilter filter = CatalogFilter::All,
    int threads = 1) {
    Catalog cat;
    cat.cls = cls;
    cat.max_order = max_order;
    cat.filter = filter;
    std::vector<Fpo> types = enumerate_fpo_types(cls, max_order);
    // cheap relevance pre-filter before the minimality search
    std::vector<const Fpo*> pass;
    for (const auto& f : types) {
        bool keep = true;
        switch (filter) {
            case CatalogFilter::All: break;
            case CatalogFilter::Causal: keep = causal_relevant(f); break;
            case CatalogFilter::Markov: keep = markov_relevant(f); break;
            case CatalogFilter::Deterministic:
                keep = deterministic_relevant(f);
                break;
        }
        if (keep) pass.push_back(&f);
    }
    std::vector<uint8_t> minimal(pass.size(), 0);
    if (threads <= 1) {
        for (size_t i = 0; i < pass.size(); ++i)
            minimal[i] = is_minimal_representative(*pass[i]) ? 1 : 0;
    } else {
        std::vector<std::future<void>> jobs;
        std::atomic<size_t> cursor{0};
        for (int t = 0; t < threads; ++t)
            jobs.push_back(std::async(std::launch::async, [&]() {
                while (true) {
                    size_t i = cursor.fetch_add(1);
                    if (i >= pass.size()) return;
                    minimal[i] = is_minimal_representative(*pass[i]) ? 1 : 0;
                }
            }));
        for (auto& j : jobs) j.get();
    }
    for (size_t i = 0; i < pass.size(); ++i) {
        if (!minimal[i]) continue;
        const Fpo& f = *pass[i];
        CatalogEntry e;
        e.form = f;
        e.key = canon_key(f);
        e.minimal = true;
        e.causal_relevant = causal_relevant(f);
        e.markov_relevant = markov_relevant(f);
        e.deterministic_relevant = deterministic_relevant(f);
        auto orbit = orbit_keys(f);
        e.orbit_rep = *orbit.begin();
        e.orbit_size = static_cast<int>(orbit.size());
        cat.entries.push_back(std::move(e));
    }
    std::sort(cat.entries.begin(), cat.entries.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) {
                  return a.key < b.key;
              });
    return cat;
}

// Markov exogenisation: drop every internal element that has something below
// it (the induced closed order keeps all relations such elements mediated),
// then reduce to the minimal representative. Requires causal relevance.
inline Fpo exogenise(const Fpo& s, long long budget = kDefaultBudget) {
    if (!causal_relevant(s))
        throw NotCausalRelevantError(
            "exogenise requires a causally relevant input (no internal "
            "maximal elements)");
    std::vector<int> keep;
    for (int i = 0; i < s.size(); ++i) {
        if (!s.is_internal(i)) {
            keep.push_back(i);
            continue;
        }
        bool has_below = false;
        for (int j = 0; j < s.size() && !has_below; ++j)
            has_below = s.lt(j, i);
        if (!has_below) keep.push_back(i);
    }
    return minimal_representative(s.restricted(keep),
                                  MinimalityStrategy::General, budget);
}

}  // namespace fpolab
