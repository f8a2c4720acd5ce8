#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fpolab/canon.hpp"
#include "fpolab/core.hpp"

namespace fpolab {

inline constexpr long long kDefaultBudget = 50'000'000;

struct SearchStats {
    long long nodes = 0;
};

// A frame-ordered map between FPOs of the same class: the k-th input goes to
// the k-th input, the k-th output to the k-th output, and x <= y implies
// C(x) <= C(y). Represented as source index -> target index.
using FopAssignment = std::vector<int>;

namespace detail {

// Frame-consistent candidate targets for one source element x. Uses the
// reflexive order on the target side: f <= x forces C(f) <= t, x <= f forces
// t <= C(f).
inline std::vector<int> candidate_targets(const Fpo& src, const Fpo& dst,
                                          int x) {
    std::vector<int> out;
    const int m = static_cast<int>(src.inputs().size());
    const int n = static_cast<int>(src.outputs().size());
    for (int t = 0; t < dst.size(); ++t) {
        bool ok = true;
        for (int k = 0; k < m && ok; ++k) {
            int fs = src.input_at(k), ft = dst.input_at(k);
            if (src.leq(fs, x) && !dst.leq(ft, t)) ok = false;
            if (src.leq(x, fs) && !dst.leq(t, ft)) ok = false;
        }
        for (int k = 0; k < n && ok; ++k) {
            int fs = src.output_at(k), ft = dst.output_at(k);
            if (src.leq(fs, x) && !dst.leq(ft, t)) ok = false;
            if (src.leq(x, fs) && !dst.leq(t, ft)) ok = false;
        }
        if (ok) out.push_back(t);
    }
    return out;
}

struct FopSearcher {
    const Fpo& src;
    const Fpo& dst;
    long long budget;
    SearchStats* stats;
    long long nodes = 0;
    std::vector<int> vars;                  // internal source elements
    std::vector<std::vector<int>> domains;  // parallel to vars
    std::vector<int> assign;                // src index -> dst index or -1

    FopSearcher(const Fpo& s, const Fpo& d, long long b, SearchStats* st)
        : src(s), dst(d), budget(b), stats(st) {}

    void bump() {
        ++nodes;
        if (stats) ++stats->nodes;
        if (budget > 0 && nodes > budget)
            throw BudgetExceeded("search node budget of " +
                                 std::to_string(budget) + " exceeded");
    }

    // Deterministic: most-constrained variable first (ties by source index),
    // values in ascending target index; sequential exploration makes the
    // returned witness independent of configuration.
    bool run(std::vector<std::vector<int>>& dom, int depth) {
        if (depth == static_cast<int>(vars.size())) return true;
        int pick = -1;
        for (size_t i = 0; i < vars.size(); ++i) {
            if (assign[vars[i]] >= 0) continue;
            if (pick < 0 ||
                dom[i].size() < dom[pick].size() ||
                (dom[i].size() == dom[pick].size() &&
                 vars[i] < vars[pick]))
                pick = static_cast<int>(i);
        }
        const int x = vars[pick];
        for (int t : dom[pick]) {
            bump();
            assign[x] = t;
            std::vector<std::vector<int>> next = dom;
            next[pick] = {t};
            bool wiped = false;
            for (size_t j = 0; j < vars.size() && !wiped; ++j) {
                if (assign[vars[j]] >= 0) continue;
                const int y = vars[j];
                std::vector<int> kept;
                for (int u : next[j]) {
                    if (src.lt(x, y) && !dst.leq(t, u)) continue;
                    if (src.lt(y, x) && !dst.leq(u, t)) continue;
                    kept.push_back(u);
                }
                if (kept.empty()) wiped = true;
                next[j] = std::move(kept);
            }
            if (!wiped && run(next, depth + 1)) return true;
            assign[x] = -1;
        }
        return false;
    }
};

}  // namespace detail

// Search for an FOP map src -> dst. Returns the deterministic first witness,
// std::nullopt if none exists, throws BudgetExceeded when the node limit is
// hit and ClassMismatchError when the frames disagree in shape.
inline std::optional<FopAssignment> find_fop_map(
    const Fpo& src, const Fpo& dst, long long budget = kDefaultBudget,
    SearchStats* stats = nullptr) {
    if (!(src.cls() == dst.cls()))
        throw ClassMismatchError(
            "source class [" + std::to_string(src.cls().m) + "," +
            std::to_string(src.cls().n) + "] does not match target class [" +
            std::to_string(dst.cls().m) + "," + std::to_string(dst.cls().n) +
            "]");
    detail::FopSearcher s(src, dst, budget, stats);
    s.assign.assign(src.size(), -1);
    const int m = static_cast<int>(src.inputs().size());
    const int n = static_cast<int>(src.outputs().size());
    for (int k = 0; k < m; ++k) s.assign[src.input_at(k)] = dst.input_at(k);
    for (int k = 0; k < n; ++k) s.assign[src.output_at(k)] = dst.output_at(k);
    // frame-frame order must already be preserved
    for (int a = 0; a < src.size(); ++a) {
        if (s.assign[a] < 0) continue;
        for (int b = 0; b < src.size(); ++b) {
            if (s.assign[b] < 0) continue;
            if (src.lt(a, b) && !dst.leq(s.assign[a], s.assign[b]))
                return std::nullopt;
        }
    }
    s.vars = src.internals();
    s.domains.clear();
    for (int x : s.vars)
        s.domains.push_back(detail::candidate_targets(src, dst, x));
    for (const auto& d : s.domains)
        if (d.empty()) return std::nullopt;
    if (!s.run(s.domains, 0)) return std::nullopt;
    return s.assign;
}

inline bool embeds(const Fpo& src, const Fpo& dst,
                   long long budget = kDefaultBudget) {
    return find_fop_map(src, dst, budget).has_value();
}

inline bool is_equivalent(const Fpo& a, const Fpo& b,
                          long long budget = kDefaultBudget) {
    return embeds(a, b, budget) && embeds(b, a, budget);
}

enum class MapClass { NotFop, Fop, Foe, Relabelling };

inline std::string to_string(MapClass c) {
    switch (c) {
        case MapClass::NotFop: return "not-fop";
        case MapClass::Fop: return "fop";
        case MapClass::Foe: return "foe";
        case MapClass::Relabelling: return "relabelling";
    }
    return "not-fop";
}

// Classify an explicit assignment: frame-ordered and order-preserving makes
// it FOP; order-reflecting (which forces injectivity) upgrades to FOE;
// surjective FOE is a relabelling.
inline MapClass classify_map(const Fpo& src, const Fpo& dst,
                             const FopAssignment& map) {
    if (static_cast<int>(map.size()) != src.size()) return MapClass::NotFop;
    if (!(src.cls() == dst.cls())) return MapClass::NotFop;
    for (int v : map)
        if (v < 0 || v >= dst.size()) return MapClass::NotFop;
    const int m = static_cast<int>(src.inputs().size());
    const int n = static_cast<int>(src.outputs().size());
    for (int k = 0; k < m; ++k)
        if (map[src.input_at(k)] != dst.input_at(k)) return MapClass::NotFop;
    for (int k = 0; k < n; ++k)
        if (map[src.output_at(k)] != dst.output_at(k)) return MapClass::NotFop;
    for (int a = 0; a < src.size(); ++a)
        for (int b = 0; b < src.size(); ++b)
            if (src.lt(a, b) && !dst.leq(map[a], map[b]))
                return MapClass::NotFop;
    bool reflecting = true;
    for (int a = 0; a < src.size() && reflecting; ++a)
        for (int b = 0; b < src.size() && reflecting; ++b)
            if (dst.leq(map[a], map[b]) && !src.leq(a, b)) reflecting = false;
    if (!reflecting) return MapClass::Fop;
    std::vector<uint8_t> hit(dst.size(), 0);
    for (int v : map) hit[v] = 1;
    for (uint8_t h : hit)
        if (!h) return MapClass::Foe;
    return MapClass::Relabelling;
}

// Quick necessary-condition check: an internal x collapsible onto some other
// element t (strict down-set of x within the reflexive down-set of t, dually
// upward) yields an immediate non-surjective self-map.
inline std::optional<std::pair<int, int>> one_point_collapse(const Fpo& f) {
    for (int x : f.internals()) {
        for (int t = 0; t < f.size(); ++t) {
            if (t == x) continue;
            bool ok = true;
            for (int y = 0; y < f.size() && ok; ++y) {
                if (f.lt(y, x) && !f.leq(y, t)) ok = false;
                if (f.lt(x, y) && !f.leq(t, y)) ok = false;
            }
            if (ok) return std::make_pair(x, t);
        }
    }
    return std::nullopt;
}

// FOP self-map of f missing at least one element, or nullopt. The frame is
// always fixed, so only internal elements can be avoided. With
// idempotent_only the map must additionally fix its own image pointwise.
inline std::optional<FopAssignment> find_nonsurjective_selfmap(
    const Fpo& f, bool idempotent_only = false,
    long long budget = kDefaultBudget, SearchStats* stats = nullptr) {
    if (auto col = one_point_collapse(f)) {
        // identity away from the collapsed element; idempotent by
        // construction, so valid for either strategy
        FopAssignment a(f.size());
        std::iota(a.begin(), a.end(), 0);
        a[col->first] = col->second;
        return a;
    }
    const std::vector<int>& ints = f.internals();
    for (int avoid : ints) {
        detail::FopSearcher s(f, f, budget, stats);
        s.assign.assign(f.size(), -1);
        for (size_t k = 0; k < f.inputs().size(); ++k) {
            int i = f.input_at(static_cast<int>(k));
            s.assign[i] = i;
        }
        for (size_t k = 0; k < f.outputs().size(); ++k) {
            int i = f.output_at(static_cast<int>(k));
            s.assign[i] = i;
        }
        s.vars = ints;
        s.domains.clear();
        bool feasible = true;
        for (int x : s.vars) {
            auto dom = detail::candidate_targets(f, f, x);
            dom.erase(std::remove(dom.begin(), dom.end(), avoid), dom.end());
            if (dom.empty()) {
                feasible = false;
                break;
            }
            s.domains.push_back(std::move(dom));
        }
        if (!feasible) continue;
        if (!idempotent_only) {
            if (s.run(s.domains, 0)) return s.assign;
            continue;
        }
        // Idempotent strategy: search but accept only assignments whose image
        // is fixed pointwise; restart search enumerating all solutions.
        std::vector<FopAssignment> found;
        std::function<bool(std::vector<std::vector<int>>&, int)> run_all =
            [&](std::vector<std::vector<int>>& dom, int depth) -> bool {
            if (depth == static_cast<int>(s.vars.size())) {
                for (int x : s.vars)
                    if (s.assign[s.assign[x]] != s.assign[x]) return false;
                return true;
            }
            int pick = -1;
            for (size_t i = 0; i < s.vars.size(); ++i) {
                if (s.assign[s.vars[i]] >= 0) continue;
                if (pick < 0 || dom[i].size() < dom[pick].size() ||
                    (dom[i].size() == dom[pick].size() &&
                     s.vars[i] < s.vars[pick]))
                    pick = static_cast<int>(i);
            }
            const int x = s.vars[pick];
            for (int t : dom[pick]) {
                s.bump();
                s.assign[x] = t;
                std::vector<std::vector<int>> next = dom;
                next[pick] = {t};
                bool wiped = false;
                for (size_t j = 0; j < s.vars.size() && !wiped; ++j) {
                    if (s.assign[s.vars[j]] >= 0) continue;
                    const int y = s.vars[j];
                    std::vector<int> kept;
                    for (int u : next[j]) {
                        if (f.lt(x, y) && !f.leq(t, u)) continue;
                        if (f.lt(y, x) && !f.leq(u, t)) continue;
                        kept.push_back(u);
                    }
                    if (kept.empty()) wiped = true;
                    next[j] = std::move(kept);
                }
                if (!wiped && run_all(next, depth + 1)) return true;
                s.assign[x] = -1;
            }
            return false;
        };
        if (run_all(s.domains, 0)) return s.assign;
    }
    return std::nullopt;
}

enum class MinimalityStrategy { General, IdempotentOnly };

inline bool is_minimal_representative(
    const Fpo& f, MinimalityStrategy strategy = MinimalityStrategy::General,
    long long budget = kDefaultBudget) {
    return !find_nonsurjective_selfmap(
                f, strategy == MinimalityStrategy::IdempotentOnly, budget)
                .has_value();
}

// Iterate image collapse until no non-surjective self-map remains, then
// canonicalize the labelling.
inline Fpo minimal_representative(
    const Fpo& f, MinimalityStrategy strategy = MinimalityStrategy::General,
    long long budget = kDefaultBudget) {
    Fpo cur = f;
    while (true) {
        auto m = find_nonsurjective_selfmap(
            cur, strategy == MinimalityStrategy::IdempotentOnly, budget);
        if (!m) break;
        std::vector<uint8_t> in_img(cur.size(), 0);
        for (int v : *m) in_img[v] = 1;
        std::vector<int> keep;
        for (int i = 0; i < cur.size(); ++i)
            if (in_img[i]) keep.push_back(i);
        cur = cur.restricted(keep);
    }
    return canon_fpo(cur);
}

// Given minimal S, equivalent S' and an FOP map E: S -> S', build the
// surjective projection P: S' -> S with P∘E∘P = P. Works by picking any
// FOP map E': S' -> S; f = E'∘E is then a frame-fixing automorphism of S,
// and P = E'∘(E∘E')^{n-1} with n the order of f.
inline FopAssignment projection_to_minrep(const Fpo& s, const Fpo& sp,
                                          const FopAssignment& e,
                                          long long budget = kDefaultBudget) {
    auto ep = find_fop_map(sp, s, budget);
    if (!ep)
        throw NotEquivalentError(
            "no FOP map back from the extension to the minimal source");
    // f = E' after E, as a self-map of S
    std::vector<int> fmap(s.size());
    for (int i = 0; i < s.size(); ++i) fmap[i] = (*ep)[e[i]];
    std::vector<uint8_t> hit(s.size(), 0);
    for (int v : fmap) hit[v] = 1;
    for (uint8_t h : hit)
        if (!h)
            throw FopValidationError(
                "projection source is not minimal: its self-map is not a "
                "permutation");
    // order of the permutation
    int order = 1;
    {
        std::vector<int> h = fmap;
        auto is_id = [&](const std::vector<int>& v) {
            for (int i = 0; i < static_cast<int>(v.size()); ++i)
                if (v[i] != i) return false;
            return true;
        };
        while (!is_id(h)) {
            for (int i = 0; i < s.size(); ++i) h[i] = fmap[h[i]];
            ++order;
        }
    }
    // P = E' ∘ (E ∘ E')^(n-1)
    FopAssignment p(sp.size());
    for (int x = 0; x < sp.size(); ++x) {
        int cur = x;
        for (int r = 0; r < order - 1; ++r) cur = e[(*ep)[cur]];
        p[x] = (*ep)[cur];
    }
    return p;
}

}  // namespace fpolab
