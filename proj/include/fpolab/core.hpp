#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fpolab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CycleError : Error { using Error::Error; };
struct FopValidationError : Error { using Error::Error; };
struct ClassMismatchError : Error { using Error::Error; };
struct NotEquivalentError : Error { using Error::Error; };
struct NotCausalRelevantError : Error { using Error::Error; };
struct UnknownName : Error { using Error::Error; };
struct QuotientCycleError : Error { using Error::Error; };
struct NotCliffordError : Error { using Error::Error; };
struct DimensionError : Error { using Error::Error; };
struct LocalisationError : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };

struct FpoClass {
    int m = 0;
    int n = 0;
    bool operator==(const FpoClass&) const = default;
};

using IdPair = std::pair<std::string, std::string>;

// Finite poset with ordered input/output frames. The strict relation is a
// dense boolean matrix kept transitively closed at all times. Construction
// closes any generating set and rejects cycles; frame extremality is *not*
// enforced here (validate_fpo reports it) so windowed/raw orders remain
// representable as plain data.
class Fpo {
public:
    Fpo() = default;

    Fpo(std::vector<std::string> elements, std::vector<std::string> inputs,
        std::vector<std::string> outputs, const std::vector<IdPair>& relations)
        : elements_(std::move(elements)), inputs_(std::move(inputs)),
          outputs_(std::move(outputs)) {
        const int n = size();
        for (int i = 0; i < n; ++i) {
            if (!index_.emplace(elements_[i], i).second)
                throw FopValidationError("duplicate element id: " + elements_[i]);
        }
        for (const auto& id : inputs_)
            if (!index_.count(id))
                throw FopValidationError("unknown input id: " + id);
        for (const auto& id : outputs_)
            if (!index_.count(id))
                throw FopValidationError("unknown output id: " + id);
        lt_.assign(static_cast<size_t>(n) * n, 0);
        std::vector<IdPair> gen;
        gen.reserve(relations.size());
        for (const auto& [a, b] : relations) {
            auto ia = index_.find(a), ib = index_.find(b);
            if (ia == index_.end() || ib == index_.end())
                throw FopValidationError("relation references unknown id: " +
                                         (ia == index_.end() ? a : b));
            if (ia->second == ib->second)
                throw CycleError("cycle: " + a + " < " + a);
            lt_[static_cast<size_t>(ia->second) * n + ib->second] = 1;
            gen.emplace_back(a, b);
        }
        close_and_check(gen);
        roles_.assign(n, 0);
        for (const auto& id : inputs_) roles_[index_.at(id)] = 1;
        for (const auto& id : outputs_) {
            int i = index_.at(id);
            if (roles_[i] != 0) frame_overlap_ = true;  // validate_fpo reports
            roles_[i] = 2;
        }
        for (int i = 0; i < n; ++i)
            if (roles_[i] == 0) internal_.push_back(i);
    }

    int size() const { return static_cast<int>(elements_.size()); }
    FpoClass cls() const {
        return {static_cast<int>(inputs_.size()),
                static_cast<int>(outputs_.size())};
    }

    bool lt(int a, int b) const {
        return lt_[static_cast<size_t>(a) * size() + b] != 0;
    }
    bool leq(int a, int b) const { return a == b || lt(a, b); }

    const std::vector<std::string>& elements() const { return elements_; }
    const std::vector<std::string>& inputs() const { return inputs_; }
    const std::vector<std::string>& outputs() const { return outputs_; }
    const std::vector<int>& internals() const { return internal_; }

    const std::string& id(int i) const { return elements_[i]; }
    int index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end())
            throw FopValidationError("unknown element id: " + id);
        return it->second;
    }
    bool has_element(const std::string& id) const {
        return index_.count(id) != 0;
    }

    bool is_input(int i) const { return roles_[i] == 1; }
    bool is_output(int i) const { return roles_[i] == 2; }
    bool is_internal(int i) const { return roles_[i] == 0; }
    bool frame_overlap() const { return frame_overlap_; }

    int input_at(int k) const { return index_.at(inputs_[k]); }
    int output_at(int k) const { return index_.at(outputs_[k]); }

    // Induced suborder on a subset of elements; the frame must survive.
    Fpo restricted(const std::vector<int>& keep) const {
        std::vector<uint8_t> in_keep(size(), 0);
        for (int i : keep) in_keep[i] = 1;
        for (const auto& id : inputs_)
            if (!in_keep[index_.at(id)])
                throw FopValidationError("restriction drops input " + id);
        for (const auto& id : outputs_)
            if (!in_keep[index_.at(id)])
                throw FopValidationError("restriction drops output " + id);
        std::vector<std::string> elems;
        std::vector<IdPair> rel;
        for (int i = 0; i < size(); ++i)
            if (in_keep[i]) elems.push_back(elements_[i]);
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j)
                if (in_keep[i] && in_keep[j] && lt(i, j))
                    rel.emplace_back(elements_[i], elements_[j]);
        return Fpo(elems, inputs_, outputs_, rel);
    }

    // Ordered pairs x <= y, reflexive pairs included.
    long relation_count() const {
        long c = size();
        for (uint8_t b : lt_) c += b;
        return c;
    }

    std::vector<IdPair> strict_pairs() const {
        std::vector<IdPair> out;
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j)
                if (lt(i, j)) out.emplace_back(elements_[i], elements_[j]);
        return out;
    }

private:
    void close_and_check(const std::vector<IdPair>& generators) {
        const int n = size();
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) {
                if (!lt_[static_cast<size_t>(i) * n + k]) continue;
                for (int j = 0; j < n; ++j)
                    if (lt_[static_cast<size_t>(k) * n + j])
                        lt_[static_cast<size_t>(i) * n + j] = 1;
            }
        for (int s = 0; s < n; ++s) {
            if (!lt_[static_cast<size_t>(s) * n + s]) continue;
            // Reconstruct a witness cycle by BFS over the generating edges.
            std::vector<std::vector<int>> adj(n);
            for (const auto& [a, b] : generators)
                adj[index_.at(a)].push_back(index_.at(b));
            std::vector<int> prev(n, -2);
            std::deque<int> q{s};
            prev[s] = -1;
            while (!q.empty()) {
                int u = q.front();
                q.pop_front();
                for (int v : adj[u]) {
                    if (v == s) {
                        std::string msg = "cycle: " + elements_[s];
                        std::vector<int> path;
                        for (int w = u; w != -1; w = prev[w]) path.push_back(w);
                        for (auto it = path.rbegin(); it != path.rend(); ++it)
                            msg += " < " + elements_[*it];
                        msg += " < " + elements_[s];
                        throw CycleError(msg);
                    }
                    if (prev[v] == -2) {
                        prev[v] = u;
                        q.push_back(v);
                    }
                }
            }
            throw CycleError("cycle through " + elements_[s]);
        }
    }

    std::vector<std::string> elements_, inputs_, outputs_;
    std::vector<uint8_t> lt_;
    std::vector<uint8_t> roles_;
    std::vector<int> internal_;
    std::unordered_map<std::string, int> index_;
    bool frame_overlap_ = false;
};

// ---------------------------------------------------------------------------
// Standalone closure over id pairs (same semantics as the Fpo constructor,
// usable without committing to frames).
inline std::vector<IdPair> transitive_closure(
    const std::vector<IdPair>& pairs,
    const std::vector<std::string>& elements) {
    Fpo f(elements, {}, {}, pairs);  // throws CycleError with a witness
    return f.strict_pairs();
}

// Covering pairs: a < b with no c strictly between.
inline std::vector<IdPair> hasse_reduction(const Fpo& f) {
    std::vector<IdPair> out;
    const int n = f.size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!f.lt(a, b)) continue;
            bool covered = true;
            for (int c = 0; c < n && covered; ++c)
                if (c != a && c != b && f.lt(a, c) && f.lt(c, b))
                    covered = false;
            if (covered) out.emplace_back(f.id(a), f.id(b));
        }
    return out;
}

struct Violation {
    std::string code;     // stable machine identifier
    std::string witness;  // human-readable culprit
};

// Structural checks. Cycle-freedom and closure hold by construction; what can
// still go wrong is the framing.
inline std::vector<Violation> validate_fpo(const Fpo& f,
                                           bool check_extremal = true) {
    std::vector<Violation> v;
    {
        std::set<std::string> seen;
        for (const auto& id : f.inputs())
            if (!seen.insert(id).second)
                v.push_back({"duplicate-input", id});
        seen.clear();
        for (const auto& id : f.outputs())
            if (!seen.insert(id).second)
                v.push_back({"duplicate-output", id});
    }
    if (f.frame_overlap()) {
        std::set<std::string> ins(f.inputs().begin(), f.inputs().end());
        for (const auto& id : f.outputs())
            if (ins.count(id)) v.push_back({"frames-overlap", id});
    }
    if (!check_extremal) return v;
    const int n = f.size();
    for (const auto& id : f.inputs()) {
        int i = f.index_of(id);
        for (int j = 0; j < n; ++j)
            if (f.lt(j, i)) {
                v.push_back({"input-not-minimal", f.id(j) + " < " + id});
                break;
            }
    }
    for (const auto& id : f.outputs()) {
        int i = f.index_of(id);
        for (int j = 0; j < n; ++j)
            if (f.lt(i, j)) {
                v.push_back({"output-not-maximal", id + " < " + f.id(j)});
                break;
            }
    }
    return v;
}

inline void require_valid(const Fpo& f, bool check_extremal = true) {
    auto v = validate_fpo(f, check_extremal);
    if (!v.empty())
        throw FopValidationError(v.front().code + ": " + v.front().witness);
}

struct ChainReport {
    int height = 0;           // longest chain (element count)
    int width = 0;            // largest antichain
    long relation_count = 0;  // reflexive pairs included
    int hasse_edge_count = 0;
};

namespace detail {
// Maximum bipartite matching (Kuhn) used for the Dilworth width computation.
inline bool kuhn_try(int u, const std::vector<std::vector<int>>& adj,
                     std::vector<int>& match_r, std::vector<uint8_t>& used) {
    for (int v : adj[u]) {
        if (used[v]) continue;
        used[v] = 1;
        if (match_r[v] < 0 || kuhn_try(match_r[v], adj, match_r, used)) {
            match_r[v] = u;
            return true;
        }
    }
    return false;
}
}  // namespace detail

inline ChainReport chain_report(const Fpo& f) {
    ChainReport r;
    const int n = f.size();
    r.relation_count = f.relation_count();
    r.hasse_edge_count = static_cast<int>(hasse_reduction(f).size());
    // height: longest path in the closed DAG
    {
        std::vector<int> order(n), depth(n, 1);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (f.lt(a, b)) return true;
            if (f.lt(b, a)) return false;
            return a < b;
        });
        for (int a : order)
            for (int b = 0; b < n; ++b)
                if (f.lt(a, b)) depth[b] = std::max(depth[b], depth[a] + 1);
        for (int i = 0; i < n; ++i) r.height = std::max(r.height, depth[i]);
    }
    // width: Dilworth, n minus a maximum matching in the comparability
    // bipartite graph
    {
        std::vector<std::vector<int>> adj(n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (f.lt(a, b)) adj[a].push_back(b);
        std::vector<int> match_r(n, -1);
        int matched = 0;
        for (int u = 0; u < n; ++u) {
            std::vector<uint8_t> used(n, 0);
            if (detail::kuhn_try(u, adj, match_r, used)) ++matched;
        }
        r.width = n - matched;
    }
    return r;
}

// Disjoint union; inputs/outputs concatenate left-then-right. Colliding ids on
// the right acquire the least number of primes making them fresh.
inline Fpo parallel_compose(const Fpo& a, const Fpo& b) {
    std::set<std::string> taken(a.elements().begin(), a.elements().end());
    std::unordered_map<std::string, std::string> ren;
    std::vector<std::string> elems = a.elements();
    for (const auto& id : b.elements()) {
        std::string fresh = id;
        while (taken.count(fresh)) fresh += "'";
        taken.insert(fresh);
        ren[id] = fresh;
        elems.push_back(fresh);
    }
    auto renamed = [&](const std::vector<std::string>& xs) {
        std::vector<std::string> out;
        for (const auto& x : xs) out.push_back(ren.at(x));
        return out;
    };
    std::vector<std::string> ins = a.inputs(), outs = a.outputs();
    for (const auto& x : renamed(b.inputs())) ins.push_back(x);
    for (const auto& x : renamed(b.outputs())) outs.push_back(x);
    std::vector<IdPair> rel = a.strict_pairs();
    for (const auto& [x, y] : b.strict_pairs())
        rel.emplace_back(ren.at(x), ren.at(y));
    return Fpo(elems, ins, outs, rel);
}

// ConInt(x): every element reachable from x along comparability steps whose
// intermediate elements are all internal. Returns the distinct such sets.
inline std::vector<std::vector<int>> internal_connection_components(
    const Fpo& f) {
    const int n = f.size();
    std::set<std::vector<int>> distinct;
    for (int x = 0; x < n; ++x) {
        std::vector<uint8_t> seen(n, 0);
        seen[x] = 1;
        std::deque<int> q{x};
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            if (u != x && !f.is_internal(u)) continue;  // frame blocks paths
            for (int v = 0; v < n; ++v)
                if (!seen[v] && (f.lt(u, v) || f.lt(v, u))) {
                    seen[v] = 1;
                    q.push_back(v);
                }
        }
        std::vector<int> comp;
        for (int i = 0; i < n; ++i)
            if (seen[i]) comp.push_back(i);
        distinct.insert(comp);
    }
    return {distinct.begin(), distinct.end()};
}

// Plain comparability components (an isolated element is its own component).
inline std::vector<std::vector<int>> connected_components(const Fpo& f) {
    const int n = f.size();
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = nc;
        std::deque<int> q{s};
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int v = 0; v < n; ++v)
                if (comp[v] < 0 && (f.lt(u, v) || f.lt(v, u))) {
                    comp[v] = nc;
                    q.push_back(v);
                }
        }
        ++nc;
    }
    std::vector<std::vector<int>> out(nc);
    for (int i = 0; i < n; ++i) out[comp[i]].push_back(i);
    return out;
}

// Every internal element is below at least one other element.
inline bool causal_relevant(const Fpo& f) {
    for (int x : f.internals()) {
        bool below = false;
        for (int j = 0; j < f.size() && !below; ++j) below = f.lt(x, j);
        if (!below) return false;
    }
    return true;
}

// Causally relevant and no element lies below any internal element.
inline bool markov_relevant(const Fpo& f) {
    if (!causal_relevant(f)) return false;
    for (int x : f.internals())
        for (int j = 0; j < f.size(); ++j)
            if (f.lt(j, x)) return false;
    return true;
}

inline bool deterministic_relevant(const Fpo& f) {
    return f.internals().empty();
}

}  // namespace fpolab
