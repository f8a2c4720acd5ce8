#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "fpolab/core.hpp"

namespace fpolab {

// Frame-fixed canonical layout: inputs, outputs, then internals chosen one at
// a time to lexicographically minimize the incremental pair encoding (per
// placed element, the bits (prev<new, new<prev) against every previously
// placed element). Exact branch-and-bound: each depth keeps only candidates
// achieving the minimal segment, deduplicated by transposition symmetry.
inline std::vector<int> canon_layout(const Fpo& f) {
    std::vector<int> base;
    base.reserve(f.size());
    for (size_t k = 0; k < f.inputs().size(); ++k)
        base.push_back(f.input_at(static_cast<int>(k)));
    for (size_t k = 0; k < f.outputs().size(); ++k)
        base.push_back(f.output_at(static_cast<int>(k)));

    auto segment = [&](const std::vector<int>& laid, int e) {
        std::string s;
        s.reserve(2 * laid.size());
        for (int q : laid) {
            s += f.lt(q, e) ? '1' : '0';
            s += f.lt(e, q) ? '1' : '0';
        }
        return s;
    };
    // Transposing u,v leaves the relation matrix invariant.
    auto swappable = [&](int u, int v) {
        if (f.lt(u, v) || f.lt(v, u)) return false;
        for (int w = 0; w < f.size(); ++w) {
            if (w == u || w == v) continue;
            if (f.lt(u, w) != f.lt(v, w) || f.lt(w, u) != f.lt(w, v))
                return false;
        }
        return true;
    };

    std::string best_key;
    std::vector<int> best_laid;
    bool have_best = false;

    std::function<void(std::vector<int>&, const std::vector<int>&,
                       const std::string&)>
        bt = [&](std::vector<int>& laid, const std::vector<int>& remaining,
                 const std::string& prefix) {
            if (remaining.empty()) {
                if (!have_best || prefix < best_key) {
                    best_key = prefix;
                    best_laid = laid;
                    have_best = true;
                }
                return;
            }
            std::vector<std::string> segs(remaining.size());
            size_t lo = 0;
            for (size_t i = 0; i < remaining.size(); ++i) {
                segs[i] = segment(laid, remaining[i]);
                if (segs[i] < segs[lo]) lo = i;
            }
            std::vector<int> picks;
            for (size_t i = 0; i < remaining.size(); ++i) {
                if (segs[i] != segs[lo]) continue;
                bool dup = false;
                for (int p : picks)
                    if (swappable(remaining[i], p)) {
                        dup = true;
                        break;
                    }
                if (!dup) picks.push_back(remaining[i]);
            }
            for (int e : picks) {
                std::vector<int> rest;
                rest.reserve(remaining.size() - 1);
                for (int x : remaining)
                    if (x != e) rest.push_back(x);
                laid.push_back(e);
                bt(laid, rest, prefix + segs[lo]);
                laid.pop_back();
            }
        };

    std::vector<int> laid = base;
    bt(laid, f.internals(), std::string());
    return have_best ? best_laid : base;
}

inline std::string canon_key(const Fpo& f) {
    std::vector<int> laid = canon_layout(f);
    std::string bits;
    bits.reserve(static_cast<size_t>(f.size()) * f.size());
    for (size_t p = 0; p < laid.size(); ++p)
        for (size_t q = 0; q < p; ++q) {
            bits += f.lt(laid[q], laid[p]) ? '1' : '0';
            bits += f.lt(laid[p], laid[q]) ? '1' : '0';
        }
    return "m" + std::to_string(f.inputs().size()) + "n" +
           std::to_string(f.outputs().size()) + "k" +
           std::to_string(f.internals().size()) + ":" + bits;
}

// The same FPO relabelled into its canonical layout, ids "0".."N-1".
inline Fpo canon_fpo(const Fpo& f) {
    std::vector<int> laid = canon_layout(f);
    std::vector<std::string> ren(f.size());
    std::vector<std::string> elems;
    elems.reserve(laid.size());
    for (size_t i = 0; i < laid.size(); ++i) {
        ren[laid[i]] = std::to_string(i);
        elems.push_back(std::to_string(i));
    }
    std::vector<std::string> ins, outs;
    for (size_t k = 0; k < f.inputs().size(); ++k)
        ins.push_back(ren[f.input_at(static_cast<int>(k))]);
    for (size_t k = 0; k < f.outputs().size(); ++k)
        outs.push_back(ren[f.output_at(static_cast<int>(k))]);
    std::vector<IdPair> rel;
    for (int a = 0; a < f.size(); ++a)
        for (int b = 0; b < f.size(); ++b)
            if (f.lt(a, b)) rel.emplace_back(ren[a], ren[b]);
    return Fpo(elems, ins, outs, rel);
}

// Permute input positions by pi and output positions by sigma
// (new position k holds the old position pi[k] / sigma[k]).
inline Fpo frame_perm(const Fpo& f, const std::vector<int>& pi,
                      const std::vector<int>& sigma) {
    std::vector<std::string> ins, outs;
    for (size_t k = 0; k < f.inputs().size(); ++k)
        ins.push_back(f.inputs()[pi[k]]);
    for (size_t k = 0; k < f.outputs().size(); ++k)
        outs.push_back(f.outputs()[sigma[k]]);
    return Fpo(f.elements(), ins, outs, f.strict_pairs());
}

// Canonical keys of every frame permutation of f; the orbit representative is
// the lexicographic minimum.
inline std::set<std::string> orbit_keys(const Fpo& f) {
    std::set<std::string> keys;
    std::vector<int> pi(f.inputs().size()), sigma0(f.outputs().size());
    for (size_t i = 0; i < pi.size(); ++i) pi[i] = static_cast<int>(i);
    for (size_t i = 0; i < sigma0.size(); ++i) sigma0[i] = static_cast<int>(i);
    do {
        std::vector<int> sigma = sigma0;
        do {
            keys.insert(canon_key(frame_perm(f, pi, sigma)));
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    } while (std::next_permutation(pi.begin(), pi.end()));
    return keys;
}

inline std::string orbit_rep(const Fpo& f) { return *orbit_keys(f).begin(); }

}  // namespace fpolab
