#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qbg/affine.hpp"
#include "qbg/errors.hpp"
#include "qbg/intvec.hpp"
#include "qbg/qbg.hpp"
#include "qbg/regularity.hpp"

namespace qbg {

enum class MobiusMethod { Oracle, Deodhar, Superregular };

inline const char* mobius_method_name(MobiusMethod m) {
    switch (m) {
        case MobiusMethod::Oracle: return "oracle";
        case MobiusMethod::Deodhar: return "deodhar";
        case MobiusMethod::Superregular: return "superregular";
    }
    return "?";
}

// Value of the Mobius function mu of the Bruhat order on the affine
// Grassmannian elements W^0. When Deodhar's criterion reports zero, the
// witness is the element u s_i <= v (with its classical node i) placing the
// interval [u, v] partly outside W^0.
struct MobiusResult {
    int value = 0;
    MobiusMethod method = MobiusMethod::Oracle;
    std::optional<AffineElement> witness;
    int witness_node = 0; // classical nodes are 1-based, so 0 means no witness
};

// The Mobius function of the Bruhat order on W^0, computed three ways:
//
//   * mobius_oracle: the defining recursion mu(x,x) = 1 and
//     mu(x,y) = -sum_{x <= z < y, z in W^0} mu(x,z), evaluated over one
//     downward interval enumeration and memoized per left argument;
//   * mobius_deodhar: (-1)^{l(v)-l(u)} when no classical simple s_i has
//     u s_i <= v (equivalently, when [u,v] stays inside W^0), else 0 with
//     the offending u s_i as witness;
//   * mobius_superregular: the closed form for sufficiently regular
//     y = w t_lambda: nonzero exactly on x = w' t_{lambda + M(w,w')} with
//     sign (-1)^{l(y)-l(x)}, where M is the shortest-path weight in the
//     quantum Bruhat graph. Refuses with RegularityError when the profile
//     cannot certify the length gap, so harnesses can count fallbacks.
//
// elements_below(y) is the support {u t_{lambda + M(w,u)} : u in W_0} of
// mu(., y), certified at the largest support gap.
//
// The closed form follows the statement it implements: it needs no
// comparability hypothesis, returning 0 whenever the translation condition
// fails (which covers incomparable pairs, since the condition forces x <= y
// in the certified regime). The oracle and Deodhar's criterion require
// x <= y, as their recursions are only defined on intervals.
//
// Not safe for concurrent use: the context memoizes oracle rows and Bruhat
// comparisons. Parallel sweeps use one context per worker.
class MobiusContext {
public:
    MobiusContext(const AffineWeyl& aff, const QBGraph& graph, RegularityConfig cfg)
        : aff_(aff), g_(graph), cfg_(std::move(cfg)) {
        check_input(&aff_.classical() == &g_.group(),
                    "affine group and graph must share a Weyl group");
        check_input(aff_.convention() == g_.convention(),
                    "affine group and graph must share a convention");
    }

    const AffineWeyl& affine() const { return aff_; }
    const QBGraph& graph() const { return g_; }
    const RegularityConfig& config() const { return cfg_; }

    int mobius_oracle(const AffineElement& x, const AffineElement& y) const {
        require(aff_.is_affine_grassmannian(x) && aff_.is_affine_grassmannian(y),
                "mobius_oracle requires affine Grassmannian arguments");
        require(aff_.bruhat_leq(x, y, cache_), "mobius_oracle requires x <= y");
        auto& row = memo_[x];
        auto hit = row.find(y);
        if (hit != row.end()) return hit->second;

        std::vector<AffineElement> zs;
        std::vector<int> lens;
        for (AffineElement& z : aff_.interval(x, y)) {
            if (!aff_.is_affine_grassmannian(z)) continue;
            lens.push_back(aff_.length(z));
            zs.push_back(std::move(z));
        }
        check_internal(zs.front() == x && zs.back() == y,
                       "the W^0 interval must run from x to y");
        // interval() sorts by length, so each element only needs values that
        // are already filled; distinct elements of equal length are
        // incomparable and drop out of the sum
        for (size_t a = 0; a < zs.size(); ++a) {
            if (row.count(zs[a])) continue;
            int val = 1;
            if (zs[a] != x) {
                long long sum = 0;
                for (size_t b = 0; lens[b] < lens[a]; ++b)
                    if (aff_.bruhat_leq(zs[b], zs[a], cache_)) sum += row.at(zs[b]);
                val = (int)-sum;
            }
            row.emplace(zs[a], val);
        }
        return row.at(y);
    }

    MobiusResult mobius_deodhar(const AffineElement& u, const AffineElement& v) const {
        require(aff_.is_affine_grassmannian(u) && aff_.is_affine_grassmannian(v),
                "mobius_deodhar requires affine Grassmannian arguments");
        require(aff_.bruhat_leq(u, v, cache_), "mobius_deodhar requires u <= v");
        MobiusResult out;
        out.method = MobiusMethod::Deodhar;
        for (int i = 1; i <= aff_.rank(); ++i) {
            AffineElement usi = aff_.rmul_simple(u, i);
            if (aff_.bruhat_leq(usi, v, cache_)) {
                out.witness = std::move(usi);
                out.witness_node = i;
                return out;
            }
        }
        int gap = aff_.length(v) - aff_.length(u);
        out.value = gap % 2 == 0 ? 1 : -1;
        return out;
    }

    MobiusResult mobius_superregular(const AffineElement& x, const AffineElement& y) const {
        require(aff_.is_affine_grassmannian(x) && aff_.is_affine_grassmannian(y),
                "mobius_superregular requires affine Grassmannian arguments");
        int gap = aff_.length(y) - aff_.length(x);
        int m = std::max(1, gap);
        if (!aff_.is_superregular(y, cfg_, m))
            throw RegularityError(
                "the superregular mobius formula requires |<lambda, alpha_i>| >= " +
                std::to_string(chain_bound(cfg_, m)) + " (profile " +
                profile_name(cfg_.profile) + ", length gap " + std::to_string(m) + ")");
        MobiusResult out;
        out.method = MobiusMethod::Superregular;
        IntVec want = vec_add(y.t.c, g_.min_weight(y.w, x.w).weight);
        if (x.t.c == want) out.value = gap % 2 == 0 ? 1 : -1;
        return out;
    }

    // The support of mu(., y): exactly one element u t_{lambda + M(w,u)} per
    // classical u, sorted by (length, classical index, translation) like
    // interval(). Certified at the largest length gap the support realizes;
    // every member is verified to lie in W^0 and below y.
    std::vector<AffineElement> elements_below(const AffineElement& y) const {
        require(aff_.is_affine_grassmannian(y),
                "elements_below requires an affine Grassmannian argument");
        const WeylGroup& W = g_.group();
        int ly = aff_.length(y);
        int m = 1;
        std::vector<AffineElement> out;
        out.reserve(W.size());
        for (int u = 0; u < W.size(); ++u) {
            AffineElement x = aff_.make(
                W.element(u),
                CorootVector{vec_add(y.t.c, g_.min_weight(y.w, W.element(u)).weight)});
            m = std::max(m, ly - aff_.length(x));
            out.push_back(std::move(x));
        }
        if (!aff_.is_superregular(y, cfg_, m))
            throw RegularityError(
                "the superregular support formula requires |<lambda, alpha_i>| >= " +
                std::to_string(chain_bound(cfg_, m)) + " (profile " +
                profile_name(cfg_.profile) + ", length gap " + std::to_string(m) + ")");
        for (const AffineElement& x : out) {
            check_internal(aff_.is_affine_grassmannian(x),
                           "support elements must be affine Grassmannian");
            check_internal(aff_.bruhat_leq(x, y, cache_), "support elements must lie below y");
        }
        std::sort(out.begin(), out.end(), [&](const AffineElement& a, const AffineElement& b) {
            int la = aff_.length(a), lb = aff_.length(b);
            if (la != lb) return la < lb;
            if (a.w.idx != b.w.idx) return a.w.idx < b.w.idx;
            return a.t.c < b.t.c;
        });
        return out;
    }

private:
    using Row = std::unordered_map<AffineElement, int, AffineElementHash>;

    const AffineWeyl& aff_;
    const QBGraph& g_;
    RegularityConfig cfg_;
    mutable std::unordered_map<AffineElement, Row, AffineElementHash> memo_;
    mutable BruhatCache cache_;
};

} // namespace qbg
