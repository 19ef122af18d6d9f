#pragma once

#include <algorithm>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qbg/mobius.hpp"

namespace qbg {

// Which Schubert basis a formal sum is written in: structure classes (O) or
// ideal classes (I), both indexed by affine Grassmannian elements.
enum class BasisTag { Structure, Ideal };

inline const char* basis_tag_name(BasisTag b) { return b == BasisTag::Structure ? "O" : "I"; }

// Integer combination of basis classes. Zero coefficients are never stored;
// the producing operations only emit affine Grassmannian keys.
struct FormalSum {
    BasisTag basis = BasisTag::Ideal;
    std::unordered_map<AffineElement, int, AffineElementHash> terms;

    void add(const AffineElement& x, int c) {
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(x, 0);
        (void)fresh;
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }

    int coeff(const AffineElement& x) const {
        auto it = terms.find(x);
        return it == terms.end() ? 0 : it->second;
    }

    bool operator==(const FormalSum& o) const { return basis == o.basis && terms == o.terms; }
    bool operator!=(const FormalSum& o) const { return !(*this == o); }

    // Terms ordered by (length, classical index, translation) for
    // deterministic listings.
    std::vector<std::pair<AffineElement, int>> sorted_terms(const AffineWeyl& aff) const {
        std::vector<std::pair<AffineElement, int>> out(terms.begin(), terms.end());
        std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
            int la = aff.length(a.first);
            int lb = aff.length(b.first);
            if (la != lb) return la < lb;
            if (a.first.w.idx != b.first.w.idx) return a.first.w.idx < b.first.w.idx;
            return a.first.t.c < b.first.t.c;
        });
        return out;
    }
};

// A structure-to-ideal rewrite with its truncation record: the sum holds the
// ideal coefficients of every element with length >= floor_length, and
// truncated says whether any interval walk was cut at the floor.
struct IdealExpansion {
    FormalSum sum;
    int floor_length = 0;
    bool truncated = false;
};

// Binds an affine group, its quantum Bruhat graph, and a regularity profile
// for the basis changes between structure and ideal classes. The expansion of
// an ideal class is the alternating sum over the Weyl group whose terms and
// signs come from the graph's shortest paths, so it needs the same
// superregularity certificate as the closed Mobius formula. Not safe for
// concurrent use from multiple threads; create one context per worker.
class KTheoryContext {
public:
    KTheoryContext(const AffineWeyl& aff, const QBGraph& graph, RegularityConfig cfg)
        : mob_(aff, graph, std::move(cfg)) {}

    const AffineWeyl& affine() const { return mob_.affine(); }
    const QBGraph& graph() const { return mob_.graph(); }
    const RegularityConfig& config() const { return mob_.config(); }

    // O_y as a sum of ideal classes: coefficient one on every Grassmannian
    // element below y.
    FormalSum structure_in_ideal(const AffineElement& y) const {
        const AffineWeyl& aff = mob_.affine();
        require(aff.is_affine_grassmannian(y),
                "structure_in_ideal requires an affine Grassmannian argument");
        FormalSum out;
        out.basis = BasisTag::Ideal;
        for (const AffineElement& z : aff.interval(aff.one(), y))
            if (aff.is_affine_grassmannian(z)) out.add(z, 1);
        return out;
    }

    // I_y as an alternating sum of structure classes: for y = w t_lambda the
    // u term is (-1)^hops O at u t_{lambda + M(w, u)}, with hops counting a
    // shortest path w -> u in the graph. Throws RegularityError when the
    // translation is too shallow to certify the supporting chains.
    FormalSum ideal_in_structure(const AffineElement& y) const {
        FormalSum out;
        out.basis = BasisTag::Structure;
        for (const AffineElement& x : mob_.elements_below(y)) {
            int hops = mob_.graph().min_weight(y.w, x.w).hops;
            out.add(x, hops % 2 == 0 ? 1 : -1);
        }
        return out;
    }

    // Rewrites a structure-basis sum into the ideal basis by expanding every
    // O term, keeping only coefficients of elements with length >=
    // floor_length. The downward walks prune at the floor, so the cost stays
    // proportional to the retained shells; floor_length <= 0 expands fully.
    IdealExpansion to_ideal_basis(const FormalSum& s, int floor_length) const {
        check_input(s.basis == BasisTag::Structure,
                    "ideal-basis expansion needs a structure-basis sum");
        const AffineWeyl& aff = mob_.affine();
        IdealExpansion out;
        out.floor_length = floor_length;
        out.sum.basis = BasisTag::Ideal;
        for (const auto& term : s.terms) {
            const AffineElement& top = term.first;
            require(aff.is_affine_grassmannian(top),
                    "ideal-basis expansion requires Grassmannian terms");
            if (aff.length(top) < floor_length) {
                out.truncated = true;
                continue;
            }
            std::unordered_set<AffineElement, AffineElementHash> seen;
            std::vector<AffineElement> queue = {top};
            seen.insert(top);
            for (size_t head = 0; head < queue.size(); ++head) {
                AffineElement z = queue[head];
                if (aff.is_affine_grassmannian(z)) out.sum.add(z, term.second);
                if (floor_length > 0 && aff.length(z) == floor_length) {
                    out.truncated = true;
                    continue;
                }
                for (const Cover& c : aff.covers_below(z, CoverMode::Generic))
                    if (seen.insert(c.x).second) queue.push_back(c.x);
            }
        }
        return out;
    }

private:
    MobiusContext mob_;
};

} // namespace qbg
