#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qbg/cartan.hpp"
#include "qbg/errors.hpp"
#include "qbg/intvec.hpp"
#include "qbg/regularity.hpp"
#include "qbg/weyl.hpp"

namespace qbg {

// The affine Weyl group W = W_0 x translation lattice, elements written in the
// normal form x = w * t_lambda. Two conventions share one implementation:
//
//   untwisted: translations by the coroot lattice; the affine simple
//              reflection is s_0 = t_{theta^vee} s_theta = (s_theta, -theta^vee);
//   dual:      translations by the root lattice, roots and coroots exchanging
//              roles; s_0 = t_phi s_phi = (s_phi, -phi) with phi the highest
//              short root.
//
// Fixed conventions relied on throughout (pinned by fixture tests):
//   * multiplication  (w t_lambda)(v t_mu) = wv t_{v^{-1}(lambda) + mu};
//   * length  l(w t_lambda) = sum_{alpha > 0} |<lambda, alpha> + chi(w(alpha) < 0)|;
//   * the affine reflection r_{beta + n delta} has normal form (r_beta, n beta^vee)
//     (equivalently r_beta t_{n beta^vee} = t_{-n beta^vee} r_beta), the sign chosen
//     so that the four cover cases below reproduce their stated elements.

enum class Convention { Untwisted, Dual };

inline const char* convention_name(Convention c) {
    return c == Convention::Untwisted ? "untwisted" : "dual";
}

inline Convention convention_from_string(const std::string& s) {
    if (s == "untwisted") return Convention::Untwisted;
    if (s == "dual") return Convention::Dual;
    throw InvalidInputError("unknown convention: " + s);
}

struct AffineElement {
    WeylElement w;
    CorootVector t; // translation coordinates in the group's lattice

    bool operator==(const AffineElement& o) const { return w == o.w && t == o.t; }
    bool operator!=(const AffineElement& o) const { return !(*this == o); }
};

struct AffineElementHash {
    size_t operator()(const AffineElement& x) const {
        return hash_combine(WeylElementHash()(x.w), IntVecHash()(x.t.c));
    }
};

// The affine root beta + n*delta labeling a reflection; beta is positive.
struct AffineRoot {
    RootVector beta;
    int n = 0;

    bool operator==(const AffineRoot& o) const { return beta == o.beta && n == o.n; }
};

enum class CoverMode { Generic, Superregular };

struct Cover {
    AffineElement x;
    AffineRoot root;
};

// Memo shared across Bruhat comparisons of one query/sweep.
struct BruhatCache {
    struct KeyHash {
        size_t operator()(const std::pair<AffineElement, AffineElement>& p) const {
            return hash_combine(AffineElementHash()(p.first), AffineElementHash()(p.second));
        }
    };
    std::unordered_map<std::pair<AffineElement, AffineElement>, bool, KeyHash> memo;
};

class AffineWeyl {
public:
    explicit AffineWeyl(const WeylGroup& W0, Convention conv = Convention::Untwisted)
        : W_(W0), conv_(conv) {
        const RootSystem& rs = W_.root_system();
        if (!rs.is_irreducible())
            throw UnsupportedTypeError("affine groups require an irreducible root system");
        s0_root_idx_ = conv_ == Convention::Untwisted ? rs.highest_root_index()
                                                      : rs.highest_short_root_index();
        reflection_root_of_.assign(W_.size(), -1);
        for (int p = 0; p < rs.num_positive_roots(); ++p)
            reflection_root_of_[W_.reflection_idx(p)] = p;
        check_internal(length(simple_reflection(0)) == 1, "s_0 must have length 1");
    }

    AffineWeyl(const AffineWeyl&) = delete;
    AffineWeyl& operator=(const AffineWeyl&) = delete;

    const WeylGroup& classical() const { return W_; }
    const RootSystem& root_system() const { return W_.root_system(); }
    Convention convention() const { return conv_; }
    int rank() const { return W_.rank(); }

    AffineElement one() const { return {W_.identity(), CorootVector{IntVec(rank(), 0)}}; }

    AffineElement make(WeylElement w, CorootVector t) const {
        check_input(w.grp == &W_, "element from a different Weyl group");
        check_input((int)t.c.size() == rank(), "translation rank mismatch");
        return {w, std::move(t)};
    }

    AffineElement translation(const CorootVector& t) const { return make(W_.identity(), t); }

    // Lattice primitives; everything below is written against these, so the
    // two conventions differ only here.
    int tpair(const IntVec& t, int p) const {
        const RootSystem& rs = root_system();
        return conv_ == Convention::Untwisted
                   ? (int)vec_dot(rs.root_pairing_coefs(p), t)
                   : (int)vec_dot(rs.coroot_pairing_coefs(p), t);
    }
    IntVec act_translation(int w_idx, const IntVec& t) const {
        return conv_ == Convention::Untwisted ? W_.act_coroot_idx(w_idx, t)
                                              : W_.act_root_idx(w_idx, t);
    }
    const IntVec& reflection_shift(int p) const {
        const RootSystem& rs = root_system();
        return conv_ == Convention::Untwisted ? rs.positive_coroot(p).c
                                              : rs.positive_root(p).c;
    }
    // Length drop of a quantum edge with label alpha_p, minus one:
    // <alpha_p^vee, 2rho> untwisted, <2rho^vee, alpha_p> dual.
    int quantum_drop(int p) const {
        const RootSystem& rs = root_system();
        return conv_ == Convention::Untwisted
                   ? rs.pair(rs.positive_coroot(p), rs.two_rho())
                   : rs.pair(rs.two_rho_check(), rs.positive_root(p));
    }
    int s0_root_index() const { return s0_root_idx_; }

    AffineElement mul(const AffineElement& a, const AffineElement& b) const {
        check_same(a);
        check_same(b);
        int w = W_.mul_idx(a.w.idx, b.w.idx);
        IntVec t = act_translation(W_.inverse_idx(b.w.idx), a.t.c);
        return {W_.element(w), CorootVector{vec_add(t, b.t.c)}};
    }

    AffineElement inverse(const AffineElement& a) const {
        check_same(a);
        return {W_.inverse(a.w), CorootVector{vec_neg(act_translation(a.w.idx, a.t.c))}};
    }

    int length(const AffineElement& a) const {
        check_same(a);
        const RootSystem& rs = root_system();
        long long len = 0;
        for (int p = 0; p < rs.num_positive_roots(); ++p) {
            int v = tpair(a.t.c, p) + (W_.sends_root_negative(a.w.idx, p) ? 1 : 0);
            len += std::abs(v);
        }
        return (int)len;
    }

    // i = 0 is the affine node; i in [1, rank] is the classical s_i.
    AffineElement simple_reflection(int i) const {
        check_input(i >= 0 && i <= rank(), "simple reflection index out of range");
        if (i == 0) {
            int cls = W_.reflection_idx(s0_root_idx_);
            return {W_.element(cls), CorootVector{vec_neg(reflection_shift(s0_root_idx_))}};
        }
        return {W_.simple(i - 1), CorootVector{IntVec(rank(), 0)}};
    }

    AffineElement rmul_simple(const AffineElement& a, int i) const {
        check_same(a);
        check_input(i >= 0 && i <= rank(), "simple reflection index out of range");
        if (i == 0) return mul(a, simple_reflection(0));
        int cls = i - 1;
        return {W_.mul_simple(a.w, cls),
                CorootVector{act_translation(W_.simple(cls).idx, a.t.c)}};
    }

    AffineElement lmul_simple(int i, const AffineElement& a) const {
        check_same(a);
        check_input(i >= 0 && i <= rank(), "simple reflection index out of range");
        if (i == 0) return mul(simple_reflection(0), a);
        return {W_.element(W_.lmul_simple_idx(a.w.idx, i - 1)), a.t};
    }

    // r_{beta + n delta} = (r_beta, n beta^vee). beta may be given with either sign;
    // r_{-beta + n delta} = r_{beta - n delta} is normalized accordingly.
    AffineElement affine_reflection(const AffineRoot& r) const {
        const RootSystem& rs = root_system();
        int sign = 0;
        auto p = rs.signed_root_index(r.beta, &sign);
        check_input(p.has_value(), "affine_reflection: not a root");
        int n = sign < 0 ? -r.n : r.n;
        return {W_.element(W_.reflection_idx(*p)),
                CorootVector{vec_scale(n, reflection_shift(*p))}};
    }

    // If y^{-1} x is an affine reflection, return its label.
    std::optional<AffineRoot> reflection_between(const AffineElement& x,
                                                 const AffineElement& y) const {
        AffineElement r = mul(inverse(y), x);
        int p = reflection_root_of_[r.w.idx];
        if (p < 0) return std::nullopt;
        const IntVec& shift = reflection_shift(p);
        int n = 0;
        for (int c = 0; c < rank(); ++c)
            if (shift[c] != 0) {
                if (r.t.c[c] % shift[c] != 0) return std::nullopt;
                n = r.t.c[c] / shift[c];
                break;
            }
        if (r.t.c != vec_scale(n, shift)) return std::nullopt;
        return AffineRoot{root_system().positive_root(p), n};
    }

    bool is_cover(const AffineElement& x, const AffineElement& y) const {
        return length(x) + 1 == length(y) && reflection_between(x, y).has_value();
    }

    bool is_affine_grassmannian(const AffineElement& a) const {
        check_same(a);
        int len = length(a);
        for (int i = 1; i <= rank(); ++i)
            if (length(rmul_simple(a, i)) < len) return false;
        return true;
    }

    bool bruhat_leq(const AffineElement& x, const AffineElement& y) const {
        BruhatCache cache;
        return bruhat_leq(x, y, cache);
    }

    bool bruhat_leq(const AffineElement& x, const AffineElement& y, BruhatCache& cache) const {
        check_same(x);
        check_same(y);
        return leq_rec(x, length(x), y, length(y), cache, length(y) + 1);
    }

    // Covers of the Bruhat order below y, with the affine root labeling each.
    // Generic mode enumerates reflections within the window forced by the
    // length formula; superregular mode uses the four-case classification and
    // requires a certified translation part.
    std::vector<Cover> covers_below(const AffineElement& y, CoverMode mode,
                                    const RegularityConfig* cfg = nullptr) const {
        check_same(y);
        std::vector<Cover> out;
        if (mode == CoverMode::Generic) {
            generic_covers(y, out);
        } else {
            check_input(cfg != nullptr, "superregular covers need a regularity config");
            superregular_covers(y, *cfg, out);
        }
        std::sort(out.begin(), out.end(), [&](const Cover& a, const Cover& b) {
            int pa = *root_system().root_index(a.root.beta);
            int pb = *root_system().root_index(b.root.beta);
            if (pa != pb) return pa < pb;
            return a.root.n < b.root.n;
        });
        return out;
    }

    // The closed interval [x, y], sorted by (length, classical index, translation).
    std::vector<AffineElement> interval(const AffineElement& x, const AffineElement& y) const {
        BruhatCache cache;
        if (!bruhat_leq(x, y, cache)) throw PreconditionError("interval: x must be <= y");
        int floor_len = length(x);
        std::vector<AffineElement> result{y};
        std::unordered_map<AffineElement, bool, AffineElementHash> seen{{y, true}};
        std::vector<AffineElement> queue{y};
        std::vector<Cover> covers;
        for (size_t head = 0; head < queue.size(); ++head) {
            AffineElement z = queue[head];
            if (length(z) <= floor_len) continue;
            covers = covers_below(z, CoverMode::Generic);
            for (const Cover& c : covers) {
                if (length(c.x) < floor_len) continue;
                if (seen.count(c.x)) continue;
                seen.emplace(c.x, true);
                // every element of [x,y] is reachable from y by covers inside [x,y]
                if (!bruhat_leq(x, c.x, cache)) continue;
                result.push_back(c.x);
                queue.push_back(c.x);
            }
        }
        std::sort(result.begin(), result.end(), [&](const AffineElement& a, const AffineElement& b) {
            int la = length(a), lb = length(b);
            if (la != lb) return la < lb;
            if (a.w.idx != b.w.idx) return a.w.idx < b.w.idx;
            return a.t.c < b.t.c;
        });
        return result;
    }

    // y = w t_{v(lambda)} with lambda antidominant.
    struct Factorization {
        WeylElement w;
        WeylElement v;
        CorootVector lambda;
    };

    Factorization factor_antidominant(const AffineElement& y) const {
        check_same(y);
        IntVec lambda = y.t.c;
        int v = W_.identity().idx;
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 0; i < rank(); ++i) {
                int pr = tpair(lambda, i);
                if (pr > 0) {
                    lambda = vec_sub(lambda, vec_scale(pr, reflection_shift(i)));
                    v = W_.rmul_simple_idx(v, i);
                    changed = true;
                }
            }
        }
        return {y.w, W_.element(v), CorootVector{std::move(lambda)}};
    }

    bool is_translation_antidominant(const IntVec& t) const {
        for (int i = 0; i < rank(); ++i)
            if (tpair(t, i) > 0) return false;
        return true;
    }

    bool is_superregular(const AffineElement& y, const RegularityConfig& cfg, int m = 1) const {
        Factorization f = factor_antidominant(y);
        int bound = chain_bound(cfg, m);
        for (int i = 0; i < rank(); ++i)
            if (std::abs(tpair(f.lambda.c, i)) < bound) return false;
        return true;
    }

private:
    void check_same(const AffineElement& a) const {
        check_input(a.w.grp == &W_, "affine element from a different group");
        check_input((int)a.t.c.size() == rank(), "translation rank mismatch");
    }

    bool leq_rec(const AffineElement& x, int lx, const AffineElement& y, int ly,
                 BruhatCache& cache, int depth) const {
        if (depth < 0) throw InternalError("bruhat_leq: recursion depth exceeded");
        if (lx > ly) return false;
        if (x == y) return true;
        if (lx == ly || ly == 0) return false;
        auto key = std::make_pair(x, y);
        auto it = cache.memo.find(key);
        if (it != cache.memo.end()) return it->second;

        int i = 0;
        AffineElement sy = y;
        bool found = false;
        for (i = 0; i <= rank(); ++i) {
            sy = lmul_simple(i, y);
            if (length(sy) < ly) {
                found = true;
                break;
            }
        }
        check_internal(found, "non-identity element with no left descent");

        AffineElement sx = lmul_simple(i, x);
        bool ans;
        if (length(sx) < lx)
            ans = leq_rec(sx, lx - 1, sy, ly - 1, cache, depth - 1);
        else
            ans = leq_rec(x, lx, sy, ly - 1, cache, depth - 1);
        cache.memo.emplace(key, ans);
        return ans;
    }

    void generic_covers(const AffineElement& y, std::vector<Cover>& out) const {
        const RootSystem& rs = root_system();
        int ly = length(y);
        for (int p = 0; p < rs.num_positive_roots(); ++p) {
            int q = tpair(y.t.c, p);
            int refl = W_.reflection_idx(p);
            // |q + 2m| <= l(y) is necessary for l(y * r_{beta+n delta}) = l(y) - 1
            int lo = (-ly - q) / 2 - 1, hi = (ly - q) / 2 + 1;
            for (int m = lo; m <= hi; ++m) {
                if (std::abs(q + 2 * m) > ly) continue;
                AffineElement x{W_.element(W_.mul_idx(y.w.idx, refl)),
                                CorootVector{vec_add(y.t.c, vec_scale(m, reflection_shift(p)))}};
                if (length(x) != ly - 1) continue;
                out.push_back(Cover{std::move(x), AffineRoot{rs.positive_root(p), m + q}});
            }
        }
    }

    void superregular_covers(const AffineElement& y, const RegularityConfig& cfg,
                             std::vector<Cover>& out) const {
        const RootSystem& rs = root_system();
        if (!is_superregular(y, cfg, 1))
            throw RegularityError(
                "superregular cover enumeration requires |<lambda, alpha_i>| >= " +
                std::to_string(chain_bound(cfg, 1)) + " (profile " +
                profile_name(cfg.profile) + ")");
        Factorization f = factor_antidominant(y);
        int w = f.w.idx, v = f.v.idx;
        const IntVec& lam = f.lambda.c;
        int lwv = W_.length_idx(W_.mul_idx(w, v));
        int lv = W_.length_idx(v);

        auto emit = [&](int p, int n, int classical, IntVec t) {
            AffineElement x{W_.element(classical), CorootVector{std::move(t)}};
            // normalize the label to a positive root
            int sign = 0;
            int q = W_.root_image_idx(v, p, &sign);
            AffineRoot label{rs.positive_root(q), sign < 0 ? -n : n};
            check_internal(length(x) == length(y) - 1,
                           "superregular cover case produced a non-cover");
            out.push_back(Cover{std::move(x), label});
        };

        for (int p = 0; p < rs.num_positive_roots(); ++p) {
            int pairing = tpair(lam, p);
            int drop = quantum_drop(p);
            int sign = 0;
            int q = W_.root_image_idx(v, p, &sign);
            int r_valpha = W_.reflection_idx(q);
            int wv_r = W_.mul_idx(W_.mul_idx(w, v), W_.reflection_idx(p));
            int v_r = W_.mul_idx(v, W_.reflection_idx(p));
            int classical = W_.mul_idx(w, r_valpha);
            check_internal(classical == W_.mul_idx(wv_r, W_.inverse_idx(v)),
                           "w r_{v alpha} must equal (wv r_alpha) v^{-1}");

            // near covers: an edge wv -> wv r_alpha in the quantum Bruhat graph
            if (W_.length_idx(wv_r) == lwv + 1)
                emit(p, pairing, classical, act_translation(v, lam));
            if (W_.length_idx(wv_r) == lwv - (drop - 1))
                emit(p, pairing + 1, classical,
                     act_translation(v, vec_add(lam, reflection_shift(p))));
            // far covers: an edge v r_alpha -> v
            if (W_.length_idx(v_r) == lv - 1)
                emit(p, 0, classical, act_translation(v_r, lam));
            if (W_.length_idx(v_r) == lv + (drop - 1))
                emit(p, -1, classical, act_translation(v_r, vec_add(lam, reflection_shift(p))));
        }
    }

    const WeylGroup& W_;
    Convention conv_;
    int s0_root_idx_;
    std::vector<int> reflection_root_of_;
};

} // namespace qbg
