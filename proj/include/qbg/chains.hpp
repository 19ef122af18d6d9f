#pragma once

#include <optional>
#include <vector>

#include "qbg/affine.hpp"
#include "qbg/errors.hpp"
#include "qbg/qbg.hpp"
#include "qbg/regularity.hpp"

namespace qbg {

enum class CoverKind { Near, Far };

inline const char* cover_kind_name(CoverKind k) { return k == CoverKind::Near ? "near" : "far"; }

// A cover x < y classified against the four-case picture: case 1 near Bruhat,
// case 2 near quantum, case 3 far Bruhat, case 4 far quantum. The edge is the
// graph edge the cover bijects with: wv -> wv r_alpha for near covers,
// v r_alpha -> v for far covers.
struct CoverClass {
    CoverKind kind = CoverKind::Near;
    int case_index = 0;
    QBGEdge edge;
};

// The near/far data of a saturated chain with top y = w t_{v(lambda)}: r_n
// and r_f multiply the near/far reflection labels in top-down chain order,
// the near path runs wv -> wv r_n, and the far path runs v r_f -> v. The
// bottom element is w v r_n (v r_f)^{-1} t_{v r_f(lambda + wt(P_n) + wt(P_f))}.
struct ChainDecomposition {
    AffineElement top;
    AffineWeyl::Factorization base;
    WeylElement r_n;
    WeylElement r_f;
    QBGPath near_path;
    QBGPath far_path;
};

// Which segment of a transported chain sits directly below the top element.
// The near and far segments commute, so both orders realize the same paths
// and the same bottom element through different middle elements.
enum class SegmentOrder { NearAboveFar, FarAboveNear };

// Result of the 2-loop boundary test on a length-2 interval inside the affine
// Grassmannian: when the near path of x < z < y is a 2-loop with simple label
// alpha, the second middle element u = w s_alpha t_{s_alpha(lambda + alpha shift)}
// of [x, y] falls outside the Grassmannian.
struct BoundaryCheck {
    bool violated = false;
    std::optional<AffineElement> witness;
    int loop_root = -1; // simple-root index of the 2-loop label, -1 if none
};

// Binds an affine group, its quantum Bruhat graph, and a regularity profile.
// The profile only certifies bounds (see certified()); the operations below
// verify every produced element directly, so they succeed on any input whose
// covers match the four-case picture and throw RegularityError otherwise.
class ChainContext {
public:
    ChainContext(const AffineWeyl& aff, const QBGraph& graph, RegularityConfig cfg)
        : aff_(aff), g_(graph), cfg_(std::move(cfg)) {
        check_input(&aff_.classical() == &g_.group(),
                    "affine group and graph must share a Weyl group");
        check_input(aff_.convention() == g_.convention(),
                    "affine group and graph must share a convention");
    }

    const AffineWeyl& affine() const { return aff_; }
    const QBGraph& graph() const { return g_; }
    const RegularityConfig& config() const { return cfg_; }

    // True when the profile's bound guarantees the four-case picture for
    // every saturated chain of m covers below y.
    bool certified(const AffineElement& y, int m = 1) const {
        return aff_.is_superregular(y, cfg_, m);
    }

    // Classifies a cover x < y. The affine root is solved exactly from
    // y^{-1} x, and every case test is evaluated in full (length condition,
    // reflection level, and the closed form for x), so a wrong convention or
    // insufficient regularity surfaces as zero matches, never a wrong answer.
    CoverClass classify_cover(const AffineElement& x, const AffineElement& y) const {
        require(aff_.is_cover(x, y), "classify_cover requires x covered by y");
        const WeylGroup& W = g_.group();
        AffineWeyl::Factorization f = aff_.factor_antidominant(y);

        // x = y r_{beta + n delta} with beta positive; write beta = +-v(alpha)
        AffineRoot rb = *aff_.reflection_between(x, y);
        int beta_p = *aff_.root_system().root_index(rb.beta);
        int sign = 0;
        int alpha_p = W.root_image_idx(W.inverse_idx(f.v.idx), beta_p, &sign);
        int n = sign > 0 ? rb.n : -rb.n;

        int q = aff_.tpair(f.lambda.c, alpha_p);
        int drop = aff_.quantum_drop(alpha_p);
        IntVec shifted = vec_add(f.lambda.c, aff_.reflection_shift(alpha_p));
        int wv = W.mul_idx(f.w.idx, f.v.idx);
        int wv_ra = W.mul_idx(wv, W.reflection_idx(alpha_p));
        int v_ra = W.mul_idx(f.v.idx, W.reflection_idx(alpha_p));
        WeylElement xw = W.element(W.mul_idx(wv_ra, W.inverse_idx(f.v.idx)));

        auto is_x = [&](int v_img, const IntVec& mu) {
            return x == aff_.make(xw, CorootVector{aff_.act_translation(v_img, mu)});
        };
        bool c1 = W.length_idx(wv_ra) == W.length_idx(wv) + 1 && n == q &&
                  is_x(f.v.idx, f.lambda.c);
        bool c2 = W.length_idx(wv_ra) == W.length_idx(wv) - (drop - 1) && n == q + 1 &&
                  is_x(f.v.idx, shifted);
        bool c3 = W.length_idx(v_ra) == W.length_idx(f.v.idx) - 1 && n == 0 &&
                  is_x(v_ra, f.lambda.c);
        bool c4 = W.length_idx(v_ra) == W.length_idx(f.v.idx) + drop - 1 && n == -1 &&
                  is_x(v_ra, shifted);
        int matches = (int)c1 + (int)c2 + (int)c3 + (int)c4;
        if (matches == 0)
            throw RegularityError("cover does not match any of the four cases; "
                                  "the upper element is not regular enough");
        check_internal(matches == 1, "cover cases must be disjoint");

        CoverClass out;
        out.case_index = c1 ? 1 : c2 ? 2 : c3 ? 3 : 4;
        out.kind = out.case_index <= 2 ? CoverKind::Near : CoverKind::Far;
        std::optional<QBGEdge> e =
            out.kind == CoverKind::Near
                ? g_.edge_between(W.element(wv), W.element(wv_ra))
                : g_.edge_between(W.element(v_ra), f.v);
        // the matched length condition is the graph's edge condition, so the
        // edge must exist and carry the solved label
        check_internal(e.has_value() && e->root_p == alpha_p,
                       "cover must biject with a graph edge labeled alpha");
        EdgeKind want = out.case_index % 2 == 1 ? EdgeKind::Bruhat : EdgeKind::Quantum;
        check_internal(e->kind == want, "cover case and edge kind must agree");
        out.edge = *e;
        return out;
    }

    // Decomposes a saturated chain, listed bottom to top, into its near and
    // far paths and reflection products. Covers are read from the top down,
    // so the first edge of each path corresponds to the cover nearest the top.
    ChainDecomposition decompose_chain(const std::vector<AffineElement>& chain) const {
        check_input(!chain.empty(), "chain must be nonempty");
        const WeylGroup& W = g_.group();
        int m = (int)chain.size() - 1;
        for (int i = 0; i < m; ++i)
            check_input(aff_.is_cover(chain[i], chain[i + 1]),
                        "consecutive chain elements must be covers");

        ChainDecomposition d;
        d.top = chain.back();
        d.base = aff_.factor_antidominant(d.top);
        WeylElement wv = W.mul(d.base.w, d.base.v);
        d.near_path = g_.trivial_path(wv);
        d.r_n = W.identity();
        d.r_f = W.identity();
        std::vector<QBGEdge> far_rev;
        for (int i = m - 1; i >= 0; --i) {
            CoverClass c = classify_cover(chain[i], chain[i + 1]);
            WeylElement r_alpha = W.element(W.reflection_idx(c.edge.root_p));
            if (c.kind == CoverKind::Near) {
                if (c.edge.source != d.near_path.target())
                    throw RegularityError("regularity degraded: near edges do not chain");
                d.near_path.vertices.push_back(c.edge.target);
                d.near_path.edges.push_back(c.edge);
                d.r_n = W.mul(d.r_n, r_alpha);
            } else {
                if (c.edge.target != (far_rev.empty() ? d.base.v : far_rev.back().source))
                    throw RegularityError("regularity degraded: far edges do not chain");
                far_rev.push_back(c.edge);
                d.r_f = W.mul(d.r_f, r_alpha);
            }
        }
        if (far_rev.empty()) {
            d.far_path = g_.trivial_path(d.base.v);
        } else {
            d.far_path.vertices.push_back(far_rev.back().source);
            for (auto it = far_rev.rbegin(); it != far_rev.rend(); ++it) {
                d.far_path.vertices.push_back(it->target);
                d.far_path.edges.push_back(*it);
            }
        }
        check_internal(d.near_path.target() == W.mul(wv, d.r_n),
                       "near path must end at w v r_n");
        check_internal(d.far_path.source() == W.mul(d.base.v, d.r_f),
                       "far path must start at v r_f");
        return d;
    }

    // Evaluates x = w v r_n (v r_f)^{-1} t_{v r_f(lambda + wt(P_n) + wt(P_f))}.
    AffineElement reconstruct_bottom(const ChainDecomposition& d) const {
        const WeylGroup& W = g_.group();
        check_input(d.top == aff_.make(d.base.w, CorootVector{aff_.act_translation(
                                                     d.base.v.idx, d.base.lambda.c)}),
                    "top element does not match its factorization");
        WeylElement wv = W.mul(d.base.w, d.base.v);
        WeylElement vrf = W.mul(d.base.v, d.r_f);
        check_input(d.near_path.source() == wv && d.near_path.target() == W.mul(wv, d.r_n),
                    "near path must run from wv to w v r_n");
        check_input(d.far_path.source() == vrf && d.far_path.target() == d.base.v,
                    "far path must run from v r_f to v");
        IntVec mu = vec_add(d.base.lambda.c, vec_add(g_.path_weight(d.near_path),
                                                     g_.path_weight(d.far_path)));
        WeylElement cls = W.mul(W.mul(wv, d.r_n), W.inverse(vrf));
        return aff_.make(cls, CorootVector{aff_.act_translation(vrf.idx, mu)});
    }

    // Realizes alternative near/far paths as a saturated chain with the same
    // top and bottom, returned bottom to top. The alternatives must share
    // endpoints, hop count, and weight with the decomposition's paths (the
    // invariants every interval-equivalent path shares). The near and far
    // segments commute; `order` picks which sits directly below the top.
    // Every emitted step is checked to be a cover, so degraded regularity
    // surfaces as an error rather than an invalid chain.
    std::vector<AffineElement> transport_chain(
        const ChainDecomposition& d, const QBGPath& near_alt, const QBGPath& far_alt,
        SegmentOrder order = SegmentOrder::NearAboveFar) const {
        g_.validate_path(near_alt);
        g_.validate_path(far_alt);
        require(near_alt.source() == d.near_path.source() &&
                    near_alt.target() == d.near_path.target() &&
                    near_alt.hops() == d.near_path.hops() &&
                    g_.path_weight(near_alt) == g_.path_weight(d.near_path),
                "near path must match the decomposition's endpoints, length, and weight");
        require(far_alt.source() == d.far_path.source() &&
                    far_alt.target() == d.far_path.target() &&
                    far_alt.hops() == d.far_path.hops() &&
                    g_.path_weight(far_alt) == g_.path_weight(d.far_path),
                "far path must match the decomposition's endpoints, length, and weight");

        std::vector<AffineElement> down = {d.top};
        auto emit_near_segment = [&] {
            for (const QBGEdge& e : near_alt.edges) down.push_back(emit_near(down.back(), e));
        };
        auto emit_far_segment = [&] {
            for (int i = far_alt.hops() - 1; i >= 0; --i)
                down.push_back(emit_far(down.back(), far_alt.edges[i]));
        };
        if (order == SegmentOrder::NearAboveFar) {
            emit_near_segment();
            emit_far_segment();
        } else {
            emit_far_segment();
            emit_near_segment();
        }
        check_internal(down.back() == reconstruct_bottom(d),
                       "transported chain must end at the decomposed bottom");
        return std::vector<AffineElement>(down.rbegin(), down.rend());
    }

    // Tests a length-2 interval [x, y] inside the affine Grassmannian: the
    // interval leaves the Grassmannian exactly when the near path of the
    // given chain x < z < y is a 2-loop, in which case the excluded middle
    // element is returned as witness.
    BoundaryCheck detect_boundary_violation(const AffineElement& x, const AffineElement& z,
                                            const AffineElement& y) const {
        require(aff_.length(y) - aff_.length(x) == 2,
                "boundary detection requires a length gap of exactly 2");
        require(aff_.is_cover(x, z) && aff_.is_cover(z, y),
                "boundary detection requires a saturated chain x < z < y");
        require(aff_.is_affine_grassmannian(x) && aff_.is_affine_grassmannian(z) &&
                    aff_.is_affine_grassmannian(y),
                "boundary detection requires Grassmannian elements");

        ChainDecomposition d = decompose_chain({x, z, y});
        // between Grassmannian endpoints the far path is a closed loop at the
        // identity, and no single edge loops, so both covers must be near
        if (d.near_path.hops() != 2)
            throw RegularityError("regularity degraded: a Grassmannian chain of two "
                                  "covers must decompose into two near edges");
        BoundaryCheck out;
        if (d.near_path.edges[0].root_p != d.near_path.edges[1].root_p) return out;

        const WeylGroup& W = g_.group();
        int p = d.near_path.edges[0].root_p;
        check_internal(p < g_.rank(), "2-loop labels are simple roots");
        check_internal(d.base.v == W.identity(), "Grassmannian top must have v = 1");
        WeylElement s_alpha = W.element(W.reflection_idx(p));
        IntVec shifted = vec_add(d.base.lambda.c, aff_.reflection_shift(p));
        AffineElement u = aff_.make(W.mul(d.base.w, s_alpha),
                                    CorootVector{aff_.act_translation(s_alpha.idx, shifted)});
        if (!aff_.is_cover(u, y) || !aff_.is_cover(x, u))
            throw RegularityError("regularity degraded: boundary witness does not "
                                  "complete the interval");
        if (aff_.is_affine_grassmannian(u))
            throw RegularityError("regularity degraded: boundary witness stays inside "
                                  "the Grassmannian");
        check_internal(u != z, "witness must differ from the given middle element");
        out.violated = true;
        out.witness = u;
        out.loop_root = p;
        return out;
    }

private:
    // Cover below cur along a near edge: cur = w t_{v(lambda)} factors with
    // wv = e.source, and the cover is w r_{v(alpha)} t_{v(lambda + wt(e))}.
    AffineElement emit_near(const AffineElement& cur, const QBGEdge& e) const {
        const WeylGroup& W = g_.group();
        AffineWeyl::Factorization f = aff_.factor_antidominant(cur);
        if (W.mul(f.w, f.v) != e.source)
            throw RegularityError("regularity degraded: near edge does not chain from wv");
        AffineElement next = aff_.make(
            classical_part(f, e.root_p),
            CorootVector{aff_.act_translation(f.v.idx, vec_add(f.lambda.c, e.weight))});
        if (!aff_.is_cover(next, cur))
            throw RegularityError("regularity degraded: transported near step is not a cover");
        return next;
    }

    // Cover below cur along a far edge ending at cur's chamber: the cover is
    // w r_{v(alpha)} t_{v r_alpha(lambda + wt(e))}.
    AffineElement emit_far(const AffineElement& cur, const QBGEdge& e) const {
        const WeylGroup& W = g_.group();
        AffineWeyl::Factorization f = aff_.factor_antidominant(cur);
        if (f.v != e.target)
            throw RegularityError("regularity degraded: far edge does not chain toward v");
        int v_ra = W.mul_idx(f.v.idx, W.reflection_idx(e.root_p));
        AffineElement next = aff_.make(
            classical_part(f, e.root_p),
            CorootVector{aff_.act_translation(v_ra, vec_add(f.lambda.c, e.weight))});
        if (!aff_.is_cover(next, cur))
            throw RegularityError("regularity degraded: transported far step is not a cover");
        return next;
    }

    WeylElement classical_part(const AffineWeyl::Factorization& f, int alpha_p) const {
        const WeylGroup& W = g_.group();
        int sign = 0;
        int img = W.root_image_idx(f.v.idx, alpha_p, &sign);
        return W.mul(f.w, W.element(W.reflection_idx(img)));
    }

    const AffineWeyl& aff_;
    const QBGraph& g_;
    RegularityConfig cfg_;
};

} // namespace qbg
