#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "qbg/affine.hpp"
#include "qbg/errors.hpp"
#include "qbg/intvec.hpp"
#include "qbg/weyl.hpp"

namespace qbg {

enum class EdgeKind { Bruhat, Quantum };

inline const char* edge_kind_name(EdgeKind k) {
    return k == EdgeKind::Bruhat ? "bruhat" : "quantum";
}

// A directed edge w -> w r_alpha of the quantum Bruhat graph. The label is a
// positive root alpha; Bruhat edges raise length by 1 and weigh 0, quantum
// edges drop length by <alpha^vee, 2rho> - 1 and weigh alpha^vee (untwisted
// convention; the dual convention swaps the roles of roots and coroots, so
// the drop is <2rho^vee, alpha> - 1 and the weight is alpha in root coords).
struct QBGEdge {
    WeylElement source;
    WeylElement target;
    int root_p = -1; // positive-root index of the label
    EdgeKind kind = EdgeKind::Bruhat;
    IntVec weight;   // coroot coords (untwisted) or root coords (dual)

    bool operator==(const QBGEdge& o) const {
        return source == o.source && target == o.target && root_p == o.root_p &&
               kind == o.kind && weight == o.weight;
    }
};

// A walk in the graph: vertices[i] -e_i-> vertices[i+1]. An empty edge list is
// the trivial path at its single vertex.
struct QBGPath {
    std::vector<WeylElement> vertices;
    std::vector<QBGEdge> edges;

    int hops() const { return (int)edges.size(); }
    WeylElement source() const { return vertices.front(); }
    WeylElement target() const { return vertices.back(); }
};

// The quantum Bruhat graph on W_0, immutable after construction. All-pairs
// shortest-path distances and weights are precomputed; construction asserts
// that every shortest path between two vertices carries the same weight.
class QBGraph {
public:
    explicit QBGraph(const WeylGroup& W0, Convention conv = Convention::Untwisted)
        : W_(W0), conv_(conv) {
        if (!W_.root_system().is_irreducible())
            throw UnsupportedTypeError("quantum Bruhat graph requires an irreducible root system");
        build_edges();
        build_all_pairs();
    }

    QBGraph(const QBGraph&) = delete;
    QBGraph& operator=(const QBGraph&) = delete;

    const WeylGroup& group() const { return W_; }
    const RootSystem& root_system() const { return W_.root_system(); }
    Convention convention() const { return conv_; }
    int rank() const { return W_.rank(); }
    int size() const { return W_.size(); }

    const std::vector<QBGEdge>& edges() const { return edges_; }
    const std::vector<int>& edge_indices_from(int w_idx) const { return out_[w_idx]; }

    // Quantum edge weight for label alpha_p: alpha_p^vee untwisted, alpha_p dual.
    const IntVec& label_shift(int p) const {
        const RootSystem& rs = root_system();
        return conv_ == Convention::Untwisted ? rs.positive_coroot(p).c
                                              : rs.positive_root(p).c;
    }
    const RootVector& label_root(const QBGEdge& e) const {
        return root_system().positive_root(e.root_p);
    }

    std::optional<QBGEdge> edge_between(WeylElement u, WeylElement v) const {
        auto it = edge_of_.find(key(check(u), check(v)));
        if (it == edge_of_.end()) return std::nullopt;
        return edges_[it->second];
    }

    // Hop count of a shortest directed path.
    int dist(WeylElement u, WeylElement v) const { return dist_[key(check(u), check(v))]; }

    struct MinWeight {
        IntVec weight;
        int hops = 0;
    };

    // Weight of any shortest path u -> v; well defined by construction.
    MinWeight min_weight(WeylElement u, WeylElement v) const {
        size_t k = key(check(u), check(v));
        return {mweight_[k], dist_[k]};
    }

    QBGPath trivial_path(WeylElement u) const {
        check(u);
        return {{u}, {}};
    }

    // Builds the path along the given vertices, looking up each edge.
    QBGPath path_from_vertices(const std::vector<WeylElement>& vs) const {
        check_input(!vs.empty(), "path must have at least one vertex");
        QBGPath p;
        p.vertices = vs;
        for (size_t i = 0; i + 1 < vs.size(); ++i) {
            auto e = edge_between(vs[i], vs[i + 1]);
            check_input(e.has_value(), "no edge between consecutive path vertices");
            p.edges.push_back(*e);
        }
        return p;
    }

    // Sum of edge weights; validates that the path is well formed.
    IntVec path_weight(const QBGPath& p) const {
        validate_path(p);
        IntVec w(rank(), 0);
        for (const QBGEdge& e : p.edges) w = vec_add(w, e.weight);
        return w;
    }

    // path_weight(p) - min_weight(source, target); coordinatewise nonnegative.
    IntVec excess_weight(const QBGPath& p) const {
        IntVec ex = vec_sub(path_weight(p), min_weight(p.source(), p.target()).weight);
        for (int c : ex)
            check_internal(c >= 0, "path weight below the shortest-path weight");
        return ex;
    }

    // Tilted Bruhat order: u lies on some shortest path from w to v.
    bool tilted_leq(WeylElement w, WeylElement u, WeylElement v) const {
        size_t wu = key(check(w), check(u));
        size_t uv = key(u.idx, v.idx);
        size_t wv = key(w.idx, check(v));
        return dist_[wu] + dist_[uv] == dist_[wv] &&
               vec_add(mweight_[wu], mweight_[uv]) == mweight_[wv];
    }

    // All shortest directed paths u -> v, by depth-first search along edges
    // that keep both the distance from u and the distance to v tight.
    std::vector<QBGPath> all_shortest_paths(WeylElement u, WeylElement v) const {
        check(u);
        check(v);
        std::vector<QBGPath> out;
        QBGPath cur = trivial_path(u);
        extend_shortest(cur, v, out);
        return out;
    }

    void validate_path(const QBGPath& p) const {
        check_input(!p.vertices.empty(), "path must have at least one vertex");
        check_input(p.vertices.size() == p.edges.size() + 1, "path vertex/edge count mismatch");
        for (const WeylElement& w : p.vertices) check(w);
        for (size_t i = 0; i < p.edges.size(); ++i) {
            const QBGEdge& e = p.edges[i];
            check_input(e.source == p.vertices[i] && e.target == p.vertices[i + 1],
                        "path edge endpoints do not match its vertices");
            auto stored = edge_between(e.source, e.target);
            check_input(stored.has_value() && *stored == e, "path edge is not a graph edge");
        }
    }

private:
    int check(WeylElement w) const {
        check_input(w.grp == &W_, "element does not belong to this graph's Weyl group");
        return w.idx;
    }
    size_t key(int u, int v) const { return (size_t)u * W_.size() + v; }

    void build_edges() {
        const RootSystem& rs = root_system();
        const int npos = rs.num_positive_roots();
        std::vector<int> drop(npos);
        for (int p = 0; p < npos; ++p)
            drop[p] = conv_ == Convention::Untwisted
                          ? rs.pair(rs.positive_coroot(p), rs.two_rho())
                          : rs.pair(rs.two_rho_check(), rs.positive_root(p));

        out_.assign(W_.size(), {});
        for (int g = 0; g < W_.size(); ++g) {
            for (int p = 0; p < npos; ++p) {
                int h = W_.mul_idx(g, W_.reflection_idx(p));
                int delta = W_.length_idx(h) - W_.length_idx(g);
                bool bruhat = delta == 1;
                bool quantum = delta == 1 - drop[p];
                check_internal(!(bruhat && quantum), "edge conditions must be exclusive");
                if (!bruhat && !quantum) continue;
                QBGEdge e;
                e.source = W_.element(g);
                e.target = W_.element(h);
                e.root_p = p;
                e.kind = bruhat ? EdgeKind::Bruhat : EdgeKind::Quantum;
                e.weight = bruhat ? IntVec(rank(), 0) : label_shift(p);
                auto inserted = edge_of_.emplace(key(g, h), (int)edges_.size());
                check_internal(inserted.second, "duplicate edge between a vertex pair");
                out_[g].push_back((int)edges_.size());
                edges_.push_back(e);
            }
        }
    }

    void build_all_pairs() {
        const int n = W_.size();
        dist_.assign((size_t)n * n, -1);
        mweight_.assign((size_t)n * n, IntVec(rank(), 0));
        for (int src = 0; src < n; ++src) {
            dist_[key(src, src)] = 0;
            std::queue<int> q;
            q.push(src);
            while (!q.empty()) {
                int a = q.front();
                q.pop();
                for (int ei : out_[a]) {
                    const QBGEdge& e = edges_[ei];
                    int b = e.target.idx;
                    IntVec cand = vec_add(mweight_[key(src, a)], e.weight);
                    if (dist_[key(src, b)] == -1) {
                        dist_[key(src, b)] = dist_[key(src, a)] + 1;
                        mweight_[key(src, b)] = std::move(cand);
                        q.push(b);
                    } else if (dist_[key(src, b)] == dist_[key(src, a)] + 1) {
                        // Every edge on any shortest path is relaxed here, so this
                        // check certifies that M(src, .) is path independent.
                        check_internal(mweight_[key(src, b)] == cand,
                                       "shortest paths with different weights");
                    }
                }
            }
            for (int v = 0; v < n; ++v)
                check_internal(dist_[key(src, v)] >= 0, "graph must be strongly connected");
        }
    }

    void extend_shortest(QBGPath& cur, WeylElement v, std::vector<QBGPath>& out) const {
        WeylElement a = cur.target();
        if (a == v) {
            out.push_back(cur);
            return;
        }
        WeylElement u = cur.source();
        for (int ei : out_[a.idx]) {
            const QBGEdge& e = edges_[ei];
            if (dist_[key(u.idx, e.target.idx)] != dist_[key(u.idx, a.idx)] + 1) continue;
            if (dist_[key(u.idx, e.target.idx)] + dist_[key(e.target.idx, v.idx)] !=
                dist_[key(u.idx, v.idx)])
                continue;
            cur.vertices.push_back(e.target);
            cur.edges.push_back(e);
            extend_shortest(cur, v, out);
            cur.vertices.pop_back();
            cur.edges.pop_back();
        }
    }

    const WeylGroup& W_;
    Convention conv_;
    std::vector<QBGEdge> edges_;
    std::vector<std::vector<int>> out_;
    std::unordered_map<size_t, int> edge_of_;
    std::vector<int> dist_;
    std::vector<IntVec> mweight_;
};

// A total order on the positive roots realized from a reduced word of w_0:
// the k-th root is s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}). Every such order
// satisfies the betweenness property for sums of positive roots.
class ReflectionOrdering {
public:
    ReflectionOrdering(const WeylGroup& W0, const std::vector<int>& w0_word) : W_(W0) {
        const RootSystem& rs = W_.root_system();
        const int npos = rs.num_positive_roots();
        check_input((int)w0_word.size() == npos && W_.from_word(w0_word) == W_.longest(),
                    "reflection orderings come from reduced words of the longest element");
        rank_of_.assign(npos, -1);
        int prefix = W_.identity().idx;
        for (int k = 0; k < npos; ++k) {
            int i = w0_word[k];
            int sign = 0;
            int p = W_.root_image_idx(prefix, i, &sign);
            check_internal(sign > 0 && rank_of_[p] == -1,
                           "reduced word must enumerate each positive root once");
            rank_of_[p] = k;
            order_.push_back(p);
            prefix = W_.rmul_simple_idx(prefix, i);
        }
    }

    static ReflectionOrdering standard(const WeylGroup& W0) {
        return ReflectionOrdering(W0, W0.word(W0.longest()));
    }

    const WeylGroup& group() const { return W_; }
    // Position of positive root p in the order, 0-based.
    int rank_of(int p) const { return rank_of_[p]; }
    bool less(int p, int q) const { return rank_of_[p] < rank_of_[q]; }
    const std::vector<int>& roots_in_order() const { return order_; }

private:
    const WeylGroup& W_;
    std::vector<int> rank_of_;
    std::vector<int> order_;
};

enum class SwapDirection { Ascent, Descent };

// Replaces the middle vertex of the consecutive edge pair (i, i+1) by the
// unique alternative whose labels are ascending (direction Ascent; requires
// the current labels to be a strict descent) or descending (direction
// Descent; requires a strict ascent). Endpoints, length, and weight are
// preserved, and applying the opposite swap restores the original path.
inline QBGPath diamond_swap(const QBGraph& g, const QBGPath& p, int i,
                            const ReflectionOrdering& ordering, SwapDirection direction) {
    g.validate_path(p);
    check_input(&ordering.group() == &g.group(), "ordering is for a different Weyl group");
    check_input(i >= 0 && i + 1 < p.hops(), "edge pair index out of range");
    int a = p.edges[i].root_p;
    int b = p.edges[i + 1].root_p;
    bool want_ascent = direction == SwapDirection::Ascent;
    require(want_ascent ? ordering.less(b, a) : ordering.less(a, b),
            want_ascent ? "ascent swap requires a strict descent in the labels"
                        : "descent swap requires a strict ascent in the labels");

    WeylElement src = p.vertices[i];
    WeylElement mid = p.vertices[i + 1];
    WeylElement tgt = p.vertices[i + 2];
    std::optional<std::pair<QBGEdge, QBGEdge>> found;
    for (int ei : g.edge_indices_from(src.idx)) {
        const QBGEdge& e1 = g.edges()[ei];
        if (e1.target == mid) continue;
        auto e2 = g.edge_between(e1.target, tgt);
        if (!e2) continue;
        bool ok = want_ascent ? ordering.less(e1.root_p, e2->root_p)
                              : ordering.less(e2->root_p, e1.root_p);
        if (!ok) continue;
        check_internal(!found.has_value(), "diamond swap replacement must be unique");
        found = {e1, *e2};
    }
    check_internal(found.has_value(), "diamond swap replacement must exist");
    check_internal(vec_add(found->first.weight, found->second.weight) ==
                       vec_add(p.edges[i].weight, p.edges[i + 1].weight),
                   "diamond swap must preserve weight");

    QBGPath out = p;
    out.vertices[i + 1] = found->first.target;
    out.edges[i] = found->first;
    out.edges[i + 1] = found->second;
    return out;
}

// If p is minimal (hop count equals the BFS distance), returns nothing.
// Otherwise returns an interval-equivalent path that contains a 2-loop,
// found by ascent-sorting the label sequence with diamond swaps: each swap
// at the leftmost descent strictly lowers the sequence lexicographically, and
// a non-minimal path can never become strictly ascending, so two equal
// adjacent labels (which form a 2-loop) must appear.
inline std::optional<QBGPath> find_two_loop_equivalent(const QBGraph& g, const QBGPath& p,
                                                       const ReflectionOrdering& ordering) {
    g.validate_path(p);
    check_input(&ordering.group() == &g.group(), "ordering is for a different Weyl group");
    auto two_loop_at = [&](const QBGPath& q) -> int {
        for (int i = 0; i + 1 < q.hops(); ++i)
            if (q.edges[i].root_p == q.edges[i + 1].root_p) return i;
        return -1;
    };
    if (two_loop_at(p) >= 0) return p;
    if (p.hops() == g.dist(p.source(), p.target())) return std::nullopt;

    QBGPath cur = p;
    for (;;) {
        if (two_loop_at(cur) >= 0) return cur;
        int descent = -1;
        for (int i = 0; i + 1 < cur.hops(); ++i) {
            if (ordering.less(cur.edges[i + 1].root_p, cur.edges[i].root_p)) {
                descent = i;
                break;
            }
        }
        check_internal(descent >= 0, "non-minimal path sorted to strictly ascending labels");
        QBGPath next = diamond_swap(g, cur, descent, ordering, SwapDirection::Ascent);
        // The replacement's first label is strictly smaller, so the rank
        // sequence decreases lexicographically and the sort terminates.
        check_internal(ordering.less(next.edges[descent].root_p, cur.edges[descent].root_p),
                       "ascent swap must lower the first label of the pair");
        cur = std::move(next);
    }
}

inline std::optional<QBGPath> find_two_loop_equivalent(const QBGraph& g, const QBGPath& p) {
    return find_two_loop_equivalent(g, p, ReflectionOrdering::standard(g.group()));
}

} // namespace qbg
