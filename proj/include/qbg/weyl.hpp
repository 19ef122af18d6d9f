#pragma once

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "qbg/cartan.hpp"
#include "qbg/errors.hpp"
#include "qbg/intvec.hpp"

namespace qbg {

class WeylGroup;

// A Weyl group element is an index into its group's enumeration table.
// Equality and hashing are O(1); elements from different groups never compare equal.
struct WeylElement {
    const WeylGroup* grp = nullptr;
    int idx = -1;

    bool operator==(const WeylElement& o) const { return grp == o.grp && idx == o.idx; }
    bool operator!=(const WeylElement& o) const { return !(*this == o); }
};

struct WeylElementHash {
    size_t operator()(const WeylElement& w) const {
        return hash_combine(std::hash<const void*>()(w.grp), std::hash<int>()(w.idx));
    }
};

// The finite Weyl group W_0, enumerated once by breadth-first search from the
// identity. Elements are canonicalized by their action matrix on simple-coroot
// coordinates; per element the signed permutation of positive roots is stored,
// which makes inversion counting and the affine length formula table lookups.
class WeylGroup {
public:
    explicit WeylGroup(RootSystem rs) : rs_(std::move(rs)) { build(); }

    WeylGroup(const WeylGroup&) = delete;
    WeylGroup& operator=(const WeylGroup&) = delete;

    const RootSystem& root_system() const { return rs_; }
    int rank() const { return rs_.rank(); }
    int size() const { return (int)mats_.size(); }

    WeylElement identity() const { return {this, 0}; }
    WeylElement element(int idx) const {
        check_input(idx >= 0 && idx < size(), "element index out of range");
        return {this, idx};
    }
    WeylElement simple(int i) const {
        check_rank(i);
        return {this, simple_idx_[i]};
    }
    WeylElement longest() const { return {this, w0_idx_}; }

    std::vector<WeylElement> elements() const {
        std::vector<WeylElement> out;
        out.reserve(size());
        for (int i = 0; i < size(); ++i) out.push_back({this, i});
        return out;
    }

    int length(WeylElement w) const { return length_[check(w)]; }
    int length_idx(int g) const { return length_[g]; }

    const std::vector<int>& word(WeylElement w) const { return word_[check(w)]; }
    const std::vector<int>& word_idx(int g) const { return word_[g]; }

    WeylElement mul(WeylElement a, WeylElement b) const {
        check_input(a.grp == this && b.grp == this, "mul: elements from different groups");
        return {this, mul_idx(a.idx, b.idx)};
    }
    int mul_idx(int a, int b) const {
        int g = a;
        for (int i : word_[b]) g = rmul_[(size_t)g * rank() + i];
        return g;
    }
    WeylElement mul_simple(WeylElement a, int i) const {
        check_rank(i);
        return {this, rmul_[(size_t)check(a) * rank() + i]};
    }
    int rmul_simple_idx(int g, int i) const { return rmul_[(size_t)g * rank() + i]; }
    int lmul_simple_idx(int g, int i) const {
        return inverse_[rmul_[(size_t)inverse_[g] * rank() + i]];
    }

    WeylElement inverse(WeylElement a) const { return {this, inverse_[check(a)]}; }
    int inverse_idx(int g) const { return inverse_[g]; }

    WeylElement from_word(const std::vector<int>& w) const {
        int g = 0;
        for (int i : w) {
            check_rank(i);
            g = rmul_[(size_t)g * rank() + i];
        }
        return {this, g};
    }

    // Signed image of positive root p: returns the positive-root index of
    // +-w(alpha_p) and sets sign_out accordingly.
    int root_image_idx(int g, int p, int* sign_out) const {
        int v = root_image_[(size_t)g * rs_.num_positive_roots() + p];
        *sign_out = v < 0 ? -1 : 1;
        return std::abs(v) - 1;
    }
    bool sends_root_negative(int g, int p) const {
        return root_image_[(size_t)g * rs_.num_positive_roots() + p] < 0;
    }
    bool sends_root_negative(WeylElement w, int p) const {
        return sends_root_negative(check(w), p);
    }

    CorootVector act(WeylElement w, const CorootVector& mu) const {
        check_input((int)mu.c.size() == rank(), "act: rank mismatch");
        return CorootVector{mats_[check(w)].apply(mu.c)};
    }
    IntVec act_coroot_idx(int g, const IntVec& mu) const { return mats_[g].apply(mu); }

    RootVector act(WeylElement w, const RootVector& v) const {
        check_input((int)v.c.size() == rank(), "act: rank mismatch");
        return RootVector{act_root_idx(check(w), v.c)};
    }
    IntVec act_root_idx(int g, const IntVec& v) const {
        IntVec out(rank(), 0);
        for (int j = 0; j < rank(); ++j) {
            if (v[j] == 0) continue;
            int sign = 0;
            int q = root_image_idx(g, j, &sign); // simple root j is positive root j
            const IntVec& img = rs_.positive_root(q).c;
            for (int r = 0; r < rank(); ++r) out[r] += v[j] * sign * img[r];
        }
        return out;
    }

    // r_alpha for a root alpha (either sign).
    WeylElement reflection(const RootVector& alpha) const {
        auto p = rs_.signed_root_index(alpha);
        check_input(p.has_value(), "reflection: not a root: " + vec_to_string(alpha.c));
        return {this, reflection_of_root_[*p]};
    }
    int reflection_idx(int p) const { return reflection_of_root_[p]; }

    bool right_descent(WeylElement w, int i) const {
        check_rank(i);
        int g = check(w);
        return length_[rmul_[(size_t)g * rank() + i]] < length_[g];
    }
    bool left_descent(WeylElement w, int i) const {
        check_rank(i);
        // l(s_i w) < l(w) iff w^{-1}(alpha_i) < 0
        return sends_root_negative(inverse_[check(w)], i);
    }

private:
    int check(WeylElement w) const {
        check_input(w.grp == this && w.idx >= 0 && w.idx < size(),
                    "element does not belong to this Weyl group");
        return w.idx;
    }
    void check_rank(int i) const {
        check_input(i >= 0 && i < rank(), "simple reflection index out of range");
    }

    void build() {
        const int n = rank();
        const int npos = rs_.num_positive_roots();

        // Generator matrices on coroot coordinates: s_i(alpha_j^vee) = alpha_j^vee - cartan(i,j) alpha_i^vee.
        std::vector<IntMat> gen(n);
        for (int i = 0; i < n; ++i) {
            IntMat m = IntMat::identity(n);
            for (int j = 0; j < n; ++j) m.at(i, j) -= rs_.cartan().at(i, j);
            gen[i] = m;
        }

        // Signed positive-root permutation of each generator.
        std::vector<std::vector<int>> gen_perm(n, std::vector<int>(npos));
        for (int i = 0; i < n; ++i) {
            for (int p = 0; p < npos; ++p) {
                if (p == i) {
                    gen_perm[i][p] = -(i + 1);
                    continue;
                }
                IntVec img = rs_.positive_root(p).c;
                img[i] -= rs_.pair_simple_coroot(i, rs_.positive_root(p));
                auto q = rs_.root_index(RootVector{img});
                check_internal(q.has_value(), "simple reflection left the root system");
                gen_perm[i][p] = *q + 1;
            }
        }

        std::unordered_map<std::vector<int>, int, IntVecHash> index_of;
        auto add = [&](const IntMat& m, const std::vector<int>& image, int len,
                       std::vector<int> wrd) {
            int idx = (int)mats_.size();
            index_of.emplace(m.a, idx);
            mats_.push_back(m);
            root_image_.insert(root_image_.end(), image.begin(), image.end());
            length_.push_back(len);
            word_.push_back(std::move(wrd));
            return idx;
        };

        std::vector<int> id_image(npos);
        for (int p = 0; p < npos; ++p) id_image[p] = p + 1;
        add(IntMat::identity(n), id_image, 0, {});

        simple_idx_.assign(n, -1);
        for (size_t head = 0; head < mats_.size(); ++head) {
            for (int i = 0; i < n; ++i) {
                IntMat m = mats_[head].mul(gen[i]);
                if (index_of.count(m.a)) continue;
                // image of g*s_i: (g s_i)(alpha_p) = sign * g(alpha_q) where s_i(alpha_p) = sign*alpha_q
                std::vector<int> image(npos);
                for (int p = 0; p < npos; ++p) {
                    int sp = gen_perm[i][p];
                    int v = root_image_[head * npos + (std::abs(sp) - 1)];
                    image[p] = sp < 0 ? -v : v;
                }
                std::vector<int> wrd = word_[head];
                wrd.push_back(i);
                int len = (int)wrd.size();
                int inversions = 0;
                for (int p = 0; p < npos; ++p)
                    if (image[p] < 0) ++inversions;
                check_internal(inversions == len, "length must equal inversion count");
                int idx = add(m, image, len, std::move(wrd));
                if (len == 1) simple_idx_[i] = idx;
            }
        }
        for (int i = 0; i < n; ++i) check_internal(simple_idx_[i] >= 0, "missing generator");

        const int sz = (int)mats_.size();
        rmul_.resize((size_t)sz * n);
        for (int g = 0; g < sz; ++g)
            for (int i = 0; i < n; ++i) {
                IntMat m = mats_[g].mul(gen[i]);
                rmul_[(size_t)g * n + i] = index_of.at(m.a);
            }

        inverse_.resize(sz);
        for (int g = 0; g < sz; ++g) {
            int h = 0;
            const std::vector<int>& w = word_[g];
            for (auto it = w.rbegin(); it != w.rend(); ++it) h = rmul_[(size_t)h * n + *it];
            check_internal(mul_via_table(g, h) == 0, "inverse computation failed");
            inverse_[g] = h;
        }

        w0_idx_ = 0;
        for (int g = 0; g < sz; ++g)
            if (length_[g] > length_[w0_idx_]) w0_idx_ = g;
        check_internal(length_[w0_idx_] == npos, "longest element must invert every positive root");

        reflection_of_root_.resize(npos);
        for (int p = 0; p < npos; ++p) {
            IntMat m = IntMat::identity(n);
            const IntVec& coroot = rs_.positive_coroot(p).c;
            const IntVec& coefs = rs_.root_pairing_coefs(p); // <alpha_j^vee, alpha_p>
            for (int r = 0; r < n; ++r)
                for (int j = 0; j < n; ++j) m.at(r, j) -= coefs[j] * coroot[r];
            auto it = index_of.find(m.a);
            check_internal(it != index_of.end(), "reflection matrix not in the group");
            reflection_of_root_[p] = it->second;
        }
    }

    int mul_via_table(int a, int b) const {
        int g = a;
        for (int i : word_[b]) g = rmul_[(size_t)g * rank() + i];
        return g;
    }

    RootSystem rs_;
    std::vector<IntMat> mats_;
    std::vector<int> root_image_; // flattened [g * npos + p] = +-(q+1)
    std::vector<int> length_;
    std::vector<std::vector<int>> word_;
    std::vector<int> rmul_; // [g * rank + i] = g * s_i
    std::vector<int> inverse_;
    std::vector<int> simple_idx_;
    int w0_idx_ = 0;
    std::vector<int> reflection_of_root_;
};

} // namespace qbg
