#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qbg/errors.hpp"
#include "qbg/intvec.hpp"

namespace qbg {

// Root-system conventions, fixed once here and relied on everywhere else:
//
//   * Roots are stored in simple-root coordinates, coroots in simple-coroot
//     coordinates. No floating point anywhere; the pairing is exact.
//   * The stored Cartan matrix has orientation cartan(r, c) = <alpha_c^vee, alpha_r>,
//     i.e. row index r names a root, column index c names a coroot. Equivalently
//     s_c(alpha_r) = alpha_r - cartan(r, c) * alpha_c.
//   * <lambda, alpha> for lambda = sum lambda_j alpha_j^vee and alpha = sum a_r alpha_r
//     is  sum_{r,j} a_r * cartan(r, j) * lambda_j.
//   * Squared lengths are normalized so short roots have norm2 == 2.

struct RootVector {
    IntVec c; // coefficients on the simple roots

    bool operator==(const RootVector& o) const { return c == o.c; }
    bool operator!=(const RootVector& o) const { return !(*this == o); }
};

struct CorootVector {
    IntVec c; // coefficients on the simple coroots

    bool operator==(const CorootVector& o) const { return c == o.c; }
    bool operator!=(const CorootVector& o) const { return !(*this == o); }
};

class RootSystem {
public:
    static constexpr int kDefaultRootBound = 4096;

    static RootSystem from_cartan(const IntMat& cartan, std::string label,
                                  int max_positive_roots = kDefaultRootBound) {
        return RootSystem(cartan, std::move(label), max_positive_roots);
    }

    // Supported named types. The stored matrices follow the orientation above;
    // B/C distinguish which end of the double bond is long (B2: alpha1 long,
    // C2: alpha1 short; B3: alpha3 short; C3: alpha3 long).
    static RootSystem named(const std::string& label) {
        std::string t = label;
        std::transform(t.begin(), t.end(), t.begin(), ::toupper);
        if (t == "A1") return from_cartan(IntMat::from_rows({{2}}), "A1");
        if (t == "A2") return from_cartan(IntMat::from_rows({{2, -1}, {-1, 2}}), "A2");
        if (t == "A3")
            return from_cartan(IntMat::from_rows({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}), "A3");
        if (t == "A4")
            return from_cartan(IntMat::from_rows({{2, -1, 0, 0},
                                                  {-1, 2, -1, 0},
                                                  {0, -1, 2, -1},
                                                  {0, 0, -1, 2}}),
                               "A4");
        if (t == "B2") return from_cartan(IntMat::from_rows({{2, -2}, {-1, 2}}), "B2");
        if (t == "C2") return from_cartan(IntMat::from_rows({{2, -1}, {-2, 2}}), "C2");
        if (t == "B3")
            return from_cartan(IntMat::from_rows({{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}), "B3");
        if (t == "C3")
            return from_cartan(IntMat::from_rows({{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}}), "C3");
        if (t == "D4")
            return from_cartan(IntMat::from_rows({{2, -1, 0, 0},
                                                  {-1, 2, -1, -1},
                                                  {0, -1, 2, 0},
                                                  {0, -1, 0, 2}}),
                               "D4");
        if (t == "G2") return from_cartan(IntMat::from_rows({{2, -1}, {-3, 2}}), "G2");
        throw UnsupportedTypeError("unknown root system type: " + label);
    }

    const std::string& label() const { return label_; }
    int rank() const { return rank_; }
    const IntMat& cartan() const { return cartan_; }

    int num_positive_roots() const { return (int)pos_roots_.size(); }
    const RootVector& positive_root(int p) const { return pos_roots_[p]; }
    const CorootVector& positive_coroot(int p) const { return pos_coroots_[p]; }
    int root_norm2(int p) const { return norm2_[p]; }

    // Index of a positive root; alpha given in simple-root coordinates.
    std::optional<int> root_index(const RootVector& alpha) const {
        auto it = root_lookup_.find(alpha.c);
        if (it == root_lookup_.end()) return std::nullopt;
        return it->second;
    }

    // Index of the positive root with +-alpha == that root; sign_out gets +1/-1.
    std::optional<int> signed_root_index(const RootVector& alpha, int* sign_out = nullptr) const {
        if (auto p = root_index(alpha)) {
            if (sign_out) *sign_out = 1;
            return p;
        }
        RootVector neg{vec_neg(alpha.c)};
        if (auto p = root_index(neg)) {
            if (sign_out) *sign_out = -1;
            return p;
        }
        return std::nullopt;
    }

    const RootVector& two_rho() const { return two_rho_; }
    const CorootVector& two_rho_check() const { return two_rho_check_; }

    bool is_irreducible() const { return irreducible_; }
    bool is_simply_laced() const { return simply_laced_; }

    // Highest root theta and highest short root phi (equal when simply laced).
    const RootVector& highest_root() const {
        if (!irreducible_)
            throw UnsupportedTypeError("highest root requires an irreducible system");
        return pos_roots_[theta_idx_];
    }
    const RootVector& highest_short_root() const {
        if (!irreducible_)
            throw UnsupportedTypeError("highest short root requires an irreducible system");
        return pos_roots_[phi_idx_];
    }
    int highest_root_index() const {
        if (!irreducible_)
            throw UnsupportedTypeError("highest root requires an irreducible system");
        return theta_idx_;
    }
    int highest_short_root_index() const {
        if (!irreducible_)
            throw UnsupportedTypeError("highest short root requires an irreducible system");
        return phi_idx_;
    }

    // <lambda, alpha>, exact.
    int pair(const CorootVector& lambda, const RootVector& alpha) const {
        check_input((int)lambda.c.size() == rank_ && (int)alpha.c.size() == rank_,
                    "pair: rank mismatch");
        long long s = 0;
        for (int r = 0; r < rank_; ++r) {
            if (alpha.c[r] == 0) continue;
            long long row = 0;
            for (int j = 0; j < rank_; ++j) row += (long long)cartan_.at(r, j) * lambda.c[j];
            s += (long long)alpha.c[r] * row;
        }
        return (int)s;
    }

    // <alpha_i^vee, alpha> and <lambda, alpha_i> single-row shortcuts.
    int pair_simple_coroot(int i, const RootVector& alpha) const {
        long long s = 0;
        for (int r = 0; r < rank_; ++r) s += (long long)alpha.c[r] * cartan_.at(r, i);
        return (int)s;
    }
    int pair_simple_root(const CorootVector& lambda, int i) const {
        long long s = 0;
        for (int j = 0; j < rank_; ++j) s += (long long)cartan_.at(i, j) * lambda.c[j];
        return (int)s;
    }

    // Pairing coefficient tables for positive root p:
    //   root_pairing_coefs(p)[i]   = <alpha_i^vee, alpha_p>   (so <lambda, alpha_p> = lambda . this)
    //   coroot_pairing_coefs(p)[i] = <alpha_p^vee, alpha_i>   (so <alpha_p^vee, beta> = beta . this)
    const IntVec& root_pairing_coefs(int p) const { return pair_coefs_root_[p]; }
    const IntVec& coroot_pairing_coefs(int p) const { return pair_coefs_coroot_[p]; }

    // Reflection r_alpha; alpha must be a root (either sign).
    RootVector reflect(const RootVector& alpha, const RootVector& v) const {
        int p = require_root(alpha);
        check_input((int)v.c.size() == rank_, "reflect: rank mismatch");
        // r_alpha(v) = v - <alpha^vee, v> alpha
        long long k = vec_dot(pair_coefs_coroot_[p], v.c);
        return RootVector{vec_sub(v.c, vec_scale((int)k, pos_roots_[p].c))};
    }
    CorootVector reflect(const RootVector& alpha, const CorootVector& mu) const {
        int p = require_root(alpha);
        check_input((int)mu.c.size() == rank_, "reflect: rank mismatch");
        // r_alpha(mu) = mu - <mu, alpha> alpha^vee
        long long k = vec_dot(pair_coefs_root_[p], mu.c);
        return CorootVector{vec_sub(mu.c, vec_scale((int)k, pos_coroots_[p].c))};
    }

    bool is_antidominant(const CorootVector& lambda) const {
        check_input((int)lambda.c.size() == rank_, "is_antidominant: rank mismatch");
        for (int i = 0; i < rank_; ++i)
            if (pair_simple_root(lambda, i) > 0) return false;
        return true;
    }

    bool is_regular(const CorootVector& lambda) const {
        check_input((int)lambda.c.size() == rank_, "is_regular: rank mismatch");
        for (int p = 0; p < num_positive_roots(); ++p)
            if (vec_dot(pair_coefs_root_[p], lambda.c) == 0) return false;
        return true;
    }

    // The dual system: roots and coroots exchange, so the Cartan matrix transposes.
    RootSystem dual() const {
        IntMat t(rank_, rank_);
        for (int r = 0; r < rank_; ++r)
            for (int c = 0; c < rank_; ++c) t.at(r, c) = cartan_.at(c, r);
        return from_cartan(t, label_ + "-dual");
    }

private:
    RootSystem(const IntMat& cartan, std::string label, int max_positive_roots)
        : label_(std::move(label)), rank_(cartan.rows), cartan_(cartan) {
        validate_cartan();
        generate_roots(max_positive_roots);
        compute_norms();
        compute_pair_tables();
        compute_rho();
        compute_highest_roots();
    }

    int require_root(const RootVector& alpha) const {
        check_input((int)alpha.c.size() == rank_, "rank mismatch");
        int sign = 0;
        auto p = signed_root_index(alpha, &sign);
        check_input(p.has_value(), "not a root: " + vec_to_string(alpha.c));
        return *p;
    }

    void validate_cartan() {
        check_input(cartan_.rows == cartan_.cols && cartan_.rows >= 1,
                    "Cartan matrix must be square and nonempty");
        for (int r = 0; r < rank_; ++r) {
            check_input(cartan_.at(r, r) == 2, "Cartan matrix diagonal must be 2");
            for (int c = 0; c < rank_; ++c) {
                if (r == c) continue;
                check_input(cartan_.at(r, c) <= 0, "off-diagonal Cartan entries must be <= 0");
                check_input((cartan_.at(r, c) == 0) == (cartan_.at(c, r) == 0),
                            "Cartan zero pattern must be symmetric");
            }
        }
    }

    void generate_roots(int max_positive_roots) {
        // Evolve (root, coroot) pairs from the simple ones by simple reflections.
        for (int i = 0; i < rank_; ++i) {
            IntVec a(rank_, 0), av(rank_, 0);
            a[i] = 1;
            av[i] = 1;
            push_root(a, av);
        }
        for (size_t head = 0; head < pos_roots_.size(); ++head) {
            if ((int)pos_roots_.size() > max_positive_roots)
                throw UnsupportedTypeError("root generation exceeded bound; not a finite type");
            IntVec a = pos_roots_[head].c;
            IntVec av = pos_coroots_[head].c;
            for (int i = 0; i < rank_; ++i) {
                // s_i(alpha) = alpha - <alpha_i^vee, alpha> alpha_i
                long long k = 0;
                for (int r = 0; r < rank_; ++r) k += (long long)a[r] * cartan_.at(r, i);
                IntVec a2 = a;
                a2[i] -= (int)k;
                // s_i(alpha^vee) = alpha^vee - <alpha^vee, alpha_i> alpha_i^vee
                long long kv = 0;
                for (int j = 0; j < rank_; ++j) kv += (long long)cartan_.at(i, j) * av[j];
                IntVec av2 = av;
                av2[i] -= (int)kv;
                bool positive = true;
                for (int x : a2)
                    if (x < 0) positive = false;
                if (!positive) continue;
                auto it = root_lookup_.find(a2);
                if (it == root_lookup_.end())
                    push_root(a2, av2);
                else
                    check_internal(pos_coroots_[it->second].c == av2,
                                   "coroot of a root must be unique");
            }
        }
        if ((int)pos_roots_.size() > max_positive_roots)
            throw UnsupportedTypeError("root generation exceeded bound; not a finite type");
    }

    void push_root(const IntVec& a, const IntVec& av) {
        root_lookup_.emplace(a, (int)pos_roots_.size());
        pos_roots_.push_back(RootVector{a});
        pos_coroots_.push_back(CorootVector{av});
    }

    void compute_norms() {
        // Solve the symmetrizer n_i = (alpha_i, alpha_i): cartan(r,c)*n_c == cartan(c,r)*n_r.
        std::vector<long long> n(rank_, 0);
        std::vector<int> comp(rank_, -1);
        int ncomp = 0;
        for (int s = 0; s < rank_; ++s) {
            if (comp[s] >= 0) continue;
            comp[s] = ncomp;
            n[s] = 2;
            std::vector<int> seen{s};
            std::vector<int> stack{s};
            while (!stack.empty()) {
                int r = stack.back();
                stack.pop_back();
                for (int c = 0; c < rank_; ++c) {
                    if (c == r || cartan_.at(r, c) == 0) continue;
                    // cartan(r,c)*n_c == cartan(c,r)*n_r, so n_c = n_r*cartan(c,r)/cartan(r,c);
                    // scale the whole component when the division is not exact.
                    long long num = n[r] * cartan_.at(c, r);
                    long long den = cartan_.at(r, c);
                    if (num % den != 0) {
                        long long g = std::gcd(std::abs(num), std::abs(den));
                        long long mult = std::abs(den) / g;
                        for (int t : seen) n[t] *= mult;
                        num = n[r] * cartan_.at(c, r);
                    }
                    long long nc = num / den;
                    if (comp[c] == -1) {
                        comp[c] = ncomp;
                        n[c] = nc;
                        seen.push_back(c);
                        stack.push_back(c);
                    } else {
                        check_input(n[c] == nc, "Cartan matrix is not symmetrizable");
                    }
                }
            }
            ++ncomp;
        }
        // Normalize each component so the shortest simple root has n == 2.
        for (int comp_id = 0; comp_id < ncomp; ++comp_id) {
            long long mn = 0;
            for (int i = 0; i < rank_; ++i)
                if (comp[i] == comp_id && (mn == 0 || n[i] < mn)) mn = n[i];
            for (int i = 0; i < rank_; ++i)
                if (comp[i] == comp_id) {
                    check_input((n[i] * 2) % mn == 0, "Cartan matrix is not symmetrizable");
                    n[i] = n[i] * 2 / mn;
                }
        }
        irreducible_ = (ncomp == 1);
        simple_norm2_.assign(n.begin(), n.end());

        norm2_.resize(pos_roots_.size());
        long long short_norm = 0;
        for (size_t p = 0; p < pos_roots_.size(); ++p) {
            const IntVec& a = pos_roots_[p].c;
            long long q = 0; // 2*(alpha,alpha)
            for (int r = 0; r < rank_; ++r) {
                if (a[r] == 0) continue;
                for (int c = 0; c < rank_; ++c) {
                    if (a[c] == 0) continue;
                    q += (long long)a[r] * a[c] * cartan_.at(r, c) * simple_norm2_[c];
                }
            }
            check_internal(q > 0 && q % 2 == 0, "root norm must be a positive even integer");
            norm2_[p] = (int)(q / 2);
            if (short_norm == 0 || norm2_[p] < short_norm) short_norm = norm2_[p];
        }
        check_internal(short_norm == 2, "norm normalization failed");
        simply_laced_ = true;
        for (int v : norm2_)
            if (v != 2) simply_laced_ = false;
    }

    void compute_pair_tables() {
        pair_coefs_root_.resize(pos_roots_.size());
        pair_coefs_coroot_.resize(pos_roots_.size());
        for (size_t p = 0; p < pos_roots_.size(); ++p) {
            IntVec u(rank_), d(rank_);
            for (int i = 0; i < rank_; ++i) {
                long long s = 0;
                for (int r = 0; r < rank_; ++r) s += (long long)pos_roots_[p].c[r] * cartan_.at(r, i);
                u[i] = (int)s; // <alpha_i^vee, alpha_p>
                long long t = 0;
                for (int j = 0; j < rank_; ++j) t += (long long)cartan_.at(i, j) * pos_coroots_[p].c[j];
                d[i] = (int)t; // <alpha_p^vee, alpha_i>
            }
            pair_coefs_root_[p] = std::move(u);
            pair_coefs_coroot_[p] = std::move(d);
            check_internal(pair(pos_coroots_[p], pos_roots_[p]) == 2, "<alpha^vee, alpha> must be 2");
        }
    }

    void compute_rho() {
        IntVec r(rank_, 0), rv(rank_, 0);
        for (size_t p = 0; p < pos_roots_.size(); ++p) {
            r = vec_add(r, pos_roots_[p].c);
            rv = vec_add(rv, pos_coroots_[p].c);
        }
        two_rho_ = RootVector{r};
        two_rho_check_ = CorootVector{rv};
    }

    void compute_highest_roots() {
        if (!irreducible_) return;
        theta_idx_ = phi_idx_ = -1;
        for (int p = 0; p < num_positive_roots(); ++p) {
            bool dominant = true;
            for (int i = 0; i < rank_; ++i)
                if (pair_coefs_root_[p][i] < 0) dominant = false;
            if (!dominant) continue;
            if (theta_idx_ == -1 || norm2_[p] > norm2_[theta_idx_]) theta_idx_ = p;
            if (phi_idx_ == -1 || norm2_[p] < norm2_[phi_idx_]) phi_idx_ = p;
        }
        check_internal(theta_idx_ >= 0 && phi_idx_ >= 0, "no dominant root found");
        check_internal(norm2_[phi_idx_] == 2, "highest short root must be short");
    }

    std::string label_;
    int rank_;
    IntMat cartan_;
    std::vector<RootVector> pos_roots_;
    std::vector<CorootVector> pos_coroots_;
    std::unordered_map<IntVec, int, IntVecHash> root_lookup_;
    std::vector<int> norm2_;
    std::vector<long long> simple_norm2_;
    std::vector<IntVec> pair_coefs_root_;
    std::vector<IntVec> pair_coefs_coroot_;
    RootVector two_rho_;
    CorootVector two_rho_check_;
    int theta_idx_ = -1;
    int phi_idx_ = -1;
    bool irreducible_ = false;
    bool simply_laced_ = false;
};

} // namespace qbg
