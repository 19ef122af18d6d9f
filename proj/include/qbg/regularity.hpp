#pragma once

#include <cstdlib>
#include <string>

#include "qbg/cartan.hpp"
#include "qbg/errors.hpp"
#include "qbg/weyl.hpp"

namespace qbg {

// Superregularity bounds. A translation lambda (reduced to its antidominant
// chamber representative) is m-superregular when |<lambda, alpha_i>| >=
// chain_bound(cfg, m) = k + (m-1)*j for every simple root alpha_i, where
//   k = profile-dependent base bound,
//   j = max over simple beta and positive alpha of <alpha^vee, beta>.
// Closed formulas proved in the superregular regime are only evaluated after
// this check; the bound certifies chains of m covers stay in valid territory.

enum class RegularityProfile { Conservative, Milicevic, Welch };

inline const char* profile_name(RegularityProfile p) {
    switch (p) {
        case RegularityProfile::Conservative: return "conservative";
        case RegularityProfile::Milicevic: return "milicevic";
        case RegularityProfile::Welch: return "welch";
    }
    return "?";
}

inline RegularityProfile profile_from_string(const std::string& s) {
    if (s == "conservative") return RegularityProfile::Conservative;
    if (s == "milicevic") return RegularityProfile::Milicevic;
    if (s == "welch") return RegularityProfile::Welch;
    throw InvalidInputError("unknown regularity profile: " + s);
}

struct RegularityConfig {
    RegularityProfile profile;
    int k;           // base bound
    int j;           // pairing growth constant
    int w0_length;   // l(w_0)
    int group_order; // |W_0|
};

inline int pairing_growth_constant(const RootSystem& rs) {
    int j = 0;
    for (int p = 0; p < rs.num_positive_roots(); ++p)
        for (int i = 0; i < rs.rank(); ++i)
            j = std::max(j, rs.coroot_pairing_coefs(p)[i]);
    return j;
}

inline bool has_triple_bond(const RootSystem& rs) {
    for (int r = 0; r < rs.rank(); ++r)
        for (int c = 0; c < rs.rank(); ++c)
            if (r != c && rs.cartan().at(r, c) <= -3) return true;
    return false;
}

inline RegularityConfig make_regularity_config(const WeylGroup& W, RegularityProfile profile) {
    const RootSystem& rs = W.root_system();
    RegularityConfig cfg;
    cfg.profile = profile;
    cfg.j = pairing_growth_constant(rs);
    cfg.w0_length = rs.num_positive_roots();
    cfg.group_order = W.size();
    switch (profile) {
        case RegularityProfile::Conservative:
            cfg.k = 2 * W.size() + 2;
            break;
        case RegularityProfile::Milicevic:
            cfg.k = (has_triple_bond(rs) ? 3 : 2) * cfg.w0_length;
            break;
        case RegularityProfile::Welch:
            if (!rs.is_simply_laced())
                throw UnsupportedProfileError(
                    "welch profile requires a simply-laced root system");
            cfg.k = 3;
            break;
    }
    return cfg;
}

inline int chain_bound(const RegularityConfig& cfg, int m) {
    check_input(m >= 1, "chain_bound: m must be >= 1");
    return cfg.k + (m - 1) * cfg.j;
}

// Bound sufficient for every statement at once: k + |W_0| * j.
inline int theorem_bound(const RegularityConfig& cfg) {
    return cfg.k + cfg.group_order * cfg.j;
}

// Reduce lambda to its antidominant representative, in simple-coroot coordinates.
inline IntVec antidominant_representative(const RootSystem& rs, IntVec lambda) {
    check_input((int)lambda.size() == rs.rank(), "rank mismatch");
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < rs.rank(); ++i) {
            int p = rs.pair_simple_root(CorootVector{lambda}, i);
            if (p > 0) {
                for (int r = 0; r < rs.rank(); ++r)
                    lambda[r] -= p * rs.positive_coroot(i).c[r];
                changed = true;
            }
        }
    }
    return lambda;
}

inline bool is_superregular_lambda(const RootSystem& rs, const IntVec& lambda,
                                   const RegularityConfig& cfg, int m = 1) {
    IntVec rep = antidominant_representative(rs, lambda);
    int bound = chain_bound(cfg, m);
    for (int i = 0; i < rs.rank(); ++i) {
        int p = rs.pair_simple_root(CorootVector{rep}, i);
        if (std::abs(p) < bound) return false;
    }
    return true;
}

} // namespace qbg
