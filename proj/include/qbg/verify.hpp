#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <memory>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qbg/chains.hpp"
#include "qbg/encode.hpp"
#include "qbg/mobius.hpp"

namespace qbg {

// Batch verification harness. A sweep walks a coordinate box of antidominant
// translations, cross-checks independent computations on every pair inside a
// window, and aggregates a report whose ordering is canonical, so fanned-out
// runs are reproducible. Nothing mutable is shared across workers: each one
// builds its own group, graph, and caches.

// One pair where two methods (or a method and the predicted locus) differ.
struct Disagreement {
    std::string x;
    std::string y;
    std::string detail;

    bool operator==(const Disagreement& o) const {
        return x == o.x && y == o.y && detail == o.detail;
    }
    bool operator<(const Disagreement& o) const {
        return std::tie(y, x, detail) < std::tie(o.y, o.x, o.detail);
    }
};

struct VerificationReport {
    std::string kind; // "theorem" or "boundary"
    std::string type_label;
    Convention convention = Convention::Untwisted;
    RegularityProfile profile = RegularityProfile::Milicevic;
    IntVec box_lo;
    IntVec box_hi;
    int window = 0; // coordinate window for lambda' - lambda (theorem sweeps)
    long long lambdas_swept = 0;
    long long lambdas_skipped = 0; // antidominant but below the chain bound
    long long pairs_checked = 0;
    std::vector<Disagreement> disagreements; // sorted; empty means pass
    double runtime_seconds = 0.0;

    bool pass() const { return disagreements.empty(); }

    nlohmann::json to_json() const {
        nlohmann::json dis = nlohmann::json::array();
        for (const Disagreement& d : disagreements)
            dis.push_back({{"x", d.x}, {"y", d.y}, {"detail", d.detail}});
        return nlohmann::json{{"version", kToolVersion},
                              {"kind", kind},
                              {"type", type_label},
                              {"convention", convention_name(convention)},
                              {"profile", profile_name(profile)},
                              {"box", {{"lo", box_lo}, {"hi", box_hi}}},
                              {"window", window},
                              {"lambdas_swept", lambdas_swept},
                              {"lambdas_skipped", lambdas_skipped},
                              {"pairs_checked", pairs_checked},
                              {"disagreements", dis},
                              {"pass", pass()},
                              {"runtime_seconds", runtime_seconds}};
    }
};

// QBG_THREADS caps worker fan-out; unset means hardware concurrency.
inline int thread_cap() {
    const char* s = std::getenv("QBG_THREADS");
    if (!s || !*s) {
        unsigned hc = std::thread::hardware_concurrency();
        return hc == 0 ? 1 : (int)hc;
    }
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    check_input(end != s && *end == '\0' && v >= 1 && v <= 4096,
                "QBG_THREADS must be a positive integer");
    return (int)v;
}

// Every integer point of the coordinate box [lo, hi], empty when some
// coordinate range is.
inline std::vector<IntVec> box_points(const IntVec& lo, const IntVec& hi) {
    check_input(lo.size() == hi.size(), "box corners need equal rank");
    for (size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i]) return {};
    std::vector<IntVec> out;
    IntVec cur = lo;
    while (true) {
        out.push_back(cur);
        size_t i = 0;
        while (i < cur.size() && cur[i] == hi[i]) {
            cur[i] = lo[i];
            ++i;
        }
        if (i == cur.size()) break;
        ++cur[i];
    }
    return out;
}

namespace detail {

struct SweepPart {
    long long pairs = 0;
    std::vector<Disagreement> dis;
};

// Runs one body instance per worker over an interleaved share of the lambda
// list. make_body() -> unique_ptr<Body>; Body::operator()(lambda, part).
template <class BodyFactory>
inline SweepPart run_sweep(const std::vector<IntVec>& lambdas, BodyFactory make_body) {
    int workers = thread_cap();
    if (workers > (int)lambdas.size()) workers = (int)lambdas.size();
    if (workers <= 1) {
        SweepPart acc;
        auto body = make_body();
        for (const IntVec& lam : lambdas) (*body)(lam, acc);
        return acc;
    }
    std::vector<SweepPart> parts((size_t)workers);
    std::vector<std::exception_ptr> errors((size_t)workers);
    std::vector<std::thread> pool;
    pool.reserve((size_t)workers);
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&, t] {
            try {
                auto body = make_body();
                for (size_t i = (size_t)t; i < lambdas.size(); i += (size_t)workers)
                    (*body)(lambdas[i], parts[(size_t)t]);
            } catch (...) {
                errors[(size_t)t] = std::current_exception();
            }
        });
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
    SweepPart acc;
    for (SweepPart& p : parts) {
        acc.pairs += p.pairs;
        acc.dis.insert(acc.dis.end(), p.dis.begin(), p.dis.end());
    }
    return acc;
}

struct LambdaSelection {
    std::vector<IntVec> kept;
    long long skipped = 0;
};

// Keeps the antidominant lambdas clearing the chain bound at level m; the
// rest sit outside the statement's hypothesis and are skipped with a count.
// A box with antidominant points but no certified ones refuses outright, so
// an acceptance run cannot silently verify nothing.
inline LambdaSelection certified_lambdas(const RootSystem& rs, const IntVec& lo,
                                         const IntVec& hi, RegularityProfile profile,
                                         int m) {
    WeylGroup W(rs);
    RegularityConfig cfg = make_regularity_config(W, profile);
    LambdaSelection sel;
    long long antidominant = 0;
    for (IntVec& lam : box_points(lo, hi)) {
        if (!rs.is_antidominant(CorootVector{lam})) continue;
        ++antidominant;
        if (!is_superregular_lambda(rs, lam, cfg, m)) {
            ++sel.skipped;
            continue;
        }
        sel.kept.push_back(std::move(lam));
    }
    if (antidominant > 0 && sel.kept.empty())
        throw RegularityError("no lambda in the box is superregular: profile " +
                              std::string(profile_name(profile)) +
                              " needs |<lambda, alpha_i>| >= " +
                              std::to_string(chain_bound(cfg, m)) +
                              " (chain bound at m=" + std::to_string(m) + ")");
    return sel;
}

struct TheoremWorker {
    RootSystem rs;
    WeylGroup W;
    AffineWeyl aff;
    QBGraph g;
    MobiusContext ctx;
    BruhatCache cache;
    int window;

    TheoremWorker(const std::string& type, Convention conv, RegularityProfile profile,
                  int win)
        : rs(RootSystem::named(type)),
          W(rs),
          aff(W, conv),
          g(W, conv),
          ctx(aff, g, make_regularity_config(W, profile)),
          window(win) {}

    void flag(SweepPart& acc, const AffineElement& x, const AffineElement& y,
              std::string detail) const {
        acc.dis.push_back({format_element(aff, x), format_element(aff, y),
                           std::move(detail)});
    }

    void check_pair(const AffineElement& x, const AffineElement& y, int ylen,
                    const IntVec& locus, SweepPart& acc) {
        bool on_locus = x.t.c == locus;
        int gap = ylen - aff.length(x);
        int expected = on_locus ? (gap % 2 == 0 ? 1 : -1) : 0;
        int seen = 0;
        if (aff.bruhat_leq(x, y, cache)) {
            seen = ctx.mobius_oracle(x, y);
            MobiusResult d = ctx.mobius_deodhar(x, y);
            if (d.value != seen)
                flag(acc, x, y,
                     "deodhar=" + std::to_string(d.value) +
                         " disagrees with oracle=" + std::to_string(seen));
        } else if (on_locus) {
            flag(acc, x, y, "support element is not below y");
        }
        if (seen != expected)
            flag(acc, x, y,
                 "oracle=" + std::to_string(seen) + " but the locus predicts " +
                     std::to_string(expected));
        if (aff.is_superregular(y, ctx.config(), std::max(1, gap))) {
            int s = ctx.mobius_superregular(x, y).value;
            if (s != expected)
                flag(acc, x, y,
                     "superregular=" + std::to_string(s) +
                         " but the locus predicts " + std::to_string(expected));
        }
    }

    void operator()(const IntVec& lam, SweepPart& acc) {
        for (int wi = 0; wi < W.size(); ++wi) {
            WeylElement w = W.element(wi);
            AffineElement y = aff.make(w, CorootVector{lam});
            check_internal(aff.is_affine_grassmannian(y),
                           "antidominant translations make Grassmannian elements");
            int ylen = aff.length(y);
            for (int ui = 0; ui < W.size(); ++ui) {
                WeylElement u = W.element(ui);
                IntVec locus = vec_add(lam, g.min_weight(w, u).weight);
                IntVec delta((size_t)W.rank(), 0);
                while (true) {
                    AffineElement x = aff.make(u, CorootVector{vec_add(lam, delta)});
                    if (aff.is_affine_grassmannian(x)) {
                        ++acc.pairs;
                        check_pair(x, y, ylen, locus, acc);
                    }
                    size_t i = 0;
                    while (i < delta.size() && delta[i] == window) {
                        delta[i] = 0;
                        ++i;
                    }
                    if (i == delta.size()) break;
                    ++delta[i];
                }
            }
        }
    }
};

struct BoundaryWorker {
    RootSystem rs;
    WeylGroup W;
    AffineWeyl aff;
    QBGraph g;
    ChainContext cctx;

    BoundaryWorker(const std::string& type, Convention conv, RegularityProfile profile)
        : rs(RootSystem::named(type)),
          W(rs),
          aff(W, conv),
          g(W, conv),
          cctx(aff, g, make_regularity_config(W, profile)) {}

    void flag(SweepPart& acc, const AffineElement& x, const AffineElement& y,
              std::string detail) const {
        acc.dis.push_back({format_element(aff, x), format_element(aff, y),
                           std::move(detail)});
    }

    void operator()(const IntVec& lam, SweepPart& acc) {
        for (int wi = 0; wi < W.size(); ++wi) {
            AffineElement y = aff.make(W.element(wi), CorootVector{lam});
            // all x two covers down, with every middle of the full group
            std::unordered_map<AffineElement, std::vector<AffineElement>,
                               AffineElementHash>
                middles;
            for (const Cover& cz : aff.covers_below(y, CoverMode::Generic))
                for (const Cover& cx : aff.covers_below(cz.x, CoverMode::Generic))
                    middles[cx.x].push_back(cz.x);
            for (auto& [x, mids] : middles) {
                if (!aff.is_affine_grassmannian(x)) continue;
                ++acc.pairs;
                if (mids.size() != 2) {
                    flag(acc, x, y,
                         "length-2 interval has " + std::to_string(mids.size()) +
                             " middle elements");
                    continue;
                }
                std::vector<AffineElement> inside;
                std::vector<AffineElement> outside;
                for (const AffineElement& z : mids)
                    (aff.is_affine_grassmannian(z) ? inside : outside).push_back(z);
                if (inside.empty()) {
                    flag(acc, x, y, "no Grassmannian chain through the interval");
                    continue;
                }
                bool expect_violation = inside.size() == 1;
                for (const AffineElement& z : inside) {
                    BoundaryCheck bc = cctx.detect_boundary_violation(x, z, y);
                    if (bc.violated != expect_violation) {
                        flag(acc, x, y,
                             std::string("2-loop detector says ") +
                                 (bc.violated ? "violated" : "clean") + " but " +
                                 std::to_string(inside.size()) +
                                 " of 2 middles are Grassmannian");
                        continue;
                    }
                    if (bc.violated && *bc.witness != outside.front())
                        flag(acc, x, y,
                             "witness " + format_element(aff, *bc.witness) +
                                 " is not the excluded middle " +
                                 format_element(aff, outside.front()));
                }
            }
        }
    }
};

} // namespace detail

// Sweeps the closed-form support statement over the box: for every
// y = w t_lambda and every x = w' t_{lambda + delta} with delta in
// [0, window]^rank, the oracle and Deodhar values agree, the closed form
// agrees wherever its certification holds, and the nonzero locus is exactly
// lambda' = lambda + M(w, w') with value (-1)^{length gap}. Lambdas outside
// the statement's hypothesis are skipped: non-antidominant ones silently
// (their w t_lambda leave the Grassmannian), uncertified antidominant ones
// with a count. Refuses when nothing in a non-empty box is certified.
inline VerificationReport verify_theorem(const std::string& type_label, const IntVec& box_lo,
                                         const IntVec& box_hi, RegularityProfile profile,
                                         Convention conv = Convention::Untwisted,
                                         int window = 4) {
    auto start = std::chrono::steady_clock::now();
    RootSystem rs = RootSystem::named(type_label);
    check_input((int)box_lo.size() == rs.rank() && (int)box_hi.size() == rs.rank(),
                "box corners need one coordinate per node");
    check_input(window >= 0, "window must be nonnegative");

    VerificationReport rep;
    rep.kind = "theorem";
    rep.type_label = rs.label();
    rep.convention = conv;
    rep.profile = profile;
    rep.box_lo = box_lo;
    rep.box_hi = box_hi;
    rep.window = window;

    detail::LambdaSelection sel =
        detail::certified_lambdas(rs, box_lo, box_hi, profile, 1);
    detail::SweepPart total = detail::run_sweep(sel.kept, [&] {
        return std::make_unique<detail::TheoremWorker>(type_label, conv, profile, window);
    });

    rep.lambdas_swept = (long long)sel.kept.size();
    rep.lambdas_skipped = sel.skipped;
    rep.pairs_checked = total.pairs;
    rep.disagreements = std::move(total.dis);
    std::sort(rep.disagreements.begin(), rep.disagreements.end());
    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// Sweeps the two-cover boundary dichotomy over the box: for every
// Grassmannian y = w t_lambda and every Grassmannian x two covers down, the
// interval [x, y] leaves the Grassmannian exactly when the 2-loop detector
// fires, and the detector's witness is the excluded middle element. Lambda
// selection works as in verify_theorem, at certification level m = 2.
inline VerificationReport verify_boundary(const std::string& type_label,
                                          const IntVec& box_lo, const IntVec& box_hi,
                                          RegularityProfile profile,
                                          Convention conv = Convention::Untwisted) {
    auto start = std::chrono::steady_clock::now();
    RootSystem rs = RootSystem::named(type_label);
    check_input((int)box_lo.size() == rs.rank() && (int)box_hi.size() == rs.rank(),
                "box corners need one coordinate per node");

    VerificationReport rep;
    rep.kind = "boundary";
    rep.type_label = rs.label();
    rep.convention = conv;
    rep.profile = profile;
    rep.box_lo = box_lo;
    rep.box_hi = box_hi;

    // length-2 chains need certification at m = 2
    detail::LambdaSelection sel =
        detail::certified_lambdas(rs, box_lo, box_hi, profile, 2);
    detail::SweepPart total = detail::run_sweep(sel.kept, [&] {
        return std::make_unique<detail::BoundaryWorker>(type_label, conv, profile);
    });

    rep.lambdas_swept = (long long)sel.kept.size();
    rep.lambdas_skipped = sel.skipped;
    rep.pairs_checked = total.pairs;
    rep.disagreements = std::move(total.dis);
    std::sort(rep.disagreements.begin(), rep.disagreements.end());
    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace qbg
