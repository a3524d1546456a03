#pragma once

// Speciality by degeneration, and the (P^1)^3 quadric-reduction conjecture
// harness.
//
// speciality() decides the status of the STANDARD FORM of the input (the
// Weyl-orbit representative; section counts are orbit-invariant, expected
// counts are not, so this is the orbit-stable notion). Routes:
//
//   - empty reduction            -> NonSpecial (dim = -1 = edim);
//   - r <= 2                     -> decided exactly by the fiber count
//                                   (two-point systems satisfy
//                                   dim = max(fcount, 0));
//   - r >= 3                     -> search degeneration splits of the
//                                   standard form S: pick k in 1..d_1 and a
//                                   point split s, forming
//                                     L1 = (k-1,   d_2..d_n)(m_1..m_s)
//                                     L2 = (d_1-k, d_2..d_n)(m_{s+1}..m_r).
//                                   A split certifies dim(S) = max(fcount(S),0)
//                                   when both children are certified fiber
//                                   non-special, fcount(L1)*fcount(L2) >= 0,
//                                   m_i <= k for i <= s and m_j <= d_1-k+1
//                                   for j > s. The node is then NonSpecial
//                                   when fcount(S) = vcount(S) and Special
//                                   (with the degeneration as certificate)
//                                   when fcount(S) > vcount(S).
//
// Children are recursed on in canonical (sorted, clamped) form; a child
// qualifies when its verdict is NonSpecial and its certified dimension
// equals max(fcount(child), 0), i.e. the child as split is fiber
// non-special. k runs ascending; s is tried balanced-first (|2s - r|
// minimal, ties toward smaller s), which keeps traces deterministic and
// splits point sets evenly before skewed splits.

#include <cstdlib>
#include <map>
#include <string>

#include "multifiber/interp.hpp"
#include "multifiber/weyl.hpp"

namespace multifiber {

enum class VerdictKind { NonSpecial, Special, Undecided };

inline const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::NonSpecial: return "non-special";
        case VerdictKind::Special: return "special";
        default: return "undecided";
    }
}

struct DegenLimits {
    int max_depth = 64;
    // two-point base case: declare special on fdim >= edim instead of the
    // corrected strict inequality
    bool strict_compat = false;
};

struct DegenTrace {
    DivisorClassY system; // canonical (sorted) system at this node
    std::optional<DivisorClassY> standard;
    Int fcount_sys = 0, vcount_sys = 0;
    Int fcount_std = 0, vcount_std = 0;
    std::string base; // "empty" | "two-point" | "split" | "open"
    Int k = 0;
    int s = 0;
    std::vector<DegenTrace> children;
};

struct Verdict {
    VerdictKind kind = VerdictKind::Undecided;
    DivisorClassY input;
    ReductionTrace reduction; // Weyl reduction of the input
    std::optional<DivisorClassY> standard;
    Int vcount_input = 0, fcount_input = 0;
    Int vcount_std = 0, fcount_std = 0;
    std::optional<Int> certified_count; // h^0, known unless Undecided
    std::optional<DegenTrace> trace;
    bool truncated = false;
};

namespace detail {

struct CertResult {
    VerdictKind kind = VerdictKind::Undecided;
    std::optional<Int> count;
    DegenTrace trace;
};

struct CertContext {
    const DegenLimits& limits;
    std::map<std::pair<std::vector<Int>, std::vector<Int>>, CertResult> memo;
    bool truncated = false;
};

inline DivisorClassY canonical_system(std::vector<Int> d, std::vector<Int> m) {
    std::stable_sort(d.begin(), d.end(), std::greater<Int>());
    for (auto& x : m)
        if (x < 0) x = 0;
    std::stable_sort(m.begin(), m.end(), std::greater<Int>());
    return DivisorClassY(std::move(d), std::move(m));
}

inline std::vector<int> balanced_split_order(int r) {
    std::vector<int> order;
    for (int s = 1; s < r; ++s) order.push_back(s);
    std::stable_sort(order.begin(), order.end(), [r](int a, int b) {
        const int da = std::abs(2 * a - r), db = std::abs(2 * b - r);
        return da != db ? da < db : a < b;
    });
    return order;
}

inline bool two_point_special(Int fc, Int vc, bool compat) {
    const Int fdim = fc - 1;
    const Int edim = std::max<Int>(vc - 1, -1);
    return compat ? fdim >= edim : fdim > edim;
}

inline CertResult certify(const DivisorClassY& sys, int depth, CertContext& ctx) {
    DivisorClassY C = canonical_system(sys.d, sys.m);
    auto key = std::make_pair(C.d, C.m);
    if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;
    if (depth > ctx.limits.max_depth) {
        ctx.truncated = true;
        CertResult res;
        res.trace.system = C;
        res.trace.base = "open";
        return res; // not memoized: truncation depends on the path
    }

    CertResult res;
    res.trace.system = C;
    res.trace.fcount_sys = fcount(C);
    res.trace.vcount_sys = vcount(C);

    ReductionTrace red = standard_form(C);
    if (red.is_empty()) {
        if (res.trace.fcount_sys > 0)
            throw std::logic_error("empty reduction with positive fiber count");
        res.trace.base = "empty";
        res.kind = VerdictKind::NonSpecial;
        res.count = 0;
        ctx.memo[key] = res;
        return res;
    }

    const DivisorClassY& S = *red.outcome;
    res.trace.standard = S;
    const Int fc = fcount(S);
    const Int vc = vcount(S);
    res.trace.fcount_std = fc;
    res.trace.vcount_std = vc;

    if (S.r() <= 2) {
        res.trace.base = "two-point";
        res.count = std::max<Int>(fc, 0);
        res.kind = two_point_special(fc, vc, ctx.limits.strict_compat)
                       ? VerdictKind::Special
                       : VerdictKind::NonSpecial;
        ctx.memo[key] = res;
        return res;
    }

    // search degeneration splits of the standard form
    std::vector<Int> sd = S.d;
    std::vector<Int> sm = S.m;
    for (auto& x : sm)
        if (x < 0) x = 0;
    const Int d1 = sd[0];
    const int r = static_cast<int>(sm.size());
    const auto order = balanced_split_order(r);
    for (Int k = 1; k <= d1; ++k) {
        if (sm[0] > k) continue; // m_i <= k already fails at i = 1
        for (int s : order) {
            if (sm[static_cast<size_t>(s)] > d1 - k + 1) continue;
            std::vector<Int> d1v = sd, d2v = sd;
            d1v[0] = k - 1;
            d2v[0] = d1 - k;
            DivisorClassY L1(d1v, std::vector<Int>(sm.begin(), sm.begin() + s));
            DivisorClassY L2(d2v, std::vector<Int>(sm.begin() + s, sm.end()));
            const Int f1 = fcount(L1), f2 = fcount(L2);
            if (chk_mul(f1, f2) < 0) continue;
            CertResult c1 = certify(L1, depth + 1, ctx);
            if (c1.kind != VerdictKind::NonSpecial || !c1.count ||
                *c1.count != std::max<Int>(f1, 0))
                continue; // child must be certified fiber non-special
            CertResult c2 = certify(L2, depth + 1, ctx);
            if (c2.kind != VerdictKind::NonSpecial || !c2.count ||
                *c2.count != std::max<Int>(f2, 0))
                continue;
            res.trace.base = "split";
            res.trace.k = k;
            res.trace.s = s;
            res.trace.children = {std::move(c1.trace), std::move(c2.trace)};
            res.count = std::max<Int>(fc, 0);
            res.kind = std::max<Int>(fc, 0) == std::max<Int>(vc, 0)
                           ? VerdictKind::NonSpecial
                           : VerdictKind::Special;
            ctx.memo[key] = res;
            return res;
        }
    }
    res.trace.base = "open";
    res.kind = VerdictKind::Undecided;
    if (!ctx.truncated) ctx.memo[key] = res;
    return res;
}

} // namespace detail

inline Verdict speciality(const DivisorClassY& D, const DegenLimits& limits = {}) {
    detail::require_nonnegative_degrees(D);
    for (Int x : D.m)
        if (x < 0)
            throw std::invalid_argument("speciality requires m >= 0 componentwise");

    Verdict v;
    v.input = D;
    v.vcount_input = vcount(D);
    v.fcount_input = fcount(D);
    v.reduction = standard_form(D);
    if (!v.reduction.is_empty()) {
        v.standard = v.reduction.outcome;
        v.vcount_std = vcount(*v.standard);
        v.fcount_std = fcount(*v.standard);
    }

    detail::CertContext ctx{limits, {}, false};
    detail::CertResult res = detail::certify(D, 0, ctx);
    v.kind = res.kind;
    v.certified_count = res.count;
    v.trace = std::move(res.trace);
    v.truncated = ctx.truncated && v.kind == VerdictKind::Undecided;
    return v;
}

// ---------------------------------------------------------------------------
// (P^1)^3: reduction by the quadric class Q = (1,1,1)(1^7)

/// q(D) = (d1+1)(d2+1)(d3+1) - d1 d2 d3 - sum_{i<=min(r,7)} m_i (m_i+1)/2.
inline Int q_value(const DivisorClassY& D) {
    if (D.n() != 3)
        throw std::invalid_argument("q_value is defined on (P^1)^3 only");
    Int q = chk_mul(chk_mul(D.d[0] + 1, D.d[1] + 1), D.d[2] + 1);
    q = chk_sub(q, chk_mul(chk_mul(D.d[0], D.d[1]), D.d[2]));
    const int lim = std::min(D.r(), 7);
    for (int i = 0; i < lim; ++i)
        q = chk_sub(q, chk_mul(D.m[static_cast<size_t>(i)], D.m[static_cast<size_t>(i)] + 1) / 2);
    return q;
}

/// D - Q: subtract (1,1,1) from d and 1 from the first min(r,7) multiplicities.
inline DivisorClassY subtract_quadric(const DivisorClassY& D) {
    if (D.n() != 3)
        throw std::invalid_argument("subtract_quadric is defined on (P^1)^3 only");
    DivisorClassY out = D;
    for (auto& x : out.d) x = chk_sub(x, 1);
    const int lim = std::min(D.r(), 7);
    for (int i = 0; i < lim; ++i) out.m[static_cast<size_t>(i)] = chk_sub(out.m[static_cast<size_t>(i)], 1);
    return out;
}

enum class ConjecturePrediction { ReduceByQ, Special, NonSpecial };

inline const char* to_string(ConjecturePrediction p) {
    switch (p) {
        case ConjecturePrediction::ReduceByQ: return "reduce-by-Q";
        case ConjecturePrediction::Special: return "special";
        default: return "non-special";
    }
}

/// Conjectural classification of a standard-form class on (P^1)^3:
/// q <= 0 predicts h^0(D) = h^0(D - Q); q > 0 predicts special exactly when
/// m_1 > d_3 + 1 (d_3 the smallest degree), the speciality then coming with
/// fiber non-speciality (dim = max(fcount, 0)).
inline ConjecturePrediction conjecture_predict(const DivisorClassY& D) {
    if (D.n() != 3)
        throw std::invalid_argument("conjecture_predict is defined on (P^1)^3 only");
    if (!is_standard(D))
        throw std::invalid_argument("conjecture_predict requires a standard-form class");
    if (q_value(D) <= 0) return ConjecturePrediction::ReduceByQ;
    const Int m1 = D.r() >= 1 ? D.m[0] : 0;
    return m1 > D.d[2] + 1 ? ConjecturePrediction::Special : ConjecturePrediction::NonSpecial;
}

struct ConjectureStep {
    DivisorClassY cls;
    Int q = 0;
    InterpReport oracle;
};

struct ConjectureReport {
    std::vector<ConjectureStep> chain; // input first
    std::string stop_reason;           // "prediction" | "degree-exhausted" | "not-standard"
    std::optional<ConjecturePrediction> terminal_prediction;
    std::optional<Int> predicted_count;
    bool agree = false;
};

/// Follows reduce-by-Q chains and compares the prediction with the oracle:
/// the report agrees when the oracle dimension is constant across every
/// reduction link and the terminal class matches its q > 0 prediction.
inline ConjectureReport conjecture_test(const DivisorClassY& D, const InterpConfig& cfg = {}) {
    if (D.n() != 3)
        throw std::invalid_argument("conjecture_test is defined on (P^1)^3 only");
    if (!is_standard(D))
        throw std::invalid_argument("conjecture_test requires a standard-form class");

    ConjectureReport rep;
    DivisorClassY cur = D;
    bool links_ok = true;
    while (true) {
        ConjectureStep step;
        step.cls = cur;
        step.q = q_value(cur);
        step.oracle = dim_oracle(cur, cfg);
        rep.chain.push_back(step);
        if (rep.chain.size() >= 2) {
            const auto& prev = rep.chain[rep.chain.size() - 2];
            links_ok = links_ok && prev.oracle.dim_affine == step.oracle.dim_affine;
        }
        if (step.q > 0) {
            const auto pred = conjecture_predict(cur);
            rep.terminal_prediction = pred;
            const Int vc = vcount(cur), fc = fcount(cur);
            if (pred == ConjecturePrediction::Special) {
                rep.predicted_count = std::max<Int>(fc, 0);
                rep.agree = links_ok && step.oracle.dim_affine == *rep.predicted_count &&
                            step.oracle.dim_affine > std::max<Int>(vc, 0);
            } else {
                rep.predicted_count = std::max<Int>(vc, 0);
                rep.agree = links_ok && step.oracle.dim_affine == *rep.predicted_count;
            }
            rep.stop_reason = "prediction";
            return rep;
        }
        DivisorClassY next = subtract_quadric(cur);
        bool valid = true;
        for (Int x : next.d) valid = valid && x >= 0;
        if (!valid) {
            rep.stop_reason = "degree-exhausted";
            rep.agree = links_ok;
            return rep;
        }
        if (!is_standard(next)) {
            rep.stop_reason = "not-standard";
            ConjectureStep last;
            last.cls = next;
            last.q = q_value(next);
            last.oracle = dim_oracle(next, cfg);
            links_ok = links_ok && rep.chain.back().oracle.dim_affine == last.oracle.dim_affine;
            rep.chain.push_back(last);
            rep.agree = links_ok;
            return rep;
        }
        cur = std::move(next);
    }
}

} // namespace multifiber
