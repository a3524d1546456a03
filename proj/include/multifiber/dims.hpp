#pragma once

// Closed-form counting for linear systems L_{(d)}(m) on (P^1)^n:
// virtual and fiber-corrected section counts, effectivity for <= 2 points,
// and base-locus multiplicity bounds for fibers of coordinate projections.
//
// Conventions: *count values are affine (dimension of the vector space of
// sections predicted by the formula); *dim = *count - 1 is projective.
// Negative multiplicities are clamped to 0 before counting (a class D - kE_j
// with k > 0 has the same section count as with m_j = 0).

#include <algorithm>
#include <vector>

#include "multifiber/lattice.hpp"

namespace multifiber {

/// binom(a, k) with the convention that a < k (or a < 0) gives 0.
inline Int binom(Int a, Int k) {
    if (k < 0 || a < k) return 0;
    Int res = 1;
    for (Int i = 1; i <= k; ++i) {
        // exact at every step: res * (a-k+i) is divisible by i
        res = chk_mul(res, a - k + i) / i;
    }
    return res;
}

namespace detail {

inline std::vector<Int> clamped(const std::vector<Int>& m) {
    std::vector<Int> out = m;
    for (auto& x : out)
        if (x < 0) x = 0;
    return out;
}

inline void require_nonnegative_degrees(const DivisorClassY& D) {
    for (Int x : D.d)
        if (x < 0)
            throw std::invalid_argument("counting requires d >= 0 componentwise");
}

} // namespace detail

/// Expected section count: prod(d_i + 1) - sum_i binom(n + m_i - 1, n).
inline Int vcount(const DivisorClassY& D) {
    detail::require_nonnegative_degrees(D);
    Int total = 1;
    for (Int x : D.d) total = chk_mul(total, x + 1);
    for (Int mi : detail::clamped(D.m))
        total = chk_sub(total, binom(D.n() + mi - 1, D.n()));
    return total;
}

/// Fiber-corrected section count. For every point i and every subset
/// I of {1..n} with m_i >= S_I, where s_I = sum_{j in I} d_j and
/// S_I = 1 + |I| + s_I, the term (-1)^{|I|+1} binom(m_i - S_I + n, n) is
/// added to prod(d_i + 1). The I = {} terms reproduce the point terms of
/// vcount, so fcount = vcount + (corrections from nonempty I).
inline Int fcount(const DivisorClassY& D) {
    detail::require_nonnegative_degrees(D);
    const int n = D.n();
    if (n > 62)
        throw std::invalid_argument("fcount: n too large for subset enumeration");
    Int total = 1;
    for (Int x : D.d) total = chk_mul(total, x + 1);
    for (Int mi : detail::clamped(D.m)) {
        for (unsigned long long mask = 0; mask < (1ull << n); ++mask) {
            Int size = 0, s_I = 0;
            for (int j = 0; j < n; ++j)
                if (mask >> j & 1) {
                    ++size;
                    s_I = chk_add(s_I, D.d[j]);
                }
            const Int S_I = 1 + size + s_I;
            if (mi < S_I) continue;
            const Int term = binom(mi - S_I + n, n);
            total = (size % 2 == 0) ? chk_sub(total, term) : chk_add(total, term);
        }
    }
    return total;
}

struct DimReport {
    Int vcount = 0;
    Int vdim = 0;  // vcount - 1
    Int edim = 0;  // max(vdim, -1)
    Int fcount = 0;
    Int fdim = 0;  // fcount - 1
    Int efdim = 0; // max(fdim, -1)
};

inline DimReport dim_report(const DivisorClassY& D) {
    DimReport rep;
    rep.vcount = vcount(D);
    rep.fcount = fcount(D);
    rep.vdim = rep.vcount - 1;
    rep.fdim = rep.fcount - 1;
    rep.edim = rep.vdim < -1 ? -1 : rep.vdim;
    rep.efdim = rep.fdim < -1 ? -1 : rep.fdim;
    return rep;
}

/// Two-point effectivity: L_{(d)}(m_1, m_2) is nonempty iff
/// sum d_i >= m_1 + m_2 (missing multiplicities read as 0).
inline bool effective_two_points(const DivisorClassY& D) {
    if (D.r() > 2)
        throw std::invalid_argument("effective_two_points requires r <= 2");
    detail::require_nonnegative_degrees(D);
    Int sd = 0;
    for (Int x : D.d) sd = chk_add(sd, x);
    Int sm = 0;
    for (Int x : detail::clamped(D.m)) sm = chk_add(sm, x);
    return sd >= sm;
}

/// The fiber of the coordinate projection P_I through point j.
struct FiberIndex {
    int j;                  // point index, 1-based
    std::vector<int> coords; // the subset I of {1..n}, 1-based
};

namespace detail {

inline void validate_fiber_index(const DivisorClassY& D, const FiberIndex& f) {
    if (f.j < 1 || f.j > D.r())
        throw std::invalid_argument("fiber index: point out of range");
    if (f.coords.empty() || static_cast<int>(f.coords.size()) >= D.n())
        throw std::invalid_argument("fiber index: I must be a proper nonempty subset");
    std::vector<bool> seen(static_cast<size_t>(D.n()), false);
    for (int c : f.coords) {
        if (c < 1 || c > D.n() || seen[static_cast<size_t>(c - 1)])
            throw std::invalid_argument("fiber index: bad coordinate subset");
        seen[static_cast<size_t>(c - 1)] = true;
    }
}

} // namespace detail

/// Lower bound max(m_j - s_{I^c}, 0) on the multiplicity of the fiber F_{j,I}
/// in the base locus of a nonempty system; exact when r <= 2.
inline Int fiber_multiplicity_bound(const DivisorClassY& D, const FiberIndex& f) {
    detail::validate_fiber_index(D, f);
    std::vector<bool> in_I(static_cast<size_t>(D.n()), false);
    for (int c : f.coords) in_I[static_cast<size_t>(c - 1)] = true;
    Int s_comp = 0;
    for (int i = 0; i < D.n(); ++i)
        if (!in_I[static_cast<size_t>(i)]) s_comp = chk_add(s_comp, D.d[i]);
    Int mj = D.m[static_cast<size_t>(f.j - 1)];
    if (mj < 0) mj = 0;
    const Int mu = mj - s_comp;
    return mu > 0 ? mu : 0;
}

} // namespace multifiber
