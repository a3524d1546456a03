#pragma once

// Integer model of the Picard lattices of two blow-ups:
//
//   Y = blow-up of (P^1)^n at r points, with basis H_1..H_n, E_1..E_r and
//       intersection form  H_i.H_j = 1 - delta_ij,  E_k.E_s = -delta_ks,
//       H_i.E_k = 0;
//   X = blow-up of P^n at s points, with basis H, E_1..E_s and form
//       H^2 = n-1,  E_i.E_j = -delta_ij,  H.E_i = 0.
//
// A class on Y is stored as (d, m) meaning  sum d_i H_i - sum m_j E_j,
// so m holds the *subtracted* multiplicities: the linear system
// L_{(d)}(m_1..m_r) has d, m >= 0, while the basis class E_j itself is
// represented by m_j = -1. Intermediate classes produced by reflections
// may have entries of either sign.

#include <vector>

#include "multifiber/checked.hpp"

namespace multifiber {

struct DivisorClassY {
    std::vector<Int> d; // coefficients of H_1..H_n
    std::vector<Int> m; // subtracted coefficients of E_1..E_r

    DivisorClassY() = default;
    DivisorClassY(std::vector<Int> deg, std::vector<Int> mult)
        : d(std::move(deg)), m(std::move(mult)) {
        if (d.empty())
            throw std::invalid_argument("divisor class needs n >= 1");
    }

    int n() const { return static_cast<int>(d.size()); }
    int r() const { return static_cast<int>(m.size()); }

    bool operator==(const DivisorClassY& o) const = default;

    // basis class H_i (1-based i)
    static DivisorClassY basis_h(int i, int n, int r) {
        DivisorClassY c(std::vector<Int>(n, 0), std::vector<Int>(r, 0));
        c.d.at(i - 1) = 1;
        return c;
    }
    // basis class E_j (1-based j); note the sign convention above
    static DivisorClassY basis_e(int j, int n, int r) {
        DivisorClassY c(std::vector<Int>(n, 0), std::vector<Int>(r, 0));
        c.m.at(j - 1) = -1;
        return c;
    }
};

inline void require_same_shape(const DivisorClassY& a, const DivisorClassY& b) {
    if (a.n() != b.n() || a.r() != b.r())
        throw std::invalid_argument("divisor classes live on different blow-ups");
}

inline DivisorClassY operator+(const DivisorClassY& a, const DivisorClassY& b) {
    require_same_shape(a, b);
    DivisorClassY c = a;
    for (int i = 0; i < a.n(); ++i) c.d[i] = chk_add(c.d[i], b.d[i]);
    for (int j = 0; j < a.r(); ++j) c.m[j] = chk_add(c.m[j], b.m[j]);
    return c;
}

inline DivisorClassY operator-(const DivisorClassY& a, const DivisorClassY& b) {
    require_same_shape(a, b);
    DivisorClassY c = a;
    for (int i = 0; i < a.n(); ++i) c.d[i] = chk_sub(c.d[i], b.d[i]);
    for (int j = 0; j < a.r(); ++j) c.m[j] = chk_sub(c.m[j], b.m[j]);
    return c;
}

inline DivisorClassY operator*(Int k, const DivisorClassY& a) {
    DivisorClassY c = a;
    for (auto& x : c.d) x = chk_mul(k, x);
    for (auto& x : c.m) x = chk_mul(k, x);
    return c;
}

/// Intersection pairing on Pic(Y):
///   A.B = sum_{i != j} A.d_i B.d_j - sum_k A.m_k B.m_k.
inline Int pair_y(const DivisorClassY& a, const DivisorClassY& b) {
    require_same_shape(a, b);
    // sum_{i != j} a_i b_j = (sum a)(sum b) - sum a_i b_i
    Int sa = 0, sb = 0, diag = 0;
    for (int i = 0; i < a.n(); ++i) {
        sa = chk_add(sa, a.d[i]);
        sb = chk_add(sb, b.d[i]);
        diag = chk_add(diag, chk_mul(a.d[i], b.d[i]));
    }
    Int res = chk_sub(chk_mul(sa, sb), diag);
    for (int j = 0; j < a.r(); ++j)
        res = chk_sub(res, chk_mul(a.m[j], b.m[j]));
    return res;
}

/// Canonical class K_Y = -2 sum H_i + (n-1) sum E_j (stored with m_j = -(n-1)).
inline DivisorClassY canonical_y(int n, int r) {
    if (n < 2)
        throw std::invalid_argument("canonical_y requires n >= 2");
    return DivisorClassY(std::vector<Int>(n, -2), std::vector<Int>(r, -(Int{n} - 1)));
}

/// Numerical (-1)-class test: D^2 = -1 and D.K_Y = -(n-1), the integral form
/// of D.K = -1 for K = K_Y/(n-1). Irreducibility/reducedness of the class is
/// not (and cannot be) checked at lattice level.
inline bool is_minus_one_class(const DivisorClassY& D) {
    if (D.n() < 2) return false;
    if (pair_y(D, D) != -1) return false;
    return pair_y(D, canonical_y(D.n(), D.r())) == -(Int{D.n()} - 1);
}

/// A root: a class R with R^2 = -2, defining the reflection D -> D + (D.R) R.
struct Root {
    DivisorClassY cls;
    explicit Root(DivisorClassY c) : cls(std::move(c)) {
        if (pair_y(cls, cls) != -2)
            throw std::invalid_argument("root must have self-intersection -2");
    }
};

inline DivisorClassY reflect(const DivisorClassY& D, const Root& R) {
    require_same_shape(D, R.cls);
    return D + pair_y(D, R.cls) * R.cls;
}

/// Generators of the Weyl group W(Y): the n+r-1 roots
///   H_1 - E_1 - E_2,  H_i - H_{i+1} (i < n),  E_j - E_{j+1} (j < r).
inline std::vector<Root> weyl_generators(int n, int r) {
    if (r < 2)
        throw std::invalid_argument("weyl_generators requires r >= 2");
    std::vector<Root> gens;
    gens.reserve(static_cast<size_t>(n) + r - 1);
    {
        DivisorClassY c(std::vector<Int>(n, 0), std::vector<Int>(r, 0));
        c.d[0] = 1;
        c.m[0] = 1; // -E_1 - E_2 subtracts multiplicity 1 twice
        c.m[1] = 1;
        gens.emplace_back(std::move(c));
    }
    for (int i = 0; i + 1 < n; ++i) {
        DivisorClassY c(std::vector<Int>(n, 0), std::vector<Int>(r, 0));
        c.d[i] = 1;
        c.d[i + 1] = -1;
        gens.emplace_back(std::move(c));
    }
    for (int j = 0; j + 1 < r; ++j) {
        DivisorClassY c(std::vector<Int>(n, 0), std::vector<Int>(r, 0));
        c.m[j] = -1; // E_j - E_{j+1}
        c.m[j + 1] = 1;
        gens.emplace_back(std::move(c));
    }
    return gens;
}

// ---------------------------------------------------------------------------

struct DivisorClassX {
    int n = 0;          // dimension of the ambient P^n
    Int d0 = 0;         // coefficient of H
    std::vector<Int> m; // subtracted coefficients of E_1..E_s

    DivisorClassX() = default;
    DivisorClassX(int amb, Int deg, std::vector<Int> mult)
        : n(amb), d0(deg), m(std::move(mult)) {
        if (n < 1)
            throw std::invalid_argument("divisor class needs n >= 1");
    }

    int s() const { return static_cast<int>(m.size()); }

    bool operator==(const DivisorClassX& o) const = default;
};

/// Pairing on Pic(X): A.B = (n-1) A.d0 B.d0 - sum A.m_k B.m_k. The H^2 = n-1
/// normalization is pinned by requiring the lattice correspondence with Y to
/// be an isometry.
inline Int pair_x(const DivisorClassX& a, const DivisorClassX& b) {
    if (a.n != b.n || a.s() != b.s())
        throw std::invalid_argument("divisor classes live on different blow-ups");
    Int res = chk_mul(Int{a.n} - 1, chk_mul(a.d0, b.d0));
    for (int j = 0; j < a.s(); ++j)
        res = chk_sub(res, chk_mul(a.m[j], b.m[j]));
    return res;
}

} // namespace multifiber
