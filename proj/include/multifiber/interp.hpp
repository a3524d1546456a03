#pragma once

// Finite-field interpolation oracle. The conditions matrix M(L) of a system
// L_{(d)}(m_1..m_r) has one column per monomial x^beta with 0 <= beta <= d
// componentwise (the system dehomogenized at y_1 = ... = y_n = 1) and one
// row per pair (point i, multi-index alpha) with sum(alpha) <= m_i - 1 and
// alpha <= d; the entry is the partial derivative d^alpha x^beta evaluated
// at the point, computed mod a prime p. The system's dimension at very
// general points is cols - rank for generic point choices; rank at any
// specialization is <= the generic rank, so the reported dim_affine is an
// upper-bound-certified estimate: it can only exceed the true count with
// probability on the order of (total degree)/p per trial, and when it
// equals vcount the system is certified non-special unconditionally.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>

#include "multifiber/dims.hpp"

namespace multifiber {

struct InterpConfig {
    Int prime = 2147483647; // must satisfy 2 < prime <= 2^31 - 1, prime
    std::uint64_t seed = 0;
    int trials = 3;
};

namespace fp {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    return pow_mod(a, p - 2, p);
}

// deterministic Miller-Rabin, valid for all p < 4.76e9 (bases 2, 7, 61)
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 61ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 7ull, 61ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace fp

struct FpMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint32_t> a; // row-major

    FpMatrix() = default;
    FpMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
    std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// Row-echelon rank over F_p (destructive).
inline Int rank_mod_p(FpMatrix& M, Int prime) {
    const auto p = static_cast<std::uint64_t>(prime);
    std::size_t pos = 0;
    for (std::size_t col = 0; col < M.cols && pos < M.rows; ++col) {
        std::size_t piv = pos;
        while (piv < M.rows && M.at(piv, col) == 0) ++piv;
        if (piv == M.rows) continue;
        if (piv != pos)
            for (std::size_t j = col; j < M.cols; ++j)
                std::swap(M.at(pos, j), M.at(piv, j));
        const std::uint64_t inv = fp::inv_mod(M.at(pos, col), p);
        for (std::size_t j = col; j < M.cols; ++j)
            M.at(pos, j) = static_cast<std::uint32_t>(M.at(pos, j) * inv % p);
        for (std::size_t i = pos + 1; i < M.rows; ++i) {
            const std::uint64_t f = M.at(i, col);
            if (f == 0) continue;
            const std::uint64_t neg = p - f;
            std::uint32_t* ri = &M.at(i, 0);
            const std::uint32_t* rp = &M.at(pos, 0);
            for (std::size_t j = col; j < M.cols; ++j)
                ri[j] = static_cast<std::uint32_t>((ri[j] + neg * rp[j]) % p);
        }
        ++pos;
    }
    return static_cast<Int>(pos);
}

/// All alpha in N^n with sum(alpha) <= m - 1 and alpha_j <= d_j, in
/// lexicographic order (first coordinate most significant). m <= 0 gives
/// the empty list.
inline std::vector<std::vector<Int>> condition_multiindices(Int m, const std::vector<Int>& d) {
    std::vector<std::vector<Int>> out;
    if (m <= 0) return out;
    std::vector<Int> cur(d.size(), 0);
    auto rec = [&](auto&& self, std::size_t pos, Int left) -> void {
        if (pos == d.size()) {
            out.push_back(cur);
            return;
        }
        const Int hi = std::min(d[pos] < 0 ? 0 : d[pos], left);
        for (Int v = 0; v <= hi; ++v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, m - 1);
    return out;
}

namespace detail {

inline void validate_prime_for(const DivisorClassY& D, const InterpConfig& cfg) {
    if (cfg.prime <= 2 || cfg.prime > 2147483647)
        throw std::invalid_argument("prime must satisfy 2 < p <= 2^31 - 1");
    if (!fp::is_prime(static_cast<std::uint64_t>(cfg.prime)))
        throw std::invalid_argument("modulus is not prime");
    Int sd = 0, mmax = 0;
    for (Int x : D.d) sd = chk_add(sd, x);
    for (Int x : D.m) mmax = std::max(mmax, x);
    if (cfg.prime <= 2 * std::max(sd, mmax))
        throw std::invalid_argument("prime too small for this system's derivative coefficients");
    if (cfg.trials < 1)
        throw std::invalid_argument("trials must be >= 1");
}

} // namespace detail

/// Conditions matrix at the given points (coordinates in F_p, all nonzero,
/// points pairwise distinct). Rows follow (point, alpha) order with alpha
/// from condition_multiindices; columns follow the odometer order of beta
/// (last coordinate fastest). Entry = prod_j fall(beta_j, alpha_j) *
/// point^(beta - alpha) mod p, fall the falling factorial.
inline FpMatrix build_matrix(const DivisorClassY& D,
                             const std::vector<std::vector<Int>>& points,
                             const InterpConfig& cfg) {
    detail::require_nonnegative_degrees(D);
    detail::validate_prime_for(D, cfg);
    const auto p = static_cast<std::uint64_t>(cfg.prime);
    const int n = D.n();
    if (static_cast<int>(points.size()) != D.r())
        throw std::invalid_argument("need one point per multiplicity");
    for (const auto& pt : points) {
        if (static_cast<int>(pt.size()) != n)
            throw std::invalid_argument("point has wrong number of coordinates");
        for (Int c : pt)
            if (c % cfg.prime == 0)
                throw std::invalid_argument("point coordinates must be nonzero mod p");
    }
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("points must be pairwise distinct");

    Int cols_ll = 1;
    for (Int x : D.d) cols_ll = chk_mul(cols_ll, x + 1);
    const auto cols = static_cast<std::size_t>(cols_ll);

    std::vector<std::vector<std::vector<Int>>> conds(points.size());
    std::size_t nrows = 0;
    const auto m = detail::clamped(D.m);
    for (std::size_t i = 0; i < points.size(); ++i) {
        conds[i] = condition_multiindices(m[i], D.d);
        nrows += conds[i].size();
    }

    FpMatrix M(nrows, cols);
    std::size_t row = 0;
    std::vector<Int> beta(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        // powers of the point's coordinates up to d_j
        std::vector<std::vector<std::uint64_t>> pw(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            auto c = static_cast<std::uint64_t>(((points[i][static_cast<size_t>(j)] % cfg.prime)
                                                 + cfg.prime) % cfg.prime);
            pw[static_cast<size_t>(j)].assign(static_cast<std::size_t>(D.d[static_cast<size_t>(j)]) + 1, 1);
            for (Int e = 1; e <= D.d[static_cast<size_t>(j)]; ++e)
                pw[static_cast<size_t>(j)][static_cast<std::size_t>(e)] =
                    pw[static_cast<size_t>(j)][static_cast<std::size_t>(e - 1)] * c % p;
        }
        for (const auto& alpha : conds[i]) {
            std::fill(beta.begin(), beta.end(), 0);
            for (std::size_t colIdx = 0;; ++colIdx) {
                std::uint64_t e = 1;
                for (int j = 0; j < n && e; ++j) {
                    const Int b = beta[static_cast<size_t>(j)], aj = alpha[static_cast<size_t>(j)];
                    if (b < aj) { e = 0; break; }
                    std::uint64_t fall = 1;
                    for (Int t = 0; t < aj; ++t)
                        fall = fall * static_cast<std::uint64_t>(b - t) % p;
                    e = e * fall % p;
                    e = e * pw[static_cast<size_t>(j)][static_cast<std::size_t>(b - aj)] % p;
                }
                M.at(row, colIdx) = static_cast<std::uint32_t>(e);
                // odometer: last coordinate fastest
                int j = n - 1;
                while (j >= 0 && beta[static_cast<size_t>(j)] == D.d[static_cast<size_t>(j)]) {
                    beta[static_cast<size_t>(j)] = 0;
                    --j;
                }
                if (j < 0) break;
                ++beta[static_cast<size_t>(j)];
            }
            ++row;
        }
    }
    return M;
}

struct InterpReport {
    Int cols = 0;       // prod(d_i + 1)
    Int rows = 0;       // sum_i |Delta(m_i) cap prod [0, d_i]|
    Int rank = 0;       // max over trials
    Int dim_affine = 0; // cols - rank
    Int dim_proj = 0;   // dim_affine - 1
    Int prime = 0;
    std::uint64_t seed = 0;
    int trials = 0;
};

namespace detail {

inline std::vector<std::vector<Int>> sample_points(int n, int r, const InterpConfig& cfg,
                                                   int trial) {
    std::mt19937_64 rng(fp::splitmix64(cfg.seed) ^
                        fp::splitmix64(0x5851F42D4C957F2Dull * static_cast<std::uint64_t>(trial + 1)));
    const auto p = static_cast<std::uint64_t>(cfg.prime);
    std::vector<std::vector<Int>> pts;
    pts.reserve(static_cast<std::size_t>(r));
    int attempts = 0;
    while (static_cast<int>(pts.size()) < r) {
        std::vector<Int> cand(static_cast<std::size_t>(n));
        for (auto& c : cand) c = static_cast<Int>(rng() % (p - 1) + 1);
        bool dup = false;
        for (const auto& q : pts) dup = dup || q == cand;
        if (!dup)
            pts.push_back(std::move(cand));
        else if (++attempts > 1000)
            throw std::runtime_error("could not sample distinct points");
    }
    return pts;
}

} // namespace detail

/// Dimension of the system at random (very general) points: builds the
/// conditions matrix for `trials` independent point samples and reports the
/// maximum rank seen. Deterministic in (D, cfg); each trial's sample depends
/// only on (seed, trial index).
inline InterpReport dim_oracle(const DivisorClassY& D, const InterpConfig& cfg = {}) {
    detail::require_nonnegative_degrees(D);
    detail::validate_prime_for(D, cfg);
    InterpReport rep;
    rep.prime = cfg.prime;
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    Int cols = 1;
    for (Int x : D.d) cols = chk_mul(cols, x + 1);
    rep.cols = cols;
    Int nrows = 0;
    for (Int mi : detail::clamped(D.m))
        nrows = chk_add(nrows, static_cast<Int>(condition_multiindices(mi, D.d).size()));
    rep.rows = nrows;
    Int best = 0;
    for (int t = 0; t < cfg.trials; ++t) {
        auto pts = detail::sample_points(D.n(), D.r(), cfg, t);
        FpMatrix M = build_matrix(D, pts, cfg);
        best = std::max(best, rank_mod_p(M, cfg.prime));
    }
    rep.rank = best;
    rep.dim_affine = rep.cols - rep.rank;
    rep.dim_proj = rep.dim_affine - 1;
    if (rep.dim_affine < vcount(D))
        throw std::logic_error("oracle rank exceeded the generic bound");
    return rep;
}

/// Monomial basis of a system through at most two points placed at the two
/// torus-fixed corners: all (a, b) with a_i + b_i = d_i, sum(a) >= m_1 and
/// sum(b) >= m_2. Its size equals fcount(D).
inline std::vector<std::pair<std::vector<Int>, std::vector<Int>>>
monomial_basis_two_points(const DivisorClassY& D) {
    if (D.r() > 2)
        throw std::invalid_argument("monomial_basis_two_points requires r <= 2");
    detail::require_nonnegative_degrees(D);
    const auto m = detail::clamped(D.m);
    const Int m1 = D.r() >= 1 ? m[0] : 0;
    const Int m2 = D.r() >= 2 ? m[1] : 0;
    Int sd = 0;
    for (Int x : D.d) sd = chk_add(sd, x);
    std::vector<std::pair<std::vector<Int>, std::vector<Int>>> out;
    std::vector<Int> a(D.d.size(), 0);
    auto rec = [&](auto&& self, std::size_t pos, Int sum_a) -> void {
        if (pos == D.d.size()) {
            if (sum_a >= m1 && sd - sum_a >= m2) {
                std::vector<Int> b(D.d.size());
                for (std::size_t i = 0; i < b.size(); ++i) b[i] = D.d[i] - a[i];
                out.emplace_back(a, std::move(b));
            }
            return;
        }
        for (Int v = 0; v <= D.d[pos]; ++v) {
            a[pos] = v;
            self(self, pos + 1, sum_a + v);
        }
        a[pos] = 0;
    };
    rec(rec, 0, 0);
    return out;
}

/// Exact multiplicity of the fiber F_{j,I} in the base locus for r <= 2:
/// the minimal sum over I of the deciding exponent block across the monomial
/// basis. Agrees with fiber_multiplicity_bound.
inline Int fiber_multiplicity_exact_r2(const DivisorClassY& D, const FiberIndex& f) {
    if (D.r() > 2)
        throw std::invalid_argument("fiber_multiplicity_exact_r2 requires r <= 2");
    detail::validate_fiber_index(D, f);
    auto basis = monomial_basis_two_points(D);
    if (basis.empty())
        throw std::invalid_argument("empty system has no fiber multiplicities");
    Int best = -1;
    for (const auto& [a, b] : basis) {
        Int s = 0;
        for (int c : f.coords)
            s += (f.j == 1 ? a : b)[static_cast<std::size_t>(c - 1)];
        if (best < 0 || s < best) best = s;
    }
    return best;
}

} // namespace multifiber
