#pragma once

// Rational quadratic lattices: Gram data, order / isotropy level, exact
// Fincke-Pohst enumeration of definite shells, and enumeration of vectors
// crossing a geodesic between two rational isotropic lines (the v = v^par +
// v^perp split, definite part first, then the finitely many pairing pairs).

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "arith.hpp"
#include "intmat.hpp"

namespace rmc {

struct ImproperIntersection : std::domain_error {
    explicit ImproperIntersection(const std::string& w) : std::domain_error(w) {}
};

// small coordinate vector (rank <= 4 everywhere in this library)
struct LVec {
    std::array<i64, 4> c{};
    int n = 0;
    int denexp = 0;  // vector is c / p^denexp

    i64& operator[](int i) { return c[i]; }
    i64 operator[](int i) const { return c[i]; }
    bool operator==(const LVec& o) const { return n == o.n && c == o.c && denexp == o.denexp; }
    bool operator<(const LVec& o) const { return c < o.c; }
};

class QuadLattice {
public:
    // gram_q is the matrix A with q(v) = v^T A v (so A_ii = q(e_i),
    // A_ij = <e_i,e_j>/2); must be symmetric and have p-unit determinant.
    QuadLattice(QMat gram_q, i64 p, int sig_r, int sig_s)
        : A_(std::move(gram_q)), p_(p), r_(sig_r), s_(sig_s) {
        size_t n = A_.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (A_[i][j] != A_[j][i]) throw std::invalid_argument("gram not symmetric");
        mpq_class d = det();
        if (d == 0) throw std::invalid_argument("gram degenerate");
        mpz_class num = d.get_num(), den = d.get_den();
        // <,> = 2q has determinant 2^n det(A); self-duality at p needs it to be a p-unit
        mpz_class pz(p_);
        if (mpz_divisible_p(num.get_mpz_t(), pz.get_mpz_t()) ||
            mpz_divisible_p(den.get_mpz_t(), pz.get_mpz_t()))
            throw std::invalid_argument("lattice not self-dual at p");
    }

    int rank() const { return static_cast<int>(A_.size()); }
    i64 prime() const { return p_; }
    int sig_r() const { return r_; }
    int sig_s() const { return s_; }
    const QMat& gram_q() const { return A_; }

    mpq_class q(const LVec& v) const {
        mpq_class s = 0;
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j) s += A_[i][j] * v[i] * v[j];
        if (v.denexp) s /= mpz_pow(p_, 2 * v.denexp);
        return s;
    }

    mpq_class pair(const LVec& v, const LVec& w) const {
        mpq_class s = 0;
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j) s += A_[i][j] * v[i] * w[j];
        s *= 2;
        if (v.denexp + w.denexp) s /= mpz_pow(p_, v.denexp + w.denexp);
        return s;
    }

    mpq_class det() const {
        QMat M = A_;
        size_t n = M.size();
        mpq_class d = 1;
        for (size_t i = 0; i < n; ++i) {
            size_t piv = i;
            while (piv < n && M[piv][i] == 0) ++piv;
            if (piv == n) return 0;
            if (piv != i) { std::swap(M[piv], M[i]); d = -d; }
            d *= M[i][i];
            for (size_t k = i + 1; k < n; ++k) {
                mpq_class f = M[k][i] / M[i][i];
                for (size_t j = i; j < n; ++j) M[k][j] -= f * M[i][j];
            }
        }
        return d;
    }

private:
    QMat A_;
    i64 p_;
    int r_, s_;
};

// order and isotropy level of v != 0: v = p^ord * v0 with v0 primitive,
// iso = ord_p(q(v0)), or "unset" optional when q(v) = 0
inline std::pair<int, std::optional<int>> order_iso(const LVec& v, const QuadLattice& L) {
    i64 p = L.prime();
    int ord = INT_MAX;
    for (int i = 0; i < v.n; ++i)
        if (v[i] != 0) ord = std::min(ord, valuation(v[i], p));
    if (ord == INT_MAX) throw std::domain_error("order_iso: zero vector");
    LVec v0 = v;
    v0.denexp = 0;
    for (int i = 0; i < v.n; ++i) v0[i] /= ipow(p, ord);
    mpq_class qv = L.q(v0);
    if (qv == 0) return {ord - v.denexp, std::nullopt};
    mpz_class num = qv.get_num(), den = qv.get_den();
    int iso = valuation(num, p) - valuation(den, p);
    return {ord - v.denexp, iso};
}

namespace detail {

// q(x) = sum_i D[i] (x_i + sum_{j>i} U[i][j] x_j)^2 for positive definite A
struct CholeskyQ {
    std::vector<mpq_class> D;
    QMat U;

    explicit CholeskyQ(QMat A) {
        size_t n = A.size();
        D.assign(n, 0);
        U.assign(n, std::vector<mpq_class>(n, 0));
        for (size_t i = 0; i < n; ++i) {
            D[i] = A[i][i];
            if (D[i] <= 0) throw std::invalid_argument("cholesky: not positive definite");
            for (size_t j = i + 1; j < n; ++j) U[i][j] = A[i][j] / D[i];
            for (size_t k = i + 1; k < n; ++k)
                for (size_t l = i + 1; l < n; ++l)
                    A[k][l] -= D[i] * U[i][k] * U[i][l];
        }
        U2 = U;
    }

    QMat U2;
};

// all x in Z^n with q(x) <= bound, q given by Cholesky data; includes 0
inline void fp_enumerate(const CholeskyQ& ch, const mpq_class& bound,
                         const std::function<void(const std::vector<i64>&, const mpq_class&)>& emit) {
    size_t n = ch.D.size();
    std::vector<i64> x(n, 0);
    std::vector<mpq_class> rem(n + 1, 0);  // remaining budget below level i
    std::function<void(int)> rec = [&](int i) {
        if (i < 0) {
            mpq_class qx = bound - rem[0];
            emit(x, qx);
            return;
        }
        // center c = sum_{j>i} U[i][j] x_j; D_i (x_i + c)^2 <= rem[i+1]
        mpq_class c = 0;
        for (size_t j = i + 1; j < n; ++j) c += ch.U[i][j] * x[j];
        mpq_class budget = rem[i + 1];
        double s = std::sqrt(std::max(0.0, budget.get_d() / ch.D[i].get_d()));
        double cd = c.get_d();
        i64 lo = static_cast<i64>(std::floor(-cd - s)) - 2;
        i64 hi = static_cast<i64>(std::ceil(-cd + s)) + 2;
        for (i64 xi = lo; xi <= hi; ++xi) {
            mpq_class t = xi + c;
            mpq_class used = ch.D[i] * t * t;
            if (used > budget) continue;
            x[i] = xi;
            rem[i] = budget - used;
            rec(i - 1);
        }
        x[i] = 0;
    };
    rem[n] = bound;
    if (bound >= 0) rec(static_cast<int>(n) - 1);
}

} // namespace detail

// complete list of lattice vectors with q(v) = m, canonical lex order
inline std::vector<LVec> enumerate_definite(const QuadLattice& L, const mpq_class& m) {
    if (m <= 0) throw std::invalid_argument("enumerate_definite: m must be positive");
    detail::CholeskyQ ch(L.gram_q());
    std::vector<LVec> out;
    detail::fp_enumerate(ch, m, [&](const std::vector<i64>& x, const mpq_class& qx) {
        if (qx != m) return;
        LVec v;
        v.n = L.rank();
        for (int i = 0; i < v.n; ++i) v[i] = x[i];
        out.push_back(v);
    });
    std::sort(out.begin(), out.end());
    return out;
}

struct PathConstraint {
    LVec wm, wp;  // integral isotropic generators of the endpoints, <wm,wp> < 0
};

// Vectors v in Z^n with q(v) = m whose divisor separates the endpoints:
// <v,wm> and <v,wp> nonzero of opposite sign.  Returned sign is +1 when
// <v,wm> > 0 > <v,wp> (callers may flip per model orientation).
// Throws ImproperIntersection if a candidate pairs to zero with an endpoint.
inline std::vector<std::pair<LVec, int>> enumerate_path(const QuadLattice& L, const mpq_class& m,
                                                        const PathConstraint& path) {
    int n = L.rank();
    mpq_class g = -L.pair(path.wm, path.wp);
    if (g <= 0) throw std::invalid_argument("enumerate_path: need <wm,wp> < 0");
    if (L.q(path.wm) != 0 || L.q(path.wp) != 0)
        throw std::invalid_argument("enumerate_path: endpoints not isotropic");

    // orthogonal projection away from the hyperbolic plane Pi = <wm, wp>:
    // pi(v) = v + (<v,wp> wm + <v,wm> wp)/g
    // the projections of Z^n form a lattice with denominators dividing g
    mpz_class gz = g.get_num();  // g integral for integral inputs
    if (g.get_den() != 1) throw std::invalid_argument("enumerate_path: fractional pairing");
    ZMat proj(n, std::vector<mpz_class>(n, 0));  // rows: g * pi(e_i)
    for (int i = 0; i < n; ++i) {
        LVec e{};
        e.n = n;
        e[i] = 1;
        mpq_class am = L.pair(e, path.wm), ap = L.pair(e, path.wp);
        for (int j = 0; j < n; ++j)
            proj[i][j] = gz * (i == j ? 1 : 0) + mpz_class(ap.get_num() * path.wm[j]) +
                         mpz_class(am.get_num() * path.wp[j]);
    }
    ZMat H = hnf_rows(proj);  // basis of g * (projection lattice), rank n-2
    int pr = static_cast<int>(H.size());
    if (pr != n - 2) throw std::logic_error("enumerate_path: projection rank");

    // Gram of q on the projection lattice (coordinates y, vector = H^T y / g)
    QMat PG(pr, std::vector<mpq_class>(pr, 0));
    const QMat& A = L.gram_q();
    for (int a = 0; a < pr; ++a)
        for (int b = 0; b < pr; ++b) {
            mpq_class s = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) s += A[i][j] * H[a][i] * H[b][j];
            PG[a][b] = s / (g * g);
        }

    std::vector<std::pair<LVec, int>> out;
    detail::CholeskyQ ch(PG);
    detail::fp_enumerate(ch, m, [&](const std::vector<i64>& y, const mpq_class& qperp) {
        // x = H^T y / g, the definite component; remaining norm on the plane
        mpq_class rem = m - qperp;
        std::vector<mpq_class> x(n, 0);
        for (int i = 0; i < n; ++i) {
            mpq_class s = 0;
            for (int a = 0; a < pr; ++a) s += mpq_class(H[a][i]) * y[a];
            x[i] = s / g;
        }
        if (rem == 0) {
            // a vector with q = m orthogonal to an endpoint would live here;
            // check x + t*wm/g or + t*wp/g integral for some residue t
            for (const LVec* w : {&path.wm, &path.wp})
                for (i64 t = 0; t < gz.get_si(); ++t) {
                    bool integral = true;
                    for (int i = 0; i < n; ++i) {
                        mpq_class vi = x[i] + mpq_class(t * (*w)[i]) / g;
                        if (vi.get_den() != 1) { integral = false; break; }
                    }
                    if (integral && !(t == 0 && std::all_of(x.begin(), x.end(),
                                                            [](const mpq_class& v) { return v == 0; })))
                        throw ImproperIntersection("vector orthogonal to a path endpoint");
                }
            return;
        }
        // |<v,wm> <v,wp>| = g * rem
        mpq_class tq = g * rem;
        if (tq.get_den() != 1) return;
        i64 t = mpz_class(tq.get_num()).get_si();
        for (i64 d = 1; d * d <= t; ++d) {
            if (t % d) continue;
            for (i64 dd : {d, t / d}) {
                if (dd != d && d * d == t) continue;
                // (<v,wm>, <v,wp>) = (dd, -t/dd) or (-dd, t/dd)
                for (int sgnpick = 0; sgnpick < 2; ++sgnpick) {
                    i64 Aval = sgnpick ? -dd : dd;
                    i64 Bval = sgnpick ? t / dd : -t / dd;
                    // v = x - (Bval wm + Aval wp)/g
                    LVec v{};
                    v.n = n;
                    bool integral = true;
                    for (int i = 0; i < n; ++i) {
                        mpq_class vi = x[i] - mpq_class(Bval * path.wm[i] + Aval * path.wp[i]) / g;
                        if (vi.get_den() != 1) { integral = false; break; }
                        v[i] = mpz_class(vi.get_num()).get_si();
                    }
                    if (!integral) continue;
                    if (L.q(v) != m) continue;
                    if (L.pair(v, path.wm) != Aval || L.pair(v, path.wp) != Bval) continue;
                    out.emplace_back(v, Aval > 0 ? 1 : -1);
                }
            }
        }
    });
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

} // namespace rmc
