#pragma once

// Exact integer/rational matrix utilities: Hermite form, integer kernels,
// lattice membership.  Dimensions here are tiny, so the textbook algorithms
// are fine.

#include <vector>

#include "arith.hpp"

namespace rmc {

using ZMat = std::vector<std::vector<mpz_class>>;
using QMat = std::vector<std::vector<mpq_class>>;

inline ZMat zmat_identity(size_t n) {
    ZMat I(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

// Integer kernel of A (r x n): returns a basis (as rows) of {x in Z^n : A x = 0}.
// Column reduction on A with a tracked unimodular transform.
inline ZMat integer_kernel(ZMat A) {
    size_t r = A.size();
    size_t n = r ? A[0].size() : 0;
    if (n == 0) return {};
    if (r == 0) return zmat_identity(n);
    ZMat U = zmat_identity(n);
    size_t row = 0, col = 0;
    auto col_sub = [&](size_t dst, size_t src, const mpz_class& q) {
        for (size_t i = 0; i < r; ++i) A[i][dst] -= q * A[i][src];
        for (size_t i = 0; i < n; ++i) U[i][dst] -= q * U[i][src];
    };
    auto col_swap = [&](size_t c1, size_t c2) {
        for (size_t i = 0; i < r; ++i) std::swap(A[i][c1], A[i][c2]);
        for (size_t i = 0; i < n; ++i) std::swap(U[i][c1], U[i][c2]);
    };
    while (row < r && col < n) {
        // gcd-reduce row `row` across columns col..n-1
        while (true) {
            size_t piv = col;
            bool nonzero = false;
            for (size_t j = col; j < n; ++j)
                if (A[row][j] != 0 &&
                    (!nonzero || abs(A[row][j]) < abs(A[row][piv]) || A[row][piv] == 0)) {
                    piv = j;
                    nonzero = true;
                }
            if (!nonzero) break;
            col_swap(col, piv);
            bool clean = true;
            for (size_t j = col + 1; j < n; ++j) {
                if (A[row][j] == 0) continue;
                mpz_class q = A[row][j] / A[row][col];
                col_sub(j, col, q);
                if (A[row][j] != 0) clean = false;
            }
            if (clean) break;
        }
        if (A[row][col] != 0) ++col;
        ++row;
    }
    ZMat ker;
    for (size_t j = col; j < n; ++j) {
        std::vector<mpz_class> v(n);
        for (size_t i = 0; i < n; ++i) v[i] = U[i][j];
        ker.push_back(std::move(v));
    }
    return ker;
}

// Row Hermite normal form (non-negative pivots, entries above pivot reduced).
inline ZMat hnf_rows(ZMat A) {
    size_t r = A.size();
    if (r == 0) return A;
    size_t n = A[0].size();
    size_t row = 0;
    for (size_t col = 0; col < n && row < r; ++col) {
        // gcd-reduce column below `row`
        while (true) {
            size_t piv = row;
            bool nonzero = false;
            for (size_t i = row; i < r; ++i)
                if (A[i][col] != 0 &&
                    (!nonzero || abs(A[i][col]) < abs(A[piv][col]) || A[piv][col] == 0)) {
                    piv = i;
                    nonzero = true;
                }
            if (!nonzero) break;
            std::swap(A[row], A[piv]);
            bool clean = true;
            for (size_t i = row + 1; i < r; ++i) {
                if (A[i][col] == 0) continue;
                mpz_class q = A[i][col] / A[row][col];
                for (size_t j = 0; j < n; ++j) A[i][j] -= q * A[row][j];
                if (A[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (A[row][col] == 0) continue;
        if (A[row][col] < 0)
            for (size_t j = 0; j < n; ++j) A[row][j] = -A[row][j];
        for (size_t i = 0; i < row; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), A[i][col].get_mpz_t(), A[row][col].get_mpz_t());
            if (q != 0)
                for (size_t j = 0; j < n; ++j) A[i][j] -= q * A[row][j];
        }
        ++row;
    }
    A.resize(row);
    return A;
}

// is x in the row span (over Z) of the HNF basis H?
inline bool in_row_lattice(const ZMat& H, std::vector<mpz_class> x) {
    size_t n = x.size();
    for (const auto& h : H) {
        size_t col = 0;
        while (col < n && h[col] == 0) ++col;
        if (col == n) continue;
        if (x[col] == 0) continue;
        mpz_class q = x[col] / h[col];
        if (q * h[col] != x[col]) return false;
        for (size_t j = 0; j < n; ++j) x[j] -= q * h[j];
    }
    for (const auto& xi : x)
        if (xi != 0) return false;
    return true;
}

} // namespace rmc
