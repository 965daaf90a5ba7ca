#pragma once

// Small integer / number-theory utilities shared across the library.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>
#include <numeric>
#include <string>
#include <gmpxx.h>

namespace rmc {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((u128(a) * b) % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline u64 submod(u64 a, u64 b, u64 m) {
    return a >= b ? a - b : a + (m - b);
}

inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// inverse of a mod m, gcd(a,m)=1
inline u64 invmod(u64 a, u64 m) {
    i64 t = 0, newt = 1;
    i64 r = static_cast<i64>(m), newr = static_cast<i64>(a % m);
    while (newr != 0) {
        i64 q = r / newr;
        t -= q * newt; std::swap(t, newt);
        r -= q * newr; std::swap(r, newr);
    }
    if (r != 1) throw std::domain_error("invmod: not invertible");
    if (t < 0) t += static_cast<i64>(m);
    return static_cast<u64>(t);
}

inline i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline mpz_class mpz_pow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline mpz_class mpz_mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;  // always in [0, m)
}

inline mpz_class mpz_invmod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw std::domain_error("mpz_invmod: not invertible");
    return r;
}

// v_p(n); n != 0
inline int valuation(mpz_class n, const mpz_class& p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    int v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

inline int valuation(i64 n, i64 p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

// Kronecker symbol (a|n)
inline int kronecker(const mpz_class& a, const mpz_class& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline int kronecker(i64 a, i64 n) {
    return kronecker(mpz_class(a), mpz_class(n));
}

// chi_4: the odd character mod 4
inline int chi4(i64 n) {
    i64 r = n % 4;
    if (r < 0) r += 4;
    if (r == 1) return 1;
    if (r == 3) return -1;
    return 0;
}

inline int sgn(i64 n) { return (n > 0) - (n < 0); }

// smallest positive quadratic non-residue mod an odd prime p
inline i64 smallest_nonresidue(i64 p) {
    for (i64 u = 2; u < p; ++u)
        if (kronecker(u, p) == -1) return u;
    throw std::domain_error("smallest_nonresidue: p < 3?");
}

// sigma(n) = sum of divisors t of n with 4 ∤ t
inline i64 sigma_no4(i64 n) {
    i64 s = 0;
    for (i64 t = 1; t * t <= n; ++t) {
        if (n % t) continue;
        if (t % 4) s += t;
        i64 u = n / t;
        if (u != t && u % 4) s += u;
    }
    return s;
}

// Smallest-prime-factor sieve for fast divisor enumeration.
class SpfSieve {
public:
    explicit SpfSieve(u64 limit) : spf_(limit + 1, 0) {
        for (u64 i = 2; i <= limit; ++i) {
            if (spf_[i] == 0)
                for (u64 j = i; j <= limit; j += i)
                    if (spf_[j] == 0) spf_[j] = static_cast<u32>(i);
        }
    }

    u64 limit() const { return spf_.size() - 1; }

    // calls f(d) for every positive divisor d of n
    template <class F>
    void for_divisors(u64 n, F&& f) const {
        u32 pf[16];
        int pe[16];
        int k = 0;
        while (n > 1) {
            u32 p = spf_[n];
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            pf[k] = p; pe[k] = e; ++k;
        }
        struct Rec {
            u32* pf; int* pe; int k; F& f;
            void go(int i, u64 d) {
                if (i == k) { f(d); return; }
                u64 q = d;
                for (int e = 0; e <= pe[i]; ++e) {
                    go(i + 1, q);
                    if (e < pe[i]) q *= pf[i];
                }
            }
        } rec{pf, pe, k, f};
        rec.go(0, 1);
    }

private:
    using u32 = std::uint32_t;
    std::vector<u32> spf_;
};

// floor(sqrt(n)), exact
inline i64 isqrt(i64 n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square(i64 n, i64* root = nullptr) {
    if (n < 0) return false;
    i64 r = isqrt(n);
    if (root) *root = r;
    return r * r == n;
}

} // namespace rmc
