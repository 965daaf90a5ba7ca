#pragma once

// Gaussian integers Z[i] with Euclidean division (nearest-integer rounding).
// Used for Bianchi cusps and path decomposition; real inputs stay real, so the
// same code drives the rational-cusp case.

#include <ostream>

#include "arith.hpp"

namespace rmc {

struct Zi {
    i64 re = 0, im = 0;

    Zi() = default;
    Zi(i64 r, i64 i = 0) : re(r), im(i) {}

    bool operator==(const Zi& o) const { return re == o.re && im == o.im; }
    bool operator!=(const Zi& o) const { return !(*this == o); }

    Zi operator+(const Zi& o) const { return {re + o.re, im + o.im}; }
    Zi operator-(const Zi& o) const { return {re - o.re, im - o.im}; }
    Zi operator-() const { return {-re, -im}; }
    Zi operator*(const Zi& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }

    Zi conj() const { return {re, -im}; }
    i64 norm() const { return re * re + im * im; }
    bool is_zero() const { return re == 0 && im == 0; }
    bool is_unit() const { return norm() == 1; }
    bool is_real() const { return im == 0; }

    friend std::ostream& operator<<(std::ostream& os, const Zi& z) {
        return os << z.re << (z.im < 0 ? "-" : "+") << (z.im < 0 ? -z.im : z.im) << "i";
    }
};

inline i64 round_div(i64 a, i64 b) {
    // nearest integer to a/b, ties toward zero
    i64 q = a / b, r = a % b;
    if (2 * (r < 0 ? -r : r) > (b < 0 ? -b : b)) q += (a < 0) == (b < 0) ? 1 : -1;
    return q;
}

// quotient of a/b rounded to the nearest Gaussian integer; |a - qb| < |b|
inline Zi zi_round_div(const Zi& a, const Zi& b) {
    i64 n = b.norm();
    Zi num = a * b.conj();
    return {round_div(num.re, n), round_div(num.im, n)};
}

inline Zi zi_mod(const Zi& a, const Zi& b) { return a - zi_round_div(a, b) * b; }

inline Zi zi_gcd(Zi a, Zi b) {
    while (!b.is_zero()) {
        Zi r = zi_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

// canonical associate: rotate by units into {re > 0, im >= 0}; 0 stays 0
inline Zi zi_canonical(Zi z) {
    if (z.is_zero()) return z;
    for (int k = 0; k < 3 && !(z.re > 0 && z.im >= 0); ++k) z = z * Zi(0, 1);
    return z;
}

} // namespace rmc
