#pragma once

// Truncated p-adic arithmetic: elements of Q_p and its quadratic extensions,
// carried as (valuation, unit mod p^digits).  The digit count is the number of
// guaranteed significant digits and only ever decreases through arithmetic.

#include <algorithm>
#include <climits>
#include <optional>
#include <ostream>
#include <string>

#include "arith.hpp"

namespace rmc {

struct NonResidue : std::domain_error {
    explicit NonResidue(const std::string& w) : std::domain_error(w) {}
};
struct OddValuation : std::domain_error {
    explicit OddValuation(const std::string& w) : std::domain_error(w) {}
};
struct PrecisionLoss : std::domain_error {
    explicit PrecisionLoss(const std::string& w) : std::domain_error(w) {}
};

class PadicApprox {
public:
    PadicApprox() : p_(0), digits_(0), zero_(true), val_(0) {}

    // zero at precision N
    static PadicApprox zero(i64 p, int N) {
        PadicApprox x;
        x.p_ = p; x.digits_ = N; x.zero_ = true; x.val_ = 0;
        return x;
    }

    static PadicApprox from_int(i64 p, int N, const mpz_class& n) {
        return from_rational(p, N, mpq_class(n));
    }

    static PadicApprox from_rational(i64 p, int N, const mpq_class& q) {
        if (q == 0) return zero(p, N);
        PadicApprox x;
        x.p_ = p; x.digits_ = N; x.zero_ = false;
        mpz_class num = q.get_num(), den = q.get_den();
        int vn = (num != 0) ? valuation(num, p) : 0;
        int vd = valuation(den, p);
        x.val_ = vn - vd;
        mpz_class pk = mpz_pow(p, vn);
        num /= pk;
        pk = mpz_pow(p, vd);
        den /= pk;
        mpz_class m = mpz_pow(p, N);
        x.unit_ = mpz_mod(num * mpz_invmod(den, m), m);
        return x;
    }

    // unit * p^val with unit given mod p^digits
    static PadicApprox from_unit(i64 p, int digits, mpz_class unit, long val) {
        PadicApprox x;
        x.p_ = p; x.digits_ = digits; x.zero_ = false; x.val_ = val;
        x.unit_ = mpz_mod(unit, mpz_pow(p, digits));
        if (x.unit_ == 0 || mpz_divisible_ui_p(x.unit_.get_mpz_t(), p))
            throw std::domain_error("from_unit: not a unit");
        return x;
    }

    i64 prime() const { return p_; }
    int digits() const { return digits_; }
    bool is_zero() const { return zero_; }
    long val() const {
        if (zero_) throw std::domain_error("valuation of zero");
        return val_;
    }
    const mpz_class& unit() const { return unit_; }
    bool is_unit() const { return !zero_ && val_ == 0; }

    // the element as an integer mod p^digits (requires val >= 0)
    mpz_class lift() const {
        if (zero_) return 0;
        if (val_ < 0) throw std::domain_error("lift: negative valuation");
        return mpz_mod(unit_ * mpz_pow(p_, val_), mpz_pow(p_, digits_));
    }

    PadicApprox operator-() const {
        if (zero_) return *this;
        PadicApprox r = *this;
        r.unit_ = mpz_pow(p_, digits_) - r.unit_;
        return r;
    }

    PadicApprox operator+(const PadicApprox& o) const {
        check(o);
        if (zero_) return o.with_digits(std::min(digits_, o.digits_));
        if (o.zero_) return with_digits(std::min(digits_, o.digits_));
        long v = std::min(val_, o.val_);
        // absolute precision of each operand, as a power of p
        long abs1 = val_ + digits_, abs2 = o.val_ + o.digits_;
        long absr = std::min(abs1, abs2);
        int digs = static_cast<int>(absr - v);
        if (digs <= 0) throw PrecisionLoss("add: no significant digits left");
        mpz_class m = mpz_pow(p_, digs);
        mpz_class s = mpz_mod(unit_ * mpz_pow(p_, val_ - v) + o.unit_ * mpz_pow(p_, o.val_ - v), m);
        PadicApprox r;
        r.p_ = p_; r.zero_ = false;
        if (s == 0) {
            // cancellation below the working modulus: indistinguishable from 0
            r.zero_ = true; r.digits_ = digs; r.val_ = 0;
            return r;
        }
        int w = valuation(s, p_);
        r.val_ = v + w;
        r.digits_ = digs - w;
        r.unit_ = mpz_mod(s / mpz_pow(p_, w), mpz_pow(p_, r.digits_));
        return r;
    }

    PadicApprox operator-(const PadicApprox& o) const { return *this + (-o); }

    PadicApprox operator*(const PadicApprox& o) const {
        check(o);
        int digs = std::min(digits_, o.digits_);
        if (zero_ || o.zero_) return zero(p_, digs);
        PadicApprox r;
        r.p_ = p_; r.zero_ = false; r.digits_ = digs;
        r.val_ = val_ + o.val_;
        r.unit_ = mpz_mod(unit_ * o.unit_, mpz_pow(p_, digs));
        return r;
    }

    PadicApprox inv() const {
        if (zero_) throw std::domain_error("inverse of zero");
        PadicApprox r;
        r.p_ = p_; r.zero_ = false; r.digits_ = digits_;
        r.val_ = -val_;
        r.unit_ = mpz_invmod(unit_, mpz_pow(p_, digits_));
        return r;
    }

    PadicApprox operator/(const PadicApprox& o) const { return *this * o.inv(); }

    PadicApprox pow(long e) const {
        if (zero_) {
            if (e <= 0) throw std::domain_error("pow of zero");
            return *this;
        }
        PadicApprox b = e < 0 ? inv() : *this;
        unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
        PadicApprox r = from_int(p_, digits_, 1);
        while (k) {
            if (k & 1) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    // equal as approximations: same valuation, units agree mod p^min(digits)
    bool operator==(const PadicApprox& o) const {
        if (p_ != o.p_) return false;
        if (zero_ || o.zero_) return zero_ == o.zero_;
        if (val_ != o.val_) return false;
        int digs = std::min(digits_, o.digits_);
        mpz_class m = mpz_pow(p_, digs);
        return mpz_mod(unit_, m) == mpz_mod(o.unit_, m);
    }
    bool operator!=(const PadicApprox& o) const { return !(*this == o); }

    PadicApprox with_digits(int digs) const {
        PadicApprox r = *this;
        if (digs < r.digits_) {
            r.digits_ = digs;
            if (!r.zero_) r.unit_ = mpz_mod(r.unit_, mpz_pow(p_, digs));
        }
        return r;
    }

    // residue of the unit part mod p, in [1, p-1]
    i64 leading_digit() const {
        if (zero_) throw std::domain_error("leading digit of zero");
        return mpz_class(mpz_mod(unit_, mpz_class(p_))).get_si();
    }

    friend std::ostream& operator<<(std::ostream& os, const PadicApprox& x) {
        if (x.zero_) return os << "0 (O(" << x.p_ << "^" << x.digits_ << "))";
        os << x.unit_ << "*" << x.p_ << "^" << x.val_ << " + O(" << x.p_ << "^"
           << (x.val_ + x.digits_) << ")";
        return os;
    }

private:
    void check(const PadicApprox& o) const {
        if (p_ != o.p_) throw std::domain_error("prime mismatch");
    }

    i64 p_;
    int digits_;
    bool zero_;
    long val_;
    mpz_class unit_;
};

// Canonical square root: Hensel lift, branch chosen so the residue mod p is
// the smaller of the two least nonnegative representatives.
inline PadicApprox hensel_sqrt(const PadicApprox& a) {
    if (a.is_zero()) throw std::domain_error("hensel_sqrt of zero");
    if (a.val() % 2 != 0) throw OddValuation("hensel_sqrt: odd valuation");
    i64 p = a.prime();
    int N = a.digits();
    const mpz_class& u = a.unit();
    mpz_class pz(p);
    if (mpz_kronecker(u.get_mpz_t(), pz.get_mpz_t()) != 1)
        throw NonResidue("hensel_sqrt: unit part is not a square mod p");
    // root mod p by brute force (p is small in all our uses)
    mpz_class r0 = 0;
    mpz_class up = mpz_mod(u, pz);
    for (i64 t = 1; t < p; ++t)
        if (mpz_mod(mpz_class(t) * t, pz) == up) { r0 = t; break; }
    if (r0 > p - r0) r0 = p - r0;
    // Newton: x <- (x + u/x)/2, doubling precision
    mpz_class x = r0;
    int prec = 1;
    mpz_class inv2;
    while (prec < N) {
        prec = std::min(2 * prec, N);
        mpz_class m = mpz_pow(p, prec);
        x = mpz_mod((x + mpz_mod(u, m) * mpz_invmod(x, m)) * mpz_invmod(mpz_class(2), m), m);
    }
    if (mpz_mod(x, pz) > p - mpz_mod(x, pz)) x = mpz_pow(p, N) - x;
    return PadicApprox::from_unit(p, N, x, a.val() / 2);
}

enum class ExtKind { Unramified, Ramified };

// a + b*w over Q_p with w^2 = u (unramified, u the smallest positive
// non-residue) or w^2 = p*u (ramified).
class QuadExtApprox {
public:
    QuadExtApprox() = default;

    QuadExtApprox(PadicApprox a, PadicApprox b, ExtKind kind, i64 u)
        : a_(std::move(a)), b_(std::move(b)), kind_(kind), u_(u) {}

    static QuadExtApprox unramified(i64 p, int N, const mpq_class& a, const mpq_class& b) {
        i64 u = smallest_nonresidue(p);
        return QuadExtApprox(PadicApprox::from_rational(p, N, a),
                             PadicApprox::from_rational(p, N, b), ExtKind::Unramified, u);
    }

    static QuadExtApprox from_base(const PadicApprox& a, ExtKind kind = ExtKind::Unramified,
                                   i64 u = 0) {
        if (u == 0) u = smallest_nonresidue(a.prime());
        return QuadExtApprox(a, PadicApprox::zero(a.prime(), a.digits()), kind, u);
    }

    const PadicApprox& a() const { return a_; }
    const PadicApprox& b() const { return b_; }
    ExtKind kind() const { return kind_; }
    i64 nonresidue() const { return u_; }
    i64 prime() const { return a_.prime(); }
    int digits() const { return std::min(a_.digits(), b_.digits()); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    // w^2 as an element of the base field
    PadicApprox wsq() const {
        mpq_class w2 = (kind_ == ExtKind::Unramified) ? mpq_class(u_) : mpq_class(u_ * prime());
        return PadicApprox::from_rational(prime(), std::max(a_.digits(), b_.digits()), w2);
    }

    QuadExtApprox conj() const { return QuadExtApprox(a_, -b_, kind_, u_); }

    QuadExtApprox operator-() const { return QuadExtApprox(-a_, -b_, kind_, u_); }

    QuadExtApprox operator+(const QuadExtApprox& o) const {
        return QuadExtApprox(a_ + o.a_, b_ + o.b_, kind_, u_);
    }
    QuadExtApprox operator-(const QuadExtApprox& o) const {
        return QuadExtApprox(a_ - o.a_, b_ - o.b_, kind_, u_);
    }

    QuadExtApprox operator*(const QuadExtApprox& o) const {
        // (a+bw)(c+dw) = ac + bd w^2 + (ad+bc) w
        PadicApprox w2 = wsq();
        return QuadExtApprox(a_ * o.a_ + b_ * o.b_ * w2, a_ * o.b_ + b_ * o.a_, kind_, u_);
    }

    PadicApprox norm() const { return a_ * a_ - b_ * b_ * wsq(); }
    PadicApprox trace() const { return a_ + a_; }

    QuadExtApprox inv() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        PadicApprox n = norm();
        if (n.is_zero()) throw PrecisionLoss("inv: norm vanishes at working precision");
        PadicApprox ni = n.inv();
        return QuadExtApprox(a_ * ni, -(b_ * ni), kind_, u_);
    }

    QuadExtApprox operator/(const QuadExtApprox& o) const { return *this * o.inv(); }

    QuadExtApprox pow(long e) const {
        QuadExtApprox b = e < 0 ? inv() : *this;
        unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
        QuadExtApprox r = from_base(PadicApprox::from_int(prime(), digits(), 1), kind_, u_);
        while (k) {
            if (k & 1) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    // valuation in units of 1/e (e = ramification index); throws on zero
    // unramified: min(val a, val b); ramified: min(2 val a, 2 val b + 1)
    long val_times_e() const {
        if (is_zero()) throw std::domain_error("valuation of zero");
        if (kind_ == ExtKind::Unramified) {
            if (a_.is_zero()) return b_.val();
            if (b_.is_zero()) return a_.val();
            return std::min(a_.val(), b_.val());
        }
        long va = a_.is_zero() ? LONG_MAX : 2 * a_.val();
        long vb = b_.is_zero() ? LONG_MAX : 2 * b_.val() + 1;
        return std::min(va, vb);
    }

    bool operator==(const QuadExtApprox& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const QuadExtApprox& o) const { return !(*this == o); }

    friend std::ostream& operator<<(std::ostream& os, const QuadExtApprox& x) {
        return os << "(" << x.a_ << ") + (" << x.b_ << ")*w";
    }

private:
    PadicApprox a_, b_;
    ExtKind kind_ = ExtKind::Unramified;
    i64 u_ = 0;
};

// sqrt of a rational d inside Q_p or its unramified quadratic extension.
// d must have even p-valuation and p must be odd.
inline QuadExtApprox sqrt_in_quadext(i64 p, int N, const mpq_class& d) {
    PadicApprox x = PadicApprox::from_rational(p, N, d);
    i64 u = smallest_nonresidue(p);
    if (x.val() % 2 != 0) throw OddValuation("sqrt_in_quadext: odd valuation, ramified case");
    if (kronecker(mpz_class(x.unit()), mpz_class(p)) == 1) {
        return QuadExtApprox::from_base(hensel_sqrt(x));
    }
    // d = u * (d/u), and d/u is a square in Q_p
    PadicApprox y = hensel_sqrt(x * PadicApprox::from_rational(p, N, mpq_class(1, u)));
    return QuadExtApprox(PadicApprox::zero(p, N), y, ExtKind::Unramified, u);
}

} // namespace rmc
