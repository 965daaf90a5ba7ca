#pragma once

// The three concrete lattice models driving the product engine.
//
//  sig21      vectors (a,b,c) <-> binary forms [a,2b,c], q = b^2 - ac,
//             SL2(Z[1/p]) acting by conjugation, character chi4(a),
//             congruence condition 2|c on the group.
//  bianchi31  vectors (x,y,b,c) <-> [alpha;b,c], alpha = x+iy in Z[i],
//             q = N(alpha) - bc, SL2(Z[i][1/p]) twisted conjugation,
//             character chi4(c).
//  definite3  q = x^2 + y^2 + z^2, compact at infinity, no character.

#include "qlattice.hpp"
#include "zi.hpp"

namespace rmc {

enum class ModelTag { Definite3, Sig21, Bianchi31 };

struct Cusp {
    Zi a, c;  // a/c in P^1, c = 0 means infinity; gcd(a,c) a unit

    static Cusp infinity() { return {Zi(1), Zi(0)}; }
    static Cusp zero() { return {Zi(0), Zi(1)}; }
    static Cusp rational(i64 num, i64 den) { return normalized(Zi(num), Zi(den)); }
    static Cusp gaussian(Zi num, Zi den) { return normalized(num, den); }

    static Cusp normalized(Zi a, Zi c) {
        if (a.is_zero() && c.is_zero()) throw std::invalid_argument("cusp (0,0)");
        Zi g = zi_gcd(a, c);
        Zi gn = zi_canonical(g);
        // divide by the gcd exactly
        auto exact_div = [](const Zi& x, const Zi& d) {
            i64 n = d.norm();
            Zi num = x * d.conj();
            if (num.re % n || num.im % n) throw std::logic_error("cusp: non-exact division");
            return Zi{num.re / n, num.im / n};
        };
        a = exact_div(a, gn);
        c = exact_div(c, gn);
        // canonical unit: make c canonical, or a canonical if c = 0
        Zi target = c.is_zero() ? a : c;
        Zi tc = zi_canonical(target);
        // find the unit
        for (Zi u : {Zi(1), Zi(-1), Zi(0, 1), Zi(0, -1)}) {
            if (target * u == tc) { a = a * u; c = c * u; break; }
        }
        return {a, c};
    }

    bool operator==(const Cusp& o) const { return a == o.a && c == o.c; }
    bool operator!=(const Cusp& o) const { return !(*this == o); }
    bool is_infinity() const { return c.is_zero(); }
    bool is_real() const { return a.is_real() && c.is_real(); }

    friend std::ostream& operator<<(std::ostream& os, const Cusp& r) {
        if (r.c.is_zero()) return os << "oo";
        return os << "(" << r.a << ")/(" << r.c << ")";
    }
};

// 2x2 matrix over Z[i] (real entries for the sig21 model), determinant 1
struct GammaElement {
    Zi a, b, c, d;

    static GammaElement identity() { return {Zi(1), Zi(0), Zi(0), Zi(1)}; }

    Zi det() const { return a * d - b * c; }

    GammaElement operator*(const GammaElement& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }

    GammaElement inv() const {  // assumes det 1
        return {d, -b, -c, a};
    }

    Cusp apply(const Cusp& r) const {
        return Cusp::normalized(a * r.a + b * r.c, c * r.a + d * r.c);
    }

    bool is_real() const { return a.is_real() && b.is_real() && c.is_real() && d.is_real(); }

    bool operator==(const GammaElement& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }

    friend std::ostream& operator<<(std::ostream& os, const GammaElement& g) {
        return os << "[[" << g.a << "," << g.b << "],[" << g.c << "," << g.d << "]]";
    }
};

class Model {
public:
    static Model definite3(i64 p) {
        QMat A = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        return Model(ModelTag::Definite3, p, QuadLattice(A, p, 3, 0), false, false);
    }

    static Model sig21(i64 p) {
        // coords (a,b,c), q = b^2 - ac
        QMat A = {{0, 0, mpq_class(-1, 2)}, {0, 1, 0}, {mpq_class(-1, 2), 0, 0}};
        return Model(ModelTag::Sig21, p, QuadLattice(A, p, 2, 1), false, false);
    }

    static Model bianchi31(i64 p) {
        // coords (x,y,b,c), q = x^2 + y^2 - bc
        QMat A = {{1, 0, 0, 0},
                  {0, 1, 0, 0},
                  {0, 0, 0, mpq_class(-1, 2)},
                  {0, 0, mpq_class(-1, 2), 0}};
        return Model(ModelTag::Bianchi31, p, QuadLattice(A, p, 3, 1), true, true);
    }

    ModelTag tag() const { return tag_; }
    i64 prime() const { return p_; }
    int rank() const { return lattice_.rank(); }
    const QuadLattice& lattice() const { return lattice_; }
    bool gaussian_cusps() const { return gaussian_; }
    bool hyperbolic() const { return tag_ != ModelTag::Definite3; }
    // orientation convention: intersection sign read off the right endpoint
    bool sign_from_right() const { return sign_right_; }

    i64 q(const LVec& v) const {
        switch (tag_) {
            case ModelTag::Definite3: return v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
            case ModelTag::Sig21: return v[1] * v[1] - v[0] * v[2];
            case ModelTag::Bianchi31: return v[0] * v[0] + v[1] * v[1] - v[2] * v[3];
        }
        return 0;
    }

    i64 pair(const LVec& v, const LVec& w) const {
        switch (tag_) {
            case ModelTag::Definite3:
                return 2 * (v[0] * w[0] + v[1] * w[1] + v[2] * w[2]);
            case ModelTag::Sig21:
                return 2 * v[1] * w[1] - v[0] * w[2] - v[2] * w[0];
            case ModelTag::Bianchi31:
                return 2 * (v[0] * w[0] + v[1] * w[1]) - v[2] * w[3] - v[3] * w[2];
        }
        return 0;
    }

    // the odd-character weight attached to a vector (1 for the definite model)
    int character(const LVec& v) const {
        switch (tag_) {
            case ModelTag::Definite3: return 1;
            case ModelTag::Sig21: return chi4(v[0]);
            case ModelTag::Bianchi31: return chi4(v[3]);
        }
        return 0;
    }

    // primitive integral isotropic generator attached to a cusp; the map is
    // exactly equivariant: act(g, cusp_vector(r)) == cusp_vector(g r)
    LVec cusp_vector(const Cusp& r) const {
        LVec w{};
        w.n = rank();
        if (tag_ == ModelTag::Sig21) {
            if (!r.is_real()) throw std::invalid_argument("sig21: real cusps only");
            i64 a = r.a.re, c = r.c.re;
            w[0] = c * c;
            w[1] = -a * c;
            w[2] = a * a;
            return w;
        }
        if (tag_ == ModelTag::Bianchi31) {
            Zi ac = r.a * r.c.conj();
            w[0] = ac.re;
            w[1] = ac.im;
            w[2] = r.c.norm();
            w[3] = r.a.norm();
            return w;
        }
        throw std::invalid_argument("definite model has no cusps");
    }

    PathConstraint path(const Cusp& r, const Cusp& s) const {
        if (r == s) throw std::invalid_argument("path endpoints equal");
        return PathConstraint{cusp_vector(r), cusp_vector(s)};
    }

    // intersection sign of the divisor of v with the geodesic (r,s), per the
    // model's orientation convention; 0 if no crossing
    int path_sign(const LVec& v, const PathConstraint& pc) const {
        i64 am = pair(v, pc.wm), ap = pair(v, pc.wp);
        if (am == 0 || ap == 0) {
            if (am == 0 && ap == 0) return 0;  // v orthogonal to the whole plane
            throw ImproperIntersection("divisor through a path endpoint");
        }
        if ((am > 0) == (ap > 0)) return 0;
        int left = am > 0 ? 1 : -1;
        return sign_right_ ? -left : left;
    }

    // action of gamma on lattice vectors (conjugation / twisted conjugation)
    LVec act(const GammaElement& g, const LVec& v) const {
        LVec w{};
        w.n = rank();
        if (tag_ == ModelTag::Sig21) {
            if (!g.is_real()) throw std::invalid_argument("sig21: real matrices only");
            i64 A = g.a.re, B = g.b.re, C = g.c.re, D = g.d.re;
            i64 a = v[0], b = v[1], c = v[2];
            w[0] = D * D * a - 2 * C * D * b + C * C * c;
            w[1] = -B * D * a + (A * D + B * C) * b - A * C * c;
            w[2] = B * B * a - 2 * A * B * b + A * A * c;
            return w;
        }
        if (tag_ == ModelTag::Bianchi31) {
            // M_v = [[alpha, -b],[c, -conj(alpha)]], v' = g M_v conj(g)^dagger
            Zi alpha(v[0], v[1]);
            Zi m11 = alpha, m12 = Zi(-v[2]), m21 = Zi(v[3]), m22 = -alpha.conj();
            // conj(g)^dagger = [[conj(d), -conj(b)], [-conj(c), conj(a)]]
            Zi h11 = g.d.conj(), h12 = -g.b.conj(), h21 = -g.c.conj(), h22 = g.a.conj();
            Zi t11 = g.a * m11 + g.b * m21, t12 = g.a * m12 + g.b * m22;
            Zi t21 = g.c * m11 + g.d * m21, t22 = g.c * m12 + g.d * m22;
            Zi r11 = t11 * h11 + t12 * h21, r12 = t11 * h12 + t12 * h22;
            Zi r21 = t21 * h11 + t22 * h21, r22 = t21 * h12 + t22 * h22;
            if (!r12.is_real() || !r21.is_real() || r22 != -r11.conj())
                throw std::logic_error("bianchi action left the lattice");
            w[0] = r11.re;
            w[1] = r11.im;
            w[2] = -r12.re;
            w[3] = r21.re;
            return w;
        }
        throw std::invalid_argument("definite model: use an orthogonal matrix action");
    }

    // matrix of v -> act(g, v) on coordinates (columns are images of e_k)
    std::array<std::array<i64, 4>, 4> act_matrix(const GammaElement& g) const {
        std::array<std::array<i64, 4>, 4> T{};
        for (int k = 0; k < rank(); ++k) {
            LVec e{};
            e.n = rank();
            e[k] = 1;
            LVec img = act(g, e);
            for (int i = 0; i < rank(); ++i) T[i][k] = img[i];
        }
        return T;
    }

    // norms whose vectors have anisotropic orthogonal complement over Q;
    // equivalently no divisor passes through a rational boundary point
    bool is_compact_norm(i64 m) const {
        if (m <= 0) return false;
        if (tag_ == ModelTag::Sig21) return !is_square(m);
        if (tag_ == ModelTag::Bianchi31) {
            for (i64 x = 0; x * x <= m; ++x)
                if (is_square(m - x * x)) return false;
            return true;
        }
        return true;
    }

private:
    Model(ModelTag tag, i64 p, QuadLattice lat, bool gaussian, bool sign_right)
        : tag_(tag), p_(p), lattice_(std::move(lat)), gaussian_(gaussian),
          sign_right_(sign_right) {}

    ModelTag tag_;
    i64 p_;
    QuadLattice lattice_;
    bool gaussian_;
    bool sign_right_;
};

// Fast enumerator for the standard path (0,oo) in the hyperbolic models.
// Emits every integral v with q(v) = norm crossing the geodesic, with its
// intersection sign; primitive_only drops vectors divisible by p.
// The norm must be compact for the model (callers check).
template <class F>
inline void enumerate_std_path(const Model& M, i64 norm, bool primitive_only,
                               const SpfSieve& sieve, F&& emit) {
    i64 p = M.prime();
    if (M.tag() == ModelTag::Sig21) {
        // q = b^2 - ac = norm, ac < 0; sign = sgn(a)
        for (i64 b = -isqrt(norm); b * b <= norm; ++b) {
            i64 t = norm - b * b;
            if (t == 0) throw ImproperIntersection("square norm on (0,oo)");
            sieve.for_divisors(t, [&](u64 du) {
                i64 d = static_cast<i64>(du);
                LVec v{};
                v.n = 3;
                v[1] = b;
                v[0] = d;
                v[2] = -t / d;
                if (!primitive_only || v[0] % p || v[1] % p || v[2] % p) emit(v, 1);
                v[0] = -d;
                v[2] = t / d;
                if (!primitive_only || v[0] % p || v[1] % p || v[2] % p) emit(v, -1);
            });
        }
        return;
    }
    if (M.tag() == ModelTag::Bianchi31) {
        // q = x^2 + y^2 - bc = norm, bc < 0; sign = sgn(c)
        for (i64 x = -isqrt(norm); x * x <= norm; ++x) {
            i64 ybound = isqrt(norm - x * x);
            for (i64 y = -ybound; y <= ybound; ++y) {
                i64 t = norm - x * x - y * y;
                if (t == 0) throw ImproperIntersection("norm is a sum of two squares");
                sieve.for_divisors(t, [&](u64 du) {
                    i64 d = static_cast<i64>(du);
                    LVec v{};
                    v.n = 4;
                    v[0] = x;
                    v[1] = y;
                    v[2] = d;
                    v[3] = -t / d;
                    if (!primitive_only || v[0] % p || v[1] % p || v[2] % p || v[3] % p)
                        emit(v, -1);
                    v[2] = -d;
                    v[3] = t / d;
                    if (!primitive_only || v[0] % p || v[1] % p || v[2] % p || v[3] % p)
                        emit(v, 1);
                });
            }
        }
        return;
    }
    throw std::invalid_argument("enumerate_std_path: hyperbolic models only");
}

// weighted degree of the path enumeration: sum of character * sign over all
// integral vectors of the given norm (j-th level means norm * p^(2j))
inline i64 weighted_degree(const Model& M, i64 d, int j, const Cusp& r, const Cusp& s) {
    i64 norm = d * ipow(M.prime(), 2 * j);
    if (!M.is_compact_norm(d)) throw ImproperIntersection("non-compact norm");
    PathConstraint pc = M.path(r, s);
    i64 total = 0;
    if (r == Cusp::zero() && s == Cusp::infinity()) {
        SpfSieve sieve(static_cast<u64>(norm));
        enumerate_std_path(M, norm, false, sieve,
                           [&](const LVec& v, int sign) { total += M.character(v) * sign; });
    } else {
        for (const auto& [v, sl] : enumerate_path(M.lattice(), norm, pc))
            total += M.character(v) * (M.sign_from_right() ? -sl : sl);
    }
    return total;
}

} // namespace rmc
