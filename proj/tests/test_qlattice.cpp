#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "rmc/models.hpp"

using namespace rmc;

namespace {

QuadLattice z4_sum_of_squares(i64 p) {
    QMat A = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    return QuadLattice(A, p, 4, 0);
}

// brute-force representation count for sums of four squares
i64 r4_brute(i64 n) {
    i64 cnt = 0, b = isqrt(n);
    for (i64 x = -b; x <= b; ++x)
        for (i64 y = -b; y <= b; ++y)
            for (i64 z = -b; z <= b; ++z) {
                i64 w2 = n - x * x - y * y - z * z;
                i64 w;
                if (w2 < 0) continue;
                if (is_square(w2, &w)) cnt += (w == 0) ? 1 : 2;
            }
    return cnt;
}

} // namespace

TEST_CASE("order and isotropy level") {
    Model M = Model::definite3(5);
    LVec v{};
    v.n = 3;

    // primitive with q = 50: ord 0, iso 2
    v[0] = 5; v[1] = 5; v[2] = 0;
    auto [ord1, iso1] = order_iso(v, M.lattice());
    REQUIRE(ord1 == 0);
    REQUIRE(iso1.value() == 2);

    // v = 5 * v0, q(v0) = 3
    v[0] = 5; v[1] = 5; v[2] = 5;
    auto [ord2, iso2] = order_iso(v, M.lattice());
    REQUIRE(ord2 == 1);
    REQUIRE(iso2.value() == 0);

    // isotropic primitive in the sig21 lattice
    Model S = Model::sig21(3);
    LVec w{};
    w.n = 3;
    w[0] = 1; w[1] = 0; w[2] = 0;
    auto [ord3, iso3] = order_iso(w, S.lattice());
    REQUIRE(ord3 == 0);
    REQUIRE(!iso3.has_value());
}

TEST_CASE("enumerate_definite on Z^4 matches four-squares counts") {
    auto L = z4_sum_of_squares(3);
    REQUIRE(enumerate_definite(L, 1).size() == 8);
    REQUIRE(enumerate_definite(L, 2).size() == 24);
    REQUIRE(enumerate_definite(L, 3).size() == 32);
    for (i64 n = 1; n <= 20; ++n) {
        auto vs = enumerate_definite(L, n);
        REQUIRE(static_cast<i64>(vs.size()) == r4_brute(n));
        REQUIRE(static_cast<i64>(vs.size()) == 8 * sigma_no4(n));
        std::set<LVec> dedup(vs.begin(), vs.end());
        REQUIRE(dedup.size() == vs.size());
        for (const auto& v : vs) REQUIRE(L.q(v) == n);
    }
}

TEST_CASE("enumerate_definite on a non-diagonal lattice") {
    // 5-neighbour of Z^3: Gram_q [[1,3,0],[3,10,0],[0,0,1]]
    QMat A = {{1, 3, 0}, {3, 10, 0}, {0, 0, 1}};
    QuadLattice L(A, 5, 3, 0);
    // the neighbour is isometric to Z^3 over Z, so shell sizes match r_3
    Model M = Model::definite3(5);
    for (i64 n = 1; n <= 12; ++n)
        REQUIRE(enumerate_definite(L, n).size() == enumerate_definite(M.lattice(), n).size());
}

TEST_CASE("bianchi path enumeration at norm 3") {
    Model M = Model::bianchi31(5);
    auto vs = enumerate_path(M.lattice(), 3, M.path(Cusp::zero(), Cusp::infinity()));
    REQUIRE(vs.size() == 28);
    for (const auto& [v, s] : vs) {
        REQUIRE(M.q(v) == 3);
        REQUIRE(v[2] * v[3] < 0);  // bc < 0
    }
}

TEST_CASE("path enumeration satisfies the pairing bound") {
    Model M = Model::bianchi31(5);
    auto pc = M.path(Cusp::zero(), Cusp::infinity());
    i64 g = -M.pair(pc.wm, pc.wp);
    for (i64 m : {3, 6, 7, 11}) {
        for (const auto& [v, s] : enumerate_path(M.lattice(), m, pc)) {
            i64 am = M.pair(v, pc.wm), ap = M.pair(v, pc.wp);
            REQUIRE(am * ap < 0);
            REQUIRE(std::abs(am) * std::abs(ap) <= m * g);
        }
    }
}

TEST_CASE("fast (0,oo) kernels agree with the generic path enumeration") {
    for (auto make : {&Model::sig21, &Model::bianchi31}) {
        Model M = make(5);
        auto pc = M.path(Cusp::zero(), Cusp::infinity());
        for (i64 m : {2, 3, 6, 7, 11}) {
            if (!M.is_compact_norm(m)) continue;
            std::map<LVec, int> generic;
            for (const auto& [v, sl] : enumerate_path(M.lattice(), m, pc))
                generic[v] = M.sign_from_right() ? -sl : sl;
            std::map<LVec, int> fast;
            SpfSieve sieve(static_cast<u64>(m));
            enumerate_std_path(M, m, false, sieve,
                               [&](const LVec& v, int s) { fast[v] = s; });
            REQUIRE(generic == fast);
        }
    }
}

TEST_CASE("weighted degrees match the measured constants") {
    Model B = Model::bianchi31(5);
    Cusp z = Cusp::zero(), inf = Cusp::infinity();
    REQUIRE(weighted_degree(B, 3, 0, z, inf) == 16);
    REQUIRE(weighted_degree(B, 7, 0, z, inf) == 32);  // 2x the d=3 value
    // constant * sigma(d p^{2j}) with sigma(n) = sum of divisors not divisible by 4
    for (i64 d : {3, 6, 7, 11})
        REQUIRE(weighted_degree(B, d, 0, z, inf) == 4 * sigma_no4(d));
    REQUIRE(weighted_degree(B, 3, 1, z, inf) == 4 * sigma_no4(75));

    Model S = Model::sig21(3);
    // 2 b(d) with b the table values b(2) = 3, b(5) = 6
    REQUIRE(weighted_degree(S, 2, 0, z, inf) == 6);
    REQUIRE(weighted_degree(S, 5, 0, z, inf) == 12);
}

TEST_CASE("sig21 norm-2 path enumeration has 6 weighted vectors") {
    Model S = Model::sig21(3);
    auto pc = S.path(Cusp::zero(), Cusp::infinity());
    i64 weighted = 0, nonzero = 0;
    for (const auto& [v, sl] : enumerate_path(S.lattice(), 2, pc)) {
        int w = S.character(v) * sl;
        if (w != 0) ++nonzero;
        weighted += w;
    }
    REQUIRE(nonzero == 6);
    REQUIRE(weighted == 6);
}

TEST_CASE("improper intersections are rejected") {
    Model B = Model::bianchi31(5);
    // 2 = 1 + 1 is a sum of two squares: vectors with bc = 0 exist
    REQUIRE(!B.is_compact_norm(2));
    REQUIRE_THROWS_AS(weighted_degree(B, 2, 0, Cusp::zero(), Cusp::infinity()),
                      ImproperIntersection);
    Model S = Model::sig21(3);
    REQUIRE(!S.is_compact_norm(4));
    REQUIRE(S.is_compact_norm(5));
}

TEST_CASE("group action preserves the form and the character") {
    std::mt19937_64 rng(3);
    auto rnd = [&](i64 b) { return static_cast<i64>(rng() % (2 * b + 1)) - b; };

    Model S = Model::sig21(3);
    // generators of SL2(Z)
    GammaElement T{Zi(1), Zi(1), Zi(0), Zi(1)};
    GammaElement Smat{Zi(0), Zi(-1), Zi(1), Zi(0)};
    for (int trial = 0; trial < 300; ++trial) {
        GammaElement g = GammaElement::identity();
        for (int k = 0; k < 6; ++k) g = g * (rng() % 2 ? T : Smat);
        LVec v{};
        v.n = 3;
        v[0] = rnd(20); v[1] = rnd(20); v[2] = rnd(20);
        if (v[0] == 0 && v[1] == 0 && v[2] == 0) continue;
        REQUIRE(S.q(S.act(g, v)) == S.q(v));
    }

    Model B = Model::bianchi31(5);
    GammaElement Ti{Zi(1), Zi(0, 1), Zi(0), Zi(1)};
    for (int trial = 0; trial < 300; ++trial) {
        GammaElement g = GammaElement::identity();
        for (int k = 0; k < 6; ++k) {
            int pick = static_cast<int>(rng() % 3);
            g = g * (pick == 0 ? T : pick == 1 ? Smat : Ti);
        }
        LVec v{};
        v.n = 4;
        for (int i = 0; i < 4; ++i) v[i] = rnd(20);
        REQUIRE(B.q(B.act(g, v)) == B.q(v));
        REQUIRE(B.pair(B.act(g, v), B.act(g, v)) == B.pair(v, v));
    }
}

TEST_CASE("cusp vectors transform equivariantly") {
    std::mt19937_64 rng(4);
    GammaElement T{Zi(1), Zi(1), Zi(0), Zi(1)};
    GammaElement Smat{Zi(0), Zi(-1), Zi(1), Zi(0)};
    GammaElement Ti{Zi(1), Zi(0, 1), Zi(0), Zi(1)};

    Model S = Model::sig21(3);
    for (int trial = 0; trial < 200; ++trial) {
        GammaElement g = GammaElement::identity();
        for (int k = 0; k < 5; ++k) g = g * (rng() % 2 ? T : Smat);
        i64 num = static_cast<i64>(rng() % 21) - 10, den = static_cast<i64>(rng() % 10);
        if (num == 0 && den == 0) continue;
        Cusp r = Cusp::normalized(Zi(num), Zi(den));
        REQUIRE(S.act(g, S.cusp_vector(r)) == S.cusp_vector(g.apply(r)));
    }

    Model B = Model::bianchi31(5);
    for (int trial = 0; trial < 200; ++trial) {
        GammaElement g = GammaElement::identity();
        for (int k = 0; k < 5; ++k) {
            int pick = static_cast<int>(rng() % 3);
            g = g * (pick == 0 ? T : pick == 1 ? Smat : Ti);
        }
        Zi num(static_cast<i64>(rng() % 11) - 5, static_cast<i64>(rng() % 11) - 5);
        Zi den(static_cast<i64>(rng() % 7) - 3, static_cast<i64>(rng() % 7) - 3);
        if (num.is_zero() && den.is_zero()) continue;
        Cusp r = Cusp::normalized(num, den);
        REQUIRE(B.act(g, B.cusp_vector(r)) == B.cusp_vector(g.apply(r)));
    }
}

TEST_CASE("level bijection realizing p-ordinarity of the enumeration") {
    // full enumeration at norm d p^{2(j+1)} restricted to order >= 1 is the
    // level-j enumeration scaled by p, with matching weights
    Model B = Model::bianchi31(5);
    i64 p = 5;
    for (i64 d : {3, 7}) {
        for (int j : {0, 1}) {
            i64 lo = d * ipow(p, 2 * j), hi = lo * p * p;
            std::map<LVec, int> scaled_low, high_imprim;
            SpfSieve slo(static_cast<u64>(lo)), shi(static_cast<u64>(hi));
            enumerate_std_path(B, lo, false, slo, [&](const LVec& v, int s) {
                LVec w = v;
                for (int i = 0; i < w.n; ++i) w[i] *= p;
                scaled_low[w] = B.character(v) * s;
            });
            enumerate_std_path(B, hi, false, shi, [&](const LVec& v, int s) {
                bool imprim = v[0] % p == 0 && v[1] % p == 0 && v[2] % p == 0 && v[3] % p == 0;
                if (imprim) high_imprim[v] = B.character(v) * s;
            });
            REQUIRE(scaled_low == high_imprim);
        }
    }
}
