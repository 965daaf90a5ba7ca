#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rmc/padic.hpp"

using namespace rmc;

TEST_CASE("hensel_sqrt basic values") {
    // exact integer square
    auto a = PadicApprox::from_int(5, 3, 4);
    auto r = hensel_sqrt(a);
    REQUIRE(r == PadicApprox::from_int(5, 3, 2));

    // sqrt(-1) mod 125: 57^2 = 3249 = 26*125 - 1
    auto m1 = PadicApprox::from_int(5, 3, -1);
    auto i5 = hensel_sqrt(m1);
    REQUIRE(i5.lift() == 57);
    REQUIRE((i5 * i5) == m1);

    // 2 is not a square mod 5
    REQUIRE_THROWS_AS(hensel_sqrt(PadicApprox::from_int(5, 3, 2)), NonResidue);

    // odd valuation
    REQUIRE_THROWS_AS(hensel_sqrt(PadicApprox::from_int(5, 3, 5)), OddValuation);
}

TEST_CASE("hensel_sqrt canonical branch and square roundtrip") {
    std::mt19937_64 rng(0);
    for (i64 p : {3, 5, 7, 13}) {
        for (int trial = 0; trial < 200; ++trial) {
            mpz_class n = static_cast<long>(rng() % 100000 + 1);
            if (mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
            auto x = PadicApprox::from_int(p, 8, n);
            auto r = hensel_sqrt(x * x);
            REQUIRE((r == x || r == -x));
            REQUIRE(r.leading_digit() <= (p - 1) / 2);
        }
    }
}

TEST_CASE("padic ring laws on random values") {
    std::mt19937_64 rng(1);
    i64 p = 7;
    int N = 10;
    auto rand_elt = [&]() {
        mpz_class n = static_cast<long>(rng() % 1000000) - 500000;
        if (n == 0) n = 1;
        long denpow = static_cast<long>(rng() % 3);
        mpq_class q(n, mpz_pow(p, denpow));
        q.canonicalize();
        return PadicApprox::from_rational(p, N, q);
    };
    for (int trial = 0; trial < 1000; ++trial) {
        auto x = rand_elt(), y = rand_elt(), z = rand_elt();
        REQUIRE((x * y) * z == x * (y * z));
        REQUIRE(x * (y + z) == x * y + x * z);
        if (!x.is_zero()) {
            REQUIRE(x * x.inv() == PadicApprox::from_int(p, N, 1));
            if (!y.is_zero())
                REQUIRE((x * y).val() == x.val() + y.val());
        }
    }
}

TEST_CASE("padic addition tracks precision through cancellation") {
    i64 p = 5;
    auto a = PadicApprox::from_int(p, 6, 1 + 625);
    auto b = PadicApprox::from_int(p, 6, -1);
    auto s = a + b;  // = 625 = 5^4, but absolute precision is 5^6
    REQUIRE(!s.is_zero());
    REQUIRE(s.val() == 4);
    REQUIRE(s.digits() == 2);
}

TEST_CASE("quadext arithmetic examples") {
    // norm(w) = -u with u = 2 at p = 5
    auto w = QuadExtApprox::unramified(5, 4, 0, 1);
    REQUIRE(w.norm() == PadicApprox::from_int(5, 4, -2));

    auto one = QuadExtApprox::unramified(5, 4, 1, 0);
    REQUIRE(one.inv() == one);

    // norm(2 + w) = 4 - 2 = 2
    auto x = QuadExtApprox::unramified(5, 2, 2, 1);
    REQUIRE(x.norm() == PadicApprox::from_int(5, 2, 2));
}

TEST_CASE("quadext field laws on random values") {
    std::mt19937_64 rng(2);
    for (auto kind : {ExtKind::Unramified, ExtKind::Ramified}) {
        i64 p = 5, u = smallest_nonresidue(p);
        int N = 8;
        auto rand_elt = [&]() {
            mpq_class qa(static_cast<long>(rng() % 100000) - 50000);
            mpq_class qb(static_cast<long>(rng() % 100000) - 50000);
            return QuadExtApprox(PadicApprox::from_rational(p, N, qa),
                                 PadicApprox::from_rational(p, N, qb), kind, u);
        };
        for (int trial = 0; trial < 1000; ++trial) {
            auto x = rand_elt(), y = rand_elt(), z = rand_elt();
            REQUIRE((x * y) * z == x * (y * z));
            REQUIRE(x.conj().conj() == x);
            REQUIRE((x * y).conj() == x.conj() * y.conj());
            REQUIRE(x.norm() == (x * x.conj()).a());
            REQUIRE((x * y).norm() == x.norm() * y.norm());
            if (!x.is_zero()) {
                auto xi = x.inv();
                REQUIRE((x * xi).a() == PadicApprox::from_int(p, N, 1));
                REQUIRE((x * xi).b().is_zero());
            }
        }
    }
}

TEST_CASE("sqrt_in_quadext embeds square roots of rationals") {
    // 11 is a non-residue mod 3: sqrt(11) generates the unramified quadratic ext
    auto s = sqrt_in_quadext(3, 8, 11);
    auto ssq = s * s;
    REQUIRE(ssq.a() == PadicApprox::from_int(3, 8, 11));
    REQUIRE(ssq.b().is_zero());

    // 11 is a residue mod 5: lands in the base field
    auto t = sqrt_in_quadext(5, 8, 11);
    REQUIRE(t.b().is_zero());
    REQUIRE(t.a() * t.a() == PadicApprox::from_int(5, 8, 11));
}
