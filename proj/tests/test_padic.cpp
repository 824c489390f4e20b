#include <doctest.h>

#include <random>

#include "wach/padic.hpp"

using namespace wach;

TEST_CASE("valuation basics") {
    PrecisionBudget bud(3, 8, 12);
    PadicScalar p1 = PadicScalar::from_int(bud, 3);
    CHECK(val(p1, bud.M) == Valuation::exact(1));

    PadicScalar z = PadicScalar::zero(bud);
    CHECK(val(z, bud.M) == Valuation::at_least(8));

    // p^2 times random units, against a hand count of the p-factors
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        long long u = static_cast<long long>(rng() % 1000) + 1;
        while (u % 3 == 0) ++u;
        PadicScalar x = PadicScalar::from_int(bud, 9 * u);
        CHECK(val(x, bud.M) == Valuation::exact(2));
    }
}

TEST_CASE("valuation is additive below precision") {
    PrecisionBudget bud(5, 8, 12);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int va = static_cast<int>(rng() % 4), vb = static_cast<int>(rng() % 4);
        long long ua = static_cast<long long>(rng() % 100) + 1;
        long long ub = static_cast<long long>(rng() % 100) + 1;
        while (ua % 5 == 0) ++ua;
        while (ub % 5 == 0) ++ub;
        long long pa = 1, pb = 1;
        for (int i = 0; i < va; ++i) pa *= 5;
        for (int i = 0; i < vb; ++i) pb *= 5;
        PadicScalar x = PadicScalar::from_int(bud, ua * pa);
        PadicScalar y = PadicScalar::from_int(bud, ub * pb);
        Valuation vx = val(x, bud.M), vy = val(y, bud.M), vxy = val(x * y, bud.M);
        if (vx.value + vy.value < bud.M) {
            CHECK(vxy == Valuation::exact(vx.value + vy.value));
        } else {
            CHECK(vxy.at_least_precision);
        }
    }
}

TEST_CASE("binomial coefficients") {
    PrecisionBudget bud(3, 8, 12);

    SUBCASE("empty product") {
        BinomResult r = binom(PadicScalar::from_int(bud, 17), 0, bud.W);
        CHECK(r.value == PadicScalar::one(bud));
    }
    SUBCASE("integer case") {
        BinomResult r = binom(PadicScalar::from_int(bud, 4), 2, bud.W);
        CHECK(r.value == PadicScalar::from_int(bud, 6));
    }
    SUBCASE("a = 1+p, n = 3 over p = 3 matches C(4,3)") {
        BinomResult r = binom(PadicScalar::from_int(bud, 4), 3, bud.W);
        CHECK(r.value.coord(0) % 81 == 4);  // mod 3^4
        CHECK(r.certified >= 4);
    }
    SUBCASE("agrees with the exact integer binomial for a <= 50") {
        auto exact = [](long a, long n) {
            unsigned __int128 c = 1;
            for (long i = 1; i <= n; ++i) {
                c = c * static_cast<unsigned __int128>(a - i + 1);
                c /= static_cast<unsigned __int128>(i);
            }
            return c;
        };
        for (long a = 0; a <= 50; ++a) {
            for (long n = 0; n <= a && n <= 12; ++n) {
                BinomResult r = binom(PadicScalar::from_int(bud, a), n, bud.W);
                std::uint64_t m = 1;
                for (int i = 0; i < r.certified && i < bud.M; ++i) m *= 3;
                CHECK(r.value.coord(0) % m ==
                      static_cast<std::uint64_t>(exact(a, n) % static_cast<unsigned __int128>(m)));
            }
        }
    }
    SUBCASE("precision exhaustion is loud") {
        CHECK_THROWS_AS(binom(PadicScalar::from_int(bud, 10), 100000, 3), PrecisionLossError);
    }
    SUBCASE("negative integer upper index") {
        PadicScalar r = binom_int(bud, -1, 5);
        CHECK(r == PadicScalar::from_int(bud, -1));
        CHECK(binom_int(bud, -1, 4) == PadicScalar::one(bud));
        CHECK(binom_int(bud, -2, 2) == PadicScalar::from_int(bud, 3));
    }
}

TEST_CASE("unit inversion") {
    SUBCASE("identity") {
        PrecisionBudget bud(3, 8, 12);
        CHECK(PadicScalar::one(bud).unit_inverse() == PadicScalar::one(bud));
    }
    SUBCASE("2 inverts to 5 mod 9") {
        // brute-force oracle over residues mod 9
        int found = -1;
        for (int x = 0; x < 9; ++x)
            if (2 * x % 9 == 1) found = x;
        CHECK(found == 5);
        PrecisionBudget bud(3, 2, 4);
        PadicScalar inv = PadicScalar::from_int(bud, 2).unit_inverse();
        CHECK(inv.coord(0) % 9 == 5);
    }
    SUBCASE("p is not a unit") {
        PrecisionBudget bud(3, 8, 12);
        CHECK_THROWS_AS(PadicScalar::from_int(bud, 3).unit_inverse(), NotAUnitError);
    }
    SUBCASE("Newton inversion for 1000 random units") {
        PrecisionBudget bud(5, 8, 12);
        std::mt19937_64 rng(13);
        for (int trial = 0; trial < 1000; ++trial) {
            std::uint64_t u = rng() % bud.modulus();
            if (u % 5 == 0) u += 1;
            PadicScalar x(bud, u);
            PadicScalar prod = x * x.unit_inverse() - PadicScalar::one(bud);
            CHECK(prod.is_zero_mod(bud.M));
        }
    }
}

TEST_CASE("ring axioms at precision for randomized triples") {
    for (long p : {2L, 3L, 5L}) {
        for (int d : {1, 2, 3, 4}) {
            PrecisionBudget bud(p, 6, 8, d);
            std::mt19937_64 rng(static_cast<std::uint64_t>(100 * p + d));
            auto rand_scalar = [&]() {
                std::vector<std::uint64_t> coords(static_cast<size_t>(d));
                for (auto& c : coords) c = rng() % bud.modulus();
                return PadicScalar::from_coords(bud, coords);
            };
            for (int trial = 0; trial < 60; ++trial) {
                PadicScalar x = rand_scalar(), y = rand_scalar(), z = rand_scalar();
                CHECK((x * y) * z == x * (y * z));
                CHECK(x * (y + z) == x * y + x * z);
                CHECK(x + y == y + x);
                CHECK(x * y == y * x);
            }
        }
    }
}

TEST_CASE("modulus polynomials are irreducible mod p") {
    auto poly_mod_eval = [](const std::vector<long>& f, int d, long x, long p) {
        long r = 1 % p;  // leading monic term accumulates via Horner
        for (int i = d - 1; i >= 0; --i) r = (r * x + f[static_cast<size_t>(i)]) % p;
        return r;
    };
    for (long p : {2L, 3L, 5L, 7L}) {
        for (int d = 2; d <= 4; ++d) {
            const auto& f = modulus_poly(p, d);
            for (long x = 0; x < p; ++x) CHECK(poly_mod_eval(f, d, x, p) != 0);
            if (d == 4) {
                // no monic quadratic factor: trial-divide by x^2 + bx + c
                for (long b = 0; b < p; ++b) {
                    for (long c = 0; c < p; ++c) {
                        // remainder of x^4 + f3 x^3 + f2 x^2 + f1 x + f0 by x^2 + b x + c
                        long f3 = f[3], f2 = f[2], f1 = f[1], f0 = f[0];
                        long q1 = ((f3 - b) % p + p) % p;
                        long q0 = ((f2 - c - b * q1) % p + p) % p;
                        long r1 = ((f1 - c * q1 - b * q0) % p + p) % p;
                        long r0 = ((f0 - c * q0) % p + p) % p;
                        CHECK((r1 != 0 || r0 != 0));
                    }
                }
            }
        }
    }
}

TEST_CASE("extension arithmetic and inversion for d > 1") {
    for (long p : {2L, 3L, 5L}) {
        for (int d : {2, 3, 4}) {
            PrecisionBudget bud(p, 6, 8, d);
            std::mt19937_64 rng(static_cast<std::uint64_t>(7 * p + d));
            for (int trial = 0; trial < 40; ++trial) {
                std::vector<std::uint64_t> coords(static_cast<size_t>(d));
                for (auto& c : coords) c = rng() % bud.modulus();
                PadicScalar x = PadicScalar::from_coords(bud, coords);
                if (x.val_raw() != 0) continue;
                PadicScalar t = x * x.unit_inverse() - PadicScalar::one(bud);
                CHECK(t.is_zero_mod(bud.M));
            }
        }
    }
}

TEST_CASE("textual rendering round trip") {
    PrecisionBudget bud(3, 6, 8, 3);
    PadicScalar x = PadicScalar::from_coords(bud, {5, 0, 17});
    std::string text = x.to_text(bud.W);
    PadicScalar back = parse_scalar(bud, text);
    CHECK(back == x);
    PrecisionBudget b1(3, 6, 8);
    CHECK(parse_scalar(b1, "7 (mod 3^6)") == PadicScalar::from_int(b1, 7));
}
