#include <doctest.h>

#include <random>

#include "wach/characters.hpp"

using namespace wach;

namespace {

CrystChar make_char(const PrecisionBudget& bud, std::vector<long> exps, long long c = 1) {
    CrystChar x;
    x.level = static_cast<int>(exps.size());
    x.c = PadicScalar::from_int(bud, c);
    x.exps = std::move(exps);
    return x;
}

}  // namespace

TEST_CASE("character algebra") {
    PrecisionBudget bud(3, 8, 12);
    SUBCASE("multiplying by the trivial character") {
        CrystChar x = make_char(bud, {2, 1}, 5);
        CrystChar t = trivial_char(2, bud);
        CrystChar y = char_mul(x, t);
        CHECK(y.exps == x.exps);
        CHECK(y.c == x.c);
    }
    SUBCASE("exponents add slotwise") {
        CrystChar a = make_char(bud, {3, 0});
        CrystChar b = make_char(bud, {4, 0});
        CHECK(char_mul(a, b).exps == std::vector<long>{7, 0});
    }
    SUBCASE("level mismatch is an error") {
        CHECK_THROWS_AS(char_mul(make_char(bud, {1}), make_char(bud, {1, 0})), LevelMismatchError);
    }
    SUBCASE("a character is the product of the basis characters") {
        // chi with weights (k_0, .., k_{f-1}) = eta_c * prod chi_i^{k_{i+1}}
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 20; ++trial) {
            int f = 1 + static_cast<int>(rng() % 4);
            std::vector<long> k(static_cast<size_t>(f));
            for (auto& v : k) v = static_cast<long>(rng() % 5);
            CrystChar prod = make_char(bud, std::vector<long>(static_cast<size_t>(f), 0), 7);
            for (int i = 0; i < f; ++i) {
                // chi_i has weight -1 at embedding i+1; exponent vector e_{i+1}
                std::vector<long> e(static_cast<size_t>(f), 0);
                e[static_cast<size_t>((i + 1) % f)] = 1;
                CrystChar basis = make_char(bud, e);
                for (long rep = 0; rep < k[static_cast<size_t>((i + 1) % f)]; ++rep)
                    prod = char_mul(prod, basis);
            }
            CHECK(prod.exps == k);
        }
    }
}

TEST_CASE("restriction and conjugation") {
    PrecisionBudget bud(3, 8, 12);
    SUBCASE("restriction repeats the exponents") {
        CrystChar x = make_char(bud, {2, 1}, 5);
        CHECK(char_restrict(x, 1).exps == x.exps);
        CrystChar y = char_restrict(x, 2);
        CHECK(y.level == 4);
        CHECK(y.exps == std::vector<long>{2, 1, 2, 1});
        CHECK(y.c == x.c);
    }
    SUBCASE("basis character restricts to the product of two") {
        // chi_i restricted to the double extension equals chi_i * chi_{i+f}
        int f = 3;
        for (int i = 0; i < f; ++i) {
            std::vector<long> e(static_cast<size_t>(f), 0);
            e[static_cast<size_t>((i + 1) % f)] = 1;
            CrystChar chi_i = make_char(bud, e);
            CrystChar restricted = char_restrict(chi_i, 2);
            std::vector<long> e1(static_cast<size_t>(2 * f), 0), e2(static_cast<size_t>(2 * f), 0);
            e1[static_cast<size_t>((i + 1) % (2 * f))] = 1;
            e2[static_cast<size_t>((i + f + 1) % (2 * f))] = 1;
            CrystChar prod = char_mul(make_char(bud, e1), make_char(bud, e2));
            CHECK(restricted.exps == prod.exps);
        }
    }
    SUBCASE("conjugation shifts cyclically") {
        CrystChar x = make_char(bud, {10, 11, 12, 13});
        CHECK(char_conjugate(x, 0).exps == x.exps);
        CHECK(char_conjugate(x, 4).exps == x.exps);
        CHECK(char_conjugate(x, 2).exps == std::vector<long>{12, 13, 10, 11});
    }
}

TEST_CASE("rank-one Wach modules") {
    SUBCASE("trivial character gives the constant action") {
        PrecisionBudget bud(3, 8, 12);
        WachRank1 w = rank1_wach(make_char(bud, {0, 0}), bud);
        for (long long a : {4LL, 16LL, 1LL}) {
            TauSeries g = w.gamma_tuple(GammaElement{a});
            for (const auto& c : g.comp)
                CHECK((c - PiSeries::one(bud)).pi_order_mod(bud.M) == bud.N);
        }
    }
    SUBCASE("the action is trivial mod pi") {
        PrecisionBudget bud(3, 8, 12);
        WachRank1 w = rank1_wach(make_char(bud, {2, 1}, 5), bud);
        TauSeries g = w.gamma_tuple(GammaElement{4});
        for (const auto& c : g.comp) CHECK(c.coeff_value(0) == PadicScalar::one(bud));
    }
    SUBCASE("f = 1, k = 1: the action matches the direct quotient oracle") {
        PrecisionBudget bud(3, 8, 12);
        WachRank1 w = rank1_wach(make_char(bud, {1}), bud);
        GammaElement g{4};
        TauSeries tup = w.gamma_tuple(g);
        PiSeries lam = lambda_f(1, bud);
        PiSeries oracle = (lam * gamma_act(lam, g).invert_unit()).certify_integral();
        CHECK((tup.comp[0] - oracle).pi_order_mod(bud.M) == bud.N);
    }
    SUBCASE("commutation residual vanishes at budget") {
        for (long p : {2L, 3L}) {
            PrecisionBudget bud(p, 8, 12);
            std::mt19937_64 rng(static_cast<std::uint64_t>(41 + p));
            for (int f : {1, 2, 3}) {
                std::vector<long> k(static_cast<size_t>(f));
                for (auto& v : k) v = static_cast<long>(rng() % (p + 2));
                WachRank1 w = rank1_wach(make_char(bud, k), bud);
                CHECK(w.commutation_order(GammaElement{1 + p}) == bud.N);
                CHECK(w.commutation_order(GammaElement{(1 + p) * (1 + p)}) == bud.N);
            }
        }
    }
    SUBCASE("cocycle identity") {
        PrecisionBudget bud(3, 8, 12);
        WachRank1 w = rank1_wach(make_char(bud, {2, 1}), bud);
        CHECK(w.cocycle_order(GammaElement{4}, GammaElement{16}) == bud.N);
        CHECK(w.cocycle_order(GammaElement{4}, GammaElement{4}) == bud.N);
    }
    SUBCASE("p = 2 admits the minus-one sample") {
        PrecisionBudget bud(2, 8, 12);
        WachRank1 w = rank1_wach(make_char(bud, {3, 1}), bud);
        CHECK(w.commutation_order(GammaElement{-1}) == bud.N);
        CHECK(w.cocycle_order(GammaElement{-1}, GammaElement{3}) == bud.N);
    }
    SUBCASE("the f-th power functional equation for the distinguished entry") {
        // phi^f(g_0) = g_0 * prod_i phi^i(gamma(q)/q)^{k_i}
        PrecisionBudget bud(3, 8, 12);
        std::vector<long> k = {2, 1};
        WachRank1 w = rank1_wach(make_char(bud, k), bud);
        GammaElement g{4};
        TauSeries tup = w.gamma_tuple(g);
        PiSeries g0 = tup.comp[1];  // component f-1 carries g_0
        PiSeries rhs = g0;
        PiSeries qr_inv = q_ratio(g, bud).invert_unit();  // gamma(q)/q
        PiSeries rot = qr_inv;
        for (int i = 0; i < 2; ++i) {
            if (k[static_cast<size_t>(i)] > 0)
                rhs = rhs * rot.pow_u(static_cast<unsigned>(k[static_cast<size_t>(i)]));
            if (i + 1 < 2) rot = frobenius(rot);
        }
        CHECK((frobenius_pow(g0, 2) - rhs).pi_order_mod(bud.M) == bud.N);
    }
    SUBCASE("non-effective characters are rejected") {
        PrecisionBudget bud(3, 8, 12);
        CHECK_THROWS(rank1_wach(make_char(bud, {-1, 2}), bud));
    }
}

TEST_CASE("induced bookkeeping") {
    SUBCASE("iso test accepts the vector and its shift") {
        std::vector<long> l = {2, 1, 0, 0};
        CHECK(induced_iso_test(l, l));
        CHECK(induced_iso_test(l, sigma_shift(l)));
        CHECK(induced_iso_test({3, 0}, {0, 3}));  // f = 1 conjugates
        CHECK(!induced_iso_test({2, 1, 0, 0}, {2, 0, 0, 1}));
    }
    SUBCASE("malformed pairs are rejected") {
        CHECK_THROWS_AS(induced_iso_test({2, 1, 1, 0}, {2, 1, 0, 0}), MalformedPairError);
    }
    SUBCASE("irreducibility is slotwise inequality") {
        CHECK(induced_irreducible({3, 0}));
        CHECK(!induced_irreducible({0, 0, 0, 0}));
        CHECK(induced_irreducible({0, 1, 0, 0}));
    }
    SUBCASE("class enumeration counts 2^{f+ - 1}") {
        CHECK(enumerate_induced_classes({3}).size() == 1);
        CHECK(enumerate_induced_classes({3})[0] == std::vector<long>{0, 3});
        CHECK(enumerate_induced_classes({2, 1}).size() == 2);
        CHECK(enumerate_induced_classes({1, 1, 1}).size() == 4);
        CHECK(enumerate_induced_classes({0, 2, 0}).size() == 1);
        CHECK(enumerate_induced_classes({2, 0, 1}).size() == 2);
        CHECK_THROWS_AS(enumerate_induced_classes({0, 0}), AllWeightsZeroError);
    }
    SUBCASE("representatives are irreducible and pairwise non-isomorphic") {
        auto classes = enumerate_induced_classes({2, 1, 3});
        CHECK(classes.size() == 4);
        for (size_t i = 0; i < classes.size(); ++i) {
            CHECK(induced_irreducible(classes[i]));
            for (size_t j = i + 1; j < classes.size(); ++j)
                CHECK(!induced_iso_test(classes[i], classes[j]));
        }
    }
}

TEST_CASE("rank-one action with an extension constant") {
    PrecisionBudget bud(3, 6, 10, 2);
    CrystChar x;
    x.level = 2;
    x.c = PadicScalar::from_coords(bud, {2, 1});  // a unit of the quadratic extension
    x.exps = {1, 2};
    WachRank1 w = rank1_wach(x, bud);
    CHECK(w.commutation_order(GammaElement{4}) == bud.N);
}
