#pragma once

#include <string>
#include <vector>

#include "wach/pi_series.hpp"

namespace wach {

struct LevelMismatchError : std::runtime_error {
    explicit LevelMismatchError(const std::string& what) : std::runtime_error(what) {}
};
struct MalformedPairError : std::runtime_error {
    explicit MalformedPairError(const std::string& what) : std::runtime_error(what) {}
};
struct AllWeightsZeroError : std::runtime_error {
    explicit AllWeightsZeroError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * A crystalline character of the Galois group of the unramified extension of
 * degree `level`, recorded as an unramified constant c (a unit) together
 * with the exponent vector (k_0, ..., k_{level-1}); the labeled Hodge-Tate
 * weight at the embedding tau_i is -k_i.
 */
struct CrystChar {
    int level = 1;
    PadicScalar c;
    std::vector<long> exps;

    bool effective() const;
    std::string pretty() const;  // eta_c * chi_0^{k_1} ... chi_{f-1}^{k_0}
};

CrystChar trivial_char(int level, const PrecisionBudget& bud);

// constants multiply, exponent vectors add; levels must agree
CrystChar char_mul(const CrystChar& a, const CrystChar& b);

// restriction to the subgroup of index d: the exponent vector repeats d
// times, the constant is unchanged
CrystChar char_restrict(const CrystChar& x, int d);

// conjugation by the n-th power of Frobenius: cyclic shift of the exponents
CrystChar char_conjugate(const CrystChar& x, int n);

/**
 * Rank-one Wach module of an effective character: the Frobenius acts on the
 * basis by the tuple (c q^{k_1}, q^{k_2}, ..., q^{k_{f-1}}, q^{k_0}), and
 * gamma acts by the unique tuple congruent to 1 mod pi that commutes with
 * it.  gamma_tuple computes that tuple; commutation_order measures the
 * pi-adic order of the commutation residual (N means it vanishes at budget).
 */
class WachRank1 {
public:
    CrystChar chi;
    PrecisionBudget bud;
    TauSeries phi_vec;

    TauSeries gamma_tuple(const GammaElement& g) const;

    // pi-order of phi_vec * phi(g) - g * gamma(phi_vec) at target precision
    int commutation_order(const GammaElement& g) const;

    // pi-order of g(g1 g2) - g(g1) * g1(g(g2))
    int cocycle_order(const GammaElement& g1, const GammaElement& g2) const;
};

// requires every exponent nonnegative; VerificationError if the constructed
// action fails its own commutation check
WachRank1 rank1_wach(const CrystChar& chi, const PrecisionBudget& bud);

// ----- bookkeeping for characters of the double extension -----

// does l satisfy {l_i, l_{i+f}} = {0, k_i} for some nonnegative k?
bool bracket_valid(const std::vector<long>& l);

std::vector<long> sigma_shift(const std::vector<long>& l);  // l'_i = l_{i+f}

// Ind(chi_l) and Ind(chi_m) are isomorphic iff m = l or m = sigma_shift(l)
bool induced_iso_test(const std::vector<long>& l, const std::vector<long>& m);

// Ind(chi_l) is irreducible iff l_i != l_{i+f} for some i
bool induced_irreducible(const std::vector<long>& l);

// one level-2f representative per isomorphism class of irreducible induced
// representations with weights {0, -k_i}; exactly 2^{f+ - 1} of them where
// f+ counts the strictly positive weights
std::vector<std::vector<long>> enumerate_induced_classes(const std::vector<long>& weights);

}  // namespace wach
