#pragma once

#include <string>
#include <vector>

#include "wach/families.hpp"

namespace wach {

struct NotSurjectiveError : std::runtime_error {
    explicit NotSurjectiveError(const std::string& what) : std::runtime_error(what) {}
};
struct StalledResidualError : std::runtime_error {
    explicit StalledResidualError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Gamma-action matrix on a rank-two family Wach module, certified up to
 * pi^order: the commutation residual Pi phi(G) gamma(Pi)^{-1} - G vanishes
 * mod (p^M, pi^order).  Entries are congruent to the identity mod pi.
 */
struct GammaMatrix {
    GammaElement g;
    SeriesMat2Tau mat;  // by position
    int order = 0;
};

// gamma(Pi)^{-1} assembled from the adjugate and the determinant
// e_i c_i (gamma q)^{k_i}, inverted through the unit series (gamma q)/p
SeriesMat2Tau gamma_pi_inverse(const FamilyBuild& fb, const GammaElement& g);

// G - Pi phi(G) gamma(Pi)^{-1}
SeriesMat2Tau commutation_residual(const FamilyBuild& fb, const SeriesMat2Tau& G,
                                   const GammaElement& g);

/**
 * Diagonal first approximation diag(x, y): the twist chain of the type
 * vector determines each coordinate as a gamma-quotient of an element of
 * the generator chain; the residual is certified to order >= ell.
 */
GammaMatrix initial_G(const FamilyBuild& fb, const GammaElement& g);

// the excluded configuration in which the refinement operator fails to be
// surjective: ell = k, all weights equal, and the type vector in C1 or C2
bool operator_excluded(const FamilySpec& spec);

/**
 * Solve H - Q_f H (p^{f(s-1)} Q_f^{-1}) = target over constant matrices by
 * the contracting-iteration of the refinement step; NotSurjectiveError when
 * the iteration fails to stabilize.
 */
Mat2 solve_operator(const Mat2& Qf, const std::vector<long>& weights, const Mat2& target, int s,
                    int f);

// one successive-approximation step: the returned matrix is certified to a
// strictly larger order (StalledResidualError otherwise)
GammaMatrix refine_G(const FamilyBuild& fb, const GammaMatrix& prev);

// iterate refine_G until the commutation residual vanishes at budget
GammaMatrix refine_to_budget(const FamilyBuild& fb, GammaMatrix g);

// full solve: initial approximation plus refinement to budget
GammaMatrix solve_gamma(const FamilyBuild& fb, const GammaElement& g);

struct VerifyReport {
    int comm_order_1 = 0;
    int comm_order_2 = 0;
    int comm_order_12 = 0;
    int cocycle_order = 0;
    bool pass = false;
};

// commutation orders of the three inputs plus the order of
// G_{g1 g2} - G_{g1} * g1(G_{g2}); requires chi(g12) = chi(g1) chi(g2)
VerifyReport verify(const FamilyBuild& fb, const GammaMatrix& G1, const GammaMatrix& G2,
                    const GammaMatrix& G12);

}  // namespace wach
