#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wach/padic.hpp"
#include "wach/reduction.hpp"

namespace wach {

struct NotAdmissibleError : std::runtime_error {
    explicit NotAdmissibleError(const std::string& what) : std::runtime_error(what) {}
};

// 2x2 matrix of scalars, row-major [[a, b], [c, d]]
struct Mat2 {
    PadicScalar a, b, c, d;

    static Mat2 zero(const PrecisionBudget& bud);
    static Mat2 ident(const PrecisionBudget& bud);
    Mat2 operator*(const Mat2& o) const;
    Mat2 operator+(const Mat2& o) const;
    Mat2 operator-(const Mat2& o) const;
    Mat2 adj() const;  // adjugate
    PadicScalar det() const;
    PadicScalar tr() const;
    Mat2 mul_scalar(const PadicScalar& s) const;
    bool is_zero() const;
};

// constant f-tuple of 2x2 matrices, indexed by embedding position; the
// Frobenius rotates positions to the left
using Mat2Tau = std::vector<Mat2>;

Mat2Tau mat_phi_rot(const Mat2Tau& A);
Mat2Tau mat_mul(const Mat2Tau& A, const Mat2Tau& B);  // positionwise 2x2 products
// A * phi(A) * ... * phi^{f-1}(A); component 0 is the matrix of the f-th
// Frobenius power on the distinguished component
Mat2Tau phi_power_f(const Mat2Tau& A);

constexpr long long kValInf = 1LL << 40;

// v_p of the product of the components (kValInf if any component vanishes)
long long tuple_nm_val(const std::vector<PadicScalar>& v, int M_cap);

enum class FrobForm { Standard, Triangular, NonSemisimple, Scalar, General };

std::string to_string(FrobForm f);

/**
 * Rank-two filtered phi-module over the product ring: the Frobenius matrix
 * per embedding, nonnegative weights (the filtration jumps), and the
 * filtration direction vectors (x_i, y_i) != (0, 0).  The form tag records
 * the normal form the Frobenius matrix is in; classification is stated per
 * normal form and no diagonalization over extensions is attempted here.
 */
struct FiltMod2 {
    PrecisionBudget bud;
    int f = 1;
    std::vector<long> weights;
    Mat2Tau frob;
    std::vector<PadicScalar> fx, fy;
    FrobForm form = FrobForm::Standard;
};

struct AdmissibilityDetail {
    bool admissible = false;
    long long v_det_nm = 0;    // v_p of Nm of det(frob)
    long long weight_sum = 0;  // sum k_i
    long long v_alpha = 0;     // v_p(Nm alpha): diagonal (or upper) entry
    long long v_delta = 0;     // v_p(Nm delta)
    long long hodge_y0 = 0;    // sum of k_i over y_i = 0
    long long hodge_x0 = 0;    // sum of k_i over x_i = 0
};

AdmissibilityDetail weak_admissible_detail(const FiltMod2& D);
bool weak_admissible(const FiltMod2& D);

enum class ReducibilityKind { Irreducible, SplitReducible, NonSplitReducible };

std::string to_string(ReducibilityKind k);

struct ClassificationVerdict {
    bool admissible = false;
    ReducibilityKind kind = ReducibilityKind::Irreducible;
    std::optional<std::vector<long>> submodule_weights;  // of the stable line when reducible
    bool f_scalar = false;  // flagged: extra stable lines exist, kind reported per the same inequalities
    long long slack2 = 0;   // v_alpha - hodge_y0
    long long slack3 = 0;   // v_delta - hodge_x0
};

ClassificationVerdict classify(const FiltMod2& D);

// true when v_p(Tr(phi^f)) = 0, which forces reducibility; requires a
// weakly admissible input with at least one positive weight
bool trace_reducibility(const FiltMod2& D);

struct WedgeData {
    std::vector<long> weights;               // of the exterior square
    std::vector<PadicScalar> frob_scalar;    // det of the slot Frobenius
    FundCharExp reduction;                   // -sum p^i k_i at level f
};

WedgeData det_weights(const FiltMod2& D);

// roots in Z_p of X^2 - T X + D when they exist with the stated precision;
// used to enumerate rational eigenlines of general-form Frobenius matrices
std::optional<std::pair<PadicScalar, PadicScalar>> split_quadratic(const PadicScalar& T,
                                                                   const PadicScalar& D);

}  // namespace wach
