#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wach/filtered_phi.hpp"
#include "wach/pi_series.hpp"

namespace wach {

struct ClassViolationError : std::runtime_error {
    explicit ClassViolationError(const std::string& what) : std::runtime_error(what) {}
};
struct BoundViolationError : std::runtime_error {
    explicit BoundViolationError(const std::string& what) : std::runtime_error(what) {}
};
struct IntegralityFailedError : std::runtime_error {
    explicit IntegralityFailedError(const std::string& what) : std::runtime_error(what) {}
};
struct PropertyFailedError : std::runtime_error {
    explicit PropertyFailedError(const std::string& what) : std::runtime_error(what) {}
};
struct OrdinaryExcludedError : std::runtime_error {
    explicit OrdinaryExcludedError(const std::string& what) : std::runtime_error(what) {}
};
struct ParityViolationError : std::runtime_error {
    explicit ParityViolationError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * The four 2x2 matrix shapes used to build rank-two families; with the
 * weight entry written q^k and the indeterminate entry written Xz:
 *
 *   type1: [[q^k, 0], [Xz, 1]]     type2: [[Xz, 1], [q^k, 0]]
 *   type3: [[1, Xz], [0, q^k]]     type4: [[0, q^k], [1, Xz]]
 *
 * type2 and type4 are the "even" shapes (they swap the two lines).
 */
enum class MatType : int { T1 = 1, T2 = 2, T3 = 3, T4 = 4 };

inline bool even_type(MatType t) { return t == MatType::T2 || t == MatType::T4; }

/**
 * f-tuple of matrix types in tuple-position order: entry j is the type of
 * the matrix at embedding position j, which carries the weight with label
 * (j+1) mod f.  CLI form "1,2" for f = 2.
 */
struct TypeVector {
    std::vector<MatType> t;

    int f() const { return static_cast<int>(t.size()); }
    MatType at_pos(int j) const { return t[static_cast<size_t>(j)]; }
    MatType at_label(int i) const { return t[static_cast<size_t>(((i - 1) % f() + f()) % f())]; }
    int even_count() const;
    std::string str() const;
    static TypeVector parse(const std::string& s);
    bool operator==(const TypeVector& o) const { return t == o.t; }
    bool operator<(const TypeVector& o) const { return t < o.t; }
};

enum class TypeClass { C1, C2, C1Star, C2Star, None };

std::string to_string(TypeClass c);

// recursive parity-defined membership in C1 / C2 / C1* / C2*
TypeClass class_membership(const TypeVector& tv);

// product of the elementary-matrix images of the types mod (p, X); nullopt
// when the product vanishes.  C1 <-> E11, C2 <-> E22, C1* <-> E12,
// C2* <-> E21.
std::optional<std::pair<int, int>> qbar_of(const TypeVector& tv);

// type recipe whose zero member is the induced representation attached to
// the level-2f exponent vector l (odd number of even-type coordinates)
TypeVector types_for_induced(const std::vector<long>& l);

// type recipe whose zero member is the split sum chi_l + chi_l' (even
// number of even-type coordinates); OrdinaryExcludedError when l or l'
// vanishes unless enforce_nonordinary is cleared
TypeVector types_for_split(const std::vector<long>& l, const std::vector<long>& lprime,
                           bool enforce_nonordinary = true);

// base change by a tuple of identity/swap matrices that puts every position
// before the last into {t1, t2}; preserves the even-type count parity and
// the isomorphism class of the attached family
TypeVector normalize_types(const TypeVector& tv);

/**
 * 2x2 matrix with entries that are integer-coefficient polynomials in
 * X_0..X_{f-1}, each variable of degree <= 1 (monomials are squarefree, so
 * a bitmask indexes them).  Used to evaluate the f-fold product mod pi
 * symbolically and test whether its trace is a scalar.
 */
struct SymPoly {
    std::map<std::uint32_t, long long> coeff;  // monomial mask -> coefficient

    static SymPoly zero() { return {}; }
    static SymPoly constant(long long c);
    static SymPoly variable(int i, long long c);
    SymPoly operator+(const SymPoly& o) const;
    SymPoly operator*(const SymPoly& o) const;
    bool is_scalar() const;
    std::string str() const;
};

struct SymPoly2x2 {
    SymPoly a, b, c, d;
    SymPoly trace() const { return a + d; }
};

struct SymbolicQf {
    SymPoly2x2 qf;
    bool trace_is_scalar = false;
};

// multiply the mod-pi matrices with X_i phi(z_i) replaced by X_i z_i(0)
SymbolicQf symbolic_Qf(long p, const TypeVector& tv, const std::vector<long>& weights,
                       const std::vector<long long>& units = {});

// m = floor((k-1)/(p-1)) when k >= p and not all weights equal p, else 0
int alpha_bound_exponent(long p, const std::vector<long>& weights);
// m_ell = floor((ell-1)/(p-1)); the constant term of the z polynomials,
// except that z = 1 mod pi when all weights equal p
int z_constant_exponent(long p, int ell);
bool all_weights_p(long p, const std::vector<long>& weights);

/**
 * Specification of a rank-two family: weights (by label), a type vector,
 * units c_i, evaluation points a_i with v_p(a_i) >= 1, the truncation
 * parameter ell (defaults to the largest weight), and the budget.
 */
struct FamilySpec {
    PrecisionBudget bud;
    int f = 1;
    std::vector<long> weights;
    TypeVector tv;
    std::vector<long long> units;
    std::vector<long long> alpha;
    int ell = 0;

    static FamilySpec make(const PrecisionBudget& bud, std::vector<long> weights, TypeVector tv,
                           std::vector<long long> alpha = {}, std::vector<long long> units = {},
                           int ell = 0);
    long max_weight() const;
};

/**
 * The pair of auxiliary elements (a_i, b_i) in the weighted-integral ring
 * whose gamma-quotients give the diagonal Gamma-action: for every gamma,
 * x_i = a_i / gamma(a_i) and y_i = b_i / gamma(b_i).  Built from the
 * lambda products of level f (no net line swap) or 2f (net swap).
 */
struct GeneratorChain {
    int f = 1;
    bool net_swap = false;
    std::vector<int> twist_x, twist_y;      // phi-depth -> twist exponent
    std::vector<PiSeries> gen_a, gen_b;     // by label 0..f-1

    PiSeries x_of(int label, const GammaElement& g) const;
    PiSeries y_of(int label, const GammaElement& g) const;
};

GeneratorChain build_generator_chain(const TypeVector& tv, const std::vector<long>& weights,
                                     const PrecisionBudget& bud);

// z_i in Z_p[pi], degree <= ell-1, z_i(0) = p^{m_ell} (or 1 when every
// weight equals p), with z_i x_i - y_i gamma(z_i) (types 1/2; the swapped
// combination for types 3/4) divisible by pi^ell for every sampled gamma
std::vector<PiSeries> build_z_polynomials(const FamilySpec& spec, const GeneratorChain& chain,
                                          const std::vector<GammaElement>& gammas);

struct SeriesMat2 {
    PiSeries a, b, c, d;

    static SeriesMat2 zero(const PrecisionBudget& bud);
    static SeriesMat2 ident(const PrecisionBudget& bud);
    SeriesMat2 operator*(const SeriesMat2& o) const;
    SeriesMat2 operator+(const SeriesMat2& o) const;
    SeriesMat2 operator-(const SeriesMat2& o) const;
    SeriesMat2 map(const std::function<PiSeries(const PiSeries&)>& fn) const;
    PiSeries det() const;
    SeriesMat2 adj() const;
    int pi_order_mod(int m) const;
};

using SeriesMat2Tau = std::vector<SeriesMat2>;  // indexed by position

SeriesMat2Tau mat_frobenius(const SeriesMat2Tau& A);
SeriesMat2Tau mat_gamma_act(const SeriesMat2Tau& A, const GammaElement& g);
SeriesMat2Tau mat_mul(const SeriesMat2Tau& A, const SeriesMat2Tau& B);
SeriesMat2Tau mat_sub(const SeriesMat2Tau& A, const SeriesMat2Tau& B);
int mat_pi_order(const SeriesMat2Tau& A, int m);

// every tuple entry repeated d times (restriction to the subextension)
SeriesMat2Tau double_restrict(const SeriesMat2Tau& A, int d);
Mat2Tau double_restrict(const Mat2Tau& A, int d);

struct FamilyBuild {
    FamilySpec spec;
    GeneratorChain chain;
    std::vector<PiSeries> z;   // by label
    SeriesMat2Tau Pi;          // by position
    FiltMod2 D;                // reduction mod pi with its filtration data
    int m_bound = 0;           // alpha-domain exponent
};

FamilyBuild build_Pi(const FamilySpec& spec);

enum class QTag { Id, Swap };

/**
 * Diagonalization data of the doubled (level-2f) family at the zero
 * evaluation point: the conjugating sequence of identity/swap matrices, the
 * two diagonal exponent tuples, the indicator z of the filtration line in
 * the new basis, and the exponent vector of the character the stable line
 * cuts out.
 */
struct DoubledDiag {
    std::vector<QTag> qseq;       // length 2f
    std::vector<long> lambda_exps, mu_exps;
    std::vector<int> zvec;
    std::vector<long> ell_out;
};

DoubledDiag diagonalize_doubled(const TypeVector& tv, const std::vector<long>& weights);

// normal forms of the f = 2 family with types (1,3): split / non-split /
// irreducible according to the vanishing pattern of alpha
FiltMod2 family13_normal_form(const PrecisionBudget& bud, long k0, long k1, const PadicScalar& a0,
                              const PadicScalar& a1);

}  // namespace wach
