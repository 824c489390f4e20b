#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wach/padic.hpp"

namespace wach {

struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * An element gamma of Gamma_K, represented by chi(gamma) = a in Z_p^*.
 * Kept as an exact integer so that substituting pi |-> (1+pi)^a - 1 costs
 * no precision: the binomial coefficients C(a, n) are exact.
 */
struct GammaElement {
    long long a = 1;
    bool is_identity() const { return a == 1; }
};

/**
 * Truncated series in pi over PadicScalar:
 *
 *     value = p^scale * (a_0 + a_1 pi + ... + a_{N-1} pi^{N-1}) + O(pi^N)
 *
 * The global scale exponent (possibly negative) carries every denominator;
 * this suffices because each series handled here satisfies the weighted
 * bound v_p(value coeff of pi^i) >= scale_floor - i/(p-1) for some fixed
 * floor, so denominators never exceed p^{(N-1)/(p-1)} past the scale.
 *
 * `prec` is a certified precision with the matching weighted meaning: the
 * value coefficient of pi^j is correct mod p^{prec - floor(j/(p-1))}.  The
 * weighting makes `prec` stable under ring operations between series that
 * satisfy the weighted bound, so long chains of products (the lambda
 * factor products, Gamma-action solves) do not decay linearly.
 */
class PiSeries {
public:
    PrecisionBudget bud;
    int scale = 0;
    int prec = 0;
    bool r_flag = false;  // claims the weighted integrality bound with floor 0
    std::vector<PadicScalar> a;

    PiSeries() = default;
    explicit PiSeries(const PrecisionBudget& b);

    static PiSeries zero(const PrecisionBudget& b);
    static PiSeries one(const PrecisionBudget& b);
    static PiSeries pi(const PrecisionBudget& b);
    static PiSeries constant(const PadicScalar& c, const PrecisionBudget& b);
    static PiSeries from_int_coeffs(const PrecisionBudget& b, const std::vector<long long>& coeffs);

    int n() const { return bud.N; }

    PiSeries operator+(const PiSeries& o) const;
    PiSeries operator-(const PiSeries& o) const;
    PiSeries operator*(const PiSeries& o) const;
    PiSeries operator-() const;

    PiSeries mul_scalar(const PadicScalar& c) const;
    PiSeries mul_int(long long v) const;
    PiSeries shift_scale(int t) const;  // multiply the value by p^t
    PiSeries pow_u(unsigned e) const;

    // multiplicative inverse; the value's constant term must be a p-adic unit
    PiSeries invert_unit() const;

    // solve X * B = this for X, with B a unit series.  extra_denom reserves
    // p-denominator room for the quotient beyond scale(this) - scale(B);
    // quotients of gamma-translates are integral and need none.
    PiSeries divide_unit(const PiSeries& B, int extra_denom = 0) const;

    // value coefficient of pi^j as a scalar, which must be p-integral at the
    // certified precision (PrecisionLossError / VerificationError otherwise)
    PadicScalar coeff_value(int j) const;

    // re-express with scale 0 after checking that every coefficient of the
    // value is p-integral up to the certified precision
    PiSeries certify_integral() const;

    // strip the common p-power of the stored coefficients into the scale;
    // an exact identity on the represented value
    PiSeries normalized() const;

    // smallest j < N whose value coefficient is nonzero mod p^m (requires the
    // certified precision to reach m there); returns N when none is
    int pi_order_mod(int m) const;

    bool is_zero_mod(int m) const { return pi_order_mod(m) == bud.N; }

    // weighted offset of the stored value: min_j scale + v_p(a_j) + floor(j/(p-1))
    int weighted_offset() const;

    std::string to_text() const;

private:
    void match(const PiSeries& o) const;
};

// pi |-> (1+pi)^p - 1
PiSeries frobenius(const PiSeries& s);
PiSeries frobenius_pow(const PiSeries& s, int n);

// pi |-> (1+pi)^a - 1
PiSeries gamma_act(const PiSeries& s, const GammaElement& g);

// q = phi(pi)/pi, an integral series with constant term p
PiSeries q_series(const PrecisionBudget& b);
// q_n = phi^{n-1}(q)
PiSeries qn_series(int n, const PrecisionBudget& b);

// lambda_f = prod_{n>=0} q_{nf+1}/p, truncated once the next factor is
// indistinguishable from 1 at working precision; satisfies lambda_f(0) = 1
// and phi^f(lambda_f) * (q/p) = lambda_f
PiSeries lambda_f(int f, const PrecisionBudget& b);

// lambda_{f,gamma} = lambda_f / gamma(lambda_f), an integral series = 1 mod pi
PiSeries lambda_f_gamma(int f, const GammaElement& g, const PrecisionBudget& b);

// q / gamma(q) = (q/p) * (gamma(q)/p)^{-1}, integral, = 1 mod pi
PiSeries q_ratio(const GammaElement& g, const PrecisionBudget& b);

// weighted integrality check v_p(p^scale a_i) + i/(p-1) >= 0 on the stored
// coefficients
bool r_ring_check(const PiSeries& s);

/**
 * f-tuple of series indexed by the embeddings tau_0..tau_{f-1}, with the
 * Frobenius acting by left rotation composed with the pi-substitution:
 * component i of phi(t) = frobenius(component i+1 mod f of t).
 */
struct TauSeries {
    std::vector<PiSeries> comp;

    int f() const { return static_cast<int>(comp.size()); }

    static TauSeries fill(int f, const PiSeries& s);

    TauSeries operator+(const TauSeries& o) const;
    TauSeries operator-(const TauSeries& o) const;
    TauSeries operator*(const TauSeries& o) const;  // componentwise

    int pi_order_mod(int m) const;  // min over components
};

TauSeries tau_frobenius(const TauSeries& t);
TauSeries tau_gamma_act(const TauSeries& t, const GammaElement& g);

// t * phi(t) * ... * phi^{f-1}(t)
TauSeries nm_phi(const TauSeries& t);

}  // namespace wach
