#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wach {

struct PrecisionLossError : std::runtime_error {
    explicit PrecisionLossError(const std::string& what) : std::runtime_error(what) {}
};

struct NotAUnitError : std::runtime_error {
    explicit NotAUnitError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Joint precision at which every computation in this library is certified:
 * scalars are residues mod p^M, series are truncated at pi^N.
 *
 * Internally scalars are stored mod p^W for a working exponent W > M.  The
 * headroom absorbs the bounded denominators of series whose coefficients a_i
 * satisfy v_p(a_i) + i/(p-1) >= 0, plus a fixed guard for intermediate
 * divisions.  Results are only ever *claimed* mod p^M; if a computation
 * cannot certify that much it throws PrecisionLossError instead of
 * truncating silently.
 */
struct PrecisionBudget {
    long p = 2;
    int M = 8;   // p-adic precision: values certified mod p^M
    int N = 12;  // pi-adic precision: series truncated at pi^N
    int W = 0;   // storage exponent, residues live mod p^W
    int d = 1;   // degree of the unramified coefficient extension

    PrecisionBudget() { *this = PrecisionBudget(2, 8, 12); }
    PrecisionBudget(long p_, int M_, int N_, int d_ = 1);

    // floor((N-1)/(p-1)): the largest denominator exponent allowed by the
    // weighted integrality condition v_p(a_i) + i/(p-1) >= 0 below pi^N.
    int denom_bound() const { return (N - 1) / static_cast<int>(p - 1); }

    std::uint64_t pow_p(int e) const;  // p^e as u64, requires 0 <= e <= W
    std::uint64_t modulus() const { return pow_p(W); }

    bool operator==(const PrecisionBudget& o) const {
        return p == o.p && M == o.M && N == o.N && W == o.W && d == o.d;
    }
};

// Largest W with p^W < 2^62 (so products fit in unsigned __int128 comfortably).
int max_working_exponent(long p);

/**
 * Valuation of a scalar: either an exact nonnegative integer, or the marker
 * "at least the precision" when the scalar is indistinguishable from zero.
 */
struct Valuation {
    int value = 0;
    bool at_least_precision = false;

    static Valuation exact(int v) { return {v, false}; }
    static Valuation at_least(int m) { return {m, true}; }

    bool operator==(const Valuation& o) const {
        return value == o.value && at_least_precision == o.at_least_precision;
    }
};

/**
 * Element of the ring of integers of the degree-d unramified extension of
 * Q_p, known mod p^W.  Coordinates are taken w.r.t. the power basis
 * 1, w, ..., w^{d-1} where w is a root of a fixed irreducible modulus
 * polynomial mod p (shipped in a table for d <= 4, so results are
 * reproducible across runs).
 */
class PadicScalar {
public:
    PadicScalar() = default;
    PadicScalar(const PrecisionBudget& bud, std::uint64_t c0);
    static PadicScalar zero(const PrecisionBudget& bud);
    static PadicScalar one(const PrecisionBudget& bud);
    static PadicScalar from_int(const PrecisionBudget& bud, long long v);
    static PadicScalar from_coords(const PrecisionBudget& bud, const std::vector<std::uint64_t>& coords);

    long p() const { return p_; }
    int working() const { return W_; }
    int degree() const { return d_; }
    std::uint64_t modulus() const { return mod_; }
    std::uint64_t coord(int i) const { return c_[static_cast<size_t>(i)]; }

    PadicScalar operator+(const PadicScalar& o) const;
    PadicScalar operator-(const PadicScalar& o) const;
    PadicScalar operator*(const PadicScalar& o) const;
    PadicScalar operator-() const;
    PadicScalar& operator+=(const PadicScalar& o) { return *this = *this + o; }
    PadicScalar& operator-=(const PadicScalar& o) { return *this = *this - o; }
    PadicScalar& operator*=(const PadicScalar& o) { return *this = *this * o; }
    bool operator==(const PadicScalar& o) const;

    PadicScalar mul_int(long long v) const;
    PadicScalar pow_u(unsigned long long e) const;

    bool is_zero() const;
    bool is_zero_mod(int m) const;  // all coordinates divisible by p^m

    // min over coordinates of v_p, capped at the storage precision W
    int val_raw() const;

    // Multiply by p^t (t >= 0) or divide exactly by p^t (t < 0; every
    // coordinate must be divisible, else PrecisionLossError).
    PadicScalar shift_p(int t) const;

    PadicScalar unit_inverse() const;  // Newton lift; NotAUnitError if v_p > 0

    std::string to_text(int m) const;  // "c0 + c1*w + ... (mod p^m)"

private:
    long p_ = 0;
    int W_ = 0;
    int d_ = 1;
    std::uint64_t mod_ = 0;
    std::array<std::uint64_t, 4> c_{};

    void reduce_();
};

// val per the library contract: exact valuation, or AtLeastPrecision(M) when
// x == 0 mod p^M.  M defaults to the budget's target precision.
Valuation val(const PadicScalar& x, int M);

/**
 * Binomial coefficient a(a-1)...(a-n+1)/n! of a residue a mod p^cert.
 * The quotient is a p-adic integer; dividing by n! costs v_p(n!) digits of
 * certified precision.  Returns the value together with the precision it is
 * certified at; throws PrecisionLossError when nothing can be certified.
 */
struct BinomResult {
    PadicScalar value;
    int certified;  // value is correct mod p^certified
};
BinomResult binom(const PadicScalar& a, long n, int cert);

// C(a, n) for an exact (small) integer a, reduced mod p^W.  Exact: no
// precision is lost.  Handles negative a via C(a,n) = (-1)^n C(n-a-1, n).
PadicScalar binom_int(const PrecisionBudget& bud, long long a, long n);

int val_u64(std::uint64_t x, long p, int cap);
std::uint64_t pow_u64(std::uint64_t b, std::uint64_t e, std::uint64_t mod);
std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t mod);
long long vp_factorial(long long n, long p);

// fixed modulus polynomial table: monic x^d + t[d-1] x^{d-1} + ... + t[0]
// with integer-lifted coefficients, irreducible mod p, for 2 <= d <= 4
const std::vector<long>& modulus_poly(long p, int d);

// parse the textual rendering produced by PadicScalar::to_text
PadicScalar parse_scalar(const PrecisionBudget& bud, const std::string& text);

}  // namespace wach
