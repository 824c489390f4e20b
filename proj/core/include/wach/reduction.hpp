#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wach/padic.hpp"

namespace wach {

struct MalformedEllError : std::runtime_error {
    explicit MalformedEllError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Exponent of the level-n fundamental character of tame inertia attached to
 * the distinguished residual embedding; exponents live mod p^n - 1.
 */
struct FundCharExp {
    int level = 1;             // n
    long long modulus = 1;     // p^n - 1
    long long exp = 0;         // normalized to [0, modulus)

    bool operator==(const FundCharExp& o) const {
        return level == o.level && modulus == o.modulus && exp == o.exp;
    }
};

FundCharExp make_fund_exp(long p, int level, long long raw);

/**
 * Semisimplified mod-p reduction of a rank-two object: two fundamental
 * character exponents (level f or 2f) plus an irreducibility flag.  The raw
 * integer exponents are kept for human cross-checking.
 */
struct ReductionResult {
    std::vector<FundCharExp> summands;  // sorted ascending by exponent
    bool irreducible = false;
    long long beta_raw = 0;                       // induced case
    std::optional<std::pair<long long, long long>> betas12;  // reducible case
};

// Induced case: l is a level-2f vector with {l_i, l_{i+f}} = {0, k_i}.
// beta = -sum p^i l_i; the summands are omega_{2f}^beta and
// omega_{2f}^{p^f beta}; irreducible iff (1+p^f) does not divide beta.
ReductionResult reduce_induced(const std::vector<long>& l, long p, int f);

// Reducible case from the Hodge data of the stable line: m_i = 0 when
// x_i != 0 and k_i otherwise; beta_1 = -sum m_i p^i,
// beta_2 = sum (m_i - k_i) p^i, both at level f.
ReductionResult reduce_reducible(const std::vector<long>& weights, const std::vector<bool>& x_nonzero,
                                 long p);

// wedge-square reduction exponent -sum p^i k_i at level f
FundCharExp det_reduction(const std::vector<long>& weights, long p, int f);

// omega_{2f}^e descends to level f iff (1+p^f) | e; the descended exponent
// is e / (1+p^f) mod p^f - 1
std::optional<FundCharExp> level_lower(const FundCharExp& x, long p, int f);

}  // namespace wach
