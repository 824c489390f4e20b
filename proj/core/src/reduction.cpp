#include "wach/reduction.hpp"

#include <algorithm>

namespace wach {

namespace {

long long pow_ll(long p, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

long long norm_mod(long long x, long long m) {
    if (m == 1) return 0;
    long long r = x % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace

FundCharExp make_fund_exp(long p, int level, long long raw) {
    FundCharExp e;
    e.level = level;
    e.modulus = pow_ll(p, level) - 1;
    e.exp = norm_mod(raw, e.modulus == 0 ? 1 : e.modulus);
    if (e.modulus == 0) e.modulus = 1;
    return e;
}

ReductionResult reduce_induced(const std::vector<long>& l, long p, int f) {
    if (static_cast<int>(l.size()) != 2 * f)
        throw MalformedEllError("reduce_induced: expected a vector of length 2f");
    for (int i = 0; i < f; ++i) {
        long a = l[static_cast<size_t>(i)], b = l[static_cast<size_t>(i + f)];
        if (a < 0 || b < 0 || std::min(a, b) != 0)
            throw MalformedEllError("reduce_induced: {l_i, l_{i+f}} must be {0, k_i}");
    }
    long long beta = 0;
    for (int i = 0; i < 2 * f; ++i) beta -= pow_ll(p, i) * l[static_cast<size_t>(i)];

    ReductionResult r;
    r.beta_raw = beta;
    long long pf = pow_ll(p, f);
    FundCharExp e1 = make_fund_exp(p, 2 * f, beta);
    FundCharExp e2 = make_fund_exp(p, 2 * f, beta * pf);
    if (e2.exp < e1.exp) std::swap(e1, e2);
    r.summands = {e1, e2};
    r.irreducible = (norm_mod(beta, pf + 1) != 0);
    return r;
}

ReductionResult reduce_reducible(const std::vector<long>& weights, const std::vector<bool>& x_nonzero,
                                 long p) {
    int f = static_cast<int>(weights.size());
    if (x_nonzero.size() != weights.size())
        throw std::invalid_argument("reduce_reducible: size mismatch");
    long long b1 = 0, b2 = 0;
    for (int i = 0; i < f; ++i) {
        long mi = x_nonzero[static_cast<size_t>(i)] ? 0 : weights[static_cast<size_t>(i)];
        b1 -= mi * pow_ll(p, i);
        b2 += (mi - weights[static_cast<size_t>(i)]) * pow_ll(p, i);
    }
    ReductionResult r;
    r.betas12 = {b1, b2};
    FundCharExp e1 = make_fund_exp(p, f, b1);
    FundCharExp e2 = make_fund_exp(p, f, b2);
    if (e2.exp < e1.exp) std::swap(e1, e2);
    r.summands = {e1, e2};
    r.irreducible = false;
    return r;
}

FundCharExp det_reduction(const std::vector<long>& weights, long p, int f) {
    long long a = 0;
    for (int i = 0; i < f && i < static_cast<int>(weights.size()); ++i)
        a -= pow_ll(p, i) * weights[static_cast<size_t>(i)];
    return make_fund_exp(p, f, a);
}

std::optional<FundCharExp> level_lower(const FundCharExp& x, long p, int f) {
    if (x.level != 2 * f) throw std::invalid_argument("level_lower: input must have level 2f");
    long long pf1 = pow_ll(p, f) + 1;
    if (x.exp % pf1 != 0) return std::nullopt;
    return make_fund_exp(p, f, x.exp / pf1);
}

}  // namespace wach
