#include "wach/characters.hpp"

#include <algorithm>
#include <sstream>

namespace wach {

bool CrystChar::effective() const {
    return std::all_of(exps.begin(), exps.end(), [](long k) { return k >= 0; });
}

std::string CrystChar::pretty() const {
    std::ostringstream os;
    os << "chi = eta_c";
    int f = level;
    for (int i = 0; i < f; ++i) {
        long k = exps[static_cast<size_t>((i + 1) % f)];
        if (k == 0) continue;
        os << " * chi_" << i << "^" << k;
    }
    return os.str();
}

CrystChar trivial_char(int level, const PrecisionBudget& bud) {
    CrystChar x;
    x.level = level;
    x.c = PadicScalar::one(bud);
    x.exps.assign(static_cast<size_t>(level), 0);
    return x;
}

CrystChar char_mul(const CrystChar& a, const CrystChar& b) {
    if (a.level != b.level) throw LevelMismatchError("char_mul: levels differ");
    CrystChar r = a;
    r.c = a.c * b.c;
    for (size_t i = 0; i < r.exps.size(); ++i) r.exps[i] += b.exps[i];
    return r;
}

CrystChar char_restrict(const CrystChar& x, int d) {
    if (d < 1) throw std::invalid_argument("char_restrict: d >= 1 required");
    CrystChar r = x;
    r.level = x.level * d;
    r.exps.clear();
    for (int t = 0; t < d; ++t) r.exps.insert(r.exps.end(), x.exps.begin(), x.exps.end());
    return r;
}

CrystChar char_conjugate(const CrystChar& x, int n) {
    CrystChar r = x;
    int f = x.level;
    int s = ((n % f) + f) % f;
    for (int i = 0; i < f; ++i) r.exps[static_cast<size_t>(i)] = x.exps[static_cast<size_t>((i + s) % f)];
    return r;
}

TauSeries WachRank1::gamma_tuple(const GammaElement& g) const {
    int f = chi.level;
    TauSeries out = TauSeries::fill(f, PiSeries::one(bud));
    if (g.is_identity()) return out;

    // g_0 = prod_i phi^i(lambda_{f,gamma})^{k_i}, solving
    // phi^f(g_0) = g_0 * prod_i phi^i(gamma(q)/q)^{k_i}
    PiSeries lam_g = lambda_f_gamma(f, g, bud);
    PiSeries g0 = PiSeries::one(bud);
    PiSeries rot = lam_g;
    for (int i = 0; i < f; ++i) {
        long k = chi.exps[static_cast<size_t>(i)];
        if (k > 0) g0 = g0 * rot.pow_u(static_cast<unsigned>(k));
        if (i + 1 < f) rot = frobenius(rot);
    }

    // back substitution g_m = (q/gamma q)^{k_m} phi(g_{m+1}), m = f-1 .. 1
    PiSeries qr = q_ratio(g, bud);
    std::vector<PiSeries> gs(static_cast<size_t>(f), PiSeries::one(bud));
    gs[0] = g0;
    PiSeries cur = g0;
    for (int m = f - 1; m >= 1; --m) {
        long k = chi.exps[static_cast<size_t>(m)];
        PiSeries next = frobenius(cur);
        if (k > 0) next = next * qr.pow_u(static_cast<unsigned>(k));
        gs[static_cast<size_t>(m)] = next;
        cur = next;
    }
    // tuple layout: component j carries g_{(j+1) mod f}
    for (int j = 0; j < f; ++j) out.comp[static_cast<size_t>(j)] = gs[static_cast<size_t>((j + 1) % f)].certify_integral();
    return out;
}

int WachRank1::commutation_order(const GammaElement& g) const {
    TauSeries gt = gamma_tuple(g);
    TauSeries resid = phi_vec * tau_frobenius(gt) - gt * tau_gamma_act(phi_vec, g);
    return resid.pi_order_mod(bud.M);
}

int WachRank1::cocycle_order(const GammaElement& g1, const GammaElement& g2) const {
    GammaElement g12{g1.a * g2.a};
    TauSeries lhs = gamma_tuple(g12);
    TauSeries rhs = gamma_tuple(g1) * tau_gamma_act(gamma_tuple(g2), g1);
    return (lhs - rhs).pi_order_mod(bud.M);
}

WachRank1 rank1_wach(const CrystChar& chi, const PrecisionBudget& bud) {
    if (!chi.effective()) throw std::invalid_argument("rank1_wach: character must be effective");
    WachRank1 w;
    w.chi = chi;
    w.bud = bud;
    int f = chi.level;
    PiSeries q = q_series(bud);
    w.phi_vec = TauSeries::fill(f, PiSeries::one(bud));
    for (int j = 0; j < f; ++j) {
        long k = chi.exps[static_cast<size_t>((j + 1) % f)];
        PiSeries e = k > 0 ? q.pow_u(static_cast<unsigned>(k)) : PiSeries::one(bud);
        if (j == 0) e = e.mul_scalar(chi.c);
        w.phi_vec.comp[static_cast<size_t>(j)] = e;
    }
    // the action is verified at construction for a sample gamma
    GammaElement probe{1 + bud.p};
    if (w.commutation_order(probe) < bud.N)
        throw VerificationError("rank1_wach: commutation identity failed at budget");
    return w;
}

bool bracket_valid(const std::vector<long>& l) {
    if (l.size() % 2 != 0) return false;
    size_t f = l.size() / 2;
    for (size_t i = 0; i < f; ++i) {
        long a = l[i], b = l[i + f];
        if (a < 0 || b < 0) return false;
        if (std::min(a, b) != 0) return false;
    }
    return true;
}

std::vector<long> sigma_shift(const std::vector<long>& l) {
    size_t n = l.size();
    std::vector<long> r(n);
    for (size_t i = 0; i < n; ++i) r[i] = l[(i + n / 2) % n];
    return r;
}

bool induced_iso_test(const std::vector<long>& l, const std::vector<long>& m) {
    if (!bracket_valid(l) || !bracket_valid(m) || l.size() != m.size())
        throw MalformedPairError("induced_iso_test: inputs must satisfy {l_i, l_{i+f}} = {0, k_i}");
    return l == m || sigma_shift(l) == m;
}

bool induced_irreducible(const std::vector<long>& l) {
    size_t f = l.size() / 2;
    for (size_t i = 0; i < f; ++i)
        if (l[i] != l[i + f]) return true;
    return false;
}

std::vector<std::vector<long>> enumerate_induced_classes(const std::vector<long>& weights) {
    size_t f = weights.size();
    std::vector<size_t> positive;
    for (size_t i = 0; i < f; ++i)
        if (weights[i] > 0) positive.push_back(i);
    if (positive.empty()) throw AllWeightsZeroError("enumerate_induced_classes: all weights are zero");

    std::vector<std::vector<long>> classes;
    for (std::uint64_t mask = 0; mask < (1ULL << positive.size()); ++mask) {
        std::vector<long> l(2 * f, 0);
        for (size_t b = 0; b < positive.size(); ++b) {
            size_t i = positive[b];
            if (mask & (1ULL << b))
                l[i] = weights[i];
            else
                l[i + f] = weights[i];
        }
        bool dup = false;
        for (const auto& seen : classes)
            if (induced_iso_test(seen, l)) dup = true;
        if (!dup) classes.push_back(std::move(l));
    }
    std::sort(classes.begin(), classes.end());
    return classes;
}

}  // namespace wach
