#include "wach/pi_series.hpp"

#include <algorithm>
#include <sstream>

namespace wach {

namespace {

constexpr int kInfPrec = 1 << 20;

int gdeg(const PrecisionBudget& b, int j) { return j / static_cast<int>(b.p - 1); }

}  // namespace

PiSeries::PiSeries(const PrecisionBudget& b)
    : bud(b), scale(0), prec(b.W), a(static_cast<size_t>(b.N), PadicScalar::zero(b)) {}

PiSeries PiSeries::zero(const PrecisionBudget& b) { return PiSeries(b); }

PiSeries PiSeries::one(const PrecisionBudget& b) {
    PiSeries s(b);
    s.a[0] = PadicScalar::one(b);
    s.r_flag = true;
    return s;
}

PiSeries PiSeries::pi(const PrecisionBudget& b) {
    PiSeries s(b);
    if (b.N > 1) s.a[1] = PadicScalar::one(b);
    s.r_flag = true;
    return s;
}

PiSeries PiSeries::constant(const PadicScalar& c, const PrecisionBudget& b) {
    PiSeries s(b);
    s.a[0] = c;
    s.r_flag = true;
    return s;
}

PiSeries PiSeries::from_int_coeffs(const PrecisionBudget& b, const std::vector<long long>& coeffs) {
    PiSeries s(b);
    for (size_t j = 0; j < coeffs.size() && j < s.a.size(); ++j)
        s.a[j] = PadicScalar::from_int(b, coeffs[j]);
    s.r_flag = true;
    return s;
}

void PiSeries::match(const PiSeries& o) const {
    if (!(bud == o.bud)) throw std::invalid_argument("PiSeries: mixed precision budgets");
}

int PiSeries::weighted_offset() const {
    int off = kInfPrec;
    for (int j = 0; j < bud.N; ++j) {
        const auto& c = a[static_cast<size_t>(j)];
        if (c.is_zero()) continue;
        off = std::min(off, scale + c.val_raw() + gdeg(bud, j));
    }
    return off;
}

PiSeries PiSeries::normalized() const {
    // strip the largest common p-power of the stored coefficients into the
    // scale; an exact integer identity, so certified precision is unchanged
    int t = bud.W;
    for (const auto& c : a) {
        if (c.is_zero()) continue;
        t = std::min(t, c.val_raw());
    }
    if (t == bud.W) {  // stored zero
        PiSeries r = *this;
        r.scale = 0;
        r.prec = prec;
        return r;
    }
    if (t == 0) return *this;
    PiSeries r = *this;
    for (auto& c : r.a) c = c.shift_p(-t);
    r.scale += t;
    return r;
}

PiSeries PiSeries::operator+(const PiSeries& o) const {
    match(o);
    PiSeries r(bud);
    int e = std::min(scale, o.scale);
    r.scale = e;
    for (int j = 0; j < bud.N; ++j) {
        PadicScalar x = a[static_cast<size_t>(j)].shift_p(scale - e);
        PadicScalar y = o.a[static_cast<size_t>(j)].shift_p(o.scale - e);
        r.a[static_cast<size_t>(j)] = x + y;
    }
    r.prec = std::min({prec, o.prec, bud.W + e});
    r.r_flag = r_flag && o.r_flag;
    return r.normalized();
}

PiSeries PiSeries::operator-(const PiSeries& o) const { return *this + (-o); }

PiSeries PiSeries::operator-() const {
    PiSeries r = *this;
    for (auto& c : r.a) c = -c;
    return r;
}

PiSeries PiSeries::operator*(const PiSeries& o) const {
    match(o);
    PiSeries r(bud);
    r.scale = scale + o.scale;
    for (int i = 0; i < bud.N; ++i) {
        if (a[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; i + j < bud.N; ++j) {
            if (o.a[static_cast<size_t>(j)].is_zero()) continue;
            r.a[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * o.a[static_cast<size_t>(j)];
        }
    }
    r.prec = std::min({prec + o.weighted_offset(), o.prec + weighted_offset(), bud.W + r.scale});
    r.r_flag = r_flag && o.r_flag;
    return r.normalized();
}

PiSeries PiSeries::mul_scalar(const PadicScalar& c) const {
    PiSeries r = *this;
    int cv = c.is_zero() ? bud.W : c.val_raw();
    for (auto& x : r.a) x = x * c;
    r.prec = std::min(prec + cv, bud.W + scale);
    return r;
}

PiSeries PiSeries::mul_int(long long v) const { return mul_scalar(PadicScalar::from_int(bud, v)); }

PiSeries PiSeries::shift_scale(int t) const {
    PiSeries r = *this;
    r.scale += t;
    r.prec = prec + t;
    if (t < 0) r.r_flag = false;
    return r;
}

PiSeries PiSeries::pow_u(unsigned e) const {
    PiSeries r = PiSeries::one(bud);
    PiSeries b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

PiSeries PiSeries::invert_unit() const {
    PiSeries A = normalized();
    const int G = bud.denom_bound();
    // a_0 p^scale must be a unit
    PadicScalar u = A.a[0].shift_p(A.scale);
    if (u.val_raw() != 0) throw NotAUnitError("invert_unit: constant term is not a unit");
    PadicScalar uinv = u.unit_inverse();

    // Solve sum_{i<=j} ahat_i bhat_{j-i} = delta_{j0} p^{-sA-sB} over stored
    // residues.  The output scale must absorb both the denominators of the
    // inverse (bounded by the weighted integrality rule) and the input scale.
    int sB = -std::max(G, A.scale);
    PiSeries B(bud);
    B.scale = sB;
    B.a[0] = uinv.shift_p(-sB);
    for (int j = 1; j < bud.N; ++j) {
        PadicScalar s = PadicScalar::zero(bud);
        for (int i = 1; i <= j; ++i) s += A.a[static_cast<size_t>(i)] * B.a[static_cast<size_t>(j - i)];
        // bhat_j = -s / ahat_0 = -s * p^{scale} * u^{-1}
        B.a[static_cast<size_t>(j)] = (-s).shift_p(A.scale) * uinv;
    }
    B.prec = std::min(A.prec - 2, bud.W + sB);
    B.r_flag = r_flag;
    return B.normalized();
}

PiSeries PiSeries::divide_unit(const PiSeries& B, int extra_denom) const {
    match(B);
    PiSeries A = normalized();
    PiSeries Bn = B.normalized();
    PadicScalar u = Bn.a[0].shift_p(Bn.scale);
    if (u.val_raw() != 0) throw NotAUnitError("divide_unit: divisor constant term is not a unit");
    PadicScalar uinv = u.unit_inverse();

    // output scale low enough that every quotient coefficient is stored
    // integrally: the quotient's denominators are bounded by p^{extra_denom}
    PiSeries X(bud);
    X.scale = std::min(A.scale - Bn.scale, -extra_denom);
    int e = A.scale - Bn.scale - X.scale;  // >= 0
    // solve conv(Xhat, Bhat) = Ahat * p^e at the stored level
    for (int j = 0; j < bud.N; ++j) {
        PadicScalar s = A.a[static_cast<size_t>(j)].shift_p(e);
        for (int i = 1; i <= j; ++i)
            s -= Bn.a[static_cast<size_t>(i)] * X.a[static_cast<size_t>(j - i)];
        // Xhat_j = s / Bhat_0 = s * p^{scale(B)} * u^{-1}
        X.a[static_cast<size_t>(j)] = s.shift_p(Bn.scale) * uinv;
    }
    X.prec = std::min({A.prec - 2, Bn.prec - 2, bud.W + X.scale});
    X.r_flag = false;
    return X.normalized();
}

PadicScalar PiSeries::coeff_value(int j) const {
    if (j < 0 || j >= bud.N) throw std::invalid_argument("coeff_value: index out of range");
    int cj = prec - gdeg(bud, j);
    if (cj < bud.M)
        throw PrecisionLossError("coeff_value: coefficient certified below the target precision");
    return a[static_cast<size_t>(j)].shift_p(scale);
}

PiSeries PiSeries::certify_integral() const {
    PiSeries src = normalized();
    if (src.scale >= 0) {
        PiSeries r(bud);
        for (int j = 0; j < bud.N; ++j) r.a[static_cast<size_t>(j)] = src.a[static_cast<size_t>(j)].shift_p(src.scale);
        r.prec = std::min(src.prec, bud.W);
        r.r_flag = true;
        return r;
    }
    int need = -src.scale;
    for (int j = 0; j < bud.N; ++j) {
        const auto& c = src.a[static_cast<size_t>(j)];
        if (c.is_zero() || c.val_raw() >= need) continue;
        int cj = src.prec - gdeg(bud, j) - src.scale;  // stored-level certification
        if (c.val_raw() >= cj)
            throw PrecisionLossError("certify_integral: cannot certify integrality at this precision");
        throw VerificationError("certify_integral: value has a genuine denominator");
    }
    PiSeries r(bud);
    for (int j = 0; j < bud.N; ++j) r.a[static_cast<size_t>(j)] = src.a[static_cast<size_t>(j)].shift_p(src.scale);
    r.prec = std::min(src.prec, bud.W);
    r.r_flag = true;
    return r;
}

int PiSeries::pi_order_mod(int m) const {
    for (int j = 0; j < bud.N; ++j) {
        const auto& c = a[static_cast<size_t>(j)];
        int vj = c.is_zero() ? kInfPrec : c.val_raw() + scale;
        int cj = prec - gdeg(bud, j);
        if (vj >= m) {
            if (cj < m)
                throw PrecisionLossError("pi_order_mod: zero coefficient not certified to requested depth");
            continue;
        }
        if (cj <= vj)
            throw PrecisionLossError("pi_order_mod: nonzero coefficient below certified precision");
        return j;
    }
    return bud.N;
}

std::string PiSeries::to_text() const {
    std::ostringstream os;
    if (scale != 0) os << bud.p << "^" << scale << " * ";
    os << "(";
    bool first = true;
    for (int j = 0; j < bud.N; ++j) {
        const auto& c = a[static_cast<size_t>(j)];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        if (bud.d == 1) {
            os << c.coord(0);
        } else {
            os << "[" << c.to_text(bud.W) << "]";
        }
        if (j == 1) os << "*pi";
        if (j > 1) os << "*pi^" << j;
        first = false;
    }
    if (first) os << "0";
    os << ") mod (" << bud.p << "^" << bud.M << ", pi^" << bud.N << ")";
    return os.str();
}

namespace {

// composition s(u) for u a pi-multiple with exactly known integer coefficients
PiSeries compose_exact(const PiSeries& s, const std::vector<std::uint64_t>& ucoeffs) {
    const auto& b = s.bud;
    std::uint64_t mod = b.modulus();
    std::vector<std::vector<std::uint64_t>> pw(static_cast<size_t>(b.N));
    pw[0] = std::vector<std::uint64_t>(static_cast<size_t>(b.N), 0);
    pw[0][0] = 1;
    for (int i = 1; i < b.N; ++i) {
        pw[static_cast<size_t>(i)] = std::vector<std::uint64_t>(static_cast<size_t>(b.N), 0);
        const auto& prev = pw[static_cast<size_t>(i - 1)];
        for (int x = i - 1; x < b.N; ++x) {
            if (prev[static_cast<size_t>(x)] == 0) continue;
            for (int y = 1; x + y < b.N; ++y) {
                if (ucoeffs[static_cast<size_t>(y)] == 0) continue;
                auto& slot = pw[static_cast<size_t>(i)][static_cast<size_t>(x + y)];
                slot = static_cast<std::uint64_t>(
                    (slot + static_cast<unsigned __int128>(prev[static_cast<size_t>(x)]) *
                                ucoeffs[static_cast<size_t>(y)]) %
                    mod);
            }
        }
    }
    PiSeries r(b);
    r.scale = s.scale;
    for (int i = 0; i < b.N; ++i) {
        const auto& ci = s.a[static_cast<size_t>(i)];
        if (ci.is_zero()) continue;
        for (int j = i; j < b.N; ++j) {
            std::uint64_t w = pw[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (w == 0) continue;
            r.a[static_cast<size_t>(j)] += ci * PadicScalar(b, w);
        }
    }
    r.prec = std::min(s.prec, b.W + s.scale);
    r.r_flag = s.r_flag;
    return r;
}

std::vector<std::uint64_t> binomial_substitution(const PrecisionBudget& b, long long a) {
    // coefficients of (1+pi)^a - 1
    std::vector<std::uint64_t> u(static_cast<size_t>(b.N), 0);
    for (int j = 1; j < b.N; ++j) u[static_cast<size_t>(j)] = binom_int(b, a, j).coord(0);
    return u;
}

}  // namespace

PiSeries frobenius(const PiSeries& s) { return compose_exact(s, binomial_substitution(s.bud, s.bud.p)); }

PiSeries frobenius_pow(const PiSeries& s, int n) {
    PiSeries r = s;
    for (int i = 0; i < n; ++i) r = frobenius(r);
    return r;
}

PiSeries gamma_act(const PiSeries& s, const GammaElement& g) {
    if (g.is_identity()) return s;
    return compose_exact(s, binomial_substitution(s.bud, g.a));
}

PiSeries q_series(const PrecisionBudget& b) {
    PiSeries s(b);
    for (int j = 0; j < b.N && j <= b.p - 1; ++j) s.a[static_cast<size_t>(j)] = binom_int(b, b.p, j + 1);
    s.r_flag = true;
    return s;
}

PiSeries qn_series(int n, const PrecisionBudget& b) {
    if (n < 1) throw std::invalid_argument("qn_series: n >= 1 required");
    return frobenius_pow(q_series(b), n - 1);
}

PiSeries lambda_f(int f, const PrecisionBudget& b) {
    if (f < 1) throw std::invalid_argument("lambda_f: f >= 1 required");
    PiSeries acc = PiSeries::one(b);
    PiSeries qn = q_series(b);  // runs over q_{nf+1} = phi^{nf}(q)
    const int hard_cap = 2 * (b.W + b.denom_bound()) / f + 8;
    for (int n = 0;; ++n) {
        if (n > hard_cap) throw VerificationError("lambda_f: factor product failed to stabilize");
        PiSeries factor = qn.shift_scale(-1);
        factor.r_flag = true;
        PiSeries dev = factor - PiSeries::one(b);
        bool negligible = true;
        for (const auto& c : dev.a)
            if (!c.is_zero()) negligible = false;
        if (negligible && n > 0) break;
        acc = acc * factor;
        for (int i = 0; i < f; ++i) qn = frobenius(qn);
    }
    return acc.normalized();
}

PiSeries lambda_f_gamma(int f, const GammaElement& g, const PrecisionBudget& b) {
    if (g.is_identity()) return PiSeries::one(b);
    PiSeries lam = lambda_f(f, b);
    return lam.divide_unit(gamma_act(lam, g)).certify_integral();
}

PiSeries q_ratio(const GammaElement& g, const PrecisionBudget& b) {
    if (g.is_identity()) return PiSeries::one(b);
    PiSeries qp = q_series(b).shift_scale(-1);
    qp.r_flag = true;
    PiSeries gqp = gamma_act(qp, g);
    return qp.divide_unit(gqp).certify_integral();
}

bool r_ring_check(const PiSeries& s) {
    for (int j = 0; j < s.bud.N; ++j) {
        const auto& c = s.a[static_cast<size_t>(j)];
        if (c.is_zero()) continue;
        if (s.scale + c.val_raw() + gdeg(s.bud, j) < 0) return false;
    }
    return true;
}

TauSeries TauSeries::fill(int f, const PiSeries& s) {
    TauSeries t;
    t.comp.assign(static_cast<size_t>(f), s);
    return t;
}

TauSeries TauSeries::operator+(const TauSeries& o) const {
    TauSeries r = *this;
    for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = comp[i] + o.comp[i];
    return r;
}

TauSeries TauSeries::operator-(const TauSeries& o) const {
    TauSeries r = *this;
    for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = comp[i] - o.comp[i];
    return r;
}

TauSeries TauSeries::operator*(const TauSeries& o) const {
    TauSeries r = *this;
    for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = comp[i] * o.comp[i];
    return r;
}

int TauSeries::pi_order_mod(int m) const {
    int ord = comp.empty() ? 0 : comp[0].bud.N;
    for (const auto& c : comp) ord = std::min(ord, c.pi_order_mod(m));
    return ord;
}

TauSeries tau_frobenius(const TauSeries& t) {
    TauSeries r = t;
    int f = t.f();
    for (int i = 0; i < f; ++i)
        r.comp[static_cast<size_t>(i)] = frobenius(t.comp[static_cast<size_t>((i + 1) % f)]);
    return r;
}

TauSeries tau_gamma_act(const TauSeries& t, const GammaElement& g) {
    TauSeries r = t;
    for (auto& c : r.comp) c = gamma_act(c, g);
    return r;
}

TauSeries nm_phi(const TauSeries& t) {
    TauSeries acc = t;
    TauSeries rot = t;
    for (int i = 1; i < t.f(); ++i) {
        rot = tau_frobenius(rot);
        acc = acc * rot;
    }
    return acc;
}

}  // namespace wach
