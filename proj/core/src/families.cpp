#include "wach/families.hpp"

#include <algorithm>
#include <sstream>

namespace wach {

int TypeVector::even_count() const {
    int n = 0;
    for (MatType x : t)
        if (even_type(x)) ++n;
    return n;
}

std::string TypeVector::str() const {
    std::ostringstream os;
    for (size_t j = 0; j < t.size(); ++j) {
        if (j) os << ",";
        os << static_cast<int>(t[j]);
    }
    return os.str();
}

TypeVector TypeVector::parse(const std::string& s) {
    TypeVector tv;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        int v = std::stoi(tok);
        if (v < 1 || v > 4) throw std::invalid_argument("TypeVector: entries must be 1..4");
        tv.t.push_back(static_cast<MatType>(v));
    }
    if (tv.t.empty()) throw std::invalid_argument("TypeVector: empty");
    return tv;
}

std::string to_string(TypeClass c) {
    switch (c) {
        case TypeClass::C1: return "C1";
        case TypeClass::C2: return "C2";
        case TypeClass::C1Star: return "C1*";
        case TypeClass::C2Star: return "C2*";
        case TypeClass::None: return "none";
    }
    return "?";
}

TypeClass class_membership(const TypeVector& tv) {
    using T = MatType;
    int f = tv.f();
    if (f == 1) {
        switch (tv.at_pos(0)) {
            case T::T3: return TypeClass::C1;
            case T::T1: return TypeClass::C2;
            case T::T2: return TypeClass::C1Star;
            case T::T4: return TypeClass::C2Star;
        }
        return TypeClass::None;
    }
    MatType p1 = tv.at_pos(0);
    bool side1 = (p1 == T::T2 || p1 == T::T3);
    int evens = even_type(p1) ? 1 : 0;
    for (int j = 1; j <= f - 2; ++j) {
        MatType ti = tv.at_pos(j);
        bool even_par = (evens % 2 == 0);
        bool in23 = (ti == T::T2 || ti == T::T3);
        bool ok = side1 ? (even_par ? in23 : !in23) : (even_par ? !in23 : in23);
        if (!ok) return TypeClass::None;
        if (even_type(ti)) ++evens;
    }
    MatType p0 = tv.at_pos(f - 1);
    bool even_par = (evens % 2 == 0);
    if (side1) {
        if (p0 == (even_par ? T::T3 : T::T4)) return TypeClass::C1;
        if (p0 == (even_par ? T::T2 : T::T1)) return TypeClass::C1Star;
    } else {
        if (p0 == (even_par ? T::T1 : T::T2)) return TypeClass::C2;
        if (p0 == (even_par ? T::T4 : T::T3)) return TypeClass::C2Star;
    }
    return TypeClass::None;
}

std::optional<std::pair<int, int>> qbar_of(const TypeVector& tv) {
    auto elem = [](MatType t) -> std::pair<int, int> {
        switch (t) {
            case MatType::T1: return {2, 2};
            case MatType::T2: return {1, 2};
            case MatType::T3: return {1, 1};
            case MatType::T4: return {2, 1};
        }
        return {0, 0};
    };
    std::pair<int, int> cur = elem(tv.at_pos(0));
    for (int j = 1; j < tv.f(); ++j) {
        auto nxt = elem(tv.at_pos(j));
        if (cur.second != nxt.first) return std::nullopt;
        cur = {cur.first, nxt.second};
    }
    return cur;
}

namespace {

void check_bracket_2f(const std::vector<long>& l) {
    if (l.empty() || l.size() % 2 != 0)
        throw MalformedEllError("expected an exponent vector of even length 2f");
    size_t f = l.size() / 2;
    bool positive = false;
    for (size_t i = 0; i < f; ++i) {
        long a = l[i], b = l[i + f];
        if (a < 0 || b < 0 || std::min(a, b) != 0)
            throw MalformedEllError("exponent vector must satisfy {l_i, l_{i+f}} = {0, k_i}");
        if (std::max(a, b) > 0) positive = true;
    }
    if (!positive) throw MalformedEllError("at least one weight must be positive");
}

MatType middle_type(bool ell_positive, int evens) {
    bool even_par = (evens % 2 == 0);
    if (!ell_positive) return even_par ? MatType::T2 : MatType::T1;
    return even_par ? MatType::T1 : MatType::T2;
}

}  // namespace

TypeVector types_for_induced(const std::vector<long>& l) {
    check_bracket_2f(l);
    int f = static_cast<int>(l.size() / 2);
    TypeVector tv;
    tv.t.resize(static_cast<size_t>(f));
    int evens = 0;
    if (f >= 2) {
        tv.t[0] = (l[1] > 0) ? MatType::T1 : MatType::T2;
        if (even_type(tv.t[0])) ++evens;
        for (int i = 2; i <= f - 1; ++i) {
            tv.t[static_cast<size_t>(i - 1)] = middle_type(l[static_cast<size_t>(i)] > 0, evens);
            if (even_type(tv.t[static_cast<size_t>(i - 1)])) ++evens;
        }
    }
    bool even_par = (evens % 2 == 0);
    if (l[0] > 0)
        tv.t[static_cast<size_t>(f - 1)] = even_par ? MatType::T2 : MatType::T1;
    else
        tv.t[static_cast<size_t>(f - 1)] = even_par ? MatType::T4 : MatType::T3;
    return tv;
}

TypeVector types_for_split(const std::vector<long>& l, const std::vector<long>& lprime,
                           bool enforce_nonordinary) {
    if (l.size() != lprime.size() || l.empty())
        throw MalformedEllError("types_for_split: the two exponent vectors must share a length f");
    int f = static_cast<int>(l.size());
    bool l_zero = true, lp_zero = true, positive = false;
    for (int i = 0; i < f; ++i) {
        long a = l[static_cast<size_t>(i)], b = lprime[static_cast<size_t>(i)];
        if (a < 0 || b < 0 || std::min(a, b) != 0)
            throw MalformedEllError("types_for_split: {l_i, l'_i} must be {0, k_i}");
        if (a > 0) l_zero = false;
        if (b > 0) lp_zero = false;
        if (std::max(a, b) > 0) positive = true;
    }
    if (!positive) throw MalformedEllError("types_for_split: at least one weight must be positive");
    if (enforce_nonordinary && (l_zero || lp_zero))
        throw OrdinaryExcludedError("types_for_split: ordinary case (l = 0 or l' = 0) excluded");

    TypeVector tv;
    tv.t.resize(static_cast<size_t>(f));
    int evens = 0;
    if (f >= 2) {
        tv.t[0] = (l[1] > 0) ? MatType::T1 : MatType::T2;
        if (even_type(tv.t[0])) ++evens;
        for (int i = 2; i <= f - 1; ++i) {
            tv.t[static_cast<size_t>(i - 1)] = middle_type(l[static_cast<size_t>(i)] > 0, evens);
            if (even_type(tv.t[static_cast<size_t>(i - 1)])) ++evens;
        }
    }
    bool even_par = (evens % 2 == 0);
    if (l[0] > 0)
        tv.t[static_cast<size_t>(f - 1)] = even_par ? MatType::T1 : MatType::T2;
    else
        tv.t[static_cast<size_t>(f - 1)] = even_par ? MatType::T3 : MatType::T4;
    return tv;
}

TypeVector normalize_types(const TypeVector& tv) {
    int f = tv.f();
    // conjugating tuple: swap at position 0, then swap at position j+1
    // whenever the matrix at position j carries its weight entry in the
    // second column
    std::vector<bool> swap_at(static_cast<size_t>(f), false);
    swap_at[0] = true;
    for (int j = 1; j < f; ++j) {
        MatType prev = tv.at_pos(j - 1);
        swap_at[static_cast<size_t>(j)] = (prev == MatType::T3 || prev == MatType::T4);
    }
    auto row_swapped = [](MatType t) {
        switch (t) {
            case MatType::T1: return MatType::T2;
            case MatType::T2: return MatType::T1;
            case MatType::T3: return MatType::T4;
            case MatType::T4: return MatType::T3;
        }
        return t;
    };
    auto col_swapped = [](MatType t) {
        switch (t) {
            case MatType::T1: return MatType::T4;
            case MatType::T4: return MatType::T1;
            case MatType::T2: return MatType::T3;
            case MatType::T3: return MatType::T2;
        }
        return t;
    };
    TypeVector out = tv;
    for (int j = 0; j < f; ++j) {
        MatType t = tv.at_pos(j);
        if (swap_at[static_cast<size_t>(j)]) t = row_swapped(t);
        if (swap_at[static_cast<size_t>((j + 1) % f)]) t = col_swapped(t);
        out.t[static_cast<size_t>(j)] = t;
    }
    return out;
}

SymPoly SymPoly::constant(long long c) {
    SymPoly s;
    if (c != 0) s.coeff[0] = c;
    return s;
}

SymPoly SymPoly::variable(int i, long long c) {
    SymPoly s;
    if (c != 0) s.coeff[1u << i] = c;
    return s;
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
    SymPoly r = *this;
    for (const auto& [m, c] : o.coeff) {
        long long& slot = r.coeff[m];
        slot += c;
        if (slot == 0) r.coeff.erase(m);
    }
    return r;
}

SymPoly SymPoly::operator*(const SymPoly& o) const {
    SymPoly r;
    for (const auto& [m1, c1] : coeff)
        for (const auto& [m2, c2] : o.coeff) {
            __int128 prod = static_cast<__int128>(c1) * c2;
            if (prod > (static_cast<__int128>(1) << 62) || prod < -(static_cast<__int128>(1) << 62))
                throw std::overflow_error("SymPoly: coefficient overflow");
            std::uint32_t m = m1 | m2;
            long long& slot = r.coeff[m];
            slot += static_cast<long long>(prod);
            if (slot == 0) r.coeff.erase(m);
        }
    return r;
}

bool SymPoly::is_scalar() const {
    for (const auto& [m, c] : coeff)
        if (m != 0 && c != 0) return false;
    return true;
}

std::string SymPoly::str() const {
    if (coeff.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : coeff) {
        if (!first) os << " + ";
        os << c;
        for (int i = 0; i < 32; ++i)
            if (m & (1u << i)) os << "*X" << i;
        first = false;
    }
    return os.str();
}

bool all_weights_p(long p, const std::vector<long>& weights) {
    return !weights.empty() &&
           std::all_of(weights.begin(), weights.end(), [&](long k) { return k == p; });
}

int alpha_bound_exponent(long p, const std::vector<long>& weights) {
    long k = *std::max_element(weights.begin(), weights.end());
    if (k >= p && !all_weights_p(p, weights)) return static_cast<int>((k - 1) / (p - 1));
    return 0;
}

int z_constant_exponent(long p, int ell) { return (ell - 1) / static_cast<int>(p - 1); }

namespace {

long long pow_ll_checked(long p, long e) {
    long long r = 1;
    for (long i = 0; i < e; ++i) {
        if (r > (1LL << 60) / p) throw std::overflow_error("symbolic power overflow");
        r *= p;
    }
    return r;
}

}  // namespace

SymbolicQf symbolic_Qf(long p, const TypeVector& tv, const std::vector<long>& weights,
                       const std::vector<long long>& units) {
    int f = tv.f();
    if (static_cast<int>(weights.size()) != f)
        throw std::invalid_argument("symbolic_Qf: weights size must equal f");
    long kmax = *std::max_element(weights.begin(), weights.end());
    long long z0 = all_weights_p(p, weights)
                       ? 1
                       : pow_ll_checked(p, z_constant_exponent(p, static_cast<int>(kmax)));

    auto entry_matrix = [&](int label) -> SymPoly2x2 {
        long k = weights[static_cast<size_t>(label)];
        long long c = units.empty() ? 1 : units[static_cast<size_t>(label)];
        long long qk = c * pow_ll_checked(p, k);
        SymPoly xz = SymPoly::variable(label, z0);
        SymPoly2x2 m;
        switch (tv.at_label(label)) {
            case MatType::T1:
                m.a = SymPoly::constant(qk);
                m.c = xz;
                m.d = SymPoly::constant(1);
                break;
            case MatType::T2:
                m.a = xz;
                m.b = SymPoly::constant(1);
                m.c = SymPoly::constant(qk);
                break;
            case MatType::T3:
                m.a = SymPoly::constant(1);
                m.b = xz;
                m.d = SymPoly::constant(qk);
                break;
            case MatType::T4:
                m.b = SymPoly::constant(qk);
                m.c = SymPoly::constant(1);
                m.d = xz;
                break;
        }
        return m;
    };

    auto mul = [](const SymPoly2x2& A, const SymPoly2x2& B) {
        SymPoly2x2 r;
        r.a = A.a * B.a + A.b * B.c;
        r.b = A.a * B.b + A.b * B.d;
        r.c = A.c * B.a + A.d * B.c;
        r.d = A.c * B.b + A.d * B.d;
        return r;
    };

    SymbolicQf out;
    out.qf = entry_matrix((0 + 1) % f);
    for (int j = 1; j < f; ++j) out.qf = mul(out.qf, entry_matrix((j + 1) % f));
    out.trace_is_scalar = out.qf.trace().is_scalar();
    return out;
}

FamilySpec FamilySpec::make(const PrecisionBudget& bud, std::vector<long> weights, TypeVector tv,
                            std::vector<long long> alpha, std::vector<long long> units, int ell) {
    FamilySpec s;
    s.bud = bud;
    s.f = static_cast<int>(weights.size());
    if (s.f != tv.f()) throw std::invalid_argument("FamilySpec: weights/types size mismatch");
    s.weights = std::move(weights);
    if (*std::max_element(s.weights.begin(), s.weights.end()) <= 0)
        throw std::invalid_argument("FamilySpec: at least one weight must be positive");
    s.tv = std::move(tv);
    s.units = units.empty() ? std::vector<long long>(static_cast<size_t>(s.f), 1) : std::move(units);
    s.alpha = alpha.empty() ? std::vector<long long>(static_cast<size_t>(s.f), 0) : std::move(alpha);
    if (static_cast<int>(s.units.size()) != s.f || static_cast<int>(s.alpha.size()) != s.f)
        throw std::invalid_argument("FamilySpec: units/alpha size mismatch");
    for (long long a : s.alpha)
        if (a % bud.p != 0)
            throw BoundViolationError("FamilySpec: evaluation points must lie in the maximal ideal");
    for (long long c : s.units)
        if (c % bud.p == 0) throw NotAUnitError("FamilySpec: units must be prime to p");
    s.ell = ell > 0 ? ell : static_cast<int>(s.max_weight());
    if (s.ell < s.max_weight()) throw std::invalid_argument("FamilySpec: ell must be >= max weight");
    return s;
}

long FamilySpec::max_weight() const { return *std::max_element(weights.begin(), weights.end()); }

namespace {

enum class Branch { X, Y };

struct Step {
    int twist;
    Branch next;
};

Step chain_step(MatType t, Branch cur, long k) {
    if (cur == Branch::X) {
        switch (t) {
            case MatType::T1: return {static_cast<int>(k), Branch::X};
            case MatType::T2: return {0, Branch::Y};
            case MatType::T3: return {0, Branch::X};
            case MatType::T4: return {static_cast<int>(k), Branch::Y};
        }
    } else {
        switch (t) {
            case MatType::T1: return {0, Branch::Y};
            case MatType::T2: return {static_cast<int>(k), Branch::X};
            case MatType::T3: return {static_cast<int>(k), Branch::Y};
            case MatType::T4: return {0, Branch::X};
        }
    }
    return {0, cur};
}

PiSeries lambda_power_product(const PiSeries& lam, const std::vector<int>& exps) {
    PiSeries acc = PiSeries::one(lam.bud);
    PiSeries rot = lam;
    for (size_t j = 0; j < exps.size(); ++j) {
        if (exps[j] > 0) acc = acc * rot.pow_u(static_cast<unsigned>(exps[j]));
        if (j + 1 < exps.size()) rot = frobenius(rot);
    }
    return acc;
}

}  // namespace

PiSeries GeneratorChain::x_of(int label, const GammaElement& g) const {
    if (g.is_identity()) return PiSeries::one(gen_a[0].bud);
    const PiSeries& a = gen_a[static_cast<size_t>(label)];
    return a.divide_unit(gamma_act(a, g)).certify_integral();
}

PiSeries GeneratorChain::y_of(int label, const GammaElement& g) const {
    if (g.is_identity()) return PiSeries::one(gen_b[0].bud);
    const PiSeries& b = gen_b[static_cast<size_t>(label)];
    return b.divide_unit(gamma_act(b, g)).certify_integral();
}

GeneratorChain build_generator_chain(const TypeVector& tv, const std::vector<long>& weights,
                                     const PrecisionBudget& bud) {
    int f = tv.f();
    if (static_cast<int>(weights.size()) != f)
        throw std::invalid_argument("build_generator_chain: weights size mismatch");
    GeneratorChain ch;
    ch.f = f;
    ch.twist_x.assign(static_cast<size_t>(f), 0);
    ch.twist_y.assign(static_cast<size_t>(f), 0);

    Branch cx = Branch::X, cy = Branch::Y;
    for (int i = 1; i <= f; ++i) {
        long k = weights[static_cast<size_t>(i % f)];
        MatType t = tv.at_label(i % f);
        Step sx = chain_step(t, cx, k);
        ch.twist_x[static_cast<size_t>(i - 1)] = sx.twist;
        cx = sx.next;
        Step sy = chain_step(t, cy, k);
        ch.twist_y[static_cast<size_t>(i - 1)] = sy.twist;
        cy = sy.next;
    }
    ch.net_swap = (cx == Branch::Y);

    PiSeries a0 = PiSeries::one(bud), b0 = PiSeries::one(bud);
    if (!ch.net_swap) {
        PiSeries lam = lambda_f(f, bud);
        a0 = lambda_power_product(lam, ch.twist_x);
        b0 = lambda_power_product(lam, ch.twist_y);
    } else {
        PiSeries lam2 = lambda_f(2 * f, bud);
        std::vector<int> ex(static_cast<size_t>(2 * f), 0), ey(static_cast<size_t>(2 * f), 0);
        for (int j = 0; j < f; ++j) {
            ex[static_cast<size_t>(j)] = ch.twist_x[static_cast<size_t>(j)];
            ex[static_cast<size_t>(j + f)] = ch.twist_y[static_cast<size_t>(j)];
            ey[static_cast<size_t>(j)] = ch.twist_y[static_cast<size_t>(j)];
            ey[static_cast<size_t>(j + f)] = ch.twist_x[static_cast<size_t>(j)];
        }
        a0 = lambda_power_product(lam2, ex);
        b0 = lambda_power_product(lam2, ey);
    }

    ch.gen_a.assign(static_cast<size_t>(f), PiSeries::one(bud));
    ch.gen_b.assign(static_cast<size_t>(f), PiSeries::one(bud));
    ch.gen_a[0] = a0;
    ch.gen_b[0] = b0;

    PiSeries tq = q_series(bud).shift_scale(-1);
    tq.r_flag = true;
    PiSeries A = a0, B = b0;
    for (int i = f; i >= 1; --i) {
        long k = weights[static_cast<size_t>(i % f)];
        MatType t = tv.at_label(i % f);
        PiSeries twa = k > 0 ? tq.pow_u(static_cast<unsigned>(k)) : PiSeries::one(bud);
        PiSeries pA = frobenius(A), pB = frobenius(B);
        PiSeries An = A, Bn = B;
        switch (t) {
            case MatType::T1: An = twa * pA; Bn = pB; break;
            case MatType::T2: An = pB; Bn = twa * pA; break;
            case MatType::T3: An = pA; Bn = twa * pB; break;
            case MatType::T4: An = twa * pB; Bn = pA; break;
        }
        A = An;
        B = Bn;
        if (i - 1 >= 1) {
            ch.gen_a[static_cast<size_t>(i - 1)] = A;
            ch.gen_b[static_cast<size_t>(i - 1)] = B;
        }
    }
    // the closed forms solve the cycle, so walking all the way around must
    // return the seeds
    if ((A - a0).pi_order_mod(bud.M) < bud.N || (B - b0).pi_order_mod(bud.M) < bud.N)
        throw VerificationError("build_generator_chain: cycle consistency check failed");
    return ch;
}

std::vector<PiSeries> build_z_polynomials(const FamilySpec& spec, const GeneratorChain& chain,
                                          const std::vector<GammaElement>& gammas) {
    const PrecisionBudget& bud = spec.bud;
    int f = spec.f;
    bool allp = all_weights_p(bud.p, spec.weights);
    int mz = allp ? 0 : z_constant_exponent(bud.p, spec.ell);
    std::vector<PiSeries> zs;
    zs.reserve(static_cast<size_t>(f));
    for (int i = 0; i < f; ++i) {
        MatType t = spec.tv.at_label(i);
        bool use_ba = (t == MatType::T1 || t == MatType::T2);
        int pad = bud.denom_bound();
        PiSeries ratio = use_ba
                             ? chain.gen_b[static_cast<size_t>(i)].divide_unit(chain.gen_a[static_cast<size_t>(i)], pad)
                             : chain.gen_a[static_cast<size_t>(i)].divide_unit(chain.gen_b[static_cast<size_t>(i)], pad);
        if (mz > 0) ratio = ratio.shift_scale(mz);
        for (int j = spec.ell; j < bud.N; ++j) ratio.a[static_cast<size_t>(j)] = PadicScalar::zero(bud);
        PiSeries z;
        try {
            z = ratio.certify_integral();
        } catch (const VerificationError&) {
            throw IntegralityFailedError("build_z_polynomials: truncation has non-integral coefficients");
        }
        PadicScalar want = PadicScalar::one(bud).shift_p(mz);
        if (!(z.coeff_value(0) - want).is_zero_mod(bud.M))
            throw IntegralityFailedError("build_z_polynomials: wrong constant term");
        for (const GammaElement& g : gammas) {
            if (g.is_identity()) continue;
            PiSeries x = chain.x_of(i, g), y = chain.y_of(i, g);
            PiSeries delta = use_ba ? z * x - y * gamma_act(z, g) : z * y - x * gamma_act(z, g);
            int want_ord = std::min(spec.ell, bud.N);
            if (delta.pi_order_mod(bud.M) < want_ord)
                throw PropertyFailedError("build_z_polynomials: gamma congruence fails at pi^ell");
        }
        zs.push_back(std::move(z));
    }
    return zs;
}

SeriesMat2 SeriesMat2::zero(const PrecisionBudget& bud) {
    PiSeries z = PiSeries::zero(bud);
    return {z, z, z, z};
}

SeriesMat2 SeriesMat2::ident(const PrecisionBudget& bud) {
    SeriesMat2 m = zero(bud);
    m.a = PiSeries::one(bud);
    m.d = PiSeries::one(bud);
    return m;
}

SeriesMat2 SeriesMat2::operator*(const SeriesMat2& o) const {
    SeriesMat2 r = *this;
    r.a = a * o.a + b * o.c;
    r.b = a * o.b + b * o.d;
    r.c = c * o.a + d * o.c;
    r.d = c * o.b + d * o.d;
    return r;
}

SeriesMat2 SeriesMat2::operator+(const SeriesMat2& o) const {
    return {a + o.a, b + o.b, c + o.c, d + o.d};
}

SeriesMat2 SeriesMat2::operator-(const SeriesMat2& o) const {
    return {a - o.a, b - o.b, c - o.c, d - o.d};
}

SeriesMat2 SeriesMat2::map(const std::function<PiSeries(const PiSeries&)>& fn) const {
    return {fn(a), fn(b), fn(c), fn(d)};
}

PiSeries SeriesMat2::det() const { return a * d - b * c; }

SeriesMat2 SeriesMat2::adj() const { return {d, -b, -c, a}; }

int SeriesMat2::pi_order_mod(int m) const {
    return std::min(std::min(a.pi_order_mod(m), b.pi_order_mod(m)),
                    std::min(c.pi_order_mod(m), d.pi_order_mod(m)));
}

SeriesMat2Tau mat_frobenius(const SeriesMat2Tau& A) {
    SeriesMat2Tau r = A;
    size_t f = A.size();
    for (size_t j = 0; j < f; ++j)
        r[j] = A[(j + 1) % f].map([](const PiSeries& s) { return frobenius(s); });
    return r;
}

SeriesMat2Tau mat_gamma_act(const SeriesMat2Tau& A, const GammaElement& g) {
    SeriesMat2Tau r = A;
    for (auto& m : r) m = m.map([&](const PiSeries& s) { return gamma_act(s, g); });
    return r;
}

SeriesMat2Tau mat_mul(const SeriesMat2Tau& A, const SeriesMat2Tau& B) {
    SeriesMat2Tau r = A;
    for (size_t j = 0; j < A.size(); ++j) r[j] = A[j] * B[j];
    return r;
}

SeriesMat2Tau mat_sub(const SeriesMat2Tau& A, const SeriesMat2Tau& B) {
    SeriesMat2Tau r = A;
    for (size_t j = 0; j < A.size(); ++j) r[j] = A[j] - B[j];
    return r;
}

int mat_pi_order(const SeriesMat2Tau& A, int m) {
    int ord = A.empty() ? 0 : A[0].a.bud.N;
    for (const auto& x : A) ord = std::min(ord, x.pi_order_mod(m));
    return ord;
}

SeriesMat2Tau double_restrict(const SeriesMat2Tau& A, int d) {
    if (d < 1) throw std::invalid_argument("double_restrict: d >= 1 required");
    SeriesMat2Tau r;
    r.reserve(A.size() * static_cast<size_t>(d));
    for (int t = 0; t < d; ++t) r.insert(r.end(), A.begin(), A.end());
    return r;
}

Mat2Tau double_restrict(const Mat2Tau& A, int d) {
    if (d < 1) throw std::invalid_argument("double_restrict: d >= 1 required");
    Mat2Tau r;
    r.reserve(A.size() * static_cast<size_t>(d));
    for (int t = 0; t < d; ++t) r.insert(r.end(), A.begin(), A.end());
    return r;
}

FamilyBuild build_Pi(const FamilySpec& spec) {
    TypeClass cls = class_membership(spec.tv);
    if (cls == TypeClass::C1 || cls == TypeClass::C2)
        throw ClassViolationError("build_Pi: type vector lies in C1 or C2");

    FamilyBuild fb;
    fb.spec = spec;
    fb.m_bound = alpha_bound_exponent(spec.bud.p, spec.weights);
    fb.chain = build_generator_chain(spec.tv, spec.weights, spec.bud);
    std::vector<GammaElement> gammas = {GammaElement{1 + spec.bud.p},
                                        GammaElement{(1 + spec.bud.p) * (1 + spec.bud.p)}};
    fb.z = build_z_polynomials(spec, fb.chain, gammas);

    const PrecisionBudget& bud = spec.bud;
    PiSeries q = q_series(bud);
    fb.Pi.assign(static_cast<size_t>(spec.f), SeriesMat2::zero(bud));
    FiltMod2 D;
    D.bud = bud;
    D.f = spec.f;
    D.weights = spec.weights;
    D.form = FrobForm::General;
    D.frob.assign(static_cast<size_t>(spec.f), Mat2::zero(bud));
    D.fx.assign(static_cast<size_t>(spec.f), PadicScalar::zero(bud));
    D.fy.assign(static_cast<size_t>(spec.f), PadicScalar::zero(bud));

    for (int j = 0; j < spec.f; ++j) {
        int i = (j + 1) % spec.f;  // label of the matrix at position j
        long k = spec.weights[static_cast<size_t>(i)];
        PiSeries qk = (k > 0 ? q.pow_u(static_cast<unsigned>(k)) : PiSeries::one(bud))
                          .mul_int(spec.units[static_cast<size_t>(i)]);
        PiSeries xz = frobenius(fb.z[static_cast<size_t>(i)]).mul_int(spec.alpha[static_cast<size_t>(i)]);
        PiSeries one = PiSeries::one(bud), zerov = PiSeries::zero(bud);
        SeriesMat2 m = SeriesMat2::zero(bud);
        switch (spec.tv.at_label(i)) {
            case MatType::T1: m = {qk, zerov, xz, one}; break;
            case MatType::T2: m = {xz, one, qk, zerov}; break;
            case MatType::T3: m = {one, xz, zerov, qk}; break;
            case MatType::T4: m = {zerov, qk, one, xz}; break;
        }
        fb.Pi[static_cast<size_t>(j)] = m;
        D.frob[static_cast<size_t>(j)] = Mat2{m.a.coeff_value(0), m.b.coeff_value(0),
                                              m.c.coeff_value(0), m.d.coeff_value(0)};
    }
    for (int i = 0; i < spec.f; ++i) {
        PadicScalar alpha_i = fb.z[static_cast<size_t>(i)].coeff_value(0).mul_int(spec.alpha[static_cast<size_t>(i)]);
        MatType t = spec.tv.at_label(i);
        if (t == MatType::T1 || t == MatType::T2) {
            D.fx[static_cast<size_t>(i)] = PadicScalar::one(bud);
            D.fy[static_cast<size_t>(i)] = -alpha_i;
        } else {
            D.fx[static_cast<size_t>(i)] = -alpha_i;
            D.fy[static_cast<size_t>(i)] = PadicScalar::one(bud);
        }
    }
    fb.D = std::move(D);
    return fb;
}

namespace {

struct ExpEntry {
    bool nz = false;
    long e = 0;
};

struct ExpMat {
    ExpEntry m[2][2];
};

ExpMat exp_mul(const ExpMat& A, const ExpMat& B) {
    ExpMat r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                if (!A.m[i][k].nz || !B.m[k][j].nz) continue;
                if (r.m[i][j].nz)
                    throw ParityViolationError("diagonalize_doubled: non-monomial product");
                r.m[i][j] = {true, A.m[i][k].e + B.m[k][j].e};
            }
        }
    return r;
}

ExpMat exp_of_type(MatType t, long k) {
    ExpMat r;
    switch (t) {
        case MatType::T1: r.m[0][0] = {true, k}; r.m[1][1] = {true, 0}; break;
        case MatType::T2: r.m[0][1] = {true, 0}; r.m[1][0] = {true, k}; break;
        case MatType::T3: r.m[0][0] = {true, 0}; r.m[1][1] = {true, k}; break;
        case MatType::T4: r.m[0][1] = {true, k}; r.m[1][0] = {true, 0}; break;
    }
    return r;
}

ExpMat exp_q(bool swap) {
    ExpMat r;
    if (swap) {
        r.m[0][1] = {true, 0};
        r.m[1][0] = {true, 0};
    } else {
        r.m[0][0] = {true, 0};
        r.m[1][1] = {true, 0};
    }
    return r;
}

}  // namespace

DoubledDiag diagonalize_doubled(const TypeVector& tv, const std::vector<long>& weights) {
    int f = tv.f();
    if (static_cast<int>(weights.size()) != f)
        throw std::invalid_argument("diagonalize_doubled: weights size mismatch");
    int n = 2 * f;
    auto type_at = [&](int pos) { return tv.at_pos(pos % f); };
    auto weight_label = [&](int label) { return weights[static_cast<size_t>(label % f)]; };

    DoubledDiag out;
    out.qseq.assign(static_cast<size_t>(n), QTag::Id);
    int evens = 0;
    for (int r = 1; r < n; ++r) {
        if (even_type(type_at(r - 1))) ++evens;
        out.qseq[static_cast<size_t>(r)] = (evens % 2 == 0) ? QTag::Id : QTag::Swap;
    }

    out.lambda_exps.assign(static_cast<size_t>(n), 0);
    out.mu_exps.assign(static_cast<size_t>(n), 0);
    for (int r = 0; r < n; ++r) {
        ExpMat m = exp_mul(
            exp_mul(exp_q(out.qseq[static_cast<size_t>(r)] == QTag::Swap),
                    exp_of_type(type_at(r), weight_label(r + 1))),
            exp_q(out.qseq[static_cast<size_t>((r + 1) % n)] == QTag::Swap));
        if (!m.m[0][0].nz || !m.m[1][1].nz || m.m[0][1].nz || m.m[1][0].nz)
            throw ParityViolationError("diagonalize_doubled: conjugated matrix is not diagonal");
        out.lambda_exps[static_cast<size_t>(r)] = m.m[0][0].e;
        out.mu_exps[static_cast<size_t>(r)] = m.m[1][1].e;
    }

    out.zvec.assign(static_cast<size_t>(n), 0);
    out.ell_out.assign(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        MatType ti = type_at(((i - 1) % n + n) % n);  // matrix with label i
        int xi = (ti == MatType::T1 || ti == MatType::T2) ? 1 : 0;
        int q11 = (out.qseq[static_cast<size_t>(i)] == QTag::Id) ? 1 : 0;
        out.zvec[static_cast<size_t>(i)] = (xi == q11) ? 1 : 0;
        out.ell_out[static_cast<size_t>(i)] = out.zvec[static_cast<size_t>(i)] ? weight_label(i) : 0;
    }
    return out;
}

FiltMod2 family13_normal_form(const PrecisionBudget& bud, long k0, long k1, const PadicScalar& a0,
                              const PadicScalar& a1) {
    if (k0 <= 0 || k1 <= 0)
        throw std::invalid_argument("family13_normal_form: both weights must be positive");
    auto pk = [&](long e) { return PadicScalar::one(bud).shift_p(static_cast<int>(e)); };
    PadicScalar one = PadicScalar::one(bud), zero = PadicScalar::zero(bud);

    FiltMod2 D;
    D.bud = bud;
    D.f = 2;
    D.weights = {k0, k1};
    D.form = FrobForm::Standard;
    D.frob.assign(2, Mat2::zero(bud));
    D.fx.assign(2, zero);
    D.fy.assign(2, zero);

    bool z0 = a0.is_zero(), z1 = a1.is_zero();
    if (z0 && z1) {
        D.frob[0] = {pk(k1), zero, zero, one};
        D.frob[1] = {one, zero, zero, pk(k0)};
        D.fx = {zero, one};
        D.fy = {one, zero};
        return D;
    }
    if (z0 && !z1) {
        D.frob[0] = {one, zero, zero, one};
        D.frob[1] = {pk(k0), zero, zero, pk(k1)};
        D.fx = {one, one};
        D.fy = {zero, one};
        return D;
    }
    if (!z0 && z1) {
        D.frob[0] = {one, zero, zero, one};
        D.frob[1] = {pk(k0), zero, zero, pk(k1)};
        D.fx = {one, zero};
        D.fy = {one, one};
        return D;
    }
    // both coordinates nonzero: diagonalize the f-th Frobenius power
    PadicScalar T = pk(k0) + pk(k1) + a0 * a1;
    PadicScalar det = pk(k0 + k1);
    auto roots = split_quadratic(T, det);
    if (!roots)
        throw std::invalid_argument("family13_normal_form: eigenvalues not rational at this budget");
    D.frob[0] = {one, zero, zero, one};
    D.frob[1] = {roots->first, zero, zero, roots->second};
    D.fx = {one, one};
    D.fy = {one, one};
    return D;
}

}  // namespace wach
