#include "wach/gamma_solver.hpp"

#include <algorithm>

namespace wach {

namespace {

bool even_sign(MatType t) { return even_type(t); }  // det = -(unit) q^k for even shapes

Mat2 mat2_add(const Mat2& A, const Mat2& B) { return A + B; }

// p^{shift} * Q * B * adj(Q) * unit^{-1} with det(Q) = unit * p^{vdet}
Mat2 conjugate_scaled(const Mat2& Q, const Mat2& B, const PadicScalar& unit_inv, int shift) {
    Mat2 r = (Q * B) * Q.adj();
    r = r.mul_scalar(unit_inv);
    r.a = r.a.shift_p(shift);
    r.b = r.b.shift_p(shift);
    r.c = r.c.shift_p(shift);
    r.d = r.d.shift_p(shift);
    return r;
}

}  // namespace

SeriesMat2Tau gamma_pi_inverse(const FamilyBuild& fb, const GammaElement& g) {
    const PrecisionBudget& bud = fb.spec.bud;
    int f = fb.spec.f;
    PiSeries gq_over_p = gamma_act(q_series(bud), g).shift_scale(-1);
    gq_over_p.r_flag = true;
    PiSeries gq_inv = gq_over_p.invert_unit();  // ((gamma q)/p)^{-1}

    SeriesMat2Tau inv(static_cast<size_t>(f), SeriesMat2::zero(bud));
    for (int j = 0; j < f; ++j) {
        int i = (j + 1) % f;  // label of the matrix at position j
        long k = fb.spec.weights[static_cast<size_t>(i)];
        MatType t = fb.spec.tv.at_label(i);
        long long c = fb.spec.units[static_cast<size_t>(i)];
        // det gamma(Pi_j) = (+-) c (gamma q)^{k}
        PiSeries det_inv = (k > 0 ? gq_inv.pow_u(static_cast<unsigned>(k)) : PiSeries::one(bud))
                               .shift_scale(static_cast<int>(-k));
        PadicScalar cinv = PadicScalar::from_int(bud, c).unit_inverse();
        if (even_sign(t)) cinv = -cinv;
        det_inv = det_inv.mul_scalar(cinv);
        SeriesMat2 gp = fb.Pi[static_cast<size_t>(j)].map([&](const PiSeries& s) { return gamma_act(s, g); });
        SeriesMat2 adj = gp.adj();
        inv[static_cast<size_t>(j)] = adj.map([&](const PiSeries& s) { return s * det_inv; });
    }
    return inv;
}

SeriesMat2Tau commutation_residual(const FamilyBuild& fb, const SeriesMat2Tau& G,
                                   const GammaElement& g) {
    SeriesMat2Tau rhs = mat_mul(mat_mul(fb.Pi, mat_frobenius(G)), gamma_pi_inverse(fb, g));
    return mat_sub(G, rhs);
}

GammaMatrix initial_G(const FamilyBuild& fb, const GammaElement& g) {
    const PrecisionBudget& bud = fb.spec.bud;
    int f = fb.spec.f;
    GammaMatrix gm;
    gm.g = g;
    gm.mat.assign(static_cast<size_t>(f), SeriesMat2::zero(bud));
    for (int j = 0; j < f; ++j) {
        SeriesMat2 m = SeriesMat2::zero(bud);
        m.a = fb.chain.x_of(j, g);
        m.d = fb.chain.y_of(j, g);
        gm.mat[static_cast<size_t>(j)] = m;
    }
    int ord = mat_pi_order(commutation_residual(fb, gm.mat, g), bud.M);
    int want = std::min(fb.spec.ell, bud.N);
    if (ord < want)
        throw PropertyFailedError("initial_G: residual order " + std::to_string(ord) +
                                  " below ell = " + std::to_string(fb.spec.ell));
    gm.order = ord;
    return gm;
}

bool operator_excluded(const FamilySpec& spec) {
    if (spec.ell != spec.max_weight()) return false;
    bool all_equal = std::all_of(spec.weights.begin(), spec.weights.end(),
                                 [&](long k) { return k == spec.weights[0]; });
    if (!all_equal) return false;
    TypeClass c = class_membership(spec.tv);
    return c == TypeClass::C1 || c == TypeClass::C2;
}

Mat2 solve_operator(const Mat2& Qf, const std::vector<long>& weights, const Mat2& target, int s,
                    int f) {
    PadicScalar det = Qf.det();
    if (det.is_zero()) throw NotSurjectiveError("solve_operator: singular product matrix");
    int vdet = det.val_raw();
    long long ksum = 0;
    for (long k : weights) ksum += k;
    if (vdet != ksum)
        throw std::invalid_argument("solve_operator: det valuation does not match the weights");
    long long shift = static_cast<long long>(f) * (s - 1) - vdet;
    if (shift < 0) throw std::invalid_argument("solve_operator: s too small for the weights");
    PadicScalar unit_inv = det.shift_p(-vdet).unit_inverse();
    int W = target.a.working();
    if (shift >= W) return target;  // the operator is the identity at storage depth

    Mat2 X = target;
    int cap = 4 * W + 16;
    for (int it = 0; it < cap; ++it) {
        Mat2 nxt = mat2_add(target, conjugate_scaled(Qf, X, unit_inv, static_cast<int>(shift)));
        bool same = (nxt.a == X.a) && (nxt.b == X.b) && (nxt.c == X.c) && (nxt.d == X.d);
        X = nxt;
        if (same) return X;
    }
    throw NotSurjectiveError("solve_operator: iteration failed to stabilize");
}

GammaMatrix refine_G(const FamilyBuild& fb, const GammaMatrix& prev) {
    const PrecisionBudget& bud = fb.spec.bud;
    int f = fb.spec.f;
    SeriesMat2Tau resid = commutation_residual(fb, prev.mat, prev.g);
    int ord = mat_pi_order(resid, bud.M);
    if (ord >= bud.N) {
        GammaMatrix done = prev;
        done.order = bud.N;
        return done;
    }
    int s = ord + 1;  // correct at pi^{s-1}

    // constant coefficient matrices of the residual at pi^{s-1}, by position
    std::vector<Mat2> Rbar(static_cast<size_t>(f), Mat2::zero(bud));
    for (int j = 0; j < f; ++j) {
        const SeriesMat2& m = resid[static_cast<size_t>(j)];
        Rbar[static_cast<size_t>(j)] = Mat2{m.a.coeff_value(s - 1), m.b.coeff_value(s - 1),
                                            m.c.coeff_value(s - 1), m.d.coeff_value(s - 1)};
    }

    // right-hand side of the composed equation for the position-0 unknown:
    // A = -sum_j p^{j(s-1)} Q_j Rbar_j Q_j^{-1}, Q_j = P_1 ... P_j
    Mat2 A = Mat2::zero(bud);
    Mat2 Qj = Mat2::ident(bud);
    for (int j = 0; j < f; ++j) {
        if (j > 0) Qj = Qj * fb.D.frob[static_cast<size_t>(j - 1)];
        Mat2 term;
        if (j == 0) {
            term = Rbar[0];
        } else {
            PadicScalar det = Qj.det();
            int vdet = det.val_raw();
            PadicScalar unit_inv = det.shift_p(-vdet).unit_inverse();
            long long shift = static_cast<long long>(j) * (s - 1) - vdet;
            if (shift >= bud.W) continue;
            term = conjugate_scaled(Qj, Rbar[static_cast<size_t>(j)], unit_inv, static_cast<int>(shift));
        }
        A = A - term;
    }

    Mat2 Qf = phi_power_f(fb.D.frob)[0];
    std::vector<Mat2> H(static_cast<size_t>(f), Mat2::zero(bud));
    H[0] = solve_operator(Qf, fb.spec.weights, A, s, f);
    for (int j = f - 1; j >= 1; --j) {
        const Mat2& P = fb.D.frob[static_cast<size_t>(j)];  // label j+1
        PadicScalar det = P.det();
        int vdet = det.val_raw();
        PadicScalar unit_inv = det.shift_p(-vdet).unit_inverse();
        long long shift = static_cast<long long>(s - 1) - vdet;
        Mat2 prop = Mat2::zero(bud);
        if (shift < bud.W)
            prop = conjugate_scaled(P, H[static_cast<size_t>((j + 1) % f)], unit_inv,
                                    static_cast<int>(shift));
        H[static_cast<size_t>(j)] = prop - Rbar[static_cast<size_t>(j)];
    }

    GammaMatrix next = prev;
    for (int j = 0; j < f; ++j) {
        PiSeries mono = PiSeries::zero(bud);
        mono.a[static_cast<size_t>(s - 1)] = PadicScalar::one(bud);
        mono.r_flag = true;
        SeriesMat2 delta = SeriesMat2::zero(bud);
        delta.a = mono.mul_scalar(H[static_cast<size_t>(j)].a);
        delta.b = mono.mul_scalar(H[static_cast<size_t>(j)].b);
        delta.c = mono.mul_scalar(H[static_cast<size_t>(j)].c);
        delta.d = mono.mul_scalar(H[static_cast<size_t>(j)].d);
        next.mat[static_cast<size_t>(j)] = next.mat[static_cast<size_t>(j)] + delta;
    }
    int new_ord = mat_pi_order(commutation_residual(fb, next.mat, next.g), bud.M);
    if (new_ord <= ord)
        throw StalledResidualError("refine_G: residual order did not increase (" +
                                   std::to_string(ord) + " -> " + std::to_string(new_ord) + ")");
    next.order = new_ord;
    return next;
}

GammaMatrix refine_to_budget(const FamilyBuild& fb, GammaMatrix g) {
    const PrecisionBudget& bud = fb.spec.bud;
    while (g.order < bud.N) g = refine_G(fb, g);
    return g;
}

GammaMatrix solve_gamma(const FamilyBuild& fb, const GammaElement& g) {
    if (operator_excluded(fb.spec))
        throw NotSurjectiveError("solve_gamma: excluded configuration (ell = k, equal weights, C1/C2)");
    return refine_to_budget(fb, initial_G(fb, g));
}

VerifyReport verify(const FamilyBuild& fb, const GammaMatrix& G1, const GammaMatrix& G2,
                    const GammaMatrix& G12) {
    if (G12.g.a != G1.g.a * G2.g.a)
        throw std::invalid_argument("verify: chi(g12) must equal chi(g1) chi(g2)");
    const PrecisionBudget& bud = fb.spec.bud;
    VerifyReport r;
    r.comm_order_1 = mat_pi_order(commutation_residual(fb, G1.mat, G1.g), bud.M);
    r.comm_order_2 = mat_pi_order(commutation_residual(fb, G2.mat, G2.g), bud.M);
    r.comm_order_12 = mat_pi_order(commutation_residual(fb, G12.mat, G12.g), bud.M);
    SeriesMat2Tau cocycle = mat_sub(G12.mat, mat_mul(G1.mat, mat_gamma_act(G2.mat, G1.g)));
    r.cocycle_order = mat_pi_order(cocycle, bud.M);
    r.pass = r.comm_order_1 >= bud.N && r.comm_order_2 >= bud.N && r.comm_order_12 >= bud.N &&
             r.cocycle_order >= bud.N;
    return r;
}

}  // namespace wach
