#include "wach/filtered_phi.hpp"

#include <algorithm>
#include <map>

namespace wach {

Mat2 Mat2::zero(const PrecisionBudget& bud) {
    PadicScalar z = PadicScalar::zero(bud);
    return {z, z, z, z};
}

Mat2 Mat2::ident(const PrecisionBudget& bud) {
    Mat2 m = zero(bud);
    m.a = PadicScalar::one(bud);
    m.d = PadicScalar::one(bud);
    return m;
}

Mat2 Mat2::operator*(const Mat2& o) const {
    Mat2 r = *this;
    r.a = a * o.a + b * o.c;
    r.b = a * o.b + b * o.d;
    r.c = c * o.a + d * o.c;
    r.d = c * o.b + d * o.d;
    return r;
}

Mat2 Mat2::operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
Mat2 Mat2::operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }

Mat2 Mat2::adj() const { return {d, -b, -c, a}; }
PadicScalar Mat2::det() const { return a * d - b * c; }
PadicScalar Mat2::tr() const { return a + d; }
Mat2 Mat2::mul_scalar(const PadicScalar& s) const { return {a * s, b * s, c * s, d * s}; }
bool Mat2::is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }

Mat2Tau mat_phi_rot(const Mat2Tau& A) {
    Mat2Tau r = A;
    size_t f = A.size();
    for (size_t j = 0; j < f; ++j) r[j] = A[(j + 1) % f];
    return r;
}

Mat2Tau mat_mul(const Mat2Tau& A, const Mat2Tau& B) {
    Mat2Tau r = A;
    for (size_t j = 0; j < A.size(); ++j) r[j] = A[j] * B[j];
    return r;
}

Mat2Tau phi_power_f(const Mat2Tau& A) {
    Mat2Tau acc = A;
    Mat2Tau rot = A;
    for (size_t i = 1; i < A.size(); ++i) {
        rot = mat_phi_rot(rot);
        acc = mat_mul(acc, rot);
    }
    return acc;
}

long long tuple_nm_val(const std::vector<PadicScalar>& v, int M_cap) {
    long long total = 0;
    for (const auto& x : v) {
        if (x.is_zero()) return kValInf;
        int vx = x.val_raw();
        if (vx >= M_cap) return kValInf;
        total += vx;
    }
    return total;
}

std::string to_string(FrobForm f) {
    switch (f) {
        case FrobForm::Standard: return "standard";
        case FrobForm::Triangular: return "triangular";
        case FrobForm::NonSemisimple: return "non-semisimple";
        case FrobForm::Scalar: return "scalar";
        case FrobForm::General: return "general";
    }
    return "?";
}

std::string to_string(ReducibilityKind k) {
    switch (k) {
        case ReducibilityKind::Irreducible: return "irreducible";
        case ReducibilityKind::SplitReducible: return "split-reducible";
        case ReducibilityKind::NonSplitReducible: return "non-split-reducible";
    }
    return "?";
}

namespace {

std::vector<PadicScalar> diag_entries(const FiltMod2& D, bool upper) {
    std::vector<PadicScalar> v;
    v.reserve(D.frob.size());
    for (const auto& m : D.frob) v.push_back(upper ? m.a : m.d);
    return v;
}

long long hodge_over(const FiltMod2& D, const std::vector<PadicScalar>& dir_zero) {
    long long h = 0;
    for (size_t i = 0; i < dir_zero.size(); ++i)
        if (dir_zero[i].is_zero()) h += D.weights[i];
    return h;
}

long long weight_sum(const FiltMod2& D) {
    long long s = 0;
    for (long k : D.weights) s += k;
    return s;
}

void validate(const FiltMod2& D) {
    if (static_cast<int>(D.frob.size()) != D.f || static_cast<int>(D.weights.size()) != D.f ||
        static_cast<int>(D.fx.size()) != D.f || static_cast<int>(D.fy.size()) != D.f)
        throw std::invalid_argument("FiltMod2: inconsistent sizes");
    for (long k : D.weights)
        if (k < 0) throw std::invalid_argument("FiltMod2: weights must be nonnegative");
    for (int i = 0; i < D.f; ++i)
        if (D.fx[static_cast<size_t>(i)].is_zero() && D.fy[static_cast<size_t>(i)].is_zero())
            throw std::invalid_argument("FiltMod2: (x_i, y_i) must not both vanish");
}

// Hodge number of the projective line direction (u : v) against the
// filtration: sum of k_i over embeddings where (u_i, v_i) is parallel to
// (x_i, y_i)
long long hodge_of_line(const FiltMod2& D, const std::vector<std::pair<PadicScalar, PadicScalar>>& w) {
    long long h = 0;
    for (int i = 0; i < D.f; ++i) {
        const auto& [u, v] = w[static_cast<size_t>(i)];
        PadicScalar crossed = u * D.fy[static_cast<size_t>(i)] - v * D.fx[static_cast<size_t>(i)];
        if (crossed.is_zero()) h += D.weights[static_cast<size_t>(i)];
    }
    return h;
}

// canonical key of the projective point (x : y): chart 1 holds the points
// with v(x) <= v(y) keyed by y/x, chart 2 the rest keyed by x/y
std::array<std::uint64_t, 6> projective_key(const PadicScalar& x, const PadicScalar& y) {
    std::array<std::uint64_t, 6> key{};
    if (x.is_zero()) {
        key[0] = 0;
        return key;
    }
    if (y.is_zero()) {
        key[0] = 1;
        return key;
    }
    int vx = x.val_raw(), vy = y.val_raw();
    PadicScalar ratio = (vx <= vy) ? y.shift_p(-vx) * x.shift_p(-vx).unit_inverse()
                                   : x.shift_p(-vy) * y.shift_p(-vy).unit_inverse();
    key[0] = (vx <= vy) ? 2 : 3;
    for (int i = 0; i < x.degree(); ++i) key[static_cast<size_t>(1 + i)] = ratio.coord(i);
    return key;
}

// rational phi-stable lines of a general Frobenius matrix: eigenlines of the
// f-fold product at the distinguished component, transported by adjugates
struct StableLine {
    std::vector<std::pair<PadicScalar, PadicScalar>> vecs;  // per position
    long long newton = 0;                                   // v_p of the eigenvalue
};

std::vector<StableLine> rational_stable_lines(const FiltMod2& D) {
    std::vector<StableLine> lines;
    Mat2 B = phi_power_f(D.frob)[0];
    auto roots = split_quadratic(B.tr(), B.det());
    if (!roots) return lines;
    for (const PadicScalar& ev : {roots->first, roots->second}) {
        // eigenvector of B for ev: a column of adj(B - ev)
        Mat2 Bm = B;
        Bm.a = Bm.a - ev;
        Bm.d = Bm.d - ev;
        Mat2 ad = Bm.adj();
        std::pair<PadicScalar, PadicScalar> w0{ad.a, ad.c};
        if (w0.first.is_zero() && w0.second.is_zero()) w0 = {ad.b, ad.d};
        if (w0.first.is_zero() && w0.second.is_zero()) continue;  // scalar-ish, no isolated line
        StableLine L;
        L.vecs.assign(static_cast<size_t>(D.f), w0);
        for (int j = 1; j < D.f; ++j) {
            const auto& prev = L.vecs[static_cast<size_t>(j - 1)];
            Mat2 adjM = D.frob[static_cast<size_t>(j - 1)].adj();
            L.vecs[static_cast<size_t>(j)] = {adjM.a * prev.first + adjM.b * prev.second,
                                              adjM.c * prev.first + adjM.d * prev.second};
        }
        L.newton = ev.is_zero() ? kValInf : ev.val_raw();
        lines.push_back(std::move(L));
    }
    return lines;
}

}  // namespace

std::optional<std::pair<PadicScalar, PadicScalar>> split_quadratic(const PadicScalar& T,
                                                                   const PadicScalar& D) {
    if (T.degree() != 1) return std::nullopt;
    PrecisionBudget bud;
    bud.p = T.p();
    bud.W = T.working();
    bud.d = 1;
    if (D.is_zero()) return std::nullopt;
    long long vT = T.is_zero() ? kValInf : T.val_raw();
    long long vD = D.val_raw();
    auto hensel = [&](const PadicScalar& t, const PadicScalar& dd, int vt) -> std::optional<PadicScalar> {
        // distinct-slope case: root of valuation vt via Y = X / p^vt
        PadicScalar u = t.shift_p(-vt);
        PadicScalar dprime = dd.shift_p(-2 * vt);
        PadicScalar y = u;
        for (int it = 0; it < T.working() + 4; ++it) {
            PadicScalar fy = y * y - u * y + dprime;
            if (fy.is_zero()) break;
            PadicScalar dfy = y + y - u;
            if (dfy.val_raw() != 0) return std::nullopt;
            y = y - fy * dfy.unit_inverse();
        }
        if (!(y * y - u * y + dprime).is_zero()) return std::nullopt;
        return y.shift_p(vt);
    };
    if (vT != kValInf && 2 * vT < vD) {
        auto r1 = hensel(T, D, static_cast<int>(vT));
        if (!r1) return std::nullopt;
        // second root = D / r1
        PadicScalar unit = r1->shift_p(static_cast<int>(-vT));
        if (unit.val_raw() != 0) return std::nullopt;
        PadicScalar r2 = D.shift_p(static_cast<int>(-vT)) * unit.unit_inverse();
        return std::make_pair(*r1, r2);
    }
    // equal-slope case: both roots have valuation vD/2 when vD is even
    if (vD % 2 != 0) return std::nullopt;
    int h = static_cast<int>(vD / 2);
    if (vT != kValInf && vT < h) return std::nullopt;  // inconsistent
    PadicScalar t2 = T.is_zero() ? PadicScalar::zero(bud) : T.shift_p(-h);
    PadicScalar d2 = D.shift_p(-2 * h);
    // need simple roots of Y^2 - t2 Y + d2 mod p
    long p = T.p();
    std::uint64_t t2m = t2.coord(0) % static_cast<std::uint64_t>(p);
    std::uint64_t d2m = d2.coord(0) % static_cast<std::uint64_t>(p);
    std::optional<std::uint64_t> root0;
    for (std::uint64_t y = 0; y < static_cast<std::uint64_t>(p); ++y) {
        std::uint64_t fy = (y * y + d2m + (static_cast<std::uint64_t>(p) * p - t2m * y % (static_cast<std::uint64_t>(p) * p))) % static_cast<std::uint64_t>(p);
        std::uint64_t dfy = (2 * y % static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(p) - t2m % static_cast<std::uint64_t>(p)) % static_cast<std::uint64_t>(p);
        if (fy == 0 && dfy != 0) {
            root0 = y;
            break;
        }
    }
    if (!root0) return std::nullopt;
    PadicScalar y = PadicScalar(bud, *root0);
    for (int it = 0; it < T.working() + 4; ++it) {
        PadicScalar fy = y * y - t2 * y + d2;
        if (fy.is_zero()) break;
        PadicScalar dfy = y + y - t2;
        if (dfy.val_raw() != 0) return std::nullopt;
        y = y - fy * dfy.unit_inverse();
    }
    if (!(y * y - t2 * y + d2).is_zero()) return std::nullopt;
    PadicScalar r1 = y.shift_p(h);
    PadicScalar r2 = (t2 - y).shift_p(h);
    return std::make_pair(r1, r2);
}

AdmissibilityDetail weak_admissible_detail(const FiltMod2& D) {
    validate(D);
    AdmissibilityDetail det;
    det.weight_sum = weight_sum(D);
    std::vector<PadicScalar> dets;
    for (const auto& m : D.frob) dets.push_back(m.det());
    det.v_det_nm = tuple_nm_val(dets, D.bud.W);
    det.hodge_y0 = hodge_over(D, D.fy);
    det.hodge_x0 = hodge_over(D, D.fx);

    switch (D.form) {
        case FrobForm::Standard:
        case FrobForm::Triangular: {
            det.v_alpha = tuple_nm_val(diag_entries(D, true), D.bud.W);
            det.v_delta = tuple_nm_val(diag_entries(D, false), D.bud.W);
            bool cond1 = det.v_det_nm == det.weight_sum;
            bool cond3 = det.v_delta >= det.hodge_x0;
            bool star_zero = true;
            for (const auto& m : D.frob)
                if (!m.c.is_zero()) star_zero = false;
            if (D.form == FrobForm::Triangular && !star_zero) {
                // the second eigenline, when it exists rationally, must also
                // sit above its Hodge number
                bool lines_ok = true;
                for (const auto& L : rational_stable_lines(D))
                    if (L.newton < hodge_of_line(D, L.vecs)) lines_ok = false;
                det.admissible = cond1 && cond3 && lines_ok;
            } else {
                bool cond2 = det.v_alpha >= det.hodge_y0;
                det.admissible = cond1 && cond2 && cond3;
            }
            return det;
        }
        case FrobForm::NonSemisimple: {
            det.v_alpha = tuple_nm_val(diag_entries(D, true), D.bud.W);
            det.v_delta = det.v_alpha;
            det.admissible = (2 * det.v_alpha == det.weight_sum) && (det.v_alpha >= det.hodge_x0);
            return det;
        }
        case FrobForm::Scalar: {
            det.v_alpha = tuple_nm_val(diag_entries(D, true), D.bud.W);
            det.v_delta = det.v_alpha;
            // every line is phi-stable; group embeddings by the projective
            // filtration direction and take the largest Hodge number
            std::map<std::array<std::uint64_t, 6>, long long> cls;
            for (int i = 0; i < D.f; ++i)
                cls[projective_key(D.fx[static_cast<size_t>(i)], D.fy[static_cast<size_t>(i)])] +=
                    D.weights[static_cast<size_t>(i)];
            long long maxh = 0;
            for (const auto& [k, h] : cls) maxh = std::max(maxh, h);
            det.admissible = (2 * det.v_alpha == det.weight_sum) && (det.v_alpha >= maxh);
            return det;
        }
        case FrobForm::General: {
            bool cond1 = det.v_det_nm == det.weight_sum;
            bool lines_ok = true;
            for (const auto& L : rational_stable_lines(D))
                if (L.newton < hodge_of_line(D, L.vecs)) lines_ok = false;
            det.admissible = cond1 && lines_ok;
            return det;
        }
    }
    return det;
}

bool weak_admissible(const FiltMod2& D) { return weak_admissible_detail(D).admissible; }

ClassificationVerdict classify(const FiltMod2& D) {
    AdmissibilityDetail det = weak_admissible_detail(D);
    ClassificationVerdict v;
    v.admissible = det.admissible;
    if (!det.admissible) throw NotAdmissibleError("classify: module is not weakly admissible");
    v.slack2 = det.v_alpha == kValInf ? kValInf : det.v_alpha - det.hodge_y0;
    v.slack3 = det.v_delta == kValInf ? kValInf : det.v_delta - det.hodge_x0;

    auto submodule_from_x = [&]() {
        std::vector<long> m(static_cast<size_t>(D.f), 0);
        for (int i = 0; i < D.f; ++i)
            if (D.fx[static_cast<size_t>(i)].is_zero()) m[static_cast<size_t>(i)] = D.weights[static_cast<size_t>(i)];
        return m;
    };
    auto submodule_from_y = [&]() {
        std::vector<long> m(static_cast<size_t>(D.f), 0);
        for (int i = 0; i < D.f; ++i)
            if (D.fy[static_cast<size_t>(i)].is_zero()) m[static_cast<size_t>(i)] = D.weights[static_cast<size_t>(i)];
        return m;
    };

    bool star_zero = true;
    for (const auto& m : D.frob)
        if (!m.c.is_zero()) star_zero = false;

    switch (D.form) {
        case FrobForm::Standard:
        case FrobForm::Triangular: {
            if (D.form == FrobForm::Triangular && !star_zero) {
                v.kind = ReducibilityKind::NonSplitReducible;
                v.submodule_weights = submodule_from_x();
                return v;
            }
            // diagonal Frobenius (possibly tagged triangular with a vanishing
            // off-diagonal part): the two-line rules apply
            bool eq2 = v.slack2 == 0, eq3 = v.slack3 == 0;
            if (!eq2 && !eq3)
                v.kind = ReducibilityKind::Irreducible;
            else if (eq2 && eq3)
                v.kind = ReducibilityKind::SplitReducible;
            else
                v.kind = ReducibilityKind::NonSplitReducible;
            if (eq3)
                v.submodule_weights = submodule_from_x();
            else if (eq2)
                v.submodule_weights = submodule_from_y();
            return v;
        }
        case FrobForm::NonSemisimple: {
            v.kind = (det.v_alpha > det.hodge_x0) ? ReducibilityKind::Irreducible
                                                  : ReducibilityKind::NonSplitReducible;
            if (v.kind == ReducibilityKind::NonSplitReducible) v.submodule_weights = submodule_from_x();
            return v;
        }
        case FrobForm::Scalar: {
            v.f_scalar = true;
            // count stable lines achieving the half weight exactly
            std::map<std::array<std::uint64_t, 6>, long long> cls;
            for (int i = 0; i < D.f; ++i)
                cls[projective_key(D.fx[static_cast<size_t>(i)], D.fy[static_cast<size_t>(i)])] +=
                    D.weights[static_cast<size_t>(i)];
            int at_half = 0;
            for (const auto& [k, h] : cls)
                if (h == det.v_alpha) ++at_half;
            if (det.v_alpha == 0 || at_half >= 2)
                v.kind = ReducibilityKind::SplitReducible;
            else
                v.kind = ReducibilityKind::NonSplitReducible;
            return v;
        }
        case FrobForm::General:
            throw std::invalid_argument("classify: general-form input; put the module in a normal form");
    }
    return v;
}

bool trace_reducibility(const FiltMod2& D) {
    if (!weak_admissible(D)) throw NotAdmissibleError("trace_reducibility: module is not weakly admissible");
    bool positive = std::any_of(D.weights.begin(), D.weights.end(), [](long k) { return k > 0; });
    if (!positive) throw std::invalid_argument("trace_reducibility: needs a positive weight");
    Mat2 B = phi_power_f(D.frob)[0];
    PadicScalar t = B.tr();
    return !t.is_zero() && t.val_raw() == 0;
}

WedgeData det_weights(const FiltMod2& D) {
    if (!weak_admissible(D)) throw NotAdmissibleError("det_weights: module is not weakly admissible");
    WedgeData w;
    w.weights = D.weights;
    for (const auto& m : D.frob) w.frob_scalar.push_back(m.det());
    w.reduction = det_reduction(D.weights, D.bud.p, D.f);
    return w;
}

}  // namespace wach
