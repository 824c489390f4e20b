#include "wach/json_io.hpp"

namespace wach {

namespace {

ojson scalar_tuple(const std::vector<PadicScalar>& v) {
    ojson arr = ojson::array();
    for (const auto& x : v) arr.push_back(std::to_string(x.coord(0)));
    return arr;
}

std::vector<PadicScalar> scalar_tuple_from(const ojson& arr, const PrecisionBudget& bud) {
    std::vector<PadicScalar> v;
    for (const auto& e : arr) {
        if (e.is_string())
            v.push_back(PadicScalar(bud, std::stoull(e.get<std::string>())));
        else if (e.is_number_integer())
            v.push_back(PadicScalar::from_int(bud, e.get<long long>()));
        else
            throw std::invalid_argument("scalar tuple entries must be integers or strings");
    }
    return v;
}

}  // namespace

ojson to_json(const PiSeries& s) {
    ojson j;
    j["scale"] = s.scale;
    ojson coeffs = ojson::array();
    for (const auto& c : s.a) coeffs.push_back(std::to_string(c.coord(0)));
    j["coeffs"] = coeffs;
    j["p"] = s.bud.p;
    j["M"] = s.bud.M;
    j["N"] = s.bud.N;
    return j;
}

PiSeries pi_series_from_json(const ojson& j, const PrecisionBudget& bud) {
    PiSeries s(bud);
    s.scale = j.at("scale").get<int>();
    const auto& coeffs = j.at("coeffs");
    for (size_t i = 0; i < coeffs.size() && i < s.a.size(); ++i) {
        const auto& e = coeffs[i];
        if (e.is_string())
            s.a[i] = PadicScalar(bud, std::stoull(e.get<std::string>()));
        else
            s.a[i] = PadicScalar::from_int(bud, e.get<long long>());
    }
    s.prec = bud.W + std::min(0, s.scale);
    return s;
}

ojson to_json(const TauSeries& t) {
    ojson arr = ojson::array();
    for (const auto& c : t.comp) arr.push_back(to_json(c));
    return arr;
}

ojson to_json(const CrystChar& x) {
    ojson j;
    j["level"] = x.level;
    j["c"] = std::to_string(x.c.coord(0));
    j["exps"] = x.exps;
    return j;
}

ojson to_json(const FundCharExp& e) {
    ojson j;
    j["level"] = e.level;
    j["modulus"] = e.modulus;
    j["exp"] = e.exp;
    return j;
}

ojson to_json(const ReductionResult& r) {
    ojson j;
    j["level"] = r.summands.empty() ? 0 : r.summands[0].level;
    ojson exps = ojson::array();
    for (const auto& s : r.summands) exps.push_back(s.exp);
    j["exps"] = exps;
    j["beta_raw"] = r.beta_raw;
    if (r.betas12) j["betas"] = {r.betas12->first, r.betas12->second};
    j["irreducible"] = r.irreducible;
    return j;
}

ojson to_json(const AdmissibilityDetail& d) {
    ojson j;
    j["admissible"] = d.admissible;
    j["v_det_nm"] = d.v_det_nm >= kValInf ? ojson("inf") : ojson(d.v_det_nm);
    j["weight_sum"] = d.weight_sum;
    j["v_alpha"] = d.v_alpha >= kValInf ? ojson("inf") : ojson(d.v_alpha);
    j["v_delta"] = d.v_delta >= kValInf ? ojson("inf") : ojson(d.v_delta);
    j["hodge_y0"] = d.hodge_y0;
    j["hodge_x0"] = d.hodge_x0;
    return j;
}

ojson to_json(const ClassificationVerdict& v) {
    ojson j;
    j["admissible"] = v.admissible;
    j["kind"] = to_string(v.kind);
    if (v.submodule_weights) j["submodule_weights"] = *v.submodule_weights;
    j["f_scalar"] = v.f_scalar;
    j["slack2"] = v.slack2 >= kValInf ? ojson("inf") : ojson(v.slack2);
    j["slack3"] = v.slack3 >= kValInf ? ojson("inf") : ojson(v.slack3);
    return j;
}

ojson to_json(const FiltMod2& D) {
    ojson j;
    j["f"] = D.f;
    j["weights"] = D.weights;
    std::vector<PadicScalar> a, b, c, d;
    for (const auto& m : D.frob) {
        a.push_back(m.a);
        b.push_back(m.b);
        c.push_back(m.c);
        d.push_back(m.d);
    }
    j["frob"] = {{scalar_tuple(a), scalar_tuple(b)}, {scalar_tuple(c), scalar_tuple(d)}};
    j["x"] = scalar_tuple(D.fx);
    j["y"] = scalar_tuple(D.fy);
    j["form"] = to_string(D.form);
    return j;
}

FiltMod2 filtmod_from_json(const ojson& j, const PrecisionBudget& bud) {
    FiltMod2 D;
    D.bud = bud;
    D.f = j.at("f").get<int>();
    D.weights = j.at("weights").get<std::vector<long>>();
    auto a = scalar_tuple_from(j.at("frob")[0][0], bud);
    auto b = scalar_tuple_from(j.at("frob")[0][1], bud);
    auto c = scalar_tuple_from(j.at("frob")[1][0], bud);
    auto d = scalar_tuple_from(j.at("frob")[1][1], bud);
    for (int i = 0; i < D.f; ++i)
        D.frob.push_back(Mat2{a[static_cast<size_t>(i)], b[static_cast<size_t>(i)],
                              c[static_cast<size_t>(i)], d[static_cast<size_t>(i)]});
    D.fx = scalar_tuple_from(j.at("x"), bud);
    D.fy = scalar_tuple_from(j.at("y"), bud);
    std::string form = j.value("form", "standard");
    if (form == "standard")
        D.form = FrobForm::Standard;
    else if (form == "triangular")
        D.form = FrobForm::Triangular;
    else if (form == "non-semisimple")
        D.form = FrobForm::NonSemisimple;
    else if (form == "scalar")
        D.form = FrobForm::Scalar;
    else if (form == "general")
        D.form = FrobForm::General;
    else
        throw std::invalid_argument("unknown form tag: " + form);
    return D;
}

ojson to_json(const VerifyReport& r) {
    ojson j;
    j["residual_orders"] = {{"commutation", {r.comm_order_1, r.comm_order_2, r.comm_order_12}},
                            {"cocycle", r.cocycle_order}};
    j["pass"] = r.pass;
    return j;
}

ojson to_json(const DoubledDiag& d) {
    ojson j;
    ojson q = ojson::array();
    for (QTag t : d.qseq) q.push_back(t == QTag::Id ? "Id" : "R");
    j["qseq"] = q;
    j["lambda_exps"] = d.lambda_exps;
    j["mu_exps"] = d.mu_exps;
    j["zvec"] = d.zvec;
    j["ell_out"] = d.ell_out;
    return j;
}

}  // namespace wach
