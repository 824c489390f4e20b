#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "wach/json_io.hpp"

namespace {

using wach::ojson;

std::vector<long> parse_longs(const std::string& csv) {
    std::vector<long> out;
    std::istringstream is(csv);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stol(tok));
    return out;
}

std::vector<long long> parse_longlongs(const std::string& csv) {
    std::vector<long long> out;
    std::istringstream is(csv);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stoll(tok));
    return out;
}

int env_int(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    try {
        return std::stoi(v);
    } catch (...) {
        return fallback;
    }
}

// flat rows as comma-separated lines with a header
void emit_csv(const ojson& rows) {
    if (rows.empty()) return;
    bool first = true;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
        if (!first) std::cout << ",";
        std::cout << it.key();
        first = false;
    }
    std::cout << "\n";
    for (const auto& row : rows) {
        first = true;
        for (auto it = row.begin(); it != row.end(); ++it) {
            if (!first) std::cout << ",";
            if (it.value().is_string())
                std::cout << it.value().get<std::string>();
            else
                std::cout << it.value().dump();
            first = false;
        }
        std::cout << "\n";
    }
}

void emit(const ojson& j, const std::string& format) {
    if (format == "table") {
        std::function<void(const ojson&, int)> walk = [&](const ojson& node, int depth) {
            std::string pad(static_cast<size_t>(depth) * 2, ' ');
            if (node.is_object()) {
                for (auto it = node.begin(); it != node.end(); ++it) {
                    if (it.value().is_object() || it.value().is_array()) {
                        std::cout << pad << it.key() << ":\n";
                        walk(it.value(), depth + 1);
                    } else {
                        std::cout << pad << it.key() << ": " << it.value().dump() << "\n";
                    }
                }
            } else if (node.is_array()) {
                for (const auto& e : node) {
                    if (e.is_object() || e.is_array()) {
                        std::cout << pad << "-\n";
                        walk(e, depth + 1);
                    } else {
                        std::cout << pad << "- " << e.dump() << "\n";
                    }
                }
            } else {
                std::cout << pad << node.dump() << "\n";
            }
        };
        walk(j, 0);
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

struct CommonOpts {
    long p = 3;
    int f = 1;
    int prec_p = env_int("WACHKIT_PREC_P", 8);
    int prec_pi = env_int("WACHKIT_PREC_PI", 12);
    std::string format = "json";
    std::string weights_csv, l_csv, types_csv, alpha_csv, units_csv;
    long long gamma_a = 0;
    int ell = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_weights = true) {
    cmd->add_option("--p", o.p, "prime");
    cmd->add_option("--f", o.f, "degree of the base extension");
    cmd->add_option("--prec-p", o.prec_p, "p-adic precision exponent M");
    cmd->add_option("--prec-pi", o.prec_pi, "pi-adic precision N");
    cmd->add_option("--format", o.format, "json|table|csv (csv for row enumerations)")
        ->check(CLI::IsMember({"json", "table", "csv"}));
    if (with_weights) cmd->add_option("--weights", o.weights_csv, "comma separated weights k_0,..,k_{f-1}");
}

wach::FamilySpec family_spec_from(const CommonOpts& o, const wach::PrecisionBudget& bud) {
    std::vector<long> weights = parse_longs(o.weights_csv);
    wach::TypeVector tv;
    if (!o.types_csv.empty()) {
        tv = wach::TypeVector::parse(o.types_csv);
    } else if (!o.l_csv.empty()) {
        tv = wach::types_for_induced(parse_longs(o.l_csv));
    } else {
        throw CLI::ValidationError("--types or --l is required");
    }
    std::vector<long long> alpha =
        o.alpha_csv.empty() ? std::vector<long long>() : parse_longlongs(o.alpha_csv);
    std::vector<long long> units =
        o.units_csv.empty() ? std::vector<long long>() : parse_longlongs(o.units_csv);
    return wach::FamilySpec::make(bud, weights, tv, alpha, units, o.ell);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wachkit: families of Wach modules, filtered phi-modules, and their mod-p reductions"};
    app.require_subcommand(1);

    CommonOpts o;
    long long char_c = 1;

    auto* cmd_char = app.add_subcommand("char", "build and verify a rank-one Wach module");
    add_common(cmd_char, o);
    cmd_char->add_option("--c", char_c, "unramified constant");
    cmd_char->add_option("--gamma", o.gamma_a, "chi(gamma) as an integer unit");

    auto* cmd_build = app.add_subcommand("family-build", "assemble Pi(a) and its filtered module");
    add_common(cmd_build, o);
    cmd_build->add_option("--l", o.l_csv, "level-2f exponent vector driving the type recipe");
    cmd_build->add_option("--types", o.types_csv, "explicit type vector, e.g. 1,2");
    cmd_build->add_option("--alpha", o.alpha_csv, "evaluation points a_i (multiples of p)");
    cmd_build->add_option("--units", o.units_csv, "units c_i");
    cmd_build->add_option("--ell", o.ell, "truncation parameter (default max weight)");

    auto* cmd_verify = app.add_subcommand("family-verify", "run the Gamma-solver to budget");
    add_common(cmd_verify, o);
    cmd_verify->add_option("--l", o.l_csv, "level-2f exponent vector driving the type recipe");
    cmd_verify->add_option("--types", o.types_csv, "explicit type vector");
    cmd_verify->add_option("--alpha", o.alpha_csv, "evaluation points a_i");
    cmd_verify->add_option("--units", o.units_csv, "units c_i");
    cmd_verify->add_option("--ell", o.ell, "truncation parameter");
    cmd_verify->add_option("--gamma", o.gamma_a, "chi(gamma); default 1+p");

    auto* cmd_solve = app.add_subcommand("solve-gamma", "solve for the Gamma-action matrix");
    add_common(cmd_solve, o);
    cmd_solve->add_option("--l", o.l_csv, "level-2f exponent vector driving the type recipe");
    cmd_solve->add_option("--types", o.types_csv, "explicit type vector");
    cmd_solve->add_option("--alpha", o.alpha_csv, "evaluation points a_i");
    cmd_solve->add_option("--units", o.units_csv, "units c_i");
    cmd_solve->add_option("--ell", o.ell, "truncation parameter");
    cmd_solve->add_option("--gamma", o.gamma_a, "chi(gamma); default 1+p");
    bool solve_emit_matrix = false;
    cmd_solve->add_flag("--emit-matrix", solve_emit_matrix, "include the solved matrix");

    auto* cmd_wadm = app.add_subcommand("wadm", "classify a filtered module read from stdin");
    add_common(cmd_wadm, o, false);

    auto* cmd_reduce = app.add_subcommand("reduce", "semisimplified mod-p reduction");
    add_common(cmd_reduce, o);
    cmd_reduce->add_option("--l", o.l_csv, "level-2f exponent vector (induced case)");
    std::string x_csv;
    cmd_reduce->add_option("--x", x_csv, "0/1 pattern of nonzero x_i (reducible case)");

    auto* cmd_classify = app.add_subcommand("classify", "induced classes with their reductions");
    add_common(cmd_classify, o);

    auto* cmd_enum = app.add_subcommand("enumerate", "sweep all 4^f type vectors");
    add_common(cmd_enum, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        wach::PrecisionBudget bud(o.p, o.prec_p, o.prec_pi);

        if (*cmd_char) {
            std::vector<long> weights = parse_longs(o.weights_csv);
            wach::CrystChar chi;
            chi.level = o.f;
            chi.c = wach::PadicScalar::from_int(bud, char_c);
            chi.exps = weights;
            wach::WachRank1 w = wach::rank1_wach(chi, bud);
            wach::GammaElement g{o.gamma_a != 0 ? o.gamma_a : 1 + o.p};
            wach::GammaElement g2{1 + o.p};
            int comm = w.commutation_order(g);
            int coc = w.cocycle_order(g, g2);
            ojson out;
            out["character"] = wach::to_json(chi);
            out["pretty"] = chi.pretty();
            out["gamma"] = g.a;
            out["residual_orders"] = {{"commutation", comm}, {"cocycle", coc}};
            out["pass"] = comm >= bud.N && coc >= bud.N;
            emit(out, o.format);
            return out["pass"].get<bool>() ? 0 : 2;
        }

        if (*cmd_build) {
            wach::FamilySpec spec = family_spec_from(o, bud);
            wach::FamilyBuild fb = wach::build_Pi(spec);
            ojson out;
            out["p"] = o.p;
            out["f"] = spec.f;
            out["weights"] = spec.weights;
            out["types"] = spec.tv.str();
            out["alpha"] = spec.alpha;
            out["units"] = spec.units;
            out["ell"] = spec.ell;
            out["precision"] = {{"M", bud.M}, {"N", bud.N}};
            out["alpha_bound_exponent"] = fb.m_bound;
            ojson zs = ojson::array();
            for (const auto& z : fb.z) zs.push_back(wach::to_json(z));
            out["z"] = zs;
            ojson pimat = ojson::array();
            for (const auto& m : fb.Pi)
                pimat.push_back({{"a", wach::to_json(m.a)},
                                 {"b", wach::to_json(m.b)},
                                 {"c", wach::to_json(m.c)},
                                 {"d", wach::to_json(m.d)}});
            out["Pi"] = pimat;
            out["D"] = wach::to_json(fb.D);
            out["weakly_admissible"] = wach::weak_admissible(fb.D);
            emit(out, o.format);
            return 0;
        }

        if (*cmd_verify || *cmd_solve) {
            wach::FamilySpec spec = family_spec_from(o, bud);
            wach::FamilyBuild fb = wach::build_Pi(spec);
            wach::GammaElement g{o.gamma_a != 0 ? o.gamma_a : 1 + o.p};
            wach::GammaElement h{1 + o.p};
            wach::GammaMatrix G1 = wach::solve_gamma(fb, g);
            wach::GammaMatrix G2 = wach::solve_gamma(fb, h);
            wach::GammaMatrix G12 = wach::solve_gamma(fb, wach::GammaElement{g.a * h.a});
            wach::VerifyReport rep = wach::verify(fb, G1, G2, G12);
            ojson out;
            out["gamma"] = g.a;
            out["order"] = G1.order;
            out["residual_orders"] = {{"commutation", std::min({rep.comm_order_1, rep.comm_order_2,
                                                                rep.comm_order_12})},
                                      {"cocycle", rep.cocycle_order}};
            out["pass"] = rep.pass;
            if (*cmd_solve && solve_emit_matrix) {
                ojson mat = ojson::array();
                for (const auto& m : G1.mat)
                    mat.push_back({{"a", wach::to_json(m.a)},
                                   {"b", wach::to_json(m.b)},
                                   {"c", wach::to_json(m.c)},
                                   {"d", wach::to_json(m.d)}});
                out["matrix"] = mat;
            }
            emit(out, o.format);
            return rep.pass ? 0 : 2;
        }

        if (*cmd_wadm) {
            ojson j = ojson::parse(std::cin);
            wach::FiltMod2 D = wach::filtmod_from_json(j, bud);
            wach::AdmissibilityDetail det = wach::weak_admissible_detail(D);
            ojson out;
            out["detail"] = wach::to_json(det);
            if (det.admissible) out["verdict"] = wach::to_json(wach::classify(D));
            emit(out, o.format);
            return 0;
        }

        if (*cmd_reduce) {
            std::vector<long> weights = parse_longs(o.weights_csv);
            wach::ReductionResult r;
            if (!o.l_csv.empty()) {
                r = wach::reduce_induced(parse_longs(o.l_csv), o.p, o.f);
            } else if (!x_csv.empty()) {
                std::vector<long> xs = parse_longs(x_csv);
                std::vector<bool> xb;
                for (long v : xs) xb.push_back(v != 0);
                r = wach::reduce_reducible(weights, xb, o.p);
            } else {
                throw CLI::ValidationError("reduce requires --l or --x");
            }
            emit(wach::to_json(r), o.format);
            return 0;
        }

        if (*cmd_classify) {
            std::vector<long> weights = parse_longs(o.weights_csv);
            auto classes = wach::enumerate_induced_classes(weights);
            ojson rows = ojson::array();
            ojson flat = ojson::array();
            for (const auto& l : classes) {
                ojson row;
                row["l"] = l;
                row["types"] = wach::types_for_induced(l).str();
                wach::ReductionResult red = wach::reduce_induced(l, o.p, o.f);
                row["reduction"] = wach::to_json(red);
                rows.push_back(row);
                ojson fr;
                std::ostringstream ls;
                for (size_t i = 0; i < l.size(); ++i) ls << (i ? " " : "") << l[i];
                fr["l"] = ls.str();
                fr["types"] = row["types"];
                fr["exp1"] = red.summands[0].exp;
                fr["exp2"] = red.summands[1].exp;
                fr["beta_raw"] = red.beta_raw;
                fr["irreducible"] = red.irreducible;
                flat.push_back(fr);
            }
            if (o.format == "csv") {
                emit_csv(flat);
                return 0;
            }
            ojson out;
            out["count"] = classes.size();
            out["classes"] = rows;
            emit(out, o.format);
            return 0;
        }

        if (*cmd_enum) {
            std::vector<long> weights = o.weights_csv.empty()
                                            ? std::vector<long>(static_cast<size_t>(o.f), 1)
                                            : parse_longs(o.weights_csv);
            int f = o.f;
            ojson rows = ojson::array();
            long total = 1;
            for (int i = 0; i < f; ++i) total *= 4;
            for (long code = 0; code < total; ++code) {
                wach::TypeVector tv;
                long c = code;
                for (int i = 0; i < f; ++i) {
                    tv.t.push_back(static_cast<wach::MatType>(1 + c % 4));
                    c /= 4;
                }
                wach::SymbolicQf sq = wach::symbolic_Qf(o.p, tv, weights);
                ojson row;
                row["types"] = tv.str();
                row["membership"] = wach::to_string(wach::class_membership(tv));
                row["trace_scalar"] = sq.trace_is_scalar;
                row["trace"] = sq.qf.trace().str();
                rows.push_back(row);
            }
            if (o.format == "csv") {
                emit_csv(rows);
                return 0;
            }
            ojson out;
            out["f"] = f;
            out["rows"] = rows;
            emit(out, o.format);
            return 0;
        }
    } catch (const wach::VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
