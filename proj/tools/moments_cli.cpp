#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bmlab/eichler.hpp"
#include "bmlab/moments.hpp"
#include "bmlab/specfun.hpp"
#include "bmlab/verify.hpp"
#include "json.hpp"

using namespace bmlab;

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDivergent = 3;

struct Config {
    int digits = 40;
    int parallelism = 1;
    std::string format = "text";
    std::string output;
    long qtrunc = 0;  // 0 = engine default
    std::map<std::string, std::string> tolerance_overrides;
};

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

// precedence: CLI flag > MOMENTS_* environment > config file > default
void resolve(Config& cfg, const std::map<std::string, std::string>& file, bool digits_set,
             bool par_set, bool fmt_set, bool out_set) {
    auto from_env = [](const char* name) -> const char* {
        const char* v = std::getenv(name);
        return (v && *v) ? v : nullptr;
    };
    if (!digits_set) {
        if (const char* e = from_env("MOMENTS_DIGITS")) cfg.digits = std::atoi(e);
        else if (auto it = file.find("digits"); it != file.end()) cfg.digits = std::atoi(it->second.c_str());
    }
    if (!par_set) {
        if (const char* e = from_env("MOMENTS_PARALLELISM")) cfg.parallelism = std::atoi(e);
        else if (auto it = file.find("parallelism"); it != file.end()) cfg.parallelism = std::atoi(it->second.c_str());
    }
    if (!fmt_set) {
        if (auto it = file.find("format"); it != file.end()) cfg.format = it->second;
    }
    if (!out_set) {
        if (auto it = file.find("output"); it != file.end()) cfg.output = it->second;
    }
    if (auto it = file.find("qtrunc"); it != file.end() && cfg.qtrunc == 0)
        cfg.qtrunc = std::atol(it->second.c_str());
    for (const auto& [k, v] : file) {
        if (k.rfind("tolerance.", 0) == 0 && !cfg.tolerance_overrides.count(k.substr(10)))
            cfg.tolerance_overrides[k.substr(10)] = v;
    }
}

std::string fmt_real(const Real& r, int digits) { return r.to_string(digits); }

std::string fmt_complex(const Complex& z, int digits) {
    long p = z.prec();
    Real mag = max(abs(z.re), abs(z.im));
    if (abs(z.im) <= pow10(-digits, p) * (1 + mag)) return fmt_real(z.re, digits);
    std::string s = fmt_real(z.re, digits);
    s += z.im.sign() < 0 ? " - " : " + ";
    s += fmt_real(abs(z.im), digits) + "*i";
    return s;
}

modular::NamedForm form_by_cli_name(const std::string& name) {
    static const std::map<std::string, modular::NamedForm> names = {
        {"f46", modular::NamedForm::F46},     {"f66", modular::NamedForm::F66},
        {"X63", modular::NamedForm::X63},     {"Z63", modular::NamedForm::Z63},
        {"X62", modular::NamedForm::X62},     {"Z62", modular::NamedForm::Z62},
        {"w4kernel", modular::NamedForm::EichlerKernel46}};
    auto it = names.find(name);
    if (it == names.end()) throw CLI::ValidationError("unknown form name: " + name);
    return it->second;
}

int cmd_table1(const PrecisionContext& ctx, std::ostream& os) {
    long p = ctx.work_bits() + 16;
    Real pi = const_pi(p);
    Real g = specfun::gamma(Real::from_ratio(1, 15, p), ctx) * specfun::gamma(Real::from_ratio(2, 15, p), ctx) *
             specfun::gamma(Real::from_ratio(4, 15, p), ctx) * specfun::gamma(Real::from_ratio(8, 15, p), ctx);
    Real c = g / (240 * pi * pi);
    Real s3 = sqrt(Real(3, p)), s5 = sqrt(Real(5, p)), s15 = sqrt(Real(15, p));
    modular::UpperHalfPoint z0(Complex(Real::from_ratio(1, 2, p), s5 / (2 * s3)));
    auto table = modular::cm_derivative_table(z0, 4, ctx);
    std::vector<Complex> want_x = {
        Complex(Real::from_ratio(-1, 64, p), Real(p)),
        Complex(Real(p), -(3 * s15 * c / 32)),
        Complex(9 * c * (9 * c + 1) / 16, Real(p)),
        Complex(Real(p), -(27 * s15 * c * (18 * c * c - 18 * c - 1) / 80)),
        Complex(81 * c * (753 * pow(c, 3) + 54 * c * c - 27 * c - 1) / 20, Real(p))};
    std::vector<Complex> want_z = {
        Complex(8 * s3 * c / pi, Real(p)),
        Complex(Real(p), -(48 * c * (3 * c - 1) / (s5 * pi))),
        Complex(-(48 * s3 * c * (62 * c * c - 18 * c + 3) / (5 * pi)), Real(p)),
        Complex(Real(p), 1728 * c * (57 * pow(c, 3) - 62 * c * c + 9 * c - 1) / (5 * s5 * pi)),
        Complex(1728 * s3 * c * (266 * pow(c, 4) - 228 * pow(c, 3) + 124 * c * c - 12 * c + 1) / (5 * pi), Real(p))};
    Real tol = pow10(-(ctx.digits - 10), p);
    bool all_ok = true;
    for (int k = 0; k <= 4; ++k) {
        for (int which = 0; which < 2; ++which) {
            const Complex& got = which == 0 ? table.x63[k] : table.z63[k];
            const Complex& want = which == 0 ? want_x[k] : want_z[k];
            Real err = abs(got - want);
            bool ok = err < tol * max(Real(1, p), abs(want));
            all_ok = all_ok && ok;
            os << (which == 0 ? "X63" : "Z63") << "^(" << k << ")  " << fmt_complex(got, ctx.digits)
               << "  closed-form " << fmt_complex(want, ctx.digits) << "  |diff| "
               << fmt_real(err, 3) << (ok ? "  OK" : "  FAIL") << "\n";
        }
    }
    return all_ok ? 0 : kExitVerifyFail;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    return out + "\"";
}

int cmd_verify(const Config& cfg, const std::string& suite) {
    PrecisionContext ctx(cfg.digits);
    auto results = verify::run_suite(suite, ctx, cfg.parallelism);
    if (results.empty() && suite != "all") {
        std::cerr << "warning: no identities match suite '" << suite << "'\n";
    }
    // tolerance overrides by id
    for (auto& r : results) {
        auto it = cfg.tolerance_overrides.find(r.id);
        if (it != cfg.tolerance_overrides.end()) {
            Real tol(it->second.c_str(), ctx.work_bits());
            r.tolerance = tol;
            Real scale = max(Real(1, ctx.work_bits()), max(abs(r.lhs), abs(r.rhs)));
            r.pass = r.error.empty() && r.abs_residual <= tol * scale;
        }
    }
    int digits = cfg.digits;
    std::ostringstream body;
    if (cfg.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : results) {
            nlohmann::json o;
            o["id"] = r.id;
            o["description"] = r.description;
            o["paper_anchor"] = r.paper_anchor;
            o["lhs"] = fmt_complex(r.lhs, digits);
            o["rhs"] = fmt_complex(r.rhs, digits);
            o["abs_residual"] = fmt_real(r.abs_residual, 6);
            o["rel_residual"] = fmt_real(r.rel_residual, 6);
            o["tolerance"] = fmt_real(r.tolerance, 3);
            o["pass"] = r.pass;
            o["seconds"] = r.seconds;
            if (!r.error.empty()) o["error"] = r.error;
            arr.push_back(std::move(o));
        }
        body << arr.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        body << "id,description,paper_anchor,lhs,rhs,abs_residual,rel_residual,tolerance,pass,seconds\n";
        for (const auto& r : results) {
            body << r.id << "," << csv_escape(r.description) << "," << csv_escape(r.paper_anchor)
                 << "," << csv_escape(fmt_complex(r.lhs, digits)) << ","
                 << csv_escape(fmt_complex(r.rhs, digits)) << "," << fmt_real(r.abs_residual, 6)
                 << "," << fmt_real(r.rel_residual, 6) << "," << fmt_real(r.tolerance, 3) << ","
                 << (r.pass ? "true" : "false") << "," << r.seconds << "\n";
        }
    } else {
        for (const auto& r : results) {
            body << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  |lhs-rhs| = "
                 << fmt_real(r.abs_residual, 3) << "  tol = " << fmt_real(r.tolerance, 3) << "  ("
                 << r.seconds << " s)";
            if (!r.error.empty()) body << "  error: " << r.error;
            body << "\n";
        }
    }
    if (!cfg.output.empty()) {
        std::ofstream out(cfg.output);
        out << body.str();
    } else {
        std::cout << body.str();
    }
    for (const auto& r : results)
        if (!r.pass) return kExitVerifyFail;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"High-precision laboratory for Bessel moments, modular forms and critical L-values"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    std::string config_path;
    std::vector<std::string> tol_kv;
    auto* digits_opt = app.add_option("--digits", cfg.digits, "significant decimal digits (default 40)");
    auto* par_opt = app.add_option("--parallelism", cfg.parallelism, "concurrent identity evaluations");
    app.add_option("--config", config_path, "flat key=value configuration file");

    auto* eval = app.add_subcommand("eval", "evaluate one object and print it");
    auto* verify_cmd = app.add_subcommand("verify", "run the identity registry");

    // ---- eval subcommands ----
    int a = 0, b = 0, n = 0;
    auto* ikm_cmd = eval->add_subcommand("ikm", "I0^a K0^b t^n moment");
    ikm_cmd->add_option("a", a)->required();
    ikm_cmd->add_option("b", b)->required();
    ikm_cmd->add_option("n", n)->required();
    auto* jym_cmd = eval->add_subcommand("jym", "J0^alpha Y0^beta t^nu moment");
    jym_cmd->add_option("alpha", a)->required();
    jym_cmd->add_option("beta", b)->required();
    jym_cmd->add_option("nu", n)->required();
    std::string form_name, spec_id;
    int svalue = 0;
    auto* lv = eval->add_subcommand("lvalue", "critical L-value L(form, s)");
    lv->add_option("form", form_name)->required();
    lv->add_option("s", svalue)->required();
    long qn = 32;
    auto* etaq_cmd = eval->add_subcommand("eta-q", "exact q-expansion of a recipe, CSV");
    etaq_cmd->add_option("recipe", form_name)->required();
    etaq_cmd->add_option("N", qn);
    std::string re_str, im_str;
    auto* form_cmd = eval->add_subcommand("form", "numeric value of a named form at z");
    form_cmd->add_option("name", form_name)->required();
    form_cmd->add_option("re", re_str)->required();
    form_cmd->add_option("im", im_str)->required();
    auto* eich = eval->add_subcommand("eichler", "a named Eichler integral");
    eich->add_option("spec-id", spec_id)->required();
    eval->add_subcommand("table1", "CM-point values and derivatives of X63, Z63");

    std::string suite = "all";
    verify_cmd->add_option("--suite", suite, "suite prefix (S, B, L, H, E, W, an id, or 'all')");
    auto* fmt_opt = verify_cmd->add_option("--format", cfg.format, "text, json or csv");
    auto* out_opt = verify_cmd->add_option("-o,--output", cfg.output, "report file");
    verify_cmd->add_option("--qtrunc", cfg.qtrunc, "override q-series truncation order");
    verify_cmd->add_option("--tolerance", tol_kv, "per-identity override id=value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        std::map<std::string, std::string> file_cfg;
        if (!config_path.empty()) file_cfg = read_config_file(config_path);
        resolve(cfg, file_cfg, digits_opt->count() > 0, par_opt->count() > 0, fmt_opt->count() > 0,
                out_opt->count() > 0);
        for (const auto& kv : tol_kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw CLI::ValidationError("--tolerance expects id=value");
            cfg.tolerance_overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
        PrecisionContext ctx(cfg.digits);
        long p = ctx.work_bits();

        if (*verify_cmd) return cmd_verify(cfg, suite);

        if (*ikm_cmd) {
            auto r = moments::ikm(a, b, n, ctx);
            std::cout << fmt_real(r.value, cfg.digits) << "\n";
            return 0;
        }
        if (*jym_cmd) {
            auto r = moments::jym(a, b, n, ctx);
            std::cout << fmt_real(r.value, cfg.digits) << "\n";
            return 0;
        }
        if (*lv) {
            Real v = eichler::lvalue(form_by_cli_name(form_name), svalue, ctx);
            std::cout << fmt_real(v, cfg.digits) << "\n";
            return 0;
        }
        if (*etaq_cmd) {
            long N = cfg.qtrunc > 0 ? cfg.qtrunc : qn;
            modular::QSeries q;
            if (form_name == "eta") q = modular::eta_qseries(N);
            else if (form_name == "theta") q = modular::theta_qseries(N);
            else q = modular::quotient_qseries(modular::form_spec(form_by_cli_name(form_name)).recipe, N);
            std::cout << q.to_csv();
            return 0;
        }
        if (*form_cmd) {
            Complex z(Real(re_str.c_str(), p), Real(im_str.c_str(), p));
            Complex v;
            if (form_name == "eta") v = modular::eta_point(z, ctx);
            else if (form_name == "theta") v = modular::theta_point(z, ctx);
            else v = modular::eval_form(form_by_cli_name(form_name), modular::UpperHalfPoint(z), ctx);
            std::cout << fmt_complex(v, cfg.digits) << "\n";
            return 0;
        }
        if (*eich) {
            Complex v(p);
            Real pi = const_pi(p);
            if (spec_id == "id240") {
                Real y0 = sqrt(Real(5, p)) / (2 * sqrt(Real(3, p)));
                const auto& q = modular::form_qseries(modular::NamedForm::EichlerKernel46,
                                                      modular::truncation_order(y0.to_double(), ctx));
                v = eichler::vertical_termwise(q, mpq_class(1, 2), y0,
                                               {Complex(-1, p), Complex(2, p)}, ctx) * 240;
            } else if (spec_id == "g243") {
                v = Complex(eichler::broadhurst_G(0, ctx));
            } else if (spec_id == "g153") {
                v = Complex(eichler::broadhurst_G(1, ctx));
            } else if (spec_id.rfind("f46_z", 0) == 0 || spec_id.rfind("f66_z", 0) == 0) {
                int k = std::atoi(spec_id.substr(5).c_str());
                auto form = spec_id[1] == '4' ? modular::NamedForm::F46 : modular::NamedForm::F66;
                std::vector<Complex> poly(k + 1, Complex(p));
                poly[k] = Complex(1, p);
                eichler::EichlerSpec s{form, std::move(poly),
                                       eichler::ContourPath::vertical(mpq_class(0), Real(p))};
                v = eichler::eichler_vertical(s, ctx);
            } else {
                throw CLI::ValidationError("unknown eichler spec-id: " + spec_id);
            }
            (void)pi;
            std::cout << fmt_complex(v, cfg.digits) << "\n";
            return 0;
        }
        if (eval->get_subcommand("table1")->parsed()) return cmd_table1(ctx, std::cout);
        std::cerr << "eval: missing operation\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "divergent or out-of-domain spec: " << e.what() << "\n";
        return kExitDivergent;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
}
