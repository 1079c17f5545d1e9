// jacobi3: command line front end for the invariant, theta, period and
// classification engines.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>

#include "json_io.hpp"

using namespace jacobi3;
using io::json;

namespace {

struct Globals {
    unsigned prec = default_precision_bits;
    double tol = 0;
    bool json_out = false;
};

void emit(const Globals& g, const json& j) {
    if (g.json_out) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& [key, value] : j.items()) {
        std::cout << key << ": ";
        if (value.is_string())
            std::cout << value.get<std::string>();
        else
            std::cout << value.dump();
        std::cout << "\n";
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

CianiMatrix parse_ciani(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 6) throw invalid_input("Ciani matrix is a1,a2,a3,b1,b2,b3");
    std::vector<Rational> v;
    for (const auto& p : parts) v.push_back(parse_rational(p));
    return CianiMatrix{v[0], v[1], v[2], v[3], v[4], v[5]};
}

/// f given as a0,a1,...,an (constant term first).
UPoly parse_coefficients(const std::string& text) {
    std::vector<Rational> c;
    for (const auto& p : split(text, ',')) c.push_back(parse_rational(p));
    return UPoly(c);
}

/// Ciani matrix of a quartic supported on x^4, y^4, z^4, y^2 z^2, x^2 z^2, x^2 y^2.
std::optional<CianiMatrix> as_ciani(const TernaryForm& f) {
    if (f.degree() != 4) return std::nullopt;
    for (const auto& e : monomials(4)) {
        const bool even = e[0] % 2 == 0 && e[1] % 2 == 0 && e[2] % 2 == 0;
        if (!even && f.coeff(e) != 0) return std::nullopt;
    }
    return CianiMatrix{f.coeff(4, 0, 0),     f.coeff(0, 4, 0),     f.coeff(0, 0, 4),
                       f.coeff(0, 2, 2) / 2, f.coeff(2, 0, 2) / 2, f.coeff(2, 2, 0) / 2};
}

json invariant_json(const InvariantValue& v) {
    return {{"value", io::rational_text(v.value)}, {"degree", v.degree}, {"weight", v.weight}};
}

ThetaCharacteristic parse_characteristic(const std::string& text, int g) {
    const auto halves = split(text, ';');
    if (halves.size() != 2 || static_cast<int>(halves[0].size()) != g || static_cast<int>(halves[1].size()) != g)
        throw invalid_input("characteristic is eps1;eps2 with g binary digits each, e.g. 010;110");
    ThetaCharacteristic c;
    for (char ch : halves[0]) {
        if (ch != '0' && ch != '1') throw invalid_input("characteristic digits must be 0 or 1");
        c.eps1.push_back(ch - '0');
    }
    for (char ch : halves[1]) {
        if (ch != '0' && ch != '1') throw invalid_input("characteristic digits must be 0 or 1");
        c.eps2.push_back(ch - '0');
    }
    return c;
}

SiegelPoint<Real> read_tau(const std::string& path) {
    const json j = io::read_json_file(path);
    return SiegelPoint<Real>(io::matrix_from_json(j.contains("tau") ? j.at("tau") : j, "tau"));
}

AffineCurve curve_from_options(const std::string& quartic, const std::string& hyper) {
    if (!quartic.empty() == !hyper.empty()) throw invalid_input("give exactly one of --quartic and --hyperelliptic");
    if (!quartic.empty()) return quartic_curve(io::form_from_json(io::read_json_file(quartic)));
    return hyperelliptic_curve(parse_coefficients(hyper));
}

json vanishing_json(const VanishingProfile& vp) {
    return {{"vanishing_thetas", vp.zero_count},
            {"near_threshold_thetas", vp.indeterminate_count},
            {"chi", io::zero_test_name(vp.chi)},
            {"sigma140", io::zero_test_name(vp.sigma)}};
}

json classification_json(const ClassificationResult<Real>& r, const CalibrationConstant& c) {
    json j = {{"verdict", verdict_name(r.verdict)}, {"reason", r.reason}};
    j["square_class"] = r.square_class ? json(r.square_class->get_str()) : json(nullptr);
    j["twist_descriptor"] = r.twist_descriptor ? json(r.twist_descriptor->get_str()) : json(nullptr);
    if (r.value) {
        const auto& v = *r.value;
        j["value"] = {{"raw", io::complex_json(v.raw)},
                      {"relative_error", to_decimal(v.relative_error, 6)},
                      {"imag_residual", to_decimal(v.imag_residual, 6)},
                      {"recognized", v.recognized ? json(io::rational_text(*v.recognized)) : json(nullptr)},
                      {"precision_bits", v.precision_bits}};
    }
    if (r.reduced) j["value_over_2^28"] = io::rational_text(*r.reduced);
    j["tests"] = vanishing_json(r.vanishing);
    j["chi_product"] = io::quantity_json(r.chi);
    j["sigma140"] = io::quantity_json(r.sigma);
    j["calibration"] = io::calibration_json(c);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jacobian recognition for principally polarized abelian threefolds"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--prec", g.prec, "working precision in bits")->check(CLI::Range(24u, 8192u));
    app.add_option("--tol", g.tol, "relative accuracy of the input data (widens zero tests)")->check(CLI::NonNegativeNumber);
    app.add_flag("--json", g.json_out, "print JSON instead of key: value lines");

    std::string form_file, quartic_file, hyper_coeffs, tau_file, periods_file, char_text, ciani_text, out_file,
        config_file, scale_text;
    std::vector<std::string> form_files, ciani_list;
    int base_choice = 0;
    long twist = 1;

    auto* disc = app.add_subcommand("disc", "exact discriminant of a ternary form");
    disc->add_option("--form", form_file, "form as JSON {degree, coeffs}")->required();

    auto* res = app.add_subcommand("resultant", "normalized resultant of three ternary forms");
    res->add_option("--forms", form_files, "three form files")->required()->expected(3);

    auto* ciani = app.add_subcommand("ciani", "Ciani quartic: closed-form and Macaulay discriminants");
    ciani->add_option("--matrix", ciani_text, "a1,a2,a3,b1,b2,b3")->required();

    auto* theta_cmd = app.add_subcommand("theta", "theta constants at tau");
    theta_cmd->add_option("--tau", tau_file, "tau as a JSON matrix of [re, im]")->required();
    theta_cmd->add_option("--char", char_text, "characteristic eps1;eps2 (default: all)");

    auto* chi_cmd = app.add_subcommand("chi-product", "product of the even theta constants");
    chi_cmd->add_option("--tau", tau_file, "tau as a JSON matrix of [re, im]")->required();

    auto* sigma_cmd = app.add_subcommand("sigma140", "35th elementary symmetric function of theta^8 (genus 3)");
    sigma_cmd->add_option("--tau", tau_file, "tau as a JSON matrix of [re, im]")->required();

    auto* per = app.add_subcommand("periods", "period matrix of a plane quartic or hyperelliptic curve");
    per->add_option("--quartic", quartic_file, "quartic form file");
    per->add_option("--hyperelliptic", hyper_coeffs, "coefficients a0,...,an of f in y^2 = f(x), n = 7 or 8");
    per->add_option("--base-choice", base_choice, "use the n-th best base point direction")->check(CLI::NonNegativeNumber);

    auto* klein = app.add_subcommand("klein-check", "Klein ratio (2pi)^54 P / (2^28 det(Omega2)^18 Disc^2)");
    klein->add_option("--quartic", quartic_file, "quartic form file")->required();

    auto* cal = app.add_subcommand("calibrate", "measure the unit c0 on Ciani quartics");
    cal->add_option("--ciani", ciani_list, "Ciani matrices a1,a2,a3,b1,b2,b3 (repeatable)");
    cal->add_option("--out", out_file, "write the calibration JSON here");

    auto* cls = app.add_subcommand("classify", "Decomposable / HyperellipticJacobian / Jacobian / TwistOfJacobian");
    cls->add_option("--quartic", quartic_file, "quartic form file");
    cls->add_option("--hyperelliptic", hyper_coeffs, "coefficients a0,...,an of f in y^2 = f(x)");
    cls->add_option("--periods", periods_file, "period matrix JSON as printed by the periods command");
    cls->add_option("--tau", tau_file, "tau only (arithmetic verdicts need periods)");
    cls->add_option("--scale", scale_text, "multiply the periods by a rational p/q");
    cls->add_option("--twist", twist, "multiply the periods by sqrt(D), D a nonzero integer");
    cls->add_option("--config", config_file, "calibration JSON (default: the frozen constant)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(exit_code::invalid_input);
    }

    try {
        PrecisionScope scope(g.prec);
        if (*disc) {
            const TernaryForm f = io::form_from_json(io::read_json_file(form_file));
            const InvariantValue v = discriminant(f);
            json j = invariant_json(v);
            j["method"] = "macaulay";
            if (const auto m = as_ciani(f)) {
                const Rational closed = ciani_discriminant(*m);
                j["ciani_closed_form"] = io::rational_text(closed);
                j["agree"] = closed == v.value;
                if (closed != v.value) {
                    emit(g, j);
                    return static_cast<int>(exit_code::inconsistency);
                }
            }
            emit(g, j);
        } else if (*res) {
            std::vector<TernaryForm> f;
            for (const auto& path : form_files) f.push_back(io::form_from_json(io::read_json_file(path)));
            emit(g, {{"resultant", io::rational_text(macaulay_resultant(f[0], f[1], f[2]))}});
        } else if (*ciani) {
            const CianiMatrix m = parse_ciani(ciani_text);
            const TernaryForm f = ciani_form(m);
            const Rational closed = ciani_discriminant(m), mac = discriminant(f).value;
            emit(g, {{"form", io::form_to_json(f)},
                     {"closed_form", io::rational_text(closed)},
                     {"macaulay", io::rational_text(mac)},
                     {"agree", closed == mac}});
            if (closed != mac) return static_cast<int>(exit_code::inconsistency);
        } else if (*theta_cmd) {
            const SiegelPoint<Real> tau = read_tau(tau_file);
            std::vector<ThetaCharacteristic> chars =
                char_text.empty() ? enumerate_characteristics(tau.genus()) : std::vector{parse_characteristic(char_text, tau.genus())};
            const auto values = theta_constants(chars, tau);
            json list = json::array();
            for (std::size_t i = 0; i < chars.size(); ++i) {
                json v = io::theta_value_json(values[i]);
                v["characteristic"] = chars[i].label();
                v["parity"] = chars[i].even() ? "even" : "odd";
                list.push_back(v);
            }
            emit(g, {{"genus", tau.genus()}, {"thetas", list}});
        } else if (*chi_cmd || *sigma_cmd) {
            const SiegelPoint<Real> tau = read_tau(tau_file);
            if (*sigma_cmd && tau.genus() != 3) throw invalid_input("sigma140 is defined for genus 3");
            const auto tc = even_theta_constants(tau);
            const auto q = *chi_cmd ? chi_product(tc) : sigma140(tc);
            json j = io::quantity_json(q);
            ZeroTest verdict;
            if (tau.genus() == 3) {
                const auto vp = vanishing_profile(tc, g.tol);
                verdict = *chi_cmd ? vp.chi : vp.sigma;
                j["tests"] = vanishing_json(vp);
            } else {
                verdict = zero_test(q, g.tol);
            }
            j["zero_test"] = io::zero_test_name(verdict);
            emit(g, j);
            if (verdict == ZeroTest::indeterminate) return static_cast<int>(exit_code::indeterminate);
        } else if (*per) {
            PeriodOptions opt;
            opt.monodromy.base_choice = base_choice;
            const auto pm = periods<Real>(curve_from_options(quartic_file, hyper_coeffs), opt);
            emit(g, io::period_matrix_json(pm));
        } else if (*klein) {
            const TernaryForm f = io::form_from_json(io::read_json_file(quartic_file));
            const Rational d = discriminant(f).value;
            if (d == 0) throw invalid_input("curve is singular");
            const auto pm = periods<Real>(quartic_curve(f));
            const auto kr = klein_ratio(f, pm);
            emit(g, {{"klein_ratio", io::complex_json(kr)},
                     {"abs_minus_one", to_decimal(std::abs(to_double(abs(kr)) - 1.0), 6)},
                     {"discriminant", io::rational_text(d)},
                     {"period_error_estimate", to_decimal(pm.diagnostics.error_estimate, 6)}});
        } else if (*cal) {
            std::vector<CianiMatrix> curves;
            if (ciani_list.empty())
                curves = {CianiMatrix::identity(), CianiMatrix::diagonal(2, 3, 5), CianiMatrix{1, 2, 3, 1, 0, 1}};
            for (const auto& text : ciani_list) curves.push_back(parse_ciani(text));
            std::vector<std::complex<double>> ratios;
            const CalibrationConstant c = calibrate<Real>(curves, {}, &ratios);
            json j = io::calibration_json(c);
            json kr = json::array();
            for (const auto& r : ratios) kr.push_back({to_decimal(r.real(), 17), to_decimal(r.imag(), 17)});
            j["klein_ratios"] = kr;
            if (!out_file.empty()) {
                std::ofstream out(out_file);
                if (!out) throw invalid_input("cannot write " + out_file);
                out << io::calibration_json(c).dump(2) << "\n";
            }
            emit(g, j);
        } else if (*cls) {
            ClassifyOptions opt;
            opt.input_tol = g.tol;
            if (!config_file.empty()) opt.calibration = io::calibration_from_json(io::read_json_file(config_file));
            const int sources = !quartic_file.empty() + !hyper_coeffs.empty() + !periods_file.empty() + !tau_file.empty();
            if (sources != 1) throw invalid_input("give exactly one of --quartic, --hyperelliptic, --periods, --tau");
            ClassificationResult<Real> r;
            if (!tau_file.empty()) {
                if (!scale_text.empty() || twist != 1) throw invalid_input("--scale and --twist act on periods, not on tau");
                r = classify(read_tau(tau_file), opt);
            } else {
                PeriodMatrix<Real> pm = periods_file.empty() ? periods<Real>(curve_from_options(quartic_file, hyper_coeffs))
                                                             : io::period_matrix_from_json(io::read_json_file(periods_file));
                if (!scale_text.empty()) {
                    const Rational s = parse_rational(scale_text);
                    if (s == 0) throw invalid_input("scale must be nonzero");
                    pm = scale_periods(pm, Complex<Real>(from_rational<Real>(s), Real(0)));
                }
                if (twist == 0) throw invalid_input("twist must be nonzero");
                if (twist != 1) {
                    const Real root = sqrt(Real(std::labs(twist)));
                    pm = scale_periods(pm, twist > 0 ? Complex<Real>(root, Real(0)) : Complex<Real>(Real(0), root));
                }
                r = classify(pm, opt);
            }
            emit(g, classification_json(r, opt.calibration));
            if (r.verdict == Verdict::Indeterminate) return static_cast<int>(exit_code::indeterminate);
        }
    } catch (const invalid_input& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return static_cast<int>(exit_code::invalid_input);
    } catch (const numeric_error& e) {
        std::cerr << "numerically indeterminate: " << e.what() << "\n";
        return static_cast<int>(exit_code::indeterminate);
    } catch (const inconsistency_error& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return static_cast<int>(exit_code::inconsistency);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return static_cast<int>(exit_code::invalid_input);
    }
    return static_cast<int>(exit_code::success);
}
