#pragma once

// JSON encodings used by the command line tool. Every number travels as a
// decimal string so nothing is lost to binary64.

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "jacobi3/gate.hpp"

namespace jacobi3::io {

using json = nlohmann::ordered_json;

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw invalid_input(path + ": " + e.what());
    }
}

inline std::string as_text(const json& j, const char* what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw invalid_input(std::string(what) + " must be a decimal string");
}

inline std::string rational_text(const Rational& q) { return q.get_str(); }

/// {"degree": d, "coeffs": [[i, j, k, "p/q"], ...]}
inline TernaryForm form_from_json(const json& j) {
    if (!j.is_object() || !j.contains("degree") || !j.contains("coeffs"))
        throw invalid_input("form needs \"degree\" and \"coeffs\"");
    const int d = j.at("degree").get<int>();
    if (d < 1) throw invalid_input("form degree must be positive");
    TernaryForm f(d);
    for (const auto& term : j.at("coeffs")) {
        if (!term.is_array() || term.size() != 4) throw invalid_input("each coefficient is [i, j, k, \"p/q\"]");
        const int a = term[0].get<int>(), b = term[1].get<int>(), c = term[2].get<int>();
        if (a < 0 || b < 0 || c < 0 || a + b + c != d) throw invalid_input("exponents must be nonnegative and sum to the degree");
        f.coeff(a, b, c) += parse_rational(as_text(term[3], "coefficient"));
    }
    return f;
}

inline json form_to_json(const TernaryForm& f) {
    json coeffs = json::array();
    for (const auto& e : monomials(f.degree()))
        if (f.coeff(e) != 0) coeffs.push_back({e[0], e[1], e[2], rational_text(f.coeff(e))});
    return {{"degree", f.degree()}, {"coeffs", coeffs}};
}

inline unsigned digits_for(unsigned bits) { return bits_to_digits10(bits); }

inline json real_json(const Real& x) { return to_decimal(x, digits_for(RealTraits<Real>::bits())); }
inline json real_json(double x) { return to_decimal(x, 17); }

template <class R>
json complex_json(const Complex<R>& z) {
    return json::array({real_json(z.re), real_json(z.im)});
}

template <class R>
json matrix_json(const CMatrix<R>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

/// Square g x g matrix of [re, im] decimal strings.
inline CMatrix<Real> matrix_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw invalid_input(std::string(what) + " must be a nonempty matrix");
    const std::size_t g = j.size();
    CMatrix<Real> m(g, g);
    for (std::size_t r = 0; r < g; ++r) {
        if (!j[r].is_array() || j[r].size() != g) throw invalid_input(std::string(what) + " must be square");
        for (std::size_t c = 0; c < g; ++c) {
            const auto& z = j[r][c];
            if (!z.is_array() || z.size() != 2) throw invalid_input("matrix entries are [re, im]");
            m(r, c) = Complex<Real>(parse_real(as_text(z[0], "entry")), parse_real(as_text(z[1], "entry")));
        }
    }
    return m;
}

template <class R>
json theta_value_json(const ThetaValue<R>& v) {
    return {{"value", complex_json(v.value)}, {"error_bound", real_json(v.error_bound)}};
}

template <class R>
json quantity_json(const ModularQuantity<R>& q) {
    return {{"value", complex_json(q.value)}, {"error_bound", real_json(q.error_bound)}, {"scale", real_json(q.scale)}};
}

inline const char* zero_test_name(ZeroTest t) {
    switch (t) {
        case ZeroTest::zero: return "zero";
        case ZeroTest::nonzero: return "nonzero";
        case ZeroTest::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

template <class R>
json period_matrix_json(const PeriodMatrix<R>& pm) {
    const auto& d = pm.diagnostics;
    return {{"genus", pm.genus},
            {"Omega1", matrix_json(pm.omega1)},
            {"Omega2", matrix_json(pm.omega2)},
            {"tau", matrix_json(pm.tau)},
            {"diagnostics",
             {{"rh_check", {{"total", d.rh_total}, {"expected", d.rh_expected}, {"ok", d.rh_total == d.rh_expected}}},
              {"symmetry_residual", to_decimal(d.symmetry_residual, 6)},
              {"min_eig_im_tau", to_decimal(d.min_eig_im_tau, 17)},
              {"error_estimate", to_decimal(d.error_estimate, 6)},
              {"base_point", {to_decimal(d.base_point.real(), 17), to_decimal(d.base_point.imag(), 17)}},
              {"quadrature_nodes", d.nodes},
              {"omega1_negated", d.halves_negated}}}};
}

/// Reads {"Omega1": ..., "Omega2": ...} as written by the periods command.
inline PeriodMatrix<Real> period_matrix_from_json(const json& j) {
    if (!j.contains("Omega1") || !j.contains("Omega2")) throw invalid_input("period matrix needs Omega1 and Omega2");
    PeriodMatrix<Real> pm = make_period_matrix(matrix_from_json(j.at("Omega1"), "Omega1"), matrix_from_json(j.at("Omega2"), "Omega2"));
    if (j.contains("diagnostics") && j["diagnostics"].contains("error_estimate"))
        pm.diagnostics.error_estimate = std::stod(as_text(j["diagnostics"]["error_estimate"], "error_estimate"));
    return pm;
}

inline json calibration_json(const CalibrationConstant& c) {
    std::ostringstream unit;
    if (c.im == 0)
        unit << c.re;
    else
        unit << (c.im < 0 ? "-" : "") << "i";
    return {{"c0", unit.str()},
            {"measured", {to_decimal(c.measured.real(), 17), to_decimal(c.measured.imag(), 17)}},
            {"spread", to_decimal(c.spread, 6)},
            {"provenance", c.provenance}};
}

inline CalibrationConstant calibration_from_json(const json& j) {
    CalibrationConstant c;
    const std::string unit = as_text(j.at("c0"), "c0");
    if (unit == "1") {
        c.re = 1;
    } else if (unit == "-1") {
        c.re = -1;
    } else if (unit == "i") {
        c.re = 0;
        c.im = 1;
    } else if (unit == "-i") {
        c.re = 0;
        c.im = -1;
    } else {
        throw invalid_input("c0 must be one of 1, -1, i, -i");
    }
    if (j.contains("measured"))
        c.measured = {std::stod(as_text(j["measured"][0], "measured")), std::stod(as_text(j["measured"][1], "measured"))};
    if (j.contains("spread")) c.spread = std::stod(as_text(j["spread"], "spread"));
    if (j.contains("provenance")) c.provenance = j["provenance"].get<std::vector<std::string>>();
    return c;
}

}  // namespace jacobi3::io
