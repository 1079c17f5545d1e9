#pragma once

#include <array>

#include "jacobi3/errors.hpp"
#include "jacobi3/rational.hpp"
#include "jacobi3/resultant.hpp"
#include "jacobi3/ternary_form.hpp"

namespace jacobi3 {

/// An invariant value with its degree in the coefficients of F and its weight.
/// For ternary forms of degree d the two satisfy d * degree = 3 * weight.
struct InvariantValue {
    Rational value;
    int degree = 0;
    int weight = 0;
};

/// w = d * degree / 3 for an invariant of ternary d-ics.
inline int invariant_weight(int d, int degree) {
    if (d < 1 || degree < 0) throw invalid_input("invariant_weight: nonpositive degree");
    if ((d * degree) % 3 != 0) throw invalid_input("invariant_weight: 3 does not divide d * degree");
    return d * degree / 3;
}

/// Weight of the wedge of the classical differential basis, C(d, 3).
inline int basis_weight(int d) {
    if (d < 3) throw invalid_input("basis_weight: plane curves of degree < 3 have no differentials");
    return d * (d - 1) * (d - 2) / 6;
}

/// d^((d-1)^3 + 1)/d), the resultant-to-discriminant constant for n = 3.
inline Rational discriminant_constant_general(int d) {
    const long e = (static_cast<long>(d - 1) * (d - 1) * (d - 1) + 1);
    if (e % d != 0) throw inconsistency_error("non-integral discriminant exponent");
    return pow(Rational(d), e / d);
}

/// d^((d-1)(d-2)+1), the ternary specialization.
inline Rational discriminant_constant_ternary(int d) { return pow(Rational(d), (d - 1) * (d - 2) + 1); }

/// Disc F = Res(F_x, F_y, F_z) / d^((d-1)(d-2)+1); zero iff C_F is singular.
inline InvariantValue discriminant(const TernaryForm& f) {
    const int d = f.degree();
    if (d < 2 || d > 6) throw invalid_input("discriminant supports degrees 2..6");
    if (f.is_zero()) throw invalid_input("discriminant of the zero form");
    const TernaryForm q1 = f.partial(0), q2 = f.partial(1), q3 = f.partial(2);
    InvariantValue out;
    out.degree = 3 * (d - 1) * (d - 1);
    out.weight = d * (d - 1) * (d - 1);
    if (q1.is_zero() || q2.is_zero() || q3.is_zero()) {
        // F does not involve some variable: the curve is a cone, hence singular.
        out.value = 0;
        return out;
    }
    out.value = macaulay_resultant(q1, q2, q3) / discriminant_constant_ternary(d);
    return out;
}

/// Symmetric matrix [[a1, b3, b2], [b3, a2, b1], [b2, b1, a3]].
struct CianiMatrix {
    Rational a1, a2, a3, b1, b2, b3;

    Rational c1() const { return a2 * a3 - b1 * b1; }
    Rational c2() const { return a1 * a3 - b2 * b2; }
    Rational c3() const { return a1 * a2 - b3 * b3; }
    Rational det() const { return a1 * a2 * a3 + 2 * b1 * b2 * b3 - a1 * b1 * b1 - a2 * b2 * b2 - a3 * b3 * b3; }

    static CianiMatrix identity() { return {1, 1, 1, 0, 0, 0}; }
    static CianiMatrix diagonal(const Rational& a1, const Rational& a2, const Rational& a3) {
        return {a1, a2, a3, 0, 0, 0};
    }
};

/// F_m(x, y, z) = G_m(x^2, y^2, z^2).
inline TernaryForm ciani_form(const CianiMatrix& m) {
    TernaryForm f(4);
    f.coeff(4, 0, 0) = m.a1;
    f.coeff(0, 4, 0) = m.a2;
    f.coeff(0, 0, 4) = m.a3;
    f.coeff(0, 2, 2) = 2 * m.b1;
    f.coeff(2, 0, 2) = 2 * m.b2;
    f.coeff(2, 2, 0) = 2 * m.b3;
    return f;
}

/// Closed form 2^40 a1 a2 a3 (c1 c2 c3)^2 det(m)^4.
inline Rational ciani_discriminant(const CianiMatrix& m) {
    const Rational c = m.c1() * m.c2() * m.c3();
    return Rational(pow2(40)) * m.a1 * m.a2 * m.a3 * c * c * pow(m.det(), 4);
}

inline TernaryForm fermat_quartic() { return ciani_form(CianiMatrix::identity()); }

}  // namespace jacobi3
