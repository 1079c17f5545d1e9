#include <gtest/gtest.h>

#include <random>

#include "jacobi3/discriminant.hpp"
#include "jacobi3/resultant.hpp"
#include "jacobi3/ternary_form.hpp"
#include "test_support.hpp"

using namespace jacobi3;

TEST(TernaryForm, MonomialOrderIsDescendingLex) {
    const auto m = monomials(4);
    ASSERT_EQ(m.size(), 15u);
    EXPECT_EQ(m.front(), (Exponent{4, 0, 0}));
    EXPECT_EQ(m[1], (Exponent{3, 1, 0}));
    EXPECT_EQ(m[2], (Exponent{3, 0, 1}));
    EXPECT_EQ(m.back(), (Exponent{0, 0, 4}));
    for (std::size_t i = 0; i < m.size(); ++i) EXPECT_EQ(monomial_index(4, m[i][0], m[i][1]), i);
}

TEST(TernaryForm, RejectsMismatchedExponent) {
    TernaryForm f(4);
    EXPECT_THROW(f.coeff(1, 1, 1), invalid_input);
}

TEST(TernaryForm, PartialsDropOneDegree) {
    const TernaryForm f = fermat_quartic();
    for (int v = 0; v < 3; ++v) EXPECT_EQ(f.partial(v).degree(), 3);
    EXPECT_EQ(f.partial(0).coeff(3, 0, 0), 4);
}

TEST(Gl3Action, ScalarMatrixScalesByInverseFourthPower) {
    std::mt19937_64 rng(7);
    const TernaryForm f = test::random_quartic(rng, 5);
    const Rational lambda(3, 2);
    const TernaryForm g = gl3_act(GL3Matrix::scalar(lambda), f);
    EXPECT_EQ(g, f * pow(lambda, -4));
}

TEST(Gl3Action, PermutationFixesFermat) {
    GL3Matrix::Entries e{};
    e[0][1] = 1;
    e[1][2] = 1;
    e[2][0] = 1;
    const GL3Matrix perm(e);
    EXPECT_EQ(gl3_act(perm, fermat_quartic()), fermat_quartic());
}

TEST(Gl3Action, GroupIdentity) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const TernaryForm f = test::random_quartic(rng, 4);
        const GL3Matrix u = test::random_gl3(rng);
        EXPECT_EQ(gl3_act(u, gl3_act(u.inverse(), f)), f);
    }
}

TEST(Gl3Action, SingularMatrixRejected) {
    GL3Matrix::Entries e{};
    e[0][0] = 1;
    e[1][1] = 1;
    EXPECT_THROW(GL3Matrix{e}, invalid_input);
}

TEST(Resultant, LinearFormsGiveDeterminant) {
    const auto x = TernaryForm::linear(1, 0, 0), y = TernaryForm::linear(0, 1, 0), z = TernaryForm::linear(0, 0, 1);
    EXPECT_EQ(macaulay_resultant(x, y, z), 1);
    const auto a = TernaryForm::linear(2, 1, 0), b = TernaryForm::linear(0, 3, 1), c = TernaryForm::linear(1, 0, 5);
    // det [[2,1,0],[0,3,1],[1,0,5]] = 2*15 - 1*(0-1) = 31
    EXPECT_EQ(macaulay_resultant(a, b, c), 31);
}

TEST(Resultant, NormalizationOnPurePowers) {
    for (int d1 = 1; d1 <= 4; ++d1)
        for (int d2 = 1; d2 <= 4; ++d2)
            for (int d3 = 1; d3 <= 4; ++d3) {
                const auto r = macaulay_resultant(TernaryForm::monomial(d1, 0, 0), TernaryForm::monomial(0, d2, 0),
                                                  TernaryForm::monomial(0, 0, d3));
                EXPECT_EQ(r, 1) << d1 << d2 << d3;
            }
}

TEST(Resultant, ScaledCubesMatchMultihomogeneity) {
    // Res(l1 f1, l2 f2, l3 f3) = l1^(d2 d3) l2^(d1 d3) l3^(d1 d2) Res; with l = 4, d = 3: 4^27 = 2^54.
    const Rational expected(pow2(54));
    EXPECT_EQ(macaulay_resultant(TernaryForm::monomial(3, 0, 0, 4), TernaryForm::monomial(0, 3, 0, 4),
                                 TernaryForm::monomial(0, 0, 3, 4)),
              expected);
}

TEST(Resultant, MultihomogeneityOnRandomForms) {
    std::mt19937_64 rng(21);
    const TernaryForm f1 = test::random_form(rng, 2, 3), f2 = test::random_form(rng, 2, 3),
                      f3 = test::random_form(rng, 1, 3);
    const Rational base = macaulay_resultant(f1, f2, f3);
    // scaling f1 by 5 multiplies Res by 5^(d2 d3) = 5^2
    EXPECT_EQ(macaulay_resultant(f1 * Rational(5), f2, f3), base * 25);
    EXPECT_EQ(macaulay_resultant(f1, f2, f3 * Rational(2)), base * 16);
}

TEST(Resultant, SmallCaseAgreesWithSylvesterOracle) {
    // Three forms of the shape (a x + b y + c z), quadric, linear: compare against
    // the brute-force oracle that eliminates z through the linear form.
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const TernaryForm q1 = test::random_form(rng, 2, 4), q2 = test::random_form(rng, 2, 4);
        TernaryForm l = test::random_form(rng, 1, 4);
        if (l.coeff(0, 0, 1) == 0) l.coeff(0, 0, 1) = 1;
        const Rational res = macaulay_resultant(q1, q2, l);
        EXPECT_EQ(res, test::resultant_with_linear_oracle(q1, q2, l));
    }
}

TEST(Resultant, VanishingExtraneousMinorAgreesWithOracle) {
    // sparse inputs whose Macaulay extraneous minor is zero
    TernaryForm f1(3), f2(3), l(1);
    f1.coeff(3, 0, 0) = 1;
    f1.coeff(0, 3, 0) = 1;
    f2.coeff(2, 0, 1) = 1;
    f2.coeff(1, 1, 1) = -1;
    l.coeff(1, 0, 0) = 1;
    l.coeff(0, 0, 1) = 1;
    Rational raw;
    ASSERT_FALSE(detail::macaulay_quotient({&f1, &f2, &l}, raw));
    const Rational res = macaulay_resultant(f1, f2, l);
    EXPECT_EQ(res, test::resultant_with_linear_oracle(f1, f2, l));
    EXPECT_EQ(res, 2);

    TernaryForm g1(3), g2(3), m(1);
    g1.coeff(2, 0, 1) = 1;
    g1.coeff(1, 2, 0) = 1;
    g2.coeff(3, 0, 0) = 1;
    g2.coeff(0, 2, 1) = -1;
    g2.coeff(0, 0, 3) = -1;
    m.coeff(1, 0, 0) = -1;
    m.coeff(0, 1, 0) = 1;
    m.coeff(0, 0, 1) = 1;
    ASSERT_FALSE(detail::macaulay_quotient({&g1, &g2, &m}, raw));
    EXPECT_EQ(macaulay_resultant(g1, g2, m), test::resultant_with_linear_oracle(g1, g2, m));
}

TEST(Discriminant, PartialsWithCommonFactorGiveZero) {
    // (x^2 + y^2)^2 + z^4: all partials vanish on x^2 + y^2 = z = 0
    TernaryForm f(4);
    f.coeff(4, 0, 0) = 1;
    f.coeff(2, 2, 0) = 2;
    f.coeff(0, 4, 0) = 1;
    f.coeff(0, 0, 4) = 1;
    EXPECT_EQ(discriminant(f).value, 0);
}

TEST(Resultant, CommonRootForcesZero) {
    // all three forms vanish at (1:1:1)
    TernaryForm a(2), b(2), c(2);
    a.coeff(2, 0, 0) = 1;
    a.coeff(0, 2, 0) = -1;
    b.coeff(1, 1, 0) = 1;
    b.coeff(0, 0, 2) = -1;
    c.coeff(0, 1, 1) = 2;
    c.coeff(2, 0, 0) = -1;
    c.coeff(0, 2, 0) = -1;
    EXPECT_EQ(macaulay_resultant(a, b, c), 0);
}

TEST(Resultant, ZeroFormRejected) {
    EXPECT_THROW(macaulay_resultant(TernaryForm(2), TernaryForm::monomial(0, 1, 0), TernaryForm::monomial(0, 0, 1)),
                 invalid_input);
}

TEST(Discriminant, FermatIsTwoToTheForty) {
    const auto d = discriminant(fermat_quartic());
    EXPECT_EQ(d.value, Rational(pow2(40)));
    EXPECT_EQ(d.degree, 27);
    EXPECT_EQ(d.weight, 36);
    EXPECT_EQ(d.degree * 4, 3 * d.weight);
}

TEST(Discriminant, SingularPointForcesZero) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        TernaryForm f = test::random_quartic(rng, 3);
        f.coeff(0, 0, 4) = 0;
        f.coeff(1, 0, 3) = 0;
        f.coeff(0, 1, 3) = 0;
        EXPECT_EQ(discriminant(f).value, 0);
    }
}

TEST(Discriminant, HomogeneityDegree27) {
    std::mt19937_64 rng(9);
    const TernaryForm f = test::random_quartic(rng, 2);
    const Rational lambda(-2, 3);
    EXPECT_EQ(discriminant(f * lambda).value, pow(lambda, 27) * discriminant(f).value);
}

TEST(Discriminant, ConicAndCubic) {
    // conic x^2 + y^2 + z^2: Res(2x, 2y, 2z) / 2^1 = 8 / 2 = 4
    TernaryForm c(2);
    c.coeff(2, 0, 0) = 1;
    c.coeff(0, 2, 0) = 1;
    c.coeff(0, 0, 2) = 1;
    EXPECT_EQ(discriminant(c).value, 4);
    // nodal cubic y^2 z - x^3 - x^2 z is singular
    TernaryForm n(3);
    n.coeff(0, 2, 1) = 1;
    n.coeff(3, 0, 0) = -1;
    n.coeff(2, 0, 1) = -1;
    EXPECT_EQ(discriminant(n).value, 0);
}

TEST(Discriminant, DegreeRangeEnforced) {
    EXPECT_THROW(discriminant(TernaryForm::linear(1, 1, 1)), invalid_input);
    EXPECT_THROW(discriminant(TernaryForm::monomial(7, 0, 0)), invalid_input);
}

TEST(Discriminant, NormalizationConstantsAgreeForTernaryForms) {
    for (int d = 2; d <= 6; ++d) EXPECT_EQ(discriminant_constant_general(d), discriminant_constant_ternary(d)) << d;
}

TEST(InvariantWeight, KnownValues) {
    EXPECT_EQ(invariant_weight(4, 27), 36);
    EXPECT_EQ(invariant_weight(4, 54), 72);
    EXPECT_EQ(basis_weight(4), 4);
    EXPECT_THROW(invariant_weight(4, 5), invalid_input);
}

TEST(Ciani, FormReadOff) {
    EXPECT_EQ(ciani_form(CianiMatrix::identity()), fermat_quartic());
    EXPECT_TRUE(ciani_form(CianiMatrix{0, 0, 0, 0, 0, 0}).is_zero());
    const TernaryForm diag = ciani_form(CianiMatrix::diagonal(2, 3, 5));
    EXPECT_EQ(diag.coeff(4, 0, 0), 2);
    EXPECT_EQ(diag.coeff(0, 4, 0), 3);
    EXPECT_EQ(diag.coeff(0, 0, 4), 5);
    EXPECT_EQ(diag.coeff(2, 2, 0), 0);
}

TEST(Ciani, ClosedFormValues) {
    EXPECT_EQ(ciani_discriminant(CianiMatrix::identity()), Rational(pow2(40)));
    EXPECT_EQ(ciani_discriminant(CianiMatrix{1, 1, 1, 1, 1, 1}), 0);
    const Rational expected = Rational(pow2(40)) * 30 * Rational(900 * 900) * pow(Rational(30), 4);
    EXPECT_EQ(ciani_discriminant(CianiMatrix::diagonal(2, 3, 5)), expected);
    EXPECT_EQ(discriminant(ciani_form(CianiMatrix::diagonal(2, 3, 5))).value, expected);
}

TEST(Ciani, ClosedFormMatchesMacaulayOnRandomMatrices) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        const CianiMatrix m = test::random_ciani(rng, 4);
        EXPECT_EQ(ciani_discriminant(m), discriminant(ciani_form(m)).value);
    }
}

TEST(Discriminant, EquivariantUnderRandomIntegerMatrices) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const TernaryForm f = test::random_quartic(rng, 2);
        const GL3Matrix u = test::random_gl3(rng);
        const Rational df = discriminant(f).value;
        // inverse action (u . F)(x) = F(u^-1 x): Disc(u . F) = det(u)^-36 Disc(F)
        EXPECT_EQ(discriminant(gl3_act(u, f)).value, pow(u.det(), -36) * df);
        // substitution x -> u x: Disc(F o u) = det(u)^36 Disc(F)
        EXPECT_EQ(discriminant(substitute(u, f)).value, pow(u.det(), 36) * df);
    }
}
