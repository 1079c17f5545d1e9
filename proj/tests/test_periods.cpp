#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "jacobi3/homology.hpp"
#include "jacobi3/periods.hpp"
#include "test_support.hpp"

using namespace jacobi3;

namespace {

AffineCurve conic_double_cover() {
    // y^2 = x^2 - 1, branched over x = 1 and x = -1 only
    AffineCurve c;
    c.poly.set(0, 2, Rational(1));
    c.poly.set(2, 0, Rational(-1));
    c.poly.set(0, 0, Rational(1));
    c.kind = "test";
    return c;
}

AffineCurve x8_minus_one() { return hyperelliptic_curve(UPoly({-1, 0, 0, 0, 0, 0, 0, 0, 1})); }

AffineCurve degree_seven() { return hyperelliptic_curve(UPoly({1, 2, 0, 0, 0, 0, 0, 1})); }

TernaryForm klein_quartic() {
    TernaryForm f(4);
    f.coeff(3, 1, 0) = 1;
    f.coeff(0, 3, 1) = 1;
    f.coeff(1, 0, 3) = 1;
    return f;
}

std::vector<AffineCurve> structural_curves() {
    std::vector<AffineCurve> out{x8_minus_one(), degree_seven(), quartic_curve(fermat_quartic()),
                                 quartic_curve(ciani_form(CianiMatrix::diagonal(2, 3, 5))),
                                 quartic_curve(klein_quartic())};
    std::mt19937_64 rng(7);
    for (int i = 0; i < 3; ++i) out.push_back(quartic_curve(test::random_smooth_quartic(rng, 3)));
    return out;
}

bool is_transposition(const Permutation& p) {
    int moved = 0;
    for (std::size_t i = 0; i < p.size(); ++i) moved += p[i] != static_cast<int>(i);
    return moved == 2 && cycle_count(p) == static_cast<int>(p.size()) - 1;
}

template <class R>
double weight18_modulus(const PeriodMatrix<R>& pm) {
    const auto p = chi_product(pm.siegel());
    return to_double(abs(p.value)) / std::pow(to_double(abs(determinant(pm.omega2))), 18);
}

}  // namespace

TEST(Polynomial, InterpolationRecoversCubic) {
    const UPoly p({3, -1, 0, Rational(2, 7)});
    std::vector<Rational> xs, ys;
    for (int k = -2; k <= 1; ++k) {
        xs.emplace_back(k);
        ys.push_back(p.evaluate(Rational(k)));
    }
    const UPoly q = interpolate(xs, ys);
    EXPECT_EQ(q.coeffs(), p.coeffs());
}

TEST(Polynomial, SquarefreePartDropsRepeatedFactor) {
    // (x - 1)^2 (x + 2)
    const UPoly p = UPoly({-1, 1}) * UPoly({-1, 1}) * UPoly({2, 1});
    EXPECT_FALSE(is_squarefree(p));
    const UPoly q = squarefree_part(p);
    EXPECT_EQ(q.degree(), 2);
    EXPECT_EQ(q.evaluate(Rational(1)), 0);
    EXPECT_EQ(q.evaluate(Rational(-2)), 0);
    EXPECT_TRUE(is_squarefree(q));
}

TEST(Polynomial, DiscriminantOfQuadratic) {
    // a x^2 + b x + c has discriminant b^2 - 4 a c
    EXPECT_EQ(discriminant(UPoly({5, 3, 2})), Rational(9 - 40));
}

TEST(Polynomial, YDiscriminantAgreesWithFiberDiscriminants) {
    std::mt19937_64 rng(2);
    const AffineCurve c = quartic_curve(test::random_smooth_quartic(rng, 3));
    const UPoly d = y_discriminant(c.poly);
    EXPECT_LE(d.degree(), 12);
    for (const Rational x : {Rational(7, 3), Rational(-11, 5), Rational(40)})
        EXPECT_EQ(d.evaluate(x), discriminant(c.poly.at_x(x)));
}

TEST(Polynomial, RootsOfUnity) {
    std::vector<std::complex<double>> c(9, 0.0);
    c[0] = -1;
    c[8] = 1;
    const auto roots = roots_double(c);
    ASSERT_EQ(roots.size(), 8u);
    for (const auto& z : roots) {
        EXPECT_NEAR(std::abs(z), 1.0, 1e-13);
        EXPECT_LT(std::abs(std::pow(z, 8) - 1.0), 1e-12);
    }
}

TEST(Quadrature, GaussRuleIsExactOnPolynomials) {
    PrecisionScope scope(212);
    const int n = 20;
    const auto& rule = gauss_legendre<Real>(n);
    ASSERT_EQ(rule.nodes.size(), static_cast<std::size_t>(n));
    for (int k = 0; k < 2 * n; ++k) {
        Real sum = 0;
        for (int i = 0; i < n; ++i) sum += rule.weights[i] * pow(rule.nodes[i], k);
        const Real exact = k % 2 ? Real(0) : Real(2) / Real(k + 1);
        EXPECT_LT(to_double(abs(sum - exact)), 1e-60) << "degree " << k;
    }
}

TEST(Curve, ClassicalDifferentialsForQuartic) {
    const auto diffs = classical_differentials(fermat_quartic());
    ASSERT_EQ(diffs.size(), 3u);
    EXPECT_EQ(diffs[0], TernaryForm::monomial(1, 0, 0));
    EXPECT_EQ(diffs[1], TernaryForm::monomial(0, 1, 0));
    EXPECT_EQ(diffs[2], TernaryForm::monomial(0, 0, 1));
}

TEST(Curve, SingularInputsRejected) {
    TernaryForm f(4);  // (x^2 + y^2)^2 + z^4 is singular where x^2 + y^2 = z = 0
    f.coeff(4, 0, 0) = 1;
    f.coeff(2, 2, 0) = 2;
    f.coeff(0, 4, 0) = 1;
    f.coeff(0, 0, 4) = 1;
    EXPECT_THROW(quartic_curve(f), invalid_input);
    // (x - 1)^2 (x^6 + 3) is not squarefree
    EXPECT_THROW(hyperelliptic_curve(UPoly({-1, 1}) * UPoly({-1, 1}) * UPoly({3, 0, 0, 0, 0, 0, 1})), invalid_input);
    EXPECT_THROW(hyperelliptic_curve(UPoly({1, 0, 0, 0, 0, 1})), invalid_input);
}

TEST(Curve, InadmissibleProjectionGetsChartChange) {
    const AffineCurve c = quartic_curve(klein_quartic());
    EXPECT_NE(c.chart_change.entries(), GL3Matrix::identity().entries());
    EXPECT_EQ(c.chart_change.det(), 1);
    EXPECT_EQ(c.sheets(), 4);
    EXPECT_EQ(quartic_curve(fermat_quartic()).chart_change.entries(), GL3Matrix::identity().entries());
}

TEST(Monodromy, ConicCoverHasTwoTranspositions) {
    const auto md = monodromy(conic_double_cover());
    ASSERT_EQ(md.branch_points.size(), 2u);
    std::vector<double> re;
    for (const auto& b : md.branch_points) {
        EXPECT_NEAR(b.imag(), 0.0, 1e-12);
        re.push_back(b.real());
    }
    std::sort(re.begin(), re.end());
    EXPECT_NEAR(re[0], -1.0, 1e-12);
    EXPECT_NEAR(re[1], 1.0, 1e-12);
    for (const auto& s : md.sigma) EXPECT_TRUE(is_transposition(s));
    EXPECT_TRUE(is_identity(md.sigma_infinity));
    EXPECT_EQ(md.genus(), 0);
}

TEST(Monodromy, FermatHasFourFourCycles) {
    const auto md = monodromy(quartic_curve(fermat_quartic()));
    ASSERT_EQ(md.branch_points.size(), 4u);
    for (const auto& b : md.branch_points) EXPECT_NEAR(std::abs(std::pow(b, 4) + 1.0), 0.0, 1e-12);
    for (const auto& s : md.sigma) EXPECT_EQ(cycle_count(s), 1);
    EXPECT_TRUE(is_identity(md.sigma_infinity));
    EXPECT_EQ(md.ramification_total(), 12);
}

TEST(Monodromy, StructuralInvariantsOnTestCurves) {
    for (const auto& c : structural_curves()) {
        const auto md = monodromy(c);
        EXPECT_TRUE(md.transitive());
        Permutation prod(md.sheets);
        std::iota(prod.begin(), prod.end(), 0);
        for (const auto& s : md.sigma) prod = compose(prod, s);
        EXPECT_TRUE(is_identity(compose(prod, md.sigma_infinity)));
        EXPECT_EQ(md.ramification_total(), c.kind == "quartic" ? 12 : 8) << c.kind;
        EXPECT_EQ(md.genus(), 3);
        if (c.kind == "quartic") {
            EXPECT_TRUE(is_identity(md.sigma_infinity));
        }
    }
}

TEST(Monodromy, RandomQuarticHasTwelveSimpleBranchPoints) {
    std::mt19937_64 rng(19);
    const auto md = monodromy(quartic_curve(test::random_smooth_quartic(rng, 3)));
    EXPECT_EQ(md.branch_points.size(), 12u);
    for (const auto& s : md.sigma) EXPECT_TRUE(is_transposition(s));
}

TEST(Homology, IntersectionReducesToStandardForm) {
    for (const auto& c : structural_curves()) {
        const auto md = monodromy(c);
        const auto hb = homology_symplectic_basis(md);
        EXPECT_EQ(hb.genus, 3);
        EXPECT_EQ(hb.fundamental.size(), md.sigma.size() * md.sheets - md.sheets + 1);
        EXPECT_EQ(symplectic_form(md, hb), SymplecticMatrix::standard_j(3)) << c.kind;
    }
}

TEST(Homology, HyperellipticRankIsSix) {
    const auto md = monodromy(x8_minus_one());
    ASSERT_EQ(md.branch_points.size(), 8u);
    for (const auto& s : md.sigma) EXPECT_TRUE(is_transposition(s));
    const auto hb = homology_symplectic_basis(md);
    EXPECT_EQ(hb.a.size() + hb.b.size(), 6u);
}

TEST(Homology, ReductionRejectsNonUnimodularForm) {
    IntMatrix k(2, 2);
    k(0, 1) = 2;
    k(1, 0) = -2;
    EXPECT_THROW(symplectic_reduction(k), inconsistency_error);
}

TEST(Periods, RiemannRelationsOnTestCurves) {
    for (const auto& c : structural_curves()) {
        const auto pm = periods<double>(c);
        EXPECT_LT(pm.diagnostics.symmetry_residual, 1e-9) << c.kind;
        EXPECT_GT(pm.diagnostics.min_eig_im_tau, 0.0);
        EXPECT_EQ(pm.diagnostics.rh_total, pm.diagnostics.rh_expected);
        EXPECT_LT(pm.diagnostics.error_estimate, 1e-9);
    }
}

TEST(Periods, HighPrecisionAgreesWithDouble) {
    const auto c = quartic_curve(fermat_quartic());
    const auto pd = periods<double>(c);
    PrecisionScope scope(128);
    const auto ph = periods<Real>(c);
    EXPECT_LT(ph.diagnostics.symmetry_residual, std::ldexp(1.0, -64));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const auto z = to_std(ph.tau(i, j));
            EXPECT_LT(std::abs(z - pd.tau(i, j).re - std::complex<double>(0, 1) * pd.tau(i, j).im), 1e-11);
        }
}

TEST(Periods, BasePointDoesNotChangeWeight18Modulus) {
    std::mt19937_64 rng(23);
    for (const auto& c : {quartic_curve(fermat_quartic()), quartic_curve(test::random_smooth_quartic(rng, 2))}) {
        PeriodOptions other;
        other.monodromy.base_choice = 1;
        const auto p0 = periods<double>(c);
        const auto p1 = periods<double>(c, other);
        EXPECT_NE(p0.diagnostics.base_point, p1.diagnostics.base_point);
        const double a = weight18_modulus(p0), b = weight18_modulus(p1);
        EXPECT_LT(std::abs(a - b) / a, 1e-6);
    }
}

TEST(Periods, ScalingLeavesTauFixed) {
    const auto pm = periods<double>(quartic_curve(ciani_form(CianiMatrix::diagonal(2, 3, 5))));
    const auto scaled = scale_periods(pm, Complex<double>(0.3, -1.7));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_LT(to_double(abs(scaled.tau(i, j) - pm.tau(i, j))), 1e-12);
    EXPECT_THROW(scale_periods(pm, Complex<double>(0.0, 0.0)), invalid_input);
}

TEST(Periods, RowTransformScalesDeterminant) {
    const auto pm = periods<double>(quartic_curve(fermat_quartic()));
    CMatrix<double> m(3, 3);
    m(0, 0) = 2;
    m(0, 1) = 1;
    m(1, 1) = 3;
    m(2, 0) = -1;
    m(2, 2) = 1;  // det = 6
    const auto t = transform_rows(pm, m);
    const auto ratio = determinant(t.omega2) / determinant(pm.omega2);
    EXPECT_LT(to_double(abs(ratio - Complex<double>(6.0))), 1e-11);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_LT(to_double(abs(t.tau(i, j) - pm.tau(i, j))), 1e-11);
}

TEST(Periods, DifferentialCountMustMatchGenus) {
    AffineCurve c = conic_double_cover();
    BiPoly one;
    one.set(0, 0, Rational(1));
    c.numerators.push_back(one);
    EXPECT_THROW(periods<double>(c), invalid_input);
}
