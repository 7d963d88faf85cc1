#include "oracles.hpp"
#include "totpos/polya.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cfloat>
#include <functional>
#include <random>

using namespace totpos;
using P = Polynomial<Rational>;

namespace {

// Closed-form integral of c e^{-a|x|} e^{-sx}.
double laplace_reference(const ExpPoly<double>& f, double s) {
    double total = 0.0;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        total += f.c[i] / (f.a[i] + s);
        if (f.two_sided) total += f.c[i] / (f.a[i] - s);
    }
    return total;
}

// Simpson quadrature of f(x) e^{-sx} over [-L, L].
double laplace_quadrature(const std::function<double(double)>& f, double s) {
    const int n = 400000;
    const double L = 200, h = 2 * L / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = -L + i * h;
        const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        acc += w * f(x) * std::exp(-s * x);
    }
    return acc * h / 3;
}

Matrix<double> pf_kernel(const PffFamily& f, const std::vector<double>& x, const std::vector<double>& y) {
    Matrix<double> m(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) m(i, j) = eval_pff(f, x[i] - y[j]);
    return m;
}

}  // namespace

TEST(Families, Evaluation) {
    EXPECT_EQ(eval_pff(PffFamily::lambda(Rational(1, 4)), 0.0), 0.25);
    EXPECT_EQ(eval_pff(PffFamily::lambda(), -0.1), 0.0);
    EXPECT_DOUBLE_EQ(eval_pff(PffFamily::phi(), 2.0), 2 * std::exp(-2.0));
    EXPECT_DOUBLE_EQ(eval_pff(PffFamily::m_alpha(1), -1.0), 2 * std::exp(-1.0) - std::exp(-2.0));
    EXPECT_DOUBLE_EQ(eval_pff(PffFamily::m_alpha(1), 0.0), 1.0);
    EXPECT_DOUBLE_EQ(eval_pff(PffFamily::gauss_density(0.25), 0.0), 1 / std::sqrt(M_PI));
    auto n = PffFamily::one_sided_n(Rational(1), Rational(2), Rational(5));
    EXPECT_EQ(eval_pff(n, -1.0), 0.0);
    EXPECT_DOUBLE_EQ(eval_pff(n, 0.0), 3.0 - 4.0 + 1.0);
}

TEST(Families, ParameterChecks) {
    EXPECT_THROW(PffFamily::lambda(2), std::domain_error);
    EXPECT_THROW(PffFamily::m_alpha(0), std::domain_error);
    EXPECT_THROW(PffFamily::gauss_density(-1), std::domain_error);
    EXPECT_THROW(PffFamily::one_sided_n(1.0, 1.0, 2.0), std::domain_error);
}

TEST(Laplace, MOneIsTwelveOverTheQuartic) {
    auto r = laplace(PffFamily::m_alpha(1));
    EXPECT_EQ(r.p, P({12}));
    EXPECT_EQ(r.q, P({-1, 0, 1}) * P({-4, 0, 1}));
    EXPECT_EQ(r.strip_lo, -1);
    EXPECT_EQ(r.strip_hi, 1);
}

TEST(Laplace, ElementaryTransforms) {
    auto l = laplace(PffFamily::lambda(Rational(1, 2)));
    EXPECT_EQ(l.p, P({1}));
    EXPECT_EQ(l.q, P({1, 1}));
    auto phi = laplace(PffFamily::phi());
    EXPECT_EQ(phi.q, P({1, 2, 1}));
    EXPECT_THROW(laplace(PffFamily::gauss_density(1)), std::domain_error);
}

TEST(Laplace, MatchesClosedFormAndQuadrature) {
    for (const auto& f : {PffFamily::m_alpha(Rational(1, 2)), PffFamily::m_alpha(3),
                          PffFamily::one_sided_n(Rational(1), Rational(2), Rational(5)),
                          PffFamily::one_sided_n(1.0, std::sqrt(2.0), std::sqrt(3.0))}) {
        auto ef = exp_poly_float(f);
        double amin = INFINITY;
        for (double a : ef.a) amin = std::min(amin, a);
        for (double s : {-0.3 * amin, 0.0, 0.4 * amin}) {
            const double reference = laplace_reference(ef, s);
            const double q = laplace_quadrature([&](double x) { return eval_pff(f, x); }, s);
            EXPECT_NEAR(q, reference, 1e-9 * std::abs(reference) + 1e-12) << f.name();
            if (f.a_exact || f.type == PffFamily::Type::m_alpha) {
                auto r = laplace(f);
                EXPECT_NEAR(r(Rational(s)).get_d(), reference, 1e-12 * std::abs(reference)) << f.name();
            } else {
                EXPECT_NEAR(laplace_float(f)(s), reference, 1e-12 * std::abs(reference));
            }
        }
    }
}

TEST(Laplace, IsLinear) {
    ExpPoly<Rational> f{true, {2, -1}, {1, 2}}, g{true, {Rational(1, 3)}, {Rational(5, 2)}};
    EXPECT_TRUE(laplace(f + g).same_as(laplace(f) + laplace(g)));
    ExpPoly<Rational> h{false, {1, 1}, {1, 3}}, k{false, {-2}, {1}};
    EXPECT_TRUE(laplace(h + k).same_as(laplace(h) + laplace(k)));
    EXPECT_THROW(f + h, std::invalid_argument);
}

TEST(Obstruction, FirstPowerIsAlwaysCompatible) {
    for (const auto& f : {PffFamily::m_alpha(1), PffFamily::m_alpha(Rational(2, 3)),
                          PffFamily::one_sided_n(Rational(1), Rational(2), Rational(5)),
                          PffFamily::one_sided_n(1.0, std::sqrt(2.0), std::sqrt(3.0))}) {
        auto o = power_obstruction(f, 1);
        EXPECT_EQ(o.verdict, PowerVerdict::compatible) << f.name();
        EXPECT_EQ(o.p_degree, 0);
    }
}

TEST(Obstruction, MOnePowersAreObstructedWithCertificate) {
    for (unsigned n = 2; n <= 4; ++n) {
        auto o = power_obstruction(PffFamily::m_alpha(1), n);
        EXPECT_EQ(o.verdict, PowerVerdict::obstructed);
        EXPECT_TRUE(o.certificate);
        EXPECT_TRUE(o.coprime);
        EXPECT_EQ(o.p_degree, 2 * long(n) - 2);
        EXPECT_EQ(gcd(o.exact_fn).degree(), 0);
        for (const auto& r : o.roots) EXPECT_TRUE(r.nonzero);
    }
}

TEST(Obstruction, MAlphaEndpointRatioMatchesTheProduct) {
    for (Rational alpha : {Rational(1, 2), Rational(1), Rational(2), Rational(7, 3)})
        for (unsigned n = 2; n <= 5; ++n) {
            auto o = power_obstruction(PffFamily::m_alpha(alpha), n);
            EXPECT_NEAR(*o.end_ratio, *o.end_ratio_formula, 1e-10 * std::abs(*o.end_ratio_formula));
            // Independent: evaluate the exact numerator at the two extreme poles.
            const Rational lo = Rational(n) * alpha, hi = Rational(n) * (alpha + 1);
            EXPECT_NEAR(Rational(o.exact_fn.p(lo) / o.exact_fn.p(hi)).get_d(), *o.end_ratio, 1e-12 * std::abs(*o.end_ratio));
        }
}

TEST(Obstruction, IrrationalOneSidedFamily) {
    auto f = PffFamily::one_sided_n(1.0, std::sqrt(2.0), std::sqrt(3.0));
    // gamma_n from 30-digit arithmetic.
    const double gamma[] = {-0.915921388028320474631113926519, -0.761594466885073566969216572042,
                            0.573442244671894765727603151525, 0.390565045365629981582081581071};
    for (unsigned n = 2; n <= 5; ++n) {
        auto o = power_obstruction(f, n);
        EXPECT_EQ(o.verdict, PowerVerdict::obstructed);
        EXPECT_TRUE(o.certificate);
        EXPECT_FALSE(o.exact);
        EXPECT_NEAR(*o.gamma, gamma[n - 2], 1e-12);
        EXPECT_NEAR(*o.gamma_formula, gamma[n - 2], 1e-14);
    }
}

TEST(Obstruction, ExactOneSidedFamily) {
    auto f = PffFamily::one_sided_n(Rational(1), Rational(2), Rational(5));
    auto o = power_obstruction(f, 2);
    EXPECT_EQ(o.verdict, PowerVerdict::obstructed);
    EXPECT_TRUE(o.certificate);
    EXPECT_NEAR(*o.gamma, -1.4, 1e-14);
    EXPECT_NEAR(*o.gamma_formula, -1.4, 1e-14);
}

TEST(Obstruction, RejectsCoincidentExponents) {
    auto f = PffFamily::one_sided_n(Rational(1), Rational(2), Rational(4));
    EXPECT_NO_THROW(power_obstruction(f, 2));
    EXPECT_THROW(power_obstruction(f, 3), std::domain_error);
    EXPECT_THROW(power_obstruction(PffFamily::phi(), 2), std::invalid_argument);
    EXPECT_THROW(power_obstruction(PffFamily::m_alpha(1), 0), std::invalid_argument);
}

TEST(Sequences, OneTwoOneIsPolya) {
    auto s = PfSequence::exact({1, 2, 1});
    EXPECT_EQ(pf_sequence_check(s, 4, 8).status, Status::tn);
    EXPECT_TRUE(generating_poly_pf_check({1, 2, 1}).pass);
    EXPECT_TRUE(generating_poly_pf_check({1, 3, 3, 1}).pass);
    EXPECT_FALSE(generating_poly_pf_check({1, 1, 1}).pass);
}

TEST(Sequences, GeneratingPolynomialEdgeCases) {
    auto z = generating_poly_pf_check({0, 0, 2, 3, 1});
    EXPECT_TRUE(z.pass);
    EXPECT_EQ(z.zero_multiplicity, 2u);
    EXPECT_EQ(z.distinct_negative_roots, 2);
    EXPECT_FALSE(generating_poly_pf_check({1, -1}).pass);
    EXPECT_FALSE(generating_poly_pf_check({1, 0, 1}).pass);
    EXPECT_TRUE(generating_poly_pf_check({5}).pass);
    EXPECT_THROW(generating_poly_pf_check({0, 0}), std::invalid_argument);
}

TEST(Sequences, RootCertificateAgreesWithToeplitzMinors) {
    // Products of (1 + r z) with r > 0 are Polya; a complex pair breaks it.
    std::mt19937_64 rng(40);
    std::uniform_int_distribution<int> r(1, 4);
    for (int t = 0; t < 40; ++t) {
        P p{1};
        for (int k = 0; k < 1 + t % 3; ++k) p = p * P({1, r(rng)});
        const bool bad = t % 2;
        if (bad) p = p * P({4, 1, 1});
        EXPECT_EQ(generating_poly_pf_check(p.coeffs()).pass, !bad);
        auto seq = PfSequence::exact(p.coeffs());
        const bool tn = pf_sequence_check(seq, 4, 10).holds();
        if (!bad) EXPECT_TRUE(tn);
    }
}

TEST(Sequences, DiscretizationSamplesTheFunction) {
    auto s = discretize_pff(PffFamily::lambda(), 1, -2, 2);
    ASSERT_EQ(s.f.size(), 5u);
    EXPECT_EQ(s.f[0], 0.0);
    EXPECT_EQ(s.f[1], 0.0);
    EXPECT_EQ(s.f[2], 1.0);
    EXPECT_EQ(s.f[3], std::exp(-1.0));
    EXPECT_EQ(s.f[4], std::exp(-2.0));

    auto m = PffFamily::m_alpha(1);
    auto t = discretize_pff(m, 2, -4, 4);
    for (long n = -4; n <= 4; ++n) {
        EXPECT_EQ(t.value(n), eval_pff(m, n / 2.0));
        EXPECT_EQ(t.value(n), t.value(-n));
    }
}

TEST(Sequences, SquaredMOneFailsAtHalfSteps) {
    auto m = PffFamily::m_alpha(1);
    // Truncation itself breaks the property once the window nears the support.
    EXPECT_TRUE(pf_sequence_check(discretize_pff(m, 2, -12, 12), 4, 10).holds());
    EXPECT_FALSE(pf_sequence_check(discretize_pff(m, 2, -5, 5), 4, 8).holds());
    auto wide = pf_sequence_check(discretize_pff(m, 2, -12, 12, 2), 4, 10);
    auto v = pf_sequence_check(discretize_pff(m, 2, -12, 12, 2), 4, 6);
    EXPECT_EQ(wide.witness, v.witness);
    ASSERT_FALSE(v.holds());
    EXPECT_FALSE(v.ambiguous);
    EXPECT_EQ(v.witness->rows, (std::vector<std::size_t>{0, 1, 2, 3}));
    EXPECT_EQ(v.witness->cols, (std::vector<std::size_t>{2, 3, 4, 5}));
    // Same minor from direct samples a_k = M_1(k/2)^2, T_ij = a_{i-j}.
    Matrix<double> t(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) t(i, j) = std::pow(eval_pff(m, (double(i) - double(j + 2)) / 2), 2);
    EXPECT_NEAR(oracle::cofactor_det(t), -5.881762885245460e-07, 1e-15);
    EXPECT_NEAR(v.value->as_double(), -5.881762885245460e-07, 1e-15);
}

TEST(Sequences, ToeplitzWindowNeedsRoom) {
    EXPECT_THROW(pf_sequence_check(PfSequence::exact({1, 1}), 4, 3), std::invalid_argument);
    EXPECT_THROW(PfSequence::exact({0, 0}), std::invalid_argument);
}

TEST(Functions, SampledKernelsAreTotallyNonnegative) {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<PffFamily> fams{PffFamily::m_alpha(Rational(1, 2)), PffFamily::m_alpha(2), PffFamily::phi(),
                                PffFamily::one_sided_n(Rational(1), Rational(2), Rational(5)),
                                PffFamily::gauss_density(0.5)};
    for (Rational d : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)})
        fams.push_back(PffFamily::lambda(d));
    for (const auto& f : fams)
        for (int t = 0; t < 30; ++t) {
            const std::size_t n = 2 + t % 4;
            std::vector<double> x(n), y(n);
            for (auto& v : x) v = u(rng);
            for (auto& v : y) v = u(rng);
            std::sort(x.begin(), x.end());
            std::sort(y.begin(), y.end());
            if (t % 3 == 0) y = x;
            CheckOptions opt;
            opt.gate = FloatGate::certified;
            opt.entry_error = 16 * DBL_EPSILON;
            auto v = check(RationalMatrix(pf_kernel(f, x, y)), std::min<std::size_t>(n, 4), false, opt);
            ASSERT_TRUE(v.holds()) << f.name() << " trial " << t;
        }
}

TEST(Jain, PositiveSemidefiniteExactlyAtIntegerPowers) {
    for (double a : {0.0, 1.0, 2.0, 3.0, 4.0}) EXPECT_TRUE(cosine_jain(5, M_PI / 10, a).psd) << a;
    // Minimum eigenvalues from an independent symmetric eigensolver run.
    const std::pair<double, double> negative[] = {
        {0.5, -0.031938123060961186}, {1.5, -0.0016710399664816673}, {2.5, -6.1526434683332454e-05}};
    for (auto [a, lo] : negative) {
        auto r = cosine_jain(5, M_PI / 10, a);
        EXPECT_FALSE(r.psd);
        EXPECT_NEAR(r.min_eigenvalue, lo, 1e-12);
    }
}

TEST(Jain, TwoByTwoIsTotallyPositive) {
    auto r = cosine_jain(2, 0.7, 1);
    EXPECT_TRUE(r.psd);
    EXPECT_TRUE(r.tn.holds());
    EXPECT_NEAR(r.min_minor2, std::sin(0.7) * std::sin(0.7), 1e-15);
}

TEST(Jain, CosineKernelHasRankTwo) {
    for (std::size_t n = 3; n <= 6; ++n) {
        auto r = cosine_jain(n, M_PI / 16, 1);
        EXPECT_LT(r.max_abs_minor3, 1e-10);
        EXPECT_GT(r.min_minor2, 0);
        EXPECT_LT(r.max_rank2_error, 1e-14);
    }
}

TEST(Jain, AngleMustBeInRange) {
    EXPECT_THROW(cosine_jain(5, M_PI / 8, 1), std::domain_error);
    EXPECT_THROW(cosine_jain(5, 0, 1), std::domain_error);
    EXPECT_THROW(cosine_jain(5, 0.1, -1), std::domain_error);
}

TEST(MomentHankel, OneAtomIsRankOne) {
    auto k = moment_hankel({2}, {1}, {0, 1, 2});
    EXPECT_TRUE(check(k.matrix(), 3, false).holds());
    EXPECT_EQ(k(1, 2), 8);
    EXPECT_NEAR(lu_det(k.values().submatrix({0, 1}, {0, 1})), 0, 1e-14);
}

TEST(MomentHankel, TwoAtomsGiveTheMomentMatrix) {
    auto k = moment_hankel({1, 0.5}, {1, 1}, {0, 1, 2, 3});
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(k(i, j), 1 + std::ldexp(1.0, -int(i + j)));
}

TEST(MomentHankel, ThreeAtomsHaveRankThree) {
    auto k = moment_hankel({0.5, 1, 2}, {1, 2, 1}, {0, 1, 2, 3});
    EXPECT_TRUE(check(k.matrix(), 4, false).holds());
    // The exact determinant of the stored grid vanishes up to rounding of the entries.
    const double h = hadamard_bound(k.values());
    EXPECT_LT(std::abs(lu_det(k.values())), 1e-12 * h);
    EXPECT_THROW(moment_hankel({1, 1}, {1, 1}, {0}), std::domain_error);
}
