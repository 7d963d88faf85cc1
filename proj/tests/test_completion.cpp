#include "totpos/completion.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace totpos;

namespace {

double round_trip(const VandermondeEmbedding& e, const Matrix<double>& a) {
    const std::size_t r[2] = {e.i1, e.i2}, c[2] = {e.j1, e.j2};
    double err = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) err = std::max(err, std::abs(e.matrix(r[i], c[j]) - a(i, j)) / a(i, j));
    return err;
}

// The materialized grid is lambda^{-1} exp(phi_x(i) phi_y(j)).
double from_parameters(const VandermondeEmbedding& e, std::size_t i, std::size_t j) {
    return std::exp(-e.log_lambda + e.phi_x(double(i)) * e.phi_y(double(j)));
}

}  // namespace

struct BranchCase {
    const char* branch;
    Matrix<Rational> a;
};

class Branches : public ::testing::TestWithParam<BranchCase> {};

TEST_P(Branches, RoutesAndRoundTrips) {
    const auto& c = GetParam();
    auto e = embed_tp_2x2(RationalMatrix(c.a), 4, 5, 0, 2, 1, 4);
    EXPECT_EQ(e.branch, c.branch);
    auto d = RationalMatrix(c.a).to_double();
    EXPECT_LT(round_trip(e, d), 1e-12);
    EXPECT_EQ(certify_tp(e.matrix).status, Status::tp);
    EXPECT_LT(e.alpha[0], e.alpha[1]);
    EXPECT_LT(e.beta[0], e.beta[1]);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            EXPECT_NEAR(from_parameters(e, i, j), e.matrix(i, j), 1e-12 * e.matrix(i, j));
}

INSTANTIATE_TEST_SUITE_P(
    AllCases, Branches,
    ::testing::Values(BranchCase{"A1", {{3, 1}, {1, 1}}}, BranchCase{"A2", {{1, Rational(1, 2)}, {1, 1}}},
                      BranchCase{"A3", {{1, 1}, {Rational(1, 2), 1}}}, BranchCase{"A4", {{1, 1}, {1, 2}}},
                      BranchCase{"A5", {{1, 1}, {2, 3}}}, BranchCase{"A6", {{3, 2}, {1, 1}}},
                      BranchCase{"A7", {{3, 2}, {1, 2}}}, BranchCase{"A8", {{2, 1}, {2, 3}}},
                      BranchCase{"generic", {{5, 2}, {3, 7}}}),
    [](const auto& info) { return std::string(info.param.branch); });

TEST(Embed, FirstEqualEntryCaseParameters) {
    auto e = embed_tp_2x2(RationalMatrix(Matrix<Rational>{{3, 1}, {1, 1}}), 2, 2, 0, 1, 0, 1);
    EXPECT_DOUBLE_EQ(e.u[0], 3);
    EXPECT_DOUBLE_EQ(e.u[1], 1);
    EXPECT_EQ(e.exponents, (std::array<double, 2>{1, 0}));
    EXPECT_DOUBLE_EQ(e.lambda(), 1);
}

TEST(Embed, GenericCaseFlipsDescendingExponents) {
    const double E = std::exp(1.0);
    Matrix<double> a{{E, 1}, {1, E}};
    auto e = embed_tp_2x2(RationalMatrix(a), 5, 7, 1, 3, 2, 5);
    EXPECT_EQ(e.branch, "generic");
    EXPECT_NEAR(e.log_lambda, -0.5, 1e-15);
    EXPECT_NEAR(e.exponents[1], -1, 1e-15);
    EXPECT_TRUE(e.flipped);
    EXPECT_LT(round_trip(e, a), 1e-12);
}

TEST(Embed, FlipLeavesTheMatrixUnchanged) {
    // Flipping (alpha, beta) -> (-alpha, -beta) keeps every product alpha_i beta_j.
    const double E = std::exp(1.0);
    auto e = embed_tp_2x2(RationalMatrix(Matrix<double>{{E, 1}, {1, E}}), 3, 3, 0, 2, 0, 2);
    ASSERT_TRUE(e.flipped);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const double unflipped = std::exp(-e.log_lambda + (-e.phi_x(double(i))) * (-e.phi_y(double(j))));
            EXPECT_NEAR(unflipped, e.matrix(i, j), 1e-13 * e.matrix(i, j));
        }
}

TEST(Embed, RandomMatricesRoundTripAndCertify) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> logu(std::log(0.1), std::log(10.0));
    int done = 0;
    while (done < 100) {
        Matrix<double> a{{std::exp(logu(rng)), std::exp(logu(rng))}, {std::exp(logu(rng)), std::exp(logu(rng))}};
        if (!(a(0, 0) * a(1, 1) > a(0, 1) * a(1, 0))) continue;
        ++done;
        auto e = embed_tp_2x2(RationalMatrix(a), 5, 7, 1, 3, 2, 5);
        ASSERT_LT(round_trip(e, a), 1e-12);
        ASSERT_EQ(certify_tp(e.matrix).status, Status::tp) << done;
    }
}

TEST(Embed, NearlySingularInputStaysFinite) {
    // vy and wx agree to ten digits, so lambda itself is astronomically large.
    Matrix<double> a{{2, 3}, {1, 1.5 + 1e-10}};
    auto e = embed_tp_2x2(RationalMatrix(a), 5, 7, 1, 3, 2, 5);
    EXPECT_LT(round_trip(e, a), 1e-12);
    for (double x : e.matrix.data()) EXPECT_TRUE(std::isfinite(x));
}

TEST(Embed, RejectsBadInput) {
    EXPECT_THROW(embed_tp_2x2(RationalMatrix(Matrix<Rational>{{1, 2}, {3, 4}}), 3, 3, 0, 1, 0, 1), std::domain_error);
    EXPECT_THROW(embed_tp_2x2(RationalMatrix(Matrix<Rational>{{2, 1}, {1, 1}}), 3, 3, 1, 1, 0, 1),
                 std::invalid_argument);
    EXPECT_THROW(embed_tp_2x2(RationalMatrix(Matrix<Rational>{{2, 1}, {1, 1}}), 3, 3, 0, 3, 0, 1),
                 std::invalid_argument);
}

TEST(HankelEmbedding, TwoOneOneTwo) {
    auto h = embed_sym_2x2(RationalMatrix(Matrix<Rational>{{2, 1}, {1, 2}}));
    EXPECT_NEAR(h.alpha, std::log(2.0), 1e-15);
    EXPECT_NEAR(h.beta, -2 * std::log(2.0), 1e-15);
    EXPECT_NEAR(h(0, 0), 2, 1e-15);
    EXPECT_NEAR(h(0, 1), 1, 1e-15);
    EXPECT_NEAR(h(1, 1), 2, 1e-15);
}

TEST(HankelEmbedding, HalfOffDiagonal) {
    auto h = embed_sym_2x2(RationalMatrix(Matrix<Rational>{{1, Rational(1, 2)}, {Rational(1, 2), 1}}));
    EXPECT_NEAR(h.alpha, 0.5 * std::log(4.0), 1e-15);
    EXPECT_NEAR(h.beta, 0.5 * std::log(1.0 / 16), 1e-15);
}

TEST(HankelEmbedding, PureExponentials) {
    const double b = std::exp(-1.0);
    auto h = embed_sym_2x2(RationalMatrix(Matrix<double>{{1, b}, {b, 1}}));
    EXPECT_NEAR(h.alpha, 1, 1e-15);
    EXPECT_NEAR(h.beta, -2, 1e-15);
}

TEST(HankelEmbedding, PlacementIsAffine) {
    auto h = embed_sym_2x2(RationalMatrix(Matrix<Rational>{{3, 2}, {2, 5}}), -1, 4);
    EXPECT_NEAR(h(-1, -1), 3, 1e-14);
    EXPECT_NEAR(h(-1, 4), 2, 1e-14);
    EXPECT_NEAR(h(4, 4), 5, 1e-14);
}

TEST(HankelEmbedding, RandomSymmetricInputsGiveTotallyPositiveGrids) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> logu(std::log(0.1), std::log(10.0));
    const std::vector<double> grid{-0.5, 0, 0.5, 1, 1.5};
    int done = 0;
    while (done < 100) {
        const double a = std::exp(logu(rng)), b = std::exp(logu(rng)), c = std::exp(logu(rng));
        if (!(a * c > b * b)) continue;
        ++done;
        auto h = embed_sym_2x2(RationalMatrix(Matrix<double>{{a, b}, {b, c}}));
        EXPECT_LT(std::abs(h(0, 1) - b) / b, 1e-12);
        EXPECT_LT(std::abs(h(1, 1) - c) / c, 1e-12);
        ASSERT_EQ(certify_tp(h.sample(grid)).status, Status::tp) << done;
    }
}

TEST(HankelEmbedding, RejectsAsymmetricOrSingular) {
    EXPECT_THROW(embed_sym_2x2(RationalMatrix(Matrix<Rational>{{2, 1}, {3, 2}})), std::domain_error);
    EXPECT_THROW(embed_sym_2x2(RationalMatrix(Matrix<Rational>{{1, 1}, {1, 1}})), std::domain_error);
    EXPECT_THROW(embed_sym_2x2(RationalMatrix(Matrix<Rational>{{2, 1}, {1, 2}}), 1, 1), std::invalid_argument);
}
