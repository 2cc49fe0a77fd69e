#include <gtest/gtest.h>

#include "spinolab/semilinear.hpp"

using namespace spinolab;

namespace {

using ComplexVector = Eigen::VectorXcd;

Eigen::VectorXd to_real(const ComplexVector& z) {
  Eigen::VectorXd v(2 * z.size());
  v << z.real(), z.imag();
  return v;
}

ComplexVector random_complex_vector(int r, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexVector z(r);
  for (int i = 0; i < r; ++i) z(i) = {normal(rng), normal(rng)};
  return z;
}

// u acting on C^r directly: A z or A conj(z).
ComplexVector act(const GammaRElement& u, const ComplexVector& z) { return u.t ? ComplexVector(u.A * z.conjugate()) : ComplexVector(u.A * z); }

class PerRank : public ::testing::TestWithParam<int> {};

}  // namespace

TEST_P(PerRank, RealificationMatchesTheComplexAction) {
  const int r = GetParam();
  Rng rng(41);
  for (int k = 0; k < 50; ++k) {
    const GammaRElement u = random_gamma_r(r, rng);
    const ComplexVector z = random_complex_vector(r, rng);
    ASSERT_LT((realify(u) * to_real(z) - to_real(act(u, z))).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST_P(PerRank, ProductIsComposition) {
  const int r = GetParam();
  Rng rng(42);
  for (int k = 0; k < 50; ++k) {
    const GammaRElement u = random_gamma_r(r, rng), v = random_gamma_r(r, rng);
    const ComplexVector z = random_complex_vector(r, rng);
    ASSERT_LT((act(gamma_r_mul(u, v), z) - act(u, act(v, z))).cwiseAbs().maxCoeff(), 1e-10);
    ASSERT_LT((act(gamma_r_inverse(u), act(u, z)) - z).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST_P(PerRank, DeterminantOfTheRealification) {
  const int r = GetParam();
  Rng rng(43);
  for (int k = 0; k < 50; ++k) {
    const GammaRElement u = random_gamma_r(r, rng);
    const double expected = std::norm(u.A.determinant()) * ((u.t && r % 2) ? -1.0 : 1.0);
    ASSERT_NEAR(realify(u).determinant(), expected, 1e-9 * std::max(1.0, std::abs(expected)));
    ASSERT_NEAR(semilinear_det(u), expected, 1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST_P(PerRank, UnitaryElementsAreOrthogonal) {
  const int r = GetParam();
  Rng rng(44);
  for (int k = 0; k < 20; ++k) {
    const Matrix m = realify(GammaRElement{random_unitary(r, rng), k % 2});
    ASSERT_LT((m.transpose() * m - Matrix::Identity(2 * r, 2 * r)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST_P(PerRank, ClassificationIsTheSameForBothRepresentatives) {
  const int r = GetParam();
  Rng rng(45);
  const SemilinearStructure s = SemilinearStructure::canonical(r);
  for (int k = 0; k < 20; ++k) {
    const GammaRElement u = random_gamma_r(r, rng);
    const Linearity want = u.t ? Linearity::antilinear : Linearity::linear;
    EXPECT_EQ(classify_endo(realify(u), s), want);
    EXPECT_EQ(classify_endo(realify(u), s.conjugate()), want);
  }
  EXPECT_EQ(classify_endo(canonical_conjugation(r), s), Linearity::antilinear);
  Matrix T = Matrix::Identity(2 * r, 2 * r);
  T(0, 1) = 1;
  EXPECT_EQ(classify_endo(T, s), Linearity::neither);
}

TEST_P(PerRank, OrientationMapFlipsWithTheRepresentative) {
  const int r = GetParam();
  const Matrix J = canonical_J(r);
  const Matrix I = Matrix::Identity(2 * r, 2 * r);
  // Basis e_1..e_r, J e_1..J e_r is the standard one for J.
  EXPECT_EQ(f_h_sign(J, I), 1);
  EXPECT_EQ(f_h_sign(-J, I), r % 2 ? -1 : 1);
  Rng rng(46);
  const SemilinearStructure s(J);
  const Matrix R = random_compatible_metric(s, rng);
  Matrix start(2 * r, 2 * r);
  std::normal_distribution<double> normal;
  for (Eigen::Index i = 0; i < start.size(); ++i) start.data()[i] = normal(rng);
  EXPECT_EQ(f_h_sign(J, R, start), 1);
  EXPECT_EQ(f_h_sign(-J, R, start), r % 2 ? -1 : 1);
}

TEST_P(PerRank, CompatibleMetricsGiveSHermitianForms) {
  const int r = GetParam();
  Rng rng(47);
  const SemilinearStructure s = SemilinearStructure::canonical(r);
  for (const auto& sj : {s, s.conjugate()}) {
    const Report rep = s_hermitian_check(hermitian_from_metric(random_compatible_metric(s, rng), sj), sj, RunConfig{3, 1e-9, 50});
    EXPECT_TRUE(rep.passed()) << rep.to_json().dump(2);
  }
}

TEST_P(PerRank, SuiteReportPasses) {
  const Report rep = verify_semilinear(GetParam(), RunConfig{7, 1e-9, 50});
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump(2);
}

INSTANTIATE_TEST_SUITE_P(Ranks, PerRank, ::testing::Values(1, 2, 3, 4));

TEST(Semilinear, IncompatibleMetricFailsTheHermitianCheck) {
  const SemilinearStructure s = SemilinearStructure::canonical(2);
  Matrix R = Matrix::Identity(4, 4);
  R(0, 0) = 3;
  const Report rep = s_hermitian_check(hermitian_from_metric(R, s), s, RunConfig{3, 1e-9, 20});
  EXPECT_FALSE(rep.passed());
  EXPECT_THROW(f_h_sign(s.J(), R), InvalidArgument);
}

TEST(Semilinear, RejectsMalformedStructures) {
  EXPECT_THROW(SemilinearStructure(Matrix::Identity(2, 2)), InvalidArgument);
  EXPECT_THROW(SemilinearStructure(Matrix::Zero(3, 3)), InvalidArgument);
  EXPECT_THROW(canonical_J(0), InvalidArgument);
  EXPECT_THROW(verify_semilinear(0), InvalidArgument);
}
