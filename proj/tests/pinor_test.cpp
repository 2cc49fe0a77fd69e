#include <gtest/gtest.h>

#include <tuple>

#include "spinolab/pinor.hpp"

using namespace spinolab;

namespace {

using PQ = std::tuple<int, int>;

// Nullspace dimension of X -> g X - sign X g over all generators, from a
// dense SVD of the stacked Kronecker system.
int dense_commutant_dimension(const std::vector<Matrix>& gens, int sign) {
  const Eigen::Index n = gens[0].rows();
  const Matrix I = Matrix::Identity(n, n);
  Matrix system(static_cast<Eigen::Index>(gens.size()) * n * n, n * n);
  auto kron = [](const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
  };
  // vec(g X) = (I (x) g) vec X, vec(X g) = (g^T (x) I) vec X.
  for (std::size_t k = 0; k < gens.size(); ++k)
    system.middleRows(static_cast<Eigen::Index>(k) * n * n, n * n) = kron(I, gens[k]) - sign * kron(gens[k].transpose(), I);
  Eigen::JacobiSVD<Matrix> svd(system);
  int nullity = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) nullity += svd.singularValues()(i) < 1e-9;
  return nullity;
}

class PerSignature : public ::testing::TestWithParam<PQ> {
 protected:
  int p() const { return std::get<0>(GetParam()); }
  int q() const { return std::get<1>(GetParam()); }
  Signature sig() const { return Signature::pq(p(), q()); }
  int alpha() const { return alpha_pq(p(), q()); }
};

std::string pq_name(const ::testing::TestParamInfo<PQ>& info) {
  return "p" + std::to_string(std::get<0>(info.param)) + "q" + std::to_string(std::get<1>(info.param));
}

}  // namespace

TEST_P(PerSignature, GammaMatricesSatisfyTheCliffordRelations) {
  const MatrixRep rep = build_gamma0(sig());
  const int d = p() + q();
  ASSERT_EQ(rep.N(), 1 << ((d + 1) / 2));
  const Matrix I = Matrix::Identity(rep.N(), rep.N());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Matrix anti = rep.gen(i) * rep.gen(j) + rep.gen(j) * rep.gen(i);
      const Matrix expected = i == j ? Matrix(2.0 * sig().square(i) * I) : Matrix::Zero(rep.N(), rep.N());
      ASSERT_LT(max_abs_diff(anti, expected), 1e-12);
    }
}

TEST_P(PerSignature, VolumeIsACentralComplexStructure) {
  const MatrixRep rep = build_gamma0(sig());
  const Matrix I = Matrix::Identity(rep.N(), rep.N());
  EXPECT_LT(max_abs_diff(rep.J() * rep.J(), -I), 1e-12);
  for (int i = 0; i < p() + q(); ++i) EXPECT_LT(max_abs_diff(rep.J() * rep.gen(i), rep.gen(i) * rep.J()), 1e-12);
}

TEST_P(PerSignature, SolverDimensionsMatchADenseNullspace) {
  const MatrixRep rep = build_gamma0(sig());
  const NaturalSubspaces ns = natural_subspaces(rep);
  EXPECT_EQ(dense_commutant_dimension(rep.gens(), 1), 2);
  EXPECT_EQ(dense_commutant_dimension(rep.gens(), -1), 2);
  EXPECT_EQ(ns.schur_dim, 2);
  EXPECT_EQ(ns.anticomm_dim, 2);
  EXPECT_EQ(ns.schur_dim_blocks, 2);
  EXPECT_EQ(ns.anticomm_dim_blocks, 2);
  EXPECT_EQ(ns.twist_dim, 4);
}

TEST_P(PerSignature, ConjugationOperatorSquaresToAlpha) {
  const MatrixRep rep = build_gamma0(sig());
  const Matrix D = find_D(rep);
  const Matrix I = Matrix::Identity(rep.N(), rep.N());
  EXPECT_LT(max_abs_diff(D * D, alpha() * I), 1e-12);
  EXPECT_LT(commutation_residual(rep, D, -1), 1e-12);
  EXPECT_LT(max_abs_diff(D * rep.J(), -rep.J() * D), 1e-12);
}

TEST_P(PerSignature, ConjugationOperatorsFormACircleTorsor) {
  const MatrixRep rep = build_gamma0(sig());
  const DTorsorSample t = D_torsor(rep);
  EXPECT_LT(t.residual, 1e-9);
  const Matrix I = Matrix::Identity(rep.N(), rep.N());
  for (double theta : {0.4, 2.0, -1.3}) {
    const Matrix D2 = exp_J(rep.J(), theta) * t.D;
    EXPECT_LT(max_abs_diff(D2 * D2, alpha() * I), 1e-12);
    EXPECT_LT(commutation_residual(rep, D2, -1), 1e-12);
    EXPECT_NEAR(torsor_angle(rep.J(), t.D, D2, alpha()).first, theta, 1e-12);
  }
}

TEST_P(PerSignature, Gamma2IsARepresentationOfCl2) {
  const MatrixRep rep = build_gamma0(sig());
  const Matrix D = find_D(rep);
  for (int nu : {1, -1}) {
    const Report r = gamma2_check(rep, gamma2(rep, nu, D), RunConfig{});
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
  }
}

TEST_P(PerSignature, Gamma2ChoicesAreEquivalent) {
  const MatrixRep rep = build_gamma0(sig());
  const DTorsorSample t = D_torsor(rep);
  const Gamma2 from = gamma2(rep, 1, t.D);
  for (int nu : {1, -1}) {
    const Gamma2 to = gamma2(rep, nu, t.D_second);
    EXPECT_LT(equivalence_residual(from, to, equivalence_conjugator(from, to)), 1e-9);
  }
}

TEST_P(PerSignature, GammaOIntertwinesTheVectorRepresentation) {
  const MatrixRep rep = build_gamma0(sig());
  const Report r = check_intertwiner(rep, gamma2(rep, 1, find_D(rep)), RunConfig{5, 1e-9, 40});
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST_P(PerSignature, MajoranaProjectorsWhenAlphaIsPlus) {
  const MatrixRep rep = build_gamma0(sig());
  const Matrix D = find_D(rep);
  if (alpha() < 0) {
    EXPECT_THROW(majorana(rep, D), InvalidArgument);
    return;
  }
  const MajoranaProjectors m = majorana(rep, D);
  EXPECT_EQ(m.rank_plus, rep.N() / 2);
  EXPECT_EQ(m.rank_minus, rep.N() / 2);
  for (int i = 0; i < p() + q(); ++i) {
    // gamma(e_i) maps the + eigenspace of D into the - eigenspace.
    EXPECT_LT((m.plus * rep.gen(i) * m.plus).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(max_abs_diff(rep.gen(i) * m.plus, m.minus * rep.gen(i)), 1e-12);
  }
  EXPECT_TRUE(majorana_check(rep, D, RunConfig{}).passed());
}

INSTANTIATE_TEST_SUITE_P(Signatures, PerSignature,
                         ::testing::Values(PQ{3, 0}, PQ{1, 2}, PQ{0, 1}, PQ{0, 5}, PQ{4, 1}, PQ{2, 3}, PQ{7, 0}, PQ{1, 6}, PQ{3, 4}),
                         pq_name);

TEST(Pinor, ExtensionCrossCheck) {
  for (auto [p, q] : {PQ{3, 0}, PQ{1, 2}}) {
    const Report r = extension_cross_check(p, q, RunConfig{});
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
  }
  EXPECT_THROW(extension_rep(7, 0), InvalidArgument);
}

TEST(Pinor, SuiteReportPassesForLowDimensions) {
  for (auto [p, q] : {PQ{3, 0}, PQ{1, 2}, PQ{4, 1}}) {
    const Report r = verify_pinor(p, q, RunConfig{7, 1e-9, 30});
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
  }
}

TEST(Pinor, RejectsSignaturesOutsideTheAdaptedClasses) {
  EXPECT_THROW(build_gamma0(Signature::pq(2, 0)), InvalidArgument);
  EXPECT_THROW(build_gamma0(Signature::pq(1, 0)), InvalidArgument);
  EXPECT_THROW(build_gamma0(Signature::pq(15, 0)), InvalidArgument);
}

TEST(Pinor, MatrixJsonHasMetadataAndRowMajorArrays) {
  const MatrixRep rep = build_gamma0(Signature::pq(1, 2));
  const Json j = rep_to_json(rep, find_D(rep));
  EXPECT_EQ(j.at("p"), 1);
  EXPECT_EQ(j.at("q"), 2);
  EXPECT_EQ(j.at("N"), 4);
  EXPECT_EQ(j.at("alpha"), 1);
  ASSERT_EQ(j.at("gamma").size(), 3u);
  EXPECT_EQ(j.at("gamma")[0].size(), 4u);
  EXPECT_EQ(j.at("gamma")[0][0].size(), 4u);
}
