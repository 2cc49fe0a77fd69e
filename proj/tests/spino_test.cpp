#include <gtest/gtest.h>

#include <tuple>

#include "spinolab/spino.hpp"

using namespace spinolab;

namespace {

using Param = std::tuple<int, int, int>;  // p, q, alpha

class PerGroup : public ::testing::TestWithParam<Param> {
 protected:
  Signature sig() const { return Signature::pq(std::get<0>(GetParam()), std::get<1>(GetParam())); }
  int alpha() const { return std::get<2>(GetParam()); }
};

std::string param_name(const ::testing::TestParamInfo<Param>& info) {
  const auto [p, q, a] = info.param;
  return "p" + std::to_string(p) + "q" + std::to_string(q) + (a > 0 ? "_plus" : "_minus");
}

}  // namespace

TEST_P(PerGroup, GroupLawIsAssociativeWithInverses) {
  Rng rng(31);
  const SpinoElement one = spino_identity(sig(), alpha());
  for (int i = 0; i < 30; ++i) {
    const auto g = random_spino(sig(), alpha(), rng), h = random_spino(sig(), alpha(), rng), k = random_spino(sig(), alpha(), rng);
    ASSERT_LT(spino_distance((g * h) * k, g * (h * k)), 1e-9);
    ASSERT_LT(spino_distance(g * g.inverse(), one), 1e-9);
  }
}

TEST_P(PerGroup, RepresentationsAreHomomorphismsAndDescendToTheQuotient) {
  Rng rng(32);
  for (int i = 0; i < 30; ++i) {
    const auto g = random_spino(sig(), alpha(), rng), h = random_spino(sig(), alpha(), rng);
    for (Rep r : kAllReps) {
      // Boosts in indefinite signatures have large entries; compare relative to the product.
      const Matrix prod = rep_matrix(g, r) * rep_matrix(h, r);
      const double scale = std::max(1.0, prod.cwiseAbs().maxCoeff());
      ASSERT_LT(max_abs_diff(rep_matrix(g * h, r), prod) / scale, 1e-9) << rep_name(r);
      const Matrix flipped = detail::rep_on_pair(-g.spin_part(), -g.pin2_part(), r);
      ASSERT_LT(max_abs_diff(flipped, rep_matrix(g, r)), 1e-12) << rep_name(r);
    }
  }
}

TEST_P(PerGroup, LambdaPreservesTheMetricWithUnitDeterminant) {
  Rng rng(33);
  const Matrix eta = metric(sig());
  for (int i = 0; i < 30; ++i) {
    const Matrix l = lambda(random_spino(sig(), alpha(), rng));
    ASSERT_LT(max_abs_diff(l.transpose() * eta * l, eta), 1e-9);
    ASSERT_NEAR(l.determinant(), 1.0, 1e-9);
  }
}

TEST_P(PerGroup, EtaTildeIsTheDeterminantOfMu) {
  Rng rng(34);
  for (int i = 0; i < 30; ++i) {
    const auto g = random_spino(sig(), alpha(), rng);
    ASSERT_NEAR(mu(g).determinant(), eta_tilde(g), 1e-9);
  }
}

TEST_P(PerGroup, DHatSquaresToOneOrTwistedUnit) {
  const SpinoElement d = spino_D_hat(sig(), alpha());
  const SpinoElement expected = alpha() > 0 ? spino_identity(sig(), alpha()) : spino_twisted_unit(sig(), alpha());
  const SpinoElement other = alpha() > 0 ? spino_twisted_unit(sig(), alpha()) : spino_identity(sig(), alpha());
  EXPECT_EQ(spino_distance(d * d, expected), 0.0);
  EXPECT_GT(spino_distance(d * d, other), 0.5);
}

TEST_P(PerGroup, KInvertsTheCircle) {
  for (double theta : {0.3, 1.1, 2.5}) {
    const SpinoElement k = K_automorphism(spino_U(sig(), theta, alpha()));
    EXPECT_LT(spino_distance(k, spino_U(sig(), -theta, alpha())), 1e-12);
  }
}

TEST_P(PerGroup, SubgroupsAreClosed) {
  Rng rng(35);
  const Signature pl = plane_signature(alpha());
  for (int i = 0; i < 20; ++i) {
    const auto a = random_spin(sig(), rng);
    const SpinoElement s1(a, Multivector<double>::scalar(pl, 1.0), alpha());
    const SpinoElement s2(random_spin(sig(), rng), Multivector<double>::generator(pl, 0), alpha());
    ASSERT_TRUE(in_subgroup(s1, Subgroup::spin_hat));
    ASSERT_TRUE(in_subgroup(s1 * s2, Subgroup::pin_hat));
    ASSERT_TRUE(in_subgroup(s2 * s2, Subgroup::spin_hat));
    const auto g = random_spino(sig(), alpha(), rng);
    const auto h = random_spino(sig(), alpha(), rng);
    if (!g.odd() && !h.odd()) {
      ASSERT_TRUE(in_subgroup(g * h, Subgroup::spinc_hat));
    }
  }
  EXPECT_TRUE(in_subgroup(spino_twisted_unit(sig(), alpha()), Subgroup::center));
  EXPECT_TRUE(in_subgroup(spino_D_hat(sig(), alpha()), Subgroup::gamma_o));
  EXPECT_FALSE(in_subgroup(spino_U(sig(), 0.4, alpha()), Subgroup::gamma_o));
}

TEST_P(PerGroup, EmbeddingsIntertwineTheRepresentations) {
  Rng rng(36);
  for (int i = 0; i < 20; ++i) {
    const EmbeddingResiduals r = check_embeddings(random_spino(sig(), alpha(), rng));
    ASSERT_LT(r.eq1, 1e-9);
    ASSERT_LT(r.eq2, 1e-9);
    ASSERT_LT(r.e1_F, 1e-9);
    ASSERT_LT(r.e1_Ft, 1e-9);
    ASSERT_LT(r.jprime_even, 1e-12);
  }
}

TEST_P(PerGroup, EmbeddingIsMultiplicative) {
  Rng rng(37);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_spino(sig(), alpha(), rng), h = random_spino(sig(), alpha(), rng);
    ASSERT_LT(distance(embed_j(g * h), embed_j(g) * embed_j(h)), 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Signatures, PerGroup,
                         ::testing::Values(Param{3, 0, 1}, Param{3, 0, -1}, Param{1, 2, 1}, Param{1, 2, -1}, Param{2, 1, 1},
                                           Param{2, 1, -1}, Param{0, 4, -1}, Param{2, 2, 1}),
                         param_name);

TEST(Spino, SuiteReportPasses) {
  for (int alpha : {1, -1}) {
    const Report r = verify_spino(Signature::pq(1, 2), alpha, RunConfig{7, 1e-9, 50});
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
  }
}

TEST(Spino, SplittingsBehavePerAlpha) {
  for (int alpha : {1, -1}) {
    const Report r = splittings_check(Signature::pq(3, 0), alpha, RunConfig{7, 1e-9, 50});
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
  }
}

TEST(Spino, PiAlphaIsOnlyDefinedModuloTheCenter) {
  Rng rng(38);
  const Signature sig = Signature::pq(3, 0);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_spino(sig, -1, rng), h = random_spino(sig, -1, rng);
    ASSERT_LT(distance_mod_center(pi_alpha(g * h), pi_alpha(g) * pi_alpha(h)), 1e-9);
  }
}

TEST(Spino, RejectsMalformedElements) {
  const Signature sig = Signature::pq(3, 0);
  const Signature pl = plane_signature(1);
  EXPECT_THROW(SpinoElement(Multivector<double>::generator(sig, 0), Multivector<double>::scalar(pl, 1.0), 1), InvalidArgument);
  EXPECT_THROW(SpinoElement(Multivector<double>::scalar(sig, 2.0), Multivector<double>::scalar(pl, 1.0), 1), InvalidArgument);
  EXPECT_THROW(SpinoElement(Multivector<double>::scalar(sig, 1.0), Multivector<double>::scalar(pl, 1.0), -1), InvalidArgument);
  EXPECT_THROW(spino_identity(sig, 1) * spino_identity(sig, -1), InvalidArgument);
}
