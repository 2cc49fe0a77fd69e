#include <gtest/gtest.h>

#include <vector>

#include "spinolab/random.hpp"

using namespace spinolab;
using MV = Multivector<Rational>;

namespace {

// Product of generator words by bubble sort, one transposition at a time.
std::pair<Blade, int> naive_blade_product(const Signature& sig, Blade a, Blade b) {
  std::vector<int> word;
  for (int i = 0; i < sig.dim(); ++i)
    if (a >> i & 1) word.push_back(i);
  for (int i = 0; i < sig.dim(); ++i)
    if (b >> i & 1) word.push_back(i);
  int sign = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < word.size(); ++k) {
      if (word[k] > word[k + 1]) {
        std::swap(word[k], word[k + 1]);
        sign = -sign;
        changed = true;
      } else if (word[k] == word[k + 1]) {
        sign *= sig.square(word[k]);
        word.erase(word.begin() + k, word.begin() + k + 2);
        changed = true;
      }
    }
  }
  Blade out = 0;
  for (int i : word) out |= Blade{1} << i;
  return {out, sign};
}

MV parse(const std::string& s, const Signature& sig) { return parse_multivector(s, sig); }

}  // namespace

TEST(BladeProduct, MatchesBubbleSortOnAllPairsUpToDimensionSix) {
  for (int d = 0; d <= 6; ++d)
    for (int p = 0; p <= d; ++p) {
      const Signature sig = Signature::pq(p, d - p);
      const Blade n = Blade{1} << d;
      for (Blade a = 0; a < n; ++a)
        for (Blade b = 0; b < n; ++b) {
          const auto [blade, sign] = blade_product(sig, a, b);
          const auto [nb, ns] = naive_blade_product(sig, a, b);
          ASSERT_EQ(blade, nb);
          ASSERT_EQ(sign, ns) << sig.to_string() << " " << a << " " << b;
        }
    }
}

TEST(BladeProduct, MatchesBubbleSortOnRandomPairsInSixteenGenerators) {
  Rng rng(3);
  const Signature sig = Signature::from_squares({1, -1, -1, 1, 1, 1, -1, 1, -1, -1, 1, 1, -1, 1, 1, -1});
  std::uniform_int_distribution<Blade> pick(0, (Blade{1} << 16) - 1);
  for (int i = 0; i < 2000; ++i) {
    const Blade a = pick(rng), b = pick(rng);
    const auto [blade, sign] = blade_product(sig, a, b);
    const auto [nb, ns] = naive_blade_product(sig, a, b);
    ASSERT_EQ(blade, nb);
    ASSERT_EQ(sign, ns);
  }
}

TEST(Signature, RejectsMoreThanSixteenGenerators) {
  EXPECT_THROW(Signature::pq(10, 7), InvalidArgument);
  EXPECT_THROW(Signature::pq(-1, 2), InvalidArgument);
}

TEST(Signature, CountsPositiveAndNegativeGenerators) {
  const Signature sig = Signature::from_squares({-1, 1, -1});
  EXPECT_EQ(sig.p(), 1);
  EXPECT_EQ(sig.q(), 2);
  EXPECT_EQ(sig.dim(), 3);
}

TEST(Multivector, ComplexNumbersInClZeroOne) {
  // Cl(0,1) = C with e1 = i.
  const Signature sig = Signature::pq(0, 1);
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng), d = random_rational(rng);
    const MV x = MV::scalar(sig, a) + MV::generator(sig, 0, b);
    const MV y = MV::scalar(sig, c) + MV::generator(sig, 0, d);
    const MV expected = MV::scalar(sig, a * c - b * d) + MV::generator(sig, 0, a * d + b * c);
    ASSERT_EQ(x * y, expected);
  }
}

TEST(Multivector, QuaternionsInClZeroTwo) {
  // Cl(0,2) = H with i = e1, j = e2, k = e1e2.
  const Signature sig = Signature::pq(0, 2);
  Rng rng(6);
  auto quat = [&](const std::array<Rational, 4>& q) {
    return MV::scalar(sig, q[0]) + MV::blade(sig, 0b01, q[1]) + MV::blade(sig, 0b10, q[2]) + MV::blade(sig, 0b11, q[3]);
  };
  for (int i = 0; i < 50; ++i) {
    std::array<Rational, 4> a, b;
    for (auto& x : a) x = random_rational(rng);
    for (auto& x : b) x = random_rational(rng);
    const std::array<Rational, 4> hamilton = {
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    };
    ASSERT_EQ(quat(a) * quat(b), quat(hamilton));
  }
}

TEST(Multivector, RealMatricesInClTwoZero) {
  // Cl(2,0) = M2(R) with e1 = diag(1,-1), e2 = [[0,1],[1,0]].
  const Signature sig = Signature::pq(2, 0);
  Eigen::Matrix2d m[4];
  m[0] = Eigen::Matrix2d::Identity();
  m[1] << 1, 0, 0, -1;
  m[2] << 0, 1, 1, 0;
  m[3] = m[1] * m[2];
  auto to_matrix = [&](const Multivector<double>& x) {
    Eigen::Matrix2d out = Eigen::Matrix2d::Zero();
    for (const auto& [b, c] : x.terms()) out += c * m[b];
    return out;
  };
  Rng rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 50; ++i) {
    Multivector<double> x(sig), y(sig);
    for (Blade b = 0; b < 4; ++b) {
      x.add_term(b, u(rng));
      y.add_term(b, u(rng));
    }
    ASSERT_LT((to_matrix(x * y) - to_matrix(x) * to_matrix(y)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Multivector, VolumeElementSquareFollowsTheSignFormula) {
  for (int d = 1; d <= 11; ++d)
    for (int p = 0; p <= d; ++p) {
      const int q = d - p;
      const int r = ((p - q) % 8 + 8) % 8;
      const Signature sig = Signature::pq(p, q);
      const MV nu = volume_element(sig);
      const int sign = ((d * (d - 1) / 2 + q) % 2) ? -1 : 1;
      ASSERT_EQ(nu * nu, MV::scalar(sig, sign)) << sig.to_string();
      if (r == 3 || r == 7) {
        ASSERT_EQ(sign, -1);
      }
    }
}

TEST(Involutions, ActOnBladesByGradeSigns) {
  const Signature sig = Signature::pq(2, 2);
  const MV x = parse("1 + 2*e1 + 3*e1e2 + 4*e1e2e3 + 5*e1e2e3e4", sig);
  EXPECT_EQ(grade_involution(x), parse("1 - 2*e1 + 3*e1e2 - 4*e1e2e3 + 5*e1e2e3e4", sig));
  EXPECT_EQ(reversion(x), parse("1 + 2*e1 - 3*e1e2 - 4*e1e2e3 + 5*e1e2e3e4", sig));
  EXPECT_EQ(twisted_reversion(x), parse("1 - 2*e1 - 3*e1e2 + 4*e1e2e3 + 5*e1e2e3e4", sig));
}

TEST(Involutions, AreAntiAutomorphismsOrAutomorphisms) {
  Rng rng(11);
  for (const auto& sig : {Signature::pq(3, 1), Signature::pq(0, 5), Signature::pq(2, 3)})
    for (int i = 0; i < 40; ++i) {
      const MV a = random_rational_multivector(sig, rng), b = random_rational_multivector(sig, rng);
      ASSERT_EQ(grade_involution(a * b), grade_involution(a) * grade_involution(b));
      ASSERT_EQ(reversion(a * b), reversion(b) * reversion(a));
      ASSERT_EQ(twisted_reversion(a * b), twisted_reversion(b) * twisted_reversion(a));
    }
}

TEST(TwistedNorm, SplitQuaternionNormInClTwoZero) {
  const Signature sig = Signature::pq(2, 0);
  Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    std::array<Rational, 4> q;
    for (auto& x : q) x = random_rational(rng);
    const MV x = MV::scalar(sig, q[0]) + MV::blade(sig, 0b01, q[1]) + MV::blade(sig, 0b10, q[2]) + MV::blade(sig, 0b11, q[3]);
    ASSERT_EQ(twisted_norm(x), MV::scalar(sig, q[0] * q[0] + q[3] * q[3] - q[1] * q[1] - q[2] * q[2]));
  }
}

TEST(TwistedNorm, QuaternionNormInClZeroTwo) {
  const Signature sig = Signature::pq(0, 2);
  EXPECT_EQ(twisted_norm(parse("1 + 2*e1 + 3*e2 + 4*e1e2", sig)), MV::scalar(sig, 30));
}

TEST(Inverse, VersorsAndRejectsNullElements) {
  Rng rng(17);
  const Signature sig = Signature::pq(3, 2);
  for (int i = 0; i < 20; ++i) {
    const Multivector<double> v = random_versor(sig, rng, 3);
    const Multivector<double> one = Multivector<double>::scalar(sig, 1.0);
    ASSERT_LT(distance(v * inverse(v), one), 1e-9);
  }
  const MV null_vector = parse("e1 + e4", sig);  // e1^2 + e4^2 = 0
  EXPECT_THROW(inverse(null_vector), InvalidArgument);
}

TEST(VectorRep, TwistedAdjointOfAUnitVectorIsAReflection) {
  const Signature sig = Signature::pq(2, 1);
  const MV e1 = MV::generator(sig, 0);
  const Matrix r = vector_rep(e1, true);
  Matrix expected = Matrix::Identity(3, 3);
  expected(0, 0) = -1;
  EXPECT_LT((r - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(TextFormat, ParsesRationalsAndReordersGenerators) {
  const Signature sig = Signature::pq(1, 2);
  EXPECT_EQ(parse("1/2*e1 - e2e1", sig), MV::generator(sig, 0, Rational(1, 2)) + MV::blade(sig, 0b11, 1));
  // e2 e2 = -1 in (1,2).
  EXPECT_EQ(parse("e2e2", sig), MV::scalar(sig, -1));
  const MV x = parse("3 - 2/3*e1e3 + e1e2e3", sig);
  EXPECT_EQ(parse(to_string(x), sig), x);
}

TEST(TextFormat, RejectsMalformedInput) {
  const Signature sig = Signature::pq(2, 0);
  EXPECT_THROW(parse("2e1", sig), InvalidArgument);
  EXPECT_THROW(parse("e3", sig), InvalidArgument);
  EXPECT_THROW(parse("1/0*e1", sig), InvalidArgument);
  EXPECT_THROW(parse("", sig), InvalidArgument);
  EXPECT_THROW(parse_signature("3"), InvalidArgument);
  EXPECT_THROW(parse_signature("a,b"), InvalidArgument);
}

TEST(AlphaPq, FollowsTheSignOfTheMod8Class) {
  for (int p = 0; p <= 11; ++p)
    for (int q = 0; p + q <= 11; ++q) {
      const int r = ((p - q) % 8 + 8) % 8;
      if (r != 3 && r != 7) {
        EXPECT_THROW(alpha_pq(p, q), InvalidArgument);
        continue;
      }
      // (-1)^((p - q + 1) / 4) with p - q + 1 divisible by 4.
      const int k = (p - q + 1) / 4;
      EXPECT_EQ(alpha_pq(p, q), (k % 2 == 0) ? 1 : -1) << p << "," << q;
    }
}
