#include <gtest/gtest.h>

#include <map>

#include "spinolab/catalog.hpp"

using namespace spinolab;

namespace spinolab {
inline void PrintTo(const Gf2Class& c, std::ostream* os) { *os << c.to_string(); }
}  // namespace spinolab

namespace {

const Catalog& catalog() {
  static const Catalog c = Catalog::load(SPINOLAB_CATALOG_PATH);
  return c;
}

// Betti numbers of Z2[x]/I by dense elimination over every multiple m*r of
// every relation, with no pruning and no normal forms.
std::vector<int> dense_betti(const std::vector<int>& degrees, const std::vector<Gf2Poly>& relations, int dim) {
  std::vector<int> out;
  for (int k = 0; k <= dim; ++k) {
    std::vector<Exponents> monos;
    std::vector<int> e(degrees.size(), 0);
    auto enumerate = [&](auto&& self, std::size_t i, int left) -> void {
      if (i == degrees.size()) {
        if (left == 0) monos.push_back(e);
        return;
      }
      for (int p = 0; p * degrees[i] <= left; ++p) {
        e[i] = p;
        self(self, i + 1, left - p * degrees[i]);
      }
      e[i] = 0;
    };
    enumerate(enumerate, 0, k);
    std::map<Exponents, std::size_t> col;
    for (std::size_t c = 0; c < monos.size(); ++c) col[monos[c]] = c;
    std::vector<std::vector<char>> rows;
    for (const auto& r : relations) {
      if (r.is_zero()) continue;
      const int rd = monomial_degree(*r.terms().begin(), degrees);
      if (rd > k) continue;
      std::vector<Exponents> multipliers;
      std::vector<int> f(degrees.size(), 0);
      auto mult = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == degrees.size()) {
          if (left == 0) multipliers.push_back(f);
          return;
        }
        for (int p = 0; p * degrees[i] <= left; ++p) {
          f[i] = p;
          self(self, i + 1, left - p * degrees[i]);
        }
        f[i] = 0;
      };
      mult(mult, 0, k - rd);
      for (const auto& m : multipliers) {
        std::vector<char> row(monos.size(), 0);
        for (const auto& t : r.terms()) {
          Exponents g = t;
          for (std::size_t i = 0; i < g.size(); ++i) g[i] += m[i];
          row[col.at(g)] ^= 1;
        }
        rows.push_back(std::move(row));
      }
    }
    // rank over GF(2)
    int rank = 0;
    for (std::size_t c = 0; c < monos.size(); ++c) {
      std::size_t pivot = rows.size();
      for (std::size_t r = rank; r < rows.size(); ++r)
        if (rows[r][c]) {
          pivot = r;
          break;
        }
      if (pivot == rows.size()) continue;
      std::swap(rows[rank], rows[pivot]);
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (r != static_cast<std::size_t>(rank) && rows[r][c])
          for (std::size_t j = 0; j < monos.size(); ++j) rows[r][j] ^= rows[rank][j];
      ++rank;
    }
    out.push_back(static_cast<int>(monos.size()) - rank);
  }
  return out;
}

std::vector<int> dense_betti(const RingPtr& ring) { return dense_betti(ring->degrees(), ring->relations(), ring->dim()); }

// Schubert cells of Gr_{2,n}: partitions n-2 >= l1 >= l2 >= 0, graded by l1 + l2.
std::vector<int> schubert_betti(int n, int dim) {
  std::vector<int> b(dim + 1, 0);
  for (int l1 = 0; l1 <= n - 2; ++l1)
    for (int l2 = 0; l2 <= l1; ++l2) b[l1 + l2] += 1;
  return b;
}

// GF(2) rank of the cup product pairing H^k x H^{top-k} -> H^top.
bool poincare_pairing_nondegenerate(const RingPtr& ring, int top) {
  if (ring->betti(top) != 1) return false;
  const Gf2Poly fundamental = Gf2Poly::monomial(ring->basis(top)[0]);
  for (int k = 0; k <= top; ++k) {
    const auto left = ring->basis(k), right = ring->basis(top - k);
    if (left.size() != right.size()) return false;
    std::vector<std::vector<char>> m(left.size(), std::vector<char>(right.size(), 0));
    for (std::size_t i = 0; i < left.size(); ++i)
      for (std::size_t j = 0; j < right.size(); ++j) {
        const Gf2Poly prod = ring->normal_form(Gf2Poly::monomial(left[i]) * Gf2Poly::monomial(right[j]));
        m[i][j] = prod == fundamental ? 1 : 0;
      }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < right.size(); ++c) {
      std::size_t p = rank;
      while (p < m.size() && !m[p][c]) ++p;
      if (p == m.size()) continue;
      std::swap(m[rank], m[p]);
      for (std::size_t r = 0; r < m.size(); ++r)
        if (r != rank && m[r][c])
          for (std::size_t j = 0; j < right.size(); ++j) m[r][j] ^= m[rank][j];
      ++rank;
    }
    if (rank != left.size()) return false;
  }
  return true;
}

}  // namespace

TEST(Gf2Ring, ProjectiveSpacesHaveRankOneInEveryDegree) {
  for (int n = 1; n <= 7; ++n) {
    const auto& M = catalog().get("rp" + std::to_string(n));
    EXPECT_EQ(M.ring->poincare(), std::vector<int>(n + 1, 1));
  }
}

TEST(Gf2Ring, ProjectiveSpaceTangentClassIsABinomialPower) {
  for (int n = 1; n <= 7; ++n) {
    const auto& M = catalog().get("rp" + std::to_string(n));
    // w(T RP^n) = (1 + a)^{n+1}; C(n+1, k) is odd iff k is a submask of n+1 (Lucas).
    Gf2Class expected = Gf2Class::zero(M.ring);
    for (int k = 0; k <= n; ++k)
      if (((n + 1) & k) == k) expected += Gf2Class::generator(M.ring, "a").pow(k);
    EXPECT_EQ(M.tangent().w, expected) << "rp" << n;
  }
}

TEST(Gf2Ring, Gr23IsTruncatedPolynomialsInW1) {
  const RingPtr ring = grassmannian_ring(3, 6);
  const Gf2Class w1 = Gf2Class::generator(ring, "w1"), w2 = Gf2Class::generator(ring, "w2");
  EXPECT_EQ(w2, w1.pow(2));
  EXPECT_TRUE(w1.pow(3).is_zero());
  EXPECT_FALSE(w1.pow(2).is_zero());
  EXPECT_EQ(ring->poincare(), (std::vector<int>{1, 1, 1, 0, 0, 0, 0}));
  EXPECT_EQ(dense_betti(ring), ring->poincare());
}

TEST(Gf2Ring, GrassmannianBettiNumbersCountSchubertCells) {
  for (int n = 3; n <= 9; ++n) {
    const int dim = 2 * (n - 2);
    EXPECT_EQ(grassmannian_ring(n, dim)->poincare(), schubert_betti(n, dim)) << n;
  }
  for (int n : {3, 7, 11}) {
    const auto& M = catalog().get("gr2_" + std::to_string(n));
    EXPECT_EQ(M.ring->poincare(), schubert_betti(n, 2 * n)) << n;
  }
}

TEST(Gf2Ring, DualClassesInvertTheTautologicalClass) {
  for (int n = 3; n <= 11; ++n) {
    const auto comps = dual_classes_gr2(n);
    Gf2Poly wbar;
    for (const auto& c : comps) wbar += c;
    const Gf2Poly w = Gf2Poly::one(2) + Gf2Poly::variable(2, 0) + Gf2Poly::variable(2, 1);
    const Gf2Poly prod = w * wbar;
    for (const auto& e : prod.terms()) {
      const int d = monomial_degree(e, {1, 2});
      EXPECT_TRUE(d == 0 || d > n) << n;
    }
  }
}

TEST(Gf2Ring, PrunedBuildAgreesWithDenseEliminationOnCatalogProducts) {
  for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
           {"klein", "rp3"}, {"sigma2", "rp2"}, {"gr2_3", "t2"}, {"rp2", "rp2"}, {"s2", "klein"}}) {
    const ProductSpace P = product_space(catalog().get(a), catalog().get(b));
    EXPECT_EQ(P.space.ring->poincare(), dense_betti(P.space.ring)) << a << " x " << b;
  }
  for (const auto& s : catalog().spaces())
    if (s.dim <= 8) {
      EXPECT_EQ(s.ring->poincare(), dense_betti(s.ring)) << s.name;
    }
}

TEST(Gf2Ring, NormalFormIsIdempotentAndMultiplicationCommutes) {
  const auto& M = catalog().get("sigma2");
  const auto& names = M.ring->names();
  for (const auto& x : names)
    for (const auto& y : names) {
      const Gf2Class a = Gf2Class::generator(M.ring, x), b = Gf2Class::generator(M.ring, y);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(M.ring->normal_form((a * b).poly()), (a * b).poly());
    }
}

TEST(Gf2Ring, InverseOfATotalClass) {
  const auto& M = catalog().get("rp7");
  const Gf2Class w = Gf2Class::parse(M.ring, "1 + a + a^3");
  EXPECT_EQ(w * w.inverse(), Gf2Class::one(M.ring));
  EXPECT_THROW(Gf2Class::parse(M.ring, "a").inverse(), InvalidArgument);
}

TEST(Surfaces, WuFormulaAndPoincareDuality) {
  for (const std::string name : {"rp2", "s2", "t2", "klein", "sigma2"}) {
    const auto& M = catalog().get(name);
    const BundleDescriptor& T = M.tangent();
    // The Wu class v1 is w1(T): x^2 = w1 x on H^1; and w2 = v1^2.
    for (const auto& e : M.ring->basis(1)) {
      const Gf2Class x(M.ring, Gf2Poly::monomial(e));
      EXPECT_EQ(x * x, T.w1() * x) << name;
    }
    EXPECT_EQ(T.w2(), T.w1() * T.w1()) << name;
    EXPECT_TRUE(poincare_pairing_nondegenerate(M.ring, 2)) << name;
  }
  for (const std::string name : {"rp3", "rp5", "rp7", "t3"}) {
    const auto& M = catalog().get(name);
    EXPECT_TRUE(poincare_pairing_nondegenerate(M.ring, M.dim)) << name;
  }
  // Parallelizable.
  for (const std::string name : {"rp3", "rp7", "t3"}) EXPECT_EQ(catalog().get(name).tangent().w, Gf2Class::one(catalog().get(name).ring));
}

TEST(Kunneth, BettiNumbersConvolveAndTangentClassesMultiply) {
  const auto& A = catalog().get("rp2");
  const auto& B = catalog().get("klein");
  const ProductSpace P = product_space(A, B);
  std::vector<int> conv(A.dim + B.dim + 1, 0);
  for (int i = 0; i <= A.dim; ++i)
    for (int j = 0; j <= B.dim; ++j) conv[i + j] += A.ring->betti(i) * B.ring->betti(j);
  EXPECT_EQ(P.space.ring->poincare(), conv);
  EXPECT_TRUE(is_well_defined_morphism(A.ring, P.space.ring, P.first_images));
  EXPECT_TRUE(is_well_defined_morphism(B.ring, P.space.ring, P.second_images));
  // w(T) = (1 + a + a^2)(1 + a') for the renamed Klein generator.
  EXPECT_EQ(P.space.tangent().w, Gf2Class::parse(P.space.ring, "1 + a + a^2") * Gf2Class::parse(P.space.ring, "1 + a'"));
  EXPECT_EQ(P.space.tangent().rank, 4);
}

TEST(Stability, ProductWithTheLineKeepsClasses) {
  for (const std::string name : {"rp2", "klein", "gr2_3"}) {
    const auto& M = catalog().get(name);
    const SpaceDescriptor S = stabilize(M, 1);
    EXPECT_EQ(S.dim, M.dim + 1);
    EXPECT_EQ(S.tangent().rank, M.tangent().rank + 1);
    EXPECT_EQ(S.tangent().to_string(), M.tangent().to_string());
    EXPECT_EQ(S.bundle("T_base").rank, M.tangent().rank);
    const ProductSpace P = product_space(M, real_line());
    EXPECT_EQ(P.space.ring->poincare().size(), M.ring->poincare().size() + 1);
    EXPECT_EQ(P.space.tangent().to_string(), M.tangent().to_string());
  }
}

TEST(Catalog, StabilizedEntriesMatchTheirBase) {
  for (const auto& s : catalog().spaces()) {
    if (s.base.empty()) continue;
    const auto& base = catalog().get(s.base);
    const SpaceDescriptor rebuilt = stabilize(base, s.dim - base.dim);
    EXPECT_EQ(rebuilt.tangent().to_string(), s.tangent().to_string()) << s.name;
    EXPECT_EQ(rebuilt.tangent().rank, s.tangent().rank) << s.name;
  }
}

TEST(Catalog, GrassmannianEntriesMatchTheDerivation) {
  for (int n : {3, 7, 11}) {
    const auto& M = catalog().get("gr2_" + std::to_string(n));
    for (TangentMode mode : {TangentMode::paper, TangentMode::oracle}) {
      const BundleDescriptor T = grassmannian_tangent(M.ring, n, mode);
      EXPECT_EQ(T.w, M.tangent(mode).w) << n << " " << tangent_mode_name(mode);
    }
  }
  // The two modes disagree on Gr_{2,3}.
  const auto& g = catalog().get("gr2_3");
  EXPECT_EQ(g.tangent(TangentMode::paper).to_string(), "1 + w1");
  EXPECT_EQ(g.tangent(TangentMode::oracle).to_string(), "1 + w1 + w1^2");
}

TEST(Catalog, AliasesAndErrors) {
  EXPECT_EQ(catalog().get("gr2n1").name, "gr2_3_r1");
  EXPECT_EQ(catalog().get("s1").name, "rp1");
  EXPECT_THROW(catalog().get("nowhere"), InvalidArgument);
  EXPECT_THROW(catalog().get("rp2").bundle("nothing"), InvalidArgument);
  EXPECT_THROW(Catalog::load("/nonexistent/catalog.json"), InvalidArgument);
  nlohmann::json bad = {{"spaces", {{{"name", "x"}, {"dimension", 1}, {"generators", nlohmann::json::array()},
                                     {"relations", nlohmann::json::array()},
                                     {"bundles", {{{"name", "T"}, {"rank", 1}, {"w", "1 + q"}}}}}}}};
  EXPECT_THROW(Catalog::from_json(bad), InvalidArgument);
}

TEST(Bundles, TensorWithALineMatchesTheTwistFormula) {
  const auto& M = catalog().get("sigma2");
  const BundleDescriptor L1 = M.bundle("la1"), L2 = M.bundle("lb1"), L3 = M.bundle("la2");
  const BundleDescriptor P = whitney(whitney(L1, L2), L3);
  const BundleDescriptor Q = whitney(L1, L2);
  for (const auto& E : {P, Q, L1}) {
    EXPECT_EQ(split_tensor(E, SplitOp::tensor, &L3).w, line_twist(E, L3).w);
  }
  // (L1 + L2) (x) L3 = L1 L3 + L2 L3, and L1 L3 has w1 = a1 + a2.
  EXPECT_EQ(line_twist(Q, L3).w, line_twist(L1, L3).w * line_twist(L2, L3).w);
  EXPECT_EQ(line_twist(L1, L3).w1(), Gf2Class::parse(M.ring, "a1 + a2"));
}

TEST(Bundles, EndomorphismsOfARankTwoBundle) {
  const auto& M = catalog().get("rp7");
  const BundleDescriptor E = whitney(M.bundle("gamma"), trivial_bundle(M.ring, 1));
  // E = L + R, so E (x) E* = 2R + 2L with w = (1 + a)^2.
  EXPECT_EQ(split_tensor(E, SplitOp::hom_self).w, Gf2Class::parse(M.ring, "1 + a^2"));
  EXPECT_EQ(split_tensor(E, SplitOp::dual).w, E.w);
  EXPECT_THROW(line_twist(E, E), InvalidArgument);
}
