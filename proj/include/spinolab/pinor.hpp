#pragma once

#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "spinolab/spino.hpp"

namespace spinolab {

using SparseMatrix = Eigen::SparseMatrix<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr int kMaxPinorDim = 11;

inline double frobenius(const Matrix& m) { return m.norm(); }

// Real Clifford representation: generator matrices, all blade matrices, and
// J = gamma(e_1 ... e_d).
class MatrixRep {
 public:
  MatrixRep(Signature sig, std::vector<Matrix> gens) : sig_(sig), gens_(std::move(gens)) {
    require(static_cast<int>(gens_.size()) == sig_.dim(), "one matrix per generator is required");
    require(!gens_.empty(), "empty representation");
    n_ = static_cast<int>(gens_[0].rows());
    const std::size_t count = std::size_t{1} << sig_.dim();
    blades_.resize(count);
    blades_[0] = SparseMatrix(n_, n_);
    blades_[0].setIdentity();
    for (std::size_t b = 1; b < count; ++b) {
      const int top = 31 - std::countl_zero(static_cast<Blade>(b));
      SparseMatrix g = gens_[top].sparseView();
      blades_[b] = (blades_[b & ~(std::size_t{1} << top)] * g).pruned();
    }
    J_ = Matrix(blades_[count - 1]);
  }

  const Signature& signature() const { return sig_; }
  int N() const { return n_; }
  const std::vector<Matrix>& gens() const { return gens_; }
  const Matrix& gen(int i) const { return gens_[i]; }
  // gamma(nu) for the positive orientation.
  const Matrix& J() const { return J_; }
  const SparseMatrix& blade(Blade b) const { return blades_[b]; }

  template <class T>
  Matrix of(const Multivector<T>& a) const {
    require(a.signature() == sig_, "multivector signature does not match the representation");
    Matrix m = Matrix::Zero(n_, n_);
    for (const auto& [b, c] : a.terms()) {
      const double cd = ScalarTraits<T>::to_double(c);
      const SparseMatrix& s = blades_[b];
      for (int k = 0; k < s.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(s, k); it; ++it) m(it.row(), it.col()) += cd * it.value();
    }
    return m;
  }

  Matrix vec(const std::vector<double>& v) const {
    require(static_cast<int>(v.size()) == sig_.dim(), "vector length does not match signature");
    Matrix m = Matrix::Zero(n_, n_);
    for (int i = 0; i < sig_.dim(); ++i) m += v[i] * gens_[i];
    return m;
  }

  // max |g_i g_j + g_j g_i - 2 h_ij I|
  double clifford_defect() const {
    double worst = 0;
    const Matrix I = Matrix::Identity(n_, n_);
    for (int i = 0; i < sig_.dim(); ++i)
      for (int j = i; j < sig_.dim(); ++j) {
        Matrix r = gens_[i] * gens_[j] + gens_[j] * gens_[i];
        if (i == j) r -= 2.0 * sig_.square(i) * I;
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
      }
    return worst;
  }

 private:
  Signature sig_;
  std::vector<Matrix> gens_;
  std::vector<SparseMatrix> blades_;
  Matrix J_;
  int n_ = 0;
};

namespace detail {

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

inline ComplexMatrix pauli(int k) {
  using C = std::complex<double>;
  ComplexMatrix m(2, 2);
  if (k == 1) m << 0, 1, 1, 0;
  if (k == 2) m << 0, C(0, -1), C(0, 1), 0;
  if (k == 3) m << 1, 0, 0, -1;
  return m;
}

inline ComplexMatrix kron_chain(const std::vector<ComplexMatrix>& factors) {
  ComplexMatrix r = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) r = kron(r, f);
  return r;
}

// a + bi -> [[a, -b], [b, a]] blockwise.
inline Matrix realify(const ComplexMatrix& m) {
  const Eigen::Index n = m.rows();
  Matrix r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = m.real();
  r.topRightCorner(n, n) = -m.imag();
  r.bottomLeftCorner(n, n) = m.imag();
  r.bottomRightCorner(n, n) = m.real();
  return r;
}

}  // namespace detail

// Elementary real pinor representation for p - q = 3, 7 (mod 8), d <= 11.
inline MatrixRep build_gamma0(const Signature& sig) {
  const int d = sig.dim();
  alpha_pq(sig.p(), sig.q());
  require(d <= kMaxPinorDim, "pinor representations are supported up to d = 11");
  const int m = (d - 1) / 2;
  const ComplexMatrix I2 = ComplexMatrix::Identity(2, 2);
  // Euclidean complex gammas of size 2^m: sigma3^k (x) sigma_{1,2} (x) I^(m-k-1), and sigma3^m.
  std::vector<ComplexMatrix> euclid;
  for (int k = 0; k < m; ++k)
    for (int s : {1, 2}) {
      std::vector<ComplexMatrix> f(k, detail::pauli(3));
      f.push_back(detail::pauli(s));
      f.insert(f.end(), m - k - 1, I2);
      euclid.push_back(detail::kron_chain(f));
    }
  euclid.push_back(detail::kron_chain(std::vector<ComplexMatrix>(m, detail::pauli(3))));
  std::vector<Matrix> gens;
  for (int i = 0; i < d; ++i) {
    ComplexMatrix g = euclid[i];
    if (sig.square(i) < 0) g *= std::complex<double>(0, 1);
    gens.push_back(detail::realify(g));
  }
  MatrixRep rep(sig, std::move(gens));
  if (rep.clifford_defect() > 1e-12) throw StructuralFailure("gamma matrices violate the Clifford relations");
  return rep;
}

// --- linear solves ----------------------------------------------------------

namespace detail {

struct SparseEquation {
  std::vector<std::pair<int, double>> terms;
};

// Equations T a_i - sign * b_i T = 0 in the N*N unknowns T(r, c) -> r * N + c.
inline std::vector<SparseEquation> intertwiner_equations(const std::vector<Matrix>& a, const std::vector<Matrix>& b,
                                                         int sign) {
  const int n = static_cast<int>(a[0].rows());
  std::vector<SparseEquation> eqs;
  for (std::size_t g = 0; g < a.size(); ++g) {
    const SparseMatrix sa = a[g].sparseView();
    const SparseMatrix sbt = Matrix(b[g].transpose()).sparseView();
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        std::map<int, double> acc;
        // (T a)(r, c) = sum_k T(r, k) a(k, c)
        for (SparseMatrix::InnerIterator it(sa, c); it; ++it) acc[r * n + static_cast<int>(it.row())] += it.value();
        // (b T)(r, c) = sum_k b(r, k) T(k, c)
        for (SparseMatrix::InnerIterator it(sbt, r); it; ++it)
          acc[static_cast<int>(it.row()) * n + c] -= sign * it.value();
        SparseEquation e;
        for (const auto& [u, v] : acc)
          if (std::abs(v) > 1e-12) e.terms.emplace_back(u, v);
        if (!e.terms.empty()) eqs.push_back(std::move(e));
      }
  }
  return eqs;
}

// Weighted union-find solving systems whose equations have at most two terms:
// x_u = ratio * x_root within each component.
class RatioUnionFind {
 public:
  explicit RatioUnionFind(int n) : parent_(n), ratio_(n, 1.0), zero_(n, false) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::pair<int, double> find(int u) {
    if (parent_[u] == u) return {u, 1.0};
    auto [root, r] = find(parent_[u]);
    parent_[u] = root;
    ratio_[u] *= r;
    return {root, ratio_[u]};
  }

  // x_u = f * x_v
  void relate(int u, int v, double f) {
    auto [ru, Ru] = find(u);
    auto [rv, Rv] = find(v);
    if (ru == rv) {
      if (std::abs(Ru - f * Rv) > 1e-9) zero_[ru] = true;
      return;
    }
    parent_[ru] = rv;
    ratio_[ru] = f * Rv / Ru;
    zero_[rv] = zero_[rv] || zero_[ru];
  }

  void force_zero(int u) { zero_[find(u).first] = true; }
  bool is_zero_root(int r) const { return zero_[r]; }

 private:
  std::vector<int> parent_;
  std::vector<double> ratio_;
  std::vector<bool> zero_;
};

}  // namespace detail

// Basis of {T : T a_i = sign * b_i T for all i}, from the exact elimination of
// the two-term equations produced by monomial generator matrices.
inline std::vector<Matrix> intertwiner_basis(const std::vector<Matrix>& a, const std::vector<Matrix>& b, int sign) {
  require(!a.empty() && a.size() == b.size(), "generator lists must match");
  const int n = static_cast<int>(a[0].rows());
  const auto eqs = detail::intertwiner_equations(a, b, sign);
  detail::RatioUnionFind uf(n * n);
  for (const auto& e : eqs) {
    if (e.terms.size() > 2) throw InvalidArgument("generators are not monomial matrices");
    if (e.terms.size() == 1) {
      uf.force_zero(e.terms[0].first);
    } else {
      uf.relate(e.terms[0].first, e.terms[1].first, -e.terms[1].second / e.terms[0].second);
    }
  }
  std::map<int, Matrix> comps;
  for (int u = 0; u < n * n; ++u) {
    auto [root, r] = uf.find(u);
    if (uf.is_zero_root(root)) continue;
    auto [it, inserted] = comps.try_emplace(root, Matrix::Zero(n, n));
    it->second(u / n, u % n) = r;
  }
  std::vector<Matrix> basis;
  for (auto& [root, m] : comps) basis.push_back(std::move(m));
  return basis;
}

inline std::vector<Matrix> commutant_basis(const std::vector<Matrix>& gens, int sign) {
  return intertwiner_basis(gens, gens, sign);
}

// Dimension of the same solution space from dense LU rank computations on
// the connected blocks of the stacked system.
inline int commutant_dimension_blocks(const std::vector<Matrix>& gens, int sign) {
  const int n = static_cast<int>(gens[0].rows());
  const int nn = n * n;
  const auto eqs = detail::intertwiner_equations(gens, gens, sign);
  std::vector<int> parent(nn);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int u) {
    while (parent[u] != u) u = parent[u] = parent[parent[u]];
    return u;
  };
  for (const auto& e : eqs)
    for (std::size_t k = 1; k < e.terms.size(); ++k) parent[find(e.terms[k].first)] = find(e.terms[0].first);
  std::map<int, std::vector<int>> unknowns;
  for (int u = 0; u < nn; ++u) unknowns[find(u)].push_back(u);
  std::map<int, std::vector<const detail::SparseEquation*>> rows;
  for (const auto& e : eqs) rows[find(e.terms[0].first)].push_back(&e);
  int nullity = 0;
  for (const auto& [root, vars] : unknowns) {
    std::map<int, int> col;
    for (int u : vars) col.emplace(u, static_cast<int>(col.size()));
    const auto& block_rows = rows[root];
    if (block_rows.empty()) {
      nullity += static_cast<int>(vars.size());
      continue;
    }
    Matrix A = Matrix::Zero(static_cast<Eigen::Index>(block_rows.size()), static_cast<Eigen::Index>(vars.size()));
    for (std::size_t r = 0; r < block_rows.size(); ++r)
      for (const auto& [u, v] : block_rows[r]->terms) A(static_cast<Eigen::Index>(r), col.at(u)) += v;
    Eigen::FullPivLU<Matrix> lu(A);
    lu.setThreshold(1e-10);
    nullity += static_cast<int>(vars.size()) - static_cast<int>(lu.rank());
  }
  return nullity;
}

// Dense kernel of the stacked system; small N only.
inline std::vector<Matrix> commutant_basis_dense(const std::vector<Matrix>& gens, int sign) {
  const int n = static_cast<int>(gens[0].rows());
  require(n <= 16, "dense commutant solve is limited to N <= 16");
  const int nn = n * n;
  Matrix A = Matrix::Zero(static_cast<Eigen::Index>(gens.size()) * nn, nn);
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const Eigen::Index row = static_cast<Eigen::Index>(g) * nn + r * n + c;
        for (int k = 0; k < n; ++k) {
          A(row, r * n + k) += gens[g](k, c);
          A(row, k * n + c) -= sign * gens[g](r, k);
        }
      }
  Eigen::FullPivLU<Matrix> lu(A);
  lu.setThreshold(1e-10);
  const Matrix K = lu.kernel();
  std::vector<Matrix> basis;
  if (lu.dimensionOfKernel() == 0) return basis;
  for (Eigen::Index j = 0; j < K.cols(); ++j) {
    Matrix m(n, n);
    for (int u = 0; u < nn; ++u) m(u / n, u % n) = K(u, j);
    basis.push_back(m);
  }
  return basis;
}

// Distance from X to span(basis) in the Frobenius norm.
inline double span_residual(const std::vector<Matrix>& basis, const Matrix& X) {
  const auto k = static_cast<Eigen::Index>(basis.size());
  if (k == 0) return frobenius(X);
  Matrix G(k, k);
  Eigen::VectorXd rhs(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    rhs(i) = (basis[i].array() * X.array()).sum();
    for (Eigen::Index j = 0; j < k; ++j) G(i, j) = (basis[i].array() * basis[j].array()).sum();
  }
  const Eigen::VectorXd c = G.colPivHouseholderQr().solve(rhs);
  Matrix r = X;
  for (Eigen::Index i = 0; i < k; ++i) r -= c(i) * basis[i];
  return frobenius(r);
}

// Rank of a list of matrices viewed as vectors.
inline int matrix_rank(const std::vector<Matrix>& ms) {
  if (ms.empty()) return 0;
  Matrix stacked(ms[0].size(), static_cast<Eigen::Index>(ms.size()));
  for (std::size_t j = 0; j < ms.size(); ++j) stacked.col(static_cast<Eigen::Index>(j)) = ms[j].reshaped();
  Eigen::ColPivHouseholderQR<Matrix> qr(stacked);
  qr.setThreshold(1e-9);
  return static_cast<int>(qr.rank());
}

// max_i |X g_i - sign g_i X|
inline double commutation_residual(const MatrixRep& rep, const Matrix& X, int sign) {
  double worst = 0;
  for (const auto& g : rep.gens()) worst = std::max(worst, (X * g - sign * g * X).cwiseAbs().maxCoeff());
  return worst;
}

// --- natural subspaces and D ------------------------------------------------

namespace detail {

// Scales an anticommutant element so that its square is +-I.
inline Matrix normalize_anticommutant(const Matrix& A, int alpha) {
  const Eigen::Index n = A.rows();
  const Matrix sq = A * A;
  const double c = sq.trace() / static_cast<double>(n);
  if ((sq - c * Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, std::abs(c)))
    throw StructuralFailure("anticommutant element does not square to a multiple of the identity");
  if ((c > 0 ? 1 : -1) != alpha) throw StructuralFailure("D^2 has the wrong sign");
  return A / std::sqrt(std::abs(c));
}

}  // namespace detail

struct NaturalSubspaces {
  std::vector<Matrix> schur_basis;     // I, J
  std::vector<Matrix> anticomm_basis;  // D, J D
  std::vector<Matrix> twist_basis;     // I, J, D, J D
  std::vector<Matrix> schur_solution;  // raw solver output
  std::vector<Matrix> anticomm_solution;
  int schur_dim = 0;
  int anticomm_dim = 0;
  int twist_dim = 0;
  int schur_dim_blocks = 0;
  int anticomm_dim_blocks = 0;
};

inline Matrix D_from_solution(const std::vector<Matrix>& anticomm, int alpha) {
  if (anticomm.size() != 2) throw StructuralFailure("anticommutant has dimension " + std::to_string(anticomm.size()));
  return detail::normalize_anticommutant(anticomm[0], alpha);
}

inline NaturalSubspaces natural_subspaces(const MatrixRep& rep) {
  const int alpha = alpha_pq(rep.signature().p(), rep.signature().q());
  NaturalSubspaces ns;
  ns.schur_solution = commutant_basis(rep.gens(), 1);
  ns.anticomm_solution = commutant_basis(rep.gens(), -1);
  ns.schur_dim = static_cast<int>(ns.schur_solution.size());
  ns.anticomm_dim = static_cast<int>(ns.anticomm_solution.size());
  ns.schur_dim_blocks = commutant_dimension_blocks(rep.gens(), 1);
  ns.anticomm_dim_blocks = commutant_dimension_blocks(rep.gens(), -1);
  if (ns.schur_dim != 2 || ns.schur_dim_blocks != 2)
    throw StructuralFailure("Schur algebra has dimension " + std::to_string(ns.schur_dim));
  if (ns.anticomm_dim != 2 || ns.anticomm_dim_blocks != 2)
    throw StructuralFailure("anticommutant has dimension " + std::to_string(ns.anticomm_dim));
  const Matrix I = Matrix::Identity(rep.N(), rep.N());
  const Matrix& J = rep.J();
  const Matrix D = D_from_solution(ns.anticomm_solution, alpha);
  ns.schur_basis = {I, J};
  ns.anticomm_basis = {D, J * D};
  ns.twist_basis = {I, J, D, J * D};
  ns.twist_dim = matrix_rank(ns.twist_basis);
  if (span_residual(ns.schur_solution, J) > 1e-9) throw StructuralFailure("J is not in the Schur algebra");
  if (ns.twist_dim != 4) throw StructuralFailure("S + A is not 4-dimensional");
  return ns;
}

inline Matrix find_D(const MatrixRep& rep) {
  return D_from_solution(commutant_basis(rep.gens(), -1), alpha_pq(rep.signature().p(), rep.signature().q()));
}

// exp(phi J) for J^2 = -I.
inline Matrix exp_J(const Matrix& J, double phi) {
  return std::cos(phi) * Matrix::Identity(J.rows(), J.cols()) + std::sin(phi) * J;
}

// theta with D2 = exp(theta J) D1, and the fit residual.
inline std::pair<double, double> torsor_angle(const Matrix& J, const Matrix& D1, const Matrix& D2, int alpha) {
  const double n = static_cast<double>(J.rows());
  const Matrix X = D2 * D1 * static_cast<double>(alpha);  // D1^{-1} = alpha D1
  const double c = X.trace() / n;
  const double s = -(J * X).trace() / n;
  const double theta = std::atan2(s, c);
  return {theta, (D2 - exp_J(J, theta) * D1).cwiseAbs().maxCoeff()};
}

struct DTorsorSample {
  Matrix D;
  Matrix D_second;
  double theta = 0;
  double residual = 0;
};

// A second solution from the other solver basis vector, located on the torsor.
inline DTorsorSample D_torsor(const MatrixRep& rep) {
  const int alpha = alpha_pq(rep.signature().p(), rep.signature().q());
  const auto sol = commutant_basis(rep.gens(), -1);
  DTorsorSample t;
  t.D = D_from_solution(sol, alpha);
  t.D_second = detail::normalize_anticommutant(sol[1] + 0.5 * sol[0], alpha);
  std::tie(t.theta, t.residual) = torsor_angle(rep.J(), t.D, t.D_second, alpha);
  return t;
}

// --- gamma^(2) and gamma_o ----------------------------------------------------

struct Gamma2 {
  int alpha = 1;
  int nu_sign = 1;
  Matrix J;  // nu_sign * gamma(nu)
  Matrix D;
  Matrix e1, e2;

  Matrix of(const Multivector<double>& b) const {
    require(b.signature() == plane_signature(alpha), "element is not in Cl2(alpha)");
    const Eigen::Index n = D.rows();
    return b.coeff(0) * Matrix::Identity(n, n) + b.coeff(0b01) * e1 + b.coeff(0b10) * e2 + b.coeff(0b11) * Matrix(e1 * e2);
  }
};

inline Gamma2 gamma2(const MatrixRep& rep, int nu_sign, const Matrix& D) {
  require(nu_sign == 1 || nu_sign == -1, "nu_sign must be +1 or -1");
  Gamma2 g;
  g.alpha = alpha_pq(rep.signature().p(), rep.signature().q());
  g.nu_sign = nu_sign;
  g.J = nu_sign * rep.J();
  g.D = D;
  g.e1 = D;
  g.e2 = -g.alpha * g.J * D;
  return g;
}

inline Report gamma2_check(const MatrixRep& rep, const Gamma2& g, const RunConfig& cfg) {
  Report report("gamma2", cfg);
  const Eigen::Index n = rep.N();
  const Matrix I = Matrix::Identity(n, n);
  const double rel = std::max({(g.e1 * g.e1 - g.alpha * I).cwiseAbs().maxCoeff(), (g.e2 * g.e2 - g.alpha * I).cwiseAbs().maxCoeff(),
                               (g.e1 * g.e2 + g.e2 * g.e1).cwiseAbs().maxCoeff()});
  report.add_residual("clifford_relations", rel, "pinor.gamma2-is-cl2-rep");
  report.add_residual("J0_maps_to_J", (g.e1 * g.e2 - g.J).cwiseAbs().maxCoeff(), "pinor.gamma2-of-J0");
  report.add_residual("vectors_in_anticommutant",
                      std::max(commutation_residual(rep, g.e1, -1), commutation_residual(rep, g.e2, -1)),
                      "pinor.gamma2-image-of-plane");
  report.add_residual("even_part_in_schur", commutation_residual(rep, Matrix(g.e1 * g.e2), 1), "pinor.gamma2-image-of-even");
  report.add_residual("D_antilinear", (g.D * g.J + g.J * g.D).cwiseAbs().maxCoeff(), "pinor.D-antilinear");
  return report;
}

// T with Ad(T) o gamma2_from = gamma2_to on generators.
inline Matrix equivalence_conjugator(const Gamma2& from, const Gamma2& to) {
  require(from.alpha == to.alpha, "different alpha");
  // Ad(D) swaps the orientation sign and fixes D; exp(theta J / 2) rotates D.
  const double theta = torsor_angle(from.J, from.D, to.D, from.alpha).first;
  Matrix T = exp_J(from.J, theta / 2);
  if (from.nu_sign != to.nu_sign) T = T * from.D;
  return T;
}

inline double equivalence_residual(const Gamma2& from, const Gamma2& to, const Matrix& T) {
  const Matrix Tinv = T.inverse();
  return std::max((T * from.e1 * Tinv - to.e1).cwiseAbs().maxCoeff(), (T * from.e2 * Tinv - to.e2).cwiseAbs().maxCoeff());
}

inline Matrix gamma_o(const SpinoElement& g, const MatrixRep& rep, const Gamma2& g2) {
  require(g.alpha() == g2.alpha, "element alpha differs from the representation");
  return rep.of(g.spin_part()) * g2.of(g.pin2_part());
}

// gamma_0(lambda~(g) v) gamma_o(g) = gamma_o(g) gamma_0(v)
inline Report check_intertwiner(const MatrixRep& rep, const Gamma2& g2, const RunConfig& cfg) {
  Report report("intertwiner", cfg);
  Rng rng(cfg.seed + 3);
  const Signature& sig = rep.signature();
  const int alpha = g2.alpha;
  const Eigen::Index n = rep.N();
  double cm = 0, hom = 0, sign_class = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    const SpinoElement g = random_spino(sig, alpha, rng);
    const SpinoElement h = random_spino(sig, alpha, rng);
    std::vector<double> v(sig.dim());
    std::normal_distribution<double> normal;
    for (double& x : v) x = normal(rng);
    const Matrix go = gamma_o(g, rep, g2);
    const Eigen::VectorXd lv = lambda_tilde(g) * Eigen::Map<const Eigen::VectorXd>(v.data(), sig.dim());
    const Matrix lhs = rep.vec(std::vector<double>(lv.data(), lv.data() + lv.size())) * go;
    cm = std::max(cm, (lhs - go * rep.vec(v)).cwiseAbs().maxCoeff());
    hom = std::max(hom, (gamma_o(g * h, rep, g2) - go * gamma_o(h, rep, g2)).cwiseAbs().maxCoeff());
    sign_class = std::max(sign_class, (rep.of(-g.spin_part()) * g2.of(-g.pin2_part()) - go).cwiseAbs().maxCoeff());
  }
  report.add_residual("clifford_multiplication", cm, "pinor.gamma-o-intertwines-lambda-tilde");
  report.add_residual("gamma_o.homomorphism", hom, "pinor.gamma-o-homomorphism");
  report.add_residual("gamma_o.sign_class", sign_class, "pinor.gamma-o-well-defined");
  const Matrix minus = gamma_o(spino_twisted_unit(sig, alpha), rep, g2);
  report.add_residual("gamma_o.one_tilde", (minus + Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), "pinor.gamma-o-well-defined");
  // [1, D]: gamma_0(-v) D = D gamma_0(v)
  const Matrix gd = gamma_o(spino_D_hat(sig, alpha), rep, g2);
  double dflip = 0;
  for (int i = 0; i < sig.dim(); ++i) dflip = std::max(dflip, (-rep.gen(i) * gd - gd * rep.gen(i)).cwiseAbs().maxCoeff());
  report.add_residual("D_hat_flips_vectors", dflip, "pinor.gamma-o-intertwines-lambda-tilde");
  return report;
}

// Ad o gamma_o on S, A and T.
inline Report induced_reps_check(const MatrixRep& rep, const Gamma2& g2, const RunConfig& cfg) {
  Report report("induced", cfg);
  Rng rng(cfg.seed + 5);
  const Signature& sig = rep.signature();
  const int alpha = g2.alpha;
  double s_pres = 0, a_pres = 0, ad_s = 0, ad_a = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    const SpinoElement g = random_spino(sig, alpha, rng);
    const Matrix X = gamma_o(g, rep, g2);
    const Matrix Xinv = X.inverse();
    const Matrix adJ = X * g2.J * Xinv;
    s_pres = std::max(s_pres, commutation_residual(rep, adJ, 1));
    ad_s = std::max(ad_s, (adJ - (g.odd() ? -1.0 : 1.0) * g2.J).cwiseAbs().maxCoeff());
    const Matrix m = mu(g);
    const Matrix basis[2] = {g2.e1, g2.e2};
    for (int k = 0; k < 2; ++k) {
      const Matrix img = X * basis[k] * Xinv;
      a_pres = std::max(a_pres, commutation_residual(rep, img, -1));
      const Matrix expect = m(0, k) * basis[0] + m(1, k) * basis[1];
      ad_a = std::max(ad_a, (img - expect).cwiseAbs().maxCoeff());
    }
  }
  report.add_residual("preserves_schur", s_pres, "pinor.ad-gamma-o-preserves-subspaces");
  report.add_residual("preserves_anticommutant", a_pres, "pinor.ad-gamma-o-preserves-subspaces");
  report.add_residual("ad_schur_is_parity", ad_s, "pinor.ad-on-schur-is-conjugation");
  report.add_residual("ad_anticommutant_is_mu", ad_a, "pinor.ad-on-anticommutant-is-mu");
  return report;
}

// --- Majorana projectors -------------------------------------------------------

struct MajoranaProjectors {
  Matrix plus;   // (I - D) / 2
  Matrix minus;  // (I + D) / 2
  int rank_plus = 0;
  int rank_minus = 0;
};

inline MajoranaProjectors majorana(const MatrixRep& rep, const Matrix& D) {
  require(alpha_pq(rep.signature().p(), rep.signature().q()) == 1, "Majorana projectors need alpha = +1");
  const Eigen::Index n = rep.N();
  const Matrix I = Matrix::Identity(n, n);
  require((D * D - I).cwiseAbs().maxCoeff() < 1e-9, "D must square to the identity");
  MajoranaProjectors m;
  m.plus = 0.5 * (I - D);
  m.minus = 0.5 * (I + D);
  auto rank = [](const Matrix& p) {
    Eigen::FullPivLU<Matrix> lu(p);
    lu.setThreshold(1e-9);
    return static_cast<int>(lu.rank());
  };
  m.rank_plus = rank(m.plus);
  m.rank_minus = rank(m.minus);
  return m;
}

inline Report majorana_check(const MatrixRep& rep, const Matrix& D, const RunConfig& cfg) {
  Report report("majorana", cfg);
  const MajoranaProjectors m = majorana(rep, D);
  const Eigen::Index n = rep.N();
  const Matrix I = Matrix::Identity(n, n);
  const double proj = std::max({(m.plus * m.plus - m.plus).cwiseAbs().maxCoeff(), (m.minus * m.minus - m.minus).cwiseAbs().maxCoeff(),
                                (m.plus + m.minus - I).cwiseAbs().maxCoeff(), (m.plus * m.minus).cwiseAbs().maxCoeff(),
                                (m.minus * m.plus).cwiseAbs().maxCoeff()});
  report.add_residual("projector_identities", proj, "pinor.majorana-projectors");
  const bool ranks = m.rank_plus == n / 2 && m.rank_minus == n / 2;
  report.add("ranks_half", ranks, std::abs(m.rank_plus - n / 2) + std::abs(m.rank_minus - n / 2), "pinor.majorana-projectors");
  report.add_residual("trace_half", std::abs(m.plus.trace() - n / 2.0) + std::abs(m.minus.trace() - n / 2.0),
                      "pinor.majorana-projectors");
  double swap = 0, keep = 0;
  const int d = rep.signature().dim();
  for (int i = 0; i < d; ++i) {
    swap = std::max({swap, (m.plus * rep.gen(i) * m.plus).cwiseAbs().maxCoeff(), (m.minus * rep.gen(i) * m.minus).cwiseAbs().maxCoeff()});
    for (int j = i + 1; j < d; ++j) {
      const Matrix e = rep.gen(i) * rep.gen(j);
      keep = std::max({keep, (m.minus * e * m.plus).cwiseAbs().maxCoeff(), (m.plus * e * m.minus).cwiseAbs().maxCoeff()});
    }
  }
  report.add_residual("vectors_swap_chiralities", swap, "pinor.vectors-exchange-majorana-subspaces");
  report.add_residual("even_products_preserve", keep, "pinor.even-part-preserves-majorana-subspaces");
  return report;
}

// --- extension cross-check ---------------------------------------------------------

// 4x4 real representation of Cl(3,1) (for (3,0)) or Cl(2,2) (for (1,2)), from
// which the restriction to the first three generators is a pinor
// representation and the fourth generator is a conjugation operator.
struct ExtensionRep {
  std::vector<Matrix> restricted;
  Matrix extra;
};

inline ExtensionRep extension_rep(int p, int q) {
  Matrix s1(2, 2), s3(2, 2), is2(2, 2), I2 = Matrix::Identity(2, 2);
  s1 << 0, 1, 1, 0;
  s3 << 1, 0, 0, -1;
  is2 << 0, 1, -1, 0;
  auto k = [](const Matrix& a, const Matrix& b) {
    Matrix r(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
    return r;
  };
  if (p == 3 && q == 0) return {{k(s1, I2), k(s3, I2), k(is2, is2)}, k(is2, s1)};
  if (p == 1 && q == 2) return {{k(s1, I2), k(is2, s1), k(is2, s3)}, k(s3, I2)};
  throw InvalidArgument("extension cross-check is available for (3,0) and (1,2)");
}

inline Report extension_cross_check(int p, int q, const RunConfig& cfg) {
  Report report("extension." + std::to_string(p) + "," + std::to_string(q), cfg);
  const Signature sig = Signature::pq(p, q);
  const int alpha = alpha_pq(p, q);
  const ExtensionRep ext = extension_rep(p, q);
  const MatrixRep restricted(sig, ext.restricted);
  report.add_residual("restricted_is_representation", restricted.clifford_defect(), "pinor.extension-argument", 1e-12);
  report.add_residual("extra_anticommutes", commutation_residual(restricted, ext.extra, -1), "pinor.extension-argument");
  report.add_residual("extra_squares_to_alpha", (ext.extra * ext.extra - alpha * Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(),
                      "pinor.extension-argument");
  // equivalent to build_gamma0: intertwiners form a 2-dimensional space
  const MatrixRep rep = build_gamma0(sig);
  const auto inter = intertwiner_basis(rep.gens(), restricted.gens(), 1);
  const bool equivalent = inter.size() == 2 && std::abs(inter[0].determinant()) > 1e-9;
  report.add("equivalent_to_gamma0", equivalent, equivalent ? 0 : 1, "pinor.extension-argument");
  if (equivalent) {
    // pull the extension's D back and locate it on the torsor of find_D
    const Matrix& T = inter[0];
    const Matrix pulled = T.inverse() * ext.extra * T;
    const Matrix D = find_D(rep);
    report.add_residual("pulled_back_D_on_torsor", torsor_angle(rep.J(), D, pulled, alpha).second, "pinor.D-torsor");
  }
  return report;
}

// Full check of one signature.
inline Report verify_pinor(int p, int q, const RunConfig& cfg) {
  const Signature sig = Signature::pq(p, q);
  const int alpha = alpha_pq(p, q);
  Report report("rep." + sig.to_string(), cfg);
  const MatrixRep rep = build_gamma0(sig);
  const int n = rep.N();
  report.add("dimension", n == (1 << ((sig.dim() + 1) / 2)), 0, "pinor.dimension");
  report.add_residual("clifford_relations", rep.clifford_defect(), "pinor.gamma0-relations", 1e-12);
  report.add_residual("J_squared", (rep.J() * rep.J() + Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), "pinor.volume-squares-to-minus-one",
                      1e-12);
  try {
    const NaturalSubspaces ns = natural_subspaces(rep);
    auto dims = [](int a, int b) { return "solve " + std::to_string(a) + ", blocks " + std::to_string(b); };
    report.add("schur_dim", ns.schur_dim == 2 && ns.schur_dim_blocks == 2, std::abs(ns.schur_dim - 2), "pinor.schur-is-complex",
               dims(ns.schur_dim, ns.schur_dim_blocks));
    report.add("anticommutant_dim", ns.anticomm_dim == 2 && ns.anticomm_dim_blocks == 2, std::abs(ns.anticomm_dim - 2),
               "pinor.anticommutant-dimension", dims(ns.anticomm_dim, ns.anticomm_dim_blocks));
    report.add("twist_dim", ns.twist_dim == 4, std::abs(ns.twist_dim - 4), "pinor.twist-is-direct-sum", std::to_string(ns.twist_dim));
    const Matrix& D = ns.anticomm_basis[0];
    report.add_residual("D_squared", (D * D - alpha * Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), "pinor.D-squares-to-alpha", 1e-12);
    report.add_residual("D_anticommutes", commutation_residual(rep, D, -1), "pinor.D-anticommutes", 1e-12);
    report.add_residual("D_antilinear", (D * rep.J() + rep.J() * D).cwiseAbs().maxCoeff(), "pinor.D-antilinear", 1e-12);
    const DTorsorSample t = D_torsor(rep);
    report.add_residual("second_D_on_torsor", t.residual, "pinor.D-torsor");
    report.extras()["torsor_theta"] = t.theta;

    const Gamma2 g2 = gamma2(rep, 1, D);
    report.merge(gamma2_check(rep, g2, cfg), "gamma2");
    // all (nu, D) pairs found are equivalent
    double equiv = 0;
    for (int nu : {1, -1})
      for (const Matrix* Dp : {&D, &t.D_second}) {
        const Gamma2 other = gamma2(rep, nu, *Dp);
        equiv = std::max(equiv, equivalence_residual(g2, other, equivalence_conjugator(g2, other)));
      }
    report.add_residual("gamma2_equivalence", equiv, "pinor.gamma2-choices-equivalent");
    report.merge(check_intertwiner(rep, g2, cfg), "intertwiner");
    report.merge(induced_reps_check(rep, g2, cfg), "induced");
    // the torsor choice does not affect the intertwiner
    report.merge(check_intertwiner(rep, gamma2(rep, 1, t.D_second), RunConfig{cfg.seed, cfg.tol, std::min(cfg.samples, 20)}),
                 "intertwiner_other_D");
    if (alpha == 1) report.merge(majorana_check(rep, D, cfg), "majorana");
  } catch (const StructuralFailure& e) {
    report.add("structure", false, 1, "pinor.natural-subspaces", e.what());
  }
  if ((p == 3 && q == 0) || (p == 1 && q == 2)) report.merge(extension_cross_check(p, q, cfg), "extension");
  return report;
}

// Row-major matrices with metadata.
inline Json rep_to_json(const MatrixRep& rep, const Matrix& D) {
  Json j;
  j["p"] = rep.signature().p();
  j["q"] = rep.signature().q();
  j["N"] = rep.N();
  j["alpha"] = alpha_pq(rep.signature().p(), rep.signature().q());
  auto rows = [](const Matrix& m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c) == 0 ? 0.0 : m(r, c));
      out.push_back(std::move(row));
    }
    return out;
  };
  Json gens = Json::array();
  for (const auto& g : rep.gens()) gens.push_back(rows(g));
  j["gamma"] = std::move(gens);
  j["J"] = rows(rep.J());
  j["D"] = rows(D);
  return j;
}

}  // namespace spinolab
