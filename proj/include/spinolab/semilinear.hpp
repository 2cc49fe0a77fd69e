#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "spinolab/random.hpp"
#include "spinolab/report.hpp"

namespace spinolab {

using ComplexMatrix = Eigen::MatrixXcd;

// Canonical complex structure of R^{2r} = R^r x R^r: (x, y) -> (-y, x).
inline Matrix canonical_J(int r) {
  require(r >= 1, "r must be positive");
  Matrix J = Matrix::Zero(2 * r, 2 * r);
  J.topRightCorner(r, r) = -Matrix::Identity(r, r);
  J.bottomLeftCorner(r, r) = Matrix::Identity(r, r);
  return J;
}

// Canonical conjugation (x, y) -> (x, -y).
inline Matrix canonical_conjugation(int r) {
  Matrix c = Matrix::Identity(2 * r, 2 * r);
  c.bottomRightCorner(r, r) *= -1;
  return c;
}

// One representative J of the unordered pair {J, -J}.
class SemilinearStructure {
 public:
  explicit SemilinearStructure(Matrix J, double tol = 1e-9) : J_(std::move(J)) {
    require(J_.rows() == J_.cols() && J_.rows() % 2 == 0 && J_.rows() > 0, "J must be a square matrix of even size");
    const Matrix sq = J_ * J_ + Matrix::Identity(J_.rows(), J_.cols());
    require(sq.cwiseAbs().maxCoeff() <= tol * std::max(1.0, J_.squaredNorm()), "J^2 = -1 is required");
  }
  static SemilinearStructure canonical(int r) { return SemilinearStructure(canonical_J(r)); }

  const Matrix& J() const { return J_; }
  int r() const { return static_cast<int>(J_.rows() / 2); }
  SemilinearStructure conjugate() const { return SemilinearStructure(-J_); }

 private:
  Matrix J_;
};

// --- the general semilinear group -------------------------------------------

// (A, t): t = 0 complex linear, t = 1 complex antilinear x -> A conj(x).
struct GammaRElement {
  ComplexMatrix A;
  int t = 0;
  int r() const { return static_cast<int>(A.rows()); }
};

inline GammaRElement gamma_r_mul(const GammaRElement& u, const GammaRElement& v) {
  require(u.A.rows() == v.A.rows() && u.A.rows() == u.A.cols() && v.A.rows() == v.A.cols(), "size mismatch");
  return {u.t ? ComplexMatrix(u.A * v.A.conjugate()) : ComplexMatrix(u.A * v.A), (u.t + v.t) % 2};
}

inline GammaRElement gamma_r_inverse(const GammaRElement& u) {
  const ComplexMatrix inv = u.A.inverse();
  return {u.t ? ComplexMatrix(inv.conjugate()) : inv, u.t};
}

// A_lin = [[Re A, -Im A], [Im A, Re A]].
inline Matrix realify_linear(const ComplexMatrix& A) {
  const Eigen::Index r = A.rows();
  Matrix m(2 * r, 2 * r);
  m << A.real(), -A.imag(), A.imag(), A.real();
  return m;
}

// A_alin = [[Re A, Im A], [Im A, -Re A]].
inline Matrix realify_antilinear(const ComplexMatrix& A) {
  const Eigen::Index r = A.rows();
  Matrix m(2 * r, 2 * r);
  m << A.real(), A.imag(), A.imag(), -A.real();
  return m;
}

inline Matrix realify(const GammaRElement& u) { return u.t ? realify_antilinear(u.A) : realify_linear(u.A); }

// |det A|^2, times (-1)^r for antilinear elements.
inline double semilinear_det(const GammaRElement& u) {
  const double m = std::norm(u.A.determinant());
  return (u.t && u.r() % 2) ? -m : m;
}

inline ComplexMatrix random_complex_matrix(int r, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix A(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) A(i, j) = {normal(rng), normal(rng)};
  return A;
}

inline ComplexMatrix random_unitary(int r, Rng& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_complex_matrix(r, rng));
  return qr.householderQ();
}

inline GammaRElement random_gamma_r(int r, Rng& rng) { return {random_complex_matrix(r, rng), random_bit(rng) ? 1 : 0}; }

// --- classification ---------------------------------------------------------

enum class Linearity { linear, antilinear, neither };

inline const char* linearity_name(Linearity l) {
  switch (l) {
    case Linearity::linear: return "linear";
    case Linearity::antilinear: return "antilinear";
    case Linearity::neither: return "neither";
  }
  return "?";
}

// Linear iff TJ = JT, antilinear iff TJ = -JT.
inline Linearity classify_endo(const Matrix& T, const SemilinearStructure& s, double tol = 1e-9) {
  const Matrix& J = s.J();
  require(T.rows() == J.rows() && T.cols() == J.cols(), "size mismatch");
  const double scale = std::max(1.0, T.norm() * J.norm());
  if ((T * J - J * T).norm() <= tol * scale) return Linearity::linear;
  if ((T * J + J * T).norm() <= tol * scale) return Linearity::antilinear;
  return Linearity::neither;
}

// --- s-Hermitian metrics -----------------------------------------------------
// h(x, y) = x^T R y * id + x^T I y * J relative to the stored J.

struct HermitianForm {
  Matrix R;
  Matrix I;
};

// The form with h_R = R and h_I(x, y) = h_R(J x, y).
inline HermitianForm hermitian_from_metric(const Matrix& R, const SemilinearStructure& s) {
  return {R, s.J().transpose() * R};
}

inline HermitianForm standard_hermitian(int r) {
  return hermitian_from_metric(Matrix::Identity(2 * r, 2 * r), SemilinearStructure::canonical(r));
}

// Random compatible metric: A^T A for a random complex-linear A.
inline Matrix random_compatible_metric(const SemilinearStructure& s, Rng& rng) {
  std::normal_distribution<double> normal;
  const Eigen::Index n = s.J().rows();
  Matrix M(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) M(i, j) = normal(rng);
  // Averaging over {1, J} makes M commute with J.
  const Matrix A = M - s.J() * M * s.J();
  return A.transpose() * A + Matrix::Identity(n, n);
}

inline std::vector<double> random_gaussian_vector(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (double& x : v) x = normal(rng);
  return v;
}

inline Eigen::VectorXd random_vector(Eigen::Index n, Rng& rng) {
  const auto v = random_gaussian_vector(n, rng);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), n);
}

// Checks the s-Hermitian axioms for h = (R, I) on random samples and on
// the matrices; returns itemized residuals.
inline Report s_hermitian_check(const HermitianForm& h, const SemilinearStructure& s, const RunConfig& cfg = {}) {
  Report rep("semilinear.hermitian", cfg);
  const Matrix& J = s.J();
  const Eigen::Index n = J.rows();
  require(h.R.rows() == n && h.R.cols() == n && h.I.rows() == n && h.I.cols() == n, "form size mismatch");
  Rng rng(cfg.seed);
  double sym = 0, antisym = 0, sesq_left = 0, sesq_right = 0, imag_rel = 0, compat = 0, diag = 0;
  for (int k = 0; k < cfg.samples; ++k) {
    const Eigen::VectorXd x = random_vector(n, rng), y = random_vector(n, rng);
    const double a = std::normal_distribution<double>()(rng), b = std::normal_distribution<double>()(rng);
    const Matrix sx = a * Matrix::Identity(n, n) + b * J;
    auto hr = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) { return u.dot(h.R * v); };
    auto hi = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) { return u.dot(h.I * v); };
    // h(x, y) = c(h(y, x))
    sym = std::max(sym, std::abs(hr(x, y) - hr(y, x)));
    antisym = std::max(antisym, std::abs(hi(x, y) + hi(y, x)));
    // h(s x, y) = c(s) h(x, y) and h(x, s y) = s h(x, y), with J^2 = -1 in S.
    const double r0 = hr(x, y), i0 = hi(x, y);
    sesq_left = std::max({sesq_left, std::abs(hr(sx * x, y) - (a * r0 + b * i0)), std::abs(hi(sx * x, y) - (a * i0 - b * r0))});
    sesq_right = std::max({sesq_right, std::abs(hr(x, sx * y) - (a * r0 - b * i0)), std::abs(hi(x, sx * y) - (a * i0 + b * r0))});
    imag_rel = std::max(imag_rel, std::abs(hi(x, y) - hr(J * x, y)));
    compat = std::max(compat, std::abs(hr(J * x, J * y) - hr(x, y)));
    diag = std::max(diag, std::abs(hi(x, x)));
  }
  const double scale = std::max(1.0, h.R.norm());
  const double tol = cfg.tol * scale * 100;
  rep.add_residual("conjugate_symmetric.real", sym, "h_R(x,y) = h_R(y,x)", tol);
  rep.add_residual("conjugate_symmetric.imag", antisym, "h_I(x,y) = -h_I(y,x)", tol);
  rep.add_residual("sesquilinear.left", sesq_left, "h(sx,y) = c(s)h(x,y)", tol);
  rep.add_residual("sesquilinear.right", sesq_right, "h(x,sy) = s h(x,y)", tol);
  rep.add_residual("imaginary_part", imag_rel, "h_I(x,y) = h_R(Jx,y)", tol);
  rep.add_residual("compatible", compat, "h_R(Jx,Jy) = h_R(x,y)", tol);
  rep.add_residual("real_on_diagonal", diag, "h_I(x,x) = 0", tol);
  Eigen::SelfAdjointEigenSolver<Matrix> eig((h.R + h.R.transpose()) / 2);
  const double min_eig = eig.eigenvalues().minCoeff();
  rep.add("positive_definite", min_eig > cfg.tol, min_eig, "h_R > 0");
  Eigen::FullPivLU<Matrix> lu(h.I);
  lu.setThreshold(1e-10);
  rep.add("imaginary_nondegenerate", lu.rank() == n, static_cast<double>(n - lu.rank()), "h_I nondegenerate");
  return rep;
}

// --- orientation map --------------------------------------------------------

// h_R-orthonormal real basis e_1..e_r, J e_1..J e_r built by Gram-Schmidt
// over the complex structure J starting from the columns of `start`.
inline Matrix complex_orthonormal_basis(const Matrix& J, const Matrix& R, const Matrix& start) {
  const Eigen::Index n = J.rows(), r = n / 2;
  Matrix basis(n, n);
  Eigen::Index found = 0;
  auto ip = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) { return u.dot(R * v); };
  for (Eigen::Index c = 0; c < start.cols() && found < r; ++c) {
    Eigen::VectorXd v = start.col(c);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index k = 0; k < found; ++k) {
        v -= ip(basis.col(k), v) * basis.col(k);
        v -= ip(basis.col(r + k), v) * basis.col(r + k);
      }
    const double norm = std::sqrt(std::max(0.0, ip(v, v)));
    if (norm < 1e-8) continue;
    basis.col(found) = v / norm;
    basis.col(r + found) = J * basis.col(found);
    ++found;
  }
  if (found < r) throw StructuralFailure("start vectors do not span over the complex structure");
  return basis;
}

inline void require_compatible(const Matrix& J, const Matrix& R, double tol = 1e-9) {
  require(J.rows() == R.rows() && R.rows() == R.cols(), "size mismatch");
  const double scale = std::max(1.0, R.norm());
  require((R - R.transpose()).norm() <= tol * scale, "h_R must be symmetric");
  require((J.transpose() * R * J - R).norm() <= tol * scale * std::max(1.0, J.squaredNorm()),
          "J is not compatible with h_R");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(R);
  require(eig.eigenvalues().minCoeff() > 0, "h_R must be positive definite");
}

// Sign of e_1 ^ ... ^ e_2r relative to the standard orientation.
inline int f_h_sign(const Matrix& J, const Matrix& R, const Matrix& start) {
  require_compatible(J, R);
  SemilinearStructure check(J);
  const double det = complex_orthonormal_basis(J, R, start).determinant();
  return det > 0 ? 1 : -1;
}

inline int f_h_sign(const Matrix& J, const Matrix& R) {
  return f_h_sign(J, R, Matrix::Identity(J.rows(), J.cols()));
}

// --- suite ------------------------------------------------------------------

inline Report verify_semilinear(int r, const RunConfig& cfg = {}) {
  require(r >= 1 && r <= 16, "r must be between 1 and 16");
  Report rep("semilinear.r" + std::to_string(r), cfg);
  Rng rng(cfg.seed);
  const SemilinearStructure s = SemilinearStructure::canonical(r);
  const Matrix Id = Matrix::Identity(r, r);

  double mul_err = 0, det_err = 0, closure_bad = 0, inv_err = 0, alin_err = 0;
  const Matrix conj = canonical_conjugation(r);
  for (int k = 0; k < cfg.samples; ++k) {
    const GammaRElement u = random_gamma_r(r, rng), v = random_gamma_r(r, rng);
    const GammaRElement uv = gamma_r_mul(u, v);
    const Matrix ru = realify(u), rv = realify(v), ruv = realify(uv);
    mul_err = std::max(mul_err, (ru * rv - ruv).cwiseAbs().maxCoeff() / std::max(1.0, ruv.cwiseAbs().maxCoeff()));
    det_err = std::max(det_err, std::abs(ru.determinant() - semilinear_det(u)) / std::max(1.0, std::abs(semilinear_det(u))));
    const Matrix rinv = realify(gamma_r_inverse(u));
    inv_err = std::max(inv_err, (ru * rinv - Matrix::Identity(2 * r, 2 * r)).cwiseAbs().maxCoeff());
    const Linearity want = uv.t ? Linearity::antilinear : Linearity::linear;
    const Linearity want_inv = u.t ? Linearity::antilinear : Linearity::linear;
    for (const auto& sj : {s, s.conjugate()})
      if (classify_endo(ru * rv, sj, 1e-8) != want || classify_endo(rinv, sj, 1e-8) != want_inv) closure_bad += 1;
    alin_err = std::max(alin_err, (realify_antilinear(u.A) - realify_linear(u.A) * conj).cwiseAbs().maxCoeff());
  }
  rep.add_residual("gamma_r.realification_hom", mul_err, "real(u)real(v) = real(uv)");
  rep.add_residual("gamma_r.det", det_err, "det real(u) = (-1)^{rt}|det A|^2");
  rep.add_residual("gamma_r.inverse", inv_err, "real(u)real(u^-1) = 1");
  rep.add("gamma_r.closure", closure_bad == 0, closure_bad, "Gamma(r) closed under products and inverses");
  rep.add_residual("gamma_r.antilinear_form", alin_err, "A_alin = A_lin diag(1,-1)");

  {
    const GammaRElement c{ComplexMatrix(Id.cast<std::complex<double>>()), 1};
    const GammaRElement c2 = gamma_r_mul(c, c);
    const double e = (c2.A - ComplexMatrix::Identity(r, r)).cwiseAbs().maxCoeff() + (c2.t != 0);
    rep.add_residual("gamma_r.conjugation_squared", e, "(I,1)(I,1) = (I,0)");
    rep.add("gamma_r.conjugation_det", semilinear_det(c) == (r % 2 ? -1.0 : 1.0), semilinear_det(c), "det(I,1) = (-1)^r");
  }

  // TU(r): unitary A realifies to orthogonal matrices with det (-1)^{rt}.
  double orth_err = 0;
  int det_bad = 0;
  for (int k = 0; k < cfg.samples; ++k) {
    const GammaRElement u{random_unitary(r, rng), random_bit(rng) ? 1 : 0};
    const Matrix m = realify(u);
    orth_err = std::max(orth_err, (m.transpose() * m - Matrix::Identity(2 * r, 2 * r)).cwiseAbs().maxCoeff());
    const int want = (r % 2 && u.t) ? -1 : 1;
    if (std::abs(m.determinant() - want) > 1e-8) ++det_bad;
  }
  rep.add_residual("tu_r.orthogonal", orth_err, "TU(r) in O(2r)");
  rep.add("tu_r.det", det_bad == 0, det_bad, r % 2 ? "det = (-1)^t on TU(r)" : "TU(r) in SO(2r)");

  // Classification examples, rerun with -J.
  for (int sign : {1, -1}) {
    const SemilinearStructure sj = sign > 0 ? s : s.conjugate();
    const std::string pre = sign > 0 ? "classify." : "classify.minus_J.";
    rep.add(pre + "J", classify_endo(s.J(), sj) == Linearity::linear, 0, "J is linear");
    rep.add(pre + "conjugation", classify_endo(conj, sj) == Linearity::antilinear, 0, "conjugation is antilinear");
    Rng local(cfg.seed + 7);
    Matrix T(2 * r, 2 * r);
    std::normal_distribution<double> normal;
    for (Eigen::Index i = 0; i < T.size(); ++i) T.data()[i] = normal(local);
    rep.add(pre + "generic", classify_endo(T, sj) == Linearity::neither, 0, "generic T is neither");
  }

  // s-Hermitian axioms for the standard and a random compatible metric, for J and -J.
  Rng mrng(cfg.seed + 11);
  const Matrix R = random_compatible_metric(s, mrng);
  for (const auto& [name, metric] : {std::pair<std::string, Matrix>{"standard", Matrix::Identity(2 * r, 2 * r)},
                                     std::pair<std::string, Matrix>{"random", R}}) {
    for (int sign : {1, -1}) {
      const SemilinearStructure sj = sign > 0 ? s : s.conjugate();
      rep.merge(s_hermitian_check(hermitian_from_metric(metric, sj), sj, cfg),
                "hermitian." + name + (sign > 0 ? "" : ".minus_J"));
    }
  }

  // f_h(-J) = (-1)^r f_h(J), and independence of the starting basis.
  for (const auto& [name, metric] : {std::pair<std::string, Matrix>{"standard", Matrix::Identity(2 * r, 2 * r)},
                                     std::pair<std::string, Matrix>{"random", R}}) {
    const int fp = f_h_sign(s.J(), metric), fm = f_h_sign(-s.J(), metric);
    rep.add("f_h." + name + ".conjugate_law", fm == ((r % 2) ? -fp : fp), fp * fm, "f_h(-J) = (-1)^r f_h(J)");
    int basis_bad = 0;
    for (int k = 0; k < std::min(cfg.samples, 20); ++k) {
      Matrix start(2 * r, 2 * r);
      std::normal_distribution<double> normal;
      for (Eigen::Index i = 0; i < start.size(); ++i) start.data()[i] = normal(rng);
      for (int sign : {1, -1})
        if (f_h_sign(sign * s.J(), metric, start) != (sign > 0 ? fp : fm)) ++basis_bad;
    }
    rep.add("f_h." + name + ".basis_independent", basis_bad == 0, basis_bad, "f_h independent of the orthonormal basis");
  }
  {
    // Unitary re-basing multiplies the real frame by a matrix of determinant |det A|^2 = 1.
    const Matrix e = complex_orthonormal_basis(s.J(), Matrix::Identity(2 * r, 2 * r), Matrix::Identity(2 * r, 2 * r));
    double worst = 0;
    for (int k = 0; k < std::min(cfg.samples, 20); ++k) {
      const Matrix B = realify_linear(random_unitary(r, rng));
      worst = std::max(worst, std::abs((e * B).determinant() - e.determinant()));
    }
    rep.add_residual("f_h.unitary_rebasing", worst, "det_R B = |det_C A|^2 = 1", 1e-8);
  }
  return rep;
}

}  // namespace spinolab
