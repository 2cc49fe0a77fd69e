#pragma once

#include <cmath>
#include <map>
#include <string>

#include "spinolab/clifford.hpp"
#include "spinolab/random.hpp"
#include "spinolab/report.hpp"

namespace spinolab {

inline void require_alpha(int alpha) { require(alpha == 1 || alpha == -1, "alpha must be +1 or -1"); }

// Cl2(alpha): two generators squaring to alpha.
inline Signature plane_signature(int alpha) {
  require_alpha(alpha);
  return Signature::from_squares({alpha, alpha});
}

// Cl3(alpha): e1^2 = e2^2 = alpha, e3^2 = -1.
inline Signature cl3_signature(int alpha) {
  require_alpha(alpha);
  return Signature::from_squares({alpha, alpha, -1});
}

// Element (z, t) of O2(alpha) (|z| = 1) or of its complexification (z != 0).
// The odd component multiplies as
//   (z1,1)(z2,0) = (z1 conj(z2), 1),  (z1,1)(z2,1) = (alpha z1 conj(z2), 0).
template <class T = double>
struct O2Element {
  T re{1};
  T im{0};
  bool odd = false;
  int alpha = 1;

  T norm2() const { return re * re + im * im; }
  int eta() const { return odd ? -1 : 1; }
};

template <class T>
O2Element<T> o2_make(T re, T im, bool odd, int alpha) {
  require_alpha(alpha);
  require(!(re == T(0) && im == T(0)), "z must be nonzero");
  return {re, im, odd, alpha};
}

inline O2Element<double> o2_from_angle(double theta, bool odd, int alpha) {
  return o2_make(std::cos(theta), std::sin(theta), odd, alpha);
}

// The distinguished element c = (1, 1) with c^2 = alpha.
template <class T = double>
O2Element<T> o2_c(int alpha) { return o2_make(T(1), T(0), true, alpha); }

template <class T>
O2Element<T> operator*(const O2Element<T>& a, const O2Element<T>& b) {
  require(a.alpha == b.alpha, "O2 elements with different alpha");
  // z1 * z2 or z1 * conj(z2)
  const T br = b.re;
  const T bi = a.odd ? T(-b.im) : b.im;
  T re = a.re * br - a.im * bi;
  T im = a.re * bi + a.im * br;
  if (a.odd && b.odd && a.alpha < 0) {
    re = -re;
    im = -im;
  }
  return {re, im, a.odd != b.odd, a.alpha};
}

template <class T>
O2Element<T> inverse(const O2Element<T>& a) {
  const T n = a.norm2();
  // 1/z = conj(z)/|z|^2 ; odd inverse is alpha / conj(z) = alpha z / |z|^2
  if (!a.odd) return {T(a.re / n), T(-a.im / n), false, a.alpha};
  const T s = T(a.alpha) / n;
  return {T(a.re * s), T(a.im * s), true, a.alpha};
}

// K(z, t) = (conj z, t); equals conjugation by c.
template <class T>
O2Element<T> o2_K(const O2Element<T>& a) { return {a.re, T(-a.im), a.odd, a.alpha}; }

// sigma(z, t) = (z^2, t), landing in O2(+1) = O(2).
template <class T>
O2Element<T> o2_sigma(const O2Element<T>& a) {
  return {T(a.re * a.re - a.im * a.im), T(2 * a.re * a.im), a.odd, 1};
}

template <class T>
double o2_distance(const O2Element<T>& a, const O2Element<T>& b) {
  if (a.odd != b.odd || a.alpha != b.alpha) return 1e300;
  return std::max(std::abs(ScalarTraits<T>::to_double(a.re - b.re)), std::abs(ScalarTraits<T>::to_double(a.im - b.im)));
}

// phi_alpha: (z,0) -> x + y e1e2,  (z,1) -> (x + y e1e2) e1.
// Defined on the complexification as well; unit z lands in Pin2(alpha).
template <class T>
Multivector<T> phi_alpha(const O2Element<T>& u) {
  const Signature sig = plane_signature(u.alpha);
  Multivector<T> z = Multivector<T>::scalar(sig, u.re) + Multivector<T>::blade(sig, 0b11, u.im);
  if (u.odd) z = z * Multivector<T>::generator(sig, 0);
  return z;
}

// Inverse of phi_alpha on Pin2(alpha) (or its complexification).
template <class T>
O2Element<T> phi_alpha_inverse(const Multivector<T>& b, int alpha, double tol = 1e-9) {
  require(b.signature() == plane_signature(alpha), "element is not in Cl2(alpha)");
  const bool odd = !b.odd_part().is_zero();
  require(!odd || b.even_part().max_abs() <= tol, "element is not of pure parity");
  Multivector<T> z = b;
  if (odd) z = b * Multivector<T>::generator(b.signature(), 0) * T(alpha);  // b D^{-1}
  return o2_make(z.scalar_part(), z.coeff(0b11), odd, alpha);
}

// R(theta) from the unit complex number z = cos theta + i sin theta.
inline Matrix rotation(double c, double s) {
  Matrix r(2, 2);
  r << c, -s, s, c;
  return r;
}

inline Matrix c0_matrix() {
  Matrix c(2, 2);
  c << 1, 0, 0, -1;
  return c;
}

// Phi_C^(branch): (z,0) -> R(branch*theta), (z,1) -> R(branch*theta) C.
// Defined on O(2) = O2(+1).
inline Matrix phi_C(const O2Element<double>& u, const Matrix& C, int branch) {
  require(u.alpha == 1, "Phi_C is defined on O2(+1)");
  require(branch == 1 || branch == -1, "branch must be +1 or -1");
  require(std::abs(u.norm2() - 1) < 1e-9, "Phi_C needs a unit element");
  require(C.rows() == 2 && C.cols() == 2, "C must be 2x2");
  require((C * C - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9 && std::abs(C.determinant() + 1) < 1e-9,
          "C must be a reflection");
  Matrix r = rotation(u.re, branch * u.im);
  return u.odd ? Matrix(r * C) : r;
}

// Vector representation on Cl2(alpha) (or Cl3(alpha)).
template <class T>
Matrix ad0(const Multivector<T>& b) { return vector_rep(b, false); }

// Algebra morphism s: Cl2(alpha) -> Cl3(alpha), v -> v e3.
template <class T>
Multivector<T> s_alpha(const Multivector<T>& b, int alpha) {
  require(b.signature() == plane_signature(alpha), "s_alpha expects an element of Cl2(alpha)");
  const Signature t = cl3_signature(alpha);
  return apply_algebra_morphism(b, t, {Multivector<T>::blade(t, 0b101), Multivector<T>::blade(t, 0b110)});
}

// Sigma(R) = diag(det(R) R, det(R)).
inline Matrix sigma_embed(const Matrix& r) {
  require(r.rows() == 2 && r.cols() == 2, "Sigma expects a 2x2 matrix");
  require((r.transpose() * r - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9, "Sigma expects an orthogonal matrix");
  const double det = r.determinant() > 0 ? 1.0 : -1.0;
  Matrix out = Matrix::Zero(3, 3);
  out.topLeftCorner(2, 2) = det * r;
  out(2, 2) = det;
  return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return 1e300;
  return (a - b).cwiseAbs().maxCoeff();
}

namespace detail {

inline O2Element<double> random_o2(Rng& rng, int alpha) { return o2_from_angle(random_angle(rng), random_bit(rng), alpha); }

// Rational point of the unit circle ((1-t^2), 2t)/(1+t^2).
inline O2Element<Rational> rational_o2(Rng& rng, int alpha) {
  const Rational t = random_rational(rng, 4, 3);
  const Rational n = 1 + t * t;
  return o2_make<Rational>(Rational((1 - t * t) / n), Rational(2 * t / n), random_bit(rng), alpha);
}

}  // namespace detail

// Checks the commutative diagrams relating O2(alpha), Pin2(alpha), Cl3(alpha)
// and O(2), O(3). Each check reports the maximum error over the samples.
inline Report verify_diagrams(int alpha, const RunConfig& cfg) {
  require_alpha(alpha);
  Report report("groups.alpha" + std::string(alpha > 0 ? "+1" : "-1"), cfg);
  Rng rng(cfg.seed);
  const Matrix C0 = c0_matrix();
  std::map<std::string, double> err;
  auto bump = [&](const std::string& key, double e) { err[key] = std::max(err[key], e); };

  // Fixed points: Ad0 of z(theta) and of D.
  {
    const Signature pl = plane_signature(alpha);
    const Multivector<double> D = Multivector<double>::generator(pl, 0);
    bump("ad0_D", max_abs_diff(ad0(D), C0));
  }

  for (int i = 0; i < cfg.samples; ++i) {
    const O2Element<double> u = detail::random_o2(rng, alpha);
    const Multivector<double> b = phi_alpha(u);
    const Matrix adb = ad0(b);
    // diag1: Ad0 o phi = Phi0^(-alpha) o sigma
    const Matrix right1 = phi_C(o2_sigma(u), C0, -alpha);
    bump("diag1", max_abs_diff(adb, right1));
    // diag2: det o Ad0 o phi = eta
    bump("diag2", std::abs(adb.determinant() - u.eta()));
    // diag3: Ad0^(3) o s = Sigma o Ad0^(2)
    const Multivector<double> sb = s_alpha(b, alpha);
    const Matrix ad3 = ad0(sb);
    bump("diag3", max_abs_diff(ad3, sigma_embed(adb)));
    // diag4: outer square through psi = s o phi and Psi = Sigma o Phi0^(-alpha)
    const Matrix psi_side = sigma_embed(right1);
    bump("diag4", std::max({max_abs_diff(ad3, psi_side), max_abs_diff(adb, right1), max_abs_diff(ad3, sigma_embed(adb))}));
    // diag5: the psi / Psi square itself, also on products and on c
    const O2Element<double> v = detail::random_o2(rng, alpha);
    const Multivector<double> psi_uv = s_alpha(phi_alpha(u * v), alpha);
    const Multivector<double> psi_u_psi_v = s_alpha(phi_alpha(u), alpha) * s_alpha(phi_alpha(v), alpha);
    bump("diag5", std::max(distance(psi_uv, psi_u_psi_v), max_abs_diff(ad0(psi_uv), sigma_embed(phi_C(o2_sigma(u * v), C0, -alpha)))));
    // Ad0 of z(theta) is R(-2 alpha theta)
    if (!u.odd) {
      const double theta = std::atan2(u.im, u.re);
      bump("ad0_z", max_abs_diff(adb, rotation(std::cos(-2 * alpha * theta), std::sin(-2 * alpha * theta))));
    }
    // phi is a homomorphism and K is conjugation by c
    bump("phi_hom", distance(phi_alpha(u * v), phi_alpha(u) * phi_alpha(v)));
    const O2Element<double> c = o2_c(alpha);
    bump("K_is_Ad_c", o2_distance(c * u * inverse(c), o2_K(u)));
  }
  {
    const Multivector<double> psi_c = s_alpha(phi_alpha(o2_c(alpha)), alpha);
    Matrix C0p = Matrix::Zero(3, 3);
    C0p.topLeftCorner(2, 2) = -C0;
    C0p(2, 2) = -1;
    bump("diag5", std::max(max_abs_diff(ad0(psi_c), C0p), max_abs_diff(sigma_embed(C0), C0p)));
  }

  // Exact diag1 at rational points of the circle.
  Rng exact_rng(cfg.seed + 1);
  double exact_err = 0;
  for (int i = 0; i < std::min(cfg.samples, 25); ++i) {
    const O2Element<Rational> u = detail::rational_o2(exact_rng, alpha);
    const Multivector<Rational> b = phi_alpha(u);
    const Multivector<Rational> inv = inverse(b);
    const Signature pl = plane_signature(alpha);
    const O2Element<Rational> s = o2_sigma(u);
    // R(-2 alpha theta) C0^t in exact arithmetic
    const Rational c = s.re, sn = alpha > 0 ? Rational(-s.im) : s.im;
    Rational m[2][2] = {{c, Rational(-sn)}, {sn, c}};
    if (u.odd) {
      m[0][1] = -m[0][1];
      m[1][1] = -m[1][1];
    }
    for (int j = 0; j < 2; ++j) {
      const Multivector<Rational> img = b * Multivector<Rational>::generator(pl, j) * inv;
      const Multivector<Rational> expect =
          Multivector<Rational>::generator(pl, 0, m[0][j]) + Multivector<Rational>::generator(pl, 1, m[1][j]);
      if (!(img == expect)) exact_err = 1;
    }
  }

  const std::map<std::string, std::string> tags = {
      {"ad0_D", "pin2.ad0-of-D-is-C0"},
      {"ad0_z", "pin2.ad0-of-rotation-is-double-angle"},
      {"diag1", "pin2.vector-rep-covers-squaring"},
      {"diag2", "pin2.det-of-vector-rep-is-parity"},
      {"diag3", "pin2.cl3-embedding-intertwines-Sigma"},
      {"diag4", "pin2.full-diagram-commutes"},
      {"diag5", "pin2.psi-square-commutes"},
      {"phi_hom", "pin2.phi-is-homomorphism"},
      {"K_is_Ad_c", "o2.K-is-conjugation-by-c"},
  };
  Json max_err = Json::object();
  for (const auto& [key, e] : err) {
    report.add_residual(key, e, tags.at(key));
    max_err[key] = e;
  }
  report.add("diag1_exact", exact_err == 0, exact_err, "pin2.vector-rep-covers-squaring", "rational points of the circle");
  report.extras()["max_err"] = max_err;
  return report;
}

// O2(-1) does not split: every odd element squares to (-|z|^2, 0) = (-1, 0).
inline Report non_splitness_check(const RunConfig& cfg) {
  Report report("groups.non-splitness", cfg);
  Rng rng(cfg.seed);
  double worst = 0;
  bool any_order_two = false;
  for (int i = 0; i < cfg.samples; ++i) {
    const O2Element<double> u = o2_from_angle(random_angle(rng), true, -1);
    const O2Element<double> sq = u * u;
    worst = std::max(worst, o2_distance(sq, o2_make(-1.0, 0.0, false, -1)));
    any_order_two = any_order_two || o2_distance(sq, o2_make(1.0, 0.0, false, -1)) < cfg.tol;
  }
  report.add_residual("odd_squares_minus_one", worst, "o2.minus-has-no-odd-involution");
  report.add("no_odd_involution", !any_order_two, any_order_two ? 1 : 0, "o2.minus-has-no-odd-involution");
  // Exact: (z,1)^2 = (-|z|^2, 0).
  Rng exact_rng(cfg.seed + 1);
  bool exact = true;
  for (int i = 0; i < 25; ++i) {
    O2Element<Rational> u = detail::rational_o2(exact_rng, -1);
    u.odd = true;
    const O2Element<Rational> sq = u * u;
    exact = exact && !sq.odd && sq.re == -1 && sq.im == 0;
  }
  report.add("odd_squares_minus_one_exact", exact, exact ? 0 : 1, "o2.minus-has-no-odd-involution");
  // For alpha = +1 the section 1 -> c splits.
  const O2Element<double> c = o2_c(1);
  report.add_residual("plus_splits", o2_distance(c * c, o2_make(1.0, 0.0, false, 1)), "o2.plus-splits");
  return report;
}

}  // namespace spinolab
