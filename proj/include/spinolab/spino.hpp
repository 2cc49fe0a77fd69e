#pragma once

#include <string>
#include <utility>

#include "spinolab/lowdim.hpp"

namespace spinolab {

// [a, b] in [Spin(V,h) x Pin2(alpha)] / {(1,1), (-1,-1)}.
// The representative is normalized so that its first nonzero coefficient
// (blades of a, then blades of b) is positive.
class SpinoElement {
 public:
  SpinoElement(Multivector<double> a, Multivector<double> b, int alpha, double tol = 1e-8)
      : a_(std::move(a)), b_(std::move(b)), alpha_(alpha) {
    require_alpha(alpha);
    require(b_.signature() == plane_signature(alpha), "second factor must lie in Cl2(alpha)");
    require(a_.odd_part().max_abs() <= tol, "first factor must be even");
    const Multivector<double> na = twisted_norm(a_);
    const double scale = std::max(1.0, a_.max_abs() * a_.max_abs());
    require(std::abs(std::abs(na.scalar_part()) - 1) <= tol * scale && (na - na.grade(0)).max_abs() <= tol * scale,
            "first factor must have unit twisted norm");
    const bool odd = b_.odd_part().max_abs() > tol;
    require(!odd || b_.even_part().max_abs() <= tol, "second factor must have pure parity");
    const Multivector<double> nb = twisted_norm(b_);
    require(nb.is_scalar() && std::abs(std::abs(nb.scalar_part()) - 1) <= tol, "second factor must have unit twisted norm");
    normalize();
  }

  const Multivector<double>& spin_part() const { return a_; }
  const Multivector<double>& pin2_part() const { return b_; }
  const Signature& signature() const { return a_.signature(); }
  int alpha() const { return alpha_; }
  bool odd() const { return !b_.odd_part().is_zero(); }

  friend SpinoElement operator*(const SpinoElement& g, const SpinoElement& h) {
    require(g.alpha_ == h.alpha_ && g.signature() == h.signature(), "elements of different groups");
    return SpinoElement(g.a_ * h.a_, g.b_ * h.b_, g.alpha_);
  }

  SpinoElement inverse() const { return SpinoElement(spinolab::inverse(a_), spinolab::inverse(b_), alpha_); }

 private:
  void normalize() {
    constexpr double kLead = 1e-8;
    for (const auto* m : {&a_, &b_})
      for (const auto& [blade, c] : m->terms())
        if (std::abs(c) > kLead) {
          if (c < 0) {
            a_ = -a_;
            b_ = -b_;
          }
          return;
        }
  }

  Multivector<double> a_, b_;
  int alpha_;
};

// Distance modulo the identification [a, b] = [-a, -b].
inline double spino_distance(const SpinoElement& g, const SpinoElement& h) {
  if (!(g.signature() == h.signature()) || g.alpha() != h.alpha()) return 1e300;
  const double same = std::max(distance(g.spin_part(), h.spin_part()), distance(g.pin2_part(), h.pin2_part()));
  const double flip = std::max(distance(g.spin_part(), -h.spin_part()), distance(g.pin2_part(), -h.pin2_part()));
  return std::min(same, flip);
}

inline SpinoElement spino_from(const Signature& sig, const Multivector<double>& b, int alpha) {
  return SpinoElement(Multivector<double>::scalar(sig, 1.0), b, alpha);
}

inline SpinoElement spino_identity(const Signature& sig, int alpha) {
  return spino_from(sig, Multivector<double>::scalar(plane_signature(alpha), 1.0), alpha);
}

// 1~ = [1, -1], the nontrivial central element.
inline SpinoElement spino_twisted_unit(const Signature& sig, int alpha) {
  return spino_from(sig, Multivector<double>::scalar(plane_signature(alpha), -1.0), alpha);
}

// D^ = [1, D] with D = e1 of Cl2(alpha).
inline SpinoElement spino_D_hat(const Signature& sig, int alpha) {
  return spino_from(sig, Multivector<double>::generator(plane_signature(alpha), 0), alpha);
}

// [1, z(theta)].
inline SpinoElement spino_U(const Signature& sig, double theta, int alpha) {
  return spino_from(sig, phi_alpha(o2_from_angle(theta, false, alpha)), alpha);
}

inline SpinoElement random_spino(const Signature& sig, int alpha, Rng& rng) {
  Multivector<double> a = random_spin(sig, rng);
  Multivector<double> b = phi_alpha(detail::random_o2(rng, alpha));
  return SpinoElement(std::move(a), std::move(b), alpha);
}

// --- representations ------------------------------------------------------

enum class Rep { mu, mu_tilde, lambda, lambda_tilde, rho, rho_tilde, eta_tilde };

inline const char* rep_name(Rep r) {
  switch (r) {
    case Rep::mu: return "mu";
    case Rep::mu_tilde: return "mu_tilde";
    case Rep::lambda: return "lambda";
    case Rep::lambda_tilde: return "lambda_tilde";
    case Rep::rho: return "rho";
    case Rep::rho_tilde: return "rho_tilde";
    case Rep::eta_tilde: return "eta_tilde";
  }
  return "?";
}

inline constexpr Rep kAllReps[] = {Rep::mu, Rep::mu_tilde, Rep::lambda, Rep::lambda_tilde, Rep::rho, Rep::rho_tilde, Rep::eta_tilde};

struct RepMatrixPair {
  Matrix first;   // acts on V
  Matrix second;  // acts on the plane
  Matrix block() const {
    Matrix m = Matrix::Zero(first.rows() + second.rows(), first.cols() + second.cols());
    m.topLeftCorner(first.rows(), first.cols()) = first;
    m.bottomRightCorner(second.rows(), second.cols()) = second;
    return m;
  }
};

inline Matrix block_diag(std::initializer_list<Matrix> blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  Matrix m = Matrix::Zero(n, n);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    m.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return m;
}

namespace detail {

inline Matrix lambda_of(const Multivector<double>& a) {
  if (a.signature().dim() == 0) return Matrix(0, 0);
  return vector_rep(a, false);
}

inline double det_sign(const Matrix& m) { return m.determinant() > 0 ? 1.0 : -1.0; }

// Representations evaluated on a representative pair (a, b).
inline Matrix rep_on_pair(const Multivector<double>& a, const Multivector<double>& b, Rep which) {
  switch (which) {
    case Rep::mu: return vector_rep(b, false);
    case Rep::mu_tilde: return vector_rep(b, true);
    case Rep::lambda: return lambda_of(a);
    case Rep::lambda_tilde: return det_sign(vector_rep(b, false)) * lambda_of(a);
    case Rep::rho: return block_diag({lambda_of(a), vector_rep(b, true)});
    case Rep::rho_tilde: return block_diag({Matrix(det_sign(vector_rep(b, false)) * lambda_of(a)), vector_rep(b, false)});
    case Rep::eta_tilde: {
      Matrix m(1, 1);
      m(0, 0) = b.odd_part().is_zero() ? 1.0 : -1.0;
      return m;
    }
  }
  throw InvalidArgument("unknown representation");
}

}  // namespace detail

inline Matrix mu(const SpinoElement& g) { return vector_rep(g.pin2_part(), false); }
inline Matrix mu_tilde(const SpinoElement& g) { return vector_rep(g.pin2_part(), true); }
inline Matrix lambda(const SpinoElement& g) { return detail::lambda_of(g.spin_part()); }
inline Matrix lambda_tilde(const SpinoElement& g) { return detail::det_sign(mu(g)) * lambda(g); }
inline RepMatrixPair rho(const SpinoElement& g) { return {lambda(g), mu_tilde(g)}; }
inline RepMatrixPair rho_tilde(const SpinoElement& g) { return {lambda_tilde(g), mu(g)}; }
inline int eta_tilde(const SpinoElement& g) { return g.odd() ? -1 : 1; }

// Every representation as a single matrix (pairs become block diagonal,
// eta~ becomes 1x1).
inline Matrix rep_matrix(const SpinoElement& g, Rep which) {
  return detail::rep_on_pair(g.spin_part(), g.pin2_part(), which);
}

// --- subgroups ------------------------------------------------------------

enum class Subgroup { center, U, spin_hat, spinc_hat, pin_hat, gamma_o };

inline const char* subgroup_name(Subgroup s) {
  switch (s) {
    case Subgroup::center: return "center";
    case Subgroup::U: return "U";
    case Subgroup::spin_hat: return "spin_hat";
    case Subgroup::spinc_hat: return "spinc_hat";
    case Subgroup::pin_hat: return "pin_hat";
    case Subgroup::gamma_o: return "gamma_o";
  }
  return "?";
}

namespace detail {

inline bool is_pm_one(const Multivector<double>& m, double tol) {
  return m.is_scalar() && std::abs(std::abs(m.scalar_part()) - 1) <= tol;
}

inline bool is_pm_D(const Multivector<double>& b, double tol) {
  const Multivector<double> rest = b - Multivector<double>::generator(b.signature(), 0, b.coeff(0b01));
  return rest.max_abs() <= tol && std::abs(std::abs(b.coeff(0b01)) - 1) <= tol;
}

}  // namespace detail

inline bool in_subgroup(const SpinoElement& g, Subgroup which, double tol = 1e-9) {
  const auto& a = g.spin_part();
  const auto& b = g.pin2_part();
  switch (which) {
    case Subgroup::center: return detail::is_pm_one(a, tol) && detail::is_pm_one(b, tol);
    case Subgroup::U: return detail::is_pm_one(a, tol) && !g.odd();
    case Subgroup::spin_hat: return detail::is_pm_one(b, tol);
    case Subgroup::spinc_hat: return !g.odd();
    case Subgroup::pin_hat: return detail::is_pm_one(b, tol) || detail::is_pm_D(b, tol);
    case Subgroup::gamma_o:
      return detail::is_pm_one(a, tol) && (detail::is_pm_one(b, tol) || detail::is_pm_D(b, tol));
  }
  return false;
}

// K = conjugation by D^.
inline SpinoElement K_automorphism(const SpinoElement& g) {
  const SpinoElement d = spino_D_hat(g.signature(), g.alpha());
  return d * g * d.inverse();
}

// --- embeddings -------------------------------------------------------------

// V^ = V + two generators squaring to alpha.
inline Signature hat_signature(const Signature& sig, int alpha) { return sig.extended({alpha, alpha}); }
// V' = V^ + one generator squaring to -1.
inline Signature prime_signature(const Signature& sig, int alpha) { return sig.extended({alpha, alpha, -1}); }

// j([a, b]) = a b inside Cl(V^).
inline Multivector<double> embed_j(const SpinoElement& g) {
  const Signature& sig = g.signature();
  const Signature hat = hat_signature(sig, g.alpha());
  const int d = sig.dim();
  std::vector<Multivector<double>> va, vb;
  for (int i = 0; i < d; ++i) va.push_back(Multivector<double>::generator(hat, i));
  vb.push_back(Multivector<double>::generator(hat, d));
  vb.push_back(Multivector<double>::generator(hat, d + 1));
  return apply_algebra_morphism(g.spin_part(), hat, va) * apply_algebra_morphism(g.pin2_part(), hat, vb);
}

// j' = s' o j with s'(e_i) = e_i, s'(e_{d+1}) = e_{d+1} e_{d+3}, s'(e_{d+2}) = e_{d+2} e_{d+3}.
inline Multivector<double> embed_jprime(const SpinoElement& g) {
  const Signature& sig = g.signature();
  const int d = sig.dim();
  const Signature prime = prime_signature(sig, g.alpha());
  std::vector<Multivector<double>> images;
  for (int i = 0; i < d; ++i) images.push_back(Multivector<double>::generator(prime, i));
  const Blade top = Blade{1} << (d + 2);
  images.push_back(Multivector<double>::blade(prime, (Blade{1} << d) | top));
  images.push_back(Multivector<double>::blade(prime, (Blade{1} << (d + 1)) | top));
  return apply_algebra_morphism(embed_j(g), prime, images);
}

// F(A, B) = detB A + detB B + detB ; F~(A, B) = A + B + detB.
inline Matrix F_map(const RepMatrixPair& ab) {
  const double db = detail::det_sign(ab.second);
  Matrix one(1, 1);
  one(0, 0) = db;
  return block_diag({Matrix(db * ab.first), Matrix(db * ab.second), one});
}
inline Matrix F_tilde_map(const RepMatrixPair& ab) {
  Matrix one(1, 1);
  one(0, 0) = detail::det_sign(ab.second);
  return block_diag({ab.first, ab.second, one});
}

struct EmbeddingResiduals {
  double eq1 = 0;     // Ad0(j g) vs G(rho~ g)
  double eq2 = 0;     // twisted Ad0(j g) vs G(rho g)
  double e1_F = 0;    // Ad0'(j' g) vs F(rho~ g)
  double e1_Ft = 0;   // Ad0'(j' g) vs F~(rho g)
  double jprime_even = 0;
};

inline EmbeddingResiduals check_embeddings(const SpinoElement& g) {
  EmbeddingResiduals r;
  const Multivector<double> jg = embed_j(g);
  r.eq1 = max_abs_diff(vector_rep(jg, false), rho_tilde(g).block());
  r.eq2 = max_abs_diff(vector_rep(jg, true), rho(g).block());
  const Multivector<double> jp = embed_jprime(g);
  r.jprime_even = jp.odd_part().max_abs();
  const Matrix adp = vector_rep(jp, false);
  r.e1_F = max_abs_diff(adp, F_map(rho_tilde(g)));
  r.e1_Ft = max_abs_diff(adp, F_tilde_map(rho(g)));
  return r;
}

// --- verification ------------------------------------------------------------

inline std::string alpha_label(int alpha) { return alpha > 0 ? "+1" : "-1"; }

// Distance modulo the center {1, 1~}.
inline double distance_mod_center(const SpinoElement& g, const SpinoElement& h) {
  return std::min(spino_distance(g, h), spino_distance(g, h * spino_twisted_unit(h.signature(), h.alpha())));
}

// pi([a, b]) = [a, 1] for even b, [a, D] for odd b. Since [a, b] = [-a, -b]
// and U meets Pin^ in {1, 1~}, this is only defined modulo the center.
inline SpinoElement pi_alpha(const SpinoElement& g) {
  const Signature pl = plane_signature(g.alpha());
  return SpinoElement(g.spin_part(), g.odd() ? Multivector<double>::generator(pl, 0) : Multivector<double>::scalar(pl, 1.0),
                      g.alpha());
}

inline Report splittings_check(const Signature& sig, int alpha, const RunConfig& cfg) {
  require_alpha(alpha);
  Report report("splittings", cfg);
  Rng rng(cfg.seed + 17);
  const SpinoElement one = spino_identity(sig, alpha);
  const SpinoElement dhat = spino_D_hat(sig, alpha);
  const Multivector<double> unit2 = Multivector<double>::scalar(plane_signature(alpha), 1.0);

  // The section 0 -> 1, 1 -> [1, D] of eta~ is a homomorphism iff alpha = +1.
  const double section = spino_distance(dhat * dhat, one);
  if (alpha > 0)
    report.add("R_xi.homomorphism", section == 0 && eta_tilde(dhat) == -1, section, "spino.plus-splits-over-spinc");
  else
    report.add("R_xi.fails", section > 0.5, section, "spino.minus-section-not-subgroup",
               "[1,D]^2 = 1~, so {[1,1],[1,D]} is not closed");

  double conj = 0, zeta = 0, pi_hom = 0, pi_split = 0, u_kernel = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    const Multivector<double> a = random_spin(sig, rng);
    const double theta = random_angle(rng);
    const SpinoElement z = spino_U(sig, theta, alpha);
    const SpinoElement zbar = spino_U(sig, -theta, alpha);
    // Ad([1, D]) acts on Spin^c by conjugating z
    const SpinoElement x = SpinoElement(a, phi_alpha(o2_from_angle(random_angle(rng), false, alpha)), alpha);
    const SpinoElement xbar = SpinoElement(x.spin_part(), phi_alpha(o2_K(phi_alpha_inverse(x.pin2_part(), alpha))), alpha);
    conj = std::max(conj, spino_distance(dhat * x * dhat.inverse(), xbar));
    // zeta: Pin^ acts on U trivially on Spin^ and by conjugation on Spin^ D^
    const SpinoElement s(a, unit2, alpha);
    const SpinoElement sd = s * dhat;
    zeta = std::max({zeta, spino_distance(s * z * s.inverse(), z), spino_distance(sd * z * sd.inverse(), zbar)});
    // pi is a homomorphism split by the inclusion of Pin^, with kernel U
    const SpinoElement g = random_spino(sig, alpha, rng), h = random_spino(sig, alpha, rng);
    pi_hom = std::max(pi_hom, distance_mod_center(pi_alpha(g * h), pi_alpha(g) * pi_alpha(h)));
    pi_split = std::max({pi_split, distance_mod_center(pi_alpha(s), s), distance_mod_center(pi_alpha(sd), sd)});
    u_kernel = std::max(u_kernel, distance_mod_center(pi_alpha(z), one));
  }
  report.add_residual("Ad_D_conjugates_spinc", conj, "spino.D-hat-conjugates-spinc");
  report.add_residual("zeta_action", zeta, "spino.pin-hat-acts-on-U");
  report.add_residual("pi.homomorphism", pi_hom, "spino.pin-hat-sequence", -1, "modulo {1, 1~}");
  report.add_residual("pi.split_by_inclusion", pi_split, "spino.pin-hat-sequence");
  report.add_residual("pi.kills_U", u_kernel, "spino.pin-hat-sequence");
  return report;
}

inline Report verify_spino(const Signature& sig, int alpha, const RunConfig& cfg) {
  require_alpha(alpha);
  Report report("spino." + sig.to_string() + ".alpha" + alpha_label(alpha), cfg);
  Rng rng(cfg.seed);
  const SpinoElement one = spino_identity(sig, alpha);
  const SpinoElement one_t = spino_twisted_unit(sig, alpha);
  const SpinoElement dhat = spino_D_hat(sig, alpha);

  std::vector<SpinoElement> samples;
  for (int i = 0; i < cfg.samples; ++i) samples.push_back(random_spino(sig, alpha, rng));

  // group laws
  double assoc = 0, inv = 0;
  for (int i = 0; i + 2 < cfg.samples; i += 3) {
    const auto &g = samples[i], &h = samples[i + 1], &k = samples[i + 2];
    assoc = std::max(assoc, spino_distance((g * h) * k, g * (h * k)));
  }
  for (const auto& g : samples) inv = std::max(inv, spino_distance(g * g.inverse(), one));
  report.add_residual("associativity", assoc, "spino.group-law");
  report.add_residual("inverse", inv, "spino.group-law");

  // representations: homomorphism and independence of the representative
  for (Rep r : kAllReps) {
    double hom = 0, well = 0;
    for (int i = 0; i + 1 < cfg.samples; ++i) {
      const auto &g = samples[i], &h = samples[i + 1];
      const Matrix prod = rep_matrix(g, r) * rep_matrix(h, r);
      hom = std::max(hom, max_abs_diff(rep_matrix(g * h, r), prod) / std::max(1.0, prod.cwiseAbs().maxCoeff()));
      well = std::max(well, max_abs_diff(detail::rep_on_pair(g.spin_part(), g.pin2_part(), r),
                                         detail::rep_on_pair(-g.spin_part(), -g.pin2_part(), r)));
    }
    report.add_residual(std::string(rep_name(r)) + ".homomorphism", hom, "spino.representation-homomorphism");
    report.add_residual(std::string(rep_name(r)) + ".well_defined", well, "spino.representation-well-defined");
  }

  // kernel of rho~ is {1, 1~}
  {
    const int n = static_cast<int>(rep_matrix(one, Rep::rho_tilde).rows());
    const Matrix I = Matrix::Identity(n, n);
    double central = std::max(max_abs_diff(rep_matrix(one, Rep::rho_tilde), I), max_abs_diff(rep_matrix(one_t, Rep::rho_tilde), I));
    bool only_center = true;
    std::vector<SpinoElement> probes = {dhat, dhat * one_t, spino_U(sig, 0.7, alpha)};
    if (sig.dim() >= 2) {
      const Multivector<double> e12 = Multivector<double>::blade(sig, 0b11);
      probes.push_back(SpinoElement(e12, Multivector<double>::scalar(plane_signature(alpha), 1.0), alpha));
    }
    for (const auto& g : samples) probes.push_back(g);
    for (const auto& g : probes)
      if (max_abs_diff(rep_matrix(g, Rep::rho_tilde), I) < 1e-6 && !in_subgroup(g, Subgroup::center)) only_center = false;
    report.add_residual("rho_tilde.kernel_contains_center", central, "spino.rho-tilde-kernel");
    report.add("rho_tilde.kernel_is_center", only_center, only_center ? 0 : 1, "spino.rho-tilde-kernel");
  }

  // center, K, subgroups
  {
    double comm = 0, kfix = 0, kconj = 0;
    bool dhat_central = true;
    for (const auto& g : samples) {
      comm = std::max(comm, spino_distance(one_t * g, g * one_t));
      if (spino_distance(dhat * g, g * dhat) > 1e-6) dhat_central = false;
      // K fixes Pin^ = Spin^ u Spin^ D^
      const SpinoElement x = SpinoElement(g.spin_part(), Multivector<double>::scalar(plane_signature(alpha), 1.0), alpha);
      kfix = std::max({kfix, spino_distance(K_automorphism(x), x), spino_distance(K_automorphism(x * dhat), x * dhat)});
    }
    for (int i = 0; i < cfg.samples; ++i) {
      const double theta = random_angle(rng);
      kconj = std::max(kconj, spino_distance(K_automorphism(spino_U(sig, theta, alpha)), spino_U(sig, -theta, alpha)));
    }
    report.add_residual("center.one_tilde_central", comm, "spino.center");
    report.add("center.D_hat_not_central", !dhat_central || sig.dim() == 0, 0, "spino.center");
    report.add_residual("K.fixes_pin_hat", kfix, "spino.K-fixes-pin-hat");
    report.add_residual("K.conjugates_U", kconj, "spino.K-conjugates-U");
    bool memberships = in_subgroup(one_t, Subgroup::center) && in_subgroup(dhat, Subgroup::gamma_o) &&
                       in_subgroup(dhat, Subgroup::pin_hat) && !in_subgroup(dhat, Subgroup::spinc_hat) &&
                       in_subgroup(spino_U(sig, 0.3, alpha), Subgroup::U) &&
                       in_subgroup(spino_U(sig, 0.3, alpha), Subgroup::spinc_hat);
    report.add("subgroup.memberships", memberships, memberships ? 0 : 1, "spino.subgroups");
  }

  // lambda~ lands in SO(V,h) for even d and in O(V,h) for odd d; rho~ in S[O x O(2)] for odd d.
  {
    int bad_lambda = 0, bad_rho = 0;
    const bool even = sig.dim() % 2 == 0;
    for (const auto& g : samples) {
      const double dl = detail::det_sign(lambda_tilde(g)), dm = detail::det_sign(mu(g));
      if (even ? dl != 1.0 : dl != dm) ++bad_lambda;
      if (!even && dl * dm != 1.0) ++bad_rho;
      if (even && dl != 1.0) ++bad_rho;
    }
    report.add("lambda_tilde.image", bad_lambda == 0, bad_lambda, "spino.lambda-tilde-image",
               even ? "lambda~ lands in SO(V,h)" : "det lambda~ = det mu");
    report.add("rho_tilde.image", bad_rho == 0, bad_rho, "spino.rho-tilde-image",
               even ? "rho~ lands in SO(V,h) x O(2)" : "rho~ lands in S[O(V,h) x O(2)]");
  }

  // Spin^o = Spin^c^ u Spin^c^ D^, detected by eta~
  {
    int bad = 0;
    for (const auto& g : samples) {
      const bool first = in_subgroup(g, Subgroup::spinc_hat), second = in_subgroup(g * dhat.inverse(), Subgroup::spinc_hat);
      if (first == second || (eta_tilde(g) == 1) != first) ++bad;
    }
    report.add("coset_decomposition", bad == 0, bad, "spino.spinc-coset-decomposition");
  }

  // D^2 = [1, alpha]
  {
    const SpinoElement sq = dhat * dhat;
    const SpinoElement expect = alpha > 0 ? one : one_t;
    report.add("D_hat_squared", spino_distance(sq, expect) == 0, spino_distance(sq, expect), "spino.D-hat-square");
  }

  report.merge(splittings_check(sig, alpha, cfg), "splittings");

  // embeddings
  {
    EmbeddingResiduals worst;
    for (int i = 0; i < cfg.samples; ++i) {
      const auto r = check_embeddings(samples[i]);
      worst.eq1 = std::max(worst.eq1, r.eq1);
      worst.eq2 = std::max(worst.eq2, r.eq2);
      worst.e1_F = std::max(worst.e1_F, r.e1_F);
      worst.e1_Ft = std::max(worst.e1_Ft, r.e1_Ft);
      worst.jprime_even = std::max(worst.jprime_even, r.jprime_even);
    }
    report.add_residual("embedding.j_adjoint", worst.eq1, "spino.j-intertwines-rho-tilde");
    report.add_residual("embedding.j_twisted_adjoint", worst.eq2, "spino.j-intertwines-rho");
    report.add_residual("embedding.jprime_F", worst.e1_F, "spino.jprime-intertwines-F");
    report.add_residual("embedding.jprime_F_tilde", worst.e1_Ft, "spino.jprime-intertwines-F-tilde");
    report.add_residual("embedding.jprime_even", worst.jprime_even, "spino.jprime-lands-in-spin");
  }
  return report;
}

}  // namespace spinolab
