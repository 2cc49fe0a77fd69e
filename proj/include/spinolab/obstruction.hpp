#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spinolab/catalog.hpp"
#include "spinolab/report.hpp"
#include "spinolab/signature.hpp"

namespace spinolab {

struct ObsVerdict {
  std::string structure;
  bool holds = false;
  // Named residual classes; the structure exists iff all vanish.
  std::vector<std::pair<std::string, Gf2Class>> residuals;
  // Residuals of the independent lift computation.
  std::vector<std::pair<std::string, Gf2Class>> lift_residuals;
  bool lift_agrees = true;
  std::string E;
  std::string detail;

  Json to_json() const {
    Json j;
    j["structure"] = structure;
    j["holds"] = holds;
    if (!E.empty()) j["E"] = E;
    Json r = Json::object();
    for (const auto& [n, c] : residuals) r[n] = c.to_string();
    j["residuals"] = r;
    Json l = Json::object();
    for (const auto& [n, c] : lift_residuals) l[n] = c.to_string();
    if (!l.empty()) j["lift_residuals"] = l;
    j["lift_agrees"] = lift_agrees;
    if (!detail.empty()) j["detail"] = detail;
    return j;
  }
};

inline bool all_zero(const std::vector<std::pair<std::string, Gf2Class>>& rs) {
  for (const auto& [n, c] : rs)
    if (!c.is_zero()) return false;
  return true;
}

// delta_{alpha,-1} + p(p+1)/2 + q(q+1)/2 mod 2.
inline int obso_coefficient(int alpha, int p, int q) {
  return ((alpha < 0 ? 1 : 0) + p * (p + 1) / 2 + q * (q + 1) / 2) % 2;
}

struct ObsoClasses {
  Gf2Class w1p, w2p, w1m, w2m, w1E, w2E;
};

// Both lines of the Spin^o obstruction, as residual classes.
inline std::pair<Gf2Class, Gf2Class> obso_residuals(const ObsoClasses& c, int alpha, int p, int q) {
  const Gf2Class line1 = c.w1p + c.w1m + (p + q) * c.w1E;
  const Gf2Class line2 = c.w2p + c.w2m + c.w1E * (p * c.w1p + q * c.w1m) + c.w2E +
                         obso_coefficient(alpha, p, q) * (c.w1E * c.w1E);
  return {line1, line2};
}

inline void require_rank(const BundleDescriptor& b, int rank, const std::string& what) {
  require(b.rank == rank, what + " must have rank " + std::to_string(rank) + ", got " + std::to_string(b.rank));
}

inline std::string structure_name(const std::string& kind, int alpha) { return kind + (alpha > 0 ? "+" : "-"); }

// P = P+ x P- admits a Spin^o_alpha structure with characteristic bundle E.
// The lift route twists P by det E, adds (det E)E and det E, and asks for w1 = w2 = 0.
inline ObsVerdict obstruct_spino(const BundleDescriptor& Pp, const BundleDescriptor& Pm, const BundleDescriptor& E, int alpha,
                                 int p, int q) {
  require(alpha == 1 || alpha == -1, "alpha must be +1 or -1");
  require_rank(Pp, p, "P+");
  require_rank(Pm, q, "P-");
  require_rank(E, 2, "E");
  same_ring(Pp, Pm);
  same_ring(Pp, E);
  ObsVerdict v;
  v.structure = structure_name("spino", alpha);
  v.E = E.name;
  const auto [line1, line2] = obso_residuals({Pp.w1(), Pp.w2(), Pm.w1(), Pm.w2(), E.w1(), E.w2()}, alpha, p, q);
  v.residuals = {{"w1", line1}, {"w2", line2}};
  v.holds = line1.is_zero() && line2.is_zero();

  const BundleDescriptor detE = determinant(E);
  const BundleDescriptor twistedE = line_twist(E, detE);
  BundleDescriptor plus = line_twist(Pp, detE), minus = line_twist(Pm, detE);
  if (alpha > 0) {
    plus = whitney(plus, twistedE);
    minus = whitney(minus, detE);
  } else {
    minus = whitney(whitney(minus, twistedE), detE);
  }
  const Gf2Class k1 = plus.w1() + minus.w1(), k2 = plus.w2() + minus.w2();
  v.lift_residuals = {{"w1", k1}, {"w2", k2}};
  v.lift_agrees = (k1.is_zero() && k2.is_zero()) == v.holds;
  return v;
}

// Definite signature: the tangent bundle is P+ (q = 0) or P- (p = 0).
inline std::pair<BundleDescriptor, BundleDescriptor> definite_frames(const BundleDescriptor& T, int p, int q) {
  require(p == 0 || q == 0, "only definite signatures are supported on catalog spaces");
  require(T.rank == p + q, "p + q must equal the dimension");
  const BundleDescriptor none = trivial_bundle(T.ring(), 0, "0");
  return q == 0 ? std::pair{T, none} : std::pair{none, T};
}

// Elementary real pinor bundles: Spin^o with alpha = alpha_{p,q}.
inline ObsVerdict obstruct_adapted(const SpaceDescriptor& M, const BundleDescriptor& E, int p, int q,
                                   TangentMode mode = TangentMode::paper) {
  require(p + q == M.dim, "p + q must equal dim M = " + std::to_string(M.dim));
  const int alpha = alpha_pq(p, q);
  const auto [Pp, Pm] = definite_frames(M.tangent(mode), p, q);
  ObsVerdict v = obstruct_spino(Pp, Pm, E, alpha, p, q);
  const int r = (((p - q) % 8) + 8) % 8;
  const int delta = r == 3 ? 1 : 0;
  require(delta == (alpha < 0 ? 1 : 0), "delta(p,q) disagrees with alpha_{p,q}");
  v.detail = "adapted, alpha_{p,q} = " + std::to_string(alpha);
  return v;
}

// Spin^c_alpha for an orientable P; the lift route checks the Pin condition on P x E.
inline ObsVerdict obstruct_spinc(const BundleDescriptor& Pp, const BundleDescriptor& Pm, const BundleDescriptor& E, int alpha) {
  require(alpha == 1 || alpha == -1, "alpha must be +1 or -1");
  require_rank(E, 2, "E");
  same_ring(Pp, Pm);
  same_ring(Pp, E);
  ObsVerdict v;
  v.structure = structure_name("spinc", alpha);
  v.E = E.name;
  const Gf2Class w1 = Pp.w1() + Pm.w1();
  Gf2Class w2 = Pp.w2() + Pm.w2() + E.w2();
  if (alpha < 0) w2 += E.w1() * E.w1();
  v.residuals = {{"w1", w1}, {"w2", w2}};
  v.holds = w1.is_zero() && w2.is_zero();
  if (!w1.is_zero()) v.detail = "P is not orientable";

  BundleDescriptor plus = Pp, minus = Pm;
  if (alpha > 0)
    plus = whitney(plus, E);
  else
    minus = whitney(minus, E);
  const Gf2Class k = plus.w2() + minus.w2() + minus.w1() * minus.w1() + minus.w1() * plus.w1();
  v.lift_residuals = {{"w1", w1}, {"pin", k}};
  v.lift_agrees = (w1.is_zero() && k.is_zero()) == v.holds;
  return v;
}

// --- search for E ------------------------------------------------------------

// Rank-2 candidates in order: trivial, catalog rank-2 bundles, sums of two
// catalog lines (or R), twists of the catalog rank-2 bundles by catalog lines.
inline std::vector<BundleDescriptor> candidate_E(const SpaceDescriptor& M) {
  std::vector<BundleDescriptor> out;
  auto add = [&](BundleDescriptor b) {
    for (const auto& o : out)
      if (o.name == b.name) return;
    out.push_back(std::move(b));
  };
  add(trivial_bundle(M.ring, 2, "R^2"));
  std::vector<BundleDescriptor> rank2;
  for (const auto& b : M.bundles)
    if (b.rank == 2) rank2.push_back(b);
  for (const auto& b : rank2) add(b);
  std::vector<BundleDescriptor> lines = {trivial_bundle(M.ring, 1, "R")};
  for (const auto& l : M.line_bundles()) lines.push_back(l);
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i; j < lines.size(); ++j) {
      if (i == 0 && j == 0) continue;
      add(whitney(lines[i], lines[j]));
    }
  for (const auto& b : rank2)
    for (const auto& l : M.line_bundles()) add(line_twist(b, l));
  return out;
}

struct SearchResult {
  std::optional<ObsVerdict> witness;
  int examined = 0;
  std::string detail;
};

// First candidate satisfying the predicate. A miss only exhausts the
// candidate family; (w1, w2) pairs are not checked for realizability.
inline SearchResult search_E(const SpaceDescriptor& M, const std::function<ObsVerdict(const BundleDescriptor&)>& predicate) {
  SearchResult r;
  for (const auto& E : candidate_E(M)) {
    ++r.examined;
    ObsVerdict v = predicate(E);
    if (v.holds) {
      r.witness = std::move(v);
      return r;
    }
  }
  r.detail = "none found among " + std::to_string(r.examined) +
             " candidates; this exhausts the candidate family only and does not prove nonexistence";
  return r;
}

// --- codimension two ---------------------------------------------------------

struct Codim2Result {
  Gf2Class w1_identity;  // w1(TY) + w1(NY)
  Gf2Class w2_identity;  // w2(TY) + w1(NY)^2 + w2(NY)
  Gf2Class total;        // w(TY) w(NY) + 1
  std::optional<ObsVerdict> verdict;
  bool holds = false;
};

// Y of dimension d in a spin manifold with normal bundle N; reading selects
// the Spin^o case: "riemannian" (d = 7 mod 8, alpha = +1), "negative"
// (d = 3 mod 8, alpha = -1, negative definite), "identities" (no structure).
inline Codim2Result codim2_check(const SpaceDescriptor& Y, const BundleDescriptor& N, const std::string& reading) {
  require_rank(N, 2, "normal bundle");
  const BundleDescriptor& T = Y.tangent();
  same_ring(T, N);
  Codim2Result r;
  r.total = T.w * N.w + Gf2Class::one(Y.ring);
  require(r.total.is_zero(), "w(TY) w(NY) = 1 is required for a spin ambient manifold");
  r.w1_identity = T.w1() + N.w1();
  r.w2_identity = T.w2() + N.w1() * N.w1() + N.w2();
  r.holds = r.w1_identity.is_zero() && r.w2_identity.is_zero();
  const int d = Y.dim;
  if (reading == "riemannian") {
    require(d % 8 == 7, "the Riemannian case needs dim Y = 7 mod 8");
    r.verdict = obstruct_spino(T, trivial_bundle(Y.ring, 0, "0"), N, 1, d, 0);
  } else if (reading == "negative") {
    require(d % 8 == 3, "the negative definite case needs dim Y = 3 mod 8");
    // Negative definite with p - q = 3 (mod 8): the coefficients of q = d + 2.
    const auto [l1, l2] = obso_residuals({Gf2Class::zero(Y.ring), Gf2Class::zero(Y.ring), T.w1(), T.w2(), N.w1(), N.w2()}, -1, 0, d + 2);
    ObsVerdict v;
    v.structure = "spino-";
    v.E = N.name;
    v.residuals = {{"w1", l1}, {"w2", l2}};
    v.holds = l1.is_zero() && l2.is_zero();
    v.detail = "negative definite, read as p - q = 3 (mod 8)";
    r.verdict = v;
  } else {
    require(reading == "identities", "unknown codim2 reading '" + reading + "'");
  }
  if (r.verdict) r.holds = r.holds && r.verdict->holds;
  return r;
}


// --- symbolic checks ---------------------------------------------------------

// Z2[w1P, w2P, w1E, w2E] truncated at degree 2, optionally modulo extra relations.
inline RingPtr generic_obstruction_ring(const std::vector<std::string>& relations = {}) {
  return CohomRing::build({{"w1P", "w2P", "w1E", "w2E"}, {1, 2, 1, 2}, relations, 2});
}

struct DisplayCheck {
  std::string name;
  int p = 0, q = 0, alpha = 1;
  std::string line1, line2;        // obso residuals, line 2 modulo line 1
  std::string expected1, expected2;
  bool holds = false;
};

// Line 1 as a relation, line 2 reduced modulo it, compared with the expected display.
inline DisplayCheck specialize_display(const std::string& name, int p, int q, int alpha, const std::string& expected1,
                                       const std::string& expected2) {
  require(p == 0 || q == 0, "displays are for definite signatures");
  const RingPtr free = generic_obstruction_ring();
  auto cls = [&](const RingPtr& r, const char* n) { return Gf2Class::generator(r, n); };
  const bool plus = q == 0;
  auto residuals = [&](const RingPtr& r) {
    const Gf2Class zero = Gf2Class::zero(r);
    ObsoClasses c{plus ? cls(r, "w1P") : zero, plus ? cls(r, "w2P") : zero, plus ? zero : cls(r, "w1P"),
                  plus ? zero : cls(r, "w2P"), cls(r, "w1E"), cls(r, "w2E")};
    return obso_residuals(c, alpha, p, q);
  };
  DisplayCheck out;
  out.name = name;
  out.p = p;
  out.q = q;
  out.alpha = alpha;
  const Gf2Class line1 = residuals(free).first;
  out.line1 = line1.to_string();
  const RingPtr quotient = generic_obstruction_ring({line1.to_string()});
  const Gf2Class line2 = residuals(quotient).second;
  out.line2 = line2.to_string();
  out.expected1 = expected1;
  out.expected2 = expected2;
  out.holds = line1 == Gf2Class::parse(free, expected1) && line2 == Gf2Class::parse(quotient, expected2);
  return out;
}

inline const std::string display_w1 = "w1P + w1E";
inline const std::string display_equal = "w2P + w2E";
inline const std::string display_twisted = "w2P + w1P^2 + w2E";

// The four definite-signature specializations. Negative definite cases are
// indexed by p - q mod 8: q = 5 gives the Spin^o_- case, q = 1 the Spin^o_+ case.
inline std::vector<DisplayCheck> specialize_displays() {
  return {specialize_display("positive, d = 3 (mod 8)", 3, 0, -1, display_w1, display_equal),
          specialize_display("positive, d = 7 (mod 8)", 7, 0, 1, display_w1, display_twisted),
          specialize_display("negative, p - q = 3 (mod 8)", 0, 5, -1, display_w1, display_twisted),
          specialize_display("negative, p - q = 7 (mod 8)", 0, 1, 1, display_w1, display_equal)};
}

// The negative definite displays read with q = d and the stated alpha.
inline std::vector<DisplayCheck> literal_negative_displays() {
  return {specialize_display("negative, q = 3, alpha = -1", 0, 3, -1, display_w1, display_twisted),
          specialize_display("negative, q = 7, alpha = +1", 0, 7, 1, display_w1, display_equal)};
}

// The same displays with q = d and alpha exchanged.
inline std::vector<DisplayCheck> swapped_alpha_negative_displays() {
  return {specialize_display("negative, q = 3, alpha = +1", 0, 3, 1, display_w1, display_twisted),
          specialize_display("negative, q = 7, alpha = -1", 0, 7, -1, display_w1, display_equal)};
}

struct NamedIdentity {
  std::string name;
  std::string lhs, rhs;
  bool holds = false;
};

// Classes of (det E)E and (det E)E + det E for a generic rank-2 E.
inline std::vector<NamedIdentity> erels_identities() {
  const RingPtr ring = CohomRing::build({{"w1", "w2"}, {1, 2}, {}, 4});
  const BundleDescriptor E = make_bundle("E", 2, Gf2Class::parse(ring, "1 + w1 + w2"));
  const BundleDescriptor detE = determinant(E);
  const BundleDescriptor twisted = line_twist(E, detE);
  const BundleDescriptor sum = whitney(twisted, detE);
  auto id = [&](std::string name, const Gf2Class& lhs, const std::string& rhs) {
    const Gf2Class r = Gf2Class::parse(ring, rhs);
    return NamedIdentity{std::move(name), lhs.to_string(), r.to_string(), lhs == r};
  };
  return {id("w1(detE)", detE.w1(), "w1"),
          id("w1((detE)E)", twisted.w1(), "w1"),
          id("w2((detE)E)", twisted.w2(), "w2"),
          id("w1((detE)E + detE)", sum.w1(), "0"),
          id("w2((detE)E + detE)", sum.w2(), "w2 + w1^2")};
}

}  // namespace spinolab
