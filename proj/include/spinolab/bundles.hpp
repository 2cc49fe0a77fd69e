#pragma once

#include <string>
#include <vector>

#include "spinolab/gf2.hpp"

namespace spinolab {

// A real vector bundle seen through its total Stiefel-Whitney class.
struct BundleDescriptor {
  std::string name;
  int rank = 0;
  Gf2Class w;

  const RingPtr& ring() const { return w.ring(); }
  Gf2Class wk(int k) const {
    if (k > rank) return Gf2Class::zero(w.ring());
    return w.component(k);
  }
  Gf2Class w1() const { return wk(1); }
  Gf2Class w2() const { return wk(2); }
  std::string to_string() const { return w.to_string(); }
};

inline void validate_bundle(const BundleDescriptor& b) {
  require(b.rank >= 0, "negative rank for bundle " + b.name);
  require(b.w.ring() != nullptr, "bundle " + b.name + " has no ring");
  require(b.w.component(0) == Gf2Class::one(b.w.ring()), "bundle " + b.name + " must have w_0 = 1");
  for (int k = b.rank + 1; k <= b.w.ring()->dim(); ++k)
    require(b.w.component(k).is_zero(), "bundle " + b.name + " has w_k != 0 above its rank");
}

inline BundleDescriptor make_bundle(std::string name, int rank, Gf2Class w) {
  BundleDescriptor b{std::move(name), rank, std::move(w)};
  validate_bundle(b);
  return b;
}

inline BundleDescriptor trivial_bundle(const RingPtr& ring, int rank, std::string name = {}) {
  if (name.empty()) name = rank == 1 ? "R" : "R^" + std::to_string(rank);
  return {std::move(name), rank, Gf2Class::one(ring)};
}

inline void same_ring(const BundleDescriptor& a, const BundleDescriptor& b) {
  require(a.ring() == b.ring(), "bundles " + a.name + " and " + b.name + " live over different spaces");
}

// w(A + B) = w(A) w(B).
inline BundleDescriptor whitney(const BundleDescriptor& a, const BundleDescriptor& b) {
  same_ring(a, b);
  return {a.name + " + " + b.name, a.rank + b.rank, a.w * b.w};
}

inline BundleDescriptor whitney_power(const BundleDescriptor& a, int n) {
  require(n >= 1, "power must be positive");
  BundleDescriptor r = a;
  for (int i = 1; i < n; ++i) r = whitney(r, a);
  r.name = std::to_string(n) + a.name;
  return r;
}

// w(LP) = sum_k (1 + w1(L))^k w_{r-k}(P).
inline BundleDescriptor line_twist(const BundleDescriptor& P, const BundleDescriptor& L) {
  same_ring(P, L);
  require(L.rank == 1, "line_twist needs a line bundle, got rank " + std::to_string(L.rank));
  const RingPtr& ring = P.ring();
  const Gf2Class u = Gf2Class::one(ring) + L.w1();
  Gf2Class w = Gf2Class::zero(ring);
  for (int k = 0; k <= P.rank; ++k) w += u.pow(k) * P.wk(P.rank - k);
  return {"(" + L.name + ")" + P.name, P.rank, w};
}

inline BundleDescriptor determinant(const BundleDescriptor& P) {
  return {"det " + P.name, 1, Gf2Class::one(P.ring()) + P.w1()};
}

// --- splitting principle ----------------------------------------------------

namespace detail {

// Elementary symmetric polynomial e_k in the variables [offset, offset + r).
inline Gf2Poly elementary(std::size_t nvars, std::size_t offset, int r, int k) {
  Gf2Poly out;
  if (k == 0) return Gf2Poly::one(nvars);
  if (k > r) return out;
  std::vector<int> pick(k);
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == k) {
      Exponents e(nvars, 0);
      for (int i : pick) e[offset + i] = 1;
      out.toggle(e);
      return;
    }
    for (int i = start; i < r; ++i) {
      pick[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

// Rewrites a polynomial symmetric in the roots [offset, offset + r) in terms
// of fresh variables [e_offset, e_offset + r) standing for e_1 .. e_r.
inline Gf2Poly symmetric_reduce(Gf2Poly work, std::size_t offset, int r, std::size_t e_offset) {
  const std::size_t nvars = work.terms().empty() ? 0 : work.terms().begin()->size();
  Gf2Poly result;
  for (;;) {
    // Lexicographically largest root exponent among the remaining terms.
    std::vector<int> best;
    for (const auto& e : work.terms()) {
      std::vector<int> a(e.begin() + offset, e.begin() + offset + r);
      if (std::all_of(a.begin(), a.end(), [](int x) { return x == 0; })) continue;
      if (best.empty() || a > best) best = a;
    }
    if (best.empty()) break;
    for (int i = 0; i + 1 < r; ++i)
      if (best[i] < best[i + 1]) throw StructuralFailure("polynomial is not symmetric in the roots");
    Gf2Poly coeff;
    for (const auto& e : work.terms())
      if (std::equal(best.begin(), best.end(), e.begin() + offset)) {
        Exponents c = e;
        for (int i = 0; i < r; ++i) c[offset + i] = 0;
        coeff.toggle(c);
      }
    Gf2Poly expansion = Gf2Poly::one(nvars);
    Exponents emon(nvars, 0);
    for (int k = 1; k <= r; ++k) {
      const int power = best[k - 1] - (k < r ? best[k] : 0);
      for (int p = 0; p < power; ++p) expansion = expansion * elementary(nvars, offset, r, k);
      emon[e_offset + k - 1] = power;
    }
    work += coeff * expansion;
    result += coeff * Gf2Poly::monomial(emon);
  }
  return result + work;
}

}  // namespace detail

enum class SplitOp { hom_self, tensor, dual };

inline const char* split_op_name(SplitOp op) {
  switch (op) {
    case SplitOp::hom_self: return "hom_self";
    case SplitOp::tensor: return "tensor";
    case SplitOp::dual: return "dual";
  }
  return "?";
}

// Total class of A (x) A*, A (x) B or A* from the mod-2 formal roots.
inline BundleDescriptor split_tensor(const BundleDescriptor& a, SplitOp op, const BundleDescriptor* b = nullptr) {
  require(a.rank <= 3, "formal roots are supported up to rank 3");
  if (op == SplitOp::dual) return {a.name + "*", a.rank, a.w};
  const BundleDescriptor& other = op == SplitOp::hom_self ? a : *b;
  require(op == SplitOp::hom_self || b != nullptr, "tensor needs a second bundle");
  same_ring(a, other);
  require(other.rank <= 3, "formal roots are supported up to rank 3");
  const int r = a.rank, s = other.rank;
  // Variables: roots x (r), roots y (s), then e(x) (r), e(y) (s).
  const std::size_t nvars = static_cast<std::size_t>(2 * (r + s));
  Gf2Poly prod = Gf2Poly::one(nvars);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < s; ++j) {
      Gf2Poly factor = Gf2Poly::one(nvars) + Gf2Poly::variable(nvars, i) + Gf2Poly::variable(nvars, r + j);
      prod = prod * factor;
    }
  Gf2Poly in_e = detail::symmetric_reduce(prod, 0, r, r + s);
  in_e = detail::symmetric_reduce(in_e, r, s, 2 * r + s);
  // Substitute e_k(x) -> w_k(a), e_k(y) -> w_k(other).
  const RingPtr& ring = a.ring();
  Gf2Class w = Gf2Class::zero(ring);
  for (const auto& e : in_e.terms()) {
    for (int i = 0; i < r + s; ++i) require(e[i] == 0, "root variables survived the symmetric reduction");
    Gf2Class term = Gf2Class::one(ring);
    for (int k = 1; k <= r; ++k) term = term * a.wk(k).pow(e[r + s + k - 1]);
    for (int k = 1; k <= s; ++k) term = term * other.wk(k).pow(e[2 * r + s + k - 1]);
    w += term;
  }
  const std::string name = op == SplitOp::hom_self ? a.name + " (x) " + a.name + "*" : a.name + " (x) " + other.name;
  return {name, r * s, w};
}

// --- Grassmannians ----------------------------------------------------------

// Homogeneous components of (1 + w1 + w2)^{-1} up to degree n, in Z2[w1, w2].
inline std::vector<Gf2Poly> dual_classes_gr2(int n) {
  const std::vector<int> degrees = {1, 2};
  const Gf2Poly x = Gf2Poly::variable(2, 0) + Gf2Poly::variable(2, 1);
  std::vector<Gf2Poly> comps(n + 1);
  Gf2Poly power = Gf2Poly::one(2);
  // x has degree >= 1, so x^k only contributes in degrees >= k.
  for (int k = 0; k <= n; ++k) {
    for (const auto& e : power.terms()) {
      const int d = monomial_degree(e, degrees);
      if (d <= n) comps[d].toggle(e);
    }
    power = power * x;
  }
  return comps;
}

// H*(Gr_{2,n}) = Z2[w1, w2] / (wbar_{n-1}, wbar_n), truncated at `dim`.
inline RingPtr grassmannian_ring(int n, int dim) {
  require(n >= 3, "Gr_{2,n} needs n >= 3");
  const auto comps = dual_classes_gr2(n);
  return CohomRing::build({"w1", "w2"}, {1, 2}, {comps[n - 1], comps[n]}, dim);
}

inline std::vector<std::string> grassmannian_relation_strings(int n) {
  const auto comps = dual_classes_gr2(n);
  return {format_gf2_poly(comps[n - 1], {"w1", "w2"}, {1, 2}), format_gf2_poly(comps[n], {"w1", "w2"}, {1, 2})};
}

inline BundleDescriptor tautological_gr2(const RingPtr& ring) {
  return make_bundle("L", 2, Gf2Class::parse(ring, "1 + w1 + w2"));
}

enum class TangentMode { paper, oracle };

inline const char* tangent_mode_name(TangentMode m) { return m == TangentMode::paper ? "paper" : "oracle"; }

inline TangentMode parse_tangent_mode(const std::string& s) {
  if (s == "paper") return TangentMode::paper;
  if (s == "oracle") return TangentMode::oracle;
  throw InvalidArgument("mode must be paper or oracle, got '" + s + "'");
}

// paper:  w(T) w(L (x) L*) = w(L)^{n+2}, rank 2n.
// oracle: T + Hom(L, L) = n L*,           rank 2(n-2).
inline BundleDescriptor grassmannian_tangent(const RingPtr& ring, int n, TangentMode mode) {
  const BundleDescriptor L = tautological_gr2(ring);
  const BundleDescriptor hom = split_tensor(L, SplitOp::hom_self);
  const int power = mode == TangentMode::paper ? n + 2 : n;
  const int rank = mode == TangentMode::paper ? 2 * n : 2 * (n - 2);
  return make_bundle(std::string("T[") + tangent_mode_name(mode) + "]", rank, L.w.pow(power) * hom.w.inverse());
}

}  // namespace spinolab
