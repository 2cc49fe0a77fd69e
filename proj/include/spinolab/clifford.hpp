#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "spinolab/multivector.hpp"

namespace spinolab {

using Matrix = Eigen::MatrixXd;

enum class Involution { grade, reversion, twisted_reversion };

inline int reversion_sign(Blade b) {
  const int k = blade_grade(b);
  return (k * (k - 1) / 2) % 2 ? -1 : 1;
}

template <class T>
Multivector<T> involution(const Multivector<T>& a, Involution kind) {
  return a.map_terms([kind](Blade b, const T& c) {
    int sign = 1;
    if (kind != Involution::reversion && blade_grade(b) % 2) sign = -sign;
    if (kind != Involution::grade) sign *= reversion_sign(b);
    return sign > 0 ? c : T(-c);
  });
}

template <class T>
Multivector<T> grade_involution(const Multivector<T>& a) { return involution(a, Involution::grade); }
template <class T>
Multivector<T> reversion(const Multivector<T>& a) { return involution(a, Involution::reversion); }
template <class T>
Multivector<T> twisted_reversion(const Multivector<T>& a) { return involution(a, Involution::twisted_reversion); }

// Twisted norm: twisted_reversion(a) * a.
template <class T>
Multivector<T> twisted_norm(const Multivector<T>& a) { return twisted_reversion(a) * a; }

// e_1 e_2 ... e_d times the orientation sign.
template <class T = Rational>
Multivector<T> volume_element(const Signature& sig, int orientation = 1) {
  require(orientation == 1 || orientation == -1, "orientation must be +1 or -1");
  return Multivector<T>::blade(sig, sig.full_blade(), T(orientation));
}

// Inverse of an element whose twisted norm (or reversion norm) is a nonzero
// scalar; this covers the Clifford, Pin and Spin groups.
template <class T>
Multivector<T> inverse(const Multivector<T>& a) {
  const double scale = std::max(1.0, a.max_abs() * a.max_abs());
  for (auto kind : {Involution::twisted_reversion, Involution::reversion}) {
    Multivector<T> conj = involution(a, kind);
    Multivector<T> n = conj * a;
    const T s = n.scalar_part();
    if (ScalarTraits<T>::is_zero(s) || (n - n.grade(0)).max_abs() > 1e-9 * scale) continue;
    Multivector<T> inv = conj * T(T(1) / s);
    Multivector<T> check = a * inv - Multivector<T>::scalar(a.signature(), T(1));
    if (check.max_abs() <= 1e-9 * std::max(1.0, a.max_abs() * inv.max_abs())) return inv;
  }
  throw InvalidArgument("element is not invertible in the Clifford group");
}

// Matrix of v -> a v a^{-1} (or grade(a) v a^{-1} when twisted) on the
// generators. The image of every generator must be a vector.
template <class T>
Matrix vector_rep(const Multivector<T>& a, bool twisted, double tol = 1e-9) {
  const Signature& sig = a.signature();
  const int d = sig.dim();
  const Multivector<T> inv = inverse(a);
  const Multivector<T> left = twisted ? grade_involution(a) : a;
  Matrix m = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    Multivector<T> img = left * Multivector<T>::generator(sig, j) * inv;
    for (const auto& [b, c] : img.terms()) {
      if (blade_grade(b) != 1) {
        if (ScalarTraits<T>::abs(c) > tol)
          throw InvalidArgument("adjoint action does not preserve the vector space");
        continue;
      }
      m(std::countr_zero(b), j) = ScalarTraits<T>::to_double(c);
    }
  }
  return m;
}

// Algebra morphism determined by the images of the generators.
template <class T>
Multivector<T> apply_algebra_morphism(const Multivector<T>& x, const Signature& target,
                                      const std::vector<Multivector<T>>& images) {
  require(static_cast<int>(images.size()) == x.signature().dim(), "one image per generator is required");
  Multivector<T> out(target);
  for (const auto& [b, c] : x.terms()) {
    Multivector<T> term = Multivector<T>::scalar(target, c);
    for (Blade rest = b; rest != 0; rest &= rest - 1) term = term * images[std::countr_zero(rest)];
    out += term;
  }
  return out;
}

// Metric diag(squares) of the signature.
inline Matrix metric(const Signature& sig) {
  Matrix g = Matrix::Zero(sig.dim(), sig.dim());
  for (int i = 0; i < sig.dim(); ++i) g(i, i) = sig.square(i);
  return g;
}

// Max entry of |M^T g M - g|.
inline double orthogonality_defect(const Matrix& m, const Signature& sig) {
  const Matrix g = metric(sig);
  return (m.transpose() * g * m - g).cwiseAbs().maxCoeff();
}

// --- text format -----------------------------------------------------------
// "c0 + c1*e1 + c12*e1e2 - 3/2*e2e3"; generator labels are 1-based.

inline std::string blade_label(Blade b) {
  std::string s;
  for (Blade rest = b; rest != 0; rest &= rest - 1) s += "e" + std::to_string(std::countr_zero(rest) + 1);
  return s;
}

template <class T>
std::string to_string(const Multivector<T>& a) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [b, c] : a.terms()) {
    const bool negative = c < 0;
    const T mag = negative ? T(-c) : c;
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    if (b == 0) {
      out << mag;
    } else {
      if (mag != T(1)) out << mag << "*";
      out << blade_label(b);
    }
  }
  return out.str();
}

namespace detail {

inline Rational parse_rational(std::string_view s) {
  require(!s.empty(), "empty coefficient");
  const auto slash = s.find('/');
  auto parse_int = [](std::string_view t) {
    require(!t.empty(), "malformed rational");
    for (char ch : t) require(std::isdigit(static_cast<unsigned char>(ch)), "malformed rational: " + std::string(t));
    return boost::multiprecision::cpp_int(std::string(t));
  };
  if (slash == std::string_view::npos) return Rational(parse_int(s));
  const auto den = parse_int(s.substr(slash + 1));
  require(den != 0, "zero denominator");
  return Rational(parse_int(s.substr(0, slash)), den);
}

// Parses "e1e2e3" into a blade and the sign from reordering.
inline std::pair<Blade, int> parse_blade(std::string_view s, const Signature& sig) {
  Blade b = 0;
  int sign = 1;
  std::size_t i = 0;
  while (i < s.size()) {
    require(s[i] == 'e', "malformed blade: " + std::string(s));
    std::size_t j = i + 1;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    require(j > i + 1, "malformed blade: " + std::string(s));
    const int idx = std::stoi(std::string(s.substr(i + 1, j - i - 1)));
    require(idx >= 1 && idx <= sig.dim(), "generator index out of range in " + std::string(s));
    auto [nb, ns] = blade_product(sig, b, Blade{1} << (idx - 1));
    b = nb;
    sign *= ns;
    i = j;
  }
  return {b, sign};
}

}  // namespace detail

inline Multivector<Rational> parse_multivector(std::string_view text, const Signature& sig) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  require(!s.empty(), "empty multivector");
  Multivector<Rational> out(sig);
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else {
      require(i == 0, "expected '+' or '-' between terms");
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    const std::string_view term(s.data() + i, j - i);
    require(!term.empty(), "empty term");
    Rational coeff(1);
    std::string_view blade_text;
    if (term[0] == 'e') {
      blade_text = term;
    } else {
      const auto star = term.find('*');
      coeff = detail::parse_rational(term.substr(0, star));
      if (star != std::string_view::npos) blade_text = term.substr(star + 1);
    }
    auto [b, bsign] = detail::parse_blade(blade_text, sig);
    out.add_term(b, coeff * sign * bsign);
    i = j;
  }
  return out;
}

// Parses "p,q".
inline Signature parse_signature(std::string_view text) {
  const auto comma = text.find(',');
  require(comma != std::string_view::npos, "signature must be written as p,q");
  try {
    const int p = std::stoi(std::string(text.substr(0, comma)));
    const int q = std::stoi(std::string(text.substr(comma + 1)));
    return Signature::pq(p, q);
  } catch (const std::logic_error&) {
    throw InvalidArgument("signature must be written as p,q");
  }
}

}  // namespace spinolab
