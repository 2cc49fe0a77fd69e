#pragma once

#include <cmath>
#include <map>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spinolab/errors.hpp"
#include "spinolab/signature.hpp"

namespace spinolab {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

template <class T>
struct ScalarTraits {
  static bool is_zero(const T& x) { return x == 0; }
  static double to_double(const T& x) { return static_cast<double>(x); }
  static double abs(const T& x) { return std::abs(to_double(x)); }
};

// Products of unit-size group elements leave round-off far below this.
template <>
struct ScalarTraits<double> {
  static constexpr double kPrune = 1e-14;
  static bool is_zero(double x) { return std::abs(x) <= kPrune; }
  static double to_double(double x) { return x; }
  static double abs(double x) { return std::abs(x); }
};

template <class T>
class Multivector {
 public:
  using Scalar = T;
  using Terms = std::map<Blade, T>;

  Multivector() = default;
  explicit Multivector(const Signature& sig) : sig_(sig) {}

  static Multivector scalar(const Signature& sig, const T& c) { return blade(sig, 0, c); }

  static Multivector blade(const Signature& sig, Blade b, const T& c = T(1)) {
    require(b <= sig.full_blade(), "blade outside the algebra");
    Multivector m(sig);
    m.add_term(b, c);
    return m;
  }

  static Multivector generator(const Signature& sig, int i, const T& c = T(1)) {
    require(i >= 0 && i < sig.dim(), "generator index out of range");
    return blade(sig, Blade{1} << i, c);
  }

  static Multivector vector(const Signature& sig, const std::vector<T>& coords) {
    require(static_cast<int>(coords.size()) == sig.dim(), "vector length does not match signature");
    Multivector m(sig);
    for (int i = 0; i < sig.dim(); ++i) m.add_term(Blade{1} << i, coords[i]);
    return m;
  }

  const Signature& signature() const { return sig_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  T coeff(Blade b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? T(0) : it->second;
  }
  T scalar_part() const { return coeff(0); }

  void add_term(Blade b, const T& c) {
    if (ScalarTraits<T>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) {
      it->second += c;
      if (ScalarTraits<T>::is_zero(it->second)) terms_.erase(it);
    }
  }

  bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

  Multivector grade(int k) const {
    return filter([k](Blade b) { return blade_grade(b) == k; });
  }
  Multivector even_part() const {
    return filter([](Blade b) { return blade_grade(b) % 2 == 0; });
  }
  Multivector odd_part() const {
    return filter([](Blade b) { return blade_grade(b) % 2 == 1; });
  }

  // Largest absolute coefficient.
  double max_abs() const {
    double m = 0;
    for (const auto& [b, c] : terms_) m = std::max(m, ScalarTraits<T>::abs(c));
    return m;
  }

  Multivector operator-() const {
    Multivector r = *this;
    for (auto& [b, c] : r.terms_) c = -c;
    return r;
  }

  Multivector& operator+=(const Multivector& o) {
    check_same(o);
    for (const auto& [b, c] : o.terms_) add_term(b, c);
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    check_same(o);
    for (const auto& [b, c] : o.terms_) add_term(b, -c);
    return *this;
  }
  Multivector& operator*=(const T& s) {
    if (ScalarTraits<T>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      if (ScalarTraits<T>::is_zero(it->second))
        it = terms_.erase(it);
      else
        ++it;
    }
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, const T& s) { return a *= s; }
  friend Multivector operator*(const T& s, Multivector a) { return a *= s; }

  friend Multivector operator*(const Multivector& a, const Multivector& b) {
    a.check_same(b);
    const Signature& sig = a.sig_;
    Multivector r(sig);
    const std::size_t pairs = a.terms_.size() * b.terms_.size();
    const std::size_t dense = std::size_t{1} << sig.dim();
    if (std::is_floating_point_v<T> && dense <= 4 * pairs) {
      std::vector<T> acc(dense, T(0));
      std::vector<char> touched(acc.size(), 0);
      for (const auto& [ba, ca] : a.terms_)
        for (const auto& [bb, cb] : b.terms_) {
          auto [blade, sign] = blade_product(sig, ba, bb);
          acc[blade] += sign > 0 ? ca * cb : -(ca * cb);
          touched[blade] = 1;
        }
      for (std::size_t i = 0; i < acc.size(); ++i)
        if (touched[i] && !ScalarTraits<T>::is_zero(acc[i])) r.terms_.emplace_hint(r.terms_.end(), static_cast<Blade>(i), acc[i]);
    } else {
      for (const auto& [ba, ca] : a.terms_)
        for (const auto& [bb, cb] : b.terms_) {
          auto [blade, sign] = blade_product(sig, ba, bb);
          T c = ca * cb;
          if (sign < 0) c = -c;
          r.add_term(blade, c);
        }
    }
    return r;
  }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.sig_ == b.sig_ && a.terms_ == b.terms_;
  }

  // Applies f(blade, coeff) -> new coeff to every term.
  template <class F>
  Multivector map_terms(F f) const {
    Multivector r(sig_);
    for (const auto& [b, c] : terms_) r.add_term(b, f(b, c));
    return r;
  }

  template <class U>
  Multivector<U> cast() const {
    Multivector<U> r(sig_);
    for (const auto& [b, c] : terms_) r.add_term(b, static_cast<U>(c));
    return r;
  }

 private:
  template <class Pred>
  Multivector filter(Pred pred) const {
    Multivector r(sig_);
    for (const auto& [b, c] : terms_)
      if (pred(b)) r.terms_.emplace_hint(r.terms_.end(), b, c);
    return r;
  }

  void check_same(const Multivector& o) const {
    if (!(sig_ == o.sig_)) throw InvalidArgument("signature mismatch: " + sig_.to_string() + " vs " + o.sig_.to_string());
  }

  Signature sig_;
  Terms terms_;
};

// Distance between multivectors in the max norm on coefficients.
template <class T>
double distance(const Multivector<T>& a, const Multivector<T>& b) {
  return (a - b).max_abs();
}

}  // namespace spinolab
