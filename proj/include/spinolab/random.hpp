#pragma once

#include <random>

#include "spinolab/clifford.hpp"

namespace spinolab {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int max_num = 5, int max_den = 4) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

// Random rational multivector with up to max_terms nonzero blades.
inline Multivector<Rational> random_rational_multivector(const Signature& sig, Rng& rng, int max_terms = 6) {
  std::uniform_int_distribution<Blade> blade(0, sig.full_blade());
  std::uniform_int_distribution<int> count(1, max_terms);
  Multivector<Rational> m(sig);
  for (int n = count(rng); n > 0; --n) m.add_term(blade(rng), random_rational(rng));
  return m;
}

// Vector with h(v, v) = +1 or -1.
inline std::vector<double> random_unit_vector(const Signature& sig, Rng& rng) {
  require(sig.dim() > 0, "no vectors in a zero-dimensional space");
  std::normal_distribution<double> normal;
  for (;;) {
    std::vector<double> v(sig.dim());
    double h = 0;
    for (int i = 0; i < sig.dim(); ++i) {
      v[i] = normal(rng);
      h += sig.square(i) * v[i] * v[i];
    }
    if (std::abs(h) < 0.25) continue;
    const double s = 1.0 / std::sqrt(std::abs(h));
    for (double& x : v) x *= s;
    return v;
  }
}

// Product of `factors` random unit vectors; an even count lands in Spin.
inline Multivector<double> random_versor(const Signature& sig, Rng& rng, int factors) {
  Multivector<double> a = Multivector<double>::scalar(sig, 1.0);
  if (sig.dim() == 0) return a;
  for (int i = 0; i < factors; ++i) a = a * Multivector<double>::vector(sig, random_unit_vector(sig, rng));
  return a;
}

inline Multivector<double> random_spin(const Signature& sig, Rng& rng) { return random_versor(sig, rng, 4); }

inline double random_angle(Rng& rng) {
  std::uniform_real_distribution<double> u(-3.141592653589793, 3.141592653589793);
  return u(rng);
}

inline bool random_bit(Rng& rng) { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; }

}  // namespace spinolab
