#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "spinolab/errors.hpp"

namespace spinolab {

inline constexpr int kMaxGenerators = 16;

// A basis blade e_{i1}...e_{ik} with i1 < ... < ik, encoded by its bit set.
using Blade = std::uint32_t;

inline int blade_grade(Blade b) { return std::popcount(b); }

// Diagonal quadratic form given by the squares of the generators.
// Generators are indexed from 0. pq(p, q) puts the p positive squares first;
// from_squares allows any order, which is needed for enlarged spaces where
// extra generators are appended after an existing signature.
class Signature {
 public:
  Signature() = default;

  static Signature pq(int p, int q) {
    require(p >= 0 && q >= 0, "signature counts must be non-negative");
    std::vector<int> squares(p, 1);
    squares.insert(squares.end(), q, -1);
    return from_squares(squares);
  }

  static Signature from_squares(std::span<const int> squares) {
    require(squares.size() <= kMaxGenerators,
            "at most " + std::to_string(kMaxGenerators) + " generators are supported");
    Signature s;
    s.dim_ = static_cast<std::uint8_t>(squares.size());
    for (std::size_t i = 0; i < squares.size(); ++i) {
      require(squares[i] == 1 || squares[i] == -1, "generator squares must be +1 or -1");
      s.squares_[i] = static_cast<std::int8_t>(squares[i]);
      if (squares[i] < 0) s.negative_ |= Blade{1} << i;
    }
    return s;
  }

  static Signature from_squares(std::initializer_list<int> squares) {
    return from_squares(std::span<const int>(squares.begin(), squares.size()));
  }

  // Appends generators with the given squares.
  Signature extended(std::initializer_list<int> extra) const {
    std::vector<int> squares = this->squares();
    squares.insert(squares.end(), extra.begin(), extra.end());
    return from_squares(squares);
  }

  int dim() const { return dim_; }
  int square(int i) const { return squares_[i]; }
  // Bit set of the generators squaring to -1.
  Blade negative_mask() const { return negative_; }
  std::vector<int> squares() const { return {squares_.begin(), squares_.begin() + dim_}; }

  int p() const {
    int n = 0;
    for (int i = 0; i < dim_; ++i) n += squares_[i] > 0;
    return n;
  }
  int q() const { return dim_ - p(); }

  // True when the positive generators come first.
  bool is_standard() const {
    for (int i = 1; i < dim_; ++i)
      if (squares_[i] > squares_[i - 1]) return false;
    return true;
  }

  Blade full_blade() const { return dim_ == 0 ? 0 : (Blade{1} << dim_) - 1; }

  std::string to_string() const {
    if (is_standard()) return std::to_string(p()) + "," + std::to_string(q());
    std::string out = "[";
    for (int i = 0; i < dim_; ++i) out += squares_[i] > 0 ? '+' : '-';
    return out + "]";
  }

  bool operator==(const Signature&) const = default;

 private:
  std::array<std::int8_t, kMaxGenerators> squares_{};
  std::uint8_t dim_ = 0;
  Blade negative_ = 0;
};

struct BladeProduct {
  Blade blade;
  int sign;
};

// e_A e_B = sign * e_{A xor B}. Bit i of `before` is the parity of the
// generators of B below i, so a & before counts the transpositions mod 2.
inline BladeProduct blade_product(const Signature& sig, Blade a, Blade b) {
  Blade before = b << 1;
  before ^= before << 1;
  before ^= before << 2;
  before ^= before << 4;
  before ^= before << 8;
  before ^= before << 16;
  const int odd = std::popcount(a & before) + std::popcount(a & b & sig.negative_mask());
  return {a ^ b, (odd & 1) ? -1 : 1};
}

// -1 for p - q = 3 (mod 8), +1 for p - q = 7 (mod 8).
inline int alpha_pq(int p, int q) {
  const int r = (((p - q) % 8) + 8) % 8;
  if (r == 3) return -1;
  if (r == 7) return 1;
  throw InvalidArgument("p - q must be 3 or 7 mod 8, got (" + std::to_string(p) + "," + std::to_string(q) + ")");
}

}  // namespace spinolab
