#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "spinolab/errors.hpp"

namespace spinolab {

// Exponent vector of a monomial in the ring generators.
using Exponents = std::vector<int>;

// Polynomial over GF(2): the set of monomials with coefficient 1.
class Gf2Poly {
 public:
  Gf2Poly() = default;
  explicit Gf2Poly(std::set<Exponents> terms) : terms_(std::move(terms)) {}

  static Gf2Poly one(std::size_t nvars) { return Gf2Poly({Exponents(nvars, 0)}); }
  static Gf2Poly monomial(Exponents e) { return Gf2Poly({std::move(e)}); }
  static Gf2Poly variable(std::size_t nvars, std::size_t i, int power = 1) {
    Exponents e(nvars, 0);
    e[i] = power;
    return monomial(std::move(e));
  }

  const std::set<Exponents>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void toggle(const Exponents& e) {
    auto [it, inserted] = terms_.insert(e);
    if (!inserted) terms_.erase(it);
  }

  Gf2Poly& operator+=(const Gf2Poly& o) {
    for (const auto& e : o.terms_) toggle(e);
    return *this;
  }
  friend Gf2Poly operator+(Gf2Poly a, const Gf2Poly& b) { return a += b; }
  friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
    Gf2Poly r;
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) {
        Exponents e(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) e[i] = x[i] + y[i];
        r.toggle(e);
      }
    return r;
  }
  friend bool operator==(const Gf2Poly& a, const Gf2Poly& b) { return a.terms_ == b.terms_; }

 private:
  std::set<Exponents> terms_;
};

inline int monomial_degree(const Exponents& e, const std::vector<int>& degrees) {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * degrees[i];
  return d;
}

inline bool divides(const Exponents& m, const Exponents& e) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] > e[i]) return false;
  return true;
}

// Exponent vectors of total degree k, largest first: higher powers of later
// generators come first, so they are the ones eliminated by relations.
// Multiples of any monomial in `killed` are skipped.
inline std::vector<Exponents> monomials_of_degree(const std::vector<int>& degrees, int k,
                                                  const std::vector<Exponents>& killed = {}) {
  std::vector<Exponents> out;
  Exponents e(degrees.size(), 0);
  auto dead = [&] {
    for (const auto& m : killed)
      if (divides(m, e)) return true;
    return false;
  };
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i < 0) {
      if (left == 0) out.push_back(e);
      return;
    }
    for (int p = left / degrees[i]; p >= 0; --p) {
      e[i] = p;
      // Unassigned exponents are still zero, so a dead prefix stays dead.
      if (p > 0 && dead()) continue;
      self(self, i - 1, left - p * degrees[i]);
    }
    e[i] = 0;
  };
  rec(rec, static_cast<int>(degrees.size()) - 1, k);
  return out;
}

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

}  // namespace detail

// "1 + w1 + w1^2 + w1*w2" over the named generators.
inline Gf2Poly parse_gf2_poly(std::string_view text, const std::vector<std::string>& names) {
  const std::size_t n = names.size();
  Gf2Poly out;
  const std::string trimmed = detail::trim(text);
  require(!trimmed.empty(), "empty polynomial");
  if (trimmed == "0") return out;
  for (const auto& term : detail::split(trimmed, '+')) {
    require(!term.empty(), "empty term in polynomial '" + std::string(text) + "'");
    Exponents e(n, 0);
    if (term == "1") {
      out.toggle(e);
      continue;
    }
    for (const auto& factor : detail::split(term, '*')) {
      const auto caret = factor.find('^');
      const std::string name = detail::trim(factor.substr(0, caret));
      int power = 1;
      if (caret != std::string::npos) {
        const std::string p = detail::trim(factor.substr(caret + 1));
        require(!p.empty() && std::all_of(p.begin(), p.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }),
                "malformed exponent in '" + term + "'");
        power = std::stoi(p);
      }
      if (name == "1") continue;
      auto it = std::find(names.begin(), names.end(), name);
      require(it != names.end(), "unknown generator '" + name + "'");
      e[it - names.begin()] += power;
    }
    out.toggle(e);
  }
  return out;
}

inline std::string format_gf2_poly(const Gf2Poly& p, const std::vector<std::string>& names,
                                   const std::vector<int>& degrees) {
  if (p.is_zero()) return "0";
  std::vector<Exponents> terms(p.terms().begin(), p.terms().end());
  // Ascending degree; within a degree, the order of monomials_of_degree reversed.
  std::sort(terms.begin(), terms.end(), [&](const Exponents& a, const Exponents& b) {
    const int da = monomial_degree(a, degrees), db = monomial_degree(b, degrees);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.rbegin(), b.rend(), a.rbegin(), a.rend());
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& e : terms) {
    if (!first) out << " + ";
    first = false;
    bool any = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (any) out << "*";
      out << names[i];
      if (e[i] > 1) out << "^" << e[i];
      any = true;
    }
    if (!any) out << "1";
  }
  return out.str();
}

// Z2[generators] / (relations), truncated above degree `dim`. Each degree is
// handled by row reduction of the relation ideal over the monomial basis.
class CohomRing : public std::enable_shared_from_this<CohomRing> {
 public:
  struct Presentation {
    std::vector<std::string> names;
    std::vector<int> degrees;
    std::vector<std::string> relations;
    int dim = 0;
  };

  static std::shared_ptr<const CohomRing> build(const Presentation& pres) {
    require(pres.names.size() == pres.degrees.size(), "one degree per generator is required");
    std::vector<Gf2Poly> rels;
    for (const auto& r : pres.relations) rels.push_back(parse_gf2_poly(r, pres.names));
    return build(pres.names, pres.degrees, rels, pres.dim);
  }

  static std::shared_ptr<const CohomRing> build(std::vector<std::string> names, std::vector<int> degrees,
                                                std::vector<Gf2Poly> relations, int dim) {
    require(dim >= 0, "dimension must be nonnegative");
    for (int d : degrees) require(d >= 1, "generator degrees must be positive");
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i + 1; j < names.size(); ++j) require(names[i] != names[j], "duplicate generator " + names[i]);
    std::shared_ptr<CohomRing> ring(new CohomRing(std::move(names), std::move(degrees), std::move(relations), dim));
    ring->compute();
    return ring;
  }

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::vector<Gf2Poly>& relations() const { return relations_; }
  std::size_t ngens() const { return names_.size(); }
  int dim() const { return dim_; }

  // Standard monomials spanning degree k.
  std::vector<Exponents> basis(int k) const {
    std::vector<Exponents> out;
    if (k < 0 || k > top_) return out;
    const auto& deg = degree_data_[k];
    for (std::size_t c = 0; c < deg.monomials.size(); ++c)
      if (deg.pivot_row[c] < 0) out.push_back(deg.monomials[c]);
    return out;
  }
  int betti(int k) const { return static_cast<int>(basis(k).size()); }
  std::vector<int> poincare() const {
    std::vector<int> out;
    for (int k = 0; k <= dim_; ++k) out.push_back(betti(k));
    return out;
  }

  Gf2Poly normal_form(const Gf2Poly& p) const {
    std::map<int, boost::dynamic_bitset<>> acc;
    for (const auto& e : p.terms()) {
      require(e.size() == ngens(), "polynomial has the wrong number of variables");
      const int k = monomial_degree(e, degrees_);
      if (k > top_) continue;
      const auto& deg = degree_data_[k];
      const auto it = deg.index.find(e);
      if (it == deg.index.end()) continue;  // multiple of a monomial relation
      auto& v = acc.try_emplace(k, deg.monomials.size()).first->second;
      v ^= deg.reduced[it->second];
    }
    Gf2Poly out;
    for (const auto& [k, v] : acc)
      for (auto c = v.find_first(); c != boost::dynamic_bitset<>::npos; c = v.find_next(c))
        out.toggle(degree_data_[k].monomials[c]);
    return out;
  }

  Gf2Poly parse(std::string_view text) const { return normal_form(parse_gf2_poly(text, names_)); }
  std::string format(const Gf2Poly& p) const { return format_gf2_poly(p, names_, degrees_); }
  int degree_of(const Exponents& e) const { return monomial_degree(e, degrees_); }

 private:
  struct Degree {
    std::vector<Exponents> monomials;
    std::map<Exponents, std::size_t> index;
    std::vector<boost::dynamic_bitset<>> rows;  // reduced row echelon form of the ideal
    std::vector<int> pivot_row;                  // per column, or -1
    std::vector<boost::dynamic_bitset<>> reduced;  // per monomial, its normal form
  };

  CohomRing(std::vector<std::string> names, std::vector<int> degrees, std::vector<Gf2Poly> relations, int dim)
      : names_(std::move(names)), degrees_(std::move(degrees)), relations_(std::move(relations)), dim_(dim) {}

  void compute() {
    const int max_gen = degrees_.empty() ? 1 : *std::max_element(degrees_.begin(), degrees_.end());
    std::map<int, std::vector<const Gf2Poly*>> rel_by_degree;
    for (const auto& r : relations_) {
      require(r.terms().empty() || r.terms().begin()->size() == ngens(), "relation has the wrong number of variables");
      if (r.is_zero()) continue;
      std::set<int> ds;
      for (const auto& e : r.terms()) ds.insert(monomial_degree(e, degrees_));
      require(ds.size() == 1, "relations must be homogeneous");
      rel_by_degree[*ds.begin()].push_back(&r);
    }
    if (rel_by_degree.count(0)) throw InvalidArgument("inconsistent presentation: 1 = 0");
    // Monomial relations are applied by dropping their multiples from the columns.
    for (const auto& r : relations_)
      if (r.terms().size() == 1) killed_.push_back(*r.terms().begin());
    int zero_run = 0;
    top_ = -1;
    for (int k = 0; k <= dim_; ++k) {
      Degree deg;
      deg.monomials = monomials_of_degree(degrees_, k, killed_);
      for (std::size_t c = 0; c < deg.monomials.size(); ++c) deg.index[deg.monomials[c]] = c;
      const std::size_t ncols = deg.monomials.size();
      std::vector<boost::dynamic_bitset<>> rows;
      auto to_row = [&](const Gf2Poly& p) {
        boost::dynamic_bitset<> v(ncols);
        for (const auto& e : p.terms()) {
          const auto it = deg.index.find(e);
          if (it != deg.index.end()) v.flip(it->second);
        }
        return v;
      };
      for (const Gf2Poly* r : rel_by_degree[k]) rows.push_back(to_row(*r));
      for (std::size_t g = 0; g < ngens(); ++g) {
        const int lower = k - degrees_[g];
        if (lower < 0) continue;
        const Degree& prev = degree_data_[lower];
        for (const auto& row : prev.rows) {
          boost::dynamic_bitset<> v(ncols);
          for (auto c = row.find_first(); c != boost::dynamic_bitset<>::npos; c = row.find_next(c)) {
            Exponents e = prev.monomials[c];
            ++e[g];
            const auto it = deg.index.find(e);
            if (it != deg.index.end()) v.flip(it->second);
          }
          rows.push_back(std::move(v));
        }
      }
      // Reduced row echelon form; pivots on the earliest columns.
      deg.pivot_row.assign(ncols, -1);
      for (auto& v : rows) {
        for (auto c = v.find_first(); c != boost::dynamic_bitset<>::npos; c = v.find_next(c))
          if (deg.pivot_row[c] >= 0) v ^= deg.rows[deg.pivot_row[c]];
        const auto lead = v.find_first();
        if (lead == boost::dynamic_bitset<>::npos) continue;
        for (auto& r : deg.rows)
          if (r.test(lead)) r ^= v;
        deg.pivot_row[lead] = static_cast<int>(deg.rows.size());
        deg.rows.push_back(std::move(v));
      }
      deg.reduced.resize(ncols);
      for (std::size_t c = 0; c < ncols; ++c) {
        boost::dynamic_bitset<> v(ncols);
        if (deg.pivot_row[c] < 0) {
          v.set(c);
        } else {
          v = deg.rows[deg.pivot_row[c]];
          v.reset(c);
        }
        deg.reduced[c] = std::move(v);
      }
      const bool empty = deg.rows.size() == ncols;
      degree_data_.push_back(std::move(deg));
      top_ = k;
      zero_run = empty ? zero_run + 1 : 0;
      // Generated in degrees <= max_gen: a run of max_gen zero degrees kills everything above.
      if (zero_run >= max_gen && k > 0) break;
    }
  }

  std::vector<std::string> names_;
  std::vector<int> degrees_;
  std::vector<Gf2Poly> relations_;
  int dim_;
  int top_ = -1;
  std::vector<Exponents> killed_;
  std::vector<Degree> degree_data_;
};

using RingPtr = std::shared_ptr<const CohomRing>;

// An element of a CohomRing, kept in normal form.
class Gf2Class {
 public:
  Gf2Class() = default;
  Gf2Class(RingPtr ring, const Gf2Poly& p) : ring_(std::move(ring)), poly_(ring_->normal_form(p)) {}

  static Gf2Class zero(RingPtr ring) { return Gf2Class(std::move(ring), Gf2Poly()); }
  static Gf2Class one(RingPtr ring) {
    const auto n = ring->ngens();
    return Gf2Class(std::move(ring), Gf2Poly::one(n));
  }
  static Gf2Class parse(RingPtr ring, std::string_view text) {
    Gf2Poly p = parse_gf2_poly(text, ring->names());
    return Gf2Class(std::move(ring), p);
  }
  static Gf2Class generator(RingPtr ring, const std::string& name) { return parse(std::move(ring), name); }

  const RingPtr& ring() const { return ring_; }
  const Gf2Poly& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }

  // Homogeneous component of degree k.
  Gf2Class component(int k) const {
    Gf2Poly p;
    for (const auto& e : poly_.terms())
      if (ring_->degree_of(e) == k) p.toggle(e);
    return Gf2Class(ring_, p);
  }
  // Sum of the components of degree <= k.
  Gf2Class truncate(int k) const {
    Gf2Poly p;
    for (const auto& e : poly_.terms())
      if (ring_->degree_of(e) <= k) p.toggle(e);
    return Gf2Class(ring_, p);
  }
  bool is_homogeneous(int k) const {
    for (const auto& e : poly_.terms())
      if (ring_->degree_of(e) != k) return false;
    return true;
  }

  Gf2Class& operator+=(const Gf2Class& o) {
    same_ring(o);
    poly_ += o.poly_;
    return *this;
  }
  friend Gf2Class operator+(Gf2Class a, const Gf2Class& b) { return a += b; }
  friend Gf2Class operator*(const Gf2Class& a, const Gf2Class& b) {
    a.same_ring(b);
    return Gf2Class(a.ring_, a.poly_ * b.poly_);
  }
  // Integer multiple, reduced mod 2.
  friend Gf2Class operator*(long long n, const Gf2Class& a) { return (n % 2) ? a : zero(a.ring_); }
  friend bool operator==(const Gf2Class& a, const Gf2Class& b) { return a.ring_ == b.ring_ && a.poly_ == b.poly_; }

  Gf2Class pow(int n) const {
    require(n >= 0, "negative power");
    Gf2Class r = one(ring_), base = *this;
    for (; n > 0; n >>= 1) {
      if (n & 1) r = r * base;
      base = base * base;
    }
    return r;
  }

  // Inverse of a class with degree-0 component 1.
  Gf2Class inverse() const {
    require(component(0) == one(ring_), "only classes with constant term 1 are invertible");
    const Gf2Class x = *this + one(ring_);
    Gf2Class r = one(ring_), term = one(ring_);
    for (int k = 1; k <= ring_->dim(); ++k) {
      term = term * x;
      if (term.is_zero()) break;
      r += term;
    }
    return r;
  }

  std::string to_string() const { return ring_->format(poly_); }

 private:
  void same_ring(const Gf2Class& o) const { require(ring_ == o.ring_, "classes live in different rings"); }

  RingPtr ring_;
  Gf2Poly poly_;
};

}  // namespace spinolab
