#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinolab/bundles.hpp"

namespace spinolab {

// A space through its mod-2 cohomology and a few named bundles. Bundle "T"
// is the tangent bundle; "T_oracle", when present, is the alternative
// tangent class used by the oracle mode.
struct SpaceDescriptor {
  std::string name;
  std::vector<std::string> aliases;
  int dim = 0;
  RingPtr ring;
  CohomRing::Presentation presentation;
  std::vector<BundleDescriptor> bundles;
  std::vector<std::string> lines;
  std::string base;  // M for a stabilization M x R^j
  std::string notes;

  bool has_bundle(const std::string& n) const {
    for (const auto& b : bundles)
      if (b.name == n) return true;
    return false;
  }
  const BundleDescriptor& bundle(const std::string& n) const {
    for (const auto& b : bundles)
      if (b.name == n) return b;
    throw InvalidArgument("space " + name + " has no bundle named '" + n + "'");
  }
  const BundleDescriptor& tangent(TangentMode mode = TangentMode::paper) const {
    if (mode == TangentMode::oracle && has_bundle("T_oracle")) return bundle("T_oracle");
    return bundle("T");
  }
  bool orientable(TangentMode mode = TangentMode::paper) const { return tangent(mode).w1().is_zero(); }
  std::vector<BundleDescriptor> line_bundles() const {
    std::vector<BundleDescriptor> out;
    for (const auto& n : lines) out.push_back(bundle(n));
    return out;
  }
};

inline void validate_space(const SpaceDescriptor& s) {
  require(s.ring != nullptr, "space " + s.name + " has no ring");
  require(s.ring->dim() == s.dim, "space " + s.name + ": ring truncation must equal the dimension");
  require(s.has_bundle("T"), "space " + s.name + " has no tangent bundle");
  for (const auto& b : s.bundles) validate_bundle(b);
  require(s.bundle("T").rank == s.dim, "space " + s.name + ": tangent rank must equal the dimension");
  for (const auto& l : s.lines) require(s.bundle(l).rank == 1, "space " + s.name + ": '" + l + "' is not a line bundle");
}

inline SpaceDescriptor space_from_json(const nlohmann::json& j) {
  SpaceDescriptor s;
  s.name = j.at("name").get<std::string>();
  try {
    if (j.contains("aliases")) s.aliases = j.at("aliases").get<std::vector<std::string>>();
    s.dim = j.at("dimension").get<int>();
    CohomRing::Presentation pres;
    for (const auto& g : j.at("generators")) {
      pres.names.push_back(g.at("name").get<std::string>());
      pres.degrees.push_back(g.at("degree").get<int>());
    }
    pres.relations = j.value("relations", std::vector<std::string>{});
    pres.dim = s.dim;
    s.presentation = pres;
    s.ring = CohomRing::build(pres);
    for (const auto& b : j.at("bundles"))
      s.bundles.push_back(make_bundle(b.at("name").get<std::string>(), b.at("rank").get<int>(),
                                      Gf2Class::parse(s.ring, b.at("w").get<std::string>())));
    s.lines = j.value("lines", std::vector<std::string>{});
    s.base = j.value("base", std::string{});
    s.notes = j.value("notes", std::string{});
    validate_space(s);
    if (j.contains("orientable"))
      require(j.at("orientable").get<bool>() == s.orientable(), "space " + s.name + ": orientable flag disagrees with w1(T)");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("malformed catalog entry " + s.name + ": " + e.what());
  }
  return s;
}

inline nlohmann::ordered_json space_to_json(const SpaceDescriptor& s) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  if (!s.aliases.empty()) j["aliases"] = s.aliases;
  j["dimension"] = s.dim;
  j["generators"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < s.presentation.names.size(); ++i)
    j["generators"].push_back({{"name", s.presentation.names[i]}, {"degree", s.presentation.degrees[i]}});
  j["relations"] = s.presentation.relations;
  j["bundles"] = nlohmann::ordered_json::array();
  for (const auto& b : s.bundles) j["bundles"].push_back({{"name", b.name}, {"rank", b.rank}, {"w", b.to_string()}});
  j["lines"] = s.lines;
  j["orientable"] = s.orientable();
  if (!s.base.empty()) j["base"] = s.base;
  if (!s.notes.empty()) j["notes"] = s.notes;
  return j;
}

// A codimension-two embedding Y in a spin manifold, as data.
struct Codim2Example {
  std::string name;
  std::string space;
  std::string normal_w;
  std::string reading;  // "identities", "riemannian", "negative"
  std::string notes;
};

class Catalog {
 public:
  static Catalog from_json(const nlohmann::json& j) {
    Catalog c;
    for (const auto& s : j.at("spaces")) c.add(space_from_json(s));
    if (j.contains("codim2"))
      for (const auto& e : j.at("codim2"))
        c.codim2_.push_back({e.at("name").get<std::string>(), e.at("space").get<std::string>(),
                             e.at("normal_w").get<std::string>(), e.at("reading").get<std::string>(),
                             e.value("notes", std::string{})});
    for (const auto& s : c.spaces_)
      if (!s.base.empty()) require(c.has(s.base), "space " + s.name + " stabilizes unknown base " + s.base);
    for (const auto& e : c.codim2_) require(c.has(e.space), "codim2 example " + e.name + " uses unknown space");
    return c;
  }

  static Catalog load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open catalog " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("catalog " + path + " is not valid JSON: " + e.what());
    }
    return from_json(j);
  }

  void add(SpaceDescriptor s) {
    require(!has(s.name), "duplicate space " + s.name);
    for (const auto& a : s.aliases) require(!has(a), "duplicate alias " + a);
    spaces_.push_back(std::move(s));
  }

  bool has(const std::string& name) const { return find(name) != nullptr; }
  const SpaceDescriptor& get(const std::string& name) const {
    const SpaceDescriptor* s = find(name);
    if (!s) throw InvalidArgument("unknown space '" + name + "'");
    return *s;
  }
  const std::vector<SpaceDescriptor>& spaces() const { return spaces_; }
  const std::vector<Codim2Example>& codim2() const { return codim2_; }

 private:
  const SpaceDescriptor* find(const std::string& name) const {
    for (const auto& s : spaces_) {
      if (s.name == name) return &s;
      for (const auto& a : s.aliases)
        if (a == name) return &s;
    }
    return nullptr;
  }

  std::vector<SpaceDescriptor> spaces_;
  std::vector<Codim2Example> codim2_;
};

// --- ring morphisms and products ---------------------------------------------

// Image of x under the algebra morphism sending generator i to images[i].
inline Gf2Class map_class(const Gf2Class& x, const RingPtr& target, const std::vector<Gf2Class>& images) {
  require(images.size() == x.ring()->ngens(), "one image per generator is required");
  Gf2Class out = Gf2Class::zero(target);
  for (const auto& e : x.poly().terms()) {
    Gf2Class term = Gf2Class::one(target);
    for (std::size_t i = 0; i < e.size(); ++i) term = term * images[i].pow(e[i]);
    out += term;
  }
  return out;
}

// Relations of the source must map to zero.
inline bool is_well_defined_morphism(const RingPtr& source, const RingPtr& target, const std::vector<Gf2Class>& images) {
  for (const auto& r : source->relations()) {
    Gf2Class img = Gf2Class::zero(target);
    for (const auto& e : r.terms()) {
      if (source->degree_of(e) > target->dim()) continue;
      Gf2Class term = Gf2Class::one(target);
      for (std::size_t i = 0; i < e.size(); ++i) term = term * images[i].pow(e[i]);
      img += term;
    }
    if (!img.is_zero()) return false;
  }
  return true;
}

inline BundleDescriptor pullback(const BundleDescriptor& b, const RingPtr& target, const std::vector<Gf2Class>& images,
                                 const std::string& prefix = {}) {
  return {prefix + b.name, b.rank, map_class(b.w, target, images)};
}

struct ProductSpace {
  SpaceDescriptor space;
  std::vector<Gf2Class> first_images;   // images of the generators of M
  std::vector<Gf2Class> second_images;  // images of the generators of N
};

// M x N with the tensor product presentation; T(M x N) = pr1*TM + pr2*TN.
inline ProductSpace product_space(const SpaceDescriptor& M, const SpaceDescriptor& N) {
  CohomRing::Presentation pres;
  pres.names = M.presentation.names;
  pres.degrees = M.presentation.degrees;
  std::vector<std::string> second_names;
  for (std::size_t i = 0; i < N.presentation.names.size(); ++i) {
    std::string n = N.presentation.names[i];
    while (std::find(pres.names.begin(), pres.names.end(), n) != pres.names.end()) n += "'";
    second_names.push_back(n);
    pres.names.push_back(n);
    pres.degrees.push_back(N.presentation.degrees[i]);
  }
  pres.dim = M.dim + N.dim;
  std::vector<Gf2Poly> rels;
  const std::size_t nm = M.presentation.names.size(), nv = pres.names.size();
  for (const auto& r : M.ring->relations()) {
    Gf2Poly p;
    for (auto e : r.terms()) {
      e.resize(nv, 0);
      p.toggle(e);
    }
    rels.push_back(p);
    pres.relations.push_back(format_gf2_poly(p, pres.names, pres.degrees));
  }
  for (const auto& r : N.ring->relations()) {
    Gf2Poly p;
    for (const auto& e : r.terms()) {
      Exponents f(nv, 0);
      std::copy(e.begin(), e.end(), f.begin() + nm);
      p.toggle(f);
    }
    rels.push_back(p);
    pres.relations.push_back(format_gf2_poly(p, pres.names, pres.degrees));
  }
  ProductSpace out;
  SpaceDescriptor& s = out.space;
  s.name = M.name + " x " + N.name;
  s.dim = pres.dim;
  s.ring = CohomRing::build(pres.names, pres.degrees, rels, pres.dim);
  s.presentation = pres;
  for (std::size_t i = 0; i < nm; ++i) out.first_images.push_back(Gf2Class::generator(s.ring, pres.names[i]));
  for (const auto& n : second_names) out.second_images.push_back(Gf2Class::generator(s.ring, n));
  BundleDescriptor T = whitney(pullback(M.bundle("T"), s.ring, out.first_images), pullback(N.bundle("T"), s.ring, out.second_images));
  T.name = "T";
  s.bundles.push_back(T);
  for (const auto& l : M.lines) {
    s.bundles.push_back(pullback(M.bundle(l), s.ring, out.first_images, "pr1*"));
    s.lines.push_back(s.bundles.back().name);
  }
  for (const auto& l : N.lines) {
    s.bundles.push_back(pullback(N.bundle(l), s.ring, out.second_images, "pr2*"));
    s.lines.push_back(s.bundles.back().name);
  }
  validate_space(s);
  return out;
}

// M x R^j: the same presentation truncated at dim + j, tangent ranks raised by j,
// and the tangent bundle of M kept as T_base.
inline SpaceDescriptor stabilize(const SpaceDescriptor& M, int j) {
  require(j >= 0, "stabilization needs j >= 0");
  SpaceDescriptor s;
  s.name = M.name + "_r" + std::to_string(j);
  s.dim = M.dim + j;
  s.presentation = M.presentation;
  s.presentation.dim = s.dim;
  s.ring = CohomRing::build(s.presentation);
  auto moved = [&](const BundleDescriptor& b, std::string name, int rank) {
    return make_bundle(std::move(name), rank, Gf2Class::parse(s.ring, b.to_string()));
  };
  for (const auto& b : M.bundles) {
    if (b.name == "T_base") continue;
    const bool tangent = b.name == "T" || b.name == "T_oracle";
    s.bundles.push_back(moved(b, b.name, tangent ? b.rank + j : b.rank));
    if (b.name == "T") s.bundles.push_back(moved(b, "T_base", b.rank));
  }
  s.lines = M.lines;
  s.base = M.name;
  validate_space(s);
  return s;
}

// The real line: ring Z2 in degree 0, trivial tangent bundle of rank 1.
inline SpaceDescriptor real_line() {
  SpaceDescriptor s;
  s.name = "R";
  s.dim = 1;
  s.presentation = {{}, {}, {}, 1};
  s.ring = CohomRing::build(s.presentation);
  s.bundles.push_back(trivial_bundle(s.ring, 1, "T"));
  return s;
}

}  // namespace spinolab
