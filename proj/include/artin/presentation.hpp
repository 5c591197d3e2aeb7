#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "artin/errors.hpp"

namespace artin {

/// A labeled simple graph defining an Artin group: named generators and
/// edges {u, v} with label m_uv >= 2. An absent edge means m = infinity.
class PresentationGraph {
public:
  PresentationGraph() = default;

  void add_generator(const std::string& name) {
    if (name.empty()) fail(ErrorKind::Validation, "empty generator name");
    if (index_.count(name)) fail(ErrorKind::Validation, "duplicate generator '" + name + "'");
    index_[name] = generators_.size();
    generators_.push_back(name);
  }

  void add_edge(const std::string& a, const std::string& b, int m) {
    if (!index_.count(a) || !index_.count(b))
      fail(ErrorKind::Validation, "edge references unknown generator");
    if (a == b) fail(ErrorKind::Validation, "loop edge at '" + a + "'");
    if (m < 2) fail(ErrorKind::Validation, "edge label must be >= 2");
    auto key = ordered(a, b);
    if (labels_.count(key)) fail(ErrorKind::Validation, "duplicate edge {" + a + "," + b + "}");
    labels_[key] = m;
  }

  const std::vector<std::string>& generators() const { return generators_; }

  size_t generator_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) fail(ErrorKind::Validation, "unknown generator '" + name + "'");
    return it->second;
  }

  bool has_generator(const std::string& name) const { return index_.count(name) > 0; }

  /// Edge label, or nullopt when the generators are not adjacent (m = inf).
  std::optional<int> label(const std::string& a, const std::string& b) const {
    auto it = labels_.find(ordered(a, b));
    if (it == labels_.end()) return std::nullopt;
    return it->second;
  }

  bool adjacent(const std::string& a, const std::string& b) const {
    return labels_.count(ordered(a, b)) > 0;
  }

  const std::map<std::pair<std::string, std::string>, int>& edges() const { return labels_; }

  std::vector<std::string> neighbors(const std::string& v) const {
    std::vector<std::string> out;
    for (const auto& [key, m] : labels_) {
      if (key.first == v) out.push_back(key.second);
      else if (key.second == v) out.push_back(key.first);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool all_labels_two() const {
    for (const auto& [key, m] : labels_)
      if (m != 2) return false;
    return true;
  }

private:
  static std::pair<std::string, std::string> ordered(const std::string& a,
                                                     const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  }

  std::vector<std::string> generators_;
  std::map<std::string, size_t> index_;
  std::map<std::pair<std::string, std::string>, int> labels_;
};

/// Parse the graph JSON schema:
///   {"generators":["s","t"],"edges":[{"a":"s","b":"t","m":3}]}
inline PresentationGraph parse_graph(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Syntax, std::string("malformed graph document: ") + e.what());
  }
  PresentationGraph g;
  try {
    if (!doc.is_object() || !doc.contains("generators"))
      fail(ErrorKind::Syntax, "graph document needs a 'generators' array");
    for (const auto& name : doc.at("generators"))
      g.add_generator(name.get<std::string>());
    if (doc.contains("edges")) {
      for (const auto& e : doc.at("edges")) {
        if (!e.contains("a") || !e.contains("b") || !e.contains("m"))
          fail(ErrorKind::Syntax, "edge needs fields a, b, m");
        if (!e.at("m").is_number_integer())
          fail(ErrorKind::Validation, "edge label must be an integer");
        g.add_edge(e.at("a").get<std::string>(), e.at("b").get<std::string>(),
                   e.at("m").get<int>());
      }
    }
  } catch (const Error&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Syntax, std::string("malformed graph document: ") + e.what());
  }
  return g;
}

struct Triangle {
  std::string a, b, c;
  int p, q, r;  // labels of bc..-style opposite edges in some fixed order
};

/// Two-dimensionality: no induced triangle may span a spherical rank-3
/// parabolic, i.e. every triangle with labels p, q, r must satisfy
/// 1/p + 1/q + 1/r <= 1 (the finite Coxeter triangle groups are exactly
/// those with 1/p + 1/q + 1/r > 1).
struct TwoDimReport {
  bool two_dimensional = true;
  std::vector<Triangle> violations;
};

inline TwoDimReport is_two_dimensional(const PresentationGraph& g) {
  TwoDimReport report;
  const auto& gens = g.generators();
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      for (size_t k = j + 1; k < gens.size(); ++k) {
        auto ab = g.label(gens[i], gens[j]);
        auto bc = g.label(gens[j], gens[k]);
        auto ac = g.label(gens[i], gens[k]);
        if (!ab || !bc || !ac) continue;
        // 1/p + 1/q + 1/r > 1 over exact integers: qr + pr + pq > pqr.
        long long p = *ab, q = *bc, r = *ac;
        if (q * r + p * r + p * q > p * q * r) {
          report.two_dimensional = false;
          report.violations.push_back({gens[i], gens[j], gens[k],
                                       static_cast<int>(p), static_cast<int>(q),
                                       static_cast<int>(r)});
        }
      }
  return report;
}

/// Witness for failure of hyperbolic type under the specialized criterion:
/// either a Euclidean triangle (1/p + 1/q + 1/r = 1) or a D_inf x D_inf
/// square pattern (two non-adjacent pairs, all four cross pairs labeled 2).
struct HyperbolicWitness {
  enum class Kind { EuclideanTriangle, SquarePattern } kind;
  std::vector<std::string> vertices;
  std::vector<int> labels;
};

struct HyperbolicReport {
  bool hyperbolic = true;
  std::optional<HyperbolicWitness> witness;
  // The verdict is per the specialized criterion for two-dimensional graphs.
  std::string criterion = "euclidean-triangle-or-square-pattern";
};

inline HyperbolicReport is_hyperbolic_type(const PresentationGraph& g) {
  if (!is_two_dimensional(g).two_dimensional)
    fail(ErrorKind::Precondition, "hyperbolic-type test requires a two-dimensional graph");
  HyperbolicReport report;
  const auto& gens = g.generators();
  // (i) Euclidean triangles.
  for (size_t i = 0; i < gens.size() && report.hyperbolic; ++i)
    for (size_t j = i + 1; j < gens.size() && report.hyperbolic; ++j)
      for (size_t k = j + 1; k < gens.size() && report.hyperbolic; ++k) {
        auto ab = g.label(gens[i], gens[j]);
        auto bc = g.label(gens[j], gens[k]);
        auto ac = g.label(gens[i], gens[k]);
        if (!ab || !bc || !ac) continue;
        long long p = *ab, q = *bc, r = *ac;
        if (q * r + p * r + p * q == p * q * r) {
          report.hyperbolic = false;
          report.witness = HyperbolicWitness{
              HyperbolicWitness::Kind::EuclideanTriangle,
              {gens[i], gens[j], gens[k]},
              {static_cast<int>(p), static_cast<int>(q), static_cast<int>(r)}};
        }
      }
  // (ii) D_inf x D_inf: {a,b}, {c,d} non-adjacent, cross pairs labeled 2.
  for (size_t i = 0; i < gens.size() && report.hyperbolic; ++i)
    for (size_t j = i + 1; j < gens.size() && report.hyperbolic; ++j) {
      if (g.adjacent(gens[i], gens[j])) continue;
      for (size_t k = 0; k < gens.size() && report.hyperbolic; ++k)
        for (size_t l = k + 1; l < gens.size() && report.hyperbolic; ++l) {
          if (k == i || k == j || l == i || l == j) continue;
          if (g.adjacent(gens[k], gens[l])) continue;
          auto lab = [&](size_t x, size_t y) { return g.label(gens[x], gens[y]); };
          auto ik = lab(i, k), il = lab(i, l), jk = lab(j, k), jl = lab(j, l);
          if (ik && il && jk && jl && *ik == 2 && *il == 2 && *jk == 2 && *jl == 2) {
            report.hyperbolic = false;
            report.witness = HyperbolicWitness{HyperbolicWitness::Kind::SquarePattern,
                                               {gens[i], gens[j], gens[k], gens[l]},
                                               {2, 2, 2, 2}};
          }
        }
    }
  return report;
}

/// Spherical standard parabolics of a two-dimensional graph: the trivial
/// subgroup, one infinite-cyclic parabolic per generator, and one dihedral
/// parabolic per edge.
struct ParabolicDescriptor {
  enum class Kind { Type0, Type1, Type2 } kind;
  std::string a;  // generator for Type1; first edge endpoint for Type2
  std::string b;  // second edge endpoint for Type2
  int m = 0;      // edge label for Type2
};

inline std::vector<ParabolicDescriptor> spherical_parabolics(const PresentationGraph& g) {
  if (!is_two_dimensional(g).two_dimensional)
    fail(ErrorKind::Precondition, "parabolic enumeration requires a two-dimensional graph");
  std::vector<ParabolicDescriptor> out;
  out.push_back({ParabolicDescriptor::Kind::Type0, "", "", 0});
  for (const auto& v : g.generators())
    out.push_back({ParabolicDescriptor::Kind::Type1, v, "", 0});
  for (const auto& [key, m] : g.edges())
    out.push_back({ParabolicDescriptor::Kind::Type2, key.first, key.second, m});
  return out;
}

}  // namespace artin
