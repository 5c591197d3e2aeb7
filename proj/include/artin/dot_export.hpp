#pragma once

#include <ostream>
#include <string>

#include "artin/certifier.hpp"
#include "artin/linkgeom.hpp"
#include "artin/quasitree.hpp"

namespace artin {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string angle_attr(const AngularValue& a) {
  if (a.den() == 1) return std::to_string(a.num()) + " pi";
  return std::to_string(a.num()) + "/" + std::to_string(a.den()) + " pi";
}

inline void write_dot(std::ostream& os, const LinkGraph& link) {
  os << "graph link {\n";
  for (size_t i = 0; i < link.vertices.size(); ++i) {
    const auto& v = link.vertices[i];
    os << "  v" << i << " [label=\"" << dot_escape(v.rep) << "\" shape="
       << (v.kind == CosetKind::Coset0 ? "circle" : "box") << "];\n";
  }
  for (const auto& e : link.edges)
    os << "  v" << e.u << " -- v" << e.v << " [len=\"" << angle_attr(e.length) << "\"];\n";
  os << "}\n";
}

inline void write_dot(std::ostream& os, const QuotientLink& q) {
  os << "graph quotient_link {\n";
  for (size_t i = 0; i < q.coset0.size(); ++i) {
    std::string label;
    for (const auto& a : q.coset0[i]) {
      if (!label.empty()) label += '.';
      label += spell(a);
    }
    os << "  c" << i << " [label=\"" << dot_escape(label.empty() ? "1" : label)
       << "\" shape=circle];\n";
  }
  for (size_t i = 0; i < q.coset1.size(); ++i)
    os << "  l" << i << " [label=\"axis " << i << "\" shape=box];\n";
  for (auto [v, l] : q.edges)
    os << "  c" << v << " -- l" << l << " [len=\""
       << angle_attr(AngularValue(1, 2 * q.m)) << "\"];\n";
  os << "}\n";
}

inline void write_dot(std::ostream& os, const QuasiTreeBall& ball) {
  os << "graph quasitree {\n";
  for (size_t i = 0; i < ball.keys.size(); ++i) {
    std::string label;
    for (const auto& a : ball.keys[i]) {
      if (!label.empty()) label += '.';
      label += spell(a);
    }
    os << "  v" << i << " [label=\"" << dot_escape(label.empty() ? "1" : label) << "\"];\n";
  }
  for (const auto& e : ball.edges)
    os << "  v" << e.u << " -- v" << e.v << " [label=\"" << spell(e.label) << "\"];\n";
  os << "}\n";
}

inline void write_dot(std::ostream& os, const AugmentedGraph& g) {
  os << "graph augmented {\n";
  for (size_t v = 0; v < g.base_count(); ++v) {
    os << "  n" << v * 2 << " [label=\"" << v << "s\"];\n";
    os << "  n" << v * 2 + 1 << " [label=\"" << v << "t\"];\n";
  }
  for (const auto& e : g.a_edges)
    os << "  n" << e.a << " -- n" << e.b << " [color=black];\n";
  for (size_t v = 0; v < g.base_count(); ++v)
    os << "  n" << v * 2 << " -- n" << v * 2 + 1 << " [color=red style=dashed];\n";
  os << "}\n";
}

inline void write_dot(std::ostream& os, const PingPongTree& t) {
  os << "digraph pingpong {\n";
  for (size_t i = 0; i < t.nodes.size(); ++i) {
    os << "  n" << i << " [label=\"" << (i == 0 ? "gamma" : dot_escape(t.nodes[i].label))
       << "\"];\n";
    if (t.nodes[i].parent >= 0)
      os << "  n" << t.nodes[i].parent << " -> n" << i << ";\n";
  }
  os << "}\n";
}

}  // namespace artin
