#pragma once

#include <string>

#include <json.hpp>

#include "artin/certifier.hpp"
#include "artin/linkgeom.hpp"
#include "artin/presentation.hpp"
#include "artin/quasitree.hpp"
#include "artin/rational_angle.hpp"

namespace artin {

using json = nlohmann::json;  // map-backed: keys serialize in sorted order

// All pi-valued quantities serialize as {"num": a, "den": b} meaning
// (a/b) pi; never floating point.
inline json to_json(const AngularValue& a) {
  return json{{"num", a.num()}, {"den", a.den()}};
}

inline AngularValue angle_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    fail(ErrorKind::Syntax, "angles are {num, den} objects");
  return AngularValue(j.at("num").get<long long>(), j.at("den").get<long long>());
}

inline json graph_to_json(const PresentationGraph& g) {
  json edges = json::array();
  for (const auto& [key, m] : g.edges())
    edges.push_back({{"a", key.first}, {"b", key.second}, {"m", m}});
  return json{{"generators", g.generators()}, {"edges", edges}};
}

inline json to_json(const TwoDimReport& r) {
  json v = json::array();
  for (const auto& t : r.violations)
    v.push_back({{"vertices", {t.a, t.b, t.c}}, {"labels", {t.p, t.q, t.r}}});
  return json{{"two_dimensional", r.two_dimensional}, {"violations", v}};
}

inline json to_json(const HyperbolicReport& r) {
  json out{{"hyperbolic", r.hyperbolic}, {"criterion", r.criterion}};
  if (r.witness) {
    out["witness"] = {
        {"kind", r.witness->kind == HyperbolicWitness::Kind::EuclideanTriangle
                     ? "euclidean-triangle"
                     : "square-pattern"},
        {"vertices", r.witness->vertices},
        {"labels", r.witness->labels}};
  }
  return out;
}

// --- elliptic and contact specs --------------------------------------------

inline json to_json(const EllipticSpec& spec) {
  if (spec.kind == EllipticSpec::Kind::TreeElliptic)
    return json{{"kind", "tree-elliptic"},
                {"conjugator", to_string(spec.conjugator)},
                {"generator", spec.generator},
                {"power", spec.power}};
  return json{{"kind", "vertex-elliptic"},
              {"vertex", {spec.va, spec.vb}},
              {"word", to_string(spec.word)}};
}

inline EllipticSpec elliptic_from_json(const json& j) {
  EllipticSpec spec;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "tree-elliptic") {
    spec.kind = EllipticSpec::Kind::TreeElliptic;
    spec.conjugator = parse_word(j.value("conjugator", std::string{}));
    spec.generator = j.at("generator").get<std::string>();
    spec.power = j.at("power").get<long long>();
  } else if (kind == "vertex-elliptic") {
    spec.kind = EllipticSpec::Kind::VertexElliptic;
    spec.va = j.at("vertex").at(0).get<std::string>();
    spec.vb = j.at("vertex").at(1).get<std::string>();
    spec.word = parse_word(j.at("word").get<std::string>());
  } else {
    fail(ErrorKind::Syntax, "unknown elliptic spec kind '" + kind + "'");
  }
  return spec;
}

inline json to_json(const GammaBar& gb) {
  json out{{"kind", gb.kind}, {"rep", to_string(gb.rep)}};
  if (gb.kind != "coset0") out["gen"] = gb.gen;
  if (gb.kind == "edge") out["offset"] = to_json(gb.offset);
  return out;
}

inline GammaBar gammabar_from_json(const json& j) {
  GammaBar gb;
  gb.kind = j.at("kind").get<std::string>();
  gb.rep = parse_word(j.value("rep", std::string{}));
  if (j.contains("gen")) gb.gen = j.at("gen").get<std::string>();
  if (j.contains("offset")) gb.offset = angle_from_json(j.at("offset"));
  return gb;
}

inline json to_json(const ContactSpec& c) {
  switch (c.kind) {
    case ContactSpec::Case::InteriorEdgePerp:
      return json{{"case", "interior-edge"}, {"perpendicular", c.perpendicular}};
    case ContactSpec::Case::Type1Contact:
      return json{{"case", "type1"}, {"gamma_bar", to_json(c.gamma_bar)}};
    case ContactSpec::Case::Type2Contact:
      return json{{"case", "type2"},
                  {"edge", {c.va, c.vb}},
                  {"local_a", to_string(c.local_a)},
                  {"local_conjugator", to_string(c.local_conjugator)},
                  {"local_generator", c.local_generator},
                  {"gamma_bar", to_json(c.gamma_bar)},
                  {"K", c.exponent_bound}};
  }
  fail(ErrorKind::Spec, "unknown contact case");
}

inline ContactSpec contact_from_json(const json& j) {
  ContactSpec c;
  std::string k = j.at("case").get<std::string>();
  if (k == "interior-edge") {
    c.kind = ContactSpec::Case::InteriorEdgePerp;
    c.perpendicular = j.value("perpendicular", true);
  } else if (k == "type1") {
    c.kind = ContactSpec::Case::Type1Contact;
    c.gamma_bar = gammabar_from_json(j.at("gamma_bar"));
  } else if (k == "type2") {
    c.kind = ContactSpec::Case::Type2Contact;
    c.va = j.at("edge").at(0).get<std::string>();
    c.vb = j.at("edge").at(1).get<std::string>();
    c.local_a = parse_word(j.at("local_a").get<std::string>());
    c.local_conjugator = parse_word(j.value("local_conjugator", std::string{}));
    c.local_generator = j.value("local_generator", std::string{"s"});
    c.gamma_bar = gammabar_from_json(j.at("gamma_bar"));
    c.exponent_bound = j.value("K", 2);
  } else {
    fail(ErrorKind::Syntax, "unknown contact case '" + k + "'");
  }
  return c;
}

inline json to_json(const EndpointRecord& r) {
  json fc = json::array();
  for (auto [n, f] : r.fcounts) fc.push_back({n, f});
  json kd = json::array();
  for (const auto& [k, d] : r.k_distances) kd.push_back({{"k", k}, {"distance", to_json(d)}});
  json out{{"case", r.case_tag},
           {"m", r.m},
           {"n", r.n},
           {"n0", r.n0},
           {"exact_pi", r.exact_pi},
           {"fcounts", fc},
           {"fcount_threshold", r.fcount_threshold},
           {"k_distances", kd},
           {"K", r.exponent_bound},
           {"assumptions", r.assumptions},
           {"notes", r.notes}};
  if (r.has_tbar) out["tbar_distance"] = to_json(r.tbar_distance);
  return out;
}

inline EndpointRecord endpoint_from_json(const json& j) {
  EndpointRecord r;
  r.case_tag = j.at("case").get<std::string>();
  r.m = j.value("m", 0);
  r.n = j.value("n", 1LL);
  r.n0 = j.at("n0").get<long long>();
  r.exact_pi = j.value("exact_pi", false);
  if (j.contains("tbar_distance")) {
    r.has_tbar = true;
    r.tbar_distance = angle_from_json(j.at("tbar_distance"));
  }
  for (const auto& e : j.value("fcounts", json::array()))
    r.fcounts.push_back({e.at(0).get<long long>(), e.at(1).get<long long>()});
  r.fcount_threshold = j.value("fcount_threshold", 0LL);
  for (const auto& e : j.value("k_distances", json::array()))
    r.k_distances.push_back({e.at("k").get<long long>(), angle_from_json(e.at("distance"))});
  r.exponent_bound = j.value("K", 0);
  for (const auto& s : j.value("assumptions", json::array()))
    r.assumptions.push_back(s.get<std::string>());
  for (const auto& s : j.value("notes", json::array()))
    r.notes.push_back(s.get<std::string>());
  return r;
}

inline json to_json(const FreenessCertificate& cert, const PresentationGraph& graph) {
  json gamma = json::array();
  for (const auto& c : cert.gamma) gamma.push_back(to_json(c));
  json endpoints = json::array();
  for (const auto& r : cert.endpoints) endpoints.push_back(to_json(r));
  return json{{"format", cert.format},
              {"graph", graph_to_json(graph)},
              {"n", cert.n},
              {"mode", cert.mode},
              {"assumptions", cert.assumptions},
              {"a", to_json(cert.a)},
              {"b", to_json(cert.b)},
              {"gamma", gamma},
              {"endpoints", endpoints}};
}

struct ParsedCertificate {
  PresentationGraph graph;
  FreenessCertificate cert;
};

inline ParsedCertificate certificate_from_json(const json& j) {
  ParsedCertificate out;
  try {
    out.graph = parse_graph(j.at("graph").dump());
    out.cert.format = j.at("format").get<std::string>();
    out.cert.n = j.at("n").get<long long>();
    out.cert.mode = j.at("mode").get<std::string>();
    for (const auto& s : j.value("assumptions", json::array()))
      out.cert.assumptions.push_back(s.get<std::string>());
    out.cert.a = elliptic_from_json(j.at("a"));
    out.cert.b = elliptic_from_json(j.at("b"));
    for (const auto& c : j.at("gamma")) out.cert.gamma.push_back(contact_from_json(c));
    for (const auto& r : j.at("endpoints"))
      out.cert.endpoints.push_back(endpoint_from_json(r));
  } catch (const Error&) {
    throw;
  } catch (const json::exception& e) {
    fail(ErrorKind::Syntax, std::string("malformed certificate: ") + e.what());
  }
  return out;
}

// --- graph exports ----------------------------------------------------------

inline json link_to_json(const LinkGraph& link) {
  json vertices = json::array();
  for (const auto& v : link.vertices) {
    json jv{{"kind", v.kind == CosetKind::Coset0 ? "coset0" : "coset1"}, {"rep", v.rep}};
    if (v.kind == CosetKind::Coset1 && link.type2_center) jv["gen"] = gen_name(v.gen);
    if (!v.type2_name.empty()) jv["type2"] = v.type2_name;
    vertices.push_back(jv);
  }
  json edges = json::array();
  for (const auto& e : link.edges)
    edges.push_back({{"u", e.u}, {"v", e.v}, {"len", to_json(e.length)}});
  json out{{"vertices", vertices},
           {"edges", edges},
           {"radius", to_json(link.radius)},
           {"power_window", link.power_window}};
  if (link.type2_center)
    out["center"] = {{"type", 2}, {"m", link.m}};
  else
    out["center"] = {{"type", 1}, {"generator", link.center_gen}};
  return out;
}

inline json quotient_link_to_json(const QuotientLink& q) {
  json coset0 = json::array();
  for (const auto& k : q.coset0) {
    std::string label;
    for (const auto& a : k) {
      if (!label.empty()) label += '.';
      label += spell(a);
    }
    coset0.push_back(label.empty() ? "1" : label);
  }
  json coset1 = json::array();
  for (const auto& ln : q.coset1) {
    std::string base;
    for (const auto& a : ln.base) {
      if (!base.empty()) base += '.';
      base += spell(a);
    }
    coset1.push_back({{"base", base.empty() ? "1" : base}, {"dir", gen_name(ln.dir)}});
  }
  json edges = json::array();
  for (auto [v, l] : q.edges)
    edges.push_back({{"coset0", v}, {"coset1", l}, {"len", to_json(AngularValue(1, 2 * q.m))}});
  return json{{"m", q.m},
              {"depth", q.depth},
              {"coset0", coset0},
              {"coset1", coset1},
              {"edges", edges},
              {"tbar", {{"s", "line through 1 in direction s"},
                        {"t", "line through 1 in direction t"}}},
              {"radius", to_json(q.radius)}};
}

inline json quasitree_to_json(const QuasiTreeBall& ball) {
  json vertices = json::array();
  for (const auto& k : ball.keys) {
    std::string label;
    for (const auto& a : k) {
      if (!label.empty()) label += '.';
      label += spell(a);
    }
    vertices.push_back(label.empty() ? "1" : label);
  }
  json edges = json::array();
  for (const auto& e : ball.edges)
    edges.push_back({{"u", e.u}, {"v", e.v}, {"label", spell(e.label)}});
  json simplices = json::array();
  for (const auto& s : ball.simplices) simplices.push_back(s);
  return json{{"m", ball.m},
              {"depth", ball.depth},
              {"vertices", vertices},
              {"edges", edges},
              {"simplices", simplices}};
}

inline json augmented_to_json(const AugmentedGraph& g) {
  json axes = json::array();
  for (const auto& ax : g.axes) {
    json members = json::array();
    int lo = 0, hi = 0;
    for (auto [base, pos] : ax.members) {
      members.push_back({{"base", base}, {"position", pos}});
      lo = std::min(lo, pos);
      hi = std::max(hi, pos);
    }
    axes.push_back({{"members", members}, {"window", {lo, hi}}});
  }
  json aedges = json::array();
  for (const auto& e : g.a_edges) aedges.push_back({e.a, e.b});
  json iedges = json::array();
  for (size_t v = 0; v < g.base_count(); ++v)
    iedges.push_back({v * 2, v * 2 + 1});
  return json{{"m", g.m},
              {"depth", g.depth},
              {"quotiented", g.quotiented},
              {"base_count", g.base_count()},
              {"axes", axes},
              {"a_edges", aedges},
              {"i_edges", iedges}};
}

inline json pingpong_to_json(const PingPongTree& t) {
  json nodes = json::array();
  for (const auto& nd : t.nodes) nodes.push_back({{"parent", nd.parent}, {"label", nd.label}});
  return json{{"n", t.n}, {"depth", t.depth}, {"nodes", nodes}, {"edges", t.edge_count()}};
}

}  // namespace artin
