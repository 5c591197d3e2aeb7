#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "artin/budget.hpp"
#include "artin/errors.hpp"
#include "artin/garside.hpp"
#include "artin/link_metric.hpp"
#include "artin/presentation.hpp"
#include "artin/quasitree.hpp"
#include "artin/quotient_tree.hpp"
#include "artin/rational_angle.hpp"

namespace artin {

// ---------------------------------------------------------------------------
// Links of Deligne-complex vertices, materialized as finite windows.
//
// For a type-2 vertex the link is the barycentric subdivision of the coset
// graph of <s>- and <t>-cosets (all edges pi/(2m)); its vertex set is not
// locally finite, so balls are materialized with a coset-power window and
// exact distance queries go through the corridor metrics instead of the
// window.
// ---------------------------------------------------------------------------

enum class CosetKind { Coset0, Coset1 };

struct LinkVertex {
  CosetKind kind = CosetKind::Coset0;
  Gen gen = Gen::S;       // for Coset1: which generator subgroup
  std::string rep;        // canonical representative (normal form spelling)
  std::string type2_name; // for type-1 centers: the neighbor edge name
};

struct LinkEdge {
  int u = 0, v = 0;
  AngularValue length;
};

struct LinkGraph {
  // Center descriptor.
  bool type2_center = true;
  int m = 0;                   // modulus for type-2 centers
  std::string center_gen;      // generator name for type-1 centers
  std::vector<std::string> neighbor_gens;  // type-1 centers: adjacent vertices

  std::vector<LinkVertex> vertices;
  std::vector<LinkEdge> edges;
  AngularValue radius;  // requested construction radius
  int power_window = 0; // coset powers materialized per expansion step

  // Backing data for type-2 centers (m >= 3): element and coset handles.
  std::vector<DihedralNF> coset0_elems;          // per Coset0 vertex
  std::vector<std::pair<DihedralNF, Gen>> coset1; // canonical member + gen
  std::vector<int> vertex_handle;                 // index into the above
};

namespace detail {

/// Canonical member of the coset g<x>: minimize the normal form of g x^j
/// over a sufficient window by (atom count, |delta|, delta, atoms).
inline DihedralNF canonical_coset_member(const DihedralNF& g, Gen x) {
  const int m = g.modulus();
  long long span = static_cast<long long>(g.atoms().size()) +
                   static_cast<long long>(m) *
                       (g.delta_exp() < 0 ? -g.delta_exp() : g.delta_exp()) +
                   2 * m;
  DihedralNF best = g;
  auto better = [](const DihedralNF& a, const DihedralNF& b) {
    auto keya = std::make_tuple(a.atoms().size(),
                                a.delta_exp() < 0 ? -a.delta_exp() : a.delta_exp(),
                                a.delta_exp());
    auto keyb = std::make_tuple(b.atoms().size(),
                                b.delta_exp() < 0 ? -b.delta_exp() : b.delta_exp(),
                                b.delta_exp());
    if (keya != keyb) return keya < keyb;
    return a.atoms() < b.atoms();
  };
  DihedralNF cur = g.multiplied(normal_form(make_word(gen_name(x), -span), m));
  DihedralNF step = normal_form(make_word(gen_name(x), 1), m);
  for (long long j = -span; j <= span; ++j) {
    if (better(cur, best)) best = cur;
    cur = cur.multiplied(step);
  }
  return best;
}

inline std::string elem_label(const DihedralNF& g) { return g.to_string(); }

}  // namespace detail

/// Ball of the link of a type-2 vertex (dihedral modulus m >= 3), built by
/// alternating coset expansions from the type-0 seed {1} and capped by the
/// angular radius and the coset-power window.
inline LinkGraph build_link_type2(int m, AngularValue radius, int power_window = 3) {
  if (m < 2) fail(ErrorKind::Precondition, "type-2 links need m >= 2");
  if (radius < AngularValue(1, 2 * m))
    fail(ErrorKind::Precondition, "radius below one edge length");
  LinkGraph link;
  link.type2_center = true;
  link.m = m;
  link.radius = radius;
  link.power_window = power_window;

  if (m == 2) {
    // Z^2 cosets: type-0 = (p, q); type-1 = t^q<s> or s^p<t>. Materialize the
    // window |p|, |q| <= power_window.
    const int W = power_window;
    auto t0_id = [&](int p, int q) { return (p + W) * (2 * W + 1) + (q + W); };
    const int t0_count = (2 * W + 1) * (2 * W + 1);
    for (int p = -W; p <= W; ++p)
      for (int q = -W; q <= W; ++q) {
        LinkVertex v;
        v.kind = CosetKind::Coset0;
        v.rep = "s^" + std::to_string(p) + " t^" + std::to_string(q);
        link.vertices.push_back(v);
      }
    // <s>-cosets indexed by q, <t>-cosets by p.
    std::map<std::pair<int, int>, int> t1_ids;  // (gen, index) -> vertex id
    auto t1_id = [&](Gen g, int idx) {
      auto key = std::make_pair(static_cast<int>(g), idx);
      auto it = t1_ids.find(key);
      if (it != t1_ids.end()) return it->second;
      LinkVertex v;
      v.kind = CosetKind::Coset1;
      v.gen = g;
      v.rep = (g == Gen::S ? "t^" + std::to_string(idx) + " <s>"
                           : "s^" + std::to_string(idx) + " <t>");
      link.vertices.push_back(v);
      int id = static_cast<int>(link.vertices.size()) - 1;
      t1_ids[key] = id;
      return id;
    };
    for (int p = -W; p <= W; ++p)
      for (int q = -W; q <= W; ++q) {
        link.edges.push_back({t0_id(p, q), t1_id(Gen::S, q), AngularValue(1, 4)});
        link.edges.push_back({t0_id(p, q), t1_id(Gen::T, p), AngularValue(1, 4)});
      }
    (void)t0_count;
    return link;
  }

  // m >= 3: expand cosets from the identity element.
  const int max_hops =
      static_cast<int>((radius.coeff / boost::rational<long long>(1, 2 * m)).numerator() /
                       (radius.coeff / boost::rational<long long>(1, 2 * m)).denominator());

  std::map<std::pair<OrbitKey, long long>, int> elem_ids;
  // canonical member (atoms, delta) + generator
  std::map<std::tuple<OrbitKey, long long, int>, int> coset_ids;
  auto ekey = [](const DihedralNF& g) { return std::make_pair(key_of(g), g.delta_exp()); };

  auto ensure_t0 = [&](const DihedralNF& g) {
    auto it = elem_ids.find(ekey(g));
    if (it != elem_ids.end()) return it->second;
    LinkVertex v;
    v.kind = CosetKind::Coset0;
    v.rep = detail::elem_label(g);
    link.vertices.push_back(v);
    link.coset0_elems.push_back(g);
    link.vertex_handle.push_back(static_cast<int>(link.coset0_elems.size()) - 1);
    int id = static_cast<int>(link.vertices.size()) - 1;
    elem_ids[ekey(g)] = id;
    check_budget(link.vertices.size(), "type-2 link ball");
    return id;
  };
  auto ensure_t1 = [&](const DihedralNF& g, Gen x) {
    DihedralNF canon = detail::canonical_coset_member(g, x);
    auto key = std::make_tuple(key_of(canon), canon.delta_exp(), static_cast<int>(x));
    auto it = coset_ids.find(key);
    if (it != coset_ids.end()) {
      // Verify membership to guard against canonicalization collisions.
      int idx = link.vertex_handle[static_cast<size_t>(it->second)];
      const DihedralNF& member = link.coset1[static_cast<size_t>(idx)].first;
      DihedralNF d = member.inverted().multiplied(g);
      long long k = d.abelianization();
      if (!(d == normal_form(make_word(gen_name(x), k), m)))
        fail(ErrorKind::StructureViolation, "coset canonicalization collision");
      return it->second;
    }
    LinkVertex v;
    v.kind = CosetKind::Coset1;
    v.gen = x;
    v.rep = detail::elem_label(canon) + " <" + gen_name(x) + ">";
    link.vertices.push_back(v);
    // Expansion walks from the first-encountered member; the canonical form
    // only keys the coset.
    link.coset1.push_back({g, x});
    link.vertex_handle.push_back(static_cast<int>(link.coset1.size()) - 1);
    int id = static_cast<int>(link.vertices.size()) - 1;
    coset_ids[key] = id;
    check_budget(link.vertices.size(), "type-2 link ball");
    return id;
  };

  std::set<std::pair<int, int>> edge_seen;
  auto add_edge = [&](int a, int b) {
    std::pair<int, int> pr{std::min(a, b), std::max(a, b)};
    if (edge_seen.insert(pr).second)
      link.edges.push_back({pr.first, pr.second, AngularValue(1, 2 * m)});
  };

  DihedralNF e(m);
  std::queue<std::pair<int, int>> frontier;  // (vertex id, hops used)
  frontier.push({ensure_t0(e), 0});
  std::set<int> expanded;
  while (!frontier.empty()) {
    auto [vid, hops] = frontier.front();
    frontier.pop();
    if (hops >= max_hops) continue;
    if (!expanded.insert(vid).second) continue;
    const LinkVertex& v = link.vertices[static_cast<size_t>(vid)];
    if (v.kind == CosetKind::Coset0) {
      DihedralNF g = link.coset0_elems[static_cast<size_t>(
          link.vertex_handle[static_cast<size_t>(vid)])];
      for (Gen x : {Gen::S, Gen::T}) {
        int t1 = ensure_t1(g, x);
        add_edge(vid, t1);
        frontier.push({t1, hops + 1});
      }
    } else {
      auto [member, x] =
          link.coset1[static_cast<size_t>(link.vertex_handle[static_cast<size_t>(vid)])];
      DihedralNF cur =
          member.multiplied(normal_form(make_word(gen_name(x), -power_window), m));
      DihedralNF step = normal_form(make_word(gen_name(x), 1), m);
      for (int j = -power_window; j <= power_window; ++j) {
        int t0 = ensure_t0(cur);
        add_edge(vid, t0);
        frontier.push({t0, hops + 1});
        cur = cur.multiplied(step);
      }
    }
  }
  return link;
}

/// Link of a type-1 vertex <a>: complete bipartite between the type-0
/// vertices a^i{1} and the type-2 vertices <a, t> for Gamma-neighbors t,
/// with every edge of length pi/2.
inline LinkGraph build_link_type1(const PresentationGraph& graph, const std::string& a,
                                  AngularValue radius, int power_window = 3) {
  if (!graph.has_generator(a)) fail(ErrorKind::Validation, "unknown generator");
  LinkGraph link;
  link.type2_center = false;
  link.center_gen = a;
  link.radius = radius;
  link.power_window = power_window;
  link.neighbor_gens = graph.neighbors(a);

  for (int i = -power_window; i <= power_window; ++i) {
    LinkVertex v;
    v.kind = CosetKind::Coset0;
    v.rep = a + "^" + std::to_string(i);
    link.vertices.push_back(v);
  }
  int t0_count = 2 * power_window + 1;
  for (const auto& t : link.neighbor_gens) {
    LinkVertex v;
    v.kind = CosetKind::Coset1;  // the type-2 coset <a, t>
    v.type2_name = t;
    v.rep = "<" + a + "," + t + ">";
    link.vertices.push_back(v);
    int vid = static_cast<int>(link.vertices.size()) - 1;
    for (int i = 0; i < t0_count; ++i)
      link.edges.push_back({i, vid, AngularValue(1, 2)});
  }
  return link;
}

// ---------------------------------------------------------------------------
// The Delta-quotient of a type-2 link: vertices are orbit keys (type-0) and
// lines (type-1); built directly on orbit keys so every ball is saturated.
// ---------------------------------------------------------------------------

struct QuotientLink {
  int m = 0;
  int depth = 0;  // quasi-tree ball depth backing the window
  std::vector<OrbitKey> coset0;                 // type-0 orbits
  std::map<OrbitKey, int> coset0_ids;
  std::vector<Line> coset1;                     // type-1 orbits (lines)
  std::vector<std::pair<int, int>> edges;       // (coset0 index, coset1 index)
  std::map<int, std::vector<std::pair<int, int>>> line_members;
  AngularValue radius;

  Line tbar(Gen cls) const { return Line{OrbitKey{}, cls}; }
};

inline QuotientLink quotient_link(int m, int depth) {
  if (m < 3) fail(ErrorKind::Precondition, "quotient links need m >= 3");
  QuotientLink q;
  q.m = m;
  q.depth = depth;
  q.radius = AngularValue(2 * depth + 1, 2 * m);

  QuasiTreeBall ball = build_quasitree(m, depth);
  q.coset0 = ball.keys;
  q.coset0_ids = ball.ids;

  // Lines via union-find over (vertex, tag).
  std::vector<int> parent(ball.keys.size() * 2);
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](auto&& self, int x) -> int {
    return parent[static_cast<size_t>(x)] == x
               ? x
               : parent[static_cast<size_t>(x)] = self(self, parent[static_cast<size_t>(x)]);
  };
  auto tag_of = [&](int v, const OrbitKey& nb) {
    OrbitKey s1 = key_step(q.coset0[static_cast<size_t>(v)], Gen::S, +1, m);
    OrbitKey s2 = key_step(q.coset0[static_cast<size_t>(v)], Gen::S, -1, m);
    return (s1 == nb || s2 == nb) ? 0 : 1;
  };
  for (size_t v = 0; v < ball.keys.size(); ++v)
    for (Gen x : {Gen::S, Gen::T})
      for (int sign : {+1, -1}) {
        OrbitKey nk = key_step(ball.keys[v], x, sign, m);
        auto it = ball.ids.find(nk);
        if (it == ball.ids.end()) continue;
        int w = it->second;
        int a = static_cast<int>(v) * 2 + tag_of(static_cast<int>(v), nk);
        int b = w * 2 + tag_of(w, ball.keys[v]);
        parent[static_cast<size_t>(find(find, a))] = find(find, b);
      }

  std::map<int, int> root_index;
  for (size_t v = 0; v < ball.keys.size(); ++v)
    for (int tag = 0; tag < 2; ++tag) {
      int root = find(find, static_cast<int>(v) * 2 + tag);
      auto it = root_index.find(root);
      int idx;
      if (it == root_index.end()) {
        // Representative member defines the line.
        Gen dir = tag == 0 ? Gen::S : Gen::T;
        q.coset1.push_back(Line{ball.keys[v], dir});
        idx = static_cast<int>(q.coset1.size()) - 1;
        root_index[root] = idx;
      } else {
        idx = it->second;
      }
      q.edges.push_back({static_cast<int>(v), idx});
      q.line_members[idx].push_back({static_cast<int>(v), tag});
    }
  return q;
}

/// Build the quotient from a materialized type-2 link ball, per the direct
/// construction on orbit keys (the window depth follows the ball's window).
inline QuotientLink quotient_by_delta(const LinkGraph& link) {
  if (!link.type2_center || link.m < 3)
    fail(ErrorKind::Precondition, "quotient needs a type-2 center with m >= 3");
  int depth = std::max(2, link.power_window + 1);
  return quotient_link(link.m, depth);
}

// ---------------------------------------------------------------------------
// Link points and exact distances.
// ---------------------------------------------------------------------------

/// A point of the quotient link: a vertex of either kind or an interior
/// point of an edge (offset measured from the type-0 endpoint).
struct QLinkPoint {
  enum class Kind { Vertex0, Vertex1, EdgePoint } kind = Kind::Vertex0;
  OrbitKey vertex;   // Vertex0 / EdgePoint
  Line line{OrbitKey{}, Gen::S};  // Vertex1 / EdgePoint
  AngularValue offset;            // EdgePoint: 0 < offset < pi/(2m)

  static QLinkPoint at_vertex(OrbitKey k) {
    QLinkPoint p;
    p.kind = Kind::Vertex0;
    p.vertex = std::move(k);
    return p;
  }
  static QLinkPoint at_line(Line ln) {
    QLinkPoint p;
    p.kind = Kind::Vertex1;
    p.line = std::move(ln);
    return p;
  }
  static QLinkPoint on_edge(OrbitKey k, Line ln, AngularValue offset) {
    QLinkPoint p;
    p.kind = Kind::EdgePoint;
    p.vertex = std::move(k);
    p.line = std::move(ln);
    p.offset = offset;
    return p;
  }
};

inline QLinkPoint translate_point(const DihedralNF& g, const QLinkPoint& p) {
  QLinkPoint out = p;
  if (p.kind != QLinkPoint::Kind::Vertex1) out.vertex = left_translate(g, p.vertex);
  if (p.kind != QLinkPoint::Kind::Vertex0) out.line = translate_line(g, p.line);
  return out;
}

/// Exact angular distance between two points of the quotient link.
inline AngularValue q_distance(const QLinkPoint& a, const QLinkPoint& b, int m) {
  using K = QLinkPoint::Kind;
  const AngularValue half_edge(1, 2 * m);
  if (a.kind == K::EdgePoint) {
    if (b.kind == K::EdgePoint && a.vertex == b.vertex && lines_equal(a.line, b.line, m)) {
      AngularValue diff = a.offset - b.offset;
      return diff < angle_zero() ? b.offset - a.offset : diff;
    }
    QLinkPoint v0 = QLinkPoint::at_vertex(a.vertex);
    QLinkPoint v1 = QLinkPoint::at_line(a.line);
    AngularValue via0 = a.offset + q_distance(v0, b, m);
    AngularValue via1 = (half_edge - a.offset) + q_distance(v1, b, m);
    return std::min(via0, via1);
  }
  if (b.kind == K::EdgePoint) return q_distance(b, a, m);
  if (a.kind == K::Vertex0 && b.kind == K::Vertex0)
    return q_distance_vertex_vertex(a.vertex, b.vertex, m);
  if (a.kind == K::Vertex0 && b.kind == K::Vertex1)
    return q_distance_vertex_line(a.vertex, b.line, m);
  if (a.kind == K::Vertex1 && b.kind == K::Vertex0)
    return q_distance_vertex_line(b.vertex, a.line, m);
  return q_distance_line_line(a.line, b.line, m);
}

/// A point of the unquotiented type-2 link (m >= 3).
struct ULinkPoint {
  enum class Kind { Vertex0, Vertex1, EdgePoint } kind = Kind::Vertex0;
  DihedralNF elem;   // Vertex0 / EdgePoint
  std::optional<UpstairsAxis> axis;  // Vertex1 / EdgePoint
  AngularValue offset;

  explicit ULinkPoint(int m) : elem(m) {}
};

inline ULinkPoint u_vertex0(const DihedralNF& g) {
  ULinkPoint p(g.modulus());
  p.kind = ULinkPoint::Kind::Vertex0;
  p.elem = g;
  return p;
}

inline ULinkPoint u_vertex1(const UpstairsAxis& ax) {
  ULinkPoint p(ax.base.modulus());
  p.kind = ULinkPoint::Kind::Vertex1;
  p.axis = ax;
  return p;
}

inline ULinkPoint u_edge_point(const DihedralNF& g, const UpstairsAxis& ax,
                               AngularValue offset) {
  ULinkPoint p(g.modulus());
  p.kind = ULinkPoint::Kind::EdgePoint;
  p.elem = g;
  p.axis = ax;
  p.offset = offset;
  return p;
}

inline ULinkPoint translate_point(const DihedralNF& g, const ULinkPoint& p) {
  ULinkPoint out = p;
  if (p.kind != ULinkPoint::Kind::Vertex1) out.elem = g.multiplied(p.elem);
  if (p.kind != ULinkPoint::Kind::Vertex0 && p.axis)
    out.axis = UpstairsAxis{g.multiplied(p.axis->base), p.axis->dir};
  return out;
}

inline AngularValue u_distance(const ULinkPoint& a, const ULinkPoint& b, int m,
                               const LinkSearchParams& params = {}) {
  using K = ULinkPoint::Kind;
  const AngularValue half_edge(1, 2 * m);
  if (a.kind == K::EdgePoint) {
    if (b.kind == K::EdgePoint && a.elem == b.elem && axes_equal(*a.axis, *b.axis)) {
      AngularValue diff = a.offset - b.offset;
      return diff < angle_zero() ? b.offset - a.offset : diff;
    }
    AngularValue via0 = a.offset + u_distance(u_vertex0(a.elem), b, m, params);
    AngularValue via1 = (half_edge - a.offset) + u_distance(u_vertex1(*a.axis), b, m, params);
    return std::min(via0, via1);
  }
  if (b.kind == K::EdgePoint) return u_distance(b, a, m, params);
  if (a.kind == K::Vertex0 && b.kind == K::Vertex0)
    return link_distance_t0_t0(a.elem, b.elem, params);
  if (a.kind == K::Vertex0 && b.kind == K::Vertex1)
    return link_distance_t0_axis(a.elem, *b.axis, params);
  if (a.kind == K::Vertex1 && b.kind == K::Vertex0)
    return link_distance_t0_axis(b.elem, *a.axis, params);
  return link_distance_axis_axis(*a.axis, *b.axis, params);
}

// ---------------------------------------------------------------------------
// m = 2 links: the coset graph is complete bipartite; distances are closed
// form. Points: type-0 (p, q), type-1 (gen, index), or edge interior.
// ---------------------------------------------------------------------------

struct Z2LinkPoint {
  enum class Kind { Vertex0, Vertex1, EdgePoint } kind = Kind::Vertex0;
  long long p = 0, q = 0;  // Vertex0 / EdgePoint type-0 end
  Gen gen = Gen::S;        // Vertex1 / EdgePoint: <s>-coset t^i<s> has index i
  long long index = 0;
  AngularValue offset;     // EdgePoint: from the type-0 end, 0..pi/4
};

inline Z2LinkPoint z2_vertex0(long long p, long long q) {
  Z2LinkPoint v;
  v.kind = Z2LinkPoint::Kind::Vertex0;
  v.p = p;
  v.q = q;
  return v;
}

inline Z2LinkPoint z2_vertex1(Gen g, long long index) {
  Z2LinkPoint v;
  v.kind = Z2LinkPoint::Kind::Vertex1;
  v.gen = g;
  v.index = index;
  return v;
}

/// Left translation by s^a t^b.
inline Z2LinkPoint translate_point(long long a, long long b, const Z2LinkPoint& pt) {
  Z2LinkPoint out = pt;
  out.p += a;
  out.q += b;
  if (pt.kind != Z2LinkPoint::Kind::Vertex0)
    out.index += (pt.gen == Gen::S ? b : a);
  return out;
}

inline AngularValue z2_distance(const Z2LinkPoint& x, const Z2LinkPoint& y) {
  using K = Z2LinkPoint::Kind;
  const AngularValue quarter(1, 4);
  auto vertex_dist = [&](auto&& self, const Z2LinkPoint& a,
                         const Z2LinkPoint& b) -> AngularValue {
    if (a.kind == K::Vertex0 && b.kind == K::Vertex0) {
      if (a.p == b.p && a.q == b.q) return angle_zero();
      if (a.p == b.p || a.q == b.q) return AngularValue(1, 2);
      return angle_pi();
    }
    if (a.kind == K::Vertex0 && b.kind == K::Vertex1) {
      long long coord = (b.gen == Gen::S) ? a.q : a.p;
      return coord == b.index ? AngularValue(1, 4) : AngularValue(3, 4);
    }
    if (a.kind == K::Vertex1 && b.kind == K::Vertex0) return self(self, b, a);
    if (a.gen == b.gen) return a.index == b.index ? angle_zero() : angle_pi();
    return AngularValue(1, 2);
  };
  if (x.kind == K::EdgePoint) {
    if (y.kind == K::EdgePoint && x.p == y.p && x.q == y.q && x.gen == y.gen &&
        x.index == y.index) {
      AngularValue diff = x.offset - y.offset;
      return diff < angle_zero() ? y.offset - x.offset : diff;
    }
    AngularValue via0 = x.offset + z2_distance(z2_vertex0(x.p, x.q), y);
    AngularValue via1 = (quarter - x.offset) + z2_distance(z2_vertex1(x.gen, x.index), y);
    return std::min(via0, via1);
  }
  if (y.kind == K::EdgePoint) return z2_distance(y, x);
  return vertex_dist(vertex_dist, x, y);
}

// ---------------------------------------------------------------------------
// Ball-level distance queries and fixed vertices.
// ---------------------------------------------------------------------------

/// Distance between two materialized vertices of a link ball. Exact values
/// come from the corridor metrics (m >= 3) or closed forms; the result is
/// reported AtLeast(radius) only when the exact value meets or exceeds the
/// ball radius, matching the ball-semantics contract.
inline LinkDistance link_distance(const LinkGraph& link, int u, int v) {
  if (u < 0 || v < 0 || u >= static_cast<int>(link.vertices.size()) ||
      v >= static_cast<int>(link.vertices.size()))
    fail(ErrorKind::PointOutsideBall, "vertex id outside the ball");
  const LinkVertex& a = link.vertices[static_cast<size_t>(u)];
  const LinkVertex& b = link.vertices[static_cast<size_t>(v)];

  if (!link.type2_center) {
    // Complete bipartite with pi/2 edges.
    if (u == v) return LinkDistance::exact(angle_zero());
    if (a.kind != b.kind) return LinkDistance::exact(AngularValue(1, 2));
    if (link.neighbor_gens.empty())
      return LinkDistance::at_least(angle_pi());  // disconnected star set
    return LinkDistance::exact(angle_pi());
  }

  if (link.m == 2) {
    auto parse_pt = [&](const LinkVertex& lv) {
      Z2LinkPoint pt;
      if (lv.kind == CosetKind::Coset0) {
        Word w = parse_word(lv.rep);
        AbelianNF ab = abelian_form(w);
        pt = z2_vertex0(ab.p, ab.q);
      } else {
        // rep is "t^i <s>" or "s^i <t>"
        Word w = parse_word(lv.rep.substr(0, lv.rep.find('<')));
        AbelianNF ab = abelian_form(w);
        pt = z2_vertex1(lv.rep.find("<s>") != std::string::npos ? Gen::S : Gen::T,
                        lv.rep.find("<s>") != std::string::npos ? ab.q : ab.p);
      }
      return pt;
    };
    AngularValue d = z2_distance(parse_pt(a), parse_pt(b));
    return LinkDistance::exact(d);
  }

  // m >= 3: exact corridor metric over the backing handles.
  auto point_of = [&](int vid) {
    const LinkVertex& lv = link.vertices[static_cast<size_t>(vid)];
    int h = link.vertex_handle[static_cast<size_t>(vid)];
    if (lv.kind == CosetKind::Coset0)
      return u_vertex0(link.coset0_elems[static_cast<size_t>(h)]);
    auto [member, gen] = link.coset1[static_cast<size_t>(h)];
    return u_vertex1(UpstairsAxis{member, gen});
  };
  AngularValue d = u_distance(point_of(u), point_of(v), link.m);
  if (d >= link.radius) return LinkDistance::at_least(link.radius);
  return LinkDistance::exact(d);
}

/// Distance between points of the quotient link. Values are exact; results
/// at or beyond the ball radius report AtLeast(radius) per ball semantics.
inline LinkDistance link_distance(const QuotientLink& q, const QLinkPoint& p,
                                  const QLinkPoint& r) {
  auto inside = [&](const QLinkPoint& pt) {
    if (pt.kind == QLinkPoint::Kind::Vertex1)
      return q.coset0_ids.count(pt.line.base) > 0;
    return q.coset0_ids.count(pt.vertex) > 0;
  };
  if (!inside(p) || !inside(r))
    fail(ErrorKind::PointOutsideBall, "quotient link point outside the window");
  AngularValue d = q_distance(p, r, q.m);
  if (d >= q.radius) return LinkDistance::at_least(q.radius);
  return LinkDistance::exact(d);
}

/// Vertices of the materialized ball whose coset is preserved by left
/// multiplication by w.
inline std::vector<int> fixed_link_vertices(const LinkGraph& link, const Word& w) {
  if (!link.type2_center)
    fail(ErrorKind::Precondition, "fixed vertices are a type-2 link query");
  std::vector<int> out;
  if (link.m == 2) {
    AbelianNF ab = abelian_form(w);
    for (size_t i = 0; i < link.vertices.size(); ++i) {
      const LinkVertex& v = link.vertices[i];
      if (v.kind == CosetKind::Coset0) {
        if (ab.p == 0 && ab.q == 0) out.push_back(static_cast<int>(i));
      } else {
        bool s_side = v.rep.find("<s>") != std::string::npos;
        if ((s_side && ab.q == 0) || (!s_side && ab.p == 0))
          out.push_back(static_cast<int>(i));
      }
    }
    return out;
  }
  DihedralNF wn = normal_form(w, link.m);
  for (size_t i = 0; i < link.vertices.size(); ++i) {
    const LinkVertex& v = link.vertices[i];
    int h = link.vertex_handle[i];
    if (v.kind == CosetKind::Coset0) {
      if (wn.is_identity()) out.push_back(static_cast<int>(i));
    } else {
      auto [member, gen] = link.coset1[static_cast<size_t>(h)];
      // w g<x> = g<x>  iff  g^{-1} w g is a power of x.
      DihedralNF z = member.inverted().multiplied(wn).multiplied(member);
      long long k = z.abelianization();
      if (z == normal_form(make_word(gen_name(gen), k), link.m))
        out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

}  // namespace artin
