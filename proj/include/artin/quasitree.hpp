#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "artin/budget.hpp"
#include "artin/errors.hpp"
#include "artin/garside.hpp"
#include "artin/quotient_tree.hpp"

namespace artin {

// ---------------------------------------------------------------------------
// Balls of the quasi-tree: vertices are left-weighted atom sequences with at
// most `depth` atoms, edges are right multiplications by atoms, and the
// maximal simplices come in the two orbit patterns {e, s, st, ...} and
// {e, t, ts, ...}.
// ---------------------------------------------------------------------------

struct QuasiTreeBall {
  int m = 0;
  int depth = 0;
  std::vector<OrbitKey> keys;
  std::map<OrbitKey, int> ids;

  struct Edge {
    int u, v;
    Atom label;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adjacency;

  // Complete maximal simplices (all m members inside the ball), as sorted
  // member id lists.
  std::vector<std::vector<int>> simplices;

  bool interior(int v) const {
    return keys[static_cast<size_t>(v)].size() + 1 <= static_cast<size_t>(depth);
  }

  std::optional<int> find(const OrbitKey& k) const {
    auto it = ids.find(k);
    return it == ids.end() ? std::nullopt : std::optional<int>(it->second);
  }
};

inline QuasiTreeBall build_quasitree(int m, int depth) {
  if (m < 3) fail(ErrorKind::Precondition, "quasi-tree needs m >= 3");
  if (depth < 0) fail(ErrorKind::Precondition, "depth must be >= 0");
  QuasiTreeBall ball;
  ball.m = m;
  ball.depth = depth;

  // Enumerate left-weighted sequences directly.
  ball.ids[{}] = 0;
  ball.keys.push_back({});
  std::queue<int> frontier;
  frontier.push(0);
  while (!frontier.empty()) {
    int id = frontier.front();
    frontier.pop();
    OrbitKey k = ball.keys[static_cast<size_t>(id)];
    if (k.size() == static_cast<size_t>(depth)) continue;
    for (int start = 0; start < 2; ++start)
      for (int len = 1; len < m; ++len) {
        Atom a{static_cast<Gen>(start), len};
        if (!k.empty() && k.back().last() != a.start) continue;
        OrbitKey nk = k;
        nk.push_back(a);
        int nid = static_cast<int>(ball.keys.size());
        ball.ids.emplace(nk, nid);
        ball.keys.push_back(nk);
        check_budget(ball.keys.size(), "quasi-tree ball");
        frontier.push(nid);
      }
  }

  // Edges: right multiplication by each atom, kept when the product stays in
  // the ball. The normal form may shorten, so both directions appear.
  std::set<std::pair<int, int>> seen;
  ball.adjacency.assign(ball.keys.size(), {});
  for (int id = 0; id < static_cast<int>(ball.keys.size()); ++id) {
    DihedralNF rep = key_rep(ball.keys[static_cast<size_t>(id)], m);
    for (int start = 0; start < 2; ++start)
      for (int len = 1; len < m; ++len) {
        Atom a{static_cast<Gen>(start), len};
        DihedralNF prod = rep.multiplied(DihedralNF::from_parts({a}, 0, m));
        auto pid = ball.find(key_of(prod));
        if (!pid) continue;
        int v = *pid;
        if (v == id) fail(ErrorKind::StructureViolation, "atom step fixed a vertex");
        auto pr = std::minmax(id, v);
        if (!seen.insert(pr).second) continue;
        ball.edges.push_back({id, v, a});
        ball.adjacency[static_cast<size_t>(id)].push_back(v);
        ball.adjacency[static_cast<size_t>(v)].push_back(id);
      }
  }

  // Simplices: the two patterns at every vertex, recorded when complete.
  std::set<std::vector<int>> simplex_set;
  for (int id = 0; id < static_cast<int>(ball.keys.size()); ++id) {
    DihedralNF base = key_rep(ball.keys[static_cast<size_t>(id)], m);
    for (Gen side : {Gen::S, Gen::T}) {
      std::vector<int> members{id};
      DihedralNF cur = base;
      Gen g = side;
      bool complete = true;
      for (int i = 0; i + 1 < m; ++i) {
        cur.append_letter(g, +1);
        g = other(g);
        auto mid = ball.find(key_of(cur));
        if (!mid) {
          complete = false;
          break;
        }
        members.push_back(*mid);
      }
      if (!complete) continue;
      std::sort(members.begin(), members.end());
      simplex_set.insert(members);
    }
  }
  ball.simplices.assign(simplex_set.begin(), simplex_set.end());
  return ball;
}

// ---------------------------------------------------------------------------
// Structure checks: the flag completion must be a tree of (m-1)-simplices.
// ---------------------------------------------------------------------------

struct TreeOfSimplicesReport {
  bool ok = true;
  std::string violation;
  size_t maximal_cliques = 0;
  size_t checked_size_m = 0;
};

namespace detail {

inline void bron_kerbosch(const std::vector<std::vector<char>>& adj, std::vector<int>& R,
                          std::vector<int> P, std::vector<int> X,
                          std::vector<std::vector<int>>& out) {
  if (P.empty() && X.empty()) {
    out.push_back(R);
    return;
  }
  std::vector<int> Pcopy = P;
  for (int v : Pcopy) {
    R.push_back(v);
    std::vector<int> P2, X2;
    for (int w : P)
      if (adj[static_cast<size_t>(v)][static_cast<size_t>(w)]) P2.push_back(w);
    for (int w : X)
      if (adj[static_cast<size_t>(v)][static_cast<size_t>(w)]) X2.push_back(w);
    bron_kerbosch(adj, R, P2, X2, out);
    R.pop_back();
    P.erase(std::find(P.begin(), P.end(), v));
    X.push_back(v);
  }
}

}  // namespace detail

/// Verify: maximal cliques (through interior vertices) have exactly m
/// vertices and match the recorded simplex patterns; any two maximal cliques
/// share at most one vertex; the clique-vertex incidence graph is acyclic.
inline TreeOfSimplicesReport check_tree_of_simplices(const QuasiTreeBall& ball) {
  TreeOfSimplicesReport report;
  const size_t n = ball.keys.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& e : ball.edges) {
    adj[static_cast<size_t>(e.u)][static_cast<size_t>(e.v)] = 1;
    adj[static_cast<size_t>(e.v)][static_cast<size_t>(e.u)] = 1;
  }
  std::vector<int> all(n);
  for (size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
  std::vector<std::vector<int>> cliques;
  std::vector<int> R;
  detail::bron_kerbosch(adj, R, all, {}, cliques);
  report.maximal_cliques = cliques.size();

  std::set<std::vector<int>> recorded(ball.simplices.begin(), ball.simplices.end());
  for (auto& c : cliques) {
    std::sort(c.begin(), c.end());
    bool has_interior = false;
    for (int v : c) has_interior |= ball.interior(v);
    if (!has_interior) continue;  // truncated boundary clique
    if (c.size() != static_cast<size_t>(ball.m)) {
      report.ok = false;
      report.violation = "maximal clique through an interior vertex has size " +
                         std::to_string(c.size());
      return report;
    }
    ++report.checked_size_m;
    if (!recorded.count(c)) {
      report.ok = false;
      report.violation = "maximal clique does not match a simplex orbit pattern";
      return report;
    }
  }

  // Pairwise intersections of maximal cliques: at most one shared vertex.
  for (size_t i = 0; i < cliques.size(); ++i)
    for (size_t j = i + 1; j < cliques.size(); ++j) {
      std::vector<int> common;
      std::set_intersection(cliques[i].begin(), cliques[i].end(), cliques[j].begin(),
                            cliques[j].end(), std::back_inserter(common));
      if (common.size() > 1) {
        report.ok = false;
        report.violation = "two maximal cliques share more than one vertex";
        return report;
      }
    }

  // Clique-vertex incidence must be a forest (union-find cycle detection).
  std::vector<int> parent(cliques.size() + n);
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](auto&& self, int x) -> int {
    return parent[static_cast<size_t>(x)] == x
               ? x
               : parent[static_cast<size_t>(x)] = self(self, parent[static_cast<size_t>(x)]);
  };
  for (size_t ci = 0; ci < cliques.size(); ++ci)
    for (int v : cliques[ci]) {
      int a = find(find, static_cast<int>(ci));
      int b = find(find, static_cast<int>(cliques.size()) + v);
      if (a == b) {
        report.ok = false;
        report.violation = "cycle in the clique-vertex incidence graph";
        return report;
      }
      parent[static_cast<size_t>(a)] = b;
    }
  return report;
}

// ---------------------------------------------------------------------------
// Augmented graphs: disjoint unions of axis copies re-glued along type-I
// edges at shared members. The quotiented variant lives over the quasi-tree
// ball, the unquotiented one over a Cayley ball of A_st.
// ---------------------------------------------------------------------------

struct AugmentedGraph {
  int m = 0;
  int depth = 0;
  bool quotiented = true;

  // Base vertices: orbit keys (quotiented) or full normal forms.
  std::vector<OrbitKey> base_keys;
  std::vector<DihedralNF> base_elems;  // parallel to base_keys when unquotiented
  std::map<OrbitKey, int> key_ids;     // quotiented lookup
  std::map<std::pair<OrbitKey, long long>, int> elem_ids;  // unquotiented lookup

  size_t base_count() const { return quotiented ? base_keys.size() : base_elems.size(); }

  // K-vertices are (base vertex, side) with side 0 = its s-type axis copy,
  // side 1 = its t-type axis copy; node id = 2 * base + side.
  std::vector<int> axis_root;  // union-find root per node id

  struct Axis {
    int root;
    Gen kind;                          // meaningful when unquotiented or m even
    std::vector<std::pair<int, int>> members;  // (base vertex, position)
  };
  std::vector<Axis> axes;
  std::map<int, int> axis_index;  // root -> index into axes

  struct AEdge {
    int a, b;  // node ids on a common axis
  };
  std::vector<AEdge> a_edges;
  // One I-edge per base vertex: {2v, 2v+1}.

  std::vector<char> base_interior;

  int node_of(int base, int side) const { return base * 2 + side; }
  int root_of(int node) const { return axis_root[static_cast<size_t>(node)]; }
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    return parent[static_cast<size_t>(x)] == x
               ? x
               : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]);
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace detail

inline AugmentedGraph build_augmented(int m, int depth, bool quotiented) {
  if (m < 3) fail(ErrorKind::Precondition, "augmented graphs need m >= 3");
  AugmentedGraph g;
  g.m = m;
  g.depth = depth;
  g.quotiented = quotiented;

  // Base vertex set.
  if (quotiented) {
    QuasiTreeBall ball = build_quasitree(m, depth);
    g.base_keys = ball.keys;
    g.key_ids = ball.ids;
    g.base_interior.assign(g.base_keys.size(), 0);
    for (size_t i = 0; i < g.base_keys.size(); ++i)
      g.base_interior[i] = ball.interior(static_cast<int>(i)) ? 1 : 0;
  } else {
    // Letter-ball of the group itself.
    std::queue<std::pair<DihedralNF, int>> frontier;
    DihedralNF e(m);
    auto ekey = [](const DihedralNF& x) {
      return std::make_pair(key_of(x), x.delta_exp());
    };
    g.elem_ids[ekey(e)] = 0;
    g.base_elems.push_back(e);
    g.base_interior.assign(1, 1);
    std::vector<int> dist{0};
    frontier.push({e, 0});
    while (!frontier.empty()) {
      auto [cur, d] = frontier.front();
      frontier.pop();
      if (d == depth) continue;
      for (Gen x : {Gen::S, Gen::T})
        for (int sign : {+1, -1}) {
          DihedralNF nxt = cur;
          nxt.append_letter(x, sign);
          if (g.elem_ids.count(ekey(nxt))) continue;
          g.elem_ids[ekey(nxt)] = static_cast<int>(g.base_elems.size());
          g.base_elems.push_back(nxt);
          dist.push_back(d + 1);
          check_budget(g.base_elems.size(), "augmented graph ball");
          frontier.push({nxt, d + 1});
        }
    }
    g.base_interior.assign(g.base_elems.size(), 0);
    for (size_t i = 0; i < g.base_elems.size(); ++i)
      g.base_interior[i] = dist[i] < depth ? 1 : 0;
  }

  const size_t n = g.base_count();
  detail::UnionFind uf(n * 2);

  // A-edges: single-letter steps within the ball attach copies of the same
  // axis. Sides: in the quotiented graph a local tag (0 = s-line, 1 =
  // t-line); in the unquotiented graph the generator itself.
  auto neighbor = [&](size_t v, Gen x, int sign) -> std::optional<std::pair<int, int>> {
    if (quotiented) {
      OrbitKey nk = key_step(g.base_keys[v], x, sign, m);
      auto it = g.key_ids.find(nk);
      if (it == g.key_ids.end()) return std::nullopt;
      // local tag of the edge at the far endpoint
      int far = it->second;
      OrbitKey back_s1 = key_step(nk, Gen::S, +1, m);
      OrbitKey back_s2 = key_step(nk, Gen::S, -1, m);
      int far_tag = (back_s1 == g.base_keys[v] || back_s2 == g.base_keys[v]) ? 0 : 1;
      return std::make_pair(far, far_tag);
    }
    DihedralNF nxt = g.base_elems[v];
    nxt.append_letter(x, sign);
    auto it = g.elem_ids.find(std::make_pair(key_of(nxt), nxt.delta_exp()));
    if (it == g.elem_ids.end()) return std::nullopt;
    return std::make_pair(it->second, static_cast<int>(x));
  };

  std::set<std::pair<int, int>> edge_seen;
  for (size_t v = 0; v < n; ++v) {
    for (Gen x : {Gen::S, Gen::T})
      for (int sign : {+1, -1}) {
        auto nb = neighbor(v, x, sign);
        if (!nb) continue;
        auto [w, far_tag] = *nb;
        int here_tag;
        if (quotiented) {
          OrbitKey s1 = key_step(g.base_keys[v], Gen::S, +1, m);
          OrbitKey s2 = key_step(g.base_keys[v], Gen::S, -1, m);
          OrbitKey wk = g.base_keys[static_cast<size_t>(w)];
          here_tag = (s1 == wk || s2 == wk) ? 0 : 1;
        } else {
          here_tag = static_cast<int>(x);
        }
        int a = g.node_of(static_cast<int>(v), here_tag);
        int b = g.node_of(w, far_tag);
        uf.unite(a, b);
        auto pr = std::minmax(a, b);
        if (edge_seen.insert(pr).second) g.a_edges.push_back({a, b});
      }
  }

  g.axis_root.resize(n * 2);
  for (size_t i = 0; i < n * 2; ++i) g.axis_root[i] = uf.find(static_cast<int>(i));

  // Axis records with positions from a walk along each axis.
  std::map<int, std::vector<int>> axis_nodes;
  for (size_t i = 0; i < n * 2; ++i)
    axis_nodes[g.axis_root[i]].push_back(static_cast<int>(i));
  std::map<int, std::map<int, int>> node_neighbors_on_axis;
  for (const auto& e : g.a_edges) {
    node_neighbors_on_axis[e.a][e.b] = 1;
    node_neighbors_on_axis[e.b][e.a] = 1;
  }
  for (auto& [root, nodes] : axis_nodes) {
    AugmentedGraph::Axis ax;
    ax.root = root;
    ax.kind = static_cast<Gen>(nodes.front() % 2);
    // Each axis restricted to the ball is a path; walk it from an endpoint.
    int start = nodes.front();
    for (int node : nodes)
      if (node_neighbors_on_axis[node].size() <= 1) {
        start = node;
        break;
      }
    std::map<int, int> pos;
    pos[start] = 0;
    int prev = -1, cur = start, p = 0;
    while (true) {
      int next = -1;
      for (const auto& [nb, unused] : node_neighbors_on_axis[cur]) {
        (void)unused;
        if (nb != prev && !pos.count(nb)) {
          next = nb;
          break;
        }
      }
      if (next < 0) break;
      pos[next] = ++p;
      prev = cur;
      cur = next;
    }
    if (pos.size() != nodes.size())
      fail(ErrorKind::StructureViolation, "axis restricted to the ball is not a path");
    for (int node : nodes) ax.members.push_back({node / 2, pos[node]});
    g.axes.push_back(ax);
    g.axis_index[root] = static_cast<int>(g.axes.size()) - 1;
  }
  return g;
}

/// Collapse type-I edges: the image is the base ball with the A-edges as its
/// single-letter edges. Returns (vertex count, edge list over base ids).
struct CollapsedGraph {
  size_t vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> node_map;  // K-node id -> collapsed vertex id
};

inline CollapsedGraph pr_I(const AugmentedGraph& g) {
  CollapsedGraph out;
  out.vertices = g.base_count();
  out.node_map.resize(g.base_count() * 2);
  for (size_t i = 0; i < out.node_map.size(); ++i)
    out.node_map[i] = static_cast<int>(i / 2);
  std::set<std::pair<int, int>> seen;
  for (const auto& e : g.a_edges) {
    int ba = e.a / 2, bb = e.b / 2;
    std::pair<int, int> pr{std::min(ba, bb), std::max(ba, bb)};
    if (pr.first != pr.second && seen.insert(pr).second) out.edges.push_back(pr);
  }
  return out;
}

/// Collapse type-A edges: the image is the coset graph of the link (its
/// barycentric subdivision is the link itself); vertices are axes, one edge
/// per base vertex joining its two axes.
inline CollapsedGraph pr_A(const AugmentedGraph& g) {
  CollapsedGraph out;
  out.vertices = g.axes.size();
  out.node_map.resize(g.base_count() * 2);
  for (size_t i = 0; i < out.node_map.size(); ++i)
    out.node_map[i] = g.axis_index.at(g.axis_root[i]);
  for (size_t v = 0; v < g.base_count(); ++v)
    out.edges.push_back({out.node_map[v * 2], out.node_map[v * 2 + 1]});
  return out;
}

/// Positions of the base axis through the origin (the axis of <gen>).
inline int origin_axis_index(const AugmentedGraph& g, Gen gen) {
  int origin = 0;
  if (g.quotiented) {
    origin = g.key_ids.at(OrbitKey{});
  } else {
    origin = g.elem_ids.at(std::make_pair(OrbitKey{}, 0LL));
  }
  int node = origin * 2;
  if (g.quotiented) {
    // tag of the s-step at the origin is 0 by construction
    node = origin * 2 + (gen == Gen::S ? 0 : 1);
  } else {
    node = origin * 2 + static_cast<int>(gen);
  }
  return g.axis_index.at(g.axis_root[static_cast<size_t>(node)]);
}

/// Count the cut fibers over members of `axis` whose removal disconnects x
/// from y inside the ball interior. x and y are K-node ids; a fiber is the
/// I-edge over a base vertex together with its two endpoints.
inline int separating_count(const AugmentedGraph& g, int x_node, int y_node, Gen axis_gen) {
  const size_t n = g.base_count();
  int axis_idx = origin_axis_index(g, axis_gen);
  const auto& axis = g.axes[static_cast<size_t>(axis_idx)];

  auto interior_node = [&](int node) {
    return g.base_interior[static_cast<size_t>(node / 2)] != 0;
  };
  if (!interior_node(x_node) || !interior_node(y_node))
    fail(ErrorKind::PointOutsideBall, "separation endpoints must be interior");

  // Adjacency over K-nodes: A-edges plus one I-edge per base vertex.
  std::vector<std::vector<int>> adj(n * 2);
  for (const auto& e : g.a_edges) {
    adj[static_cast<size_t>(e.a)].push_back(e.b);
    adj[static_cast<size_t>(e.b)].push_back(e.a);
  }
  for (size_t v = 0; v < n; ++v) {
    adj[v * 2].push_back(static_cast<int>(v * 2 + 1));
    adj[v * 2 + 1].push_back(static_cast<int>(v * 2));
  }

  auto reaches = [&](int from, int to, int banned_base) {
    std::vector<char> visited(n * 2, 0);
    std::queue<int> q;
    if (from / 2 == banned_base) return false;
    visited[static_cast<size_t>(from)] = 1;
    q.push(from);
    while (!q.empty()) {
      int cur = q.front();
      q.pop();
      if (cur == to) return true;
      for (int nb : adj[static_cast<size_t>(cur)]) {
        if (nb / 2 == banned_base) continue;
        if (!interior_node(nb)) continue;
        if (!visited[static_cast<size_t>(nb)]) {
          visited[static_cast<size_t>(nb)] = 1;
          q.push(nb);
        }
      }
    }
    return false;
  };

  if (!reaches(x_node, y_node, -1))
    fail(ErrorKind::StructureViolation, "ball interior is not connected");

  int count = 0;
  for (const auto& [base, pos] : axis.members) {
    (void)pos;
    if (!g.base_interior[static_cast<size_t>(base)]) continue;
    if (x_node / 2 == base || y_node / 2 == base) {
      ++count;  // endpoint sits in the fiber itself
      continue;
    }
    if (!reaches(x_node, y_node, base)) ++count;
  }
  return count;
}

/// The one-edge fiber pr_I^{-1}(v) over an interior quasi-tree vertex: its
/// removal (the I-edge together with its two endpoints) must disconnect the
/// two sides of v inside the ball interior. Representatives of the sides are
/// neighbors of v in its two maximal simplices.
inline bool w_fiber_separates(const AugmentedGraph& g, int base) {
  if (!g.quotiented) fail(ErrorKind::Precondition, "fiber separation is a K-graph check");
  const size_t n = g.base_count();
  const int m = g.m;
  const OrbitKey& vkey = g.base_keys[static_cast<size_t>(base)];
  OrbitKey side_s = key_step(vkey, Gen::S, +1, m);
  OrbitKey side_t = key_step(vkey, Gen::T, +1, m);
  auto its = g.key_ids.find(side_s);
  auto itt = g.key_ids.find(side_t);
  if (its == g.key_ids.end() || itt == g.key_ids.end())
    fail(ErrorKind::PointOutsideBall, "side representatives outside the ball");

  std::vector<std::vector<int>> adj(n * 2);
  for (const auto& e : g.a_edges) {
    adj[static_cast<size_t>(e.a)].push_back(e.b);
    adj[static_cast<size_t>(e.b)].push_back(e.a);
  }
  for (size_t v = 0; v < n; ++v) {
    adj[v * 2].push_back(static_cast<int>(v * 2 + 1));
    adj[v * 2 + 1].push_back(static_cast<int>(v * 2));
  }
  auto interior_node = [&](int node) {
    return g.base_interior[static_cast<size_t>(node / 2)] != 0;
  };
  int from = its->second * 2, to = itt->second * 2;
  std::vector<char> visited(n * 2, 0);
  std::queue<int> q;
  visited[static_cast<size_t>(from)] = 1;
  q.push(from);
  while (!q.empty()) {
    int cur = q.front();
    q.pop();
    if (cur / 2 == to / 2) return false;
    for (int nb : adj[static_cast<size_t>(cur)]) {
      if (nb / 2 == base) continue;  // the removed fiber
      if (!interior_node(nb)) continue;
      if (!visited[static_cast<size_t>(nb)]) {
        visited[static_cast<size_t>(nb)] = 1;
        q.push(nb);
      }
    }
  }
  return true;
}

}  // namespace artin
