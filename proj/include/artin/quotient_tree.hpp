#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "artin/errors.hpp"
#include "artin/garside.hpp"
#include "artin/rational_angle.hpp"

namespace artin {

// ---------------------------------------------------------------------------
// Vertices of the quasi-tree: right <Delta>-orbits of A_st, keyed by the atom
// sequence of the Garside normal form (the Delta exponent is orbit-invariant
// noise). These biject with left-weighted words in the atom monoid.
// ---------------------------------------------------------------------------

using OrbitKey = std::vector<Atom>;

struct OrbitKeyHash {
  size_t operator()(const OrbitKey& k) const {
    size_t h = 0x9e3779b97f4a7c15ull;
    for (const Atom& a : k)
      h ^= static_cast<size_t>(a.len * 2 + static_cast<int>(a.start)) +
           0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

inline OrbitKey key_of(const DihedralNF& nf) { return nf.atoms(); }

inline DihedralNF key_rep(const OrbitKey& k, int m) {
  return DihedralNF::from_parts(k, 0, m);
}

/// Right multiplication by a single generator letter, on orbit keys.
inline OrbitKey key_step(const OrbitKey& k, Gen g, int sign, int m) {
  DihedralNF nf = key_rep(k, m);
  nf.append_letter(g, sign);
  return key_of(nf);
}

/// Left multiplication by a group element (an automorphism of the quotient).
inline OrbitKey left_translate(const DihedralNF& g, const OrbitKey& k) {
  return key_of(g.multiplied(key_rep(k, g.modulus())));
}

// ---------------------------------------------------------------------------
// Lines: Delta-orbits of type-1 cosets g<x>, realized as the vertex sets
// {[g x^i]}. Every vertex lies on exactly one s-line and one t-line; two
// distinct lines share at most one vertex, so two shared vertices force
// equality.
// ---------------------------------------------------------------------------

struct Line {
  OrbitKey base;  // a member vertex
  Gen dir;        // members are [rep(base) dir^i]
};

inline Line line_of_element(const DihedralNF& g, Gen x) {
  // {[g x^i]} = {[rep sigma^{delta}(x)^i]} where g = rep Delta^{delta}.
  Gen d = x;
  if (g.modulus() % 2 == 1 && (g.delta_exp() % 2 != 0)) d = other(d);
  return Line{key_of(g), d};
}

inline DihedralNF line_member_element(const Line& ln, int i, int m) {
  DihedralNF e = key_rep(ln.base, m);
  return e.multiplied(normal_form(make_word(gen_name(ln.dir), i), m));
}

inline OrbitKey line_member(const Line& ln, int i, int m) {
  return key_of(line_member_element(ln, i, m));
}

/// Membership: [k] lies on ln iff rep(base)^{-1} rep(k) equals dir^i Delta^j
/// for some i, j. Positive powers have keys made of single-letter dir atoms
/// and negative powers keys of length-(m-1) atoms, so the only candidate is
/// i = +-(atom count); construct it and compare.
inline bool line_contains(const Line& ln, const OrbitKey& k, int m) {
  DihedralNF z = key_rep(ln.base, m).inverted().multiplied(key_rep(k, m));
  const auto& atoms = z.atoms();
  if (atoms.empty()) return true;
  int i;
  if (atoms.front().len == 1)
    i = static_cast<int>(atoms.size());
  else if (atoms.front().len == m - 1)
    i = -static_cast<int>(atoms.size());
  else
    return false;
  return key_of(normal_form(make_word(gen_name(ln.dir), i), m)) == atoms;
}

inline bool lines_equal(const Line& a, const Line& b, int m) {
  if (a.base == b.base && a.dir == b.dir) return true;
  return line_contains(a, b.base, m) && line_contains(a, line_member(b, 1, m), m);
}

inline Line translate_line(const DihedralNF& g, const Line& ln) {
  return line_of_element(g.multiplied(key_rep(ln.base, g.modulus())), ln.dir);
}

// ---------------------------------------------------------------------------
// Corridor graphs. The single-letter subgraph of the quasi-tree is a tree of
// m-cycles (one cycle per maximal simplex, glued at cut vertices). Distances
// in the Delta-quotient of the link reduce to minimum run counts over walks,
// where a run is a maximal subpath along one line and runs merge across a
// vertex exactly when the local line tags agree. Simple paths between two
// vertices stay inside the blocks of the normal-form prefix path between
// them, so a finite corridor of blocks suffices for exact answers.
// ---------------------------------------------------------------------------

class CorridorGraph {
public:
  explicit CorridorGraph(int m) : m_(m) {}

  int modulus() const { return m_; }

  struct HalfEdge {
    int to;
    int tag_here;     // 0 = this vertex's s-line, 1 = its t-line
    int tag_there;    // tag of the same edge at the far vertex
    long long dwind;  // Delta-exponent change of the lift traversed this way
  };

  int ensure_vertex(const OrbitKey& k) {
    auto it = ids_.find(k);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(keys_.size());
    ids_.emplace(k, id);
    keys_.push_back(k);
    adj_.emplace_back();
    StepKeys sk;
    sk.k[0] = key_step(k, Gen::S, +1, m_);
    sk.k[1] = key_step(k, Gen::S, -1, m_);
    sk.k[2] = key_step(k, Gen::T, +1, m_);
    sk.k[3] = key_step(k, Gen::T, -1, m_);
    steps_.push_back(std::move(sk));
    return id;
  }

  std::optional<int> find_vertex(const OrbitKey& k) const {
    auto it = ids_.find(k);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const OrbitKey& key(int id) const { return keys_[static_cast<size_t>(id)]; }
  size_t vertex_count() const { return keys_.size(); }
  const std::vector<HalfEdge>& edges_at(int id) const {
    return adj_[static_cast<size_t>(id)];
  }

  /// Local tag of the edge {u, v} at u: 0 if v is one generator step along
  /// u's s-line, 1 for the t-line.
  int tag_at(int u, const OrbitKey& v) const {
    const StepKeys& sk = steps_[static_cast<size_t>(u)];
    if (sk.k[0] == v || sk.k[1] == v) return 0;
    if (sk.k[2] == v || sk.k[3] == v) return 1;
    fail(ErrorKind::StructureViolation, "edge endpoints are not one letter apart");
  }

  /// The single generator step realizing the edge {u, v} from u.
  std::pair<Gen, int> step_at(int u, const OrbitKey& v) const {
    const StepKeys& sk = steps_[static_cast<size_t>(u)];
    if (sk.k[0] == v) return {Gen::S, +1};
    if (sk.k[1] == v) return {Gen::S, -1};
    if (sk.k[2] == v) return {Gen::T, +1};
    if (sk.k[3] == v) return {Gen::T, -1};
    fail(ErrorKind::StructureViolation, "edge endpoints are not one letter apart");
  }

  void add_edge(const OrbitKey& a, const OrbitKey& b) {
    int u = ensure_vertex(a);
    int v = ensure_vertex(b);
    if (u == v) fail(ErrorKind::StructureViolation, "self loop in corridor");
    auto key = std::minmax(u, v);
    if (!edge_set_.insert(key).second) return;
    int tu = tag_at(u, b);
    int tv = tag_at(v, a);
    auto [g, sign] = step_at(u, b);
    DihedralNF lift = key_rep(a, m_);
    lift.append_letter(g, sign);
    long long dw = lift.delta_exp();  // rep(a) step = rep(b) Delta^dw
    adj_[static_cast<size_t>(u)].push_back({v, tu, tv, dw});
    adj_[static_cast<size_t>(v)].push_back({u, tv, tu, -dw});
  }

  /// Materialize the maximal block (an m-cycle here) on the side of `base`
  /// whose first letter is `side`.
  void add_block(const DihedralNF& base, Gen side) {
    std::vector<OrbitKey> members;
    members.reserve(static_cast<size_t>(m_));
    DihedralNF cur = base;
    Gen g = side;
    members.push_back(key_of(cur));
    for (int i = 0; i + 1 < m_; ++i) {
      cur.append_letter(g, +1);
      g = other(g);
      members.push_back(key_of(cur));
    }
    for (int i = 0; i + 1 < m_; ++i)
      add_edge(members[static_cast<size_t>(i)], members[static_cast<size_t>(i) + 1]);
    add_edge(members.back(), members.front());
  }

  /// Blocks along the normal-form prefix path from `from` toward `to`.
  void add_prefix_corridor(const DihedralNF& from, const DihedralNF& to) {
    DihedralNF z = from.inverted().multiplied(to);
    DihedralNF cur = from;
    ensure_vertex(key_of(cur));
    for (const Atom& a : z.atoms()) {
      add_block(cur, a.start);
      cur = cur.multiplied(DihedralNF::from_parts({a}, 0, cur.modulus()));
    }
  }

private:
  struct StepKeys {
    OrbitKey k[4];
  };

  int m_;
  std::unordered_map<OrbitKey, int, OrbitKeyHash> ids_;
  std::vector<OrbitKey> keys_;
  std::vector<StepKeys> steps_;
  std::vector<std::vector<HalfEdge>> adj_;
  std::set<std::pair<int, int>> edge_set_;
};

namespace detail {

constexpr int kRunInf = std::numeric_limits<int>::max() / 4;

using RunDist = std::vector<std::array<int, 2>>;

inline void run_relax(const CorridorGraph& g, RunDist& dist,
                      std::deque<std::pair<int, int>> queue) {
  while (!queue.empty()) {
    auto [v, tag] = queue.front();
    queue.pop_front();
    int d = dist[static_cast<size_t>(v)][static_cast<size_t>(tag)];
    for (const auto& e : g.edges_at(v)) {
      int cost = (e.tag_here == tag) ? 0 : 1;
      int nd = d + cost;
      int& slot = dist[static_cast<size_t>(e.to)][static_cast<size_t>(e.tag_there)];
      if (nd < slot) {
        slot = nd;
        if (cost == 0)
          queue.push_front({e.to, e.tag_there});
        else
          queue.push_back({e.to, e.tag_there});
      }
    }
  }
}

/// Run counts from a type-0 start vertex; the first edge opens run 1.
inline RunDist runs_from_vertex(const CorridorGraph& g, int x) {
  RunDist dist(g.vertex_count(), {kRunInf, kRunInf});
  std::deque<std::pair<int, int>> queue;
  for (const auto& e : g.edges_at(x)) {
    int& slot = dist[static_cast<size_t>(e.to)][static_cast<size_t>(e.tag_there)];
    if (1 < slot) {
      slot = 1;
      queue.push_back({e.to, e.tag_there});
    }
  }
  run_relax(g, dist, std::move(queue));
  return dist;
}

/// Run counts when the walk starts anywhere on a source line with the first
/// run absorbed into that line.
inline RunDist runs_from_line(const CorridorGraph& g,
                              const std::vector<std::pair<int, int>>& sources) {
  RunDist dist(g.vertex_count(), {kRunInf, kRunInf});
  std::deque<std::pair<int, int>> queue;
  for (auto [v, tag] : sources) {
    int& slot = dist[static_cast<size_t>(v)][static_cast<size_t>(tag)];
    if (0 < slot) {
      slot = 0;
      queue.push_back({v, tag});
    }
  }
  run_relax(g, dist, std::move(queue));
  return dist;
}

struct LineWindow {
  std::vector<OrbitKey> members;  // keys of positions lo..hi
  std::vector<int> tags;          // local tag of the line at each member
};

/// Materialize line blocks for positions [lo, hi] and record member tags.
inline LineWindow materialize_line(CorridorGraph& graph, const Line& ln, int lo, int hi) {
  const int m = graph.modulus();
  if (hi - lo < 1) fail(ErrorKind::Precondition, "line window too small");
  LineWindow win;
  DihedralNF cur = line_member_element(ln, lo, m);
  DihedralNF step = normal_form(make_word(gen_name(ln.dir), 1), m);
  for (int i = lo; i <= hi; ++i) {
    win.members.push_back(key_of(cur));
    if (i < hi) {
      // The block holding the edge from member i to member i+1; appends on
      // the element handle the Delta twisting.
      graph.add_block(cur, ln.dir);
      cur = cur.multiplied(step);
    }
  }
  for (size_t i = 0; i < win.members.size(); ++i) {
    int vid = *graph.find_vertex(win.members[i]);
    const OrbitKey& nb =
        (i + 1 < win.members.size()) ? win.members[i + 1] : win.members[i - 1];
    win.tags.push_back(graph.tag_at(vid, nb));
  }
  return win;
}

/// Axis-chain count to reach the line: min over window members of the run
/// count, absorbing the last run when it already lies along the line. When
/// `inner_radius` >= 0, also verify the minimum is realized within that many
/// positions of the window center; optimal contacts provably are, so a
/// boundary-only optimum indicates a construction bug.
inline int best_line_arrival(const CorridorGraph& graph, const RunDist& dist,
                             const LineWindow& win, int inner_radius) {
  int best = kRunInf, best_inner = kRunInf;
  const int center = static_cast<int>(win.members.size() / 2);
  for (size_t i = 0; i < win.members.size(); ++i) {
    auto vid = graph.find_vertex(win.members[i]);
    if (!vid) continue;
    int on = dist[static_cast<size_t>(*vid)][static_cast<size_t>(win.tags[i])];
    int off = dist[static_cast<size_t>(*vid)][static_cast<size_t>(1 - win.tags[i])];
    int j = std::min(on, off >= kRunInf ? kRunInf : off + 1);
    best = std::min(best, j);
    if (inner_radius >= 0 && std::abs(static_cast<int>(i) - center) <= inner_radius)
      best_inner = std::min(best_inner, j);
  }
  if (inner_radius >= 0 && best < best_inner)
    fail(ErrorKind::StructureViolation, "optimal line contact escaped its provable window");
  return best;
}

}  // namespace detail

/// Minimum number of line-runs of a walk between two quotient vertices; the
/// quotient-link distance between type-0 vertices is runs * pi/m.
inline int min_runs_between(const OrbitKey& x, const OrbitKey& y, int m) {
  if (x == y) return 0;
  CorridorGraph graph(m);
  graph.add_prefix_corridor(key_rep(x, m), key_rep(y, m));
  int xi = *graph.find_vertex(x);
  auto yi = graph.find_vertex(y);
  if (!yi) fail(ErrorKind::StructureViolation, "corridor missed its endpoint");
  detail::RunDist dist = detail::runs_from_vertex(graph, xi);
  auto yid = static_cast<size_t>(*yi);
  int runs = std::min(dist[yid][0], dist[yid][1]);
  if (runs >= detail::kRunInf)
    fail(ErrorKind::StructureViolation, "corridor endpoints are disconnected");
  return runs;
}

inline AngularValue q_distance_vertex_vertex(const OrbitKey& x, const OrbitKey& y, int m) {
  return AngularValue(min_runs_between(x, y, m), m);
}

/// Quotient-link distance from a type-0 vertex to a line vertex (the image
/// of an axis): ((2j - 1)/(2m)) pi with j the minimal axis-chain length.
inline AngularValue q_distance_vertex_line(const OrbitKey& x, const Line& ln, int m) {
  if (line_contains(ln, x, m)) return AngularValue(1, 2 * m);
  DihedralNF xrep = key_rep(x, m);
  DihedralNF base = key_rep(ln.base, m);
  int span = static_cast<int>(xrep.inverted().multiplied(base).atoms().size());
  // Contact positions provably lie within span + 3 of the base member.
  int window = span + m + 4;

  CorridorGraph graph(m);
  graph.add_prefix_corridor(xrep, base);
  auto win = detail::materialize_line(graph, ln, -window, window);
  int xi = *graph.find_vertex(x);
  detail::RunDist dist = detail::runs_from_vertex(graph, xi);
  int j = detail::best_line_arrival(graph, dist, win, span + 3);
  if (j >= detail::kRunInf)
    fail(ErrorKind::StructureViolation, "line unreachable within corridor");
  return AngularValue(2 * j - 1, 2 * m);
}

/// Quotient-link distance between two line vertices: J * pi/m with J the
/// minimal length of a chain of pairwise-intersecting lines from a to b.
inline AngularValue q_distance_line_line(const Line& a, const Line& b, int m) {
  if (lines_equal(a, b, m)) return angle_zero();
  DihedralNF arep = key_rep(a.base, m);
  DihedralNF brep = key_rep(b.base, m);
  int span = static_cast<int>(arep.inverted().multiplied(brep).atoms().size());
  int window = span + m + 4;

  CorridorGraph graph(m);
  graph.add_prefix_corridor(arep, brep);
  auto wa = detail::materialize_line(graph, a, -window, window);
  auto wb = detail::materialize_line(graph, b, -window, window);

  std::vector<std::pair<int, int>> sources;
  for (size_t i = 0; i < wa.members.size(); ++i) {
    auto vid = graph.find_vertex(wa.members[i]);
    if (vid) sources.push_back({*vid, wa.tags[i]});
  }
  detail::RunDist dist = detail::runs_from_line(graph, sources);
  int j = detail::best_line_arrival(graph, dist, wb, span + 3);
  if (j >= detail::kRunInf)
    fail(ErrorKind::StructureViolation, "line unreachable within corridor");
  return AngularValue(j, m);
}

// ---------------------------------------------------------------------------
// Cut fibers. A quasi-tree vertex [w] is a cut vertex between its two
// maximal simplices; which side a vertex z lies on is the start letter of
// the first atom of rep(w)^{-1} rep(z).
// ---------------------------------------------------------------------------

enum class FiberSide { InFiber, SideS, SideT };

inline FiberSide fiber_side(const OrbitKey& cut, const OrbitKey& z, int m) {
  DihedralNF d = key_rep(cut, m).inverted().multiplied(key_rep(z, m));
  if (d.atoms().empty()) return FiberSide::InFiber;
  return d.atoms().front().start == Gen::S ? FiberSide::SideS : FiberSide::SideT;
}

/// Number of positions i in [lo, hi] whose cut fiber over the axis member i
/// meets every path between z1 and z2 (the sides differ, or an endpoint sits
/// in the fiber itself).
inline int separating_fiber_count(const Line& axis, int lo, int hi, const OrbitKey& z1,
                                  const OrbitKey& z2, int m) {
  int count = 0;
  for (int i = lo; i <= hi; ++i) {
    OrbitKey cut = line_member(axis, i, m);
    FiberSide s1 = fiber_side(cut, z1, m);
    FiberSide s2 = fiber_side(cut, z2, m);
    if (s1 == FiberSide::InFiber || s2 == FiberSide::InFiber || s1 != s2) ++count;
  }
  return count;
}

}  // namespace artin
