#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "artin/errors.hpp"
#include "artin/garside.hpp"
#include "artin/quotient_tree.hpp"
#include "artin/rational_angle.hpp"

namespace artin {

// ---------------------------------------------------------------------------
// Exact angular distances in the (unquotiented) link of a type-2 vertex for
// m >= 3. Link points live over the quotient picture via a winding
// coordinate: the element g = rep(key) Delta^wind. Chains of cosets project
// to line-walks downstairs; the search tracks the Delta exponent so that two
// lifts of the same quotient vertex stay distinct.
//
// The searched region is the corridor between the points plus a block
// neighborhood that gives winding walks room; the certificate records the
// margins used so re-verification is deterministic.
// ---------------------------------------------------------------------------

struct LinkSearchParams {
  int neighborhood = 2;   // block-expansion rounds around the corridor
  int line_window = 0;    // extra line positions (0 = derived from span)
  int max_runs_slack = 8; // slack added to the a-priori run budget
};

/// A type-1 vertex of Lk(v_st): the coset base * <dir>.
struct UpstairsAxis {
  DihedralNF base;
  Gen dir;
};

inline bool axis_contains(const UpstairsAxis& ax, const DihedralNF& g) {
  DihedralNF d = ax.base.inverted().multiplied(g);
  // d must be a power of dir.
  long long k = d.abelianization();
  return d == normal_form(make_word(gen_name(ax.dir), k), d.modulus());
}

inline bool axes_equal(const UpstairsAxis& a, const UpstairsAxis& b) {
  return a.dir == b.dir && axis_contains(a, b.base);
}

namespace detail {

struct WindingSearch {
  const CorridorGraph& graph;
  long long wind_lo, wind_hi;
  std::vector<std::array<int, 2>> dist;  // index = v * W + (wind - lo)

  WindingSearch(const CorridorGraph& g, long long lo, long long hi)
      : graph(g),
        wind_lo(lo),
        wind_hi(hi),
        dist(g.vertex_count() * static_cast<size_t>(hi - lo + 1),
             std::array<int, 2>{kRunInf, kRunInf}) {}

  size_t slot(int v, long long wind) const {
    const size_t W = static_cast<size_t>(wind_hi - wind_lo + 1);
    return static_cast<size_t>(v) * W + static_cast<size_t>(wind - wind_lo);
  }

  int& at(int v, int tag, long long wind) {
    return dist[slot(v, wind)][static_cast<size_t>(tag)];
  }

  void relax(std::deque<std::tuple<int, int, long long>> queue) {
    while (!queue.empty()) {
      auto [v, tag, wind] = queue.front();
      queue.pop_front();
      int d = at(v, tag, wind);
      for (const auto& e : graph.edges_at(v)) {
        long long nwind = wind + e.dwind;
        if (nwind < wind_lo || nwind > wind_hi) continue;
        int cost = (e.tag_here == tag) ? 0 : 1;
        int nd = d + cost;
        int& s = at(e.to, e.tag_there, nwind);
        if (nd < s) {
          s = nd;
          if (cost == 0)
            queue.push_front({e.to, e.tag_there, nwind});
          else
            queue.push_back({e.to, e.tag_there, nwind});
        }
      }
    }
  }
};

/// Expand the materialized region: add both blocks of every current vertex,
/// `rounds` times.
inline void expand_neighborhood(CorridorGraph& graph, int rounds) {
  const int m = graph.modulus();
  for (int r = 0; r < rounds; ++r) {
    std::vector<OrbitKey> keys;
    keys.reserve(graph.vertex_count());
    for (size_t i = 0; i < graph.vertex_count(); ++i)
      keys.push_back(graph.key(static_cast<int>(i)));
    for (const auto& k : keys) {
      graph.add_block(key_rep(k, m), Gen::S);
      graph.add_block(key_rep(k, m), Gen::T);
    }
  }
}

}  // namespace detail

/// Exact link distance between the type-0 vertices g{1} and h{1} of
/// Lk(v_st), m >= 3: (r/m) pi where r is the minimal number of alternating
/// generator-power factors expressing g^{-1} h.
inline AngularValue link_distance_t0_t0(const DihedralNF& g, const DihedralNF& h,
                                        const LinkSearchParams& params = {}) {
  const int m = g.modulus();
  if (g == h) return angle_zero();
  DihedralNF z = g.inverted().multiplied(h);

  CorridorGraph graph(m);
  graph.add_prefix_corridor(g, h);
  detail::expand_neighborhood(graph, params.neighborhood);

  long long budget = 0;
  for (const Atom& a : z.atoms()) budget += a.len;
  budget += static_cast<long long>(m) * (z.delta_exp() < 0 ? -z.delta_exp() : z.delta_exp());
  budget += params.max_runs_slack;

  long long lo = std::min<long long>({0, g.delta_exp(), h.delta_exp()}) - budget;
  long long hi = std::max<long long>({0, g.delta_exp(), h.delta_exp()}) + budget;

  detail::WindingSearch search(graph, lo, hi);
  int xi = *graph.find_vertex(key_of(g));
  auto yi = graph.find_vertex(key_of(h));
  if (!yi) fail(ErrorKind::StructureViolation, "corridor missed its endpoint");

  std::deque<std::tuple<int, int, long long>> queue;
  for (const auto& e : graph.edges_at(xi)) {
    long long w = g.delta_exp() + e.dwind;
    if (w < lo || w > hi) continue;
    int& s = search.at(e.to, e.tag_there, w);
    if (1 < s) {
      s = 1;
      queue.push_back({e.to, e.tag_there, w});
    }
  }
  search.relax(std::move(queue));

  int runs = std::min(search.at(*yi, 0, h.delta_exp()), search.at(*yi, 1, h.delta_exp()));
  if (runs >= detail::kRunInf)
    fail(ErrorKind::ResourceLimit, "link distance search did not reach the target");
  return AngularValue(runs, m);
}

namespace detail {

struct UpstairsLineWindow {
  std::vector<OrbitKey> keys;
  std::vector<long long> winds;
  std::vector<int> tags;
};

inline UpstairsLineWindow materialize_axis(CorridorGraph& graph, const UpstairsAxis& ax,
                                           int lo, int hi) {
  const int m = ax.base.modulus();
  UpstairsLineWindow win;
  DihedralNF cur =
      ax.base.multiplied(normal_form(make_word(gen_name(ax.dir), lo), m));
  DihedralNF step = normal_form(make_word(gen_name(ax.dir), 1), m);
  for (int i = lo; i <= hi; ++i) {
    win.keys.push_back(key_of(cur));
    win.winds.push_back(cur.delta_exp());
    if (i < hi) {
      graph.add_block(cur, ax.dir);
      cur = cur.multiplied(step);
    }
  }
  for (size_t i = 0; i < win.keys.size(); ++i) {
    int vid = *graph.find_vertex(win.keys[i]);
    const OrbitKey& nb = (i + 1 < win.keys.size()) ? win.keys[i + 1] : win.keys[i - 1];
    win.tags.push_back(graph.tag_at(vid, nb));
  }
  return win;
}

}  // namespace detail

/// Exact link distance from the type-0 vertex g{1} to the type-1 vertex for
/// the coset ax: ((2j-1)/(2m)) pi with j the minimal coset-chain length.
inline AngularValue link_distance_t0_axis(const DihedralNF& g, const UpstairsAxis& ax,
                                          const LinkSearchParams& params = {}) {
  const int m = g.modulus();
  if (axis_contains(ax, g)) return AngularValue(1, 2 * m);

  DihedralNF z = g.inverted().multiplied(ax.base);
  int span = static_cast<int>(z.atoms().size());
  int window = params.line_window > 0 ? params.line_window : span + m + 6;

  CorridorGraph graph(m);
  graph.add_prefix_corridor(g, ax.base);
  auto win = detail::materialize_axis(graph, ax, -window, window);
  detail::expand_neighborhood(graph, params.neighborhood);

  long long budget = 0;
  for (const Atom& a : z.atoms()) budget += a.len;
  budget += static_cast<long long>(m) * (z.delta_exp() < 0 ? -z.delta_exp() : z.delta_exp());
  budget += params.max_runs_slack + window;

  long long lo = g.delta_exp(), hi = g.delta_exp();
  for (long long w : win.winds) {
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  lo -= budget;
  hi += budget;

  detail::WindingSearch search(graph, lo, hi);
  int xi = *graph.find_vertex(key_of(g));
  std::deque<std::tuple<int, int, long long>> queue;
  for (const auto& e : graph.edges_at(xi)) {
    long long w = g.delta_exp() + e.dwind;
    if (w < lo || w > hi) continue;
    int& s = search.at(e.to, e.tag_there, w);
    if (1 < s) {
      s = 1;
      queue.push_back({e.to, e.tag_there, w});
    }
  }
  search.relax(std::move(queue));

  int best = detail::kRunInf, best_inner = detail::kRunInf;
  const int center = static_cast<int>(win.keys.size() / 2);
  for (size_t i = 0; i < win.keys.size(); ++i) {
    auto vid = graph.find_vertex(win.keys[i]);
    if (!vid) continue;
    int on = search.at(*vid, win.tags[i], win.winds[i]);
    int off = search.at(*vid, 1 - win.tags[i], win.winds[i]);
    int j = std::min(on, off >= detail::kRunInf ? detail::kRunInf : off + 1);
    best = std::min(best, j);
    if (std::abs(static_cast<int>(i) - center) <= span + 4)
      best_inner = std::min(best_inner, j);
  }
  if (best >= detail::kRunInf)
    fail(ErrorKind::ResourceLimit, "axis unreachable within the searched region");
  if (best < best_inner)
    fail(ErrorKind::StructureViolation, "optimal axis contact escaped its window");
  return AngularValue(2 * best - 1, 2 * m);
}

/// Exact link distance between two type-1 vertices (cosets): (J/m) pi with J
/// the minimal chain of pairwise-intersecting cosets from a to b.
inline AngularValue link_distance_axis_axis(const UpstairsAxis& a, const UpstairsAxis& b,
                                            const LinkSearchParams& params = {}) {
  const int m = a.base.modulus();
  if (axes_equal(a, b)) return angle_zero();

  DihedralNF z = a.base.inverted().multiplied(b.base);
  int span = static_cast<int>(z.atoms().size());
  int window = params.line_window > 0 ? params.line_window : span + m + 6;

  CorridorGraph graph(m);
  graph.add_prefix_corridor(a.base, b.base);
  auto wa = detail::materialize_axis(graph, a, -window, window);
  auto wb = detail::materialize_axis(graph, b, -window, window);
  detail::expand_neighborhood(graph, params.neighborhood);

  long long budget = 0;
  for (const Atom& at : z.atoms()) budget += at.len;
  budget += static_cast<long long>(m) * (z.delta_exp() < 0 ? -z.delta_exp() : z.delta_exp());
  budget += params.max_runs_slack + 2 * window;

  long long lo = a.base.delta_exp(), hi = a.base.delta_exp();
  for (long long w : wa.winds) {
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  for (long long w : wb.winds) {
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  lo -= budget;
  hi += budget;

  detail::WindingSearch search(graph, lo, hi);
  std::deque<std::tuple<int, int, long long>> queue;
  for (size_t i = 0; i < wa.keys.size(); ++i) {
    auto vid = graph.find_vertex(wa.keys[i]);
    if (!vid) continue;
    int& s = search.at(*vid, wa.tags[i], wa.winds[i]);
    if (0 < s) {
      s = 0;
      queue.push_back({*vid, wa.tags[i], wa.winds[i]});
    }
  }
  search.relax(std::move(queue));

  int best = detail::kRunInf, best_inner = detail::kRunInf;
  const int center = static_cast<int>(wb.keys.size() / 2);
  for (size_t i = 0; i < wb.keys.size(); ++i) {
    auto vid = graph.find_vertex(wb.keys[i]);
    if (!vid) continue;
    int on = search.at(*vid, wb.tags[i], wb.winds[i]);
    int off = search.at(*vid, 1 - wb.tags[i], wb.winds[i]);
    int j = std::min(on, off >= detail::kRunInf ? detail::kRunInf : off + 1);
    best = std::min(best, j);
    if (std::abs(static_cast<int>(i) - center) <= span + 4)
      best_inner = std::min(best_inner, j);
  }
  if (best >= detail::kRunInf)
    fail(ErrorKind::ResourceLimit, "axis unreachable within the searched region");
  if (best < best_inner)
    fail(ErrorKind::StructureViolation, "optimal axis contact escaped its window");
  return AngularValue(best, m);
}

}  // namespace artin
