#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "artin/quasitree.hpp"

using namespace artin;

namespace {

Word W(const std::string& text) { return parse_word(text); }

// Independent count of left-weighted atom sequences with at most `depth`
// atoms: the first atom is free (2(m-1) choices), each later atom must start
// with the previous last letter (m-1 choices).
long long lw_count(int m, int depth) {
  long long total = 1;
  long long level = 2 * (m - 1);
  for (int d = 1; d <= depth; ++d) {
    total += level;
    level *= (m - 1);
  }
  return total;
}

}  // namespace

TEST_CASE("quasi-tree balls enumerate left-weighted words") {
  for (int m : {3, 4, 5}) {
    for (int depth : {0, 1, 2, 3}) {
      QuasiTreeBall ball = build_quasitree(m, depth);
      INFO("m=" << m << " depth=" << depth);
      CHECK(ball.keys.size() == static_cast<size_t>(lw_count(m, depth)));
    }
  }
  // m=3 depth 3: 1 + 4 + 8 + 16 = 29, also via the closed form.
  CHECK(build_quasitree(3, 3).keys.size() == 29);
  CHECK(build_quasitree(3, 0).keys.size() == 1);
}

TEST_CASE("the base vertex lies in exactly the two orbit simplices") {
  QuasiTreeBall ball = build_quasitree(3, 2);
  int e = *ball.find(OrbitKey{});
  std::vector<std::vector<int>> at_base;
  for (const auto& s : ball.simplices)
    if (std::find(s.begin(), s.end(), e) != s.end()) at_base.push_back(s);
  REQUIRE(at_base.size() == 2);

  auto id_of = [&](const Word& w) { return *ball.find(key_of(normal_form(w, 3))); };
  std::set<std::set<int>> expect = {
      {e, id_of(W("s")), id_of(W("s t"))},
      {e, id_of(W("t")), id_of(W("t s"))},
  };
  std::set<std::set<int>> got;
  for (const auto& s : at_base) got.insert(std::set<int>(s.begin(), s.end()));
  CHECK(got == expect);
}

TEST_CASE("tree-of-simplices structure checks") {
  for (int m : {3, 4, 5}) {
    for (int depth = 2; depth <= 4; ++depth) {
      if (m == 5 && depth > 3) continue;  // keep the suite quick
      QuasiTreeBall ball = build_quasitree(m, depth);
      auto report = check_tree_of_simplices(ball);
      INFO("m=" << m << " depth=" << depth << " " << report.violation);
      CHECK(report.ok);
      CHECK(report.checked_size_m > 0);
    }
  }

  SECTION("maximal cliques have m vertices") {
    QuasiTreeBall ball = build_quasitree(5, 2);
    for (const auto& s : ball.simplices) CHECK(s.size() == 5);
  }

  SECTION("adversarial extra edge is rejected") {
    QuasiTreeBall ball = build_quasitree(3, 3);
    // Join two vertices at distance two inside different simplices.
    int u = *ball.find(key_of(normal_form(W("s"), 3)));
    int v = *ball.find(key_of(normal_form(W("t"), 3)));
    ball.edges.push_back({u, v, Atom{Gen::S, 1}});
    auto report = check_tree_of_simplices(ball);
    CHECK(!report.ok);
  }
}

TEST_CASE("augmented graph structure") {
  for (int m : {3, 4}) {
    AugmentedGraph k = build_augmented(m, 3, true);
    // Every base vertex lies on exactly one s-type and one t-type copy, so
    // its two nodes are in different axes.
    for (size_t v = 0; v < k.base_count(); ++v)
      CHECK(k.root_of(static_cast<int>(v * 2)) != k.root_of(static_cast<int>(v * 2 + 1)));

    // pr_I: one I-edge per base vertex and the collapsed graph is the
    // single-letter subgraph of the quasi-tree ball.
    CollapsedGraph ci = pr_I(k);
    CHECK(ci.vertices == k.base_count());
    QuasiTreeBall ball = build_quasitree(m, 3);
    std::set<std::pair<int, int>> letter_edges;
    for (const auto& e : ball.edges)
      if (e.label.len == 1 || e.label.len == m - 1) {
        // single-letter adjacency (length m-1 atoms are letter-inverses
        // modulo Delta)
        letter_edges.insert(std::minmax(e.u, e.v));
      }
    std::set<std::pair<int, int>> collapsed(ci.edges.begin(), ci.edges.end());
    // Translate collapsed base ids into quasi-tree ids via keys.
    std::set<std::pair<int, int>> collapsed_as_ball;
    for (auto [a, b] : collapsed) {
      int u = *ball.find(k.base_keys[static_cast<size_t>(a)]);
      int v = *ball.find(k.base_keys[static_cast<size_t>(b)]);
      collapsed_as_ball.insert(std::minmax(u, v));
    }
    CHECK(collapsed_as_ball == letter_edges);

    // pr_A: one edge per base vertex between two distinct axes.
    CollapsedGraph ca = pr_A(k);
    CHECK(ca.vertices == k.axes.size());
    CHECK(ca.edges.size() == k.base_count());
    for (auto [a, b] : ca.edges) CHECK(a != b);
  }
}

TEST_CASE("unquotiented augmented graph collapses to the Cayley ball") {
  const int m = 3, depth = 3;
  AugmentedGraph g = build_augmented(m, depth, false);
  CollapsedGraph ci = pr_I(g);
  CHECK(ci.vertices == g.base_elems.size());

  // Direct Cayley edges of the letter ball.
  std::set<std::pair<int, int>> expect;
  auto eid = [&](const DihedralNF& x) {
    auto it = g.elem_ids.find(std::make_pair(key_of(x), x.delta_exp()));
    return it == g.elem_ids.end() ? -1 : it->second;
  };
  for (size_t v = 0; v < g.base_elems.size(); ++v)
    for (Gen x : {Gen::S, Gen::T}) {
      DihedralNF nxt = g.base_elems[v];
      nxt.append_letter(x, +1);
      int w = eid(nxt);
      if (w >= 0) expect.insert(std::minmax(static_cast<int>(v), w));
    }
  std::set<std::pair<int, int>> got(ci.edges.begin(), ci.edges.end());
  CHECK(got == expect);

  // Two distinct same-generator axes never share a base vertex.
  for (size_t v = 0; v < g.base_elems.size(); ++v) {
    int rs = g.root_of(static_cast<int>(v * 2));
    int rt = g.root_of(static_cast<int>(v * 2 + 1));
    CHECK(rs != rt);
  }

  // Axes are cosets: members of the s-axis through the origin are exactly
  // the powers of s inside the ball.
  int s_axis = origin_axis_index(g, Gen::S);
  std::set<int> members;
  for (auto [base, pos] : g.axes[static_cast<size_t>(s_axis)].members) {
    (void)pos;
    members.insert(base);
  }
  for (int i = -depth; i <= depth; ++i) {
    DihedralNF p = normal_form(make_word("s", i), m);
    int id = eid(p);
    if (id >= 0) CHECK(members.count(id) == 1);
  }
}

TEST_CASE("separating counts on the quotiented augmented graph") {
  for (int m : {3, 4}) {
    for (int n = 1; n <= 3; ++n) {
      int depth = n + 3;
      AugmentedGraph k = build_augmented(m, depth, true);
      int origin = k.key_ids.at(OrbitKey{});
      OrbitKey sn = key_of(normal_form(make_word("s", n), m));
      int target = k.key_ids.at(sn);

      // Lift of a gamma on the t-axis at the origin: the t-side node.
      int x = k.node_of(origin, 1);
      int y = k.node_of(target, 1);
      int graph_count = separating_count(k, x, y, Gen::S);

      // Algebraic count over the same fibers.
      Line axis{OrbitKey{}, Gen::S};
      int alg = separating_fiber_count(axis, -(depth - 1), depth - 1, OrbitKey{}, sn, m);
      INFO("m=" << m << " n=" << n);
      CHECK(graph_count == alg);
      CHECK(graph_count == n + 1);  // on-axis basepoints see both end fibers

      // Branch basepoints: hang the endpoints off the axis.
      OrbitKey tb = key_of(normal_form(W("t"), m));
      OrbitKey tb2 = left_translate(normal_form(make_word("s", n), m), tb);
      auto bx = k.key_ids.find(tb);
      auto by = k.key_ids.find(tb2);
      REQUIRE(bx != k.key_ids.end());
      REQUIRE(by != k.key_ids.end());
      int xb = k.node_of(bx->second, 1);
      int yb = k.node_of(by->second, 1);
      int graph_branch = separating_count(k, xb, yb, Gen::S);
      int alg_branch = separating_fiber_count(axis, -(depth - 1), depth - 1, tb, tb2, m);
      CHECK(graph_branch == alg_branch);
      CHECK(graph_branch == n);
    }
  }
}

TEST_CASE("the one-edge fiber over an interior vertex separates the interior") {
  for (int m : {3, 4, 5}) {
    AugmentedGraph k = build_augmented(m, 3, true);
    int violations = 0, checked = 0;
    for (size_t v = 0; v < k.base_count(); ++v) {
      // Both sides need interior representatives: depth <= ball depth - 2.
      if (k.base_keys[v].size() + 2 > static_cast<size_t>(k.depth)) continue;
      ++checked;
      if (!w_fiber_separates(k, static_cast<int>(v))) ++violations;
    }
    INFO("m=" << m);
    CHECK(checked > 0);
    CHECK(violations == 0);
  }
}
