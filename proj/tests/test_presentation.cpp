#include <catch2/catch_amalgamated.hpp>

#include "artin/presentation.hpp"
#include "artin/raag.hpp"

using namespace artin;

namespace {

PresentationGraph triangle(int p, int q, int r) {
  PresentationGraph g;
  g.add_generator("a");
  g.add_generator("b");
  g.add_generator("c");
  g.add_edge("a", "b", p);
  g.add_edge("b", "c", q);
  g.add_edge("a", "c", r);
  return g;
}

PresentationGraph path_abc(int m1 = 2, int m2 = 2) {
  PresentationGraph g;
  g.add_generator("a");
  g.add_generator("b");
  g.add_generator("c");
  g.add_edge("a", "b", m1);
  g.add_edge("b", "c", m2);
  return g;
}

}  // namespace

TEST_CASE("graph JSON parsing") {
  auto g = parse_graph(R"({"generators":["s","t"],"edges":[{"a":"s","b":"t","m":3}]})");
  CHECK(g.generators().size() == 2);
  REQUIRE(g.label("s", "t").has_value());
  CHECK(*g.label("s", "t") == 3);
  CHECK(*g.label("t", "s") == 3);

  auto p = parse_graph(
      R"({"generators":["a","b","c"],"edges":[{"a":"a","b":"b","m":2},{"a":"b","b":"c","m":2}]})");
  CHECK(p.edges().size() == 2);
  CHECK(!p.adjacent("a", "c"));
  CHECK(p.all_labels_two());

  CHECK_THROWS_AS(parse_graph(R"({"generators":["s","t"],"edges":[{"a":"s","b":"t","m":1}]})"), Error);
  CHECK_THROWS_AS(parse_graph(R"({"generators":["s"],"edges":[{"a":"s","b":"s","m":2}]})"), Error);
  CHECK_THROWS_AS(parse_graph(R"({"generators":["s","s"]})"), Error);
  CHECK_THROWS_AS(parse_graph("not json"), Error);
  CHECK_THROWS_AS(
      parse_graph(R"({"generators":["s","t"],"edges":[{"a":"s","b":"t","m":2},{"a":"t","b":"s","m":3}]})"),
      Error);
}

TEST_CASE("two-dimensionality") {
  CHECK(is_two_dimensional(triangle(3, 3, 3)).two_dimensional);
  auto bad = is_two_dimensional(triangle(2, 3, 5));
  CHECK(!bad.two_dimensional);
  REQUIRE(bad.violations.size() == 1);
  CHECK(is_two_dimensional(path_abc()).two_dimensional);

  // Monotone under edge deletion: removing an edge never turns true into false.
  PresentationGraph g = triangle(3, 3, 3);
  PresentationGraph fewer;
  fewer.add_generator("a");
  fewer.add_generator("b");
  fewer.add_generator("c");
  fewer.add_edge("a", "b", 3);
  fewer.add_edge("b", "c", 3);
  CHECK(is_two_dimensional(fewer).two_dimensional);
}

TEST_CASE("hyperbolic type") {
  auto euc = is_hyperbolic_type(triangle(3, 3, 3));
  CHECK(!euc.hyperbolic);
  REQUIRE(euc.witness.has_value());
  CHECK(euc.witness->kind == HyperbolicWitness::Kind::EuclideanTriangle);

  for (auto labels : {std::tuple{2, 4, 4}, std::tuple{2, 3, 6}}) {
    auto [p, q, r] = labels;
    CHECK(!is_hyperbolic_type(triangle(p, q, r)).hyperbolic);
  }

  PresentationGraph path;
  path.add_generator("s");
  path.add_generator("t");
  path.add_generator("u");
  path.add_edge("s", "t", 3);
  path.add_edge("t", "u", 3);
  CHECK(is_hyperbolic_type(path).hyperbolic);

  // 4-cycle with labels 2 and no diagonals: D_inf x D_inf.
  PresentationGraph square;
  for (const char* v : {"a", "b", "c", "d"}) square.add_generator(v);
  square.add_edge("a", "c", 2);
  square.add_edge("c", "b", 2);
  square.add_edge("b", "d", 2);
  square.add_edge("d", "a", 2);
  auto sq = is_hyperbolic_type(square);
  CHECK(!sq.hyperbolic);
  REQUIRE(sq.witness.has_value());
  CHECK(sq.witness->kind == HyperbolicWitness::Kind::SquarePattern);

  CHECK_THROWS_AS(is_hyperbolic_type(triangle(2, 3, 5)), Error);
}

TEST_CASE("spherical parabolics") {
  PresentationGraph edge;
  edge.add_generator("s");
  edge.add_generator("t");
  edge.add_edge("s", "t", 3);
  auto ps = spherical_parabolics(edge);
  REQUIRE(ps.size() == 4);  // Type0, Type1 x2, Type2 x1
  CHECK(ps[0].kind == ParabolicDescriptor::Kind::Type0);

  CHECK(spherical_parabolics(path_abc()).size() == 6);

  PresentationGraph loose;
  loose.add_generator("x");
  loose.add_generator("y");
  CHECK(spherical_parabolics(loose).size() == 3);

  // Size law: 1 + |V| + |E|.
  PresentationGraph g = triangle(3, 3, 3);
  CHECK(spherical_parabolics(g).size() == 1 + 3 + 3);
}

TEST_CASE("raag normal form and identity oracle") {
  auto path = path_abc();

  CHECK(raag_is_identity(parse_word("a b a^-1 b^-1"), path));
  CHECK(!raag_is_identity(parse_word("a c a^-1 c^-1"), path));
  CHECK(raag_is_identity(parse_word(""), path));
  CHECK(raag_is_identity(parse_word("b c b c^-1 b^-2"), path));
  CHECK(!raag_is_identity(parse_word("a"), path));

  // Exhaustive cross-check at length 4: identity iff some sequence of
  // commutation moves and free cancellations kills the word.
  const std::vector<std::string> letters = {"a", "b", "c"};
  std::vector<int> digits(4, 0);
  auto brute_trivial = [&](const Word& w) {
    // breadth-first search over words reachable by swap/cancel moves
    std::set<std::vector<std::pair<std::string, int>>> seen;
    std::vector<std::vector<std::pair<std::string, int>>> frontier;
    auto letters_of = [](const Word& w) {
      std::vector<std::pair<std::string, int>> v;
      for (const auto& l : flatten(w)) v.push_back({l.gen, l.sign});
      return v;
    };
    frontier.push_back(letters_of(w));
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
      auto cur = frontier.back();
      frontier.pop_back();
      if (cur.empty()) return true;
      for (size_t i = 0; i + 1 < cur.size(); ++i) {
        if (cur[i].first == cur[i + 1].first && cur[i].second == -cur[i + 1].second) {
          auto next = cur;
          next.erase(next.begin() + static_cast<std::ptrdiff_t>(i),
                     next.begin() + static_cast<std::ptrdiff_t>(i) + 2);
          if (seen.insert(next).second) frontier.push_back(next);
        }
        if (cur[i].first != cur[i + 1].first &&
            path.adjacent(cur[i].first, cur[i + 1].first)) {
          auto next = cur;
          std::swap(next[i], next[i + 1]);
          if (seen.insert(next).second) frontier.push_back(next);
        }
      }
    }
    return false;
  };

  while (true) {
    Word w;
    for (int d : digits) w.append(letters[static_cast<size_t>(d / 2)], d % 2 == 0 ? 1 : -1);
    INFO(to_string(w));
    CHECK(raag_is_identity(w, path) == brute_trivial(w));
    size_t i = 0;
    for (; i < digits.size(); ++i) {
      if (++digits[i] < 6) break;
      digits[i] = 0;
    }
    if (i == digits.size()) break;
  }

  // Agreement with the abelian form on a single label-2 edge.
  PresentationGraph z2;
  z2.add_generator("s");
  z2.add_generator("t");
  z2.add_edge("s", "t", 2);
  CHECK(raag_is_identity(parse_word("s t s^-1 t^-1"), z2));
  CHECK(!raag_is_identity(parse_word("s t s^-1"), z2));

  PresentationGraph labeled;
  labeled.add_generator("s");
  labeled.add_generator("t");
  labeled.add_edge("s", "t", 3);
  CHECK_THROWS_AS(raag_is_identity(parse_word("s"), labeled), Error);
}
