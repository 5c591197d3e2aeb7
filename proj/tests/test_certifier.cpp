#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "artin/certifier.hpp"
#include "artin/json_io.hpp"

using namespace artin;

namespace {

Word W(const std::string& text) { return parse_word(text); }

PresentationGraph path_abc() {
  PresentationGraph g;
  g.add_generator("a");
  g.add_generator("b");
  g.add_generator("c");
  g.add_edge("a", "b", 2);
  g.add_edge("b", "c", 2);
  return g;
}

PresentationGraph dihedral_st(int m) {
  PresentationGraph g;
  g.add_generator("s");
  g.add_generator("t");
  g.add_edge("s", "t", m);
  return g;
}

EllipticSpec tree_spec(const std::string& gen, long long power, const Word& conj = {}) {
  EllipticSpec spec;
  spec.kind = EllipticSpec::Kind::TreeElliptic;
  spec.generator = gen;
  spec.power = power;
  spec.conjugator = conj;
  return spec;
}

EllipticSpec vertex_spec(const std::string& va, const std::string& vb, const Word& w) {
  EllipticSpec spec;
  spec.kind = EllipticSpec::Kind::VertexElliptic;
  spec.va = va;
  spec.vb = vb;
  spec.word = w;
  return spec;
}

}  // namespace

TEST_CASE("minimal exponents from the separation sweep") {
  // Frozen after the first derivation: the worst-case separating count is
  // |d| n, so the threshold m + 1 is reached at ceil((m+1)/|d|).
  auto r31 = min_exponent_tree_elliptic_type2(3, 1);
  CHECK(r31.resolved);
  CHECK(r31.n0 == 4);
  CHECK(r31.monotone);
  for (auto [n, f] : r31.fcounts) CHECK(f == n);

  auto r32 = min_exponent_tree_elliptic_type2(3, 2);
  CHECK(r32.resolved);
  CHECK(r32.n0 == 2);
  CHECK(r32.n0 <= r31.n0);

  CHECK(min_exponent_tree_elliptic_type2(4, 1).n0 == 5);
  CHECK(min_exponent_tree_elliptic_type2(5, 1).n0 == 6);
  CHECK(min_exponent_tree_elliptic_type2(2, 1).n0 == 1);
  CHECK(min_exponent_tree_elliptic_type2(3, -1).n0 == 4);
  CHECK_THROWS_AS(min_exponent_tree_elliptic_type2(3, 0), Error);
}

TEST_CASE("interior-edge and type-1 endpoint records") {
  PresentationGraph g = path_abc();
  EllipticSpec a = tree_spec("a", 1);

  ContactSpec interior;
  interior.kind = ContactSpec::Case::InteriorEdgePerp;
  auto r = verify_endpoint(g, a, interior, 1);
  REQUIRE(r.ok);
  CHECK(r.record.exact_pi);
  CHECK(r.record.n0 == 1);

  interior.perpendicular = false;
  CHECK(!verify_endpoint(g, a, interior, 1).ok);

  ContactSpec t1;
  t1.kind = ContactSpec::Case::Type1Contact;
  t1.gamma_bar.kind = "coset0";
  auto r1 = verify_endpoint(g, a, t1, 1);
  REQUIRE(r1.ok);
  CHECK(r1.record.exact_pi);

  t1.gamma_bar.kind = "coset1";
  t1.gamma_bar.gen = "s";
  CHECK(!verify_endpoint(g, a, t1, 1).ok);
}

TEST_CASE("type-2 endpoint at a label-2 vertex") {
  PresentationGraph g = path_abc();

  SECTION("tree-elliptic through the other coset is exactly pi") {
    EllipticSpec a = tree_spec("a", 1);
    ContactSpec c;
    c.kind = ContactSpec::Case::Type2Contact;
    c.va = "a";
    c.vb = "b";
    c.local_generator = "s";
    c.local_a = W("s");
    c.gamma_bar.kind = "coset1";
    c.gamma_bar.gen = "t";
    auto r = verify_endpoint(g, a, c, 1);
    REQUIRE(r.ok);
    CHECK(r.record.case_tag == "type2-m2-tree");
    CHECK(r.record.exact_pi);
    for (const auto& [k, d] : r.record.k_distances) CHECK(d == angle_pi());

    // Leaving along the same family fails immediately.
    c.gamma_bar.gen = "s";
    c.gamma_bar.rep = W("t");
    CHECK(!verify_endpoint(g, a, c, 1).ok);
  }

  SECTION("vertex-elliptic moves every coset") {
    EllipticSpec a = vertex_spec("a", "b", W("a b"));
    ContactSpec c;
    c.kind = ContactSpec::Case::Type2Contact;
    c.va = "a";
    c.vb = "b";
    c.local_a = W("s t");
    c.gamma_bar.kind = "coset1";
    c.gamma_bar.gen = "s";
    auto r = verify_endpoint(g, a, c, 1);
    REQUIRE(r.ok);
    CHECK(r.record.case_tag == "type2-m2-vertex");
    CHECK(r.record.exact_pi);

    // A kind mismatch is rejected.
    EllipticSpec wrong = tree_spec("a", 1);
    CHECK(!verify_endpoint(g, wrong, c, 1).ok);
  }
}

TEST_CASE("type-2 endpoint at an m = 3 vertex, tree-elliptic") {
  PresentationGraph g = dihedral_st(3);
  EllipticSpec a = tree_spec("s", 1);

  ContactSpec c;
  c.kind = ContactSpec::Case::Type2Contact;
  c.va = "s";
  c.vb = "t";
  c.local_generator = "s";
  c.local_a = W("s");
  c.local_conjugator = W("");

  SECTION("gamma on the tree itself is rejected") {
    c.gamma_bar.kind = "coset1";
    c.gamma_bar.gen = "s";
    auto r = verify_endpoint(g, a, c, 4);
    CHECK(!r.ok);
    CHECK(r.failure_kind == "AngleTooSmall");
  }

  SECTION("gamma adjacent to the tree is rejected at pi/6") {
    c.gamma_bar.kind = "coset0";
    c.gamma_bar.rep = W("s");  // a coset0 orbit on the axis
    auto r = verify_endpoint(g, a, c, 4);
    CHECK(!r.ok);
  }

  SECTION("gamma at distance pi/2 passes once n reaches the threshold") {
    c.gamma_bar.kind = "coset0";
    c.gamma_bar.rep = W("t");
    auto bad = verify_endpoint(g, a, c, 3);
    CHECK(!bad.ok);  // below n0 = 4
    auto good = verify_endpoint(g, a, c, 4);
    REQUIRE(good.ok);
    CHECK(good.record.case_tag == "type2-tree");
    CHECK(good.record.n0 == 4);
    CHECK(good.record.has_tbar);
    CHECK(good.record.tbar_distance == AngularValue(1, 2));
    for (const auto& [k, d] : good.record.k_distances) CHECK(d >= angle_pi());

    // Monotone: any larger exponent still passes.
    CHECK(verify_endpoint(g, a, c, 8).ok);
    CHECK(verify_endpoint(g, a, c, 12).ok);
  }

  SECTION("conjugated witness") {
    EllipticSpec conj = tree_spec("s", 2, W("t"));
    c.local_a = W("t s^2 t^-1");
    c.local_conjugator = W("t");
    c.gamma_bar.kind = "coset0";
    c.gamma_bar.rep = W("t t");
    // Tbar is now the line of t<s>; d(tt-orbit, t<s>-line) = pi/2 by
    // translation invariance of the [t]-to-<s> configuration.
    auto r = verify_endpoint(g, conj, c, 2);
    REQUIRE(r.ok);
    CHECK(r.record.n0 == 2);  // d = 2 halves the threshold

    // A broken witness is rejected.
    c.local_conjugator = W("s");
    CHECK(!verify_endpoint(g, conj, c, 2).ok);
  }
}

TEST_CASE("type-2 endpoint at an m = 3 vertex, vertex-elliptic") {
  PresentationGraph g = dihedral_st(3);
  EllipticSpec a = vertex_spec("s", "t", W("s t"));

  ContactSpec c;
  c.kind = ContactSpec::Case::Type2Contact;
  c.va = "s";
  c.vb = "t";
  c.local_a = W("s t");
  c.gamma_bar.kind = "coset0";
  c.gamma_bar.rep = W("");
  c.exponent_bound = 2;

  // Frozen from the derived distance table: translates reach pi at n = 2.
  auto r1 = verify_endpoint(g, a, c, 1);
  CHECK(!r1.ok);
  auto r2 = verify_endpoint(g, a, c, 2);
  REQUIRE(r2.ok);
  CHECK(r2.record.case_tag == "type2-vertex");
  CHECK(r2.record.exponent_bound == 2);
  REQUIRE(r2.record.k_distances.size() == 4);
  CHECK(r2.record.k_distances[0].second == angle_pi());         // k = 1
  CHECK(r2.record.k_distances[2].second == AngularValue(4, 3)); // k = 2
  bool has_assumption = false;
  for (const auto& s : r2.record.assumptions)
    if (s.rfind("BoundedExponent", 0) == 0) has_assumption = true;
  CHECK(has_assumption);
}

TEST_CASE("certify_free on the path RAAG") {
  PresentationGraph g = path_abc();
  EllipticSpec a = tree_spec("a", 1);
  EllipticSpec c = tree_spec("c", 1);

  FreenessCertificate cert = certify_free(g, a, c, std::nullopt, std::nullopt);
  CHECK(cert.n == 1);
  CHECK(cert.mode == "exact");
  REQUIRE(cert.endpoints.size() == 2);
  CHECK(cert.endpoints[0].case_tag == "type2-m2-tree");
  CHECK(cert.endpoints[1].case_tag == "type2-m2-tree");

  // The checker reproduces every record.
  auto report = check_certificate(g, cert);
  CHECK(report.ok);

  // Symmetry: swapping the specs certifies with mirrored records.
  FreenessCertificate mirror = certify_free(g, c, a, std::nullopt, std::nullopt);
  CHECK(mirror.n == cert.n);
  CHECK(mirror.endpoints[0] == cert.endpoints[1]);
  CHECK(mirror.endpoints[1] == cert.endpoints[0]);

  // JSON round trip preserves the certificate.
  json j = to_json(cert, g);
  ParsedCertificate parsed = certificate_from_json(j);
  CHECK(check_certificate(parsed.graph, parsed.cert).ok);
  CHECK(to_json(parsed.cert, parsed.graph) == j);

  // Requested n = 2 also passes (monotone in n).
  FreenessCertificate cert2 = certify_free(g, a, c, std::nullopt, 2);
  CHECK(cert2.n == 2);
  CHECK(check_certificate(g, cert2).ok);
}

TEST_CASE("certify_free failure modes") {
  PresentationGraph g = path_abc();
  EllipticSpec a = tree_spec("a", 1);
  CHECK_THROWS_AS(certify_free(g, a, a, std::nullopt, std::nullopt), Error);
  CHECK_THROWS_AS(certify_free(g, a, tree_spec("a", 2), std::nullopt, std::nullopt), Error);
  CHECK_THROWS_AS(certify_free(g, a, tree_spec("b", 1), std::nullopt, std::nullopt), Error);
  CHECK_THROWS_AS(certify_free(g, a, tree_spec("c", 1), std::nullopt, 0), Error);
  CHECK_THROWS_AS(certify_free(g, a, tree_spec("x", 1), std::nullopt, std::nullopt), Error);
}

TEST_CASE("certify_free without a common neighbor uses type-1 contacts") {
  PresentationGraph g;
  for (const char* v : {"a", "x", "y", "c"}) g.add_generator(v);
  g.add_edge("a", "x", 2);
  g.add_edge("x", "y", 2);
  g.add_edge("y", "c", 2);
  FreenessCertificate cert =
      certify_free(g, tree_spec("a", 1), tree_spec("c", 1), std::nullopt, std::nullopt);
  CHECK(cert.n == 1);
  CHECK(cert.gamma[0].kind == ContactSpec::Case::Type1Contact);
  CHECK(check_certificate(g, cert).ok);

  // Free product: two isolated generators.
  PresentationGraph f2;
  f2.add_generator("a");
  f2.add_generator("c");
  FreenessCertificate free2 =
      certify_free(f2, tree_spec("a", 1), tree_spec("c", 1), std::nullopt, std::nullopt);
  CHECK(check_certificate(f2, free2).ok);
}

TEST_CASE("conditional certificates on mixed-label graphs") {
  PresentationGraph g;
  g.add_generator("s");
  g.add_generator("t");
  g.add_generator("u");
  g.add_edge("s", "t", 3);
  g.add_edge("t", "u", 2);

  // A type-2 contact at the m = 3 edge with declared gamma data.
  EllipticSpec a = tree_spec("s", 1);
  EllipticSpec b = tree_spec("u", 1);
  ContactSpec ca;
  ca.kind = ContactSpec::Case::Type2Contact;
  ca.va = "s";
  ca.vb = "t";
  ca.local_generator = "s";
  ca.local_a = W("s");
  ca.gamma_bar.kind = "coset0";
  ca.gamma_bar.rep = W("t");
  ContactSpec cb;
  cb.kind = ContactSpec::Case::Type1Contact;
  cb.gamma_bar.kind = "coset0";

  FreenessCertificate cert =
      certify_free(g, a, b, std::vector<ContactSpec>{ca, cb}, std::nullopt);
  CHECK(cert.mode == "conditional-on-labels");
  CHECK(cert.n == 4);  // the m = 3 endpoint needs n0 = 4
  CHECK(check_certificate(g, cert).ok);
  bool has_assumed = false;
  for (const auto& s : cert.assumptions)
    if (s.rfind("assumed:", 0) == 0) has_assumed = true;
  CHECK(has_assumed);
}

TEST_CASE("checker rejects tampered certificates") {
  PresentationGraph g = path_abc();
  FreenessCertificate cert =
      certify_free(g, tree_spec("a", 1), tree_spec("c", 1), std::nullopt, std::nullopt);
  json base = to_json(cert, g);

  auto fails_with = [&](json mutated) {
    try {
      ParsedCertificate parsed = certificate_from_json(mutated);
      return !check_certificate(parsed.graph, parsed.cert).ok;
    } catch (const Error&) {
      return true;
    }
  };

  json j1 = base;
  j1["n"] = 0;
  CHECK(fails_with(j1));
  json j2 = base;
  j2["endpoints"][0]["n0"] = 7;
  CHECK(fails_with(j2));
  json j3 = base;
  j3["endpoints"][1]["k_distances"][0]["distance"]["num"] = 2;
  CHECK(fails_with(j3));
  json j4 = base;
  j4["mode"] = "conditional-on-labels";
  CHECK(fails_with(j4));
  json j5 = base;
  j5["endpoints"][0]["exact_pi"] = false;
  CHECK(fails_with(j5));
}

TEST_CASE("ping-pong trees count reduced words") {
  PingPongTree t1 = pingpong_tree("a", "c", 1, 1);
  CHECK(t1.edge_count() == 4);
  PingPongTree t2 = pingpong_tree("a", "c", 1, 2);
  CHECK(t2.edge_count() == 16);
  PingPongTree t3 = pingpong_tree("a", "c", 2, 3);
  CHECK(t3.edge_count() == 4 + 12 + 36);
  CHECK_THROWS_AS(pingpong_tree("a", "c", 0, 2), Error);
}

TEST_CASE("loxodromic witness") {
  PresentationGraph g = path_abc();
  auto w1 = loxodromic_witness(g, tree_spec("a", 1), tree_spec("c", 1), 1);
  CHECK(w1.word == W("a c"));
  CHECK(w1.oracle_checked);
  CHECK(w1.powers_checked == 4);
  auto w2 = loxodromic_witness(g, tree_spec("a", 1), tree_spec("c", 1), 2);
  CHECK(w2.word == W("a^2 c^2"));
  CHECK_THROWS_AS(loxodromic_witness(g, tree_spec("a", 1), tree_spec("c", 1), 0), Error);
}

TEST_CASE("free sweep finds no trivial reduced words") {
  PresentationGraph g = path_abc();
  auto report = raag_free_sweep(g, tree_spec("a", 1), tree_spec("c", 1), 1, 4);
  CHECK(report.words_checked == 4 + 12 + 36 + 108);
  CHECK(report.trivial_words == 0);
}

TEST_CASE("distinct-tree products are vertex-elliptic (sampled)") {
  std::mt19937 rng(2026);
  auto random_word = [&](int len) {
    std::uniform_int_distribution<int> d(0, 3);
    Word w;
    for (int i = 0; i < len; ++i) {
      int x = d(rng);
      w.append(x / 2 == 0 ? "s" : "t", x % 2 == 0 ? 1 : -1);
    }
    return w;
  };
  for (int m : {3, 4}) {
    int samples = 0;
    while (samples < 25) {
      Word gw = random_word(3), hw = random_word(3);
      long long p = 1 + (rng() % 3), q = 1 + (rng() % 3);
      // Distinct trees: g s g^{-1} != h t h^{-1}.
      Word gs = conjugate(gw, W("s"));
      Word ht = conjugate(hw, W("t"));
      Word probe = gs;
      probe.append(ht.inverse());
      if (dihedral_is_identity(probe, m)) continue;
      ++samples;
      Word a = conjugate(gw, make_word("s", p));
      Word b = conjugate(hw, make_word("t", q));
      Word product = a.power(q);
      product.append(b.power(-p));
      INFO("m=" << m << " g=" << to_string(gw) << " h=" << to_string(hw));
      CHECK(!classify_elliptic(product, m).tree_elliptic);
    }
  }
}
