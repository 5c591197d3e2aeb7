#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "artin/amalgam.hpp"
#include "artin/errors.hpp"
#include "artin/garside.hpp"
#include "artin/linkgeom.hpp"
#include "artin/presentation.hpp"
#include "artin/quotient_tree.hpp"
#include "artin/raag.hpp"
#include "artin/rational_angle.hpp"

namespace artin {

// ---------------------------------------------------------------------------
// Freeness certificates: given two elliptic elements with disjoint fixed
// sets and a contact path between them, verify that all translates of the
// path meet at angles >= pi at both endpoints, which forces the orbit of the
// path to sweep out a tree and the power subgroup to be free.
// ---------------------------------------------------------------------------

struct EllipticSpec {
  enum class Kind { TreeElliptic, VertexElliptic } kind = Kind::TreeElliptic;
  // Tree-elliptic: conjugator * generator^power * conjugator^{-1}.
  Word conjugator;
  std::string generator;
  long long power = 0;
  // Vertex-elliptic: an element of the vertex group <va, vb>.
  std::string va, vb;
  Word word;

  friend bool operator==(const EllipticSpec&, const EllipticSpec&) = default;
};

/// Description of the point gamma-bar in the relevant link, in local
/// coordinates (the vertex group's generators renamed to s, t).
struct GammaBar {
  std::string kind = "coset0";  // coset0 | coset1 | edge
  Word rep;                     // local word: the element / a line member
  std::string gen = "s";        // coset1 / edge: the line direction
  AngularValue offset;          // edge: distance from the type-0 endpoint
};

struct ContactSpec {
  enum class Case { InteriorEdgePerp, Type1Contact, Type2Contact } kind =
      Case::Type2Contact;
  bool perpendicular = true;  // interior-edge case

  // Type-2 contacts: the vertex is the parabolic over the edge {va, vb} of
  // the presentation graph; local words map va -> s, vb -> t.
  std::string va, vb;
  Word local_a;            // image of the elliptic element in <s, t>
  Word local_conjugator;   // tree-elliptic witness: local_a = w x^d w^{-1}
  std::string local_generator = "s";
  GammaBar gamma_bar;
  int exponent_bound = 2;  // K for the vertex-elliptic m >= 3 case
};

struct MinExponentResult {
  bool resolved = false;
  long long n0 = 0;
  int window = 16;
  std::vector<std::pair<long long, long long>> fcounts;  // (n, f(n))
  long long threshold = 0;                               // m + 1
  bool monotone = true;
};

/// Smallest n in the window with the worst-case separating-fiber count over
/// the displacement |d| n reaching m + 1, so that every link path avoiding
/// the tree direction has length at least (f - 1) pi / m >= pi.
inline MinExponentResult min_exponent_tree_elliptic_type2(int m, long long d,
                                                          int window = 16) {
  if (m < 2) fail(ErrorKind::Precondition, "modulus must be >= 2");
  if (d == 0) fail(ErrorKind::Precondition, "tree-elliptic power must be nonzero");
  MinExponentResult res;
  res.window = window;
  res.threshold = m + 1;
  if (m == 2) {
    // The complete-bipartite case gives exact pi for every power already.
    res.resolved = true;
    res.n0 = 1;
    return res;
  }
  Line axis{OrbitKey{}, Gen::S};
  OrbitKey branch = key_of(normal_form(make_word("t", 1), m));
  OrbitKey on_axis;  // [e]
  long long ad = d < 0 ? -d : d;
  long long prev = 0;
  for (int n = 1; n <= window; ++n) {
    long long disp = ad * n;
    DihedralNF shift = normal_form(make_word("s", disp), m);
    int lo = -2, hi = static_cast<int>(disp) + 2;
    long long f_branch =
        separating_fiber_count(axis, lo, hi, branch, left_translate(shift, branch), m);
    long long f_axis =
        separating_fiber_count(axis, lo, hi, on_axis, left_translate(shift, on_axis), m);
    long long f = std::min(f_branch, f_axis);
    res.fcounts.push_back({n, f});
    if (f < prev) res.monotone = false;
    prev = f;
    if (!res.resolved && f >= res.threshold) {
      res.resolved = true;
      res.n0 = n;
    }
  }
  return res;
}

struct EndpointRecord {
  std::string case_tag;
  int m = 0;
  long long n = 1;   // exponent the record certifies
  long long n0 = 1;
  bool exact_pi = false;
  bool has_tbar = false;
  AngularValue tbar_distance;
  std::vector<std::pair<long long, long long>> fcounts;
  long long fcount_threshold = 0;
  std::vector<std::pair<long long, AngularValue>> k_distances;
  int exponent_bound = 0;
  std::vector<std::string> assumptions;
  std::vector<std::string> notes;

  friend bool operator==(const EndpointRecord&, const EndpointRecord&) = default;
};

struct EndpointResult {
  bool ok = false;
  EndpointRecord record;
  std::string failure_kind;
  std::string message;
};

namespace detail {

inline EndpointResult endpoint_failure(ErrorKind kind, const std::string& msg) {
  EndpointResult r;
  r.failure_kind = error_kind_name(kind);
  r.message = msg;
  return r;
}

inline Gen parse_gen(const std::string& name) {
  if (name == "s") return Gen::S;
  if (name == "t") return Gen::T;
  fail(ErrorKind::Spec, "local generator must be s or t");
}

/// gamma_bar as a quotient-link point (tree-elliptic case, m >= 3).
inline QLinkPoint q_point(const GammaBar& gb, int m) {
  if (gb.kind == "coset0") return QLinkPoint::at_vertex(key_of(normal_form(gb.rep, m)));
  if (gb.kind == "coset1")
    return QLinkPoint::at_line(line_of_element(normal_form(gb.rep, m), parse_gen(gb.gen)));
  if (gb.kind == "edge") {
    if (!(angle_zero() < gb.offset && gb.offset < AngularValue(1, 2 * m)))
      fail(ErrorKind::Spec, "edge offset must lie strictly inside the edge");
    DihedralNF g = normal_form(gb.rep, m);
    return QLinkPoint::on_edge(key_of(g), line_of_element(g, parse_gen(gb.gen)), gb.offset);
  }
  fail(ErrorKind::Spec, "unknown gamma_bar kind");
}

/// gamma_bar as an unquotiented link point (vertex-elliptic case, m >= 3).
inline ULinkPoint u_point(const GammaBar& gb, int m) {
  DihedralNF g = normal_form(gb.rep, m);
  if (gb.kind == "coset0") return u_vertex0(g);
  if (gb.kind == "coset1") return u_vertex1(UpstairsAxis{g, parse_gen(gb.gen)});
  if (gb.kind == "edge") {
    if (!(angle_zero() < gb.offset && gb.offset < AngularValue(1, 2 * m)))
      fail(ErrorKind::Spec, "edge offset must lie strictly inside the edge");
    return u_edge_point(g, UpstairsAxis{g, parse_gen(gb.gen)}, gb.offset);
  }
  fail(ErrorKind::Spec, "unknown gamma_bar kind");
}

/// gamma_bar as an m = 2 link point.
inline Z2LinkPoint z2_point(const GammaBar& gb) {
  AbelianNF ab = abelian_form(gb.rep);
  if (gb.kind == "coset0") return z2_vertex0(ab.p, ab.q);
  Gen g = parse_gen(gb.gen);
  Z2LinkPoint pt = z2_vertex1(g, g == Gen::S ? ab.q : ab.p);
  if (gb.kind == "coset1") return pt;
  if (gb.kind == "edge") {
    if (!(angle_zero() < gb.offset && gb.offset < AngularValue(1, 4)))
      fail(ErrorKind::Spec, "edge offset must lie strictly inside the edge");
    pt.kind = Z2LinkPoint::Kind::EdgePoint;
    pt.p = ab.p;
    pt.q = ab.q;
    pt.offset = gb.offset;
    return pt;
  }
  fail(ErrorKind::Spec, "unknown gamma_bar kind");
}

}  // namespace detail

/// Verify one endpoint of the contact path for the exponent n, dispatching
/// on the contact case; on success the returned record contains every exact
/// quantity needed to re-check the verdict.
inline EndpointResult verify_endpoint(const PresentationGraph& graph,
                                      const EllipticSpec& a, const ContactSpec& c,
                                      long long n) {
  using Case = ContactSpec::Case;
  if (n < 1) return detail::endpoint_failure(ErrorKind::Precondition, "n must be >= 1");
  EndpointResult result;
  EndpointRecord& rec = result.record;
  rec.n = n;

  if (c.kind == Case::InteriorEdgePerp) {
    if (a.kind != EllipticSpec::Kind::TreeElliptic || a.power == 0)
      return detail::endpoint_failure(ErrorKind::CaseMismatch,
                                      "interior-edge contacts need a tree-elliptic element");
    if (!c.perpendicular)
      return detail::endpoint_failure(ErrorKind::CaseMismatch,
                                      "interior-edge contact must be perpendicular");
    rec.case_tag = "interior-edge";
    rec.exact_pi = true;
    rec.n0 = 1;
    rec.assumptions.push_back("gamma realizes the distance to the fixed tree");
    rec.notes.push_back(
        "powers of the element never fix the adjacent triangle, so distinct "
        "translates meet the edge perpendicularly and pairwise at angle pi");
    result.ok = true;
    return result;
  }

  if (c.kind == Case::Type1Contact) {
    if (a.kind != EllipticSpec::Kind::TreeElliptic || a.power == 0)
      return detail::endpoint_failure(ErrorKind::CaseMismatch,
                                      "type-1 contacts need a tree-elliptic element");
    if (c.gamma_bar.kind != "coset0")
      return detail::endpoint_failure(
          ErrorKind::AngleTooSmall,
          "gamma must leave a type-1 vertex through a type-0 direction");
    rec.case_tag = "type1";
    rec.exact_pi = true;
    rec.n0 = 1;
    rec.assumptions.push_back("gamma realizes the distance to the fixed tree");
    if (graph.neighbors(a.generator).empty())
      rec.notes.push_back("isolated generator: the link is a discrete direction set");
    else
      rec.notes.push_back("reduces to the perpendicular interior-edge record");
    result.ok = true;
    return result;
  }

  // Type-2 contacts.
  auto label = graph.label(c.va, c.vb);
  if (!label)
    return detail::endpoint_failure(ErrorKind::Spec, "contact vertex is not an edge of the graph");
  const int m = *label;
  rec.m = m;

  EllipticClass cls = classify_elliptic(c.local_a, m);
  const bool tree = cls.tree_elliptic;
  if ((a.kind == EllipticSpec::Kind::TreeElliptic) != tree)
    return detail::endpoint_failure(ErrorKind::CaseMismatch,
                                    "local classification contradicts the spec kind");
  if (tree) {
    const std::string& mapped =
        c.local_generator == "s" ? c.va : c.vb;
    if (mapped != a.generator)
      return detail::endpoint_failure(ErrorKind::CaseMismatch,
                                      "contact edge does not carry the spec generator");
    if (cls.power != a.power)
      return detail::endpoint_failure(ErrorKind::CaseMismatch,
                                      "local power disagrees with the spec power");
  }

  if (m == 2) {
    AbelianNF ab = abelian_form(c.local_a);
    if (tree) {
      rec.case_tag = "type2-m2-tree";
      Gen axis_gen = ab.q == 0 ? Gen::S : Gen::T;
      if (c.gamma_bar.kind != "coset1" ||
          detail::parse_gen(c.gamma_bar.gen) != other(axis_gen))
        return detail::endpoint_failure(
            ErrorKind::AngleTooSmall,
            "gamma must leave through a coset of the other generator");
      Z2LinkPoint gb = detail::z2_point(c.gamma_bar);
      for (long long k : {1LL, -1LL}) {
        Z2LinkPoint moved = translate_point(k * n * ab.p, k * n * ab.q, gb);
        AngularValue dist = z2_distance(gb, moved);
        rec.k_distances.push_back({k, dist});
        if (dist < angle_pi())
          return detail::endpoint_failure(ErrorKind::AngleTooSmall,
                                          "translate at distance " + dist.to_string());
      }
      rec.exact_pi = true;
      rec.n0 = 1;
      result.ok = true;
      return result;
    }
    rec.case_tag = "type2-m2-vertex";
    if (ab.p == 0 || ab.q == 0)
      return detail::endpoint_failure(ErrorKind::CaseMismatch,
                                      "vertex-elliptic element must move both cosets");
    rec.notes.push_back("the element fixes no link vertex");
    Z2LinkPoint gb = detail::z2_point(c.gamma_bar);
    for (long long k : {1LL, -1LL}) {
      Z2LinkPoint moved = translate_point(k * n * ab.p, k * n * ab.q, gb);
      AngularValue dist = z2_distance(gb, moved);
      rec.k_distances.push_back({k, dist});
      if (dist < angle_pi())
        return detail::endpoint_failure(ErrorKind::AngleTooSmall,
                                        "translate at distance " + dist.to_string());
    }
    rec.exact_pi = true;
    rec.n0 = 1;
    rec.notes.push_back(
        "translates preserve the bipartition and move every coset, so every "
        "nonzero power realizes exactly pi");
    result.ok = true;
    return result;
  }

  // m >= 3.
  if (tree) {
    rec.case_tag = "type2-tree";
    Gen x = detail::parse_gen(c.local_generator);
    long long d = cls.power;
    // Verify the witness: local_a = w x^d w^{-1}.
    Word rebuilt = conjugate(c.local_conjugator, make_word(gen_name(x), d));
    if (!dihedral_equals(c.local_a, rebuilt, m))
      return detail::endpoint_failure(ErrorKind::Spec,
                                      "conjugator witness does not rebuild the element");
    DihedralNF w = normal_form(c.local_conjugator, m);
    Line tbar = line_of_element(w, x);
    QLinkPoint gb = detail::q_point(c.gamma_bar, m);
    AngularValue dT = q_distance(gb, QLinkPoint::at_line(tbar), m);
    rec.has_tbar = true;
    rec.tbar_distance = dT;
    if (dT < AngularValue(1, 2))
      return detail::endpoint_failure(ErrorKind::AngleTooSmall,
                                      "d(gamma, Tbar) = " + dT.to_string() + " < pi/2");
    MinExponentResult me = min_exponent_tree_elliptic_type2(m, d);
    rec.fcounts = me.fcounts;
    rec.fcount_threshold = me.threshold;
    if (!me.resolved)
      return detail::endpoint_failure(ErrorKind::Unresolved,
                                      "no exponent reached the separation threshold in the window");
    rec.n0 = me.n0;
    if (n < me.n0)
      return detail::endpoint_failure(ErrorKind::AngleTooSmall,
                                      "n below the minimal exponent " + std::to_string(me.n0));
    // Spot check the realized translate distances at k = +-1.
    DihedralNF an = normal_form(c.local_a, m).powered(n);
    for (long long k : {1LL, -1LL}) {
      DihedralNF g = k > 0 ? an : an.inverted();
      AngularValue dist = q_distance(gb, translate_point(g, gb), m);
      rec.k_distances.push_back({k, dist});
      if (dist < angle_pi())
        return detail::endpoint_failure(ErrorKind::AngleTooSmall,
                                        "translate at distance " + dist.to_string());
    }
    result.ok = true;
    return result;
  }

  rec.case_tag = "type2-vertex";
  rec.exponent_bound = c.exponent_bound;
  if (c.exponent_bound < 1)
    return detail::endpoint_failure(ErrorKind::Spec, "exponent bound must be >= 1");
  ULinkPoint gb = detail::u_point(c.gamma_bar, m);
  DihedralNF an = normal_form(c.local_a, m).powered(n);
  for (long long k = 1; k <= c.exponent_bound; ++k) {
    for (int sign : {+1, -1}) {
      DihedralNF g = an.powered(sign * k);
      AngularValue dist = u_distance(gb, translate_point(g, gb), m);
      rec.k_distances.push_back({sign * k, dist});
      if (dist < angle_pi())
        return detail::endpoint_failure(
            ErrorKind::AngleTooSmall,
            "translate k=" + std::to_string(sign * k) + " at distance " + dist.to_string());
    }
  }
  rec.n0 = n;  // verified at this exponent
  rec.assumptions.push_back("BoundedExponent(" + std::to_string(c.exponent_bound) +
                            "): angles certified for |k| <= K only");
  rec.notes.push_back("the element fixes no link vertex");
  result.ok = true;
  return result;
}

// ---------------------------------------------------------------------------
// Certificates.
// ---------------------------------------------------------------------------

struct FreenessCertificate {
  std::string format = "freeness-cert/1";
  long long n = 1;
  std::string mode = "exact";  // exact | conditional-on-labels
  std::vector<std::string> assumptions;
  EllipticSpec a, b;
  std::vector<ContactSpec> gamma;  // two endpoint contacts
  std::vector<EndpointRecord> endpoints;
};

namespace detail {

inline void validate_spec(const PresentationGraph& graph, const EllipticSpec& spec) {
  if (spec.kind == EllipticSpec::Kind::TreeElliptic) {
    if (!graph.has_generator(spec.generator))
      fail(ErrorKind::Spec, "unknown generator '" + spec.generator + "'");
    if (spec.power == 0) fail(ErrorKind::Spec, "tree-elliptic power must be nonzero");
    for (const auto& syl : spec.conjugator.syllables)
      if (!graph.has_generator(syl.gen))
        fail(ErrorKind::Spec, "conjugator uses unknown generator '" + syl.gen + "'");
  } else {
    if (!graph.label(spec.va, spec.vb))
      fail(ErrorKind::Spec, "vertex-elliptic spec needs an edge of the graph");
    if (spec.word.empty()) fail(ErrorKind::Spec, "vertex-elliptic word must be nontrivial");
  }
}

/// Fixed trees of tree-elliptic conjugates of standard generators are equal
/// iff the conjugated generators agree, which the dihedral word problem
/// decides when both are supported on one edge; across non-adjacent
/// generators on an all-label-2 graph the trees are disjoint.
inline bool raag_disjoint_trees(const PresentationGraph& graph, const EllipticSpec& a,
                                const EllipticSpec& b) {
  return a.generator != b.generator && !graph.adjacent(a.generator, b.generator);
}

}  // namespace detail

/// Build the two contacts for the all-label-2 builder: through a common
/// neighbor when one exists, otherwise through the base type-0 vertex.
inline std::vector<ContactSpec> build_raag_contacts(const PresentationGraph& graph,
                                                    const EllipticSpec& a,
                                                    const EllipticSpec& b,
                                                    std::vector<std::string>* notes) {
  auto na = graph.neighbors(a.generator);
  auto nb = graph.neighbors(b.generator);
  std::vector<std::string> common;
  std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                        std::back_inserter(common));
  std::vector<ContactSpec> contacts;
  if (!common.empty()) {
    const std::string& mid = common.front();
    for (const EllipticSpec* spec : {&a, &b}) {
      ContactSpec c;
      c.kind = ContactSpec::Case::Type2Contact;
      c.va = std::min(spec->generator, mid);
      c.vb = std::max(spec->generator, mid);
      bool spec_is_s = spec->generator == c.va;
      c.local_generator = spec_is_s ? "s" : "t";
      c.local_a = make_word(c.local_generator, spec->power);
      c.gamma_bar.kind = "coset1";
      c.gamma_bar.gen = spec_is_s ? "t" : "s";
      c.gamma_bar.rep = Word{};
      contacts.push_back(c);
    }
    if (notes)
      notes->push_back("gamma runs through the type-1 vertex of '" + mid +
                       "'; its two directions there are distinct type-2 vertices of a "
                       "complete bipartite link, at angle exactly pi");
    return contacts;
  }
  for (const EllipticSpec* spec : {&a, &b}) {
    ContactSpec c;
    c.kind = ContactSpec::Case::Type1Contact;
    c.gamma_bar.kind = "coset0";
    c.gamma_bar.rep = Word{};
    contacts.push_back(c);
    (void)spec;
  }
  if (notes)
    notes->push_back(
        "gamma passes the base type-0 vertex; with no common neighbor the two "
        "type-1 directions there are at angle >= pi");
  return contacts;
}

inline FreenessCertificate certify_free(const PresentationGraph& graph,
                                        const EllipticSpec& a, const EllipticSpec& b,
                                        std::optional<std::vector<ContactSpec>> gamma,
                                        std::optional<long long> requested_n) {
  detail::validate_spec(graph, a);
  detail::validate_spec(graph, b);
  if (a == b)
    fail(ErrorKind::DisjointnessUnknown, "identical specs share their fixed set");

  FreenessCertificate cert;
  cert.a = a;
  cert.b = b;

  const bool raag = graph.all_labels_two();
  const bool both_tree = a.kind == EllipticSpec::Kind::TreeElliptic &&
                         b.kind == EllipticSpec::Kind::TreeElliptic;
  bool discharged = false;
  if (raag && both_tree) {
    if (a.generator == b.generator)
      fail(ErrorKind::DisjointnessUnknown,
           "conjugate powers of one generator: fixed trees may coincide");
    if (graph.adjacent(a.generator, b.generator))
      fail(ErrorKind::DisjointnessUnknown,
           "adjacent generators fix intersecting standard trees");
    discharged = true;
    cert.assumptions.push_back(
        "discharged: non-adjacent generators have disjoint fixed trees (a common "
        "fixed type-2 vertex would put both in one rank-2 free abelian parabolic "
        "and force adjacency)");
  } else {
    cert.assumptions.push_back(
        "assumed: Fix(a) and Fix(b) are disjoint (outside the all-label-2 "
        "builder this is user-asserted)");
  }
  cert.mode = discharged ? "exact" : "conditional-on-labels";

  std::vector<std::string> builder_notes;
  if (!gamma) {
    if (!(raag && both_tree))
      fail(ErrorKind::Spec, "contact specs are required outside the all-label-2 builder");
    gamma = build_raag_contacts(graph, a, b, &builder_notes);
  }
  if (gamma->size() != 2) fail(ErrorKind::Spec, "exactly two endpoint contacts expected");
  cert.gamma = *gamma;

  // Find the endpoint minimal exponents, then take the maximum.
  long long n = requested_n.value_or(0);
  if (n == 0) {
    n = 1;
    for (int attempt = 0; attempt < 16; ++attempt) {
      auto ra = verify_endpoint(graph, a, cert.gamma[0], n);
      auto rb = verify_endpoint(graph, b, cert.gamma[1], n);
      if (ra.ok && rb.ok) break;
      ++n;
    }
  }
  if (requested_n && *requested_n < 1)
    fail(ErrorKind::Precondition, "the exponent must be a positive integer");

  auto ra = verify_endpoint(graph, a, cert.gamma[0], n);
  if (!ra.ok) fail(ErrorKind::AngleTooSmall, "endpoint a: " + ra.message);
  auto rb = verify_endpoint(graph, b, cert.gamma[1], n);
  if (!rb.ok) fail(ErrorKind::AngleTooSmall, "endpoint b: " + rb.message);

  cert.n = n;
  cert.endpoints = {ra.record, rb.record};
  for (const auto& note : builder_notes) cert.assumptions.push_back("discharged: " + note);
  for (const auto& rec : cert.endpoints)
    for (const auto& as : rec.assumptions)
      if (as.rfind("BoundedExponent", 0) == 0) cert.assumptions.push_back(as);
  return cert;
}

struct CheckReport {
  bool ok = true;
  std::string first_failure;

  void fail_with(const std::string& msg) {
    if (ok) first_failure = msg;
    ok = false;
  }
};

/// Re-verify a certificate from scratch: every recorded quantity must be
/// reproduced bit-exactly by recomputation.
inline CheckReport check_certificate(const PresentationGraph& graph,
                                     const FreenessCertificate& cert) {
  CheckReport report;
  if (cert.format != "freeness-cert/1") {
    report.fail_with("unknown certificate format");
    return report;
  }
  if (cert.n < 1) {
    report.fail_with("exponent must be positive");
    return report;
  }
  if (cert.gamma.size() != 2 || cert.endpoints.size() != 2) {
    report.fail_with("certificate needs two contacts and two endpoint records");
    return report;
  }
  try {
    for (int side = 0; side < 2; ++side) {
      const EllipticSpec& spec = side == 0 ? cert.a : cert.b;
      EndpointResult res = verify_endpoint(graph, spec, cert.gamma[static_cast<size_t>(side)],
                                           cert.n);
      if (!res.ok) {
        report.fail_with("endpoint " + std::to_string(side) + ": " + res.message);
        return report;
      }
      if (!(res.record == cert.endpoints[static_cast<size_t>(side)])) {
        report.fail_with("endpoint " + std::to_string(side) +
                         ": recomputed record differs from the stored one");
        return report;
      }
    }
    // Mode consistency.
    const bool raag = graph.all_labels_two();
    const bool both_tree = cert.a.kind == EllipticSpec::Kind::TreeElliptic &&
                           cert.b.kind == EllipticSpec::Kind::TreeElliptic;
    std::string expected_mode =
        (raag && both_tree && cert.a.generator != cert.b.generator &&
         !graph.adjacent(cert.a.generator, cert.b.generator))
            ? "exact"
            : "conditional-on-labels";
    if (cert.mode != expected_mode) {
      report.fail_with("certificate mode does not match the graph data");
      return report;
    }
  } catch (const Error& e) {
    report.fail_with(e.what());
  }
  return report;
}

// ---------------------------------------------------------------------------
// The ping-pong tree and the loxodromic witness.
// ---------------------------------------------------------------------------

struct PingPongTree {
  long long n = 1;
  int depth = 0;
  struct Node {
    int parent;        // -1 for the root
    std::string label; // generator power appended, e.g. "a^n", "a^-n"
  };
  std::vector<Node> nodes;  // nodes[0] is the root (the base segment)
  size_t edge_count() const { return nodes.size() - 1; }
};

inline PingPongTree pingpong_tree(const std::string& agen, const std::string& bgen,
                                  long long n, int depth) {
  if (n < 1) fail(ErrorKind::Precondition, "certificate exponent must be positive");
  if (depth < 0) fail(ErrorKind::Precondition, "depth must be >= 0");
  PingPongTree tree;
  tree.n = n;
  tree.depth = depth;
  tree.nodes.push_back({-1, ""});
  struct Item {
    int id;
    int letter;  // 0..3: a^n, a^-n, b^n, b^-n; -1 at the root
    int depth;
  };
  std::vector<Item> frontier{{0, -1, 0}};
  auto label_of = [&](int letter) {
    const std::string base = letter < 2 ? agen : bgen;
    const bool inv = letter % 2 == 1;
    return base + "^" + (inv ? "-" : "") + std::to_string(n);
  };
  size_t qi = 0;
  while (qi < frontier.size()) {
    Item it = frontier[qi++];
    if (it.depth == depth) continue;
    for (int letter = 0; letter < 4; ++letter) {
      if (it.letter >= 0 && (letter ^ 1) == it.letter) continue;  // reduced words
      tree.nodes.push_back({it.id, label_of(letter)});
      check_budget(tree.nodes.size(), "ping-pong tree");
      frontier.push_back({static_cast<int>(tree.nodes.size()) - 1, letter, it.depth + 1});
    }
  }
  return tree;
}

/// The element a^n b^n together with oracle checks of its low powers in the
/// all-label-2 mode; per the construction it is not conjugate to a power of
/// a^n or b^n and acts loxodromically.
struct LoxodromicWitness {
  Word word;
  std::string note;
  bool oracle_checked = false;
  int powers_checked = 0;
};

inline LoxodromicWitness loxodromic_witness(const PresentationGraph& graph,
                                            const EllipticSpec& a, const EllipticSpec& b,
                                            long long n) {
  if (n < 1) fail(ErrorKind::Precondition, "certificate exponent must be positive");
  LoxodromicWitness w;
  Word wa = a.kind == EllipticSpec::Kind::TreeElliptic
                ? conjugate(a.conjugator, make_word(a.generator, a.power))
                : a.word;
  Word wb = b.kind == EllipticSpec::Kind::TreeElliptic
                ? conjugate(b.conjugator, make_word(b.generator, b.power))
                : b.word;
  w.word = wa.power(n);
  w.word.append(wb.power(n));
  w.note = "not conjugate to a power of a^n or b^n; acts loxodromically";
  if (graph.all_labels_two()) {
    bool all_nontrivial = true;
    for (int k = 1; k <= 4; ++k)
      if (raag_is_identity(w.word.power(k), graph)) all_nontrivial = false;
    if (!all_nontrivial)
      fail(ErrorKind::StructureViolation, "witness power collapsed in the oracle");
    w.oracle_checked = true;
    w.powers_checked = 4;
  }
  return w;
}

/// Enumerate the reduced words on {a^{+-n}, b^{+-n}} up to the given
/// syllable depth and check them against the all-label-2 oracle; the number
/// of such words of length k is 4 * 3^{k-1}.
struct FreeSweepReport {
  long long words_checked = 0;
  long long trivial_words = 0;
};

inline FreeSweepReport raag_free_sweep(const PresentationGraph& graph,
                                       const EllipticSpec& a, const EllipticSpec& b,
                                       long long n, int depth) {
  Word wa = conjugate(a.conjugator, make_word(a.generator, a.power * n));
  Word wb = conjugate(b.conjugator, make_word(b.generator, b.power * n));
  FreeSweepReport report;
  struct Item {
    Word word;
    int letter;
    int depth;
  };
  std::vector<Item> frontier{{Word{}, -1, 0}};
  size_t qi = 0;
  const Word gens[4] = {wa, wa.inverse(), wb, wb.inverse()};
  while (qi < frontier.size()) {
    Item it = frontier[qi++];
    if (it.depth == depth) continue;
    for (int letter = 0; letter < 4; ++letter) {
      if (it.letter >= 0 && (letter ^ 1) == it.letter) continue;
      Word next = it.word;
      next.append(gens[static_cast<size_t>(letter)]);
      ++report.words_checked;
      if (raag_is_identity(next, graph)) ++report.trivial_words;
      frontier.push_back({std::move(next), letter, it.depth + 1});
    }
  }
  return report;
}

}  // namespace artin
