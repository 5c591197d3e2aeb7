#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "artin/amalgam.hpp"
#include "artin/certifier.hpp"
#include "artin/dot_export.hpp"
#include "artin/json_io.hpp"
#include "artin/linkgeom.hpp"
#include "artin/presentation.hpp"
#include "artin/quasitree.hpp"

namespace artin::cli {

// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
// limit.
inline int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ResourceLimit:
      return 3;
    case ErrorKind::AngleTooSmall:
    case ErrorKind::Unresolved:
    case ErrorKind::DisjointnessUnknown:
    case ErrorKind::StructureViolation:
      return 1;
    default:
      return 2;
  }
}

inline AngularValue parse_radius(std::string text) {
  // Accepts "pi", "2pi", "2 pi", "pi/2", "a/b pi".
  auto strip = [](std::string s) {
    std::string out;
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
  };
  text = strip(text);
  auto pos = text.find("pi");
  if (pos == std::string::npos) fail(ErrorKind::Syntax, "radius must mention pi");
  std::string coeff = text.substr(0, pos) + text.substr(pos + 2);
  if (coeff.empty()) return angle_pi();
  long long num = 1, den = 1;
  auto slash = coeff.find('/');
  try {
    if (slash == std::string::npos) {
      num = std::stoll(coeff);
    } else {
      if (slash > 0) num = std::stoll(coeff.substr(0, slash));
      den = std::stoll(coeff.substr(slash + 1));
    }
  } catch (...) {
    fail(ErrorKind::Syntax, "bad radius coefficient '" + coeff + "'");
  }
  return AngularValue(num, den);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Syntax, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Syntax, "cannot write '" + path + "'");
  out << content;
}

inline void emit(std::ostream& os, const json& j) { os << j.dump(2) << "\n"; }

/// Self-describing help: every subcommand answers --help-json with its
/// option table as JSON.
inline json describe_app(const CLI::App* app) {
  json options = json::array();
  for (const CLI::Option* opt : app->get_options()) {
    options.push_back({{"name", opt->get_name()},
                       {"description", opt->get_description()},
                       {"required", opt->get_required()}});
  }
  return json{{"name", app->get_name()},
              {"description", app->get_description()},
              {"options", options}};
}

inline int run_streams(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact-arithmetic toolkit for two-dimensional Artin groups"};
  app.require_subcommand(1);

  // ---- validate ----
  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "validate a presentation graph");
  validate->add_option("file", validate_file, "graph JSON file")->required();

  // ---- nf ----
  int nf_m = 3;
  std::string nf_word;
  auto* nf = app.add_subcommand("nf", "Garside normal form of a dihedral word");
  nf->add_option("--m", nf_m, "edge label (2 uses the abelian form)")->required();
  nf->add_option("word", nf_word, "word over s, t")->required();

  // ---- eq ----
  int eq_m = 3;
  std::string eq_w1, eq_w2;
  auto* eq = app.add_subcommand("eq", "decide equality of two dihedral words");
  eq->add_option("--m", eq_m, "edge label")->required();
  eq->add_option("w1", eq_w1, "first word")->required();
  eq->add_option("w2", eq_w2, "second word")->required();

  // ---- classify ----
  int cl_m = 3;
  std::string cl_word;
  auto* classify = app.add_subcommand("classify", "elliptic classification in A_st");
  classify->add_option("--m", cl_m, "edge label")->required();
  classify->add_option("word", cl_word, "word over s, t")->required();

  // ---- link ----
  int link_m = 3;
  std::string link_radius = "pi";
  bool link_quotient = false;
  int link_window = 3;
  int link_depth = 3;
  std::string link_dot, link_json, link_graph, link_generator;
  auto* link = app.add_subcommand("link", "build a vertex link ball");
  link->add_option("--m", link_m, "edge label for a type-2 center");
  link->add_option("--radius", link_radius, "angular radius, e.g. 'pi' or '1/2 pi'");
  link->add_flag("--quotient", link_quotient, "build the Delta-quotient");
  link->add_option("--window", link_window, "coset power window");
  link->add_option("--depth", link_depth, "quotient ball depth");
  link->add_option("--dot", link_dot, "write DOT to this file");
  link->add_option("--json", link_json, "write JSON to this file");
  link->add_option("--graph", link_graph, "graph file for a type-1 center");
  link->add_option("--generator", link_generator, "generator for a type-1 center");

  // ---- quasitree ----
  int qt_m = 3, qt_depth = 3;
  std::string qt_dot, qt_json;
  auto* quasitree = app.add_subcommand("quasitree", "build a quasi-tree ball");
  quasitree->add_option("--m", qt_m, "edge label")->required();
  quasitree->add_option("--depth", qt_depth, "atom depth")->required();
  quasitree->add_option("--dot", qt_dot, "write DOT to this file");
  quasitree->add_option("--json", qt_json, "write JSON to this file");

  // ---- augmented ----
  int aug_m = 3, aug_depth = 3;
  bool aug_quotient = false;
  std::string aug_dot, aug_json;
  auto* augmented = app.add_subcommand("augmented", "build an augmented axis graph");
  augmented->add_option("--m", aug_m, "edge label")->required();
  augmented->add_option("--depth", aug_depth, "ball depth")->required();
  augmented->add_flag("--quotient", aug_quotient, "build the quotient variant");
  augmented->add_option("--dot", aug_dot, "write DOT to this file");
  augmented->add_option("--json", aug_json, "write JSON to this file");

  // ---- certify ----
  std::string cert_graph, cert_a, cert_b, cert_gamma, cert_out;
  long long cert_n = 0;
  auto* certify = app.add_subcommand("certify", "emit a freeness certificate");
  certify->add_option("--graph", cert_graph, "presentation graph file")->required();
  certify->add_option("--a", cert_a, "first elliptic spec file")->required();
  certify->add_option("--b", cert_b, "second elliptic spec file")->required();
  certify->add_option("--gamma", cert_gamma, "contact spec file (two contacts)");
  certify->add_option("--n", cert_n, "exponent (0 = search)");
  certify->add_option("--out", cert_out, "certificate output file")->required();

  // ---- check ----
  std::string check_file;
  auto* check = app.add_subcommand("check", "re-verify a freeness certificate");
  check->add_option("file", check_file, "certificate file")->required();

  // ---- pingpong ----
  std::string pp_a = "a", pp_b = "b", pp_dot, pp_json;
  long long pp_n = 1;
  int pp_depth = 2;
  auto* pingpong = app.add_subcommand("pingpong", "enumerate the ping-pong tree");
  pingpong->add_option("--a", pp_a, "first generator name");
  pingpong->add_option("--b", pp_b, "second generator name");
  pingpong->add_option("--n", pp_n, "certificate exponent")->required();
  pingpong->add_option("--depth", pp_depth, "word depth")->required();
  pingpong->add_option("--dot", pp_dot, "write DOT to this file");
  pingpong->add_option("--json", pp_json, "write JSON to this file");

  // ---- oracle-sweep ----
  int sweep_m = 3, sweep_len = 6;
  auto* sweep = app.add_subcommand("oracle-sweep", "Garside vs amalgam agreement sweep");
  sweep->add_option("--m", sweep_m, "edge label")->required();
  sweep->add_option("--len", sweep_len, "maximum word length")->required();

  // Self-describing help.
  const std::vector<CLI::App*> subs = {validate, nf,        eq,      classify, link,
                                       quasitree, augmented, certify, check,    pingpong,
                                       sweep};
  for (const std::string& a : args) {
    if (a == "--help-json") {
      const CLI::App* target = &app;
      if (!args.empty())
        for (CLI::App* sub : subs)
          if (sub->get_name() == args.front()) target = sub;
      emit(out, describe_app(target));
      return 0;
    }
  }

  try {
    std::vector<const char*> argv;
    argv.push_back("artin");
    for (const auto& s : args) argv.push_back(s.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (*validate) {
      PresentationGraph g = parse_graph(read_file(validate_file));
      TwoDimReport two = is_two_dimensional(g);
      json report{{"valid", true},
                  {"generators", g.generators().size()},
                  {"edges", g.edges().size()},
                  {"two_dimensional", to_json(two)}};
      if (two.two_dimensional) {
        report["hyperbolic_type"] = to_json(is_hyperbolic_type(g));
        auto ps = spherical_parabolics(g);
        size_t t1 = 0, t2 = 0;
        for (const auto& p : ps) {
          if (p.kind == ParabolicDescriptor::Kind::Type1) ++t1;
          if (p.kind == ParabolicDescriptor::Kind::Type2) ++t2;
        }
        report["spherical_parabolics"] = {{"type0", 1}, {"type1", t1}, {"type2", t2}};
      }
      emit(out, report);
      return two.two_dimensional ? 0 : 1;
    }

    if (*nf) {
      Word w = parse_word(nf_word);
      if (nf_m == 2) {
        AbelianNF ab = abelian_form(w);
        emit(out, json{{"m", 2}, {"p", ab.p}, {"q", ab.q}});
      } else {
        DihedralNF x = normal_form(w, nf_m);
        json atoms = json::array();
        for (const Atom& a : x.atoms()) atoms.push_back(spell(a));
        emit(out, json{{"m", nf_m}, {"atoms", atoms}, {"delta", x.delta_exp()}});
      }
      return 0;
    }

    if (*eq) {
      bool equal = dihedral_equals(parse_word(eq_w1), parse_word(eq_w2), eq_m);
      emit(out, json{{"equal", equal}});
      return 0;
    }

    if (*classify) {
      EllipticClass cls = classify_elliptic(parse_word(cl_word), cl_m);
      if (cls.tree_elliptic)
        emit(out, json{{"class", "tree-elliptic"},
                       {"generator_class", gen_class_name(cls.cls)},
                       {"power", cls.power}});
      else
        emit(out, json{{"class", "vertex-elliptic"}});
      return 0;
    }

    if (*link) {
      if (!link_generator.empty()) {
        PresentationGraph g = parse_graph(read_file(link_graph));
        LinkGraph lk = build_link_type1(g, link_generator, parse_radius(link_radius),
                                        link_window);
        if (!link_dot.empty()) {
          std::ostringstream ss;
          write_dot(ss, lk);
          write_file(link_dot, ss.str());
        }
        json j = link_to_json(lk);
        if (!link_json.empty()) write_file(link_json, j.dump(2) + "\n");
        emit(out, j);
        return 0;
      }
      if (link_quotient) {
        QuotientLink q = quotient_link(link_m, link_depth);
        if (!link_dot.empty()) {
          std::ostringstream ss;
          write_dot(ss, q);
          write_file(link_dot, ss.str());
        }
        json j = quotient_link_to_json(q);
        if (!link_json.empty()) write_file(link_json, j.dump(2) + "\n");
        emit(out, j);
        return 0;
      }
      LinkGraph lk = build_link_type2(link_m, parse_radius(link_radius), link_window);
      if (!link_dot.empty()) {
        std::ostringstream ss;
        write_dot(ss, lk);
        write_file(link_dot, ss.str());
      }
      json j = link_to_json(lk);
      if (!link_json.empty()) write_file(link_json, j.dump(2) + "\n");
      emit(out, j);
      return 0;
    }

    if (*quasitree) {
      QuasiTreeBall ball = build_quasitree(qt_m, qt_depth);
      TreeOfSimplicesReport rep = check_tree_of_simplices(ball);
      if (!qt_dot.empty()) {
        std::ostringstream ss;
        write_dot(ss, ball);
        write_file(qt_dot, ss.str());
      }
      json j = quasitree_to_json(ball);
      j["structure"] = {{"ok", rep.ok},
                        {"violation", rep.violation},
                        {"maximal_cliques", rep.maximal_cliques}};
      if (!qt_json.empty()) write_file(qt_json, j.dump(2) + "\n");
      emit(out, j);
      return rep.ok ? 0 : 1;
    }

    if (*augmented) {
      AugmentedGraph g = build_augmented(aug_m, aug_depth, aug_quotient);
      if (!aug_dot.empty()) {
        std::ostringstream ss;
        write_dot(ss, g);
        write_file(aug_dot, ss.str());
      }
      json j = augmented_to_json(g);
      if (!aug_json.empty()) write_file(aug_json, j.dump(2) + "\n");
      emit(out, j);
      return 0;
    }

    if (*certify) {
      PresentationGraph g = parse_graph(read_file(cert_graph));
      EllipticSpec a = elliptic_from_json(json::parse(read_file(cert_a)));
      EllipticSpec b = elliptic_from_json(json::parse(read_file(cert_b)));
      std::optional<std::vector<ContactSpec>> gamma;
      if (!cert_gamma.empty()) {
        json jg = json::parse(read_file(cert_gamma));
        std::vector<ContactSpec> contacts;
        for (const auto& c : jg) contacts.push_back(contact_from_json(c));
        gamma = contacts;
      }
      std::optional<long long> n;
      if (cert_n != 0) n = cert_n;
      FreenessCertificate cert = certify_free(g, a, b, gamma, n);
      json j = to_json(cert, g);
      write_file(cert_out, j.dump(2) + "\n");
      emit(out, json{{"mode", cert.mode}, {"n", cert.n}, {"out", cert_out}});
      return 0;
    }

    if (*check) {
      ParsedCertificate parsed = certificate_from_json(json::parse(read_file(check_file)));
      CheckReport rep = check_certificate(parsed.graph, parsed.cert);
      emit(out, json{{"ok", rep.ok}, {"first_failure", rep.first_failure}});
      return rep.ok ? 0 : 1;
    }

    if (*pingpong) {
      PingPongTree t = pingpong_tree(pp_a, pp_b, pp_n, pp_depth);
      if (!pp_dot.empty()) {
        std::ostringstream ss;
        write_dot(ss, t);
        write_file(pp_dot, ss.str());
      }
      json j = pingpong_to_json(t);
      if (!pp_json.empty()) write_file(pp_json, j.dump(2) + "\n");
      emit(out, j);
      return 0;
    }

    if (*sweep) {
      if (sweep_m < 3) fail(ErrorKind::Precondition, "the amalgam oracle needs m >= 3");
      AmalgamContext ctx(sweep_m);
      if (!ctx.relation_holds())
        fail(ErrorKind::StructureViolation, "Tietze translation failed validation");
      long long words = 0, disagreements = 0;
      json first = nullptr;
      std::vector<int> digits;
      for (int len = 0; len <= sweep_len; ++len) {
        digits.assign(static_cast<size_t>(len), 0);
        while (true) {
          Word w;
          for (int d : digits) w.append(d / 2 == 0 ? "s" : "t", d % 2 == 0 ? 1 : -1);
          ++words;
          bool garside = dihedral_is_identity(w, sweep_m);
          bool oracle = amalgam_is_identity(w, sweep_m);
          if (garside != oracle) {
            ++disagreements;
            if (first.is_null())
              first = json{{"word", to_string(w)}, {"garside", garside}, {"amalgam", oracle}};
          }
          int i = 0;
          for (; i < len; ++i) {
            if (++digits[static_cast<size_t>(i)] < 4) break;
            digits[static_cast<size_t>(i)] = 0;
          }
          if (i == len) break;
          if (len == 0) break;
        }
      }
      emit(out, json{{"m", sweep_m},
                     {"max_len", sweep_len},
                     {"words", words},
                     {"disagreements", disagreements},
                     {"first_disagreement", first}});
      return disagreements == 0 ? 0 : 1;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e);
  } catch (const json::exception& e) {
    err << "SyntaxError: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_streams(std::move(args), std::cout, std::cerr);
}

/// Test hook: run with captured output.
struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

inline RunResult run_capture(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_streams(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace artin::cli
