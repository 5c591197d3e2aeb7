#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "artin/errors.hpp"
#include "artin/garside.hpp"
#include "artin/words.hpp"

namespace artin {

/// Syllable normal form in an amalgamated product of two abelian groups,
/// with the amalgamated (central) subgroup factored out front.
///
/// For m odd, A_st = <x, y | x^2 = y^m> with x = Delta, y = st; the central
/// subgroup is <x^2>, factor 0 carries x-exponents mod 2 and factor 1 carries
/// y-exponents mod m.
///
/// For m even, A_st = <a, b | [a^{m/2}, b] = 1> with a = st, b = s; the
/// central subgroup is <a^{m/2}>, factor 0 carries a-exponents mod m/2 and
/// factor 1 carries free b-exponents.
struct AmalgamSyllable {
  int factor = 0;        // 0 or 1
  long long exp = 0;     // nonzero; reduced mod the factor order when finite

  friend bool operator==(const AmalgamSyllable&, const AmalgamSyllable&) = default;
};

struct AmalgamNF {
  long long central_exp = 0;
  std::vector<AmalgamSyllable> syllables;

  bool is_identity() const { return central_exp == 0 && syllables.empty(); }

  friend bool operator==(const AmalgamNF&, const AmalgamNF&) = default;
};

class AmalgamContext {
public:
  explicit AmalgamContext(int m) : m_(m) {
    if (m < 3) fail(ErrorKind::Precondition, "amalgam oracle needs m >= 3");
  }

  int modulus() const { return m_; }
  bool odd() const { return m_ % 2 == 1; }

  // Factor order: 0 means infinite cyclic.
  long long factor_order(int factor) const {
    if (odd()) return factor == 0 ? 2 : m_;
    return factor == 0 ? m_ / 2 : 0;
  }

  void append(AmalgamNF& nf, int factor, long long exp) const {
    if (exp == 0) return;
    if (!nf.syllables.empty() && nf.syllables.back().factor == factor) {
      exp += nf.syllables.back().exp;
      nf.syllables.pop_back();
    }
    const long long p = factor_order(factor);
    if (p > 0) {
      long long q = exp / p;
      long long r = exp % p;
      if (r < 0) {
        r += p;
        q -= 1;
      }
      nf.central_exp += q;
      exp = r;
    }
    if (exp != 0) nf.syllables.push_back({factor, exp});
  }

  void append_letter(AmalgamNF& nf, Gen g, int sign) const {
    if (odd()) {
      const long long h = (m_ + 1) / 2;  // s = y^h x^{-1}, t = x y^{1-h}
      if (g == Gen::S) {
        if (sign > 0) {
          append(nf, 1, h);
          append(nf, 0, -1);
        } else {
          append(nf, 0, 1);
          append(nf, 1, -h);
        }
      } else {
        if (sign > 0) {
          append(nf, 0, 1);
          append(nf, 1, 1 - h);
        } else {
          append(nf, 1, h - 1);
          append(nf, 0, -1);
        }
      }
    } else {
      // s = b, t = b^{-1} a
      if (g == Gen::S) {
        append(nf, 1, sign);
      } else if (sign > 0) {
        append(nf, 1, -1);
        append(nf, 0, 1);
      } else {
        append(nf, 0, -1);
        append(nf, 1, 1);
      }
    }
  }

  AmalgamNF image(const Word& w) const {
    AmalgamNF nf;
    for (const auto& letter : flatten(w)) {
      Gen g;
      if (letter.gen == "s") g = Gen::S;
      else if (letter.gen == "t") g = Gen::T;
      else fail(ErrorKind::Precondition, "dihedral words use generators s, t");
      append_letter(nf, g, letter.sign);
    }
    return nf;
  }

  /// Check that both sides of the defining braid relation have the same
  /// image; used to validate the Tietze translation before any sweep.
  bool relation_holds() const {
    Word lhs, rhs;
    Gen g = Gen::S, h = Gen::T;
    for (int i = 0; i < m_; ++i) {
      lhs.append(gen_name(g), 1);
      rhs.append(gen_name(h), 1);
      g = other(g);
      h = other(h);
    }
    return image(lhs) == image(rhs);
  }

private:
  int m_;
};

/// Oracle for the dihedral word problem, independent of the Garside code path.
inline bool amalgam_is_identity(const Word& w, int m) {
  AmalgamContext ctx(m);
  return ctx.image(w).is_identity();
}

// ---------------------------------------------------------------------------
// Conjugacy in the central quotient (a free product of two cyclic groups).
// ---------------------------------------------------------------------------

namespace detail {

/// Reduce syllables in the quotient where the central element is trivial:
/// factor orders (2, m) for m odd and (m/2, infinity) for m even.
inline std::vector<AmalgamSyllable> quotient_syllables(const AmalgamContext& ctx,
                                                       const AmalgamNF& nf) {
  std::vector<AmalgamSyllable> out;
  auto push = [&](int factor, long long exp) {
    if (!out.empty() && out.back().factor == factor) {
      exp += out.back().exp;
      out.pop_back();
    }
    const long long p = ctx.factor_order(factor);
    if (p > 0) exp = ((exp % p) + p) % p;
    if (exp != 0) out.push_back({factor, exp});
  };
  for (const auto& s : nf.syllables) push(s.factor, s.exp);
  return out;
}

inline std::vector<AmalgamSyllable> cyclically_reduce(const AmalgamContext& ctx,
                                                      std::vector<AmalgamSyllable> w) {
  while (w.size() >= 2 && w.front().factor == w.back().factor) {
    long long exp = w.back().exp + w.front().exp;
    const int factor = w.front().factor;
    w.pop_back();
    w.erase(w.begin());
    const long long p = ctx.factor_order(factor);
    if (p > 0) exp = ((exp % p) + p) % p;
    if (exp != 0) w.insert(w.begin(), {factor, exp});
  }
  return w;
}

inline bool conjugate_in_quotient(const AmalgamContext& ctx, const Word& u,
                                  const Word& v) {
  auto cu = cyclically_reduce(ctx, quotient_syllables(ctx, ctx.image(u)));
  auto cv = cyclically_reduce(ctx, quotient_syllables(ctx, ctx.image(v)));
  if (cu.size() != cv.size()) return false;
  if (cu.empty()) return true;
  if (cu.size() == 1) return cu == cv;  // factors are abelian
  // Cyclically reduced words of length >= 2 are conjugate iff one is a
  // cyclic rotation of the other.
  for (size_t shift = 0; shift < cu.size(); ++shift) {
    bool match = true;
    for (size_t i = 0; i < cu.size() && match; ++i)
      match = cu[(i + shift) % cu.size()] == cv[i];
    if (match) return true;
  }
  return false;
}

}  // namespace detail

/// Generator class for conjugacy results: for m odd the standard generators
/// are conjugate to each other, so the class is joint.
enum class GenClass { S, T, Joint };

inline std::string gen_class_name(GenClass c) {
  switch (c) {
    case GenClass::S: return "s";
    case GenClass::T: return "t";
    case GenClass::Joint: return "s~t";
  }
  return "?";
}

struct GeneratorPower {
  GenClass cls;
  long long power;
};

/// Decide whether w is conjugate in A_st to a nontrivial power of a standard
/// generator. Works in the central quotient (a free product of cyclic groups)
/// and accepts iff additionally the abelianization matches; the kernel is
/// central with nonzero abelianization, so the two checks jointly
/// characterize conjugacy to x^k.
inline std::optional<GeneratorPower> conjugate_to_generator_power(const Word& w, int m) {
  if (m < 3) fail(ErrorKind::Precondition, "use the abelian path for m = 2");
  if (dihedral_is_identity(w, m)) fail(ErrorKind::IdentityInput, "identity has no generator-power class");
  const long long k = abelianization(w);
  if (k == 0) return std::nullopt;
  AmalgamContext ctx(m);
  if (m % 2 == 1) {
    if (detail::conjugate_in_quotient(ctx, w, make_word("s", k)))
      return GeneratorPower{GenClass::Joint, k};
    return std::nullopt;
  }
  if (detail::conjugate_in_quotient(ctx, w, make_word("s", k)))
    return GeneratorPower{GenClass::S, k};
  if (detail::conjugate_in_quotient(ctx, w, make_word("t", k)))
    return GeneratorPower{GenClass::T, k};
  return std::nullopt;
}

/// Elliptic classification of a nontrivial element of the vertex group A_st:
/// tree-elliptic iff conjugate to a nontrivial generator power, otherwise the
/// element fixes only the type-2 vertex itself.
struct EllipticClass {
  bool tree_elliptic = false;
  GenClass cls = GenClass::Joint;  // meaningful when tree_elliptic
  long long power = 0;
};

inline EllipticClass classify_elliptic(const Word& w, int m) {
  if (m < 2) fail(ErrorKind::Precondition, "modulus must be >= 2");
  if (m == 2) {
    AbelianNF nf = abelian_form(w);
    if (nf.p == 0 && nf.q == 0)
      fail(ErrorKind::IdentityInput, "identity element cannot be classified");
    if (nf.q == 0) return {true, GenClass::S, nf.p};
    if (nf.p == 0) return {true, GenClass::T, nf.q};
    return {false, GenClass::Joint, 0};
  }
  auto r = conjugate_to_generator_power(w, m);
  if (r) return {true, r->cls, r->power};
  return {false, GenClass::Joint, 0};
}

/// The word a^{mb} b^{-na} for tree-elliptic specs a = g x^{na} g^{-1} and
/// b = h y^{mb} h^{-1}; with distinct fixed trees the product is
/// vertex-elliptic, which property tests assert via the classifier.
inline Word vertex_elliptic_product(const Word& g, Gen x, long long na,
                                    const Word& h, Gen y, long long mb) {
  if (na == 0 || mb == 0) fail(ErrorKind::Spec, "tree-elliptic powers must be nonzero");
  Word a = conjugate(g, make_word(gen_name(x), na));
  Word b = conjugate(h, make_word(gen_name(y), mb));
  Word out = a.power(mb);
  out.append(b.power(-na));
  return out;
}

/// Enumerate candidate conjugators with at most `bound` atoms (and Garside
/// exponent 0 or 1, which covers all inner automorphisms modulo the center)
/// and return one conjugating w to target if found in that ball.
inline std::optional<Word> brute_conjugacy_search(const Word& w, const Word& target,
                                                  int m, int bound) {
  if (bound < 0) fail(ErrorKind::Precondition, "bound must be >= 0");
  DihedralNF wn = normal_form(w, m);
  DihedralNF tn = normal_form(target, m);
  std::vector<Atom> seq;
  std::optional<Word> found;

  auto try_candidate = [&](long long delta) {
    DihedralNF c = DihedralNF::from_parts(seq, delta, m);
    if (c.multiplied(wn).multiplied(c.inverted()) == tn) {
      found = c.to_word();
      return true;
    }
    return false;
  };

  auto rec = [&](auto&& self, int depth) -> bool {
    if (try_candidate(0) || try_candidate(1)) return true;
    if (depth == bound) return false;
    for (int start = 0; start < 2; ++start) {
      for (int len = 1; len < m; ++len) {
        Atom a{static_cast<Gen>(start), len};
        if (!seq.empty() && seq.back().last() != a.start) continue;
        seq.push_back(a);
        if (self(self, depth + 1)) return true;
        seq.pop_back();
      }
    }
    return false;
  };
  rec(rec, 0);
  return found;
}

}  // namespace artin
