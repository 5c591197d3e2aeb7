#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "artin/errors.hpp"
#include "artin/words.hpp"

namespace artin {

/// The two standard generators of a dihedral Artin group A_st.
enum class Gen : unsigned char { S = 0, T = 1 };

inline Gen other(Gen g) { return g == Gen::S ? Gen::T : Gen::S; }
inline char gen_char(Gen g) { return g == Gen::S ? 's' : 't'; }
inline std::string gen_name(Gen g) { return g == Gen::S ? "s" : "t"; }

/// An atom: the positive alternating word of the given length starting with
/// `start`. Valid lengths are 1..m-1; length m would be the Garside element.
struct Atom {
  Gen start;
  int len;

  Gen last() const { return (len % 2 == 1) ? start : other(start); }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom& a, const Atom& b) {
    if (auto c = a.len <=> b.len; c != 0) return c;
    return static_cast<int>(a.start) <=> static_cast<int>(b.start);
  }
};

inline std::string spell(const Atom& a) {
  std::string s;
  Gen g = a.start;
  for (int i = 0; i < a.len; ++i) {
    s += gen_char(g);
    g = other(g);
  }
  return s;
}

/// Garside normal form m_1 ... m_k Delta^ell of an element of the dihedral
/// Artin group with modulus m >= 3. The atom sequence is left-weighted: the
/// last letter of each atom equals the first letter of the next. Two elements
/// are equal iff their normal forms agree field-wise.
class DihedralNF {
public:
  explicit DihedralNF(int m) : m_(m) {
    if (m < 3) fail(ErrorKind::Precondition, "Garside form needs modulus >= 3");
  }

  static DihedralNF from_word(const Word& w, int m) {
    DihedralNF nf(m);
    for (const auto& letter : flatten(w)) {
      Gen g;
      if (letter.gen == "s") g = Gen::S;
      else if (letter.gen == "t") g = Gen::T;
      else fail(ErrorKind::Precondition,
                "dihedral words use generators s, t; got '" + letter.gen + "'");
      nf.append_letter(g, letter.sign);
    }
    return nf;
  }

  static DihedralNF from_parts(std::vector<Atom> atoms, long long delta_exp, int m) {
    DihedralNF nf(m);
    for (size_t i = 0; i < atoms.size(); ++i) {
      const Atom& a = atoms[i];
      if (a.len < 1 || a.len >= m) fail(ErrorKind::Validation, "atom length out of range");
      if (i + 1 < atoms.size() && a.last() != atoms[i + 1].start)
        fail(ErrorKind::Validation, "atom sequence is not left-weighted");
    }
    nf.atoms_ = std::move(atoms);
    nf.delta_ = delta_exp;
    return nf;
  }

  int modulus() const { return m_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  long long delta_exp() const { return delta_; }
  bool is_identity() const { return atoms_.empty() && delta_ == 0; }

  friend bool operator==(const DihedralNF& a, const DihedralNF& b) {
    return a.m_ == b.m_ && a.delta_ == b.delta_ && a.atoms_ == b.atoms_;
  }

  /// Image under the abelianization map sending both generators to 1.
  long long abelianization() const {
    long long total = static_cast<long long>(m_) * delta_;
    for (const Atom& a : atoms_) total += a.len;
    return total;
  }

  /// Right-multiply by a single generator letter.
  void append_letter(Gen g, int sign) {
    if (sign > 0) {
      push_atom(twisted(Atom{g, 1}, delta_));
    } else {
      // g^{-1} = Delta^{-1} (Delta g^{-1}); Delta g^{-1} is the complement
      // atom u of length m-1 with u g = Delta.
      Atom u{(m_ % 2 == 1) ? g : other(g), m_ - 1};
      --delta_;
      push_atom(twisted(u, delta_));
    }
  }

  /// Right-multiply by the element represented by a single atom.
  void append_atom(const Atom& a) { push_atom(twisted(a, delta_)); }

  DihedralNF multiplied(const DihedralNF& rhs) const {
    if (m_ != rhs.m_) fail(ErrorKind::ModulusMismatch, "cannot multiply across moduli");
    DihedralNF out = *this;
    for (const Atom& a : rhs.atoms_) out.append_atom(a);
    out.delta_ += rhs.delta_;
    return out;
  }

  DihedralNF inverted() const {
    DihedralNF out(m_);
    out.delta_ = -delta_;
    for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) {
      // m^{-1} = Delta^{-1} u with u m = Delta.
      --out.delta_;
      out.push_atom(out.twisted(complement(*it), out.delta_));
    }
    return out;
  }

  DihedralNF powered(long long k) const {
    DihedralNF base = k >= 0 ? *this : inverted();
    DihedralNF out(m_);
    long long reps = k >= 0 ? k : -k;
    for (long long i = 0; i < reps; ++i) out = out.multiplied(base);
    return out;
  }

  /// Conjugation by the Garside element: Delta^{-1} x Delta. Swaps the two
  /// generators letterwise when m is odd and is the identity when m is even.
  DihedralNF tau() const {
    DihedralNF out = *this;
    if (m_ % 2 == 1)
      for (Atom& a : out.atoms_) a.start = other(a.start);
    return out;
  }

  /// Spell the element back out as a word in s, t.
  Word to_word() const {
    Word w;
    for (const Atom& a : atoms_) {
      Gen g = a.start;
      for (int i = 0; i < a.len; ++i) {
        w.append(gen_name(g), 1);
        g = other(g);
      }
    }
    if (delta_ != 0) {
      const int sign = delta_ > 0 ? 1 : -1;
      for (long long rep = 0; rep < (delta_ > 0 ? delta_ : -delta_); ++rep) {
        if (sign > 0) {
          Gen g = Gen::S;
          for (int i = 0; i < m_; ++i) {
            w.append(gen_name(g), 1);
            g = other(g);
          }
        } else {
          // Delta^{-1} spelled from the rep starting with s, reversed.
          Gen g = (m_ % 2 == 1) ? Gen::S : Gen::T;
          for (int i = 0; i < m_; ++i) {
            w.append(gen_name(g), -1);
            g = other(g);
          }
        }
      }
    }
    return w;
  }

  std::string to_string() const {
    std::string out;
    for (const Atom& a : atoms_) {
      if (!out.empty()) out += '.';
      out += spell(a);
    }
    if (out.empty() && delta_ == 0) return "1";
    if (delta_ != 0) {
      if (!out.empty()) out += '.';
      out += "D";
      if (delta_ != 1) out += "^" + std::to_string(delta_);
    }
    return out;
  }

  /// The atom u with u a = Delta.
  Atom complement(const Atom& a) const {
    Gen w_start = (m_ % 2 == 1) ? a.last() : other(a.last());
    return Atom{w_start, m_ - a.len};
  }

  Atom twisted(Atom a, long long power) const {
    if (m_ % 2 == 1 && (power % 2 != 0)) a.start = other(a.start);
    return a;
  }

private:
  // Append an already delta-adjusted atom and restore left-weightedness by
  // sliding letters leftward to a fixed point.
  void push_atom(Atom a) {
    atoms_.push_back(a);
    size_t j = atoms_.size() - 1;
    while (j > 0 && j < atoms_.size()) {
      const Atom& left = atoms_[j - 1];
      const Atom& right = atoms_[j];
      if (left.last() == right.start) break;  // pair is left-weighted
      const int n = left.len + right.len;     // merged alternating length
      const Gen start = left.start;
      if (n < m_) {
        atoms_[j - 1] = Atom{start, n};
        atoms_.erase(atoms_.begin() + static_cast<std::ptrdiff_t>(j));
      } else if (n == m_) {
        // The pair is exactly Delta; delete it and push Delta to the right.
        atoms_.erase(atoms_.begin() + static_cast<std::ptrdiff_t>(j - 1),
                     atoms_.begin() + static_cast<std::ptrdiff_t>(j + 1));
        for (size_t i = j - 1; i < atoms_.size(); ++i)
          atoms_[i] = twisted(atoms_[i], 1);
        ++delta_;
      } else {
        // Merged word is Delta followed by an alternating tail of length n-m.
        const Gen tail_start = (m_ % 2 == 0) ? start : other(start);
        atoms_[j - 1] = twisted(Atom{tail_start, n - m_}, 1);
        atoms_.erase(atoms_.begin() + static_cast<std::ptrdiff_t>(j));
        for (size_t i = j; i < atoms_.size(); ++i)
          atoms_[i] = twisted(atoms_[i], 1);
        ++delta_;
      }
      if (j == 0) break;
      --j;
    }
  }

  int m_;
  std::vector<Atom> atoms_;
  long long delta_ = 0;
};

inline DihedralNF normal_form(const Word& w, int m) { return DihedralNF::from_word(w, m); }

inline DihedralNF delta_nf(int m, long long exp = 1) {
  return DihedralNF::from_parts({}, exp, m);
}

/// Element s^p t^q of the dihedral group with m = 2 (a free abelian group of
/// rank two); the canonical form is the exponent pair itself.
struct AbelianNF {
  long long p = 0;
  long long q = 0;

  friend bool operator==(const AbelianNF&, const AbelianNF&) = default;
};

inline AbelianNF abelian_form(const Word& w) {
  AbelianNF nf;
  for (const auto& syl : w.syllables) {
    if (syl.gen == "s") nf.p += syl.exp;
    else if (syl.gen == "t") nf.q += syl.exp;
    else fail(ErrorKind::Precondition, "dihedral words use generators s, t");
  }
  return nf;
}

/// Word problem for A_st: m = 2 goes through the abelian form, m >= 3 through
/// the Garside normal form.
inline bool dihedral_equals(const Word& x, const Word& y, int m) {
  if (m < 2) fail(ErrorKind::Precondition, "modulus must be >= 2");
  if (m == 2) return abelian_form(x) == abelian_form(y);
  return normal_form(x, m) == normal_form(y, m);
}

inline bool dihedral_is_identity(const Word& w, int m) {
  return dihedral_equals(w, Word{}, m);
}

}  // namespace artin
