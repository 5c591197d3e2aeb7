#pragma once

#include <string>
#include <vector>

#include "artin/errors.hpp"
#include "artin/presentation.hpp"
#include "artin/words.hpp"

namespace artin {

/// Normal form in a right-angled Artin group (all edge labels 2), via the
/// complete rewriting system: merge adjacent same-generator syllables and
/// swap adjacent commuting syllables into the generator order of the input
/// graph (shortlex; determinism over cleverness).
struct RaagNF {
  std::vector<WordSyllable> syllables;

  bool is_identity() const { return syllables.empty(); }

  friend bool operator==(const RaagNF&, const RaagNF&) = default;
};

inline RaagNF raag_normal_form(const Word& w, const PresentationGraph& g) {
  for (const auto& [key, m] : g.edges())
    if (m != 2) fail(ErrorKind::Mode, "RAAG normal form needs all labels equal to 2");
  for (const auto& s : w.syllables)
    if (!g.has_generator(s.gen))
      fail(ErrorKind::Validation, "word uses unknown generator '" + s.gen + "'");

  std::vector<WordSyllable> v = w.syllables;
  bool changed = true;
  while (changed) {
    changed = false;
    // Merge pass.
    for (size_t i = 0; i + 1 < v.size();) {
      if (v[i].gen == v[i + 1].gen) {
        v[i].exp += v[i + 1].exp;
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        if (v[i].exp == 0) v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        if (i > 0) --i;
      } else {
        ++i;
      }
    }
    // Bubble pass: move commuting syllables into graph order.
    for (size_t i = 0; i + 1 < v.size(); ++i) {
      if (v[i].gen != v[i + 1].gen && g.adjacent(v[i].gen, v[i + 1].gen) &&
          g.generator_index(v[i + 1].gen) < g.generator_index(v[i].gen)) {
        std::swap(v[i], v[i + 1]);
        changed = true;
      }
    }
  }
  return RaagNF{std::move(v)};
}

inline bool raag_is_identity(const Word& w, const PresentationGraph& g) {
  return raag_normal_form(w, g).is_identity();
}

inline bool raag_equals(const Word& x, const Word& y, const PresentationGraph& g) {
  Word probe = x;
  probe.append(y.inverse());
  return raag_is_identity(probe, g);
}

}  // namespace artin
