#ifndef IATC_ANALOGY_HPP
#define IATC_ANALOGY_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iatc/term.hpp"

namespace iatc {

// Result of aligning two terms. The skeleton is their most specific common
// shape with placeholder leaves ?1, ?2, ... ; pairs[i] holds the two
// subterms bound by ?i+1 (atoms on both sides in the typical analogy).
// Substituting left sides into the skeleton restores the first term, right
// sides the second. shared_atoms are the atoms that matched in place.
//
// matched counts skeleton nodes that align structurally (including
// atom-to-atom placeholders); max_nodes is the larger of the two terms'
// node counts, so score() is 1 exactly when the terms are equal up to a
// consistent renaming of atoms.
struct AnalogyMapping {
    std::vector<std::pair<Term, Term>> pairs;
    Term skeleton = Term{Atom{""}};
    std::set<std::string> shared_atoms;
    long matched = 0;
    long max_nodes = 0;

    double score() const { return max_nodes ? (double)matched / (double)max_nodes : 1.0; }
};

// First-order anti-unification with a bijection constraint. The terms are
// walked in lockstep: applications agree when category, tag and arity all
// match; anything else becomes a placeholder pair. Alignment fails (returns
// nullopt) when the roots are applications with different tags, or when the
// induced correspondence is not a partial bijection, i.e. some subterm
// would have to map to two different partners (or two to one).
// Variadic arguments align positionally; there is no reordering search.
std::optional<AnalogyMapping> align(const Term& a, const Term& b);

struct UnmappedAtomError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rewrites t by the mapping: any subterm equal to a pair's left side is
// replaced by the right side wholesale, shared atoms pass through, and any
// other atom raises UnmappedAtomError. A default-constructed mapping acts
// as the identity. apply_mapping(align(a, b), a) equals b whenever the
// alignment succeeds.
Term apply_mapping(const AnalogyMapping& m, const Term& t);

} // namespace iatc

#endif
