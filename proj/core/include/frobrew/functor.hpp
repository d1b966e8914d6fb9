#pragma once

#include "frobrew/cospan.hpp"
#include "frobrew/diagram.hpp"

namespace frobrew {

/// A function between finite ordinals, kept with its codomain size so
/// cospans of these can be formed and compared.
struct FiniteFunction {
  std::uint32_t domain = 0;
  std::uint32_t codomain = 0;
  std::vector<std::uint32_t> table;  // table[i] < codomain

  void validate() const;

  bool operator==(const FiniteFunction&) const = default;
};

/// The interpretation of terms as cospans, clause by clause:
///   - a generator becomes one edge with fresh endpoint nodes,
///   - identities and crossings become discrete relabellings,
///   - the Frobenius generators become the one-node cospans,
///   - ';' composes by gluing, '+' tensors.
Cospan translate(std::shared_ptr<const Signature> sig, const Diagram& d);

/// Renders a cospan back into a term whose translation is isomorphic to
/// the input.  The carrier is cut into three slices: a left Frobenius
/// layer wiring the input interface onto the nodes, a middle tensor of
/// one generator per edge (padded with identities on all nodes), and a
/// right Frobenius layer wiring nodes to the output interface.
Diagram extract(const Cospan& f);

/// The special case of extraction for discrete carriers: a term built from
/// identities, crossings and the Frobenius generators only.  Interfaces
/// are shuffled so each colour is handled separately, and every carrier
/// node contributes a merge tree followed by a copy tree.
Diagram discrete_to_frobenius(const Cospan& f);

/// cospan_equal on the translations of two terms of equal type; throws
/// TypeError on a type mismatch.  This decides equality of terms in the
/// free hypergraph category (the signature's category under the separable
/// Frobenius structure).  With `pure_sigma` set, both terms must be free
/// of Frobenius generators (std::invalid_argument otherwise); a positive
/// answer is then equality in the plain symmetric monoidal category as
/// well, since the embedding is faithful.
bool faithfulness_probe(std::shared_ptr<const Signature> sig, const Diagram& a,
                        const Diagram& b, bool pure_sigma = false);

}  // namespace frobrew
