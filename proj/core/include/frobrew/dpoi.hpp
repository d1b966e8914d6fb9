#pragma once

#include "frobrew/cospan.hpp"
#include "frobrew/diagram.hpp"

#include <string>

namespace frobrew {

/// A rewriting state: a hypergraph together with an ordered interface
/// listing (the nodes the environment may still touch).
struct GraphWithInterface {
  Hypergraph graph;
  Interface iface;

  Word word() const { return interface_word(graph, iface); }
  void validate() const;
};

/// True iff an isomorphism maps one graph onto the other respecting the
/// interface listings positionwise.
bool same_state(const GraphWithInterface& a, const GraphWithInterface& b);

/// A rewrite rule  L <- K -> R  with a discrete interface K, stored as two
/// node listings of a common colour word.
struct DpoRule {
  std::string name;
  Hypergraph lhs;
  Hypergraph rhs;
  Interface iface_in_lhs;  // K -> L, positionwise
  Interface iface_in_rhs;  // K -> R, positionwise

  Word iface_word() const { return interface_word(lhs, iface_in_lhs); }
  void validate() const;  // positionwise colour agreement of the two listings
};

/// Folds both sides of a term rule: the carriers of the folded sides
/// become L and R, their (input . output) interfaces become K.
DpoRule rule_from_diagrams(std::shared_ptr<const Signature> sig, const Rule& r);

/// One validated double-pushout step at a match.
struct RewriteStep {
  DpoRule rule;
  Homomorphism match;                       // L -> G
  Hypergraph context;                       // C
  std::vector<NodeId> rule_iface_in_context;  // K position -> C node
  Homomorphism context_to_input;            // C -> G
  std::vector<NodeId> iface_in_context;     // input interface position -> C node
  GraphWithInterface result;                // (H <- I)
  Homomorphism context_to_result;           // C -> H

  /// Recomputes both pushout squares; throws TypeError on any mismatch.
  void validate(const GraphWithInterface& input) const;
};

/// One pushout complement of a match: the context with the rule interface
/// listed in it and its embedding back into the matched graph.
struct PushoutComplement {
  Hypergraph context;                         // C
  std::vector<NodeId> rule_iface_in_context;  // K position -> C node
  Homomorphism context_to_input;              // C -> G
};

/// Every pushout complement of `match`, in a deterministic order; empty
/// when the gluing conditions fail.  Candidates are built from the kept
/// part of G plus a quotient of K, with every reattachment of boundary
/// tentacles, and a candidate is kept only if recomputing the left
/// pushout reproduces G on the nose.
std::vector<PushoutComplement> pushout_complements(const DpoRule& rule,
                                                   const Hypergraph& g,
                                                   const Homomorphism& match);

/// Builds and validates the step determined by one complement and one
/// factorisation of the input interface through the context.
RewriteStep make_rewrite_step(const DpoRule& rule, const GraphWithInterface& g,
                              const Homomorphism& match,
                              const PushoutComplement& comp,
                              const std::vector<NodeId>& iface_in_context);

/// All rewrite steps of `rule` on `g`: every homomorphism L -> G, every
/// pushout complement of it, every factorisation of the interface through
/// the context.  The step list is deduplicated up to isomorphism of
/// results.
std::vector<RewriteStep> find_rewrite_steps(const DpoRule& rule,
                                            const GraphWithInterface& g);

struct GluingDiagnostics {
  bool ok;
  std::string reason;  // empty when ok
};

/// Constructive check that `match` admits at least one rewrite step:
/// builds the complement candidates and reports the first obstruction
/// (a dangling boundary edge, an identification K cannot express, or an
/// interface node that only deleted material can reach).
GluingDiagnostics dangling_and_identification_check(const DpoRule& rule,
                                                    const GraphWithInterface& g,
                                                    const Homomorphism& match);

GraphWithInterface apply_step(const RewriteStep& step);

/// Rewrites a term: folds it, translates it, runs every rule, and returns
/// the resulting states deduplicated and sorted on a structural key.
std::vector<GraphWithInterface> syntactic_step(std::shared_ptr<const Signature> sig,
                                               const std::vector<Rule>& rules,
                                               const Diagram& a);

std::vector<RewriteStep> all_rewrite_steps(const std::vector<DpoRule>& rules,
                                           const GraphWithInterface& g);

}  // namespace frobrew
