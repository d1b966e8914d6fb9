#pragma once

// Independent reference implementations used to cross-check the engine.
// These favour directness over speed: plain enumeration, linear-scan
// deduplication, and validation by explicitly rebuilding the object the
// engine is supposed to have built.

#include "frobrew/confluence.hpp"
#include "frobrew/dpoi.hpp"

#include <optional>
#include <vector>

namespace frobrew::testing {

// Every homomorphism pattern -> host, found by enumerating node maps
// outright and then wiring each pattern edge to the host edges its
// endpoint images allow.
std::vector<Homomorphism> brute_homomorphisms(const Hypergraph& pattern,
                                              const Hypergraph& host);

// Every pushout complement of `match`, found by enumerating all candidate
// contexts with at most |G| + |K| nodes: a partition of the interface
// positions into blocks over their matched nodes, a copy of each untouched
// node, and every reattachment of the leftover edges; a candidate is kept
// when gluing the left side back on reproduces the input graph exactly.
std::vector<PushoutComplement> brute_pushout_complements(const DpoRule& rule,
                                                         const Hypergraph& g,
                                                         const Homomorphism& match);

// True iff the two complements describe the same context over the input:
// an isomorphism of contexts commuting with the interface listings and
// with the embeddings into the matched graph.
bool complement_equivalent(const PushoutComplement& x, const PushoutComplement& y);

// All states reachable from `start`, deduplicated by pairwise isomorphism
// checks; `complete` is false when the state cap cut the walk short.
struct BruteClosure {
  std::vector<GraphWithInterface> states;
  bool complete = false;
};

BruteClosure brute_closure(const GraphWithInterface& start,
                           const std::vector<DpoRule>& rules,
                           std::size_t state_cap);

// Exhaustive joinability: close both sides and intersect.  Yes/no when
// both closures finished, nothing when a cap was hit first.
std::optional<bool> brute_joinable(const GraphWithInterface& a,
                                   const GraphWithInterface& b,
                                   const std::vector<DpoRule>& rules,
                                   std::size_t state_cap);

// Knuth-Bendix by brute force: every overlapping critical pair is closed
// out and intersected.
Verdict brute_confluence_verdict(const std::vector<DpoRule>& rules,
                                 std::size_t state_cap);

}  // namespace frobrew::testing
