#pragma once

#include "frobrew/dpoi.hpp"

#include <optional>

namespace frobrew {

/// A critical overlap of two rules: a jointly-surjective gluing S of their
/// left-hand sides, rewritten both ways over the boundary J obtained by
/// pulling the two contexts back over S.
struct CriticalPair {
  DpoRule rule1, rule2;
  Hypergraph s;            // the overlap
  Homomorphism f1, f2;     // L1 -> S, L2 -> S, jointly surjective
  Hypergraph j;            // pullback of  C1 -> S <- C2
  Homomorphism j_to_c1;    // J -> C1
  Homomorphism j_to_c2;    // J -> C2
  std::vector<NodeId> j_in_s;  // J node -> S node, both legs composed agree
  RewriteStep step1;       // rule1 applied to (S <- J), context C1
  RewriteStep step2;       // rule2 applied to (S <- J), context C2
  bool disjoint;           // the two matches share no node and no edge of S

  GraphWithInterface overlap_state() const { return {s, Interface{j_in_s}}; }
  const GraphWithInterface& result1() const { return step1.result; }
  const GraphWithInterface& result2() const { return step2.result; }

  /// Rechecks joint surjectivity, the pullback property of J, and both
  /// steps; throws TypeError on any mismatch and std::logic_error when J
  /// fails to be discrete (it cannot, for rules with discrete interfaces).
  void validate() const;
};

/// All critical pairs over every ordered pair of rules, a rule with
/// itself included: every quotient of L1 + L2 along colour-compatible
/// node partitions and congruent label-equal edge partitions whose induced
/// matches both admit rewrite steps.  Deduplicated up to isomorphism of
/// the whole configuration and ordered on a structural key.
std::vector<CriticalPair> enumerate_critical_pairs(const std::vector<DpoRule>& rules);

/// Two step chains leading from the results of a critical pair to a
/// common state, recorded as the successive states after each step; an
/// empty chain means that side's result already is the meeting point.
struct JoinabilityCertificate {
  GraphWithInterface target;  // (W <- J)
  std::vector<GraphWithInterface> seq1, seq2;
};

/// Searches for a common reduct of the pair's two results, breadth first
/// over all rewrite successors with states deduplicated up to
/// interface-respecting isomorphism.  `bound` limits steps per side;
/// an empty bound means exhaustive closure (exact for terminating
/// systems).  Returns nothing when no meeting point was found.
std::optional<JoinabilityCertificate> is_joinable(const CriticalPair& p,
                                                  const std::vector<DpoRule>& rules,
                                                  std::optional<std::size_t> bound);

enum class Verdict { Confluent, NotConfluent, Inconclusive };

struct ConfluenceReport {
  Verdict verdict;
  std::vector<CriticalPair> pairs;  // pairs analysed, after disjoint filtering
  std::vector<std::optional<JoinabilityCertificate>> certificates;  // per pair
  std::optional<std::size_t> failing_pair;  // index of a non-joinable pair
};

/// Knuth-Bendix check: the system is confluent iff every critical pair is
/// joinable.  Termination is the caller's claim: either assert it (the
/// search then closes exhaustively) or supply a step bound, in which case
/// an exhausted bound yields Inconclusive rather than a negative answer.
/// Pairs with disjoint matches are skipped unless `keep_disjoint` is set;
/// they are always joinable.  Throws std::invalid_argument when neither
/// a bound nor the termination assertion is given.
ConfluenceReport check_confluence(const std::vector<DpoRule>& rules,
                                  std::optional<std::size_t> bound,
                                  bool assert_terminating,
                                  bool keep_disjoint = false);

struct NormalFormsResult {
  std::vector<GraphWithInterface> forms;
  bool complete;  // false when the bound cut the search off
};

/// All irreducible states reachable from `g`, deduplicated up to
/// interface-respecting isomorphism.  `bound` limits the step depth; an
/// empty bound closes exhaustively and only terminates on terminating
/// systems.
NormalFormsResult normal_forms(const GraphWithInterface& g,
                               const std::vector<DpoRule>& rules,
                               std::optional<std::size_t> bound);

}  // namespace frobrew
