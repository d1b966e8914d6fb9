#include "frobrew/confluence.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace frobrew {

namespace {

constexpr NodeId kNone = std::numeric_limits<NodeId>::max();
constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

// ---------------------------------------------------------------------------
// reachable-state closure

struct StateStore {
  std::vector<GraphWithInterface> states;
  std::vector<std::size_t> depth;
  std::vector<std::size_t> parent;
  std::vector<std::uint64_t> hashes;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;

  std::pair<std::size_t, bool> insert(GraphWithInterface s, std::size_t d,
                                      std::size_t par) {
    std::uint64_t h = structure_hash(s.graph, &s.iface.nodes);
    auto& bucket = buckets[h];
    for (std::size_t i : bucket)
      if (same_state(states[i], s)) return {i, false};
    std::size_t idx = states.size();
    states.push_back(std::move(s));
    depth.push_back(d);
    parent.push_back(par);
    hashes.push_back(h);
    bucket.push_back(idx);
    return {idx, true};
  }
};

struct Closure {
  StateStore store;
  std::vector<bool> reducible;  // parallel to store.states
  bool complete = true;
};

Closure close_reachable(const GraphWithInterface& start,
                        const std::vector<DpoRule>& rules,
                        std::optional<std::size_t> bound) {
  Closure c;
  c.store.insert(start, 0, kNoParent);
  std::size_t next = 0;
  while (next < c.store.states.size()) {
    std::size_t cur = next++;
    auto steps = all_rewrite_steps(rules, c.store.states[cur]);
    c.reducible.push_back(!steps.empty());
    if (bound && c.store.depth[cur] >= *bound) {
      if (!steps.empty()) c.complete = false;
      continue;
    }
    for (auto& s : steps)
      c.store.insert(std::move(s.result), c.store.depth[cur] + 1, cur);
  }
  return c;
}

std::vector<GraphWithInterface> chain_to(const StateStore& store, std::size_t idx) {
  std::vector<GraphWithInterface> chain;
  for (std::size_t i = idx; store.parent[i] != kNoParent; i = store.parent[i])
    chain.push_back(store.states[i]);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

struct JoinOutcome {
  std::optional<JoinabilityCertificate> cert;
  bool exact;  // both searches closed; no certificate then means not joinable
};

JoinOutcome join_search(const CriticalPair& p, const std::vector<DpoRule>& rules,
                        std::optional<std::size_t> bound) {
  Closure a = close_reachable(p.result1(), rules, bound);
  Closure b = close_reachable(p.result2(), rules, bound);

  std::unordered_map<std::uint64_t, std::vector<std::size_t>> b_index;
  for (std::size_t j = 0; j < b.store.states.size(); ++j)
    b_index[b.store.hashes[j]].push_back(j);

  for (std::size_t i = 0; i < a.store.states.size(); ++i) {
    auto it = b_index.find(a.store.hashes[i]);
    if (it == b_index.end()) continue;
    for (std::size_t j : it->second)
      if (same_state(a.store.states[i], b.store.states[j])) {
        JoinabilityCertificate cert{a.store.states[i], chain_to(a.store, i),
                                    chain_to(b.store, j)};
        return {std::move(cert), a.complete && b.complete};
      }
  }
  return {std::nullopt, a.complete && b.complete};
}

// ---------------------------------------------------------------------------
// overlap enumeration
//
// Every gluing S of L1 + L2 arises from a choice of colour-homogeneous
// node partition followed by a partition of label-equal edges whose
// endpoint lists already agree under the node merge.  Partitions are
// walked as restricted growth strings so each arises exactly once.

void for_each_constrained_partition(
    std::size_t n, const std::function<bool(std::uint32_t, std::uint32_t)>& may_join,
    const std::function<void(const std::vector<std::uint32_t>&)>& emit) {
  std::vector<std::uint32_t> rgs(n, 0);
  std::vector<std::uint32_t> leader;  // block -> first element
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      emit(rgs);
      return;
    }
    for (std::uint32_t b = 0; b < leader.size(); ++b) {
      if (!may_join(static_cast<std::uint32_t>(i), leader[b])) continue;
      rgs[i] = b;
      rec(i + 1);
    }
    rgs[i] = static_cast<std::uint32_t>(leader.size());
    leader.push_back(static_cast<std::uint32_t>(i));
    rec(i + 1);
    leader.pop_back();
  };
  rec(0);
}

Partition partition_from_rgs(const std::vector<std::uint32_t>& rgs) {
  std::uint32_t nblocks = 0;
  for (std::uint32_t b : rgs) nblocks = std::max(nblocks, b + 1);
  Partition blocks(nblocks);
  for (std::uint32_t i = 0; i < rgs.size(); ++i) blocks[rgs[i]].push_back(i);
  return blocks;
}

// The gluing maps of a candidate configuration force any isomorphism to
// another one, so equivalence is a finite chase rather than a search.
bool config_equivalent(const CriticalPair& p, const CriticalPair& q) {
  if (p.s.node_count() != q.s.node_count() || p.s.edge_count() != q.s.edge_count())
    return false;

  std::vector<NodeId> phi(p.s.node_count(), kNone);
  std::vector<EdgeId> phie(p.s.edge_count(), kNone);
  auto bind = [](std::vector<std::uint32_t>& table, std::uint32_t from,
                 std::uint32_t to) {
    if (table[from] == kNone) {
      table[from] = to;
      return true;
    }
    return table[from] == to;
  };
  for (NodeId x = 0; x < p.f1.source.node_count(); ++x)
    if (!bind(phi, p.f1.node_map[x], q.f1.node_map[x])) return false;
  for (NodeId x = 0; x < p.f2.source.node_count(); ++x)
    if (!bind(phi, p.f2.node_map[x], q.f2.node_map[x])) return false;
  for (EdgeId e = 0; e < p.f1.source.edge_count(); ++e)
    if (!bind(phie, p.f1.edge_map[e], q.f1.edge_map[e])) return false;
  for (EdgeId e = 0; e < p.f2.source.edge_count(); ++e)
    if (!bind(phie, p.f2.edge_map[e], q.f2.edge_map[e])) return false;

  // Joint surjectivity makes the chase total; it must also be bijective
  // and structure-preserving.
  std::vector<bool> node_hit(q.s.node_count(), false), edge_hit(q.s.edge_count(), false);
  for (NodeId n = 0; n < p.s.node_count(); ++n) {
    if (phi[n] == kNone || node_hit[phi[n]]) return false;
    node_hit[phi[n]] = true;
  }
  for (EdgeId e = 0; e < p.s.edge_count(); ++e) {
    if (phie[e] == kNone || edge_hit[phie[e]]) return false;
    edge_hit[phie[e]] = true;
  }
  if (!Homomorphism{p.s, q.s, phi, phie}.is_valid()) return false;

  // The contexts must correspond as well: the interface listings and the
  // embeddings into S force the map completely.
  auto contexts_correspond = [&](const RewriteStep& a, const RewriteStep& b) {
    const Hypergraph& ca = a.context;
    const Hypergraph& cb = b.context;
    if (ca.node_count() != cb.node_count() || ca.edge_count() != cb.edge_count())
      return false;

    std::vector<NodeId> psi(ca.node_count(), kNone);
    for (std::size_t t = 0; t < a.rule_iface_in_context.size(); ++t)
      if (!bind(psi, a.rule_iface_in_context[t], b.rule_iface_in_context[t]))
        return false;

    std::vector<bool> b_is_block(cb.node_count(), false);
    for (NodeId y : b.rule_iface_in_context) b_is_block[y] = true;
    std::vector<NodeId> b_kept_at(q.s.node_count(), kNone);
    for (NodeId y = 0; y < cb.node_count(); ++y)
      if (!b_is_block[y]) b_kept_at[b.context_to_input.node_map[y]] = y;

    for (NodeId y = 0; y < ca.node_count(); ++y) {
      if (psi[y] != kNone) continue;
      NodeId partner = b_kept_at[phi[a.context_to_input.node_map[y]]];
      if (partner == kNone) return false;
      psi[y] = partner;
    }
    std::vector<bool> hit(cb.node_count(), false);
    for (NodeId y = 0; y < ca.node_count(); ++y) {
      if (psi[y] == kNone || hit[psi[y]]) return false;
      hit[psi[y]] = true;
    }
    for (NodeId y = 0; y < ca.node_count(); ++y)
      if (b.context_to_input.node_map[psi[y]] != phi[a.context_to_input.node_map[y]])
        return false;

    // Context edges sit bijectively over the edges left alone by the
    // match, so the edge part is forced through phi.
    std::vector<EdgeId> b_edge_at(q.s.edge_count(), kNone);
    for (EdgeId e = 0; e < cb.edge_count(); ++e)
      b_edge_at[b.context_to_input.edge_map[e]] = e;
    std::vector<EdgeId> psie(ca.edge_count(), kNone);
    for (EdgeId e = 0; e < ca.edge_count(); ++e) {
      EdgeId partner = b_edge_at[phie[a.context_to_input.edge_map[e]]];
      if (partner == kNone) return false;
      psie[e] = partner;
    }
    return Homomorphism{ca, cb, psi, psie}.is_valid();
  };
  return contexts_correspond(p.step1, q.step1) &&
         contexts_correspond(p.step2, q.step2);
}

struct PairKey {
  std::string r1, r2;
  std::size_t nodes, edges;
  std::uint64_t s_hash, h1_hash, h2_hash;

  bool operator<(const PairKey& o) const {
    if (r1 != o.r1) return r1 < o.r1;
    if (r2 != o.r2) return r2 < o.r2;
    if (nodes != o.nodes) return nodes < o.nodes;
    if (edges != o.edges) return edges < o.edges;
    if (s_hash != o.s_hash) return s_hash < o.s_hash;
    if (h1_hash != o.h1_hash) return h1_hash < o.h1_hash;
    return h2_hash < o.h2_hash;
  }
};

PairKey key_of(const CriticalPair& p) {
  return {p.rule1.name,
          p.rule2.name,
          p.s.node_count(),
          p.s.edge_count(),
          structure_hash(p.s, &p.j_in_s),
          structure_hash(p.result1().graph, &p.result1().iface.nodes),
          structure_hash(p.result2().graph, &p.result2().iface.nodes)};
}

void pairs_of_rule_pair(const DpoRule& r1, const DpoRule& r2,
                        std::vector<CriticalPair>& out) {
  CoproductResult cp = coproduct(r1.lhs, r2.lhs);
  const Hypergraph& both = cp.graph;
  std::vector<CriticalPair> bucket;

  for_each_constrained_partition(
      both.node_count(),
      [&](std::uint32_t i, std::uint32_t leader) {
        return both.colour(i) == both.colour(leader);
      },
      [&](const std::vector<std::uint32_t>& node_rgs) {
        // Edges may merge only when their label and merged endpoints agree.
        auto edges_congruent = [&](std::uint32_t i, std::uint32_t leader) {
          const HyperEdge& a = both.edges[i];
          const HyperEdge& b = both.edges[leader];
          if (a.op != b.op) return false;
          for (std::size_t t = 0; t < a.sources.size(); ++t)
            if (node_rgs[a.sources[t]] != node_rgs[b.sources[t]]) return false;
          for (std::size_t t = 0; t < a.targets.size(); ++t)
            if (node_rgs[a.targets[t]] != node_rgs[b.targets[t]]) return false;
          return true;
        };
        for_each_constrained_partition(
            both.edge_count(), edges_congruent,
            [&](const std::vector<std::uint32_t>& edge_rgs) {
              QuotientResult q = quotient(both, partition_from_rgs(node_rgs),
                                          partition_from_rgs(edge_rgs));
              Homomorphism f1 = compose(cp.into_left, q.projection);
              Homomorphism f2 = compose(cp.into_right, q.projection);

              auto comps1 = pushout_complements(r1, q.graph, f1);
              if (comps1.empty()) return;
              auto comps2 = pushout_complements(r2, q.graph, f2);
              if (comps2.empty()) return;

              std::vector<bool> n1(q.graph.node_count(), false);
              std::vector<bool> e1(q.graph.edge_count(), false);
              for (NodeId n : f1.node_map) n1[n] = true;
              for (EdgeId e : f1.edge_map) e1[e] = true;
              bool disjoint = true;
              for (NodeId n : f2.node_map)
                if (n1[n]) disjoint = false;
              for (EdgeId e : f2.edge_map)
                if (e1[e]) disjoint = false;

              for (const auto& c1 : comps1)
                for (const auto& c2 : comps2) {
                  PullbackResult pb =
                      pullback(c1.context_to_input, c2.context_to_input);
                  if (!pb.graph.discrete())
                    throw std::logic_error(
                        "overlap boundary came out non-discrete; impossible "
                        "for rules with discrete interfaces");

                  std::vector<NodeId> j_in_s;
                  for (NodeId jn = 0; jn < pb.graph.node_count(); ++jn)
                    j_in_s.push_back(
                        c1.context_to_input.node_map[pb.to_left.node_map[jn]]);

                  GraphWithInterface state{q.graph, Interface{j_in_s}};
                  CriticalPair pair{
                      r1,
                      r2,
                      q.graph,
                      f1,
                      f2,
                      pb.graph,
                      pb.to_left,
                      pb.to_right,
                      j_in_s,
                      make_rewrite_step(r1, state, f1, c1, pb.to_left.node_map),
                      make_rewrite_step(r2, state, f2, c2, pb.to_right.node_map),
                      disjoint};

                  bool fresh = true;
                  for (const auto& seen : bucket)
                    if (config_equivalent(pair, seen)) {
                      fresh = false;
                      break;
                    }
                  if (fresh) bucket.push_back(std::move(pair));
                }
            });
      });

  for (auto& p : bucket) out.push_back(std::move(p));
}

}  // namespace

void CriticalPair::validate() const {
  f1.validate();
  f2.validate();
  if (!(f1.target == s) || !(f2.target == s) || !(f1.source == rule1.lhs) ||
      !(f2.source == rule2.lhs))
    throw TypeError("critical pair matches do not fit the overlap");

  std::vector<bool> node_hit(s.node_count(), false), edge_hit(s.edge_count(), false);
  for (NodeId n : f1.node_map) node_hit[n] = true;
  for (NodeId n : f2.node_map) node_hit[n] = true;
  for (EdgeId e : f1.edge_map) edge_hit[e] = true;
  for (EdgeId e : f2.edge_map) edge_hit[e] = true;
  for (bool h : node_hit)
    if (!h) throw TypeError("critical pair matches are not jointly surjective on nodes");
  for (bool h : edge_hit)
    if (!h) throw TypeError("critical pair matches are not jointly surjective on edges");

  if (!j.discrete())
    throw std::logic_error("critical pair boundary is not discrete");

  PullbackResult pb = pullback(step1.context_to_input, step2.context_to_input);
  if (!(pb.graph == j) || pb.to_left.node_map != j_to_c1.node_map ||
      pb.to_right.node_map != j_to_c2.node_map)
    throw TypeError("stored boundary is not the pullback of the contexts");
  for (std::size_t i = 0; i < j_in_s.size(); ++i)
    if (step1.context_to_input.node_map[j_to_c1.node_map[i]] != j_in_s[i])
      throw TypeError("boundary listing does not commute into the overlap");

  GraphWithInterface state = overlap_state();
  step1.validate(state);
  step2.validate(state);
}

std::vector<CriticalPair> enumerate_critical_pairs(const std::vector<DpoRule>& rules) {
  for (const auto& r : rules) r.validate();
  for (std::size_t i = 1; i < rules.size(); ++i)
    if (!(*rules[i].lhs.sig == *rules[0].lhs.sig))
      throw TypeError("rules use different signatures");

  std::vector<CriticalPair> pairs;
  for (const auto& r1 : rules)
    for (const auto& r2 : rules) pairs_of_rule_pair(r1, r2, pairs);

  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const CriticalPair& a, const CriticalPair& b) {
                     return key_of(a) < key_of(b);
                   });
  return pairs;
}

std::optional<JoinabilityCertificate> is_joinable(const CriticalPair& p,
                                                  const std::vector<DpoRule>& rules,
                                                  std::optional<std::size_t> bound) {
  return join_search(p, rules, bound).cert;
}

ConfluenceReport check_confluence(const std::vector<DpoRule>& rules,
                                  std::optional<std::size_t> bound,
                                  bool assert_terminating, bool keep_disjoint) {
  if (!bound && !assert_terminating)
    throw std::invalid_argument(
        "confluence check needs a step bound or an asserted termination claim");

  ConfluenceReport report;
  for (auto& p : enumerate_critical_pairs(rules)) {
    if (p.disjoint && !keep_disjoint) continue;
    if (!p.j.discrete())
      throw std::logic_error("critical pair boundary is not discrete");
    report.pairs.push_back(std::move(p));
  }

  // With termination asserted the search closes exhaustively and every
  // answer is exact; under a bare bound a missing meet is only negative
  // when the search closed anyway.
  std::optional<std::size_t> effective = assert_terminating ? std::nullopt : bound;
  bool any_inconclusive = false;
  std::optional<std::size_t> failing;
  for (std::size_t i = 0; i < report.pairs.size(); ++i) {
    JoinOutcome out = join_search(report.pairs[i], rules, effective);
    if (!out.cert) {
      if (out.exact) {
        if (!failing) failing = i;
      } else {
        any_inconclusive = true;
      }
    }
    report.certificates.push_back(std::move(out.cert));
  }

  if (failing) {
    report.verdict = Verdict::NotConfluent;
    report.failing_pair = failing;
  } else if (any_inconclusive) {
    report.verdict = Verdict::Inconclusive;
  } else {
    report.verdict = Verdict::Confluent;
  }
  return report;
}

NormalFormsResult normal_forms(const GraphWithInterface& g,
                               const std::vector<DpoRule>& rules,
                               std::optional<std::size_t> bound) {
  Closure c = close_reachable(g, rules, bound);
  NormalFormsResult result;
  result.complete = c.complete;
  for (std::size_t i = 0; i < c.store.states.size(); ++i)
    if (!c.reducible[i]) result.forms.push_back(c.store.states[i]);
  return result;
}

}  // namespace frobrew
