#include "frobrew/dpoi.hpp"

#include "frobrew/functor.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace frobrew {

namespace {

constexpr NodeId kNone = std::numeric_limits<NodeId>::max();

}  // namespace

void GraphWithInterface::validate() const {
  graph.validate();
  for (NodeId n : iface.nodes)
    if (n >= graph.node_count())
      throw TypeError("interface listing points outside the graph");
}

bool same_state(const GraphWithInterface& a, const GraphWithInterface& b) {
  if (a.iface.size() != b.iface.size()) return false;
  if (!(a.word() == b.word())) return false;
  std::vector<std::pair<NodeId, NodeId>> forced;
  for (std::size_t i = 0; i < a.iface.size(); ++i)
    forced.emplace_back(a.iface[i], b.iface[i]);
  return find_isomorphism(a.graph, b.graph, forced).has_value();
}

void DpoRule::validate() const {
  lhs.validate();
  rhs.validate();
  if (iface_in_lhs.size() != iface_in_rhs.size())
    throw TypeError("rule '" + name + "': interface listings differ in length");
  for (std::size_t i = 0; i < iface_in_lhs.size(); ++i) {
    if (iface_in_lhs[i] >= lhs.node_count() || iface_in_rhs[i] >= rhs.node_count())
      throw TypeError("rule '" + name + "': interface points outside a side");
    if (lhs.colour(iface_in_lhs[i]) != rhs.colour(iface_in_rhs[i]))
      throw TypeError("rule '" + name + "': interface colours disagree between sides");
  }
}

DpoRule rule_from_diagrams(std::shared_ptr<const Signature> sig, const Rule& r) {
  Cospan l = fold_cospan(translate(sig, r.lhs));
  Cospan rr = fold_cospan(translate(sig, r.rhs));
  DpoRule out{r.name, l.carrier, rr.carrier, l.right, rr.right};
  out.validate();
  return out;
}

// ---------------------------------------------------------------------------
// pushout complements
//
// A complement for a match f : L -> G is built from what the match leaves
// behind: the unmatched nodes and edges of G, together with one node per
// block of a partition of the rule interface K (so K -> C may be
// non-injective).  Unmatched edges whose tentacles touch preserved nodes
// must pick a K-block to reattach to; every combination is a candidate.
// A candidate counts only if gluing L back onto it reproduces G on the
// nose, which is checked by recomputing the left pushout and chasing the
// mediating map forced by the match.

namespace {

struct MatchAnalysis {
  bool feasible = false;
  std::string obstruction;
  std::vector<bool> node_deleted;                           // indexed by G node
  std::vector<EdgeId> external_edges;                       // ascending
  std::vector<NodeId> kept_nodes;                           // ascending
  std::vector<NodeId> kept_index;                           // G node -> kept slot
  std::vector<NodeId> fiber_node;                           // fiber -> G node
  std::vector<std::vector<std::uint32_t>> fiber_positions;  // fiber -> K positions
  std::vector<std::uint32_t> fiber_of;                      // G node -> fiber
};

MatchAnalysis analyse_match(const DpoRule& rule, const Hypergraph& g,
                            const Homomorphism& f) {
  MatchAnalysis a;

  // A pushout along a discrete interface never merges edges, so a match
  // that overlaps two rule edges on one graph edge has no complement.
  std::vector<bool> edge_matched(g.edge_count(), false);
  for (EdgeId e : f.edge_map) {
    if (edge_matched[e]) {
      a.obstruction = "match sends two rule edges to graph edge e" + std::to_string(e);
      return a;
    }
    edge_matched[e] = true;
  }

  std::vector<bool> node_matched(g.node_count(), false);
  for (NodeId n : f.node_map) node_matched[n] = true;
  std::vector<bool> preserved(g.node_count(), false);
  for (NodeId k : rule.iface_in_lhs.nodes) preserved[f.node_map[k]] = true;

  a.node_deleted.assign(g.node_count(), false);
  for (NodeId n = 0; n < g.node_count(); ++n)
    a.node_deleted[n] = node_matched[n] && !preserved[n];

  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!edge_matched[e]) a.external_edges.push_back(e);

  for (EdgeId e : a.external_edges) {
    const auto& edge = g.edges[e];
    for (NodeId v : edge.sources)
      if (a.node_deleted[v]) {
        a.obstruction = "edge e" + std::to_string(e) + " dangles at deleted node n" +
                        std::to_string(v);
        return a;
      }
    for (NodeId v : edge.targets)
      if (a.node_deleted[v]) {
        a.obstruction = "edge e" + std::to_string(e) + " dangles at deleted node n" +
                        std::to_string(v);
        return a;
      }
  }

  a.kept_index.assign(g.node_count(), kNone);
  for (NodeId n = 0; n < g.node_count(); ++n)
    if (!node_matched[n]) {
      a.kept_index[n] = static_cast<NodeId>(a.kept_nodes.size());
      a.kept_nodes.push_back(n);
    }

  a.fiber_of.assign(g.node_count(), kNone);
  for (std::uint32_t t = 0; t < rule.iface_in_lhs.size(); ++t) {
    NodeId v = f.node_map[rule.iface_in_lhs[t]];
    if (a.fiber_of[v] == kNone) {
      a.fiber_of[v] = static_cast<std::uint32_t>(a.fiber_node.size());
      a.fiber_node.push_back(v);
      a.fiber_positions.emplace_back();
    }
    a.fiber_positions[a.fiber_of[v]].push_back(t);
  }

  a.feasible = true;
  return a;
}

// Set partitions as restricted growth strings: rgs[i] names the block of
// element i, and a new block number may only follow all smaller ones.
void for_each_partition(std::size_t n,
                        const std::function<void(const std::vector<std::uint32_t>&)>& emit) {
  std::vector<std::uint32_t> rgs(n, 0);
  if (n == 0) {
    emit(rgs);
    return;
  }
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i,
                                                            std::uint32_t used) {
    if (i == n) {
      emit(rgs);
      return;
    }
    for (std::uint32_t b = 0; b <= used; ++b) {
      rgs[i] = b;
      rec(i + 1, b == used ? used + 1 : used);
    }
  };
  rec(1, 1);
}

bool left_square_reproduces_input(const DpoRule& rule, const Hypergraph& g,
                                  const Homomorphism& f, const Hypergraph& c,
                                  const std::vector<NodeId>& k_in_c,
                                  const Homomorphism& c_to_g) {
  Hypergraph k = discrete_graph(g.sig, rule.iface_word());
  Homomorphism into_l{k, rule.lhs, rule.iface_in_lhs.nodes, {}};
  Homomorphism into_c{k, c, k_in_c, {}};
  PushoutResult po = pushout_discrete(into_l, into_c);
  const Hypergraph& p = po.graph;
  if (p.node_count() != g.node_count() || p.edge_count() != g.edge_count()) return false;

  // The cocone (f, c_to_g) forces the mediating map; it must be an
  // isomorphism commuting with everything, i.e. the square is a pushout
  // with apex G.
  std::vector<NodeId> phi(p.node_count(), kNone);
  auto set_node = [&](NodeId pn, NodeId gn) {
    if (phi[pn] == kNone) {
      phi[pn] = gn;
      return true;
    }
    return phi[pn] == gn;
  };
  for (NodeId x = 0; x < rule.lhs.node_count(); ++x)
    if (!set_node(po.from_left.node_map[x], f.node_map[x])) return false;
  for (NodeId y = 0; y < c.node_count(); ++y)
    if (!set_node(po.from_right.node_map[y], c_to_g.node_map[y])) return false;

  std::vector<bool> node_hit(g.node_count(), false);
  for (NodeId pn = 0; pn < p.node_count(); ++pn) {
    if (phi[pn] == kNone || node_hit[phi[pn]]) return false;
    node_hit[phi[pn]] = true;
  }

  std::vector<EdgeId> phie(p.edge_count(), kNone);
  auto set_edge = [&](EdgeId pe, EdgeId ge) {
    if (phie[pe] == kNone) {
      phie[pe] = ge;
      return true;
    }
    return phie[pe] == ge;
  };
  for (EdgeId e = 0; e < rule.lhs.edge_count(); ++e)
    if (!set_edge(po.from_left.edge_map[e], f.edge_map[e])) return false;
  for (EdgeId e = 0; e < c.edge_count(); ++e)
    if (!set_edge(po.from_right.edge_map[e], c_to_g.edge_map[e])) return false;

  std::vector<bool> edge_hit(g.edge_count(), false);
  for (EdgeId pe = 0; pe < p.edge_count(); ++pe) {
    if (phie[pe] == kNone || edge_hit[phie[pe]]) return false;
    edge_hit[phie[pe]] = true;
  }

  Homomorphism iso{p, g, std::move(phi), std::move(phie)};
  return iso.is_valid();
}

std::vector<PushoutComplement> enumerate_complements(const DpoRule& rule,
                                                     const Hypergraph& g,
                                                     const Homomorphism& f,
                                                     const MatchAnalysis& a) {
  std::vector<PushoutComplement> out;
  if (!a.feasible) return out;

  const std::size_t nf = a.fiber_node.size();
  std::vector<std::vector<std::uint32_t>> fiber_rgs(nf);

  // With partitions fixed, lay out the context and run over every
  // reattachment of the boundary tentacles.
  auto wire_and_validate = [&]() {
    std::vector<std::uint32_t> fiber_width(nf, 0);
    for (std::size_t fi = 0; fi < nf; ++fi)
      for (std::uint32_t b : fiber_rgs[fi])
        fiber_width[fi] = std::max(fiber_width[fi], b + 1);

    std::vector<std::uint32_t> fiber_base(nf, 0);
    std::uint32_t nblocks = 0;
    for (std::size_t fi = 0; fi < nf; ++fi) {
      fiber_base[fi] = nblocks;
      nblocks += fiber_width[fi];
    }

    std::vector<NodeId> k_in_c(rule.iface_in_lhs.size());
    for (std::size_t fi = 0; fi < nf; ++fi)
      for (std::size_t j = 0; j < a.fiber_positions[fi].size(); ++j)
        k_in_c[a.fiber_positions[fi][j]] = fiber_base[fi] + fiber_rgs[fi][j];

    // Context nodes: interface blocks first, then the untouched nodes.
    Hypergraph base(g.sig);
    std::vector<NodeId> node_image;
    for (std::size_t fi = 0; fi < nf; ++fi)
      for (std::uint32_t b = 0; b < fiber_width[fi]; ++b) {
        node_image.push_back(a.fiber_node[fi]);
        base.add_node(g.colour(a.fiber_node[fi]));
      }
    for (NodeId v : a.kept_nodes) {
      node_image.push_back(v);
      base.add_node(g.colour(v));
    }

    // Boundary tentacles that land on a preserved node may choose any
    // block of that node's fiber.  Slots are laid out in edge order,
    // sources before targets, so the replay below walks them in step.
    std::vector<std::uint32_t> slot_base, slot_width;
    for (EdgeId e : a.external_edges) {
      const auto& edge = g.edges[e];
      for (NodeId v : edge.sources)
        if (a.fiber_of[v] != kNone) {
          slot_base.push_back(fiber_base[a.fiber_of[v]]);
          slot_width.push_back(fiber_width[a.fiber_of[v]]);
        }
      for (NodeId v : edge.targets)
        if (a.fiber_of[v] != kNone) {
          slot_base.push_back(fiber_base[a.fiber_of[v]]);
          slot_width.push_back(fiber_width[a.fiber_of[v]]);
        }
    }

    std::vector<std::uint32_t> choice(slot_base.size(), 0);
    while (true) {
      Hypergraph c = base;
      std::vector<EdgeId> edge_image;
      std::size_t slot_i = 0;
      for (EdgeId e : a.external_edges) {
        const auto& edge = g.edges[e];
        std::vector<NodeId> sources, targets;
        for (NodeId v : edge.sources) {
          if (a.fiber_of[v] != kNone) {
            sources.push_back(slot_base[slot_i] + choice[slot_i]);
            ++slot_i;
          } else {
            sources.push_back(nblocks + a.kept_index[v]);
          }
        }
        for (NodeId v : edge.targets) {
          if (a.fiber_of[v] != kNone) {
            targets.push_back(slot_base[slot_i] + choice[slot_i]);
            ++slot_i;
          } else {
            targets.push_back(nblocks + a.kept_index[v]);
          }
        }
        c.add_edge(edge.op, std::move(sources), std::move(targets));
        edge_image.push_back(e);
      }

      Homomorphism c_to_g{c, g, node_image, edge_image};
      if (left_square_reproduces_input(rule, g, f, c, k_in_c, c_to_g))
        out.push_back(PushoutComplement{std::move(c), k_in_c, std::move(c_to_g)});

      // Next reattachment.
      std::size_t i = 0;
      while (i < choice.size()) {
        if (++choice[i] < slot_width[i]) break;
        choice[i] = 0;
        ++i;
      }
      if (i == choice.size()) break;
    }
  };

  std::function<void(std::size_t)> over_fibers = [&](std::size_t fi) {
    if (fi == nf) {
      wire_and_validate();
      return;
    }
    for_each_partition(a.fiber_positions[fi].size(), [&](const std::vector<std::uint32_t>& rgs) {
      fiber_rgs[fi] = rgs;
      over_fibers(fi + 1);
    });
  };
  over_fibers(0);

  return out;
}

struct StateKey {
  Word word;
  std::size_t nodes, edges;
  std::uint64_t hash;

  bool operator<(const StateKey& o) const {
    if (word.colours != o.word.colours) return word.colours < o.word.colours;
    if (nodes != o.nodes) return nodes < o.nodes;
    if (edges != o.edges) return edges < o.edges;
    return hash < o.hash;
  }
};

StateKey key_of(const GraphWithInterface& s) {
  return {s.word(), s.graph.node_count(), s.graph.edge_count(),
          structure_hash(s.graph, &s.iface.nodes)};
}

}  // namespace

void RewriteStep::validate(const GraphWithInterface& input) const {
  if (!(match.source == rule.lhs) || !(match.target == input.graph))
    throw TypeError("rewrite step does not fit its input");
  match.validate();
  if (!(context_to_input.source == context) ||
      !(context_to_input.target == input.graph))
    throw TypeError("rewrite step context map does not fit");
  context_to_input.validate();

  if (iface_in_context.size() != input.iface.size())
    throw TypeError("rewrite step interface factorisation has wrong length");
  for (std::size_t i = 0; i < iface_in_context.size(); ++i)
    if (context_to_input.node_map[iface_in_context[i]] != input.iface[i])
      throw TypeError("rewrite step interface factorisation does not commute");

  if (!left_square_reproduces_input(rule, input.graph, match, context,
                                    rule_iface_in_context, context_to_input))
    throw TypeError("left pushout square does not reproduce the input");

  Hypergraph k = discrete_graph(input.graph.sig, rule.iface_word());
  Homomorphism into_c{k, context, rule_iface_in_context, {}};
  Homomorphism into_r{k, rule.rhs, rule.iface_in_rhs.nodes, {}};
  PushoutResult po = pushout_discrete(into_c, into_r);
  if (!(po.graph == result.graph))
    throw TypeError("right pushout differs from the stored result");
  if (po.from_left.node_map != context_to_result.node_map ||
      po.from_left.edge_map != context_to_result.edge_map)
    throw TypeError("context embedding into the result is wrong");
  for (std::size_t i = 0; i < iface_in_context.size(); ++i)
    if (result.iface[i] != po.from_left.node_map[iface_in_context[i]])
      throw TypeError("result interface does not follow the context");
}

std::vector<PushoutComplement> pushout_complements(const DpoRule& rule,
                                                   const Hypergraph& g,
                                                   const Homomorphism& match) {
  return enumerate_complements(rule, g, match, analyse_match(rule, g, match));
}

RewriteStep make_rewrite_step(const DpoRule& rule, const GraphWithInterface& g,
                              const Homomorphism& match,
                              const PushoutComplement& comp,
                              const std::vector<NodeId>& iface_in_context) {
  Hypergraph k = discrete_graph(g.graph.sig, rule.iface_word());
  Homomorphism into_c{k, comp.context, comp.rule_iface_in_context, {}};
  Homomorphism into_r{k, rule.rhs, rule.iface_in_rhs.nodes, {}};
  PushoutResult po = pushout_discrete(into_c, into_r);

  GraphWithInterface result{po.graph, {}};
  for (NodeId y : iface_in_context)
    result.iface.nodes.push_back(po.from_left.node_map[y]);

  RewriteStep step{rule,
                   match,
                   comp.context,
                   comp.rule_iface_in_context,
                   comp.context_to_input,
                   iface_in_context,
                   std::move(result),
                   po.from_left};
  step.validate(g);
  return step;
}

std::vector<RewriteStep> find_rewrite_steps(const DpoRule& rule,
                                            const GraphWithInterface& g) {
  rule.validate();
  g.validate();
  if (!rule.lhs.sig || !g.graph.sig || !(*rule.lhs.sig == *g.graph.sig))
    throw TypeError("rule and graph use different signatures");

  std::vector<RewriteStep> steps;
  for (const auto& f : find_homomorphisms(rule.lhs, g.graph)) {
    for (const auto& comp : pushout_complements(rule, g.graph, f)) {
      // Interface positions must land in the context; a position on a
      // preserved node may choose any of its blocks.
      std::vector<std::vector<NodeId>> options(g.iface.size());
      bool possible = true;
      for (std::size_t i = 0; i < g.iface.size() && possible; ++i) {
        for (NodeId y = 0; y < comp.context.node_count(); ++y)
          if (comp.context_to_input.node_map[y] == g.iface[i])
            options[i].push_back(y);
        if (options[i].empty()) possible = false;
      }
      if (!possible) continue;

      std::vector<std::size_t> choice(g.iface.size(), 0);
      while (true) {
        std::vector<NodeId> iface_in_c(g.iface.size());
        for (std::size_t i = 0; i < g.iface.size(); ++i)
          iface_in_c[i] = options[i][choice[i]];

        steps.push_back(make_rewrite_step(rule, g, f, comp, iface_in_c));

        std::size_t i = 0;
        while (i < choice.size()) {
          if (++choice[i] < options[i].size()) break;
          choice[i] = 0;
          ++i;
        }
        if (i == choice.size()) break;
      }
    }
  }

  // Deduplicate results up to interface-respecting isomorphism, keep the
  // first witness of each, then order by a structural key.
  std::vector<RewriteStep> unique_steps;
  for (auto& s : steps) {
    bool fresh = true;
    for (const auto& u : unique_steps)
      if (same_state(s.result, u.result)) {
        fresh = false;
        break;
      }
    if (fresh) unique_steps.push_back(std::move(s));
  }
  std::stable_sort(unique_steps.begin(), unique_steps.end(),
                   [](const RewriteStep& x, const RewriteStep& y) {
                     return key_of(x.result) < key_of(y.result);
                   });
  return unique_steps;
}

GluingDiagnostics dangling_and_identification_check(const DpoRule& rule,
                                                    const GraphWithInterface& g,
                                                    const Homomorphism& match) {
  MatchAnalysis analysis = analyse_match(rule, g.graph, match);
  if (!analysis.feasible) return {false, analysis.obstruction};
  if (enumerate_complements(rule, g.graph, match, analysis).empty())
    return {false, "the match identifies nodes that the rule interface cannot merge"};
  for (std::size_t i = 0; i < g.iface.size(); ++i)
    if (analysis.node_deleted[g.iface[i]])
      return {false, "interface position " + std::to_string(i) +
                         " rests on deleted node n" + std::to_string(g.iface[i])};
  return {true, ""};
}

GraphWithInterface apply_step(const RewriteStep& step) { return step.result; }

std::vector<RewriteStep> all_rewrite_steps(const std::vector<DpoRule>& rules,
                                           const GraphWithInterface& g) {
  std::vector<RewriteStep> steps;
  for (const auto& rule : rules) {
    auto batch = find_rewrite_steps(rule, g);
    for (auto& s : batch) steps.push_back(std::move(s));
  }
  return steps;
}

std::vector<GraphWithInterface> syntactic_step(std::shared_ptr<const Signature> sig,
                                               const std::vector<Rule>& rules,
                                               const Diagram& a) {
  Cospan folded = fold_cospan(translate(sig, a));
  GraphWithInterface g{folded.carrier, folded.right};

  std::vector<DpoRule> dpo_rules;
  dpo_rules.reserve(rules.size());
  for (const auto& r : rules) dpo_rules.push_back(rule_from_diagrams(sig, r));

  std::vector<GraphWithInterface> results;
  for (const auto& step : all_rewrite_steps(dpo_rules, g)) {
    bool fresh = true;
    for (const auto& seen : results)
      if (same_state(step.result, seen)) {
        fresh = false;
        break;
      }
    if (fresh) results.push_back(step.result);
  }
  std::stable_sort(results.begin(), results.end(),
                   [](const GraphWithInterface& x, const GraphWithInterface& y) {
                     return key_of(x) < key_of(y);
                   });
  return results;
}

}  // namespace frobrew
