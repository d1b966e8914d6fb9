#include "support/oracles.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace frobrew::testing {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

}  // namespace

std::vector<Homomorphism> brute_homomorphisms(const Hypergraph& pattern,
                                              const Hypergraph& host) {
  std::vector<Homomorphism> out;
  if (pattern.node_count() > 0 && host.node_count() == 0) return out;
  if (pattern.edge_count() > 0 && host.edge_count() == 0) return out;

  std::vector<NodeId> nodes(pattern.node_count(), 0);
  std::function<void(std::size_t)> assign_nodes = [&](std::size_t i) {
    if (i == pattern.node_count()) {
      for (NodeId v = 0; v < pattern.node_count(); ++v)
        if (pattern.colour(v) != host.colour(nodes[v])) return;

      // With the nodes fixed, each pattern edge independently picks any
      // host edge carrying the same label and the image endpoint lists.
      std::vector<std::vector<EdgeId>> options(pattern.edge_count());
      for (EdgeId e = 0; e < pattern.edge_count(); ++e) {
        const auto& pe = pattern.edges[e];
        for (EdgeId h = 0; h < host.edge_count(); ++h) {
          const auto& he = host.edges[h];
          if (he.op != pe.op) continue;
          bool fits = pe.sources.size() == he.sources.size() &&
                      pe.targets.size() == he.targets.size();
          for (std::size_t k = 0; fits && k < pe.sources.size(); ++k)
            fits = nodes[pe.sources[k]] == he.sources[k];
          for (std::size_t k = 0; fits && k < pe.targets.size(); ++k)
            fits = nodes[pe.targets[k]] == he.targets[k];
          if (fits) options[e].push_back(h);
        }
        if (options[e].empty()) return;
      }

      std::vector<EdgeId> edges(pattern.edge_count(), 0);
      std::function<void(std::size_t)> assign_edges = [&](std::size_t e) {
        if (e == pattern.edge_count()) {
          std::vector<EdgeId> em(pattern.edge_count());
          for (EdgeId k = 0; k < pattern.edge_count(); ++k) em[k] = options[k][edges[k]];
          out.push_back(Homomorphism{pattern, host, nodes, std::move(em)});
          return;
        }
        for (edges[e] = 0; edges[e] < options[e].size(); ++edges[e]) assign_edges(e + 1);
      };
      assign_edges(0);
      return;
    }
    for (NodeId v = 0; v < host.node_count(); ++v) {
      nodes[i] = v;
      assign_nodes(i + 1);
    }
  };
  assign_nodes(0);
  return out;
}

namespace {

// Checks that gluing L onto the candidate context along K gives back G,
// with the match and the embedding as the two legs.
bool candidate_validates(const DpoRule& rule, const Hypergraph& g,
                         const Homomorphism& match, const Hypergraph& context,
                         const std::vector<NodeId>& k_in_c,
                         const Homomorphism& c_to_g) {
  Hypergraph k = discrete_graph(g.sig, rule.iface_word());
  Homomorphism into_l{k, rule.lhs, rule.iface_in_lhs.nodes, {}};
  Homomorphism into_c{k, context, k_in_c, {}};
  PushoutResult po = pushout_discrete(into_l, into_c);
  if (po.graph.node_count() != g.node_count()) return false;
  if (po.graph.edge_count() != g.edge_count()) return false;

  std::vector<NodeId> to_g(po.graph.node_count(), kUnset);
  for (NodeId x = 0; x < rule.lhs.node_count(); ++x) {
    NodeId p = po.from_left.on_node(x);
    if (to_g[p] != kUnset && to_g[p] != match.on_node(x)) return false;
    to_g[p] = match.on_node(x);
  }
  for (NodeId y = 0; y < context.node_count(); ++y) {
    NodeId p = po.from_right.on_node(y);
    if (to_g[p] != kUnset && to_g[p] != c_to_g.on_node(y)) return false;
    to_g[p] = c_to_g.on_node(y);
  }
  std::vector<bool> covered(g.node_count(), false);
  for (NodeId p = 0; p < po.graph.node_count(); ++p) {
    if (to_g[p] == kUnset || covered[to_g[p]]) return false;
    covered[to_g[p]] = true;
  }

  std::vector<EdgeId> edge_to_g(po.graph.edge_count(), kUnset);
  for (EdgeId e = 0; e < rule.lhs.edge_count(); ++e) {
    EdgeId p = po.from_left.on_edge(e);
    if (edge_to_g[p] != kUnset && edge_to_g[p] != match.on_edge(e)) return false;
    edge_to_g[p] = match.on_edge(e);
  }
  for (EdgeId e = 0; e < context.edge_count(); ++e) {
    EdgeId p = po.from_right.on_edge(e);
    if (edge_to_g[p] != kUnset && edge_to_g[p] != c_to_g.on_edge(e)) return false;
    edge_to_g[p] = c_to_g.on_edge(e);
  }
  std::vector<bool> edge_covered(g.edge_count(), false);
  for (EdgeId p = 0; p < po.graph.edge_count(); ++p) {
    if (edge_to_g[p] == kUnset || edge_covered[edge_to_g[p]]) return false;
    edge_covered[edge_to_g[p]] = true;
  }

  return Homomorphism{po.graph, g, std::move(to_g), std::move(edge_to_g)}.is_valid();
}

}  // namespace

std::vector<PushoutComplement> brute_pushout_complements(const DpoRule& rule,
                                                         const Hypergraph& g,
                                                         const Homomorphism& match) {
  std::vector<PushoutComplement> out;

  // Two rule edges on one graph edge can never be unglued by a pushout
  // along a discrete interface.
  std::vector<bool> edge_matched(g.edge_count(), false);
  for (EdgeId e : match.edge_map) {
    if (edge_matched[e]) return out;
    edge_matched[e] = true;
  }
  std::vector<EdgeId> external;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!edge_matched[e]) external.push_back(e);

  std::vector<bool> node_matched(g.node_count(), false);
  for (NodeId n : match.node_map) node_matched[n] = true;

  const std::size_t np = rule.iface_in_lhs.size();
  std::vector<NodeId> pos_image(np);
  for (std::size_t p = 0; p < np; ++p)
    pos_image[p] = match.on_node(rule.iface_in_lhs[p]);

  // All set partitions of the interface positions, as restricted growth
  // strings; only blocks with one common matched node survive the filter.
  std::vector<std::uint32_t> rgs(np, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i,
                                                            std::uint32_t used) {
    if (i < np) {
      for (std::uint32_t b = 0; b <= used; ++b) {
        rgs[i] = b;
        rec(i + 1, b == used ? used + 1 : used);
      }
      return;
    }

    std::uint32_t nblocks = np == 0 ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<NodeId> block_image(nblocks, kUnset);
    for (std::size_t p = 0; p < np; ++p) {
      if (block_image[rgs[p]] != kUnset && block_image[rgs[p]] != pos_image[p]) return;
      block_image[rgs[p]] = pos_image[p];
    }

    // Context skeleton: one node per block, one per untouched graph node.
    Hypergraph context(g.sig);
    std::vector<NodeId> node_image;
    for (std::uint32_t b = 0; b < nblocks; ++b) {
      context.add_node(g.colour(block_image[b]));
      node_image.push_back(block_image[b]);
    }
    std::vector<NodeId> copy_of(g.node_count(), kUnset);
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (!node_matched[v]) {
        copy_of[v] = context.add_node(g.colour(v));
        node_image.push_back(v);
      }

    // Candidate attachment points in the context for each graph node.
    auto preimages = [&](NodeId v) {
      std::vector<NodeId> xs;
      for (std::uint32_t b = 0; b < nblocks; ++b)
        if (block_image[b] == v) xs.push_back(b);
      if (copy_of[v] != kUnset) xs.push_back(copy_of[v]);
      return xs;
    };

    std::vector<std::vector<NodeId>> slot_options;
    for (EdgeId e : external) {
      const auto& edge = g.edges[e];
      for (NodeId v : edge.sources) {
        slot_options.push_back(preimages(v));
        if (slot_options.back().empty()) return;  // dangling tentacle
      }
      for (NodeId v : edge.targets) {
        slot_options.push_back(preimages(v));
        if (slot_options.back().empty()) return;
      }
    }

    std::vector<std::size_t> choice(slot_options.size(), 0);
    while (true) {
      Hypergraph c = context;
      std::vector<EdgeId> edge_image;
      std::size_t slot = 0;
      for (EdgeId e : external) {
        const auto& edge = g.edges[e];
        std::vector<NodeId> srcs, tgts;
        for (std::size_t k = 0; k < edge.sources.size(); ++k) {
          srcs.push_back(slot_options[slot][choice[slot]]);
          ++slot;
        }
        for (std::size_t k = 0; k < edge.targets.size(); ++k) {
          tgts.push_back(slot_options[slot][choice[slot]]);
          ++slot;
        }
        c.add_edge(edge.op, std::move(srcs), std::move(tgts));
        edge_image.push_back(e);
      }

      std::vector<NodeId> k_in_c(np);
      for (std::size_t p = 0; p < np; ++p) k_in_c[p] = rgs[p];
      Homomorphism c_to_g{c, g, node_image, edge_image};
      if (c_to_g.is_valid() &&
          candidate_validates(rule, g, match, c, k_in_c, c_to_g))
        out.push_back(PushoutComplement{c, k_in_c, c_to_g});

      std::size_t i = 0;
      while (i < choice.size() && ++choice[i] == slot_options[i].size())
        choice[i++] = 0;
      if (i == choice.size()) break;
    }
  };
  if (np == 0)
    rec(0, 0);
  else
    rec(1, 1);
  return out;
}

bool complement_equivalent(const PushoutComplement& x, const PushoutComplement& y) {
  const Hypergraph& cx = x.context;
  const Hypergraph& cy = y.context;
  if (cx.node_count() != cy.node_count() || cx.edge_count() != cy.edge_count())
    return false;
  if (x.rule_iface_in_context.size() != y.rule_iface_in_context.size()) return false;

  std::vector<NodeId> phi(cx.node_count(), kUnset);
  std::vector<bool> taken(cy.node_count(), false);
  auto bind = [&](NodeId a, NodeId b) {
    if (phi[a] != kUnset) return phi[a] == b;
    if (taken[b]) return false;
    phi[a] = b;
    taken[b] = true;
    return true;
  };

  for (std::size_t p = 0; p < x.rule_iface_in_context.size(); ++p)
    if (!bind(x.rule_iface_in_context[p], y.rule_iface_in_context[p])) return false;

  // Nodes outside the interface image sit over distinct untouched graph
  // nodes, so their images are forced by the embeddings.
  for (NodeId u = 0; u < cx.node_count(); ++u) {
    if (phi[u] != kUnset) continue;
    NodeId g_image = x.context_to_input.on_node(u);
    NodeId target = kUnset;
    for (NodeId w = 0; w < cy.node_count(); ++w) {
      if (taken[w] || y.context_to_input.on_node(w) != g_image) continue;
      if (target != kUnset) return false;
      target = w;
    }
    if (target == kUnset) return false;
    if (!bind(u, target)) return false;
  }

  for (NodeId u = 0; u < cx.node_count(); ++u)
    if (x.context_to_input.on_node(u) != y.context_to_input.on_node(phi[u]))
      return false;

  // Edges correspond through the shared embedding into the input graph.
  std::vector<EdgeId> edge_at(x.context_to_input.target.edge_count(), kUnset);
  for (EdgeId e = 0; e < cy.edge_count(); ++e) {
    EdgeId ge = y.context_to_input.on_edge(e);
    if (edge_at[ge] != kUnset) return false;
    edge_at[ge] = e;
  }
  for (EdgeId e = 0; e < cx.edge_count(); ++e) {
    EdgeId mate = edge_at[x.context_to_input.on_edge(e)];
    if (mate == kUnset) return false;
    const auto& ex = cx.edges[e];
    const auto& ey = cy.edges[mate];
    if (ex.op != ey.op) return false;
    if (ex.sources.size() != ey.sources.size()) return false;
    if (ex.targets.size() != ey.targets.size()) return false;
    for (std::size_t k = 0; k < ex.sources.size(); ++k)
      if (phi[ex.sources[k]] != ey.sources[k]) return false;
    for (std::size_t k = 0; k < ex.targets.size(); ++k)
      if (phi[ex.targets[k]] != ey.targets[k]) return false;
  }
  return true;
}

BruteClosure brute_closure(const GraphWithInterface& start,
                           const std::vector<DpoRule>& rules,
                           std::size_t state_cap) {
  BruteClosure closure;
  closure.states.push_back(start);
  std::size_t next = 0;
  while (next < closure.states.size()) {
    if (closure.states.size() > state_cap) return closure;  // complete stays false
    GraphWithInterface current = closure.states[next++];
    for (const auto& step : all_rewrite_steps(rules, current)) {
      const GraphWithInterface& succ = step.result;
      bool known = false;
      for (const auto& seen : closure.states)
        if (same_state(seen, succ)) {
          known = true;
          break;
        }
      if (!known) closure.states.push_back(succ);
    }
  }
  closure.complete = true;
  return closure;
}

std::optional<bool> brute_joinable(const GraphWithInterface& a,
                                   const GraphWithInterface& b,
                                   const std::vector<DpoRule>& rules,
                                   std::size_t state_cap) {
  BruteClosure ca = brute_closure(a, rules, state_cap);
  BruteClosure cb = brute_closure(b, rules, state_cap);
  for (const auto& x : ca.states)
    for (const auto& y : cb.states)
      if (same_state(x, y)) return true;
  if (ca.complete && cb.complete) return false;
  return std::nullopt;
}

Verdict brute_confluence_verdict(const std::vector<DpoRule>& rules,
                                 std::size_t state_cap) {
  bool inconclusive = false;
  for (const auto& p : enumerate_critical_pairs(rules)) {
    if (p.disjoint) continue;
    auto joinable = brute_joinable(p.result1(), p.result2(), rules, state_cap);
    if (!joinable.has_value()) {
      inconclusive = true;
      continue;
    }
    if (!*joinable) return Verdict::NotConfluent;
  }
  return inconclusive ? Verdict::Inconclusive : Verdict::Confluent;
}

}  // namespace frobrew::testing
