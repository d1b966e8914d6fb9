#include "frobrew/hypergraph.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <sstream>

namespace frobrew {

namespace {

constexpr NodeId kUnset = std::numeric_limits<NodeId>::max();

struct UnionFind {
  std::vector<std::uint32_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

// Representatives -> dense class ids in order of first occurrence.
std::vector<std::uint32_t> class_ids(UnionFind& uf, std::size_t n, std::size_t& count) {
  std::vector<std::uint32_t> id(n, kUnset);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t root = uf.find(static_cast<std::uint32_t>(i));
    if (id[root] == kUnset) id[root] = next++;
    id[i] = id[root];
  }
  count = next;
  return id;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  return h;
}

}  // namespace

NodeId Hypergraph::add_node(ColourId c) {
  if (sig) sig->check_word(Word{c});
  nodes.push_back(c);
  return static_cast<NodeId>(nodes.size() - 1);
}

EdgeId Hypergraph::add_edge(OpId op, std::vector<NodeId> sources,
                            std::vector<NodeId> targets) {
  if (!sig) throw TypeError("hypergraph has no signature");
  const auto& sym = sig->operation(op);
  if (sources.size() != sym.arity.size() || targets.size() != sym.coarity.size())
    throw TypeError("edge tentacle count does not match the type of '" + sym.name + "'");
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (sources[i] >= nodes.size()) throw TypeError("edge source node out of range");
    if (nodes[sources[i]] != sym.arity[i])
      throw TypeError("edge source colour mismatch for '" + sym.name + "'");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= nodes.size()) throw TypeError("edge target node out of range");
    if (nodes[targets[i]] != sym.coarity[i])
      throw TypeError("edge target colour mismatch for '" + sym.name + "'");
  }
  edges.push_back({op, std::move(sources), std::move(targets)});
  return static_cast<EdgeId>(edges.size() - 1);
}

void Hypergraph::validate() const {
  if (!sig) throw TypeError("hypergraph has no signature");
  for (ColourId c : nodes) sig->check_word(Word{c});
  for (const auto& e : edges) {
    const auto& sym = sig->operation(e.op);
    if (e.sources.size() != sym.arity.size() || e.targets.size() != sym.coarity.size())
      throw TypeError("edge tentacle count does not match the type of '" + sym.name + "'");
    for (std::size_t i = 0; i < e.sources.size(); ++i)
      if (e.sources[i] >= nodes.size() || nodes[e.sources[i]] != sym.arity[i])
        throw TypeError("edge source does not match the type of '" + sym.name + "'");
    for (std::size_t i = 0; i < e.targets.size(); ++i)
      if (e.targets[i] >= nodes.size() || nodes[e.targets[i]] != sym.coarity[i])
        throw TypeError("edge target does not match the type of '" + sym.name + "'");
  }
}

bool Hypergraph::operator==(const Hypergraph& other) const {
  if (nodes != other.nodes || edges != other.edges) return false;
  if (sig == other.sig) return true;
  if (!sig || !other.sig) return false;
  return *sig == *other.sig;
}

Hypergraph discrete_graph(std::shared_ptr<const Signature> sig, const Word& w) {
  Hypergraph g(std::move(sig));
  for (ColourId c : w) g.add_node(c);
  return g;
}

bool Homomorphism::is_valid() const {
  try {
    validate();
    return true;
  } catch (const TypeError&) {
    return false;
  }
}

void Homomorphism::validate() const {
  if (node_map.size() != source.node_count() || edge_map.size() != source.edge_count())
    throw TypeError("homomorphism maps have the wrong lengths");
  for (NodeId n = 0; n < source.node_count(); ++n) {
    if (node_map[n] >= target.node_count())
      throw TypeError("homomorphism maps a node out of range");
    if (source.colour(n) != target.colour(node_map[n]))
      throw TypeError("homomorphism does not preserve node colours");
  }
  for (EdgeId e = 0; e < source.edge_count(); ++e) {
    if (edge_map[e] >= target.edge_count())
      throw TypeError("homomorphism maps an edge out of range");
    const auto& se = source.edges[e];
    const auto& te = target.edges[edge_map[e]];
    if (se.op != te.op) throw TypeError("homomorphism does not preserve edge labels");
    for (std::size_t i = 0; i < se.sources.size(); ++i)
      if (node_map[se.sources[i]] != te.sources[i])
        throw TypeError("homomorphism does not commute with edge sources");
    for (std::size_t i = 0; i < se.targets.size(); ++i)
      if (node_map[se.targets[i]] != te.targets[i])
        throw TypeError("homomorphism does not commute with edge targets");
  }
}

Homomorphism Homomorphism::identity(const Hypergraph& g) {
  Homomorphism h{g, g, {}, {}};
  h.node_map.resize(g.node_count());
  h.edge_map.resize(g.edge_count());
  for (NodeId n = 0; n < g.node_count(); ++n) h.node_map[n] = n;
  for (EdgeId e = 0; e < g.edge_count(); ++e) h.edge_map[e] = e;
  return h;
}

Homomorphism compose(const Homomorphism& f, const Homomorphism& g) {
  if (!(f.target == g.source))
    throw TypeError("cannot compose homomorphisms: middle graphs differ");
  Homomorphism out{f.source, g.target, {}, {}};
  out.node_map.reserve(f.node_map.size());
  out.edge_map.reserve(f.edge_map.size());
  for (NodeId n : f.node_map) out.node_map.push_back(g.node_map[n]);
  for (EdgeId e : f.edge_map) out.edge_map.push_back(g.edge_map[e]);
  return out;
}

// ---------------------------------------------------------------------------
// homomorphism search

namespace {

struct HomSearch {
  const Hypergraph& pattern;
  const Hypergraph& host;
  std::vector<NodeId> node_map;
  std::vector<EdgeId> edge_map;
  std::vector<Homomorphism>* out;

  bool bind(NodeId pn, NodeId hn, std::vector<NodeId>& trail) {
    if (node_map[pn] != kUnset) return node_map[pn] == hn;
    if (pattern.colour(pn) != host.colour(hn)) return false;
    node_map[pn] = hn;
    trail.push_back(pn);
    return true;
  }

  void match_edges(std::size_t e) {
    if (e == pattern.edge_count()) {
      match_free_nodes(0);
      return;
    }
    const auto& pe = pattern.edges[e];
    for (EdgeId he = 0; he < host.edge_count(); ++he) {
      const auto& hedge = host.edges[he];
      if (hedge.op != pe.op) continue;
      std::vector<NodeId> trail;
      bool ok = true;
      for (std::size_t i = 0; ok && i < pe.sources.size(); ++i)
        ok = bind(pe.sources[i], hedge.sources[i], trail);
      for (std::size_t i = 0; ok && i < pe.targets.size(); ++i)
        ok = bind(pe.targets[i], hedge.targets[i], trail);
      if (ok) {
        edge_map[e] = he;
        match_edges(e + 1);
      }
      for (NodeId pn : trail) node_map[pn] = kUnset;
    }
  }

  void match_free_nodes(NodeId pn) {
    while (pn < pattern.node_count() && node_map[pn] != kUnset) ++pn;
    if (pn == pattern.node_count()) {
      out->push_back({pattern, host, node_map, edge_map});
      return;
    }
    for (NodeId hn = 0; hn < host.node_count(); ++hn) {
      if (host.colour(hn) != pattern.colour(pn)) continue;
      node_map[pn] = hn;
      match_free_nodes(pn + 1);
    }
    node_map[pn] = kUnset;
  }
};

}  // namespace

std::vector<Homomorphism> find_homomorphisms(const Hypergraph& pattern,
                                             const Hypergraph& host) {
  std::vector<Homomorphism> out;
  HomSearch search{pattern, host,
                   std::vector<NodeId>(pattern.node_count(), kUnset),
                   std::vector<EdgeId>(pattern.edge_count(), 0), &out};
  search.match_edges(0);
  return out;
}

// ---------------------------------------------------------------------------
// isomorphism search

namespace {

// Degree-profile invariant: colour plus the sorted list of (op, side,
// position) incidences.  Preserved by every isomorphism.
std::vector<std::uint64_t> node_invariants(const Hypergraph& g) {
  std::vector<std::vector<std::uint64_t>> profile(g.node_count());
  for (const auto& e : g.edges) {
    for (std::size_t i = 0; i < e.sources.size(); ++i)
      profile[e.sources[i]].push_back((std::uint64_t{e.op} << 20) | (0u << 16) | i);
    for (std::size_t i = 0; i < e.targets.size(); ++i)
      profile[e.targets[i]].push_back((std::uint64_t{e.op} << 20) | (1u << 16) | i);
  }
  std::vector<std::uint64_t> inv(g.node_count());
  for (NodeId n = 0; n < g.node_count(); ++n) {
    std::sort(profile[n].begin(), profile[n].end());
    std::uint64_t h = mix(0x243f6a8885a308d3ULL, g.colour(n));
    for (std::uint64_t v : profile[n]) h = mix(h, v);
    inv[n] = h;
  }
  return inv;
}

struct IsoSearch {
  const Hypergraph& g;
  const Hypergraph& h;
  std::vector<std::uint64_t> inv_g, inv_h;
  std::vector<NodeId> fwd;       // g node -> h node
  std::vector<NodeId> bwd;       // h node -> g node
  std::vector<EdgeId> edge_fwd;  // g edge -> h edge
  std::vector<bool> edge_used;   // h edge taken

  bool bind(NodeId gn, NodeId hn, std::vector<NodeId>& trail) {
    if (fwd[gn] != kUnset) return fwd[gn] == hn;
    if (bwd[hn] != kUnset) return false;
    if (inv_g[gn] != inv_h[hn]) return false;
    fwd[gn] = hn;
    bwd[hn] = gn;
    trail.push_back(gn);
    return true;
  }

  void unbind(const std::vector<NodeId>& trail) {
    for (NodeId gn : trail) {
      bwd[fwd[gn]] = kUnset;
      fwd[gn] = kUnset;
    }
  }

  bool match_edges(std::size_t e) {
    if (e == g.edge_count()) return match_nodes(0);
    const auto& ge = g.edges[e];
    for (EdgeId he = 0; he < h.edge_count(); ++he) {
      if (edge_used[he]) continue;
      const auto& hedge = h.edges[he];
      if (hedge.op != ge.op) continue;
      std::vector<NodeId> trail;
      bool ok = true;
      for (std::size_t i = 0; ok && i < ge.sources.size(); ++i)
        ok = bind(ge.sources[i], hedge.sources[i], trail);
      for (std::size_t i = 0; ok && i < ge.targets.size(); ++i)
        ok = bind(ge.targets[i], hedge.targets[i], trail);
      if (ok) {
        edge_used[he] = true;
        edge_fwd[e] = he;
        if (match_edges(e + 1)) return true;
        edge_used[he] = false;
      }
      unbind(trail);
    }
    return false;
  }

  bool match_nodes(NodeId gn) {
    while (gn < g.node_count() && fwd[gn] != kUnset) ++gn;
    if (gn == g.node_count()) return true;
    for (NodeId hn = 0; hn < h.node_count(); ++hn) {
      if (bwd[hn] != kUnset || inv_h[hn] != inv_g[gn]) continue;
      if (h.colour(hn) != g.colour(gn)) continue;
      fwd[gn] = hn;
      bwd[hn] = gn;
      if (match_nodes(gn + 1)) return true;
      fwd[gn] = kUnset;
      bwd[hn] = kUnset;
    }
    return false;
  }
};

}  // namespace

std::optional<Homomorphism> find_isomorphism(
    const Hypergraph& g, const Hypergraph& h,
    const std::vector<std::pair<NodeId, NodeId>>& forced) {
  if (g.node_count() != h.node_count() || g.edge_count() != h.edge_count())
    return std::nullopt;
  if (!g.sig || !h.sig || !(*g.sig == *h.sig)) return std::nullopt;

  IsoSearch search{g, h, node_invariants(g), node_invariants(h),
                   std::vector<NodeId>(g.node_count(), kUnset),
                   std::vector<NodeId>(h.node_count(), kUnset),
                   std::vector<EdgeId>(g.edge_count(), 0),
                   std::vector<bool>(h.edge_count(), false)};

  // Invariant multisets must agree.
  {
    auto a = search.inv_g;
    auto b = search.inv_h;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  std::vector<NodeId> seed_trail;
  for (auto [gn, hn] : forced) {
    if (gn >= g.node_count() || hn >= h.node_count()) return std::nullopt;
    if (!search.bind(gn, hn, seed_trail)) return std::nullopt;
  }

  if (!search.match_edges(0)) return std::nullopt;
  return Homomorphism{g, h, search.fwd, search.edge_fwd};
}

bool is_isomorphic(const Hypergraph& g, const Hypergraph& h) {
  return find_isomorphism(g, h).has_value();
}

// ---------------------------------------------------------------------------
// colimits and limits

CoproductResult coproduct(const Hypergraph& a, const Hypergraph& b) {
  if (!a.sig || !b.sig || !(*a.sig == *b.sig))
    throw TypeError("coproduct of graphs over different signatures");
  Hypergraph g(a.sig);
  g.nodes = a.nodes;
  g.nodes.insert(g.nodes.end(), b.nodes.begin(), b.nodes.end());
  g.edges = a.edges;
  const NodeId node_off = static_cast<NodeId>(a.node_count());
  for (const auto& e : b.edges) {
    HyperEdge shifted = e;
    for (auto& n : shifted.sources) n += node_off;
    for (auto& n : shifted.targets) n += node_off;
    g.edges.push_back(std::move(shifted));
  }

  CoproductResult out{g, {a, g, {}, {}}, {b, g, {}, {}}};
  for (NodeId n = 0; n < a.node_count(); ++n) out.into_left.node_map.push_back(n);
  for (EdgeId e = 0; e < a.edge_count(); ++e) out.into_left.edge_map.push_back(e);
  for (NodeId n = 0; n < b.node_count(); ++n)
    out.into_right.node_map.push_back(node_off + n);
  for (EdgeId e = 0; e < b.edge_count(); ++e)
    out.into_right.edge_map.push_back(static_cast<EdgeId>(a.edge_count()) + e);
  return out;
}

QuotientResult quotient(const Hypergraph& g, const Partition& node_blocks,
                        const Partition& edge_blocks) {
  UnionFind node_uf(g.node_count());
  std::vector<bool> node_seen(g.node_count(), false);
  for (std::size_t bi = 0; bi < node_blocks.size(); ++bi) {
    const auto& block = node_blocks[bi];
    if (block.empty()) continue;
    for (std::uint32_t n : block) {
      if (n >= g.node_count())
        throw TypeError("node block " + std::to_string(bi) + " is out of range");
      if (node_seen[n])
        throw TypeError("node block " + std::to_string(bi) + " overlaps another block");
      node_seen[n] = true;
      if (g.colour(n) != g.colour(block[0]))
        throw TypeError("node block " + std::to_string(bi) + " mixes colours");
      node_uf.unite(n, block[0]);
    }
  }

  std::size_t node_classes = 0;
  auto node_id = class_ids(node_uf, g.node_count(), node_classes);

  UnionFind edge_uf(g.edge_count());
  std::vector<bool> edge_seen(g.edge_count(), false);
  auto mapped = [&](const std::vector<NodeId>& ns) {
    std::vector<NodeId> out;
    out.reserve(ns.size());
    for (NodeId n : ns) out.push_back(node_id[n]);
    return out;
  };
  for (std::size_t bi = 0; bi < edge_blocks.size(); ++bi) {
    const auto& block = edge_blocks[bi];
    if (block.empty()) continue;
    for (std::uint32_t e : block) {
      if (e >= g.edge_count())
        throw TypeError("edge block " + std::to_string(bi) + " is out of range");
      if (edge_seen[e])
        throw TypeError("edge block " + std::to_string(bi) + " overlaps another block");
      edge_seen[e] = true;
      const auto& rep = g.edges[block[0]];
      const auto& cur = g.edges[e];
      if (cur.op != rep.op)
        throw TypeError("edge block " + std::to_string(bi) + " mixes labels");
      if (mapped(cur.sources) != mapped(rep.sources) ||
          mapped(cur.targets) != mapped(rep.targets))
        throw TypeError("edge block " + std::to_string(bi) +
                        " merges edges with different endpoints");
      edge_uf.unite(e, block[0]);
    }
  }

  std::size_t edge_classes = 0;
  auto edge_id = class_ids(edge_uf, g.edge_count(), edge_classes);

  Hypergraph q(g.sig);
  q.nodes.resize(node_classes);
  for (NodeId n = 0; n < g.node_count(); ++n) q.nodes[node_id[n]] = g.colour(n);
  q.edges.resize(edge_classes);
  std::vector<bool> edge_written(edge_classes, false);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (edge_written[edge_id[e]]) continue;
    edge_written[edge_id[e]] = true;
    q.edges[edge_id[e]] = {g.edges[e].op, mapped(g.edges[e].sources),
                           mapped(g.edges[e].targets)};
  }

  QuotientResult out{q, {g, q, {}, {}}};
  for (NodeId n = 0; n < g.node_count(); ++n) out.projection.node_map.push_back(node_id[n]);
  for (EdgeId e = 0; e < g.edge_count(); ++e) out.projection.edge_map.push_back(edge_id[e]);
  return out;
}

PushoutResult pushout_discrete(const Homomorphism& a, const Homomorphism& b) {
  if (!(a.source == b.source))
    throw TypeError("pushout legs do not share their source");
  if (!a.source.discrete())
    throw TypeError("pushout along a non-discrete interface");
  a.validate();
  b.validate();

  auto co = coproduct(a.target, b.target);
  const NodeId off = static_cast<NodeId>(a.target.node_count());

  Partition blocks;
  {
    UnionFind uf(co.graph.node_count());
    for (NodeId j = 0; j < a.source.node_count(); ++j)
      uf.unite(a.node_map[j], off + b.node_map[j]);
    std::map<std::uint32_t, std::vector<std::uint32_t>> by_root;
    for (NodeId n = 0; n < co.graph.node_count(); ++n)
      by_root[uf.find(n)].push_back(n);
    for (auto& [root, members] : by_root)
      if (members.size() > 1) blocks.push_back(std::move(members));
  }

  auto q = quotient(co.graph, blocks, {});
  PushoutResult out{q.graph, compose(co.into_left, q.projection),
                    compose(co.into_right, q.projection)};
  return out;
}

PullbackResult pullback(const Homomorphism& f, const Homomorphism& g) {
  if (!(f.target == g.target))
    throw TypeError("pullback legs do not share their target");

  const auto& a = f.source;
  const auto& b = g.source;
  Hypergraph p(a.sig);
  std::vector<NodeId> pair_id(a.node_count() * b.node_count(), kUnset);
  PullbackResult out{p, {p, a, {}, {}}, {p, b, {}, {}}};

  for (NodeId na = 0; na < a.node_count(); ++na)
    for (NodeId nb = 0; nb < b.node_count(); ++nb)
      if (f.node_map[na] == g.node_map[nb]) {
        pair_id[na * b.node_count() + nb] = out.graph.add_node(a.colour(na));
        out.to_left.node_map.push_back(na);
        out.to_right.node_map.push_back(nb);
      }

  for (EdgeId ea = 0; ea < a.edge_count(); ++ea)
    for (EdgeId eb = 0; eb < b.edge_count(); ++eb) {
      if (f.edge_map[ea] != g.edge_map[eb]) continue;
      const auto& xe = a.edges[ea];
      const auto& ye = b.edges[eb];
      std::vector<NodeId> sources, targets;
      for (std::size_t i = 0; i < xe.sources.size(); ++i)
        sources.push_back(pair_id[xe.sources[i] * b.node_count() + ye.sources[i]]);
      for (std::size_t i = 0; i < xe.targets.size(); ++i)
        targets.push_back(pair_id[xe.targets[i] * b.node_count() + ye.targets[i]]);
      for (NodeId n : sources)
        if (n == kUnset) throw TypeError("pullback edge endpoint is not a pullback node");
      for (NodeId n : targets)
        if (n == kUnset) throw TypeError("pullback edge endpoint is not a pullback node");
      out.graph.add_edge(xe.op, std::move(sources), std::move(targets));
      out.to_left.edge_map.push_back(ea);
      out.to_right.edge_map.push_back(eb);
    }

  out.to_left.source = out.graph;
  out.to_right.source = out.graph;
  return out;
}

// ---------------------------------------------------------------------------
// fingerprints

std::uint64_t structure_hash(const Hypergraph& g, const std::vector<NodeId>* interface) {
  std::vector<std::uint64_t> label(g.node_count());
  for (NodeId n = 0; n < g.node_count(); ++n) {
    std::uint64_t h = mix(0x452821e638d01377ULL, g.colour(n));
    if (interface) {
      for (std::size_t i = 0; i < interface->size(); ++i)
        if ((*interface)[i] == n) h = mix(h, 0x1000 + i);
    }
    label[n] = h;
  }

  std::vector<std::uint64_t> edge_sig(g.edge_count());
  for (int round = 0; round < 2; ++round) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      std::uint64_t h = mix(0x13198a2e03707344ULL, g.edges[e].op);
      for (NodeId n : g.edges[e].sources) h = mix(h, label[n]);
      h = mix(h, 0xa4093822299f31d0ULL);
      for (NodeId n : g.edges[e].targets) h = mix(h, label[n]);
      edge_sig[e] = h;
    }
    std::vector<std::vector<std::uint64_t>> incident(g.node_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      for (std::size_t i = 0; i < g.edges[e].sources.size(); ++i)
        incident[g.edges[e].sources[i]].push_back(mix(edge_sig[e], 2 * i));
      for (std::size_t i = 0; i < g.edges[e].targets.size(); ++i)
        incident[g.edges[e].targets[i]].push_back(mix(edge_sig[e], 2 * i + 1));
    }
    for (NodeId n = 0; n < g.node_count(); ++n) {
      std::sort(incident[n].begin(), incident[n].end());
      std::uint64_t h = label[n];
      for (std::uint64_t v : incident[n]) h = mix(h, v);
      label[n] = h;
    }
  }

  std::uint64_t h = mix(mix(0x082efa98ec4e6c89ULL, g.node_count()), g.edge_count());
  auto sorted_labels = label;
  std::sort(sorted_labels.begin(), sorted_labels.end());
  for (std::uint64_t v : sorted_labels) h = mix(h, v);
  std::sort(edge_sig.begin(), edge_sig.end());
  for (std::uint64_t v : edge_sig) h = mix(h, v);
  if (interface)
    for (NodeId n : *interface) h = mix(h, label[n]);
  return h;
}

// ---------------------------------------------------------------------------
// text format

namespace {

std::vector<std::string> graph_tokens(const std::string& line) {
  std::string padded;
  for (char ch : line) {
    if (ch == '(' || ch == ')' || ch == ':') {
      padded += ' ';
      padded += ch;
      padded += ' ';
    } else {
      padded += ch;
    }
  }
  std::vector<std::string> toks;
  std::istringstream in(padded);
  std::string tok;
  while (in >> tok) toks.push_back(tok);
  return toks;
}

std::vector<NodeId> node_list(const std::vector<std::string>& toks, std::size_t& i,
                              const std::map<std::string, NodeId>& names,
                              std::size_t line_no) {
  if (i >= toks.size() || toks[i] != "(")
    throw ParseError("expected '(' before a node list", line_no);
  ++i;
  std::vector<NodeId> out;
  while (i < toks.size() && toks[i] != ")") {
    auto it = names.find(toks[i]);
    if (it == names.end())
      throw ParseError("unknown node '" + toks[i] + "'", line_no);
    out.push_back(it->second);
    ++i;
  }
  if (i >= toks.size()) throw ParseError("unterminated node list", line_no);
  ++i;  // ')'
  return out;
}

}  // namespace

Hypergraph parse_hypergraph(std::istream& in, std::shared_ptr<const Signature> sig,
                            std::map<std::string, NodeId>* node_names) {
  Hypergraph g(sig);
  std::map<std::string, NodeId> names;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto toks = graph_tokens(raw);
    if (toks.empty()) continue;
    if (toks[0] == "node") {
      if (toks.size() != 4 || toks[2] != ":")
        throw ParseError("expected 'node <name> : <colour>'", line_no);
      if (names.count(toks[1]))
        throw ParseError("duplicate node '" + toks[1] + "'", line_no);
      auto c = sig->find_colour(toks[3]);
      if (!c) throw ParseError("undeclared colour '" + toks[3] + "'", line_no);
      names[toks[1]] = g.add_node(*c);
    } else if (toks[0] == "edge") {
      if (toks.size() < 5 || toks[2] != ":")
        throw ParseError("expected 'edge <name> : <op> (...) -> (...)'", line_no);
      auto op = sig->find_operation(toks[3]);
      if (!op) throw ParseError("undeclared operation '" + toks[3] + "'", line_no);
      std::size_t i = 4;
      auto sources = node_list(toks, i, names, line_no);
      if (i >= toks.size() || toks[i] != "->")
        throw ParseError("expected '->' between endpoint lists", line_no);
      ++i;
      auto targets = node_list(toks, i, names, line_no);
      try {
        g.add_edge(*op, std::move(sources), std::move(targets));
      } catch (const TypeError& e) {
        throw ParseError(e.what(), line_no);
      }
    } else {
      throw ParseError("unknown declaration '" + toks[0] + "'", line_no);
    }
  }
  if (node_names) *node_names = std::move(names);
  return g;
}

Hypergraph parse_hypergraph(const std::string& text,
                            std::shared_ptr<const Signature> sig,
                            std::map<std::string, NodeId>* node_names) {
  std::istringstream in(text);
  return parse_hypergraph(in, std::move(sig), node_names);
}

void print_hypergraph(std::ostream& out, const Hypergraph& g) {
  for (NodeId n = 0; n < g.node_count(); ++n)
    out << "node n" << n << " : " << g.sig->colour_name(g.colour(n)) << "\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges[e];
    out << "edge e" << e << " : " << g.sig->operation(edge.op).name << " (";
    for (std::size_t i = 0; i < edge.sources.size(); ++i)
      out << (i ? " " : "") << 'n' << edge.sources[i];
    out << ") -> (";
    for (std::size_t i = 0; i < edge.targets.size(); ++i)
      out << (i ? " " : "") << 'n' << edge.targets[i];
    out << ")\n";
  }
}

std::string print_hypergraph(const Hypergraph& g) {
  std::ostringstream out;
  print_hypergraph(out, g);
  return out.str();
}

}  // namespace frobrew
