#pragma once

#include "frobrew/signature.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace frobrew {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct HyperEdge {
  OpId op;
  std::vector<NodeId> sources;
  std::vector<NodeId> targets;

  bool operator==(const HyperEdge&) const = default;
};

/// A finite hypergraph whose nodes are labelled with colours and whose
/// hyperedges are labelled with operation symbols; an edge has one ordered
/// tentacle per position of its operation's arity and coarity.  Plain value
/// type: nodes and edges are dense indices, operations on graphs build new
/// values.
struct Hypergraph {
  std::shared_ptr<const Signature> sig;
  std::vector<ColourId> nodes;  // node -> colour
  std::vector<HyperEdge> edges;

  explicit Hypergraph(std::shared_ptr<const Signature> s = nullptr) : sig(std::move(s)) {}

  std::size_t node_count() const { return nodes.size(); }
  std::size_t edge_count() const { return edges.size(); }
  bool discrete() const { return edges.empty(); }
  ColourId colour(NodeId n) const { return nodes[n]; }

  NodeId add_node(ColourId c);
  /// Checks the endpoint lists against the operation's type.
  EdgeId add_edge(OpId op, std::vector<NodeId> sources, std::vector<NodeId> targets);

  /// Verifies label/arity consistency of the whole graph; throws TypeError.
  void validate() const;

  bool operator==(const Hypergraph& other) const;
};

/// Builds the discrete hypergraph with one node per letter of `w`.
Hypergraph discrete_graph(std::shared_ptr<const Signature> sig, const Word& w);

/// A structure-preserving map: colours, labels and the ordered tentacles
/// are preserved positionwise.  Carries copies of both endpoint graphs so
/// a value is checkable on its own.
struct Homomorphism {
  Hypergraph source;
  Hypergraph target;
  std::vector<NodeId> node_map;
  std::vector<EdgeId> edge_map;

  bool is_valid() const;
  void validate() const;  // throws TypeError with the first violation

  NodeId on_node(NodeId n) const { return node_map[n]; }
  EdgeId on_edge(EdgeId e) const { return edge_map[e]; }

  static Homomorphism identity(const Hypergraph& g);
};

/// g after f; requires f.target == g.source (same value).
Homomorphism compose(const Homomorphism& f, const Homomorphism& g);

/// All homomorphisms pattern -> host, in lexicographic order of
/// (edge assignments, then free-node assignments).  Matches need not be
/// injective.
std::vector<Homomorphism> find_homomorphisms(const Hypergraph& pattern,
                                             const Hypergraph& host);

/// An isomorphism g -> h extending the forced node pairs, if one exists.
/// Uses colour/label counts and degree-profile invariants to prune before
/// backtracking.
std::optional<Homomorphism> find_isomorphism(
    const Hypergraph& g, const Hypergraph& h,
    const std::vector<std::pair<NodeId, NodeId>>& forced = {});

bool is_isomorphic(const Hypergraph& g, const Hypergraph& h);

struct CoproductResult {
  Hypergraph graph;
  Homomorphism into_left;
  Homomorphism into_right;
};

CoproductResult coproduct(const Hypergraph& a, const Hypergraph& b);

/// A partition is given as a list of blocks of indices; indices not listed
/// form singleton blocks.  Blocks must be disjoint.
using Partition = std::vector<std::vector<std::uint32_t>>;

struct QuotientResult {
  Hypergraph graph;
  Homomorphism projection;
};

/// Merges nodes blockwise and edges blockwise.  Node blocks must be
/// colour-homogeneous; edge blocks must carry one label and have equal
/// endpoint lists after the node merge, otherwise TypeError names the
/// offending block.
QuotientResult quotient(const Hypergraph& g, const Partition& node_blocks,
                        const Partition& edge_blocks);

struct PushoutResult {
  Hypergraph graph;
  Homomorphism from_left;   // a.target -> graph
  Homomorphism from_right;  // b.target -> graph
};

/// Pushout of  a.target <- J -> b.target  where J = a.source = b.source is
/// discrete: glues the two graphs by identifying a(j) with b(j).  No edges
/// are ever merged.
PushoutResult pushout_discrete(const Homomorphism& a, const Homomorphism& b);

struct PullbackResult {
  Hypergraph graph;
  Homomorphism to_left;   // graph -> f.source
  Homomorphism to_right;  // graph -> g.source
};

/// Pullback of  f.source -> S <- g.source: nodes are the matching pairs in
/// lexicographic order, edges likewise.
PullbackResult pullback(const Homomorphism& f, const Homomorphism& g);

/// An isomorphism-invariant fingerprint built from a few rounds of label
/// refinement over the incidence structure.  `interface` (optional) marks
/// nodes with the positions at which they occur.  Equal graphs hash equal;
/// collisions must be resolved with find_isomorphism.
std::uint64_t structure_hash(const Hypergraph& g,
                             const std::vector<NodeId>* interface = nullptr);

/// Text format:
///   node <name> : <colour>
///   edge <name> : <op> (<node> ...) -> (<node> ...)
/// Names are free-form identifiers; printing uses n0, n1, ... / e0, e1, ...
/// `node_names`, when given, receives the name -> id mapping.
Hypergraph parse_hypergraph(std::istream& in, std::shared_ptr<const Signature> sig,
                            std::map<std::string, NodeId>* node_names = nullptr);
Hypergraph parse_hypergraph(const std::string& text, std::shared_ptr<const Signature> sig,
                            std::map<std::string, NodeId>* node_names = nullptr);
void print_hypergraph(std::ostream& out, const Hypergraph& g);
std::string print_hypergraph(const Hypergraph& g);

}  // namespace frobrew
