#include "frobrew/functor.hpp"

#include <algorithm>
#include <numeric>

namespace frobrew {

void FiniteFunction::validate() const {
  if (table.size() != domain) throw TypeError("finite function table has wrong length");
  for (auto v : table)
    if (v >= codomain) throw TypeError("finite function value out of range");
}

// ---------------------------------------------------------------------------
// translation

Cospan translate(std::shared_ptr<const Signature> sig, const Diagram& d) {
  switch (d.kind()) {
    case Diagram::Kind::Empty:
      return Cospan{Hypergraph(sig), {}, {}};
    case Diagram::Kind::Gen: {
      const auto& op = sig->operation(d.op());
      Cospan out{Hypergraph(sig), {}, {}};
      std::vector<NodeId> ins, outs;
      for (ColourId c : op.arity) ins.push_back(out.carrier.add_node(c));
      for (ColourId c : op.coarity) outs.push_back(out.carrier.add_node(c));
      out.carrier.add_edge(d.op(), ins, outs);
      out.left.nodes = std::move(ins);
      out.right.nodes = std::move(outs);
      return out;
    }
    case Diagram::Kind::Id:
      return identity_cospan(sig, Word{d.colour()});
    case Diagram::Kind::Sym:
      return permutation_cospan(sig, Word{d.colour(), d.colour2()}, {1, 0});
    case Diagram::Kind::Mult: {
      Cospan out{Hypergraph(sig), {}, {}};
      NodeId x = out.carrier.add_node(d.colour());
      out.left.nodes = {x, x};
      out.right.nodes = {x};
      return out;
    }
    case Diagram::Kind::Unit: {
      Cospan out{Hypergraph(sig), {}, {}};
      NodeId x = out.carrier.add_node(d.colour());
      out.right.nodes = {x};
      return out;
    }
    case Diagram::Kind::Comult: {
      Cospan out{Hypergraph(sig), {}, {}};
      NodeId x = out.carrier.add_node(d.colour());
      out.left.nodes = {x};
      out.right.nodes = {x, x};
      return out;
    }
    case Diagram::Kind::Counit: {
      Cospan out{Hypergraph(sig), {}, {}};
      NodeId x = out.carrier.add_node(d.colour());
      out.left.nodes = {x};
      return out;
    }
    case Diagram::Kind::Seq:
      return compose(translate(sig, d.left()), translate(sig, d.right()));
    case Diagram::Kind::Par:
      return tensor(translate(sig, d.left()), translate(sig, d.right()));
  }
  throw TypeError("unreachable diagram kind");
}

// ---------------------------------------------------------------------------
// extraction

namespace {

// Merge tree c^p -> c from mult/unit, smallest cases first.
Diagram merge_tree(ColourId c, std::size_t p) {
  if (p == 0) return Diagram::unit(c);
  if (p == 1) return Diagram::id(c);
  if (p == 2) return Diagram::mult(c);
  return Diagram::seq(Diagram::par(merge_tree(c, p - 1), Diagram::id(c)),
                      Diagram::mult(c));
}

// Copy tree c -> c^q, dual to merge_tree.
Diagram copy_tree(ColourId c, std::size_t q) {
  if (q == 0) return Diagram::counit(c);
  if (q == 1) return Diagram::id(c);
  if (q == 2) return Diagram::comult(c);
  return Diagram::seq(Diagram::comult(c), Diagram::par(copy_tree(c, q - 1), Diagram::id(c)));
}

// One carrier node's contribution: p leg positions in, q leg positions out.
Diagram node_term(ColourId c, std::size_t p, std::size_t q) {
  if (p == 1 && q == 1) return Diagram::id(c);
  if (p == 1) return copy_tree(c, q);
  if (q == 1) return merge_tree(c, p);
  return Diagram::seq(merge_tree(c, p), copy_tree(c, q));
}

bool is_identity_perm(const std::vector<std::uint32_t>& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

// Sorts interface positions by (colour, node, position); returns the
// permutation as target positions per input position.
std::vector<std::uint32_t> grouping_permutation(const Hypergraph& carrier,
                                                const Interface& iface) {
  std::vector<std::uint32_t> order(iface.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    ColourId ca = carrier.colour(iface[a]), cb = carrier.colour(iface[b]);
    if (ca != cb) return ca < cb;
    return iface[a] < iface[b];
  });
  std::vector<std::uint32_t> target(iface.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) target[order[rank]] = rank;
  return target;
}

}  // namespace

Diagram discrete_to_frobenius(const Cospan& f) {
  if (!f.carrier.discrete())
    throw TypeError("discrete_to_frobenius needs an edge-free carrier");

  const auto& carrier = f.carrier;
  const Word left_word = f.left_word();
  const Word right_word = f.right_word();

  // Multiplicities per node.
  std::vector<std::size_t> in_count(carrier.node_count(), 0);
  std::vector<std::size_t> out_count(carrier.node_count(), 0);
  for (NodeId n : f.left.nodes) ++in_count[n];
  for (NodeId n : f.right.nodes) ++out_count[n];

  // Nodes grouped by colour, in node order within a colour.
  std::vector<NodeId> node_order(carrier.node_count());
  std::iota(node_order.begin(), node_order.end(), 0);
  std::stable_sort(node_order.begin(), node_order.end(), [&](NodeId a, NodeId b) {
    return carrier.colour(a) < carrier.colour(b);
  });

  std::optional<Diagram> middle;
  for (NodeId n : node_order) {
    Diagram piece = node_term(carrier.colour(n), in_count[n], out_count[n]);
    middle = middle ? Diagram::par(*middle, piece) : piece;
  }
  Diagram mid = middle ? *middle : Diagram::empty();

  Diagram out = mid;
  auto p_in = grouping_permutation(carrier, f.left);
  if (!is_identity_perm(p_in))
    out = Diagram::seq(permutation_diagram(left_word, p_in), out);

  auto p_out = grouping_permutation(carrier, f.right);
  if (!is_identity_perm(p_out)) {
    // The middle ends in grouped order; route ranks back to leg positions.
    std::vector<std::uint32_t> inverse(p_out.size());
    for (std::size_t i = 0; i < p_out.size(); ++i) inverse[p_out[i]] = i;
    Word grouped;
    grouped.colours.resize(right_word.size());
    for (std::size_t i = 0; i < right_word.size(); ++i)
      grouped.colours[p_out[i]] = right_word[i];
    out = Diagram::seq(out, permutation_diagram(grouped, inverse));
  }
  return out;
}

Diagram extract(const Cospan& f) {
  const auto& carrier = f.carrier;
  const auto sig = carrier.sig;

  Word node_word;
  for (NodeId n = 0; n < carrier.node_count(); ++n) node_word.push_back(carrier.colour(n));

  Hypergraph bare = discrete_graph(sig, node_word);

  // Left slice: input interface onto nodes, then every node plus all the
  // edge sources.
  Cospan left_slice{bare, f.left, {}};
  for (NodeId n = 0; n < carrier.node_count(); ++n) left_slice.right.nodes.push_back(n);
  for (const auto& e : carrier.edges)
    left_slice.right.nodes.insert(left_slice.right.nodes.end(), e.sources.begin(),
                                  e.sources.end());

  // Right slice: every node plus all the edge targets, then the output
  // interface.
  Cospan right_slice{bare, {}, f.right};
  for (NodeId n = 0; n < carrier.node_count(); ++n) right_slice.left.nodes.push_back(n);
  for (const auto& e : carrier.edges)
    right_slice.left.nodes.insert(right_slice.left.nodes.end(), e.targets.begin(),
                                  e.targets.end());

  // Middle slice: identities on all nodes next to one generator per edge.
  Diagram mid = id_word(node_word);
  for (const auto& e : carrier.edges) mid = Diagram::par(mid, Diagram::gen(*sig, e.op));

  return Diagram::seq(Diagram::seq(discrete_to_frobenius(left_slice), mid),
                      discrete_to_frobenius(right_slice));
}

// ---------------------------------------------------------------------------

namespace {

bool frobenius_free(const Diagram& d) {
  switch (d.kind()) {
    case Diagram::Kind::Mult:
    case Diagram::Kind::Unit:
    case Diagram::Kind::Comult:
    case Diagram::Kind::Counit:
      return false;
    case Diagram::Kind::Seq:
    case Diagram::Kind::Par:
      return frobenius_free(d.left()) && frobenius_free(d.right());
    default:
      return true;
  }
}

}  // namespace

bool faithfulness_probe(std::shared_ptr<const Signature> sig, const Diagram& a,
                        const Diagram& b, bool pure_sigma) {
  if (a.dom() != b.dom() || a.cod() != b.cod())
    throw TypeError("faithfulness probe on terms of different types");
  if (pure_sigma && (!frobenius_free(a) || !frobenius_free(b)))
    throw std::invalid_argument(
        "pure_sigma requested but a term uses Frobenius generators");
  return cospan_equal(translate(sig, a), translate(sig, b));
}

}  // namespace frobrew
