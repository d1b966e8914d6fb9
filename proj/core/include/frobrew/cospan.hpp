#pragma once

#include "frobrew/hypergraph.hpp"

namespace frobrew {

/// An ordered list of carrier nodes; positions may repeat a node.
struct Interface {
  std::vector<NodeId> nodes;

  std::size_t size() const { return nodes.size(); }
  NodeId operator[](std::size_t i) const { return nodes[i]; }

  bool operator==(const Interface&) const = default;
};

Word interface_word(const Hypergraph& carrier, const Interface& iface);

/// A hypergraph with two ordered interfaces: an arrow  left_word ->
/// right_word  whose identity is taken up to carrier isomorphism commuting
/// with both legs.
struct Cospan {
  Hypergraph carrier;
  Interface left;
  Interface right;

  Word left_word() const { return interface_word(carrier, left); }
  Word right_word() const { return interface_word(carrier, right); }

  /// Checks that both legs point at carrier nodes.
  void validate() const;
};

/// Glues f's right interface to g's left interface over their common word.
/// Throws TypeError when the words differ.
Cospan compose(const Cospan& f, const Cospan& g);

/// Side-by-side union; interfaces concatenate.
Cospan tensor(const Cospan& f, const Cospan& g);

Cospan identity_cospan(std::shared_ptr<const Signature> sig, const Word& w);

/// The discrete cospan w -> v with `target_pos[i]` the output position of
/// input wire i; v is the induced rearrangement of w.
Cospan permutation_cospan(std::shared_ptr<const Signature> sig, const Word& w,
                          const std::vector<std::uint32_t>& target_pos);

/// Bends the left interface around: same carrier, empty left leg, right
/// leg = old left followed by old right.
Cospan fold_cospan(const Cospan& f);

/// A carrier isomorphism commuting with both legs positionwise, if any.
std::optional<Homomorphism> cospan_isomorphism(const Cospan& f, const Cospan& g);

/// True iff the cospans denote the same arrow: equal interface words and
/// isomorphic carriers commuting with the legs.
bool cospan_equal(const Cospan& f, const Cospan& g);

/// Text format: the hypergraph lines followed by
///   left: <node> ...
///   right: <node> ...
Cospan parse_cospan(std::istream& in, std::shared_ptr<const Signature> sig);
Cospan parse_cospan(const std::string& text, std::shared_ptr<const Signature> sig);
void print_cospan(std::ostream& out, const Cospan& f);
std::string print_cospan(const Cospan& f);

}  // namespace frobrew
