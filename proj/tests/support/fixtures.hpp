#pragma once

// Shared signatures and small helpers used across the test binaries.

#include "frobrew/diagram.hpp"
#include "frobrew/signature.hpp"

#include <memory>
#include <string>

namespace frobrew::testing {

// Two colours c, d with o1: c -> cd and o2: dd -> c.
inline std::shared_ptr<const Signature> two_op_theory() {
  auto sig = std::make_shared<Signature>();
  auto c = sig->add_colour("c");
  auto d = sig->add_colour("d");
  sig->add_operation("o1", Word{c}, Word{c, d});
  sig->add_operation("o2", Word{d, d}, Word{c});
  return sig;
}

// One colour x with three unary operations f, g, h.
inline std::shared_ptr<const Signature> unary_theory() {
  auto sig = std::make_shared<Signature>();
  auto x = sig->add_colour("x");
  sig->add_operation("f", Word{x}, Word{x});
  sig->add_operation("g", Word{x}, Word{x});
  sig->add_operation("h", Word{x}, Word{x});
  return sig;
}

// One colour c with a single binary multiplication m: cc -> c.
inline std::shared_ptr<const Signature> mult_theory() {
  auto sig = std::make_shared<Signature>();
  auto c = sig->add_colour("c");
  sig->add_operation("m", Word{c, c}, Word{c});
  return sig;
}

// Two colours r, g whose only operations hop between them.
inline std::shared_ptr<const Signature> switch_theory() {
  auto sig = std::make_shared<Signature>();
  auto r = sig->add_colour("r");
  auto g = sig->add_colour("g");
  sig->add_operation("rg", Word{r}, Word{g});
  sig->add_operation("gr", Word{g}, Word{r});
  return sig;
}

// Three colours with a spread of operation shapes, for generator-driven
// suites that need some variety.
inline std::shared_ptr<const Signature> three_colour_theory() {
  auto sig = std::make_shared<Signature>();
  auto a = sig->add_colour("a");
  auto b = sig->add_colour("b");
  auto c = sig->add_colour("c");
  sig->add_operation("p", Word{a}, Word{b});
  sig->add_operation("q", Word{b, b}, Word{c});
  sig->add_operation("r", Word{c}, Word{a, a});
  sig->add_operation("s", Word{a, c}, Word{b});
  return sig;
}

inline Rule make_rule(const Signature& sig, const std::string& name,
                      const std::string& lhs, const std::string& rhs) {
  return Rule(name, parse_diagram(lhs, sig), parse_diagram(rhs, sig));
}

// The canonical Frobenius structure on a word, assembled from the
// per-colour generators with interleaving crossings: the multiplication
// w.w -> w, its unit, and their duals.

inline Diagram unit_word(const Word& w) {
  Diagram out = Diagram::empty();
  for (ColourId c : w) out = Diagram::par(out, Diagram::unit(c));
  return out;
}

inline Diagram counit_word(const Word& w) {
  Diagram out = Diagram::empty();
  for (ColourId c : w) out = Diagram::par(out, Diagram::counit(c));
  return out;
}

inline Diagram mult_word(const Word& w) {
  if (w.empty()) return Diagram::empty();
  ColourId c = w[0];
  Word head{c};
  Word tail(std::vector<ColourId>(w.begin() + 1, w.end()));
  if (tail.empty()) return Diagram::mult(c);
  // c tail c tail -> c c tail tail, then multiply componentwise.
  Diagram shuffle = Diagram::par(
      Diagram::par(Diagram::id(c), sym_word(tail, head)), id_word(tail));
  return Diagram::seq(shuffle, Diagram::par(Diagram::mult(c), mult_word(tail)));
}

inline Diagram comult_word(const Word& w) {
  if (w.empty()) return Diagram::empty();
  ColourId c = w[0];
  Word head{c};
  Word tail(std::vector<ColourId>(w.begin() + 1, w.end()));
  if (tail.empty()) return Diagram::comult(c);
  // Copy componentwise, then c c tail tail -> c tail c tail.
  Diagram shuffle = Diagram::par(
      Diagram::par(Diagram::id(c), sym_word(head, tail)), id_word(tail));
  return Diagram::seq(Diagram::par(Diagram::comult(c), comult_word(tail)), shuffle);
}

}  // namespace frobrew::testing
