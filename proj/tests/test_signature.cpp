#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "frobrew/signature.hpp"

#include <sstream>

using namespace frobrew;

TEST_CASE("parse a two-colour signature") {
  Signature sig = parse_signature(
      "colour c\n"
      "colour d\n"
      "op o1 : c -> c d\n"
      "op o2 : d d -> c\n");
  REQUIRE(sig.colour_count() == 2);
  REQUIRE(sig.operation_count() == 2);
  auto c = sig.find_colour("c");
  auto d = sig.find_colour("d");
  REQUIRE(c.has_value());
  REQUIRE(d.has_value());
  auto o1 = sig.find_operation("o1");
  REQUIRE(o1.has_value());
  CHECK(sig.operation(*o1).arity == Word{*c});
  CHECK(sig.operation(*o1).coarity == Word({*c, *d}));
  auto o2 = sig.find_operation("o2");
  REQUIRE(o2.has_value());
  CHECK(sig.operation(*o2).arity == Word({*d, *d}));
  CHECK(sig.operation(*o2).coarity == Word{*c});
}

TEST_CASE("empty sides of an operation type") {
  Signature sig = parse_signature(
      "colour c1\n"
      "colour c2\n"
      "op o1 : c1 ->\n"
      "op o2 : c1 c2 -> c1 c1\n");
  auto o1 = sig.find_operation("o1");
  REQUIRE(o1.has_value());
  CHECK(sig.operation(*o1).coarity.empty());
  auto o2 = sig.find_operation("o2");
  REQUIRE(o2.has_value());
  CHECK(sig.operation(*o2).arity.size() == 2);
  CHECK(sig.operation(*o2).coarity.size() == 2);

  // "()" is accepted as an explicit empty side.
  Signature sig2 = parse_signature("colour c\nop u : () -> c\n");
  auto u = sig2.find_operation("u");
  REQUIRE(u.has_value());
  CHECK(sig2.operation(*u).arity.empty());
}

TEST_CASE("a signature can have colours and no operations") {
  Signature sig = parse_signature("colour c\n");
  CHECK(sig.colour_count() == 1);
  CHECK(sig.operation_count() == 0);
}

TEST_CASE("comments and blank lines are skipped") {
  Signature sig = parse_signature(
      "# a theory\n"
      "\n"
      "colour c  # the only colour\n"
      "op f : c -> c\n");
  CHECK(sig.colour_count() == 1);
  CHECK(sig.operation_count() == 1);
}

TEST_CASE("parse errors carry the offending line") {
  CHECK_THROWS_AS(parse_signature("colour c\nwibble\n"), ParseError);
  try {
    parse_signature("colour c\nwibble\n");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("duplicate names are rejected") {
  CHECK_THROWS_AS(parse_signature("colour c\ncolour c\n"), ParseError);
  CHECK_THROWS_AS(parse_signature("colour c\nop f : c -> c\nop f : c -> c\n"),
                  ParseError);
}

TEST_CASE("operation types must use declared colours") {
  CHECK_THROWS_AS(parse_signature("colour c\nop f : c -> e\n"), ParseError);
}

TEST_CASE("word concatenation") {
  Signature sig;
  ColourId c = sig.add_colour("c");
  ColourId d = sig.add_colour("d");
  CHECK(word_concat(Word({c, d}), Word{d}) == Word({c, d, d}));
  CHECK(word_concat(Word{}, Word({c})) == Word({c}));
  CHECK(word_concat(Word({c}), Word{}) == Word({c}));

  // Associativity with the empty word as unit, over a few samples.
  Word w1({c, d}), w2({d}), w3({c, c});
  CHECK(word_concat(word_concat(w1, w2), w3) == word_concat(w1, word_concat(w2, w3)));
}

TEST_CASE("format_word") {
  Signature sig;
  ColourId c = sig.add_colour("c");
  ColourId d = sig.add_colour("d");
  CHECK(format_word(sig, Word({c, d})) == "cd");
  CHECK(format_word(sig, Word{}) == "\xce\xb5");  // epsilon

  Signature longnames;
  ColourId wire = longnames.add_colour("wire");
  ColourId pipe = longnames.add_colour("pipe");
  CHECK(format_word(longnames, Word({wire, pipe})) == "wire pipe");
}

TEST_CASE("print then parse is the identity") {
  Signature sig = parse_signature(
      "colour c\n"
      "colour d\n"
      "op o1 : c -> c d\n"
      "op o2 : d d -> c\n"
      "op k : -> c\n");
  Signature back = parse_signature(print_signature(sig));
  CHECK(sig == back);
}

TEST_CASE("check_word rejects foreign colours") {
  Signature sig;
  sig.add_colour("c");
  CHECK_NOTHROW(sig.check_word(Word{0}));
  CHECK_THROWS_AS(sig.check_word(Word{7}), TypeError);
}
