#pragma once

#include "frobrew/signature.hpp"

#include <memory>
#include <utility>

namespace frobrew {

/// A string-diagram term over a signature, with one extra family of
/// generators per colour: a commutative monoid (mult, unit) and its dual
/// comonoid (comult, counit) subject to the separable Frobenius laws.
///
/// Terms are immutable trees with structural sharing.  Sequential
/// composition is checked at construction time, so every reachable value
/// is well typed and carries its input/output words.  Equality is
/// syntactic; semantic equality lives in the translation to cospans.
class Diagram {
 public:
  enum class Kind {
    Empty,    // identity on the empty word
    Gen,      // an operation symbol from the signature
    Id,       // identity wire on one colour
    Sym,      // crossing of two wires
    Mult,     // c . c -> c
    Unit,     // e -> c
    Comult,   // c -> c . c
    Counit,   // c -> e
    Seq,      // left ; right
    Par       // top + bottom
  };

  static Diagram empty();
  static Diagram gen(const Signature& sig, OpId op);
  static Diagram id(ColourId c);
  static Diagram sym(ColourId c, ColourId d);
  static Diagram mult(ColourId c);
  static Diagram unit(ColourId c);
  static Diagram comult(ColourId c);
  static Diagram counit(ColourId c);
  static Diagram seq(Diagram left, Diagram right);  // throws TypeError
  static Diagram par(Diagram top, Diagram bottom);

  Kind kind() const;
  const Word& dom() const;
  const Word& cod() const;

  OpId op() const;           // Gen only
  ColourId colour() const;   // Id/Sym/Mult/Unit/Comult/Counit; Sym's first wire
  ColourId colour2() const;  // Sym's second wire
  Diagram left() const;   // Seq/Par
  Diagram right() const;  // Seq/Par

  bool operator==(const Diagram& other) const;
  bool operator!=(const Diagram& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit Diagram(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::pair<Word, Word> type_of(const Diagram& d);

/// Identity on a word: empty for the empty word, a tensor of single-wire
/// identities otherwise.
Diagram id_word(const Word& w);

/// The crossing w . u -> u . w, assembled from basic two-wire crossings.
Diagram sym_word(const Word& w, const Word& u);

/// A wire shuffle.  `target_pos[i]` is the output position of input wire i;
/// the output word is the induced rearrangement of `w`.  Built as a chain
/// of adjacent crossings (the identity when `target_pos` is sorted).
Diagram permutation_diagram(const Word& w, const std::vector<std::uint32_t>& target_pos);

/// cup(w) : e -> w . w and cap(w) : w . w -> e, the self-dual compact
/// structure induced by the Frobenius generators.  On one colour these are
/// unit;comult and mult;counit; on longer words the per-colour cups are
/// tensored and then shuffled into place.
Diagram cup(const Word& w);
Diagram cap(const Word& w);

/// Bends the whole input interface of `a : w1 -> w2` to the right:
/// the result has type e -> w1 . w2.
Diagram fold_term(const Diagram& a);

/// A named rewrite rule between two terms of equal type.
struct Rule {
  std::string name;
  Diagram lhs;
  Diagram rhs;

  Rule(std::string name, Diagram lhs, Diagram rhs);  // throws TypeError
};

/// Term syntax:  t ::= t ';' t | t '+' t | '(' t ')' | atom
/// with atoms  OPNAME, id[w], sym[w, u], mult[c], unit[c], comult[c],
/// counit[c], empty.  '+' binds tighter than ';'; both associate left.
Diagram parse_diagram(const std::string& text, const Signature& sig);
std::string print_diagram(const Diagram& d, const Signature& sig);

/// Rule files: one `rule <name> : <term> => <term>` per line, '#' comments.
std::vector<Rule> parse_rules(std::istream& in, const Signature& sig);
std::vector<Rule> parse_rules(const std::string& text, const Signature& sig);

}  // namespace frobrew
