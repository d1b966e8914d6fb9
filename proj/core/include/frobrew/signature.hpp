#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frobrew {

using ColourId = std::uint32_t;
using OpId = std::uint32_t;

/// Raised by the text-format parsers; `line` is 1-based, 0 when unknown.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& message, std::size_t line = 0);
  std::size_t line;
};

/// Raised when two pieces of syntax do not fit together (composition,
/// rule sides, interface words, ...).
struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A finite sequence of colours.  The empty word is the monoidal unit.
struct Word {
  std::vector<ColourId> colours;

  Word() = default;
  explicit Word(std::vector<ColourId> cs) : colours(std::move(cs)) {}
  Word(std::initializer_list<ColourId> cs) : colours(cs) {}

  std::size_t size() const { return colours.size(); }
  bool empty() const { return colours.empty(); }
  ColourId operator[](std::size_t i) const { return colours[i]; }
  void push_back(ColourId c) { colours.push_back(c); }

  auto begin() const { return colours.begin(); }
  auto end() const { return colours.end(); }

  bool operator==(const Word&) const = default;
};

Word word_concat(const Word& a, const Word& b);

struct OperationSymbol {
  std::string name;
  Word arity;    // input word
  Word coarity;  // output word
};

/// A monoidal signature: a set of colours and a set of operation symbols
/// typed by words over those colours.  Immutable once built; colours and
/// operations are addressed by the index assigned at insertion.
class Signature {
 public:
  ColourId add_colour(const std::string& name);
  OpId add_operation(const std::string& name, Word arity, Word coarity);

  std::size_t colour_count() const { return colour_names_.size(); }
  std::size_t operation_count() const { return operations_.size(); }

  const std::string& colour_name(ColourId c) const;
  const OperationSymbol& operation(OpId o) const;

  std::optional<ColourId> find_colour(const std::string& name) const;
  std::optional<OpId> find_operation(const std::string& name) const;

  /// Throws TypeError when the word mentions a colour this signature does
  /// not define (the only way a foreign word can be detected).
  void check_word(const Word& w) const;

  bool operator==(const Signature& other) const;

 private:
  std::vector<std::string> colour_names_;
  std::vector<OperationSymbol> operations_;
};

/// Renders a word with the signature's colour names.  Single-character
/// colour names are joined directly ("cd"), longer ones with spaces;
/// the empty word prints as the Greek epsilon.
std::string format_word(const Signature& sig, const Word& w);

Signature parse_signature(std::istream& in);
Signature parse_signature(const std::string& text);
void print_signature(std::ostream& out, const Signature& sig);
std::string print_signature(const Signature& sig);

}  // namespace frobrew
