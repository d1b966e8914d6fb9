#include "frobrew/signature.hpp"

#include <cctype>
#include <sstream>

namespace frobrew {

namespace {

std::string with_line(const std::string& message, std::size_t line) {
  if (line == 0) return message;
  return "line " + std::to_string(line) + ": " + message;
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  return true;
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line_)
    : std::runtime_error(with_line(message, line_)), line(line_) {}

Word word_concat(const Word& a, const Word& b) {
  Word out = a;
  out.colours.insert(out.colours.end(), b.colours.begin(), b.colours.end());
  return out;
}

ColourId Signature::add_colour(const std::string& name) {
  if (!is_identifier(name)) throw ParseError("invalid colour name '" + name + "'");
  if (find_colour(name)) throw ParseError("duplicate colour '" + name + "'");
  colour_names_.push_back(name);
  return static_cast<ColourId>(colour_names_.size() - 1);
}

OpId Signature::add_operation(const std::string& name, Word arity, Word coarity) {
  if (!is_identifier(name)) throw ParseError("invalid operation name '" + name + "'");
  if (find_operation(name)) throw ParseError("duplicate operation '" + name + "'");
  check_word(arity);
  check_word(coarity);
  operations_.push_back({name, std::move(arity), std::move(coarity)});
  return static_cast<OpId>(operations_.size() - 1);
}

const std::string& Signature::colour_name(ColourId c) const {
  if (c >= colour_names_.size()) throw TypeError("colour index out of range");
  return colour_names_[c];
}

const OperationSymbol& Signature::operation(OpId o) const {
  if (o >= operations_.size()) throw TypeError("operation index out of range");
  return operations_[o];
}

std::optional<ColourId> Signature::find_colour(const std::string& name) const {
  for (std::size_t i = 0; i < colour_names_.size(); ++i)
    if (colour_names_[i] == name) return static_cast<ColourId>(i);
  return std::nullopt;
}

std::optional<OpId> Signature::find_operation(const std::string& name) const {
  for (std::size_t i = 0; i < operations_.size(); ++i)
    if (operations_[i].name == name) return static_cast<OpId>(i);
  return std::nullopt;
}

void Signature::check_word(const Word& w) const {
  for (ColourId c : w)
    if (c >= colour_names_.size())
      throw TypeError("word mentions colour index " + std::to_string(c) +
                      " outside this signature");
}

bool Signature::operator==(const Signature& other) const {
  if (colour_names_ != other.colour_names_) return false;
  if (operations_.size() != other.operations_.size()) return false;
  for (std::size_t i = 0; i < operations_.size(); ++i) {
    const auto& a = operations_[i];
    const auto& b = other.operations_[i];
    if (a.name != b.name || a.arity != b.arity || a.coarity != b.coarity) return false;
  }
  return true;
}

std::string format_word(const Signature& sig, const Word& w) {
  if (w.empty()) return "ε";
  bool compact = true;
  for (std::size_t i = 0; i < sig.colour_count(); ++i)
    if (sig.colour_name(static_cast<ColourId>(i)).size() != 1) compact = false;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !compact) out += ' ';
    out += sig.colour_name(w[i]);
  }
  return out;
}

namespace {

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Parses one side of an operation type: a possibly empty list of colour
// names; "()" is accepted as an explicit empty word.
Word parse_side(const Signature& sig, const std::vector<std::string>& toks,
                std::size_t begin, std::size_t end, std::size_t line) {
  Word w;
  if (end - begin == 1 && toks[begin] == "()") return w;
  for (std::size_t i = begin; i < end; ++i) {
    auto c = sig.find_colour(toks[i]);
    if (!c) throw ParseError("undeclared colour '" + toks[i] + "'", line);
    w.push_back(*c);
  }
  return w;
}

}  // namespace

Signature parse_signature(std::istream& in) {
  Signature sig;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto toks = split_words(raw);
    if (toks.empty()) continue;
    try {
      if (toks[0] == "colour") {
        if (toks.size() != 2) throw ParseError("expected 'colour <name>'", line_no);
        sig.add_colour(toks[1]);
      } else if (toks[0] == "op") {
        // op NAME : a b -> c d
        if (toks.size() < 4 || toks[2] != ":")
          throw ParseError("expected 'op <name> : <word> -> <word>'", line_no);
        std::size_t arrow = 0;
        for (std::size_t i = 3; i < toks.size(); ++i)
          if (toks[i] == "->") arrow = i;
        if (arrow == 0)
          throw ParseError("expected '->' in operation type", line_no);
        Word arity = parse_side(sig, toks, 3, arrow, line_no);
        Word coarity = parse_side(sig, toks, arrow + 1, toks.size(), line_no);
        sig.add_operation(toks[1], std::move(arity), std::move(coarity));
      } else {
        throw ParseError("unknown declaration '" + toks[0] + "'", line_no);
      }
    } catch (const ParseError& e) {
      if (e.line != 0) throw;
      throw ParseError(e.what(), line_no);
    }
  }
  return sig;
}

Signature parse_signature(const std::string& text) {
  std::istringstream in(text);
  return parse_signature(in);
}

void print_signature(std::ostream& out, const Signature& sig) {
  for (std::size_t i = 0; i < sig.colour_count(); ++i)
    out << "colour " << sig.colour_name(static_cast<ColourId>(i)) << "\n";
  for (std::size_t i = 0; i < sig.operation_count(); ++i) {
    const auto& op = sig.operation(static_cast<OpId>(i));
    out << "op " << op.name << " :";
    if (op.arity.empty()) out << " ()";
    for (ColourId c : op.arity) out << ' ' << sig.colour_name(c);
    out << " ->";
    if (op.coarity.empty()) out << " ()";
    for (ColourId c : op.coarity) out << ' ' << sig.colour_name(c);
    out << "\n";
  }
}

std::string print_signature(const Signature& sig) {
  std::ostringstream out;
  print_signature(out, sig);
  return out.str();
}

}  // namespace frobrew
