#include "frobrew/diagram.hpp"

#include <cctype>
#include <sstream>

namespace frobrew {

struct Diagram::Node {
  Kind kind;
  OpId op = 0;
  ColourId c = 0, d = 0;
  std::shared_ptr<const Node> left, right;
  Word dom, cod;
};

Diagram Diagram::empty() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Empty;
  return Diagram(std::move(n));
}

Diagram Diagram::gen(const Signature& sig, OpId op) {
  const auto& sym = sig.operation(op);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Gen;
  n->op = op;
  n->dom = sym.arity;
  n->cod = sym.coarity;
  return Diagram(std::move(n));
}

Diagram Diagram::id(ColourId c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Id;
  n->c = c;
  n->dom = Word{c};
  n->cod = Word{c};
  return Diagram(std::move(n));
}

Diagram Diagram::sym(ColourId c, ColourId d) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sym;
  n->c = c;
  n->d = d;
  n->dom = Word{c, d};
  n->cod = Word{d, c};
  return Diagram(std::move(n));
}

Diagram Diagram::mult(ColourId c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mult;
  n->c = c;
  n->dom = Word{c, c};
  n->cod = Word{c};
  return Diagram(std::move(n));
}

Diagram Diagram::unit(ColourId c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unit;
  n->c = c;
  n->cod = Word{c};
  return Diagram(std::move(n));
}

Diagram Diagram::comult(ColourId c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Comult;
  n->c = c;
  n->dom = Word{c};
  n->cod = Word{c, c};
  return Diagram(std::move(n));
}

Diagram Diagram::counit(ColourId c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Counit;
  n->c = c;
  n->dom = Word{c};
  return Diagram(std::move(n));
}

namespace {

std::string word_indices(const Word& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w[i]);
  }
  return out + "]";
}

}  // namespace

Diagram Diagram::seq(Diagram left, Diagram right) {
  if (left.cod() != right.dom())
    throw TypeError("cannot compose: middle words differ, " +
                    word_indices(left.cod()) + " vs " + word_indices(right.dom()));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Seq;
  n->dom = left.dom();
  n->cod = right.cod();
  n->left = left.node_;
  n->right = right.node_;
  return Diagram(std::move(n));
}

Diagram Diagram::par(Diagram top, Diagram bottom) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Par;
  n->dom = word_concat(top.dom(), bottom.dom());
  n->cod = word_concat(top.cod(), bottom.cod());
  n->left = top.node_;
  n->right = bottom.node_;
  return Diagram(std::move(n));
}

Diagram::Kind Diagram::kind() const { return node_->kind; }
const Word& Diagram::dom() const { return node_->dom; }
const Word& Diagram::cod() const { return node_->cod; }
OpId Diagram::op() const { return node_->op; }
ColourId Diagram::colour() const { return node_->c; }
ColourId Diagram::colour2() const { return node_->d; }

Diagram Diagram::left() const { return Diagram(node_->left); }
Diagram Diagram::right() const { return Diagram(node_->right); }

bool Diagram::operator==(const Diagram& other) const {
  const Node* a = node_.get();
  const Node* b = other.node_.get();
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Empty: return true;
    case Kind::Gen: return a->op == b->op;
    case Kind::Id:
    case Kind::Mult:
    case Kind::Unit:
    case Kind::Comult:
    case Kind::Counit: return a->c == b->c;
    case Kind::Sym: return a->c == b->c && a->d == b->d;
    case Kind::Seq:
    case Kind::Par:
      return Diagram(a->left) == Diagram(b->left) &&
             Diagram(a->right) == Diagram(b->right);
  }
  return false;
}

std::pair<Word, Word> type_of(const Diagram& d) { return {d.dom(), d.cod()}; }

Diagram id_word(const Word& w) {
  if (w.empty()) return Diagram::empty();
  Diagram out = Diagram::id(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i)
    out = Diagram::par(out, Diagram::id(w[i]));
  return out;
}

Diagram permutation_diagram(const Word& w, const std::vector<std::uint32_t>& target_pos) {
  const std::size_t n = w.size();
  if (target_pos.size() != n)
    throw TypeError("permutation length does not match word length");
  std::vector<bool> seen(n, false);
  for (auto p : target_pos) {
    if (p >= n || seen[p]) throw TypeError("not a permutation of wire positions");
    seen[p] = true;
  }

  // Bubble the wires into place; every adjacent swap becomes one layer
  // id + sym + id.  Quadratic in the number of wires, which is plenty here.
  std::vector<std::uint32_t> slot_target(target_pos);
  Word current = w;
  Diagram out = id_word(w);
  bool changed = true;
  bool any_layer = false;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (slot_target[k] > slot_target[k + 1]) {
        Diagram layer = Diagram::sym(current[k], current[k + 1]);
        if (k > 0) {
          Word prefix(std::vector<ColourId>(current.colours.begin(),
                                            current.colours.begin() + k));
          layer = Diagram::par(id_word(prefix), layer);
        }
        if (k + 2 < n) {
          Word suffix(std::vector<ColourId>(current.colours.begin() + k + 2,
                                            current.colours.end()));
          layer = Diagram::par(layer, id_word(suffix));
        }
        out = any_layer ? Diagram::seq(out, layer) : layer;
        any_layer = true;
        std::swap(slot_target[k], slot_target[k + 1]);
        std::swap(current.colours[k], current.colours[k + 1]);
        changed = true;
      }
    }
  }
  return any_layer ? out : id_word(w);
}

Diagram sym_word(const Word& w, const Word& u) {
  const std::size_t n1 = w.size(), n2 = u.size();
  std::vector<std::uint32_t> target(n1 + n2);
  for (std::size_t i = 0; i < n1; ++i) target[i] = static_cast<std::uint32_t>(n2 + i);
  for (std::size_t i = 0; i < n2; ++i) target[n1 + i] = static_cast<std::uint32_t>(i);
  return permutation_diagram(word_concat(w, u), target);
}

namespace {

Diagram cup_one(ColourId c) { return Diagram::seq(Diagram::unit(c), Diagram::comult(c)); }
Diagram cap_one(ColourId c) { return Diagram::seq(Diagram::mult(c), Diagram::counit(c)); }

// Positions of the interleaved word c1 c1 c2 c2 ... relative to w . w.
std::vector<std::uint32_t> interleave_targets(std::size_t n) {
  std::vector<std::uint32_t> target(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    target[2 * i] = static_cast<std::uint32_t>(i);
    target[2 * i + 1] = static_cast<std::uint32_t>(n + i);
  }
  return target;
}

Word interleaved(const Word& w) {
  Word out;
  for (ColourId c : w) {
    out.push_back(c);
    out.push_back(c);
  }
  return out;
}

}  // namespace

Diagram cup(const Word& w) {
  if (w.empty()) return Diagram::empty();
  if (w.size() == 1) return cup_one(w[0]);
  Diagram cups = cup_one(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) cups = Diagram::par(cups, cup_one(w[i]));
  // cups : e -> c1 c1 c2 c2 ...; route copy i to positions i and n+i.
  return Diagram::seq(cups, permutation_diagram(interleaved(w), interleave_targets(w.size())));
}

Diagram cap(const Word& w) {
  if (w.empty()) return Diagram::empty();
  if (w.size() == 1) return cap_one(w[0]);
  Diagram caps = cap_one(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) caps = Diagram::par(caps, cap_one(w[i]));
  // Inverse shuffle first: w . w -> c1 c1 c2 c2 ...
  const auto fwd = interleave_targets(w.size());
  std::vector<std::uint32_t> inv(fwd.size());
  for (std::size_t i = 0; i < fwd.size(); ++i) inv[fwd[i]] = static_cast<std::uint32_t>(i);
  return Diagram::seq(permutation_diagram(word_concat(w, w), inv), caps);
}

Diagram fold_term(const Diagram& a) {
  const Word& w1 = a.dom();
  return Diagram::seq(cup(w1), Diagram::par(id_word(w1), a));
}

Rule::Rule(std::string name_, Diagram lhs_, Diagram rhs_)
    : name(std::move(name_)), lhs(std::move(lhs_)), rhs(std::move(rhs_)) {
  if (lhs.dom() != rhs.dom() || lhs.cod() != rhs.cod())
    throw TypeError("rule '" + name + "': sides have different types");
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool accept(char ch) {
    if (peek() == ch) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!accept(ch))
      throw ParseError(std::string("expected '") + ch + "' at offset " +
                       std::to_string(pos) + " in term");
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos)
      throw ParseError("expected a name at offset " + std::to_string(pos) + " in term");
    return text.substr(start, pos - start);
  }
};

struct TermParser {
  Lexer lex;
  const Signature& sig;

  Word bracket_word() {
    lex.expect('[');
    Word w;
    while (lex.peek() != ']' && lex.peek() != ',') {
      std::string name = lex.ident();
      auto c = sig.find_colour(name);
      if (!c) throw ParseError("undeclared colour '" + name + "' in term");
      w.push_back(*c);
    }
    return w;
  }

  ColourId bracket_colour(const std::string& what) {
    Word w = bracket_word();
    if (w.size() != 1)
      throw ParseError(what + " takes exactly one colour");
    lex.expect(']');
    return w[0];
  }

  Diagram atom() {
    if (lex.accept('(')) {
      Diagram inner = seq_expr();
      lex.expect(')');
      return inner;
    }
    std::string name = lex.ident();
    if (name == "empty") return Diagram::empty();
    if (name == "id") {
      Word w = bracket_word();
      lex.expect(']');
      return id_word(w);
    }
    if (name == "sym") {
      Word w = bracket_word();
      lex.expect(',');
      Word u = bracket_tail();
      return sym_word(w, u);
    }
    if (name == "mult") return Diagram::mult(bracket_colour("mult"));
    if (name == "unit") return Diagram::unit(bracket_colour("unit"));
    if (name == "comult") return Diagram::comult(bracket_colour("comult"));
    if (name == "counit") return Diagram::counit(bracket_colour("counit"));
    auto op = sig.find_operation(name);
    if (!op) throw ParseError("unknown operation '" + name + "' in term");
    return Diagram::gen(sig, *op);
  }

  // The word between a ',' and the closing ']' of sym[w, u].
  Word bracket_tail() {
    Word w;
    while (lex.peek() != ']') {
      std::string name = lex.ident();
      auto c = sig.find_colour(name);
      if (!c) throw ParseError("undeclared colour '" + name + "' in term");
      w.push_back(*c);
    }
    lex.expect(']');
    return w;
  }

  Diagram par_expr() {
    Diagram out = atom();
    while (lex.accept('+')) out = Diagram::par(out, atom());
    return out;
  }

  Diagram seq_expr() {
    Diagram out = par_expr();
    while (lex.accept(';')) out = Diagram::seq(out, par_expr());
    return out;
  }
};

int precedence(Diagram::Kind k) {
  switch (k) {
    case Diagram::Kind::Seq: return 0;
    case Diagram::Kind::Par: return 1;
    default: return 2;
  }
}

void print_term(std::ostream& out, const Diagram& d, const Signature& sig, int min_prec) {
  const int prec = precedence(d.kind());
  const bool parens = prec < min_prec;
  if (parens) out << '(';
  switch (d.kind()) {
    case Diagram::Kind::Empty: out << "empty"; break;
    case Diagram::Kind::Gen: out << sig.operation(d.op()).name; break;
    case Diagram::Kind::Id: out << "id[" << sig.colour_name(d.colour()) << ']'; break;
    case Diagram::Kind::Sym:
      out << "sym[" << sig.colour_name(d.colour()) << ", " << sig.colour_name(d.colour2())
          << ']';
      break;
    case Diagram::Kind::Mult: out << "mult[" << sig.colour_name(d.colour()) << ']'; break;
    case Diagram::Kind::Unit: out << "unit[" << sig.colour_name(d.colour()) << ']'; break;
    case Diagram::Kind::Comult:
      out << "comult[" << sig.colour_name(d.colour()) << ']';
      break;
    case Diagram::Kind::Counit:
      out << "counit[" << sig.colour_name(d.colour()) << ']';
      break;
    case Diagram::Kind::Seq:
      print_term(out, d.left(), sig, 0);
      out << " ; ";
      print_term(out, d.right(), sig, 1);
      break;
    case Diagram::Kind::Par:
      print_term(out, d.left(), sig, 1);
      out << " + ";
      print_term(out, d.right(), sig, 2);
      break;
  }
  if (parens) out << ')';
}

}  // namespace

Diagram parse_diagram(const std::string& text, const Signature& sig) {
  TermParser p{Lexer{text}, sig};
  Diagram d = p.seq_expr();
  if (!p.lex.eof())
    throw ParseError("trailing input after term at offset " + std::to_string(p.lex.pos));
  return d;
}

std::string print_diagram(const Diagram& d, const Signature& sig) {
  std::ostringstream out;
  print_term(out, d, sig, 0);
  return out.str();
}

std::vector<Rule> parse_rules(std::istream& in, const Signature& sig) {
  std::vector<Rule> rules;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    bool blank = true;
    for (char ch : raw)
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    if (blank) continue;
    try {
      std::istringstream line(raw);
      std::string kw, name, colon;
      line >> kw >> name >> colon;
      if (kw != "rule" || colon != ":")
        throw ParseError("expected 'rule <name> : <term> => <term>'", line_no);
      for (const auto& r : rules)
        if (r.name == name) throw ParseError("duplicate rule '" + name + "'", line_no);
      std::string rest;
      std::getline(line, rest);
      auto arrow = rest.find("=>");
      if (arrow == std::string::npos)
        throw ParseError("expected '=>' between rule sides", line_no);
      Diagram lhs = parse_diagram(rest.substr(0, arrow), sig);
      Diagram rhs = parse_diagram(rest.substr(arrow + 2), sig);
      rules.emplace_back(name, std::move(lhs), std::move(rhs));
    } catch (const ParseError& e) {
      if (e.line != 0) throw;
      throw ParseError(e.what(), line_no);
    } catch (const TypeError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return rules;
}

std::vector<Rule> parse_rules(const std::string& text, const Signature& sig) {
  std::istringstream in(text);
  return parse_rules(in, sig);
}

}  // namespace frobrew
