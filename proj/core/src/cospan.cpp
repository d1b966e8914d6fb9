#include "frobrew/cospan.hpp"

#include <sstream>

namespace frobrew {

Word interface_word(const Hypergraph& carrier, const Interface& iface) {
  Word w;
  for (NodeId n : iface.nodes) w.push_back(carrier.colour(n));
  return w;
}

void Cospan::validate() const {
  carrier.validate();
  for (NodeId n : left.nodes)
    if (n >= carrier.node_count()) throw TypeError("left leg points outside the carrier");
  for (NodeId n : right.nodes)
    if (n >= carrier.node_count()) throw TypeError("right leg points outside the carrier");
}

namespace {

Interface map_interface(const Interface& iface, const Homomorphism& h) {
  Interface out;
  out.nodes.reserve(iface.size());
  for (NodeId n : iface.nodes) out.nodes.push_back(h.node_map[n]);
  return out;
}

}  // namespace

Cospan compose(const Cospan& f, const Cospan& g) {
  const Word shared = f.right_word();
  if (!(shared == g.left_word()))
    throw TypeError("cannot compose cospans: interface words differ");

  Hypergraph j = discrete_graph(f.carrier.sig, shared);
  Homomorphism a{j, f.carrier, f.right.nodes, {}};
  Homomorphism b{j, g.carrier, g.left.nodes, {}};
  auto po = pushout_discrete(a, b);
  return Cospan{po.graph, map_interface(f.left, po.from_left),
                map_interface(g.right, po.from_right)};
}

Cospan tensor(const Cospan& f, const Cospan& g) {
  auto co = coproduct(f.carrier, g.carrier);
  Interface left = map_interface(f.left, co.into_left);
  Interface right = map_interface(f.right, co.into_left);
  Interface gl = map_interface(g.left, co.into_right);
  Interface gr = map_interface(g.right, co.into_right);
  left.nodes.insert(left.nodes.end(), gl.nodes.begin(), gl.nodes.end());
  right.nodes.insert(right.nodes.end(), gr.nodes.begin(), gr.nodes.end());
  return Cospan{co.graph, std::move(left), std::move(right)};
}

Cospan identity_cospan(std::shared_ptr<const Signature> sig, const Word& w) {
  Cospan out{discrete_graph(std::move(sig), w), {}, {}};
  for (NodeId n = 0; n < w.size(); ++n) {
    out.left.nodes.push_back(n);
    out.right.nodes.push_back(n);
  }
  return out;
}

Cospan permutation_cospan(std::shared_ptr<const Signature> sig, const Word& w,
                          const std::vector<std::uint32_t>& target_pos) {
  if (target_pos.size() != w.size())
    throw TypeError("permutation length does not match word length");
  std::vector<NodeId> right(w.size(), 0);
  std::vector<bool> seen(w.size(), false);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (target_pos[i] >= w.size() || seen[target_pos[i]])
      throw TypeError("not a permutation of wire positions");
    seen[target_pos[i]] = true;
    right[target_pos[i]] = static_cast<NodeId>(i);
  }
  Cospan out{discrete_graph(std::move(sig), w), {}, {}};
  for (NodeId n = 0; n < w.size(); ++n) out.left.nodes.push_back(n);
  out.right.nodes = std::move(right);
  return out;
}

Cospan fold_cospan(const Cospan& f) {
  Cospan out{f.carrier, {}, f.left};
  out.right.nodes.insert(out.right.nodes.end(), f.right.nodes.begin(),
                         f.right.nodes.end());
  return out;
}

std::optional<Homomorphism> cospan_isomorphism(const Cospan& f, const Cospan& g) {
  if (!(f.left_word() == g.left_word()) || !(f.right_word() == g.right_word()))
    return std::nullopt;
  std::vector<std::pair<NodeId, NodeId>> forced;
  for (std::size_t i = 0; i < f.left.size(); ++i)
    forced.emplace_back(f.left[i], g.left[i]);
  for (std::size_t i = 0; i < f.right.size(); ++i)
    forced.emplace_back(f.right[i], g.right[i]);
  return find_isomorphism(f.carrier, g.carrier, forced);
}

bool cospan_equal(const Cospan& f, const Cospan& g) {
  return cospan_isomorphism(f, g).has_value();
}

Cospan parse_cospan(std::istream& in, std::shared_ptr<const Signature> sig) {
  // Split the leg lines off, hand the rest to the hypergraph parser.
  std::ostringstream graph_text;
  std::string left_line, right_line;
  std::size_t left_no = 0, right_no = 0, line_no = 0;
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string stripped = raw;
    auto hash = stripped.find('#');
    if (hash != std::string::npos) stripped.erase(hash);
    std::istringstream probe(stripped);
    std::string first;
    probe >> first;
    if (first == "left:") {
      if (left_no) throw ParseError("duplicate 'left:' line", line_no);
      left_no = line_no;
      std::getline(probe, left_line);
    } else if (first == "right:") {
      if (right_no) throw ParseError("duplicate 'right:' line", line_no);
      right_no = line_no;
      std::getline(probe, right_line);
    } else {
      graph_text << raw << "\n";
    }
  }
  if (!left_no) throw ParseError("cospan file has no 'left:' line");
  if (!right_no) throw ParseError("cospan file has no 'right:' line");

  std::map<std::string, NodeId> names;
  Cospan out{parse_hypergraph(graph_text.str(), std::move(sig), &names), {}, {}};
  auto resolve = [&](const std::string& line, std::size_t no) {
    Interface iface;
    std::istringstream words(line);
    std::string name;
    while (words >> name) {
      auto it = names.find(name);
      if (it == names.end()) throw ParseError("unknown node '" + name + "'", no);
      iface.nodes.push_back(it->second);
    }
    return iface;
  };
  out.left = resolve(left_line, left_no);
  out.right = resolve(right_line, right_no);
  return out;
}

Cospan parse_cospan(const std::string& text, std::shared_ptr<const Signature> sig) {
  std::istringstream in(text);
  return parse_cospan(in, std::move(sig));
}

void print_cospan(std::ostream& out, const Cospan& f) {
  print_hypergraph(out, f.carrier);
  out << "left:";
  for (NodeId n : f.left.nodes) out << " n" << n;
  out << "\nright:";
  for (NodeId n : f.right.nodes) out << " n" << n;
  out << "\n";
}

std::string print_cospan(const Cospan& f) {
  std::ostringstream out;
  print_cospan(out, f);
  return out.str();
}

}  // namespace frobrew
