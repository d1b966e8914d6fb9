#include "frobrew/dot.hpp"

#include <sstream>

namespace frobrew {

namespace {

void emit_body(std::ostream& out, const Hypergraph& g) {
  out << "  rankdir=LR;\n";
  out << "  node [fontsize=11];\n";
  for (NodeId n = 0; n < g.node_count(); ++n)
    out << "  n" << n << " [label=\"" << g.sig->colour_name(g.colour(n))
        << "\", shape=circle];\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const HyperEdge& edge = g.edges[e];
    out << "  e" << e << " [label=\"" << g.sig->operation(edge.op).name
        << "\", shape=box, style=filled, fillcolor=lightgrey];\n";
    for (std::size_t i = 0; i < edge.sources.size(); ++i)
      out << "  n" << edge.sources[i] << " -> e" << e << " [label=\"s" << i
          << "\"];\n";
    for (std::size_t i = 0; i < edge.targets.size(); ++i)
      out << "  e" << e << " -> n" << edge.targets[i] << " [label=\"t" << i
          << "\"];\n";
  }
}

void emit_markers(std::ostream& out, const std::vector<NodeId>& nodes,
                  const std::string& prefix, bool into_graph) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out << "  " << prefix << i << " [label=\"" << prefix << i
        << "\", shape=plaintext];\n";
    if (into_graph)
      out << "  " << prefix << i << " -> n" << nodes[i] << " [style=dashed];\n";
    else
      out << "  n" << nodes[i] << " -> " << prefix << i << " [style=dashed];\n";
  }
}

}  // namespace

std::string to_dot(const Hypergraph& g) {
  std::ostringstream out;
  out << "digraph hypergraph {\n";
  emit_body(out, g);
  out << "}\n";
  return out.str();
}

std::string to_dot(const Cospan& f) {
  std::ostringstream out;
  out << "digraph cospan {\n";
  emit_body(out, f.carrier);
  emit_markers(out, f.left.nodes, "l", true);
  emit_markers(out, f.right.nodes, "r", false);
  out << "}\n";
  return out.str();
}

std::string to_dot(const GraphWithInterface& g) {
  std::ostringstream out;
  out << "digraph state {\n";
  emit_body(out, g.graph);
  emit_markers(out, g.iface.nodes, "i", false);
  out << "}\n";
  return out.str();
}

}  // namespace frobrew
