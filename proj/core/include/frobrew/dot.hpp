#pragma once

#include "frobrew/cospan.hpp"
#include "frobrew/dpoi.hpp"

#include <string>

namespace frobrew {

/// Graphviz rendering: nodes as colour-labelled circles, hyperedges as
/// operation-labelled boxes, tentacles as arrows numbered s0, s1, ...
/// into the box and t0, t1, ... out of it.
std::string to_dot(const Hypergraph& g);

/// As above, with dashed interface markers: l<i> for the left leg and
/// r<i> for the right leg.
std::string to_dot(const Cospan& f);

/// As above, with dashed interface markers i<position>.
std::string to_dot(const GraphWithInterface& g);

}  // namespace frobrew
