#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "treecount/matching.hpp"

namespace treecount {

// `pfm <n> <m>` then one `<u> <v> <weight>` line per arc, weights with 17
// significant digits so that reading back is bit-exact.
void write_matching(std::ostream& out, const PerfectFractionalMatching& x);

// Arcs must be exactly the host's arcs (any order).
PerfectFractionalMatching read_matching(std::istream& in, std::shared_ptr<const Digraph> host,
                                        const std::string& source = "<input>");
// The host is rebuilt from the listed arcs.
PerfectFractionalMatching read_matching(std::istream& in, const std::string& source = "<input>");

std::string format_double(double v);

}  // namespace treecount
