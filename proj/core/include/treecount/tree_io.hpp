#pragma once

#include <iosfwd>
#include <string>

#include "treecount/tree.hpp"

namespace treecount {

// `tree <n> <root>` then n-1 lines `<child> <parent> <up|down>`. up means the
// edge points from the child to its parent, down from the parent to the child.
RootedOrientedTree read_tree(std::istream& in, const std::string& source = "<input>");
RootedOrientedTree read_tree_file(const std::string& path);
void write_tree(std::ostream& out, const RootedOrientedTree& t);

}  // namespace treecount
