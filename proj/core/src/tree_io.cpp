#include "treecount/tree_io.hpp"

#include <fstream>
#include <ostream>

#include "detail/text_lines.hpp"

namespace treecount {

RootedOrientedTree read_tree(std::istream& in, const std::string& source) {
  detail::LineReader r(in, source);
  std::vector<std::string_view> tok;
  if (!r.next(tok)) r.fail("missing header line");
  if (tok.size() != 3 || tok[0] != "tree") r.fail("header must be 'tree <n> <root>'");
  const long long n = r.integer(tok[1], "vertex count");
  const long long root = r.integer(tok[2], "root");
  if (n < 1 || n > 100'000'000) r.fail("vertex count out of range");
  if (root < 0 || root >= n) r.fail("root out of range 0.." + std::to_string(n - 1));

  std::vector<int> parent(n, -2);
  std::vector<EdgeDir> dir(n, EdgeDir::Down);
  parent[root] = -1;
  for (long long k = 0; k + 1 < n; ++k) {
    if (!r.next(tok)) r.fail("expected " + std::to_string(n - 1) + " edges, found " + std::to_string(k));
    if (tok.size() != 3) r.fail("edge line must be '<child> <parent> <up|down>'");
    const long long c = r.integer(tok[0], "child");
    const long long p = r.integer(tok[1], "parent");
    if (c < 0 || c >= n || p < 0 || p >= n) r.fail("vertex id out of range 0.." + std::to_string(n - 1));
    if (c == p) r.fail("self-loop at vertex " + std::to_string(c));
    if (c == root) r.fail("the root cannot have a parent");
    if (parent[c] != -2) r.fail("vertex " + std::to_string(c) + " has two parents");
    if (tok[2] == "up") {
      dir[c] = EdgeDir::Up;
    } else if (tok[2] == "down") {
      dir[c] = EdgeDir::Down;
    } else {
      r.fail("orientation must be 'up' or 'down', got '" + std::string(tok[2]) + "'");
    }
    parent[c] = static_cast<int>(p);
  }
  if (r.next(tok)) r.fail("trailing content after " + std::to_string(n - 1) + " edges");
  try {
    return RootedOrientedTree(std::move(parent), std::move(dir));
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
}

RootedOrientedTree read_tree_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open tree file '" + path + "'");
  return read_tree(f, path);
}

void write_tree(std::ostream& out, const RootedOrientedTree& t) {
  out << "tree " << t.n() << ' ' << t.root() << '\n';
  for (int v = 0; v < t.n(); ++v) {
    if (t.parent(v) < 0) continue;
    out << v << ' ' << t.parent(v) << ' ' << (t.dir(v) == EdgeDir::Up ? "up" : "down") << '\n';
  }
}

}  // namespace treecount
