#include <algorithm>
#include <map>

#include "treecount/tree.hpp"

namespace treecount {

namespace {

// AHU-style canonical ids: a rooted subtree is identified by the sorted list
// of (edge orientation, child id) pairs below its root.
class CodeTable {
 public:
  explicit CodeTable(bool respect_orientation) : oriented_(respect_orientation) {}

  struct Result {
    int code = 0;
    BigInt aut = 1;
  };

  // Codes and automorphism counts of every vertex of t, skipping the child `cut`
  // of the root (pass -1 to keep all children).
  std::vector<Result> run(const RootedOrientedTree& t, int cut) {
    std::vector<Result> res(t.n());
    const auto& order = t.bfs();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int v = *it;
      std::vector<std::pair<int, int>> key;
      BigInt aut = 1;
      for (int c : t.children(v)) {
        if (v == t.root() && c == cut) continue;
        key.emplace_back(oriented_ ? static_cast<int>(t.dir(c)) : 0, res[c].code);
        aut *= res[c].aut;
      }
      std::sort(key.begin(), key.end());
      for (std::size_t i = 0; i < key.size();) {
        std::size_t j = i;
        while (j < key.size() && key[j] == key[i]) ++j;
        aut *= factorial(static_cast<unsigned>(j - i));
        i = j;
      }
      auto [pos, fresh] = ids_.try_emplace(std::move(key), static_cast<int>(ids_.size()));
      (void)fresh;
      res[v] = {pos->second, std::move(aut)};
    }
    return res;
  }

 private:
  bool oriented_;
  std::map<std::vector<std::pair<int, int>>, int> ids_;
};

std::vector<int> centroids(const RootedOrientedTree& t) {
  const int n = t.n();
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    int worst = n - t.subtree_size(v);
    for (int c : t.children(v)) worst = std::max(worst, t.subtree_size(c));
    if (2 * worst <= n) out.push_back(v);
  }
  return out;
}

}  // namespace

BigInt automorphism_count(const RootedOrientedTree& t, bool rooted, bool respect_orientation) {
  CodeTable table(respect_orientation);
  if (rooted) return table.run(t, -1)[t.root()].aut;

  const std::vector<int> cs = centroids(t);
  if (cs.size() == 1) {
    const RootedOrientedTree r = t.reroot(cs[0]);
    return table.run(r, -1)[r.root()].aut;
  }
  // Two adjacent centroids: split along their edge and compare the halves.
  const RootedOrientedTree r = t.reroot(cs[0]);
  const int other = cs[1];
  const auto res = table.run(r, other);
  BigInt total = res[r.root()].aut * res[other].aut;
  if (!respect_orientation && res[r.root()].code == res[other].code) total *= 2;
  return total;
}

}  // namespace treecount
