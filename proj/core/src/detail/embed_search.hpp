#pragma once

// Backtracking search for injective arc-preserving maps of a small connected
// pattern into a host digraph.

#include <atomic>
#include <cstdint>
#include <vector>

#include "treecount/graph.hpp"

namespace treecount::detail {

struct EmbedPlan {
  struct Link {
    int pos = 0;          // earlier position
    bool from_earlier = true;  // the pattern arc runs earlier -> this
  };
  std::vector<int> order;   // pattern vertex at each position
  std::vector<int> anchor;  // earlier position used to generate candidates (-1 for 0)
  std::vector<bool> anchor_out;  // candidates are out-neighbours of the anchor image
  std::vector<std::vector<Link>> links;
  std::vector<int> need_out, need_in;

  // Throws InputError when the pattern is not weakly connected.
  EmbedPlan(const Digraph& pattern, int root);
  int size() const { return static_cast<int>(order.size()); }
};

class EmbedSearch {
 public:
  // allowed may be empty (every vertex allowed). The shared node counter is
  // checked against the budget so parallel workers stop together.
  EmbedSearch(const Digraph& g, const EmbedPlan& plan, const std::vector<char>& allowed,
              std::atomic<std::uint64_t>& nodes, std::uint64_t budget);

  // Number of completions with position 0 mapped to `first`. With stop_at_first
  // the search ends at the first completion, which is kept in found().
  std::uint64_t run(int first, bool stop_at_first);
  bool exhausted() const { return exhausted_; }
  // Host image of every pattern vertex (indexed by pattern vertex id).
  const std::vector<int>& found() const { return found_; }

 private:
  bool extend(int k);
  bool usable(int w, int k) const;

  const Digraph& g_;
  const EmbedPlan& plan_;
  const std::vector<char>& allowed_;
  std::atomic<std::uint64_t>& nodes_;
  std::uint64_t budget_;
  std::vector<int> img_;
  std::vector<char> used_;
  std::vector<int> found_;
  std::uint64_t count_ = 0;
  bool stop_ = false;
  bool exhausted_ = false;
};

}  // namespace treecount::detail
