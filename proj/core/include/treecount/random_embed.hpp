#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treecount/matching.hpp"
#include "treecount/rng.hpp"
#include "treecount/tree.hpp"

namespace treecount {

// One draw of the branching random walk. images[i] is the host vertex of the
// i-th tree vertex in breadth-first order, so images[0] is the start.
struct Realisation {
  std::vector<int> images;
  double log_prob = 0.0;  // log2 of the product of transition weights (start excluded)
  bool self_avoiding = false;
  std::optional<bool> well_behaved;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  int worker = 0;
};

// Host image of tree vertex v.
inline int image_of(const RootedOrientedTree& t, const Realisation& r, int v) { return r.images[t.bfs_index(v)]; }

// Children pick their image from the parent's image with weight x_vw (down
// edges) or x_wv (up edges), independently. start < 0 draws the start
// uniformly. Throws ProcedureFailure when a parent image has no positive
// weight on the required side.
Realisation sample_tree(const PerfectFractionalMatching& x, const RootedOrientedTree& t, int start, CounterRng& rng);
Realisation sample_tree(const PerfectFractionalMatching& x, const RootedOrientedTree& t, int start,
                        std::uint64_t seed);

// Sample i uses stream i of `seed`, so the batch does not depend on `workers`;
// worker = i % workers is recorded for reporting only.
std::vector<Realisation> sample_batch(const PerfectFractionalMatching& x, const RootedOrientedTree& t, int start,
                                      std::uint64_t count, std::uint64_t seed, int workers = 1);

// log2 of the product of transition weights along `images` (breadth-first
// order, start excluded). -inf when some tree edge has no positive weight.
double realisation_log_prob(const PerfectFractionalMatching& x, const RootedOrientedTree& t,
                            const std::vector<int>& images);

// Walk of `steps` moves; pattern[k % size] says whether move k follows an arc
// forwards (Down) or backwards (Up). An empty pattern means all forwards.
std::vector<int> walk_pattern(const PerfectFractionalMatching& x, const std::vector<EdgeDir>& pattern, int start,
                              int steps, CounterRng& rng);

// rows[v][w] = P[R_v = w], indexed by tree vertex id.
struct MarginalTable {
  std::vector<std::vector<double>> rows;
};

// start < 0: uniform start.
MarginalTable marginals(const PerfectFractionalMatching& x, const RootedOrientedTree& t, int start);
// Distribution of the walk position after each of steps moves; entry 0 is the start.
std::vector<std::vector<double>> walk_marginals(const PerfectFractionalMatching& x,
                                                const std::vector<EdgeDir>& pattern, int start, int steps);

// H(R) in bits via the chain rule over the marginals. A uniform start adds log2 n.
double exact_tree_entropy(const PerfectFractionalMatching& x, const RootedOrientedTree& t, int start);
// (1 - 2 e^(-sqrt(ln n))) (m / n) h
double hr_lower_bound(double m, double n, double h);

bool is_self_avoiding(const std::vector<int>& images);
inline bool is_self_avoiding(const Realisation& r) { return is_self_avoiding(r.images); }
// 1 - m^2 b / n, for m edges
double self_avoid_reference_bound(double m, double n, double b);

struct ExpectednessThresholds {
  double a = 0.0;  // set-count slack
  double c = 0.0;  // weight and entropy slack
};

// a = n'^(1/4 - 1/(17 sqrt(ln n'))), c = n'^(-3/4 - 1/(18 sqrt(ln n'))).
ExpectednessThresholds well_behaved_thresholds(double n_inner);
// Below this host size the thresholds above are too loose or too tight to mean
// anything (the exponent corrections only settle once sqrt(ln n') >= 17).
bool thresholds_meaningful(double n_inner);

struct ExpectednessReport {
  ExpectednessThresholds thresholds;
  int set_size = 0;                 // |M|
  double max_set_deviation = 0.0;   // over S in the collection
  double max_weight_deviation = 0.0;
  double max_entropy_deviation = 0.0;
  bool set_expected = false;
  bool weight_expected = false;
  bool verdict = false;
};

// M is given in local ids of x's host, which is outer[inner_vertices] with
// inner_vertices ascending. The collection holds N+(v) and N-(v) of every
// outer vertex intersected with the inner vertex set. All comparisons are strict.
ExpectednessReport expectedness(const std::vector<int>& m_local, const Digraph& outer,
                                const std::vector<int>& inner_vertices, const PerfectFractionalMatching& x,
                                const ExpectednessThresholds& thresholds);

struct MixingReport {
  bool hypothesis_holds = false;
  std::string note;
  double epsilon = 0.0;
  double b = 0.0;
  double t_admissible = 0.0;  // 5 + 4 b^2 log2(b) / eps
  std::vector<int> steps;
  std::vector<double> deviation;  // max_v |n P[Z_t = v] - 1|
  std::vector<double> bound;      // e^(-eps t / (2 b^2))
  double roundoff_floor = 0.0;    // deviations below this are rounding noise and never fail the check
  bool bound_holds = true;        // over admissible t only
  int admissible_count = 0;
};

// Exact marginals of the pattern walk for t = t_min..t_max.
MixingReport mixing_check(const PerfectFractionalMatching& x, const std::vector<EdgeDir>& pattern, int start,
                          int t_min, int t_max);

}  // namespace treecount
