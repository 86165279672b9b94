#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treecount/graph.hpp"
#include "treecount/random_embed.hpp"
#include "treecount/tree.hpp"

namespace treecount {

struct PipelineOptions {
  std::uint64_t seed = 0;
  int retry_budget = 100;        // sampling attempts per stage
  int trunk_threshold = 0;       // 0 selects ceil(sqrt(n))
  double absorb_fraction = 0.9;  // trees above this share of |g| reserve a branch for completion
  double b = 8.0;                // normality reported against
  double gamma = 1.0;            // for the asymptotic parameters recorded in the trace
  std::uint64_t completion_budget = 5'000'000;  // search nodes per completion attempt
};

struct StageRecord {
  int piece = 0;
  int piece_size = 0;
  long long residual = 0;  // n_{i-1} of the decomposition
  int host_size = 0;
  double epsilon = 0.0;
  double b = 0.0;
  double entropy = 0.0;
  double sum_residual = 0.0;  // of the matching the stage samples from
  int attempts = 0;
  int start_image = -1;          // host vertex of the piece root
  std::vector<int> images;       // host vertices in the piece's breadth-first order
  double log_prob = 0.0;
  bool well_behaved = false;     // expectedness verdict with the lemma thresholds
  double set_deviation = 0.0;
  double weight_deviation = 0.0;
  std::vector<std::string> warnings;
};

struct PipelineTrace {
  bool success = false;
  std::string mode;  // trivial | direct | absorb | exhaustive
  std::string failure;
  int n = 0;
  int m = 0;
  AsymptoticParams params;
  int trunk_threshold = 0;
  int t_prime = -1;
  int t_double_prime = -1;
  std::vector<int> absorber;  // A
  int absorber_anchor = -1;   // v
  int pieces = 0;
  bool thresholds_enforced = false;
  std::vector<StageRecord> stages;
  int completion_attempts = 0;
  std::vector<int> embedding;  // tree vertex -> host vertex
  std::vector<std::string> notes;
};

// Throws InputError when |t| > |g| and ProcedureFailure when the minimum
// semidegree is not above |g|/2. Other failures come back with success =
// false and the trace so far.
PipelineTrace run_pipeline(const Digraph& g, const RootedOrientedTree& t, const PipelineOptions& opt = {});

// Injective, and every tree arc lands on a host arc with the same orientation.
bool is_valid_embedding(const Digraph& g, const RootedOrientedTree& t, const std::vector<int>& map);

}  // namespace treecount
