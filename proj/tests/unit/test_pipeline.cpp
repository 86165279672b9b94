#include "doctest.h"
#include "treecount/errors.hpp"
#include "treecount/generators.hpp"
#include "treecount/pipeline.hpp"
#include "treecount/report_io.hpp"

using namespace treecount;

TEST_CASE("pipeline on K10 with a nine-vertex tree") {
  CounterRng rng(10, 0);
  const RootedOrientedTree t = random_tree(9, 3, rng);
  PipelineOptions opt;
  opt.seed = 5;
  const PipelineTrace tr = run_pipeline(complete_digraph(10), t, opt);
  REQUIRE(tr.success);
  CHECK(is_valid_embedding(complete_digraph(10), t, tr.embedding));
  for (const StageRecord& s : tr.stages) CHECK(s.sum_residual <= 1e-6);
}

TEST_CASE("pipeline preconditions") {
  const PipelineTrace one = run_pipeline(complete_digraph(4), RootedOrientedTree());
  CHECK(one.success);
  CHECK(one.mode == "trivial");
  CHECK(one.stages.empty());
  CHECK(one.embedding.size() == 1);

  CHECK_THROWS_AS(run_pipeline(directed_cycle(6), path_tree(3)), ProcedureFailure);
  CHECK_THROWS_AS(run_pipeline(complete_digraph(4), path_tree(5)), InputError);
}

TEST_CASE("pipeline modes") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    CounterRng rng(20, seed);
    const Digraph g = random_dense_digraph(40, 26, rng);
    const RootedOrientedTree half = random_tree(20, 4, rng);
    PipelineOptions opt;
    opt.seed = seed;
    const PipelineTrace direct = run_pipeline(g, half, opt);
    CHECK(direct.mode == "direct");
    CHECK(direct.success);
    CHECK(is_valid_embedding(g, half, direct.embedding));

    const RootedOrientedTree span = random_tree(40, 4, rng);
    const PipelineTrace full = run_pipeline(g, span, opt);
    CHECK(full.mode == "absorb");
    CHECK(full.success);
    CHECK(is_valid_embedding(g, span, full.embedding));
  }
}

TEST_CASE("spanning trees in tiny hosts") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CounterRng rng(30, seed);
    const Digraph g = random_dense_digraph(8, 5, rng);
    const RootedOrientedTree t = random_tree(8, 3, rng);
    PipelineOptions opt;
    opt.seed = seed;
    const PipelineTrace tr = run_pipeline(g, t, opt);
    CHECK(tr.success);
    CHECK((tr.mode == "absorb" || tr.mode == "exhaustive"));
    if (tr.success) CHECK(is_valid_embedding(g, t, tr.embedding));
  }
}

TEST_CASE("embedding validation") {
  const Digraph g = directed_cycle(4);
  CHECK(is_valid_embedding(g, path_tree(3), {1, 2, 3}));
  CHECK_FALSE(is_valid_embedding(g, path_tree(3), {1, 3, 2}));
  CHECK_FALSE(is_valid_embedding(g, path_tree(3), {1, 2, 2}));
  CHECK_FALSE(is_valid_embedding(g, path_tree(3), {1, 2}));
}

TEST_CASE("pipeline traces are reproducible") {
  CounterRng rng(40, 0);
  const Digraph g = random_dense_digraph(30, 20, rng);
  const RootedOrientedTree t = random_tree(30, 4, rng);
  PipelineOptions opt;
  opt.seed = 77;
  CHECK(pipeline_trace_json(run_pipeline(g, t, opt)) == pipeline_trace_json(run_pipeline(g, t, opt)));
}
