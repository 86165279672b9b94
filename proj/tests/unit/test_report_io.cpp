#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "treecount/count.hpp"
#include "treecount/matching_io.hpp"
#include "treecount/report_io.hpp"

using namespace treecount;

TEST_CASE("count report json") {
  CountReport r;
  r.method = "brute";
  r.labelled = BigInt("123456789012345678901234567890");
  r.unlabelled = r.labelled;
  const auto j = nlohmann::json::parse(count_report_json(r));
  CHECK(j["labelled_count"] == "123456789012345678901234567890");
  CHECK(j["method"] == "brute");
}

TEST_CASE("non-finite values become null") {
  VerifyReport v;
  v.ratio_log2 = -std::numeric_limits<double>::infinity();
  const auto j = nlohmann::json::parse(verify_report_json(v));
  CHECK(j["ratio_log2"].is_null());
}

TEST_CASE("realisation csv") {
  Realisation r;
  r.images = {3, 1, 4};
  r.log_prob = -2.5;
  r.self_avoiding = true;
  r.well_behaved = false;
  r.seed = 9;
  std::ostringstream out;
  write_realisations_csv(out, {r});
  CHECK(out.str() == "seed,worker,images,log_prob,self_avoiding,well_behaved\n9,0,3 1 4,-2.5,1,0\n");
}

TEST_CASE("experiment csv") {
  std::ostringstream out;
  write_experiment_csv_header(out);
  CHECK(out.str() == "n,m,h_bits,aut,count,bound_log2,ratio_log2,holds\n");
}

TEST_CASE("double formatting round trips") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) CHECK(std::stod(format_double(v)) == v);
}
