// treecount command-line front end. Every subcommand writes one artifact
// (--out) and prints a one-line summary on stdout.
//
// Exit codes: 0 success, 1 procedure failure, 2 input error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "treecount/count.hpp"
#include "treecount/errors.hpp"
#include "treecount/graph_io.hpp"
#include "treecount/matching.hpp"
#include "treecount/matching_io.hpp"
#include "treecount/pipeline.hpp"
#include "treecount/random_embed.hpp"
#include "treecount/report_io.hpp"
#include "treecount/tree_io.hpp"

using namespace treecount;
using nlohmann::ordered_json;

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::uint64_t samples = 10000;
  int workers = 1;
  double tol = 1e-10;
  double eps = 0.0;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_out, const std::string& default_format = "json") {
  c.out = default_out;
  c.format = default_format;
  cmd->fallthrough();  // lets --config follow the subcommand name
  cmd->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--samples", c.samples, "sample count")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--tol", c.tol, "scaling tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--eps", c.eps, "slack in the bound formulas")->capture_default_str();
  cmd->add_option("--out", c.out, "output file")->capture_default_str();
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << body;
}

std::string num(double v) { return format_double(v); }

ordered_json jnum(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

std::string file_header(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open '" + path + "'");
  std::string word;
  f >> word;
  return word;
}

PerfectFractionalMatching solve(const Digraph& g, double tol) {
  ScalingOptions so;
  so.tol = tol;
  return max_entropy_matching(g, so).matching;
}

std::vector<EdgeDir> parse_pattern(const std::string& s) {
  std::vector<EdgeDir> p;
  for (char ch : s) {
    if (ch == 'f' || ch == 'd') {
      p.push_back(EdgeDir::Down);
    } else if (ch == 'b' || ch == 'u') {
      p.push_back(EdgeDir::Up);
    } else {
      throw InputError(std::string("pattern letters are f (forward) and b (backward), got '") + ch + "'");
    }
  }
  return p;
}

int cmd_entropy(const Common& c, const std::string& graph_path, double b, const std::string& matching_out) {
  const ParsedGraph pg = read_graph_file(graph_path);
  const Digraph& g = pg.digraph;
  ScalingOptions so;
  so.tol = c.tol;
  const MaxEntropyResult me = max_entropy_matching(g, so);
  const double h = matching_entropy(me.matching);
  const NormalityReport nr = normality(me.matching);
  const HeavyMassReport hm = heavy_mass(me.matching, b);
  if (!matching_out.empty()) {
    std::ostringstream os;
    write_matching(os, me.matching);
    write_file(matching_out, os.str());
  }
  const double h_graph = pg.directed ? h : h / 2.0;
  if (c.format == "csv") {
    std::ostringstream os;
    os << "n,m,h_bits,b_min,sum_residual,product_residual,iters\n"
       << g.n() << ',' << g.arc_count() << ',' << num(h_graph) << ',' << num(nr.b_min) << ','
       << num(me.certificate.sum_residual) << ',' << num(me.certificate.product_residual) << ','
       << me.certificate.iterations << '\n';
    write_file(c.out, os.str());
  } else {
    ordered_json j;
    j["n"] = g.n();
    j["m"] = pg.directed ? g.arc_count() : pg.graph.edge_count();
    j["directed"] = pg.directed;
    j["h_bits"] = jnum(h_graph);
    j["b_min"] = jnum(nr.b_min);
    j["residuals"] = {{"sum", jnum(me.certificate.sum_residual)}, {"product", jnum(me.certificate.product_residual)}};
    j["iters"] = me.certificate.iterations;
    j["heavy_mass"] = {{"b", b},
                       {"mass", jnum(hm.mass)},
                       {"bound", jnum(hm.bound)},
                       {"hypothesis_holds", hm.hypothesis_holds},
                       {"bound_holds", hm.bound_holds}};
    write_file(c.out, j.dump(2) + "\n");
  }
  std::cout << "entropy: n=" << g.n() << " h_bits=" << num(h_graph) << " b_min=" << num(nr.b_min)
            << " iters=" << me.certificate.iterations << " -> " << c.out << "\n";
  return 0;
}

int cmd_count(const Common& c, const std::string& graph_path, const std::string& tree_path, const std::string& mode,
              int root) {
  const Digraph g = read_graph_file(graph_path).digraph;
  const RootedOrientedTree t = read_tree_file(tree_path);
  if (t.n() > g.n()) throw InputError("tree has more vertices than the host");
  double h = 0.0;
  std::optional<PerfectFractionalMatching> x;
  try {
    x = solve(g, c.tol);
    h = matching_entropy(*x);
  } catch (const ProcedureFailure&) {
    if (mode == "estimate") throw;
  }
  CountReport r;
  if (mode == "brute") {
    BruteOptions bo;
    bo.root_image = root;
    bo.workers = c.workers;
    r = count_copies_brute(g, t, bo);
  } else {
    EstimatorOptions eo;
    eo.samples = c.samples;
    eo.seed = c.seed;
    eo.workers = c.workers;
    eo.root_image = root;
    r = estimate_copies(*x, t, eo);
  }
  const BoundValue bound = directed_lower_bound({static_cast<double>(g.n()), h, c.eps, r.aut});
  if (c.format == "csv") {
    std::ostringstream os;
    os << "method,labelled,unlabelled,aut,estimate,ci_low,ci_high,h_bits,bound_log2,valid\n"
       << r.method << ',' << to_string(r.labelled) << ',' << to_string(r.unlabelled) << ',' << to_string(r.aut)
       << ',' << num(r.estimate) << ',' << (r.ci ? num(r.ci->low) : "") << ',' << (r.ci ? num(r.ci->high) : "")
       << ',' << num(h) << ',' << num(bound.log2) << ',' << (r.valid ? 1 : 0) << '\n';
    write_file(c.out, os.str());
  } else {
    ordered_json j = ordered_json::parse(count_report_json(r));
    j["h_bits"] = jnum(h);
    j["eps"] = c.eps;
    j["bound"] = {{"log2", jnum(bound.log2)}, {"value", jnum(bound.value)}};
    write_file(c.out, j.dump(2) + "\n");
  }
  std::cout << "count: method=" << r.method << " labelled=" << to_string(r.labelled)
            << " unlabelled=" << to_string(r.unlabelled) << " bound=" << num(bound.value) << " -> " << c.out << "\n";
  if (!r.valid) {
    std::cerr << "error: search budget exhausted; the count is partial\n";
    return 1;
  }
  return 0;
}

int cmd_sample(const Common& c, const std::string& graph_path, const std::string& tree_path, int root) {
  const Digraph g = read_graph_file(graph_path).digraph;
  const RootedOrientedTree t = read_tree_file(tree_path);
  if (root >= g.n()) throw InputError("root image outside the host");
  const PerfectFractionalMatching x = solve(g, c.tol);
  std::vector<Realisation> batch = sample_batch(x, t, root, c.samples, c.seed, c.workers);
  std::vector<int> all(g.n());
  for (int v = 0; v < g.n(); ++v) all[v] = v;
  const ExpectednessThresholds th = well_behaved_thresholds(std::max(2, g.n()));
  std::uint64_t avoiding = 0, behaved = 0;
  for (Realisation& r : batch) {
    const bool ok = r.self_avoiding && expectedness(r.images, g, all, x, th).verdict;
    r.well_behaved = ok;
    avoiding += r.self_avoiding;
    behaved += ok;
  }
  std::ostringstream os;
  if (c.format == "csv") {
    write_realisations_csv(os, batch);
  } else {
    ordered_json j;
    j["n"] = g.n();
    j["tree_size"] = t.n();
    j["seed"] = c.seed;
    j["thresholds"] = {{"a", th.a}, {"c", th.c}};
    ordered_json rows = ordered_json::array();
    for (const Realisation& r : batch)
      rows.push_back({{"stream", r.stream},
                      {"worker", r.worker},
                      {"images", r.images},
                      {"log_prob", jnum(r.log_prob)},
                      {"self_avoiding", r.self_avoiding},
                      {"well_behaved", *r.well_behaved}});
    j["samples"] = rows;
    os << j.dump(2) << "\n";
  }
  write_file(c.out, os.str());
  std::cout << "sample: samples=" << batch.size() << " self_avoiding=" << avoiding << " well_behaved=" << behaved
            << " -> " << c.out << "\n";
  return 0;
}

int cmd_mixing(const Common& c, const std::string& graph_path, const std::string& pattern, int start, int t_min,
               int t_max) {
  const Digraph g = read_graph_file(graph_path).digraph;
  if (start < 0 || start >= g.n()) throw InputError("start vertex outside the host");
  const PerfectFractionalMatching x = solve(g, c.tol);
  const MixingReport r = mixing_check(x, parse_pattern(pattern), start, t_min, t_max);
  if (c.format == "csv") {
    std::ostringstream os;
    os << "t,deviation,bound,admissible\n";
    for (std::size_t k = 0; k < r.steps.size(); ++k)
      os << r.steps[k] << ',' << num(r.deviation[k]) << ',' << num(r.bound[k]) << ','
         << (r.hypothesis_holds && r.steps[k] >= r.t_admissible ? 1 : 0) << '\n';
    write_file(c.out, os.str());
  } else {
    write_file(c.out, mixing_report_json(r));
  }
  std::cout << "mixing: eps=" << num(r.epsilon) << " b=" << num(r.b) << " admissible=" << r.admissible_count
            << " bound_holds=" << (r.bound_holds ? "true" : "false") << " -> " << c.out << "\n";
  return r.hypothesis_holds && !r.bound_holds ? 1 : 0;
}

int cmd_decompose(const Common& c, const std::string& tree_path, long long n0, int partition) {
  const RootedOrientedTree t = read_tree_file(tree_path);
  ordered_json j;
  j["n"] = t.n();
  bool ok = true;
  if (partition > 0) {
    const auto pieces = tree_partition(t, partition);
    const DecompositionCheck chk = check_partition(t, pieces, partition);
    ok = chk.ok();
    j["size_floor"] = partition;
    ordered_json ps = ordered_json::array();
    for (const Subtree& p : pieces) ps.push_back({{"root", p.root}, {"vertices", p.vertices}});
    j["pieces"] = ps;
    j["ok"] = ok;
    j["failures"] = chk.failures;
  } else {
    if (n0 <= 0) n0 = t.n();
    const TreeDecomposition d = quarter_decomposition(t, n0);
    const DecompositionCheck chk = check_decomposition(t, d);
    ok = chk.ok();
    j["n0"] = n0;
    j["delta"] = d.delta;
    j["degenerate"] = d.degenerate;
    ordered_json ps = ordered_json::array();
    for (std::size_t i = 0; i < d.pieces.size(); ++i)
      ps.push_back({{"root", d.pieces[i].root},
                    {"core_size", d.core_size[i]},
                    {"overlap", d.overlap[i]},
                    {"vertices", d.pieces[i].vertices}});
    j["pieces"] = ps;
    j["residuals"] = d.residuals;
    j["checks"] = {{"coverage", chk.coverage},
                   {"containment", chk.containment},
                   {"depth_order", chk.depth_order},
                   {"overlap", chk.overlap},
                   {"window", chk.window}};
    j["ok"] = ok;
    j["failures"] = chk.failures;
  }
  write_file(c.out, j.dump(2) + "\n");
  std::cout << "decompose: n=" << t.n() << " pieces=" << j["pieces"].size() << " ok=" << (ok ? "true" : "false")
            << " -> " << c.out << "\n";
  return ok ? 0 : 1;
}

int cmd_pipeline(const Common& c, const std::string& graph_path, const std::string& tree_path, int retries,
                 int threshold) {
  const Digraph g = read_graph_file(graph_path).digraph;
  const RootedOrientedTree t = read_tree_file(tree_path);
  PipelineOptions po;
  po.seed = c.seed;
  po.retry_budget = retries;
  po.trunk_threshold = threshold;
  PipelineTrace tr;
  try {
    tr = run_pipeline(g, t, po);
  } catch (const ProcedureFailure& e) {
    tr.n = g.n();
    tr.m = t.n();
    tr.failure = e.what();
  }
  write_file(c.out, pipeline_trace_json(tr));
  std::cout << "pipeline: success=" << (tr.success ? "true" : "false") << " mode=" << tr.mode
            << " stages=" << tr.stages.size() << " -> " << c.out << "\n";
  if (!tr.success) {
    std::cerr << "error: " << tr.failure << "\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const Common& c, const std::string& graph_path, const std::string& pattern_path) {
  const ParsedGraph pg = read_graph_file(graph_path);
  VerifyReport r;
  if (file_header(pattern_path) == "tree") {
    r = verify_bound_experiment(pg.digraph, read_tree_file(pattern_path), c.eps, c.workers);
  } else {
    const ParsedGraph pat = read_graph_file(pattern_path);
    if (pg.directed || pat.directed) throw InputError("pattern graphs are only supported for undirected hosts");
    r = verify_bound_experiment(pg.graph, pat.graph, c.eps, c.workers);
  }
  if (c.format == "csv") {
    std::ostringstream os;
    write_experiment_csv_header(os);
    write_experiment_csv_row(os, r);
    write_file(c.out, os.str());
  } else {
    write_file(c.out, verify_report_json(r));
  }
  std::cout << "verify: count=" << to_string(r.count) << " bound=" << num(r.bound.value)
            << " holds=" << (r.holds ? "true" : "false") << " -> " << c.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum-entropy matchings, random tree embeddings and tree-copy counts"};
  app.set_config("--config", "", "TOML/INI file with option values; command-line flags win");
  app.require_subcommand(1);

  // one option set per subcommand so each keeps its own --out and --format defaults
  Common c_entropy, c_count, c_sample, c_mixing, c_decompose, c_pipeline, c_verify;
  std::string graph_path, tree_path, pattern_path, mode = "brute", matching_out, walk = "f";
  double b = 8.0;
  int root = -1, start = 0, t_min = 0, t_max = 200, partition = 0, retries = 100, threshold = 0;
  long long n0 = 0;

  auto* entropy = app.add_subcommand("entropy", "max-entropy matching, normality and heavy mass");
  add_common(entropy, c_entropy, "entropy.json");
  entropy->add_option("graph", graph_path, "edge-list file")->required()->check(CLI::ExistingFile);
  entropy->add_option("--b", b, "heavy-mass threshold factor")->capture_default_str();
  entropy->add_option("--matching-out", matching_out, "also write the matching");

  auto* count = app.add_subcommand("count", "count copies of a tree");
  add_common(count, c_count, "count.json");
  count->add_option("graph", graph_path)->required()->check(CLI::ExistingFile);
  count->add_option("tree", tree_path)->required()->check(CLI::ExistingFile);
  count->add_option("--mode", mode)->check(CLI::IsMember({"brute", "estimate"}))->capture_default_str();
  count->add_option("--root", root, "fix the image of the tree root")->capture_default_str();

  auto* sample = app.add_subcommand("sample", "sample random trees according to the max-entropy matching");
  add_common(sample, c_sample, "samples.csv", "csv");
  sample->add_option("graph", graph_path)->required()->check(CLI::ExistingFile);
  sample->add_option("tree", tree_path)->required()->check(CLI::ExistingFile);
  sample->add_option("--root", root, "start vertex, -1 for uniform")->capture_default_str();

  auto* mixing = app.add_subcommand("mixing", "exact walk marginals against the mixing bound");
  add_common(mixing, c_mixing, "mixing.json");
  mixing->add_option("graph", graph_path)->required()->check(CLI::ExistingFile);
  mixing->add_option("--pattern", walk, "f/b letters, repeated")->capture_default_str();
  mixing->add_option("--start", start)->capture_default_str();
  mixing->add_option("--tmin", t_min)->capture_default_str();
  mixing->add_option("--tmax", t_max)->capture_default_str();

  auto* decompose = app.add_subcommand("decompose", "quarter-power decomposition or partition of a tree");
  add_common(decompose, c_decompose, "decomposition.json");
  decompose->add_option("tree", tree_path)->required()->check(CLI::ExistingFile);
  decompose->add_option("--n0", n0, "host size, default |T|");
  decompose->add_option("--partition", partition, "run the size-floor partition instead");

  auto* pipeline = app.add_subcommand("pipeline", "iterative embedding of a tree");
  add_common(pipeline, c_pipeline, "pipeline.json");
  pipeline->add_option("graph", graph_path)->required()->check(CLI::ExistingFile);
  pipeline->add_option("tree", tree_path)->required()->check(CLI::ExistingFile);
  pipeline->add_option("--retries", retries, "sampling attempts per stage")->capture_default_str();
  pipeline->add_option("--threshold", threshold, "trunk split threshold, 0 for ceil(sqrt n)")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "brute-force count against the lower bound");
  add_common(verify, c_verify, "verify.json");
  verify->add_option("graph", graph_path)->required()->check(CLI::ExistingFile);
  verify->add_option("pattern", pattern_path, "tree file, or graph file for undirected hosts")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*entropy) return cmd_entropy(c_entropy, graph_path, b, matching_out);
    if (*count) return cmd_count(c_count, graph_path, tree_path, mode, root);
    if (*sample) return cmd_sample(c_sample, graph_path, tree_path, root);
    if (*mixing) return cmd_mixing(c_mixing, graph_path, walk, start, t_min, t_max);
    if (*decompose) return cmd_decompose(c_decompose, tree_path, n0, partition);
    if (*pipeline) return cmd_pipeline(c_pipeline, graph_path, tree_path, retries, threshold);
    if (*verify) return cmd_verify(c_verify, graph_path, pattern_path);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ProcedureFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
