#include "treecount/report_io.hpp"

#include <cmath>
#include <ostream>

#include "json.hpp"
#include "treecount/matching_io.hpp"

namespace treecount {

namespace {

using nlohmann::ordered_json;

// Non-finite values become null.
ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json bound_json(const BoundValue& b) { return {{"log2", num(b.log2)}, {"value", num(b.value)}}; }

}  // namespace

std::string count_report_json(const CountReport& r) {
  ordered_json j;
  j["method"] = r.method;
  j["labelled_count"] = to_string(r.labelled);
  j["unlabelled_count"] = to_string(r.unlabelled);
  j["aut"] = to_string(r.aut);
  j["rooted"] = r.rooted;
  j["root_image"] = r.root_image;
  j["valid"] = r.valid;
  if (r.method == "brute") {
    j["nodes"] = r.nodes;
  } else {
    j["estimate"] = num(r.estimate);
    j["std_error"] = num(r.std_error);
    j["samples"] = r.samples;
  }
  if (r.ci) j["ci"] = {{"low", num(r.ci->low)}, {"high", num(r.ci->high)}, {"confidence", r.ci->confidence}};
  return dump(j);
}

std::string pipeline_trace_json(const PipelineTrace& t) {
  ordered_json j;
  j["success"] = t.success;
  j["mode"] = t.mode;
  j["failure"] = t.failure;
  j["n"] = t.n;
  j["m"] = t.m;
  j["params"] = {{"gamma", num(t.params.gamma)},         {"zeta", num(t.params.zeta)},
                 {"delta", num(t.params.delta)},         {"alpha", num(t.params.alpha)},
                 {"mu", num(t.params.mu)},               {"trunk_threshold", num(t.params.trunk_threshold)}};
  j["trunk_threshold"] = t.trunk_threshold;
  j["t_prime"] = t.t_prime;
  j["t_double_prime"] = t.t_double_prime;
  j["absorber"] = t.absorber;
  j["absorber_anchor"] = t.absorber_anchor;
  j["pieces"] = t.pieces;
  j["thresholds_enforced"] = t.thresholds_enforced;
  ordered_json stages = ordered_json::array();
  for (const StageRecord& s : t.stages) {
    stages.push_back({{"piece", s.piece},
                      {"piece_size", s.piece_size},
                      {"residual", s.residual},
                      {"host_size", s.host_size},
                      {"epsilon", num(s.epsilon)},
                      {"b", num(s.b)},
                      {"entropy", num(s.entropy)},
                      {"sum_residual", num(s.sum_residual)},
                      {"attempts", s.attempts},
                      {"start_image", s.start_image},
                      {"images", s.images},
                      {"log_prob", num(s.log_prob)},
                      {"well_behaved", s.well_behaved},
                      {"set_deviation", num(s.set_deviation)},
                      {"weight_deviation", num(s.weight_deviation)},
                      {"warnings", s.warnings}});
  }
  j["stages"] = stages;
  j["completion_attempts"] = t.completion_attempts;
  j["embedding"] = t.embedding;
  j["notes"] = t.notes;
  return dump(j);
}

std::string verify_report_json(const VerifyReport& r) {
  ordered_json j;
  j["directed"] = r.directed;
  j["n"] = r.n;
  j["m"] = r.m;
  j["h_bits"] = num(r.h_bits);
  j["aut"] = to_string(r.aut);
  j["labelled_count"] = to_string(r.labelled);
  j["count"] = to_string(r.count);
  j["eps"] = num(r.eps);
  j["bound"] = bound_json(r.bound);
  j["ratio_log2"] = num(r.ratio_log2);
  j["holds"] = r.holds;
  j["hypothesis_met"] = r.hypothesis_met;
  j["note"] = r.note;
  return dump(j);
}

std::string mixing_report_json(const MixingReport& r) {
  ordered_json j;
  j["hypothesis_holds"] = r.hypothesis_holds;
  j["note"] = r.note;
  j["epsilon"] = num(r.epsilon);
  j["b"] = num(r.b);
  j["t_admissible"] = num(r.t_admissible);
  j["admissible_count"] = r.admissible_count;
  j["roundoff_floor"] = r.roundoff_floor;
  j["bound_holds"] = r.bound_holds;
  ordered_json rows = ordered_json::array();
  for (std::size_t k = 0; k < r.steps.size(); ++k)
    rows.push_back({{"t", r.steps[k]}, {"deviation", num(r.deviation[k])}, {"bound", num(r.bound[k])}});
  j["curve"] = rows;
  return dump(j);
}

void write_realisations_csv(std::ostream& out, const std::vector<Realisation>& batch) {
  out << "seed,worker,images,log_prob,self_avoiding,well_behaved\n";
  for (const Realisation& r : batch) {
    out << r.seed << ',' << r.worker << ',';
    for (std::size_t k = 0; k < r.images.size(); ++k) out << (k ? " " : "") << r.images[k];
    out << ',' << format_double(r.log_prob) << ',' << (r.self_avoiding ? 1 : 0) << ',';
    if (r.well_behaved) out << (*r.well_behaved ? 1 : 0);
    out << '\n';
  }
}

void write_experiment_csv_header(std::ostream& out) { out << "n,m,h_bits,aut,count,bound_log2,ratio_log2,holds\n"; }

void write_experiment_csv_row(std::ostream& out, const VerifyReport& r) {
  out << r.n << ',' << r.m << ',' << format_double(r.h_bits) << ',' << to_string(r.aut) << ','
      << to_string(r.count) << ',' << format_double(r.bound.log2) << ',' << format_double(r.ratio_log2) << ','
      << (r.holds ? 1 : 0) << '\n';
}

}  // namespace treecount
