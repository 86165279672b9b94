#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "treecount/count.hpp"
#include "treecount/pipeline.hpp"
#include "treecount/random_embed.hpp"

namespace treecount {

// JSON documents with stable field names. Big integers are written as decimal
// strings so that no reader rounds them.
std::string count_report_json(const CountReport& r);
std::string pipeline_trace_json(const PipelineTrace& t);
std::string verify_report_json(const VerifyReport& r);
std::string mixing_report_json(const MixingReport& r);

// seed,worker,images,log_prob,self_avoiding,well_behaved
void write_realisations_csv(std::ostream& out, const std::vector<Realisation>& batch);
// n,m,h_bits,aut,count,bound_log2,ratio_log2,holds
void write_experiment_csv_header(std::ostream& out);
void write_experiment_csv_row(std::ostream& out, const VerifyReport& r);

}  // namespace treecount
