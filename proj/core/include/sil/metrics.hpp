// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sil/retrieval.hpp"

namespace sil {

/// Binary relevance judgments per query. "Unk" never appears here.
struct Qrels {
  std::map<std::string, std::set<std::string>> relevant;
};

enum class ApVariant {
  StandardTruncated,  // mean of P@i over hit positions, / min(|rel|, k)
  PaperLiteral,       // mean of P@i over every cutoff i = 1..k
};

std::string to_string(ApVariant variant);

struct MetricConfig {
  std::size_t k = 10;
  ApVariant ap_variant = ApVariant::StandardTruncated;
  int relaxed_radius = 0;
};

double precision_at_k(const Ranking& ranking, const std::set<std::string>& relevant,
                      std::size_t k);
double recall_at_k(const Ranking& ranking, const std::set<std::string>& relevant, std::size_t k);
double average_precision_at_k(const Ranking& ranking, const std::set<std::string>& relevant,
                              const MetricConfig& cfg);
double ndcg_at_k(const Ranking& ranking, const std::set<std::string>& relevant, std::size_t k);

enum class RankMetric { Recall, Map, Ndcg };

std::string to_string(RankMetric metric);

/// One aggregated metric value, as serialized into reports.
struct MetricResult {
  std::string metric;
  std::size_t k = 0;
  std::string variant;
  double value = 0.0;
  std::size_t n_queries = 0;  // queries contributing to the mean
  std::size_t skipped = 0;    // queries whose gold set was empty
};

/// Unweighted mean over evaluated queries. Queries with an empty gold
/// set are skipped and counted; a query missing from the qrels
/// entirely is an error.
MetricResult evaluate_rankings(RankMetric metric, const std::vector<Ranking>& rankings,
                               const Qrels& qrels, const MetricConfig& cfg);

double mean_average_precision(const std::vector<Ranking>& rankings, const Qrels& qrels,
                              const MetricConfig& cfg);

/// Qrels TSV: query_id<TAB>item_id<TAB>1.
std::string serialize_qrels(const Qrels& qrels);
Qrels parse_qrels(const std::string& content);
Qrels load_qrels(const std::string& path);

std::string metric_results_to_json(const std::vector<MetricResult>& results);
std::string metric_results_to_table(const std::vector<MetricResult>& results);

}  // namespace sil
