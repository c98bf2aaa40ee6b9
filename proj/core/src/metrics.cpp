// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#include "sil/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sil {

std::string to_string(ApVariant variant) {
  return variant == ApVariant::StandardTruncated ? "standard_truncated" : "paper_literal";
}

std::string to_string(RankMetric metric) {
  switch (metric) {
    case RankMetric::Recall: return "recall";
    case RankMetric::Map: return "map";
    case RankMetric::Ndcg: return "ndcg";
  }
  return "recall";
}

namespace {

std::size_t hits_at(const Ranking& ranking, const std::set<std::string>& relevant,
                    std::size_t k) {
  std::size_t hits = 0;
  const std::size_t depth = std::min(k, ranking.ranked.size());
  for (std::size_t i = 0; i < depth; ++i) {
    if (relevant.count(ranking.ranked[i].first)) ++hits;
  }
  return hits;
}

}  // namespace

double precision_at_k(const Ranking& ranking, const std::set<std::string>& relevant,
                      std::size_t k) {
  if (k == 0) return 0.0;
  return static_cast<double>(hits_at(ranking, relevant, k)) / static_cast<double>(k);
}

double recall_at_k(const Ranking& ranking, const std::set<std::string>& relevant, std::size_t k) {
  if (relevant.empty()) return 0.0;
  return static_cast<double>(hits_at(ranking, relevant, k)) /
         static_cast<double>(relevant.size());
}

double average_precision_at_k(const Ranking& ranking, const std::set<std::string>& relevant,
                              const MetricConfig& cfg) {
  if (relevant.empty() || cfg.k == 0) return 0.0;
  const std::size_t depth = std::min(cfg.k, ranking.ranked.size());
  if (cfg.ap_variant == ApVariant::StandardTruncated) {
    double sum = 0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < depth; ++i) {
      if (relevant.count(ranking.ranked[i].first)) {
        ++hits;
        sum += static_cast<double>(hits) / static_cast<double>(i + 1);
      }
    }
    const std::size_t denom = std::min(relevant.size(), cfg.k);
    return sum / static_cast<double>(denom);
  }
  // PaperLiteral: average P@i over every cutoff i = 1..k.
  double sum = 0;
  std::size_t hits = 0;
  for (std::size_t i = 1; i <= cfg.k; ++i) {
    if (i <= depth && relevant.count(ranking.ranked[i - 1].first)) ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i);
  }
  return sum / static_cast<double>(cfg.k);
}

double ndcg_at_k(const Ranking& ranking, const std::set<std::string>& relevant, std::size_t k) {
  if (relevant.empty() || k == 0) return 0.0;
  double dcg = 0;
  const std::size_t depth = std::min(k, ranking.ranked.size());
  for (std::size_t i = 0; i < depth; ++i) {
    if (relevant.count(ranking.ranked[i].first)) {
      dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
    }
  }
  double idcg = 0;
  const std::size_t ideal = std::min(relevant.size(), k);
  for (std::size_t i = 0; i < ideal; ++i) {
    idcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  }
  return idcg > 0 ? dcg / idcg : 0.0;
}

MetricResult evaluate_rankings(RankMetric metric, const std::vector<Ranking>& rankings,
                               const Qrels& qrels, const MetricConfig& cfg) {
  MetricResult result;
  result.metric = to_string(metric);
  result.k = cfg.k;
  result.variant = metric == RankMetric::Map ? to_string(cfg.ap_variant) : "";
  double sum = 0;
  for (const auto& ranking : rankings) {
    auto it = qrels.relevant.find(ranking.query_id);
    if (it == qrels.relevant.end()) {
      throw std::invalid_argument("no qrels entry for query '" + ranking.query_id + "'");
    }
    if (it->second.empty()) {
      ++result.skipped;
      continue;
    }
    switch (metric) {
      case RankMetric::Recall: sum += recall_at_k(ranking, it->second, cfg.k); break;
      case RankMetric::Map: sum += average_precision_at_k(ranking, it->second, cfg); break;
      case RankMetric::Ndcg: sum += ndcg_at_k(ranking, it->second, cfg.k); break;
    }
    ++result.n_queries;
  }
  result.value = result.n_queries ? sum / static_cast<double>(result.n_queries) : 0.0;
  return result;
}

double mean_average_precision(const std::vector<Ranking>& rankings, const Qrels& qrels,
                              const MetricConfig& cfg) {
  return evaluate_rankings(RankMetric::Map, rankings, qrels, cfg).value;
}

std::string serialize_qrels(const Qrels& qrels) {
  std::ostringstream out;
  for (const auto& [query_id, items] : qrels.relevant) {
    for (const auto& item_id : items) {
      out << query_id << "\t" << item_id << "\t1\n";
    }
  }
  return out.str();
}

Qrels parse_qrels(const std::string& content) {
  Qrels out;
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string query_id, item_id;
    int relevance = 0;
    if (!(std::getline(fields, query_id, '\t') && std::getline(fields, item_id, '\t') &&
          fields >> relevance)) {
      throw std::runtime_error("qrels line " + std::to_string(line_no) + ": malformed row");
    }
    if (item_id == kUnknownItem) {
      throw std::runtime_error("qrels line " + std::to_string(line_no) + ": reserved item id");
    }
    if (relevance != 0) out.relevant[query_id].insert(item_id);
    else out.relevant.try_emplace(query_id);
  }
  return out;
}

Qrels load_qrels(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open qrels file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_qrels(buf.str());
}

std::string metric_results_to_json(const std::vector<MetricResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    arr.push_back({{"metric", r.metric},
                   {"k", r.k},
                   {"variant", r.variant},
                   {"value", r.value},
                   {"n_queries", r.n_queries},
                   {"skipped", r.skipped}});
  }
  return arr.dump(2);
}

std::string metric_results_to_table(const std::vector<MetricResult>& results) {
  std::ostringstream out;
  out << std::left << std::setw(10) << "metric" << std::setw(6) << "k" << std::setw(20)
      << "variant" << std::setw(12) << "value" << std::setw(10) << "queries" << "skipped\n";
  for (const auto& r : results) {
    out << std::left << std::setw(10) << r.metric << std::setw(6) << r.k << std::setw(20)
        << (r.variant.empty() ? "-" : r.variant) << std::setw(12) << std::fixed
        << std::setprecision(4) << r.value << std::setw(10) << r.n_queries << r.skipped << "\n";
  }
  return out.str();
}

}  // namespace sil
