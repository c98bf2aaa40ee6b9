// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#include "sil/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sil {

Bm25Index::Bm25Index(const std::map<std::string, std::string>& items, const Tokenizer& tokenizer,
                     double k1, double b)
    : k1_(k1), b_(b), tokenizer_(tokenizer) {
  if (items.empty()) throw std::invalid_argument("Bm25Index: empty collection");
  if (k1 <= 0 || b < 0 || b > 1) throw std::invalid_argument("Bm25Index: bad k1/b");
  item_ids_.reserve(items.size());
  doc_lengths_.reserve(items.size());
  std::size_t total_length = 0;
  for (const auto& [item_id, text] : items) {
    const std::uint32_t idx = static_cast<std::uint32_t>(item_ids_.size());
    item_ids_.push_back(item_id);
    item_index_.emplace(item_id, idx);
    const auto tokens = tokenize(text, tokenizer_);
    doc_lengths_.push_back(static_cast<std::uint32_t>(tokens.size()));
    total_length += tokens.size();
    std::map<std::string, std::uint32_t> tf;
    for (const auto& token : tokens) ++tf[token];
    for (const auto& [term, count] : tf) {
      postings_[term].push_back({idx, count});
    }
  }
  avg_doc_length_ = static_cast<double>(total_length) / static_cast<double>(items.size());
}

std::size_t Bm25Index::document_frequency(const std::string& term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? 0 : it->second.size();
}

Ranking Bm25Index::query(const std::string& query_text, const std::set<std::string>& candidates,
                         std::size_t k) const {
  Ranking ranking;
  if (candidates.empty() || k == 0) return ranking;
  // Query terms deduplicated: scoring sums over distinct terms with
  // their in-document frequency, so term order and repeats in the
  // query do not matter.
  auto tokens = tokenize(query_text, tokenizer_);
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());

  std::vector<char> is_candidate(item_ids_.size(), 0);
  for (const auto& id : candidates) {
    auto it = item_index_.find(id);
    if (it != item_index_.end()) is_candidate[it->second] = 1;
  }

  const double n = static_cast<double>(doc_count());
  std::unordered_map<std::uint32_t, double> scores;
  for (const auto& term : tokens) {
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    const double df = static_cast<double>(it->second.size());
    const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
    for (const auto& posting : it->second) {
      if (!is_candidate[posting.item]) continue;
      const double tf = posting.tf;
      const double dl = doc_lengths_[posting.item];
      const double norm = k1_ * (1.0 - b_ + b_ * dl / avg_doc_length_);
      scores[posting.item] += idf * tf * (k1_ + 1.0) / (tf + norm);
    }
  }

  std::vector<std::pair<std::string, double>> scored;
  scored.reserve(scores.size());
  for (const auto& [idx, score] : scores) {
    if (score > 0) scored.emplace_back(item_ids_[idx], score);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (scored.size() > k) scored.resize(k);
  ranking.ranked = std::move(scored);
  return ranking;
}

void DenseIndex::add(const std::string& item_id, DenseVector vec) {
  if (dim_ == 0) {
    dim_ = vec.dim();
  } else if (vec.dim() != dim_) {
    throw std::invalid_argument("DenseIndex: dimension mismatch for '" + item_id + "'");
  }
  if (vectors_.count(item_id)) {
    throw std::invalid_argument("DenseIndex: duplicate item '" + item_id + "'");
  }
  const double n = vec.norm();
  if (n > 0) {
    for (double& v : vec.values) v /= n;
  }
  vectors_.emplace(item_id, std::move(vec));
}

Ranking DenseIndex::query(const DenseVector& query_vec, const std::set<std::string>& candidates,
                          std::size_t k) const {
  Ranking ranking;
  if (candidates.empty() || k == 0) return ranking;
  if (query_vec.dim() != dim_) {
    throw std::invalid_argument("DenseIndex: query dimension mismatch");
  }
  std::vector<std::pair<std::string, double>> scored;
  for (const auto& id : candidates) {
    auto it = vectors_.find(id);
    if (it == vectors_.end()) continue;
    scored.emplace_back(id, cosine(query_vec, it->second));
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (scored.size() > k) scored.resize(k);
  ranking.ranked = std::move(scored);
  return ranking;
}

std::set<std::string> relax_gold(const std::set<std::string>& gold, int radius,
                                 const KnowledgeBase& kb) {
  std::set<std::string> out;
  for (const auto& id : gold) {
    auto expanded = expand_group_neighbors(id, radius, kb);
    out.insert(expanded.begin(), expanded.end());
  }
  return out;
}

std::string serialize_run(const std::vector<Ranking>& rankings) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& ranking : rankings) {
    std::size_t rank = 1;
    for (const auto& [item_id, score] : ranking.ranked) {
      out << ranking.query_id << "\t" << item_id << "\t" << rank << "\t" << score << "\n";
      ++rank;
    }
  }
  return out.str();
}

std::vector<Ranking> parse_run(const std::string& content) {
  std::vector<Ranking> out;
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string query_id, item_id;
    std::size_t rank = 0;
    double score = 0;
    if (!(std::getline(fields, query_id, '\t') && std::getline(fields, item_id, '\t') &&
          fields >> rank && fields >> score)) {
      throw std::runtime_error("run file line " + std::to_string(line_no) + ": malformed row");
    }
    if (out.empty() || out.back().query_id != query_id) {
      out.push_back({query_id, {}});
    }
    if (rank != out.back().ranked.size() + 1) {
      throw std::runtime_error("run file line " + std::to_string(line_no) + ": rank out of order");
    }
    out.back().ranked.emplace_back(item_id, score);
  }
  return out;
}

std::vector<Ranking> load_run(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open run file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run(buf.str());
}

}  // namespace sil
