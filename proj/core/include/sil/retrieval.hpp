// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "sil/features.hpp"
#include "sil/kb.hpp"

namespace sil {

/// Ordered retrieval output for a single query. Scores non-increasing,
/// item ids distinct, ties broken by ascending item id.
struct Ranking {
  std::string query_id;  // "doc_id#sent_idx"
  std::vector<std::pair<std::string, double>> ranked;

  bool operator==(const Ranking&) const = default;
};

class Bm25Index {
 public:
  /// Builds the inverted index over verbalized items.
  /// idf(t) = ln(1 + (N - df + 0.5) / (df + 0.5)), always >= 0.
  Bm25Index(const std::map<std::string, std::string>& items, const Tokenizer& tokenizer,
            double k1 = 1.2, double b = 0.75);

  /// BM25 over the query terms, restricted to `candidates`. Zero-score
  /// items are omitted; at most k results.
  Ranking query(const std::string& query_text, const std::set<std::string>& candidates,
                std::size_t k) const;

  std::size_t doc_count() const { return doc_lengths_.size(); }
  double avg_doc_length() const { return avg_doc_length_; }
  double k1() const { return k1_; }
  double b() const { return b_; }
  std::size_t document_frequency(const std::string& term) const;

 private:
  struct Posting {
    std::uint32_t item = 0;  // index into item_ids_
    std::uint32_t tf = 0;
  };

  std::vector<std::string> item_ids_;  // sorted
  std::unordered_map<std::string, std::uint32_t> item_index_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  std::vector<std::uint32_t> doc_lengths_;
  double avg_doc_length_ = 0;
  double k1_, b_;
  Tokenizer tokenizer_;
};

class DenseIndex {
 public:
  /// Vectors are L2-normalized at insert. Throws on dimension mismatch
  /// or duplicate item id.
  void add(const std::string& item_id, DenseVector vec);

  /// Exact top-k by cosine among the candidates, ties by ascending id.
  Ranking query(const DenseVector& query_vec, const std::set<std::string>& candidates,
                std::size_t k) const;

  std::size_t size() const { return vectors_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  std::map<std::string, DenseVector> vectors_;
  std::size_t dim_ = 0;
};

/// Union of expand_group_neighbors over the gold set; used only by
/// relaxed evaluation. Throws on an unknown gold id.
std::set<std::string> relax_gold(const std::set<std::string>& gold, int radius,
                                 const KnowledgeBase& kb);

/// Run file: query_id<TAB>item_id<TAB>rank<TAB>score, rank 1-based.
std::string serialize_run(const std::vector<Ranking>& rankings);
std::vector<Ranking> parse_run(const std::string& content);
std::vector<Ranking> load_run(const std::string& path);

}  // namespace sil
