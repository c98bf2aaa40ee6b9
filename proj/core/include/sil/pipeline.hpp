// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sil/detection.hpp"
#include "sil/kb.hpp"
#include "sil/metrics.hpp"
#include "sil/retrieval.hpp"

namespace sil {

enum class MdSource { Oracle, Model, File };
enum class EdBackend { Bm25, Dense };

struct SmpConfig {
  MdSource md_source = MdSource::Oracle;
  EdBackend ed_backend = EdBackend::Bm25;
  std::size_t k = 10;
  bool filter_citations = true;
  int relaxed_radius = 0;
  ContextMode context_mode = ContextMode::None;
  ApVariant ap_variant = ApVariant::StandardTruncated;
  VerbalizationSpec verbalization;
  Tokenizer tokenizer;
  double bm25_k1 = 1.2;
  double bm25_b = 0.75;
  std::size_t hash_dim = 1024;  // dense backend without external vectors
  std::size_t threads = 0;      // 0 = hardware concurrency
};

/// Externally produced vectors for the dense backend. When absent the
/// pipeline falls back to the deterministic hashed embedder.
struct ExternalEmbeddings {
  std::map<std::string, DenseVector> items;               // item_id -> vector
  std::map<std::string, DenseVector> sentences;           // "doc#idx" -> vector
};

struct EvalRow {
  std::string metric;
  std::size_t k = 0;
  std::string variant;
  std::string slice_axis;   // empty for overall rows
  std::string slice_value;
  double value = 0.0;
  std::size_t n = 0;
  std::size_t skipped = 0;

  bool operator==(const EvalRow&) const = default;
};

struct EvalReport {
  std::vector<EvalRow> rows;

  bool operator==(const EvalReport&) const = default;
};

struct SmpResult {
  std::vector<Ranking> rankings;  // one per MD-positive sentence, query order
  Qrels qrels;                    // gold for every gold-positive sentence
  ClassificationReport md_report;
  EvalReport ed_report;
  std::size_t spurious_queries = 0;  // MD false positives sent to ED
};

/// Runs MD then ED over the corpus. Sentences the MD stage labels
/// positive are queried against the KB; gold-positive sentences it
/// misses keep an empty ranking so their items count as misses. MD
/// false positives are ranked but excluded from the metric means and
/// reported as spurious queries.
SmpResult run_smp(const Corpus& corpus, const KnowledgeBase& kb, const SmpConfig& cfg,
                  const PredictionMap* md_predictions = nullptr,
                  const ExternalEmbeddings* embeddings = nullptr);

/// Per-document fusion of sentence rankings.
struct DocAggregation {
  std::string doc_id;
  std::vector<std::pair<std::string, double>> ranked;  // truncated to cutoff
  double recall = 0.0;  // vs the document's unique gold items
};

enum class FusionMode { Max, Sum };

/// Fuses the rankings of one document's sentences (max-score by
/// default), orders by score then item id, truncates to cutoff.
/// Throws if a ranking does not belong to the document.
DocAggregation aggregate_document(const std::vector<Ranking>& rankings, const Document& doc,
                                  std::size_t cutoff, FusionMode fusion = FusionMode::Max);

/// Mean document-level recall for every cutoff in [1, max_cutoff].
std::vector<std::pair<std::size_t, double>> aggregation_curve(
    const std::vector<Ranking>& rankings, const Corpus& corpus, std::size_t max_cutoff,
    FusionMode fusion = FusionMode::Max);

enum class SliceAxis { Language, Type, Subtype, ItemCount };

std::string to_string(SliceAxis axis);

/// Per-slice Recall@k for retrieval output. Language and ItemCount
/// slice at the query (sentence) level; Type and Subtype at the
/// mention level, each mention judged by whether its item appears in
/// the top-k of its sentence's ranking.
EvalReport evaluate_sliced_ed(const std::vector<Ranking>& rankings, const Corpus& corpus,
                              const std::vector<SliceAxis>& axes, const MetricConfig& cfg,
                              const KnowledgeBase* kb = nullptr);

/// Per-slice recall for MD predictions over gold-positive sentences.
/// A sentence whose mentions disagree on the category counts as
/// "mixed" for the Type/Subtype axes.
EvalReport evaluate_sliced_md(const PredictionMap& predictions, const Corpus& corpus,
                              const std::vector<SliceAxis>& axes);

enum class ReportFormat { Table, Json, Tsv };

std::string render_report(const EvalReport& report, ReportFormat format);
EvalReport parse_report_json(const std::string& content);

}  // namespace sil
