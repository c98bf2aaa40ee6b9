// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sil/corpus.hpp"
#include "sil/features.hpp"

namespace sil {

/// (doc_id, sent_idx) key for per-sentence predictions.
using SentenceKey = std::pair<std::string, int>;

enum class ContextMode { None, Relation, Neighbor };

/// Query text for a sentence. None returns the sentence unchanged;
/// Relation appends the texts of its contextual-dependence targets;
/// Neighbor prepends/appends the adjacent sentences that exist.
std::string expand_context(const Document& doc, int sent_idx, ContextMode mode);

struct LogRegModel {
  std::vector<double> weights;
  double bias = 0.0;
  double threshold = 0.5;
};

struct LogRegOptions {
  std::size_t epochs = 200;
  double learning_rate = 0.5;
  double l2 = 1e-4;
  std::uint64_t seed = 0;
};

/// Full-batch gradient descent on the regularized logistic loss.
/// Deterministic given the options. Throws if only one class is present.
LogRegModel train_logreg(const std::vector<SparseVec>& features, const std::vector<int>& labels,
                         std::size_t dim, const LogRegOptions& options = {});

/// Returns (label, sigmoid score); label 1 iff score >= threshold.
std::pair<int, double> predict_logreg(const LogRegModel& model, const SparseVec& feature);

enum class KnnMetric { Cosine, Euclidean, Manhattan };
enum class KnnWeighting { Uniform, Distance };

struct KnnClassifier {
  std::vector<DenseVector> references;
  std::vector<int> labels;  // aligned with references
  std::size_t k = 1;
  KnnMetric metric = KnnMetric::Cosine;
  KnnWeighting weighting = KnnWeighting::Uniform;
};

/// Majority vote over the k nearest references; score is the (weighted)
/// positive fraction. Ties go to the positive class.
std::pair<int, double> predict_knn(const KnnClassifier& clf, const DenseVector& query);

/// weight * a + (1 - weight) * b. All arguments must lie in [0, 1].
double fuse_scores(double a, double b, double weight = 0.5);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
};

Prf prf_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn = 0);

struct ClassificationReport {
  std::map<std::string, Prf> by_language;  // "en", "de"
  Prf pooled;                              // positive class over all sentences
  double macro_f1 = 0.0;                   // mean of per-class F1, pooled
  double total_f1_pooled = 0.0;            // == pooled.f1
  double total_f1_averaged = 0.0;          // mean of per-language positive F1
};

using PredictionMap = std::map<SentenceKey, std::pair<int, double>>;

/// Positive-class P/R/F1 per language and pooled, plus macro-F1.
/// Throws if any gold sentence lacks a prediction.
ClassificationReport evaluate_md(const PredictionMap& predictions, const Corpus& gold);

/// Prediction TSV: doc_id<TAB>sent_idx<TAB>label<TAB>score.
std::string serialize_predictions(const PredictionMap& predictions);
PredictionMap parse_predictions(const std::string& content);
PredictionMap load_predictions(const std::string& path);

}  // namespace sil
