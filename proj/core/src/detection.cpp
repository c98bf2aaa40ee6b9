// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#include "sil/detection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sil {

std::string expand_context(const Document& doc, int sent_idx, ContextMode mode) {
  if (sent_idx < 0 || sent_idx >= static_cast<int>(doc.sentences.size())) {
    throw std::out_of_range("expand_context: sentence index " + std::to_string(sent_idx));
  }
  const Sentence& sentence = doc.sentences[sent_idx];
  switch (mode) {
    case ContextMode::None:
      return sentence.text;
    case ContextMode::Relation: {
      std::string out = sentence.text;
      for (const auto& rel : sentence.relations) {
        if (rel.kind != RelationKind::ContextualDependence) continue;
        out += " ";
        out += doc.sentences[rel.target_idx].text;
      }
      return out;
    }
    case ContextMode::Neighbor: {
      std::string out;
      if (sent_idx > 0) {
        out += doc.sentences[sent_idx - 1].text;
        out += " ";
      }
      out += sentence.text;
      if (sent_idx + 1 < static_cast<int>(doc.sentences.size())) {
        out += " ";
        out += doc.sentences[sent_idx + 1].text;
      }
      return out;
    }
  }
  return sentence.text;
}

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double dot_sparse(const std::vector<double>& weights, const SparseVec& feature) {
  double s = 0;
  for (const auto& [col, w] : feature) {
    if (col < weights.size()) s += weights[col] * w;
  }
  return s;
}

}  // namespace

LogRegModel train_logreg(const std::vector<SparseVec>& features, const std::vector<int>& labels,
                         std::size_t dim, const LogRegOptions& options) {
  if (features.size() != labels.size() || features.empty()) {
    throw std::invalid_argument("train_logreg: features/labels size mismatch or empty");
  }
  const bool has_pos = std::count(labels.begin(), labels.end(), 1) > 0;
  const bool has_neg = std::count(labels.begin(), labels.end(), 0) > 0;
  if (!has_pos || !has_neg) {
    throw std::invalid_argument("train_logreg: need at least one example of each class");
  }
  LogRegModel model;
  model.weights.assign(dim, 0.0);
  const double n = static_cast<double>(features.size());
  std::vector<double> grad(dim);
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_bias = 0;
    for (std::size_t i = 0; i < features.size(); ++i) {
      const double err = sigmoid(dot_sparse(model.weights, features[i]) + model.bias) - labels[i];
      for (const auto& [col, w] : features[i]) grad[col] += err * w;
      grad_bias += err;
    }
    for (std::size_t c = 0; c < dim; ++c) {
      model.weights[c] -= options.learning_rate * (grad[c] / n + options.l2 * model.weights[c]);
    }
    model.bias -= options.learning_rate * grad_bias / n;
  }
  return model;
}

std::pair<int, double> predict_logreg(const LogRegModel& model, const SparseVec& feature) {
  const double score = sigmoid(dot_sparse(model.weights, feature) + model.bias);
  return {score >= model.threshold ? 1 : 0, score};
}

std::pair<int, double> predict_knn(const KnnClassifier& clf, const DenseVector& query) {
  if (clf.references.empty()) {
    throw std::invalid_argument("predict_knn: empty reference set");
  }
  const std::size_t k = std::min(clf.k, clf.references.size());
  std::vector<std::pair<double, std::size_t>> distances;  // (distance, index)
  distances.reserve(clf.references.size());
  for (std::size_t i = 0; i < clf.references.size(); ++i) {
    double d = 0;
    switch (clf.metric) {
      case KnnMetric::Cosine: d = 1.0 - cosine(query, clf.references[i]); break;
      case KnnMetric::Euclidean: d = euclidean(query, clf.references[i]); break;
      case KnnMetric::Manhattan: d = manhattan(query, clf.references[i]); break;
    }
    distances.emplace_back(d, i);
  }
  std::partial_sort(distances.begin(), distances.begin() + k, distances.end());
  double pos_weight = 0, total_weight = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& [d, idx] = distances[i];
    const double w = clf.weighting == KnnWeighting::Uniform ? 1.0 : 1.0 / (d + 1e-9);
    total_weight += w;
    if (clf.labels[idx] == 1) pos_weight += w;
  }
  const double score = total_weight > 0 ? pos_weight / total_weight : 0.0;
  return {score >= 0.5 ? 1 : 0, score};  // tie -> positive
}

double fuse_scores(double a, double b, double weight) {
  if (a < 0 || a > 1 || b < 0 || b > 1 || weight < 0 || weight > 1) {
    throw std::invalid_argument("fuse_scores: inputs must lie in [0,1]");
  }
  return weight * a + (1.0 - weight) * b;
}

Prf prf_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
  Prf out;
  out.tp = tp, out.fp = fp, out.fn = fn, out.tn = tn;
  out.precision = (tp + fp) ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  out.recall = (tp + fn) ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  out.f1 = (out.precision + out.recall) > 0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

ClassificationReport evaluate_md(const PredictionMap& predictions, const Corpus& gold) {
  std::map<std::string, std::array<std::size_t, 4>> counts;  // lang -> tp,fp,fn,tn
  std::vector<std::string> missing;
  for (const auto& doc : gold.docs) {
    auto& c = counts[to_string(doc.language)];
    for (const auto& sent : doc.sentences) {
      auto it = predictions.find({doc.doc_id, sent.idx});
      if (it == predictions.end()) {
        missing.push_back(doc.doc_id + "#" + std::to_string(sent.idx));
        continue;
      }
      const int pred = it->second.first;
      if (pred == 1 && sent.label == 1) ++c[0];
      else if (pred == 1 && sent.label == 0) ++c[1];
      else if (pred == 0 && sent.label == 1) ++c[2];
      else ++c[3];
    }
  }
  if (!missing.empty()) {
    std::string msg = "evaluate_md: missing predictions for:";
    for (const auto& key : missing) msg += " " + key;
    throw std::invalid_argument(msg);
  }
  ClassificationReport report;
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  double f1_sum = 0;
  for (const auto& [lang, c] : counts) {
    report.by_language[lang] = prf_from_counts(c[0], c[1], c[2], c[3]);
    f1_sum += report.by_language[lang].f1;
    tp += c[0], fp += c[1], fn += c[2], tn += c[3];
  }
  report.pooled = prf_from_counts(tp, fp, fn, tn);
  // Macro-F1: mean of the positive-class F1 and the negative-class F1.
  const Prf negative = prf_from_counts(tn, fn, fp, tp);
  report.macro_f1 = (report.pooled.f1 + negative.f1) / 2.0;
  report.total_f1_pooled = report.pooled.f1;
  report.total_f1_averaged = counts.empty() ? 0.0 : f1_sum / static_cast<double>(counts.size());
  return report;
}

std::string serialize_predictions(const PredictionMap& predictions) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& [key, value] : predictions) {
    out << key.first << "\t" << key.second << "\t" << value.first << "\t" << value.second << "\n";
  }
  return out.str();
}

PredictionMap parse_predictions(const std::string& content) {
  PredictionMap out;
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string doc_id;
    int idx = 0, label = 0;
    double score = 0;
    if (!(std::getline(fields, doc_id, '\t') && fields >> idx && fields >> label && fields >> score)) {
      throw std::runtime_error("prediction file line " + std::to_string(line_no) + ": malformed row");
    }
    out[{doc_id, idx}] = {label, score};
  }
  return out;
}

PredictionMap load_predictions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open prediction file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_predictions(buf.str());
}

}  // namespace sil
