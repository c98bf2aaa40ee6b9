// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#include "sil/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace sil {

namespace {

// ASCII case-folding; non-ASCII bytes pass through untouched so the
// result is stable regardless of locale.
std::string fold(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (unsigned char c : text) {
    out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
  }
  return out;
}

bool is_delimiter(unsigned char c, bool strip_punctuation) {
  if (std::isspace(c)) return true;
  if (!strip_punctuation) return false;
  return c < 0x80 && !std::isalnum(c);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const Tokenizer& tokenizer) {
  const std::string folded = fold(text);
  std::vector<std::string> tokens;
  if (tokenizer.mode == TokenizerMode::WordLower) {
    std::string current;
    for (unsigned char c : folded) {
      if (is_delimiter(c, tokenizer.strip_punctuation)) {
        if (!current.empty()) tokens.push_back(std::move(current)), current.clear();
      } else {
        current.push_back(static_cast<char>(c));
      }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
  }
  // CharNgram: one boundary pad per side.
  const int n = tokenizer.ngram;
  if (folded.empty()) return tokens;
  std::string padded = "#" + folded + "#";
  if (static_cast<int>(padded.size()) < n) return tokens;
  for (std::size_t i = 0; i + n <= padded.size(); ++i) {
    tokens.push_back(padded.substr(i, n));
  }
  return tokens;
}

TfIdfModel fit_tfidf(const std::vector<std::vector<std::string>>& docs) {
  if (docs.empty()) throw std::invalid_argument("fit_tfidf: empty corpus");
  TfIdfModel model;
  model.doc_count = docs.size();
  std::map<std::string, std::size_t> df;
  for (const auto& doc : docs) {
    std::vector<std::string> unique(doc.begin(), doc.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (const auto& term : unique) ++df[term];
  }
  model.idf.reserve(df.size());
  for (const auto& [term, count] : df) {
    model.vocabulary.emplace(term, static_cast<std::uint32_t>(model.idf.size()));
    model.idf.push_back(
        std::log((1.0 + static_cast<double>(model.doc_count)) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  return model;
}

SparseVec transform_tfidf(const TfIdfModel& model, const std::vector<std::string>& doc) {
  std::map<std::uint32_t, double> weights;
  for (const auto& token : doc) {
    auto it = model.vocabulary.find(token);
    if (it != model.vocabulary.end()) weights[it->second] += 1.0;
  }
  SparseVec vec;
  vec.reserve(weights.size());
  double norm_sq = 0;
  for (auto& [col, tf] : weights) {
    const double w = tf * model.idf[col];
    vec.emplace_back(col, w);
    norm_sq += w * w;
  }
  if (norm_sq > 0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& [col, w] : vec) w *= inv;
  }
  return vec;
}

double DenseVector::norm() const {
  double s = 0;
  for (double v : values) s += v * v;
  return std::sqrt(s);
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

DenseVector hash_embed(std::string_view text, std::size_t dim, const Tokenizer& tokenizer) {
  if (dim < 8) throw std::invalid_argument("hash_embed: dim must be >= 8");
  DenseVector vec;
  vec.values.assign(dim, 0.0);
  for (const auto& token : tokenize(text, tokenizer)) {
    const std::uint64_t h = fnv1a64(token);
    const std::size_t bucket = h % dim;
    // Second, independent hash decides the sign.
    const double sign = (fnv1a64(token, 0x9e3779b97f4a7c15ULL) & 1) ? 1.0 : -1.0;
    vec.values[bucket] += sign;
  }
  const double n = vec.norm();
  if (n > 0) {
    for (double& v : vec.values) v /= n;
  }
  return vec;
}

double cosine(const DenseVector& a, const DenseVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("cosine: dimension mismatch");
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double cosine_sparse(const SparseVec& a, const SparseVec& b) {
  double dot = 0, na = 0, nb = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      dot += a[i].second * b[j].second;
      ++i, ++j;
    } else if (a[i].first < b[j].first) {
      ++i;
    } else {
      ++j;
    }
  }
  for (const auto& [_, w] : a) na += w * w;
  for (const auto& [_, w] : b) nb += w * w;
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double euclidean(const DenseVector& a, const DenseVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("euclidean: dimension mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a.values[i] - b.values[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double manhattan(const DenseVector& a, const DenseVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("manhattan: dimension mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    s += std::abs(a.values[i] - b.values[i]);
  }
  return s;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  std::vector<std::size_t> row(a.size() + 1);
  std::iota(row.begin(), row.end(), 0);
  for (std::size_t j = 1; j <= b.size(); ++j) {
    std::size_t prev = row[0];
    row[0] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
      const std::size_t insert_or_delete = std::min(row[i], row[i - 1]) + 1;
      const std::size_t substitute = prev + (a[i - 1] == b[j - 1] ? 0 : 1);
      prev = row[i];
      row[i] = std::min(insert_or_delete, substitute);
    }
  }
  return row.back();
}

std::map<std::string, DenseVector> load_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embedding file: " + path);
  std::map<std::string, DenseVector> out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::runtime_error("embedding file line " + std::to_string(line_no) + ": missing tab");
    }
    DenseVector vec;
    std::istringstream values(line.substr(tab + 1));
    double v;
    while (values >> v) vec.values.push_back(v);
    if (dim == 0) dim = vec.dim();
    if (vec.dim() != dim || dim == 0) {
      throw std::runtime_error("embedding file line " + std::to_string(line_no) +
                               ": expected dimension " + std::to_string(dim));
    }
    out.emplace(line.substr(0, tab), std::move(vec));
  }
  return out;
}

}  // namespace sil
