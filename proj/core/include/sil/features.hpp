// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sil {

enum class TokenizerMode { WordLower, CharNgram };

struct Tokenizer {
  TokenizerMode mode = TokenizerMode::WordLower;
  int ngram = 3;  // CharNgram only, 3..5
  bool strip_punctuation = true;
};

/// WordLower: case-folded tokens split on whitespace (and punctuation
/// when strip_punctuation is set). CharNgram: all contiguous byte
/// n-grams of the case-folded string padded with one '#' per side.
std::vector<std::string> tokenize(std::string_view text, const Tokenizer& tokenizer = {});

/// Sparse feature vector: (column, weight) pairs sorted by column.
using SparseVec = std::vector<std::pair<std::uint32_t, double>>;

struct TfIdfModel {
  std::unordered_map<std::string, std::uint32_t> vocabulary;
  std::vector<double> idf;  // indexed by vocabulary column
  std::size_t doc_count = 0;

  std::size_t dim() const { return idf.size(); }
};

/// idf(t) = ln((1 + N) / (1 + df(t))) + 1. Throws on an empty corpus.
TfIdfModel fit_tfidf(const std::vector<std::vector<std::string>>& docs);

/// tf x idf, L2-normalized. Out-of-vocabulary tokens contribute
/// nothing; an all-OOV document yields the zero vector.
SparseVec transform_tfidf(const TfIdfModel& model, const std::vector<std::string>& doc);

struct DenseVector {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  double norm() const;
  bool operator==(const DenseVector&) const = default;
};

/// Deterministic hashed bag-of-tokens embedding: each token lands in a
/// bucket with a +-1 sign from a second hash; the result is
/// L2-normalized. Identical across runs and platforms.
DenseVector hash_embed(std::string_view text, std::size_t dim, const Tokenizer& tokenizer = {});

/// dot(a,b) / (|a||b|); defined as 0 when either vector is zero.
/// Throws on dimension mismatch.
double cosine(const DenseVector& a, const DenseVector& b);
double cosine_sparse(const SparseVec& a, const SparseVec& b);

double euclidean(const DenseVector& a, const DenseVector& b);
double manhattan(const DenseVector& a, const DenseVector& b);

/// Unit-cost edit distance (insert, delete, substitute).
std::size_t levenshtein(std::string_view a, std::string_view b);

/// FNV-1a 64-bit, the project-wide deterministic hash.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);

/// Reads an embedding TSV: `id<TAB>v1 v2 ...` per row. The dimension is
/// inferred from the first row and enforced for the rest.
std::map<std::string, DenseVector> load_embeddings(const std::string& path);

}  // namespace sil
