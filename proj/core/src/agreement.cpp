// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#include "sil/agreement.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace sil {

double cohens_kappa(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cohens_kappa: sequence length mismatch");
  }
  if (a.empty()) {
    throw std::invalid_argument("cohens_kappa: empty sequences");
  }
  const double n = static_cast<double>(a.size());
  double agree = 0;
  double a_pos = 0;
  double b_pos = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) ++agree;
    if (a[i] == 1) ++a_pos;
    if (b[i] == 1) ++b_pos;
  }
  const double po = agree / n;
  const double pe = (a_pos / n) * (b_pos / n) + ((n - a_pos) / n) * ((n - b_pos) / n);
  if (pe >= 1.0) {
    // Constant marginals; agreement is either perfect or undefined.
    return po >= 1.0 ? 1.0 : 0.0;
  }
  return (po - pe) / (1.0 - pe);
}

namespace {

double set_distance(const std::set<std::string>& a, const std::set<std::string>& b,
                    SetDistance distance) {
  if (distance == SetDistance::Nominal) {
    return a == b ? 0.0 : 1.0;
  }
  if (a.empty() && b.empty()) return 0.0;
  std::vector<std::string> inter;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
  const double union_size = static_cast<double>(a.size() + b.size() - inter.size());
  return 1.0 - static_cast<double>(inter.size()) / union_size;
}

}  // namespace

double krippendorff_alpha(const std::vector<std::vector<std::set<std::string>>>& annotations,
                          SetDistance distance) {
  if (annotations.size() < 2) {
    throw std::invalid_argument("krippendorff_alpha: need at least 2 annotators");
  }
  const std::size_t units = annotations.front().size();
  for (const auto& ann : annotations) {
    if (ann.size() != units) {
      throw std::invalid_argument("krippendorff_alpha: annotators cover different units");
    }
  }
  if (units == 0) {
    throw std::invalid_argument("krippendorff_alpha: no units");
  }

  // Observed disagreement: average pairwise distance within each unit.
  const std::size_t m = annotations.size();
  double do_sum = 0;
  std::size_t do_pairs = 0;
  for (std::size_t u = 0; u < units; ++u) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        do_sum += set_distance(annotations[i][u], annotations[j][u], distance);
        ++do_pairs;
      }
    }
  }
  // Expected disagreement: average pairwise distance over all values pooled.
  std::vector<const std::set<std::string>*> pooled;
  pooled.reserve(m * units);
  for (const auto& ann : annotations) {
    for (const auto& value : ann) pooled.push_back(&value);
  }
  double de_sum = 0;
  std::size_t de_pairs = 0;
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    for (std::size_t j = i + 1; j < pooled.size(); ++j) {
      de_sum += set_distance(*pooled[i], *pooled[j], distance);
      ++de_pairs;
    }
  }
  const double d_o = do_pairs ? do_sum / static_cast<double>(do_pairs) : 0.0;
  const double d_e = de_pairs ? de_sum / static_cast<double>(de_pairs) : 0.0;
  if (d_e == 0.0) {
    return d_o == 0.0 ? 1.0 : 0.0;
  }
  return 1.0 - d_o / d_e;
}

}  // namespace sil
