// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#pragma once

#include <set>
#include <string>
#include <vector>

namespace sil {

/// Cohen's kappa for two binary annotation sequences.
/// Returns 1 for perfect agreement, including the degenerate case of
/// constant identical sequences (expected agreement 1).
double cohens_kappa(const std::vector<int>& a, const std::vector<int>& b);

enum class SetDistance {
  Nominal,  // 0 if sets equal, else 1
  Jaccard,  // 1 - |a ∩ b| / |a ∪ b|; empty vs empty -> 0
};

/// Krippendorff's alpha for multi-label annotations: one item-id set per
/// (annotator, unit). All annotators label all units; at least two
/// annotators required. alpha = 1 - Do/De over all pairable values.
double krippendorff_alpha(const std::vector<std::vector<std::set<std::string>>>& annotations,
                          SetDistance distance = SetDistance::Jaccard);

}  // namespace sil
