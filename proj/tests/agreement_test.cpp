// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#include <catch2/catch_amalgamated.hpp>

#include "sil/agreement.hpp"
#include "sil/rng.hpp"

using namespace sil;

TEST_CASE("cohens kappa on a hand-computed table") {
  // Confusion counts: both-positive 4, a-only 1, b-only 1, both-negative 4.
  // Po = 0.8, Pe = 0.5, kappa = 0.6.
  const std::vector<int> a = {1, 1, 1, 1, 1, 0, 0, 0, 0, 0};
  const std::vector<int> b = {1, 1, 1, 1, 0, 1, 0, 0, 0, 0};
  CHECK(cohens_kappa(a, b) == Catch::Approx(0.6));
}

TEST_CASE("cohens kappa boundary cases") {
  CHECK(cohens_kappa({1, 0, 1, 0}, {1, 0, 1, 0}) == 1.0);
  CHECK(cohens_kappa({1, 0}, {0, 1}) == Catch::Approx(-1.0));
  // Constant identical sequences: expected agreement is 1 by chance,
  // observed agreement is 1, defined as perfect agreement.
  CHECK(cohens_kappa({1, 1, 1}, {1, 1, 1}) == 1.0);
  CHECK(cohens_kappa({0, 0}, {0, 0}) == 1.0);

  CHECK_THROWS(cohens_kappa({1, 0}, {1}));
  CHECK_THROWS(cohens_kappa({}, {}));
}

TEST_CASE("kappa of independent random annotations hovers near zero") {
  Rng rng(11);
  std::vector<int> a, b;
  for (int i = 0; i < 20000; ++i) {
    a.push_back(static_cast<int>(rng.below(2)));
    b.push_back(static_cast<int>(rng.below(2)));
  }
  CHECK(std::abs(cohens_kappa(a, b)) < 0.05);
}

TEST_CASE("krippendorff alpha with nominal distance") {
  using Sets = std::vector<std::set<std::string>>;
  SECTION("perfect agreement") {
    const Sets ann = {{"a"}, {"b"}, {"a", "b"}};
    CHECK(krippendorff_alpha({ann, ann}, SetDistance::Nominal) == 1.0);
  }
  SECTION("total disagreement on two evenly split values") {
    // Units where the annotators always swap two equally frequent labels.
    const Sets u = {{"a"}, {"b"}};
    const Sets v = {{"b"}, {"a"}};
    // Do = 1; De = 8/12 pooled mismatch rate; alpha = 1 - 1/(2/3) = -0.5.
    CHECK(krippendorff_alpha({u, v}, SetDistance::Nominal) == Catch::Approx(-0.5));
  }
  SECTION("degenerate single shared value") {
    const Sets ann = {{"a"}, {"a"}};
    CHECK(krippendorff_alpha({ann, ann}, SetDistance::Nominal) == 1.0);
  }
}

TEST_CASE("krippendorff alpha with jaccard set distance") {
  using Sets = std::vector<std::set<std::string>>;
  // Overlapping but unequal label sets score partial disagreement.
  const Sets a = {{"x", "y"}, {"z"}};
  const Sets b = {{"x"}, {"z"}};
  const double nominal = krippendorff_alpha({a, b}, SetDistance::Nominal);
  const double jaccard = krippendorff_alpha({a, b}, SetDistance::Jaccard);
  // Jaccard credits the overlap on unit 0, nominal does not.
  CHECK(jaccard > nominal);
  CHECK(krippendorff_alpha({a, a}, SetDistance::Jaccard) == 1.0);
}

TEST_CASE("krippendorff alpha input validation") {
  using Sets = std::vector<std::set<std::string>>;
  const Sets two = {{"a"}, {"b"}};
  const Sets one = {{"a"}};
  CHECK_THROWS(krippendorff_alpha({two}));          // one annotator
  CHECK_THROWS(krippendorff_alpha({two, one}));     // misaligned units
  CHECK_THROWS(krippendorff_alpha({}));             // nobody
}

TEST_CASE("three annotators are pooled pairwise") {
  using Sets = std::vector<std::set<std::string>>;
  const Sets a = {{"x"}, {"y"}};
  const Sets b = {{"x"}, {"y"}};
  const Sets c = {{"x"}, {"y"}};
  CHECK(krippendorff_alpha({a, b, c}, SetDistance::Nominal) == 1.0);

  const Sets d = {{"y"}, {"x"}};
  const double mixed = krippendorff_alpha({a, b, d}, SetDistance::Nominal);
  CHECK(mixed < 1.0);
  CHECK(mixed > -1.0);
}
