// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "support/oracles.hpp"
#include "swarmkd/metrics.hpp"
#include "swarmkd/rng.hpp"

using namespace swarmkd;

namespace {

struct Labels {
  std::vector<int> pred;
  std::vector<int> truth;
};

// Expands a [truth][pred] confusion matrix into label lists.
Labels from_confusion(const std::vector<std::vector<int>>& c) {
  Labels out;
  for (std::size_t t = 0; t < c.size(); ++t) {
    for (std::size_t p = 0; p < c[t].size(); ++p) {
      for (int n = 0; n < c[t][p]; ++n) {
        out.truth.push_back(static_cast<int>(t));
        out.pred.push_back(static_cast<int>(p));
      }
    }
  }
  return out;
}

double binary_mcc(const Labels& l) {
  double tp = 0, tn = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < l.pred.size(); ++i) {
    if (l.truth[i] == 1 && l.pred[i] == 1) ++tp;
    if (l.truth[i] == 0 && l.pred[i] == 0) ++tn;
    if (l.truth[i] == 0 && l.pred[i] == 1) ++fp;
    if (l.truth[i] == 1 && l.pred[i] == 0) ++fn;
  }
  const double d = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  return d == 0.0 ? 0.0 : (tp * tn - fp * fn) / std::sqrt(d);
}

}  // namespace

TEST_CASE("accuracy") {
  const std::vector<int> truth{0, 1, 2, 3};
  CHECK(accuracy(truth, truth) == 1.0);
  CHECK(accuracy(std::vector<int>{1, 2, 3, 0}, truth) == 0.0);
  CHECK(accuracy(std::vector<int>{0, 1, 2, 0}, truth) == 0.75);
  CHECK_THROWS_AS(accuracy(std::vector<int>{0}, truth), std::invalid_argument);
  CHECK_THROWS_AS(accuracy(std::vector<int>{}, std::vector<int>{}), std::invalid_argument);
  CHECK(class_accuracy(std::vector<int>{0, 1, 2, 0}, truth, 3) == 0.0);
  CHECK(class_accuracy(std::vector<int>{0, 1, 2, 0}, truth, 0) == 1.0);
  CHECK_FALSE(class_accuracy(truth, truth, 7).has_value());
}

TEST_CASE("confusion matrix layout") {
  const auto c = confusion_matrix(std::vector<int>{1, 1, 0}, std::vector<int>{0, 1, 1}, 2);
  CHECK(c[0][1] == 1);
  CHECK(c[1][1] == 1);
  CHECK(c[1][0] == 1);
  CHECK(c[0][0] == 0);
  CHECK_THROWS_AS(confusion_matrix(std::vector<int>{2}, std::vector<int>{0}, 2), std::invalid_argument);
}

TEST_CASE("mcc hand cases") {
  const auto two = from_confusion({{2, 1}, {1, 2}});
  CHECK(mcc(two.pred, two.truth, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  const auto three = from_confusion({{3, 1, 0}, {0, 2, 1}, {1, 0, 2}});
  CHECK(mcc(three.pred, three.truth, 3) == doctest::Approx(6.0 / 11.0).epsilon(1e-14));

  const std::vector<int> truth{0, 1, 2, 3, 0, 1};
  CHECK(mcc(truth, truth, 4) == 1.0);
  CHECK(mcc(std::vector<int>(6, 2), truth, 4) == 0.0);
  CHECK(mcc(std::vector<int>{0, 1, 0, 1}, std::vector<int>{0, 0, 0, 0}, 2) == 0.0);
  CHECK(mcc(std::vector<int>{1, 0}, std::vector<int>{0, 1}, 2) == doctest::Approx(-1.0));
}

TEST_CASE("mcc agrees with the correlation form") {
  Rng rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 2 + rng.index(4);
    const std::size_t n = 5 + rng.index(60);
    std::vector<int> pred(n);
    std::vector<int> truth(n);
    for (std::size_t i = 0; i < n; ++i) {
      truth[i] = static_cast<int>(rng.index(k));
      pred[i] = rng.bernoulli(0.6) ? truth[i] : static_cast<int>(rng.index(k));
    }
    CHECK(mcc(pred, truth, k) == doctest::Approx(oracle::mcc_by_correlation(pred, truth, k)).epsilon(1e-12));
    const double m = mcc(pred, truth, k);
    CHECK(m >= -1.0);
    CHECK(m <= 1.0);
  }
}

TEST_CASE("binary mcc formula") {
  Rng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    Labels l;
    const std::size_t n = 2 + rng.index(40);
    for (std::size_t i = 0; i < n; ++i) {
      l.truth.push_back(static_cast<int>(rng.index(2)));
      l.pred.push_back(static_cast<int>(rng.index(2)));
    }
    CHECK(mcc(l.pred, l.truth, 2) == doctest::Approx(binary_mcc(l)).epsilon(1e-12));
  }
}

TEST_CASE("relabeling invariance") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<int, 4> perm{0, 1, 2, 3};
    rng.shuffle(std::span<int>(perm));
    std::vector<int> pred(50);
    std::vector<int> truth(50);
    for (std::size_t i = 0; i < 50; ++i) {
      truth[i] = static_cast<int>(rng.index(4));
      pred[i] = rng.bernoulli(0.5) ? truth[i] : static_cast<int>(rng.index(4));
    }
    auto pp = pred;
    auto tt = truth;
    for (auto& v : pp) v = perm[static_cast<std::size_t>(v)];
    for (auto& v : tt) v = perm[static_cast<std::size_t>(v)];
    CHECK(accuracy(pp, tt) == accuracy(pred, truth));
    CHECK(mcc(pp, tt, 4) == doctest::Approx(mcc(pred, truth, 4)).epsilon(1e-12));
  }
}

TEST_CASE("random predictions average zero mcc") {
  Rng rng(4);
  std::vector<int> truth(200);
  for (std::size_t i = 0; i < truth.size(); ++i) truth[i] = static_cast<int>(i % 4);
  double sum = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<int> pred(truth.size());
    for (auto& p : pred) p = static_cast<int>(rng.index(4));
    sum += mcc(pred, truth, 4);
  }
  CHECK(std::abs(sum / 1000.0) <= 0.05);
}

TEST_CASE("drop percentage") {
  CHECK(drop_pct(60.93, 54.39) == doctest::Approx(10.73).epsilon(1e-3));
  CHECK(drop_pct(476.0, 3.0) == doctest::Approx(99.37).epsilon(1e-4));
  CHECK(drop_pct(5.0, 5.0) == 0.0);
  CHECK_THROWS_AS(drop_pct(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("report serialization") {
  EvalReport r;
  r.model = "student";
  r.accuracy = 0.9;
  r.mcc = 0.8;
  r.model_size_mb = 0.001;
  nlohmann::json j = r;
  CHECK_FALSE(j.contains("time_cost_s"));
  CHECK_FALSE(j.contains("drop_vs_teacher_pct"));
  r.acc_drop_pct = 1.5;
  r.time_cost_s = 0.25;
  j = r;
  CHECK(j.at("drop_vs_teacher_pct").at("accuracy") == 1.5);
  CHECK(j.at("time_cost_s") == 0.25);
  CHECK(results_csv_header() == "model,size_mb,accuracy,mcc,time_s,acc_drop_pct,mcc_drop_pct");
  CHECK(results_csv_row(r) == "student,0.001,0.9,0.8,0.25,1.5,");
}
