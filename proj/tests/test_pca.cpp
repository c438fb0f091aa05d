#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "oracles.hpp"
#include "rigspace/pca.hpp"

using namespace rigspace;

namespace {

Eigen::MatrixXd random_matrix(std::mt19937& rng, int n, int k) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd data(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) data(i, j) = gauss(rng);
  return data;
}

}  // namespace

TEST_CASE("fit_pca invariants on random data") {
  std::mt19937 rng(211);
  auto data = random_matrix(rng, 500, 20);
  auto model = fit_pca(data);

  // descending, non-negative spectrum
  for (int i = 1; i < 20; ++i) CHECK(model.eigenvalues[i - 1] >= model.eigenvalues[i]);
  CHECK(model.eigenvalues[19] >= 0.0);

  // orthonormal eigenvectors
  Eigen::MatrixXd gram = model.eigenvectors.transpose() * model.eigenvectors;
  CHECK((gram - Eigen::MatrixXd::Identity(20, 20)).cwiseAbs().maxCoeff() < 1e-10);

  // trace preservation
  Eigen::MatrixXd centered = data.rowwise() - model.means.transpose();
  Eigen::MatrixXd cov = centered.transpose() * centered / 499.0;
  CHECK(std::abs(model.eigenvalues.sum() - cov.trace()) < 1e-10);

  // score covariance is diagonal with the eigenvalues on the diagonal
  Eigen::MatrixXd score_cov = model.scores.transpose() * model.scores / 499.0;
  Eigen::MatrixXd expected = model.eigenvalues.asDiagonal();
  CHECK((score_cov - expected).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("duplicated column forces a zero eigenvalue") {
  std::mt19937 rng(223);
  auto data = random_matrix(rng, 100, 5);
  data.col(4) = data.col(2);
  auto model = fit_pca(data);
  CHECK(model.eigenvalues[4] < 1e-10);
}

TEST_CASE("axis-aligned recovery of known variances") {
  std::mt19937 rng(227);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd data(5000, 2);
  for (int i = 0; i < 5000; ++i) {
    data(i, 0) = 2.0 * g(rng);  // variance 4
    data(i, 1) = g(rng);        // variance 1
  }
  auto model = fit_pca(data);
  CHECK(model.eigenvalues[0] == doctest::Approx(4.0).epsilon(0.10));
  CHECK(model.eigenvalues[1] == doctest::Approx(1.0).epsilon(0.10));
  CHECK(std::abs(model.eigenvectors(0, 0)) > 0.99);
  CHECK(std::abs(model.eigenvectors(1, 1)) > 0.99);
}

TEST_CASE("fit_pca requires at least two observations") {
  Eigen::MatrixXd one(1, 3);
  one.setZero();
  CHECK_THROWS_AS(fit_pca(one), PcaError);
}

TEST_CASE("sign convention is deterministic") {
  std::mt19937 rng(229);
  auto data = random_matrix(rng, 50, 6);
  auto a = fit_pca(data);
  auto b = fit_pca(data);
  CHECK((a.eigenvectors - b.eigenvectors).cwiseAbs().maxCoeff() == 0.0);
  for (int c = 0; c < 6; ++c) {
    Eigen::Index arg = 0;
    a.eigenvectors.col(c).cwiseAbs().maxCoeff(&arg);
    CHECK(a.eigenvectors(arg, c) > 0.0);
  }
}

TEST_CASE("explained variance fractions and cumulative sums") {
  PcaModel model;
  model.eigenvalues = Eigen::Vector4d(6, 2, 1, 1);
  auto ev = explained_variance(model);
  CHECK(ev.fraction == std::vector<double>{0.6, 0.2, 0.1, 0.1});
  CHECK(ev.cumulative[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(ev.cumulative[1] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(ev.cumulative[2] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(ev.cumulative[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ev.over_mean[0] == doctest::Approx(2.4).epsilon(1e-12));

  PcaModel single;
  single.eigenvalues = Eigen::VectorXd::Constant(1, 3.0);
  CHECK(explained_variance(single).fraction[0] == 1.0);
}

TEST_CASE("kaiser rule") {
  auto result = kaiser_select({3, 1.5, 0.5, 0.4, 0.3, 0.3});
  CHECK(result.k == 2);
  CHECK_FALSE(result.flagged);
  CHECK(result.detail[0] == doctest::Approx(1.0).epsilon(1e-12));

  auto degenerate = kaiser_select({2, 2, 2});
  CHECK(degenerate.k == 1);
  CHECK(degenerate.flagged);

  // scale invariance
  auto scaled = kaiser_select({300, 150, 50, 40, 30, 30});
  CHECK(scaled.k == 2);
}

TEST_CASE("broken stick rule") {
  auto result = broken_stick_select({6, 2, 1, 1});
  CHECK(result.k == 1);
  REQUIRE(result.detail.size() == 4);
  CHECK(result.detail[0] == doctest::Approx(0.520833333333).epsilon(1e-9));
  CHECK(result.detail[1] == doctest::Approx(0.270833333333).epsilon(1e-9));
  CHECK(result.detail[2] == doctest::Approx(0.145833333333).epsilon(1e-9));
  CHECK(result.detail[3] == doctest::Approx(0.0625).epsilon(1e-12));

  // a flat spectrum never beats its first threshold; reported as 1, flagged
  auto flat = broken_stick_select({1, 1, 1, 1});
  CHECK(flat.k == 1);
  CHECK(flat.flagged);

  // exact equality at i=1 fails the strict inequality: fractions (0.5, 0.5)
  // vs thresholds (0.75, 0.25)
  auto boundary = broken_stick_select({3, 1});
  CHECK(boundary.k == 1);
  CHECK(boundary.flagged);
}

TEST_CASE("pca-cn rule") {
  auto result = pca_cn_select({9, 3, 1, 0.5}, 10.0);
  CHECK(result.k == 3);

  // C just above lambda1/lambdaK keeps every positive eigenvalue
  auto all = pca_cn_select({9, 3, 1, 0.5}, 9.0 / 0.5 + 1e-9);
  CHECK(all.k == 4);

  // monotone non-decreasing in C
  std::size_t prev = 0;
  for (double c : {1.5, 2.0, 4.0, 10.0, 20.0, 100.0}) {
    auto r = pca_cn_select({9, 3, 1, 0.5, 0.0}, c);
    CHECK(r.k >= prev);
    prev = r.k;
    CHECK(r.k <= 4);  // the zero eigenvalue is never retained
  }
  CHECK_THROWS_AS(pca_cn_select({1.0}, 1.0), PcaError);
}

TEST_CASE("loading groups partition all categories") {
  // K=4: importance 0.5, zero band 0.25
  PcaModel model;
  model.eigenvalues = Eigen::Vector4d(4, 3, 2, 1);
  model.eigenvectors = Eigen::Matrix4d::Identity();
  model.eigenvectors.col(0) << 0.6, -0.3, 0.1, -0.2;
  auto groups = loading_groups(model, 0);
  CHECK(groups.importance_threshold == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(groups.zero_band == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(groups.positive == std::vector<std::size_t>{0});
  CHECK(groups.negative == std::vector<std::size_t>{1});
  CHECK(groups.zero == std::vector<std::size_t>{2, 3});
  CHECK(groups.positive.size() + groups.negative.size() + groups.zero.size() == 4);

  // all-equal loadings 1/sqrt(K) are all positive
  model.eigenvectors.col(1) << 0.5, 0.5, 0.5, 0.5;
  auto equal = loading_groups(model, 1);
  CHECK(equal.positive.size() == 4);
  CHECK(equal.zero.empty());
  CHECK(equal.negative.empty());

  CHECK_THROWS_AS(loading_groups(model, 4), PcaError);
}

TEST_CASE("loading groups under the sqrt-scaled convention") {
  PcaModel model;
  model.eigenvalues = Eigen::Vector4d(4, 1, 1, 1);
  model.eigenvectors = Eigen::Matrix4d::Identity();
  model.eigenvectors.col(0) << 0.2, 0.2, -0.2, -0.9;
  // unit convention: |0.2| < 0.25 -> zero; scaled by sqrt(4)=2: 0.4 -> grouped
  auto unit = loading_groups(model, 0, LoadingConvention::unit_eigenvector);
  CHECK(unit.zero == std::vector<std::size_t>{0, 1, 2});
  auto scaled = loading_groups(model, 0, LoadingConvention::sqrt_scaled);
  CHECK(scaled.positive == std::vector<std::size_t>{0, 1});
  CHECK(scaled.negative == std::vector<std::size_t>{2, 3});
}

TEST_CASE("extreme ends on a constructed fixture") {
  // Category "solo" is carried by its own planted words; its top-RIG words
  // must appear verbatim in the end report that features it.
  std::mt19937 rng(233);
  auto docs = oracles::planted_corpus(rng, 4, 50, 3, 5);
  CorpusBuilder builder;
  for (const auto& d : docs) builder.add(d);
  auto matrix = build_rig_matrix(builder.finalize());
  auto model = fit_pca(matrix);

  auto report = extreme_ends(model, matrix, 1, 1, 10, 1);
  for (const auto* end : {&report.positive, &report.negative}) {
    if (end->categories.empty()) continue;
    const auto cat = end->categories[0].first;
    auto expected = rank_by_rig(matrix, cat, 10);
    REQUIRE(end->top_words.size() == 1);
    REQUIRE(end->top_words[0].size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
      CHECK(end->top_words[0][i].name == expected[i].name);
    // single-list intersection equals the list itself
    CHECK(end->common_words.size() == expected.size());
  }
}

TEST_CASE("extreme ends truncate when a group is small") {
  std::mt19937 rng(239);
  auto docs = oracles::planted_corpus(rng, 3, 40, 2, 4);
  CorpusBuilder builder;
  for (const auto& d : docs) builder.add(d);
  auto matrix = build_rig_matrix(builder.finalize());
  auto model = fit_pca(matrix);
  auto report = extreme_ends(model, matrix, 0, 3, 5, 2);
  // K=3 so a 3-category end cannot fill from one group on both sides
  CHECK((report.positive.truncated || report.negative.truncated));
}

TEST_CASE("word projections") {
  std::mt19937 rng(241);
  auto data = random_matrix(rng, 200, 6);
  auto model = fit_pca(data);

  std::vector<std::size_t> all = {0, 1, 2, 3, 4, 5};
  auto coords = project_words(model, all);
  // zero-mean coordinates, variance lambda_i
  for (int c = 0; c < 6; ++c) {
    CHECK(std::abs(coords.col(c).mean()) < 1e-10);
    const double var = coords.col(c).squaredNorm() / 199.0;
    CHECK(std::abs(var - model.eigenvalues[c]) < 1e-8);
  }

  // orthonormal round-trip reconstructs the centered data
  Eigen::MatrixXd centered = data.rowwise() - model.means.transpose();
  Eigen::MatrixXd back = coords * model.eigenvectors.transpose();
  CHECK((back - centered).cwiseAbs().maxCoeff() < 1e-8);

  auto single = project_words(model, {2});
  CHECK(single.cols() == 1);
  CHECK(single.rows() == 200);
  CHECK_THROWS_AS(project_words(model, {7}), PcaError);
}
