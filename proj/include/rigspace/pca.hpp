#pragma once

// Principal component analysis of the Meaning Space: words are the
// observations, categories the variables. Covers fitting, explained
// variance, three component-count selection rules and per-component
// loading analysis.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigspace/infogain.hpp"

namespace rigspace {

struct PcaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PcaModel {
  Eigen::VectorXd means;         // K column means
  Eigen::VectorXd eigenvalues;   // descending, non-negative
  Eigen::MatrixXd eigenvectors;  // K x K, unit-norm columns
  Eigen::MatrixXd scores;        // N x K projections of centered data

  std::size_t dimension() const { return static_cast<std::size_t>(eigenvalues.size()); }
};

// Covariance PCA with divisor N-1. Eigenpairs are sorted by descending
// eigenvalue (equal eigenvalues keep solver order) and each eigenvector is
// sign-oriented so its largest-magnitude component is positive, first such
// index winning ties.
inline PcaModel fit_pca(const Eigen::MatrixXd& data) {
  const auto n = data.rows();
  const auto k = data.cols();
  if (n < 2) throw PcaError("PCA requires at least 2 observations");
  if (k < 1) throw PcaError("PCA requires at least 1 variable");

  PcaModel model;
  model.means = data.colwise().mean();
  Eigen::MatrixXd centered = data.rowwise() - model.means.transpose();
  Eigen::MatrixXd cov =
      (centered.transpose() * centered) / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw PcaError("eigendecomposition failed");

  // Solver returns ascending eigenvalues; reverse to descending.
  model.eigenvalues = solver.eigenvalues().reverse();
  model.eigenvectors = solver.eigenvectors().rowwise().reverse();
  for (Eigen::Index i = 0; i < k; ++i)
    model.eigenvalues[i] = std::max(0.0, model.eigenvalues[i]);

  for (Eigen::Index c = 0; c < k; ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < k; ++r) {
      const double mag = std::abs(model.eigenvectors(r, c));
      if (mag > best) {
        best = mag;
        arg = r;
      }
    }
    if (model.eigenvectors(arg, c) < 0.0) model.eigenvectors.col(c) *= -1.0;
  }

  model.scores = centered * model.eigenvectors;
  return model;
}

inline Eigen::MatrixXd to_eigen(const RigMatrix& matrix) {
  Eigen::MatrixXd data(static_cast<Eigen::Index>(matrix.word_count()),
                       static_cast<Eigen::Index>(matrix.category_count()));
  for (std::size_t j = 0; j < matrix.word_count(); ++j)
    for (std::size_t k = 0; k < matrix.category_count(); ++k)
      data(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = matrix.at(j, k);
  return data;
}

inline PcaModel fit_pca(const RigMatrix& matrix) { return fit_pca(to_eigen(matrix)); }

struct ExplainedVariance {
  std::vector<double> fraction;    // lambda_i / sum(lambda)
  std::vector<double> cumulative;  // running sum of fractions
  std::vector<double> over_mean;   // lambda_i / mean(lambda)
};

inline ExplainedVariance explained_variance(const PcaModel& model) {
  ExplainedVariance out;
  const auto k = model.eigenvalues.size();
  const double total = model.eigenvalues.sum();
  const double mean = total / static_cast<double>(k);
  double running = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double f = total > 0.0 ? model.eigenvalues[i] / total : 0.0;
    running += f;
    out.fraction.push_back(f);
    out.cumulative.push_back(running);
    out.over_mean.push_back(mean > 0.0 ? model.eigenvalues[i] / mean : 0.0);
  }
  return out;
}

enum class SelectionRule { kaiser, broken_stick, pca_cn };

struct SelectionResult {
  SelectionRule rule;
  std::size_t k = 1;
  bool flagged = false;          // degenerate/boundary situation resolved by convention
  std::string note;
  std::vector<double> detail;    // rule diagnostics (mean, thresholds or ratios)
};

// Components with eigenvalue strictly greater than the mean eigenvalue.
inline SelectionResult kaiser_select(const std::vector<double>& eigenvalues) {
  if (eigenvalues.empty()) throw PcaError("empty spectrum");
  SelectionResult result{SelectionRule::kaiser};
  const double mean = std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0) /
                      static_cast<double>(eigenvalues.size());
  std::size_t k = 0;
  for (double lambda : eigenvalues)
    if (lambda > mean) ++k;
  if (k == 0) {
    result.k = 1;
    result.flagged = true;
    result.note = "degenerate spectrum";
  } else {
    result.k = k;
  }
  result.detail = {mean};
  return result;
}

// Broken-stick thresholds b_i = (1/p) * sum_{t=i..p} 1/t; keeps the longest
// prefix whose variance fractions strictly exceed their thresholds.
inline SelectionResult broken_stick_select(const std::vector<double>& eigenvalues) {
  if (eigenvalues.empty()) throw PcaError("empty spectrum");
  SelectionResult result{SelectionRule::broken_stick};
  const std::size_t p = eigenvalues.size();
  const double total = std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);

  std::vector<double> thresholds(p);
  double tail = 0.0;
  for (std::size_t i = p; i-- > 0;) {
    tail += 1.0 / static_cast<double>(i + 1);
    thresholds[i] = tail / static_cast<double>(p);
  }
  result.detail = thresholds;

  std::size_t k = 0;
  for (std::size_t i = 0; i < p; ++i) {
    const double fraction = total > 0.0 ? eigenvalues[i] / total : 0.0;
    if (fraction > thresholds[i]) ++k;
    else break;
  }
  if (k == 0) {
    result.k = 1;
    result.flagged = true;
    result.note = "no component exceeds its broken-stick threshold";
  } else {
    result.k = k;
  }
  return result;
}

// Largest k with lambda_1 / lambda_k < C; zero eigenvalues never retained.
inline SelectionResult pca_cn_select(const std::vector<double>& eigenvalues,
                                     double condition_limit = 10.0) {
  if (eigenvalues.empty()) throw PcaError("empty spectrum");
  if (condition_limit <= 1.0) throw PcaError("condition limit must exceed 1");
  SelectionResult result{SelectionRule::pca_cn};
  const double top = eigenvalues.front();
  std::size_t k = 0;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] <= 0.0) break;
    const double ratio = top / eigenvalues[i];
    result.detail.push_back(ratio);
    if (ratio < condition_limit) k = i + 1;
  }
  if (k == 0) {
    result.k = 1;
    result.flagged = true;
    result.note = "leading eigenvalue is zero";
  } else {
    result.k = k;
  }
  return result;
}

inline SelectionResult select_components(const PcaModel& model, SelectionRule rule,
                                         double condition_limit = 10.0) {
  std::vector<double> ev(model.eigenvalues.data(),
                         model.eigenvalues.data() + model.eigenvalues.size());
  switch (rule) {
    case SelectionRule::kaiser: return kaiser_select(ev);
    case SelectionRule::broken_stick: return broken_stick_select(ev);
    case SelectionRule::pca_cn: return pca_cn_select(ev, condition_limit);
  }
  throw PcaError("unknown selection rule");
}

// Whether thresholds apply to the unit eigenvector components or to
// sqrt(eigenvalue)-scaled loadings.
enum class LoadingConvention { unit_eigenvector, sqrt_scaled };

struct LoadingGroups {
  std::size_t pc = 0;
  std::vector<std::size_t> positive;
  std::vector<std::size_t> negative;
  std::vector<std::size_t> zero;
  std::vector<double> loadings;        // per category, under the chosen convention
  double importance_threshold = 0.0;   // 1/sqrt(K)
  double zero_band = 0.0;              // 1/(2 sqrt(K))
};

// Partitions all K categories into positive / negative / zero by the
// half-importance band 1/(2 sqrt(K)).
inline LoadingGroups loading_groups(const PcaModel& model, std::size_t pc,
                                    LoadingConvention convention =
                                        LoadingConvention::unit_eigenvector) {
  const std::size_t k = model.dimension();
  if (pc >= k) throw PcaError("component index out of range");
  LoadingGroups groups;
  groups.pc = pc;
  groups.importance_threshold = 1.0 / std::sqrt(static_cast<double>(k));
  groups.zero_band = groups.importance_threshold / 2.0;
  const double scale = convention == LoadingConvention::sqrt_scaled
                           ? std::sqrt(model.eigenvalues[static_cast<Eigen::Index>(pc)])
                           : 1.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double v =
        scale * model.eigenvectors(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(pc));
    groups.loadings.push_back(v);
    if (v >= groups.zero_band) groups.positive.push_back(c);
    else if (v <= -groups.zero_band) groups.negative.push_back(c);
    else groups.zero.push_back(c);
  }
  return groups;
}

struct ExtremeEnd {
  std::vector<std::pair<std::size_t, double>> categories;  // (index, loading), extreme first
  std::vector<std::vector<RankedWord>> top_words;          // per category
  std::vector<std::string> common_words;                   // in every list
  std::vector<std::string> relaxed_common_words;           // in >= min_lists lists
  bool truncated = false;                                  // fewer group members than asked
};

struct ExtremeEndsReport {
  std::size_t pc = 0;
  ExtremeEnd positive;
  ExtremeEnd negative;
};

namespace detail {
inline ExtremeEnd build_end(const PcaModel& model, const RigMatrix& matrix, std::size_t pc,
                            const std::vector<std::size_t>& group, bool positive_end,
                            std::size_t n_categories, std::size_t n_words,
                            std::size_t min_lists) {
  ExtremeEnd end;
  std::vector<std::pair<std::size_t, double>> members;
  for (std::size_t c : group)
    members.emplace_back(
        c, model.eigenvectors(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(pc)));
  std::sort(members.begin(), members.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return positive_end ? a.second > b.second : a.second < b.second;
    return matrix.categories[a.first] < matrix.categories[b.first];
  });
  if (members.size() < n_categories) end.truncated = true;
  else members.resize(n_categories);
  end.categories = members;

  std::map<std::string, std::size_t> occurrence;
  for (const auto& [c, loading] : end.categories) {
    auto ranked = rank_by_rig(matrix, c, n_words);
    for (const auto& rw : ranked) ++occurrence[rw.name];
    end.top_words.push_back(std::move(ranked));
  }
  for (const auto& [word, count] : occurrence) {
    if (count == end.categories.size() && !end.categories.empty())
      end.common_words.push_back(word);
    if (count >= min_lists) end.relaxed_common_words.push_back(word);
  }
  return end;
}
}  // namespace detail

// The paper-style end-of-axis analysis: the n most extreme categories in the
// positive and negative loading groups, each category's top-RIG words, and
// the words common to all (or at least min_lists of) those lists.
inline ExtremeEndsReport extreme_ends(const PcaModel& model, const RigMatrix& matrix,
                                      std::size_t pc, std::size_t n_categories = 10,
                                      std::size_t n_words = 150, std::size_t min_lists = 5,
                                      LoadingConvention convention =
                                          LoadingConvention::unit_eigenvector) {
  if (n_categories > model.dimension()) throw PcaError("n_categories exceeds K");
  auto groups = loading_groups(model, pc, convention);
  ExtremeEndsReport report;
  report.pc = pc;
  report.positive = detail::build_end(model, matrix, pc, groups.positive, true, n_categories,
                                      n_words, min_lists);
  report.negative = detail::build_end(model, matrix, pc, groups.negative, false, n_categories,
                                      n_words, min_lists);
  return report;
}

// Word coordinates on the chosen components; each column has zero mean.
inline Eigen::MatrixXd project_words(const PcaModel& model,
                                     const std::vector<std::size_t>& components) {
  Eigen::MatrixXd out(model.scores.rows(), static_cast<Eigen::Index>(components.size()));
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i] >= model.dimension()) throw PcaError("component index out of range");
    out.col(static_cast<Eigen::Index>(i)) =
        model.scores.col(static_cast<Eigen::Index>(components[i]));
  }
  return out;
}

}  // namespace rigspace
