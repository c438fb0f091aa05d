#pragma once

// Entropy, information gain and relative information gain per (word,
// category) pair, plus the N x K RIG matrix, per-category word rankings,
// summed-informativeness scores and thesaurus selection.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigspace/corpus.hpp"

namespace rigspace {

struct SizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// x * log2(x) with the 0*log0 = 0 convention.
inline double xlog2x(double x) {
  return x > 0.0 ? x * std::log2(x) : 0.0;
}

// Binary entropy of a probability p, in bits.
inline double binary_entropy(double p) {
  return -xlog2x(p) - xlog2x(1.0 - p);
}

// H(c_k): entropy of category membership.
inline double category_entropy(const ContingencyTable& t) {
  return binary_entropy(static_cast<double>(t.cat_docs) / static_cast<double>(t.total));
}

// H(c_k | w_j): two-branch conditional entropy weighted by word presence.
// A branch of zero weight contributes 0.
inline double conditional_entropy(const ContingencyTable& t) {
  const double m = static_cast<double>(t.total);
  const double dj = static_cast<double>(t.word_docs);
  double h = 0.0;
  if (t.word_docs > 0)
    h += (dj / m) * binary_entropy(static_cast<double>(t.joint) / dj);
  if (t.word_docs < t.total)
    h += ((m - dj) / m) *
         binary_entropy(static_cast<double>(t.cat_docs - t.joint) / (m - dj));
  return h;
}

// IG(c_k, w_j) = H(c_k) - H(c_k | w_j). Clamped at 0 against rounding.
inline double information_gain(const ContingencyTable& t) {
  return std::max(0.0, category_entropy(t) - conditional_entropy(t));
}

// RIG = IG / H(c_k), in [0, 1]. A degenerate category (|D_k| in {0, M})
// has zero entropy; RIG is 0 by convention and *degenerate is set.
inline double relative_information_gain(const ContingencyTable& t,
                                        bool* degenerate = nullptr) {
  const double h = category_entropy(t);
  if (h <= 0.0) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  if (degenerate) *degenerate = false;
  return std::min(1.0, information_gain(t) / h);
}

// The Meaning Space: one row of RIG values per word, one column per
// category, orders inherited from the source index.
struct RigMatrix {
  std::vector<std::string> words;
  std::vector<std::string> categories;
  std::vector<double> values;                 // row-major, N x K
  std::vector<std::size_t> degenerate_categories;

  std::size_t word_count() const { return words.size(); }
  std::size_t category_count() const { return categories.size(); }

  double at(std::size_t word, std::size_t category) const {
    return values[word * categories.size() + category];
  }
  double& at(std::size_t word, std::size_t category) {
    return values[word * categories.size() + category];
  }

  std::size_t word_index(const std::string& word) const {
    auto it = std::find(words.begin(), words.end(), word);
    if (it == words.end()) throw LookupError("unknown word: " + word);
    return static_cast<std::size_t>(it - words.begin());
  }
  std::size_t category_index(const std::string& name) const {
    auto it = std::find(categories.begin(), categories.end(), name);
    if (it == categories.end()) throw LookupError("unknown category: " + name);
    return static_cast<std::size_t>(it - categories.begin());
  }
};

inline RigMatrix build_rig_matrix(const CorpusIndex& index) {
  if (index.total_docs == 0 || index.registry.size() == 0)
    throw IngestError("cannot build a RIG matrix from an empty index");
  RigMatrix matrix;
  matrix.words = index.dictionary.words;
  matrix.categories = index.registry.names;
  const std::size_t n = matrix.word_count();
  const std::size_t k = matrix.category_count();
  matrix.values.assign(n * k, 0.0);

  std::vector<bool> degenerate(k, false);
  for (std::size_t kk = 0; kk < k; ++kk) {
    const auto dk = index.registry.doc_count[kk];
    degenerate[kk] = (dk == 0 || dk == index.total_docs);
    if (degenerate[kk]) matrix.degenerate_categories.push_back(kk);
  }

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t kk = 0; kk < k; ++kk) {
      if (degenerate[kk]) continue;
      matrix.at(j, kk) = relative_information_gain(index.contingency(j, kk));
    }
  }
  return matrix;
}

struct RankedWord {
  std::size_t word = 0;
  std::string name;
  double score = 0.0;
};

namespace detail {
inline void sort_and_truncate(std::vector<RankedWord>& ranked, std::size_t top_n) {
  std::sort(ranked.begin(), ranked.end(), [](const RankedWord& a, const RankedWord& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.name < b.name;
  });
  if (ranked.size() > top_n) ranked.resize(top_n);
}
}  // namespace detail

// Words of one category ordered by descending RIG, ties lexicographic.
inline std::vector<RankedWord> rank_by_rig(const RigMatrix& matrix, std::size_t category,
                                           std::size_t top_n) {
  if (category >= matrix.category_count()) throw LookupError("category index out of range");
  std::vector<RankedWord> ranked;
  ranked.reserve(matrix.word_count());
  for (std::size_t j = 0; j < matrix.word_count(); ++j)
    ranked.push_back({j, matrix.words[j], matrix.at(j, category)});
  detail::sort_and_truncate(ranked, top_n);
  return ranked;
}

// Words of one category ordered by descending within-category document
// frequency w_jk, ties lexicographic.
inline std::vector<RankedWord> rank_by_frequency(const CorpusIndex& index,
                                                 std::size_t category, std::size_t top_n) {
  if (category >= index.registry.size()) throw LookupError("category index out of range");
  std::vector<RankedWord> ranked;
  ranked.reserve(index.dictionary.size());
  for (std::size_t j = 0; j < index.dictionary.size(); ++j)
    ranked.push_back({j, index.dictionary.words[j],
                      static_cast<double>(index.joint_count(j, category))});
  detail::sort_and_truncate(ranked, top_n);
  return ranked;
}

struct WordScore {
  std::size_t word = 0;
  std::string name;
  double sum = 0.0;   // S_j
  double mean = 0.0;  // S_j / K
};

// S_j row sums, in dictionary order.
inline std::vector<WordScore> word_informativeness_sum(const RigMatrix& matrix) {
  std::vector<WordScore> scores;
  scores.reserve(matrix.word_count());
  const double k = static_cast<double>(matrix.category_count());
  for (std::size_t j = 0; j < matrix.word_count(); ++j) {
    double s = 0.0;
    for (std::size_t kk = 0; kk < matrix.category_count(); ++kk) s += matrix.at(j, kk);
    scores.push_back({j, matrix.words[j], s, s / k});
  }
  return scores;
}

// The n words with largest S_j, descending, ties lexicographic.
inline std::vector<WordScore> select_thesaurus(std::vector<WordScore> scores, std::size_t n) {
  if (n > scores.size())
    throw SizeError("thesaurus size " + std::to_string(n) + " exceeds vocabulary size " +
                    std::to_string(scores.size()));
  std::sort(scores.begin(), scores.end(), [](const WordScore& a, const WordScore& b) {
    if (a.sum != b.sum) return a.sum > b.sum;
    return a.name < b.name;
  });
  scores.resize(n);
  return scores;
}

}  // namespace rigspace
