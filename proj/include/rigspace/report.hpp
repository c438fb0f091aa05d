#pragma once

// Machine-readable report files: word-cloud weights, top-10 histograms,
// RIG-vs-frequency comparisons, informativeness scores, scree data,
// loading groups and extreme-end JSON. Exports are pure functions of
// their inputs, so identical inputs give byte-identical files.

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "rigspace/infogain.hpp"
#include "rigspace/io.hpp"
#include "rigspace/pca.hpp"

namespace rigspace {

enum class RankMode { rig, frequency };

inline std::string rank_mode_name(RankMode mode) {
  return mode == RankMode::rig ? "rig" : "frequency";
}

// Category names appear in file names; anything outside [A-Za-z0-9_-]
// becomes '_'.
inline std::string sanitize_for_filename(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-';
    out += ok ? c : '_';
  }
  return out;
}

struct WordCloudData {
  std::string category;
  RankMode mode;
  std::vector<RankedWord> entries;  // non-increasing weights
};

inline WordCloudData word_cloud_data(const RigMatrix& matrix, const CorpusIndex& index,
                                     const std::string& category, RankMode mode,
                                     std::size_t top_n = 100) {
  WordCloudData data;
  data.category = category;
  data.mode = mode;
  if (mode == RankMode::rig)
    data.entries = rank_by_rig(matrix, matrix.category_index(category), top_n);
  else
    data.entries = rank_by_frequency(index, index.registry.at(category), top_n);
  return data;
}

namespace detail {
inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestError("cannot write report file: " + path.string());
  return out;
}
}  // namespace detail

// wordcloud_<category>_<mode>.csv with columns rank,word,weight.
inline std::filesystem::path export_word_cloud(const WordCloudData& data,
                                               const std::filesystem::path& out_dir) {
  auto path = out_dir / ("wordcloud_" + sanitize_for_filename(data.category) + "_" +
                         rank_mode_name(data.mode) + ".csv");
  auto out = detail::open_out(path);
  out << "rank,word,weight\n";
  for (std::size_t i = 0; i < data.entries.size(); ++i)
    out << (i + 1) << ',' << csv_field(data.entries[i].name) << ','
        << format_double(data.entries[i].score) << '\n';
  return path;
}

// hist10_<category>.csv: the 10 largest-RIG words with their values.
inline std::filesystem::path export_top10_histogram(const RigMatrix& matrix,
                                                    const std::string& category,
                                                    const std::filesystem::path& out_dir) {
  auto ranked = rank_by_rig(matrix, matrix.category_index(category), 10);
  auto path = out_dir / ("hist10_" + sanitize_for_filename(category) + ".csv");
  auto out = detail::open_out(path);
  out << "rank,word,rig\n";
  for (std::size_t i = 0; i < ranked.size(); ++i)
    out << (i + 1) << ',' << csv_field(ranked[i].name) << ','
        << format_double(ranked[i].score) << '\n';
  return path;
}

struct ComparisonResult {
  std::vector<RankedWord> by_rig;
  std::vector<RankedWord> by_frequency;
  std::size_t overlap = 0;  // |intersection of the two top-n word sets|
};

inline ComparisonResult compare_rankings(const RigMatrix& matrix, const CorpusIndex& index,
                                         const std::string& category, std::size_t top_n) {
  ComparisonResult result;
  result.by_rig = rank_by_rig(matrix, matrix.category_index(category), top_n);
  result.by_frequency = rank_by_frequency(index, index.registry.at(category), top_n);
  std::set<std::string> rig_words;
  for (const auto& rw : result.by_rig) rig_words.insert(rw.name);
  for (const auto& rw : result.by_frequency)
    if (rig_words.contains(rw.name)) ++result.overlap;
  return result;
}

// comparison_<category>.csv: side-by-side RIG and frequency rankings; the
// overlap count rides in a trailing comment-style row.
inline std::filesystem::path export_comparison(const ComparisonResult& result,
                                               const std::string& category,
                                               const std::filesystem::path& out_dir) {
  auto path = out_dir / ("comparison_" + sanitize_for_filename(category) + ".csv");
  auto out = detail::open_out(path);
  out << "rank,rig_word,rig_value,freq_word,freq_value\n";
  const std::size_t rows = std::max(result.by_rig.size(), result.by_frequency.size());
  for (std::size_t i = 0; i < rows; ++i) {
    out << (i + 1) << ',';
    if (i < result.by_rig.size())
      out << csv_field(result.by_rig[i].name) << ',' << format_double(result.by_rig[i].score);
    else
      out << ',';
    out << ',';
    if (i < result.by_frequency.size())
      out << csv_field(result.by_frequency[i].name) << ','
          << format_double(result.by_frequency[i].score);
    else
      out << ',';
    out << '\n';
  }
  out << "overlap,," << result.overlap << ",,\n";
  return path;
}

// wordscores.csv: word,s_sum,s_mean descending by s_sum (ties lexicographic).
inline std::filesystem::path export_word_scores(std::vector<WordScore> scores,
                                                const std::filesystem::path& out_dir,
                                                const std::string& filename = "wordscores.csv") {
  std::sort(scores.begin(), scores.end(), [](const WordScore& a, const WordScore& b) {
    if (a.sum != b.sum) return a.sum > b.sum;
    return a.name < b.name;
  });
  auto path = out_dir / filename;
  auto out = detail::open_out(path);
  out << "word,s_sum,s_mean\n";
  for (const auto& s : scores)
    out << csv_field(s.name) << ',' << format_double(s.sum) << ',' << format_double(s.mean)
        << '\n';
  return path;
}

// scree.csv: pc,eigenvalue,eigenvalue_over_mean,fraction,cumulative.
inline std::filesystem::path export_scree(const PcaModel& model,
                                          const std::filesystem::path& out_dir) {
  auto ev = explained_variance(model);
  auto path = out_dir / "scree.csv";
  auto out = detail::open_out(path);
  out << "pc,eigenvalue,eigenvalue_over_mean,fraction,cumulative\n";
  for (std::size_t i = 0; i < ev.fraction.size(); ++i)
    out << (i + 1) << ',' << format_double(model.eigenvalues[static_cast<Eigen::Index>(i)])
        << ',' << format_double(ev.over_mean[i]) << ',' << format_double(ev.fraction[i]) << ','
        << format_double(ev.cumulative[i]) << '\n';
  return path;
}

// groups_pc<k>.csv: pc,category,loading,group (1-based pc in the name).
inline std::filesystem::path export_loading_groups(const LoadingGroups& groups,
                                                   const std::vector<std::string>& categories,
                                                   const std::filesystem::path& out_dir) {
  auto path = out_dir / ("groups_pc" + std::to_string(groups.pc + 1) + ".csv");
  auto out = detail::open_out(path);
  out << "pc,category,loading,group\n";
  auto emit = [&](const std::vector<std::size_t>& members, const char* label) {
    for (std::size_t c : members)
      out << (groups.pc + 1) << ',' << csv_field(categories[c]) << ','
          << format_double(groups.loadings[c]) << ',' << label << '\n';
  };
  emit(groups.positive, "positive");
  emit(groups.negative, "negative");
  emit(groups.zero, "zero");
  return path;
}

inline nlohmann::json extreme_end_to_json(const ExtremeEnd& end, const RigMatrix& matrix) {
  nlohmann::json j;
  j["truncated"] = end.truncated;
  auto cats = nlohmann::json::array();
  for (std::size_t i = 0; i < end.categories.size(); ++i) {
    nlohmann::json cat;
    cat["category"] = matrix.categories[end.categories[i].first];
    cat["loading"] = end.categories[i].second;
    auto words = nlohmann::json::array();
    for (const auto& rw : end.top_words[i]) words.push_back({{"word", rw.name}, {"rig", rw.score}});
    cat["top_words"] = std::move(words);
    cats.push_back(std::move(cat));
  }
  j["categories"] = std::move(cats);
  j["common_words"] = end.common_words;
  j["relaxed_common_words"] = end.relaxed_common_words;
  return j;
}

// extremes_pc<k>.json: both ends with ordered categories, per-category word
// lists and the strict/relaxed common-word lists.
inline std::filesystem::path export_extreme_ends(const ExtremeEndsReport& report,
                                                 const RigMatrix& matrix,
                                                 const std::filesystem::path& out_dir) {
  auto path = out_dir / ("extremes_pc" + std::to_string(report.pc + 1) + ".json");
  auto out = detail::open_out(path);
  nlohmann::json j;
  j["pc"] = report.pc + 1;
  j["positive"] = extreme_end_to_json(report.positive, matrix);
  j["negative"] = extreme_end_to_json(report.negative, matrix);
  out << j.dump(2) << '\n';
  return path;
}

}  // namespace rigspace
