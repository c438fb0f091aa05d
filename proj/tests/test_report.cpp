#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rigspace/io.hpp"
#include "rigspace/report.hpp"

using namespace rigspace;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("rigspace_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

CorpusIndex planted_index(unsigned seed = 307) {
  std::mt19937 rng(seed);
  auto docs = oracles::planted_corpus(rng, 3, 60, 2, 5);
  CorpusBuilder builder;
  for (const auto& d : docs) builder.add(d);
  return builder.finalize();
}

}  // namespace

TEST_CASE("double formatting round-trips exactly") {
  std::mt19937 rng(311);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("has,comma") == "\"has,comma\"");
  CHECK(csv_field("has\"quote") == "\"has\"\"quote\"");
  CHECK(split_csv_line("a,\"b,c\",\"d\"\"e\"") ==
        std::vector<std::string>{"a", "b,c", "d\"e"});
}

TEST_CASE("rig matrix CSV round-trips to identical values") {
  auto index = planted_index();
  auto matrix = build_rig_matrix(index);
  std::ostringstream out;
  save_rig_matrix_csv(matrix, out);
  std::istringstream in(out.str());
  auto restored = load_rig_matrix_csv(in);
  CHECK(restored.words == matrix.words);
  CHECK(restored.categories == matrix.categories);
  REQUIRE(restored.values.size() == matrix.values.size());
  for (std::size_t i = 0; i < matrix.values.size(); ++i)
    CHECK(restored.values[i] == matrix.values[i]);
}

TEST_CASE("word cloud export") {
  TempDir dir;
  auto index = planted_index();
  auto matrix = build_rig_matrix(index);
  const std::string cat = "cat0";

  auto data = word_cloud_data(matrix, index, cat, RankMode::rig, 4);
  CHECK(data.entries.size() == std::min<std::size_t>(4, matrix.word_count()));
  for (std::size_t i = 1; i < data.entries.size(); ++i)
    CHECK(data.entries[i - 1].score >= data.entries[i].score);

  auto path = export_word_cloud(data, dir.path);
  CHECK(path.filename() == "wordcloud_cat0_rig.csv");
  auto text = slurp(path);
  CHECK(text.starts_with("rank,word,weight\n"));

  // rig and frequency modes disagree on the planted fixture's top word
  auto freq = word_cloud_data(matrix, index, cat, RankMode::frequency, 4);
  CHECK(data.entries[0].name != freq.entries[0].name);
  CHECK(data.entries[0].name.starts_with("topic0"));
  CHECK(freq.entries[0].name.starts_with("filler"));

  CHECK_THROWS_AS(word_cloud_data(matrix, index, "nope", RankMode::rig, 4), LookupError);
}

TEST_CASE("top-10 histogram export") {
  TempDir dir;
  auto index = planted_index();
  auto matrix = build_rig_matrix(index);
  auto path = export_top10_histogram(matrix, "cat1", dir.path);
  auto text = slurp(path);
  // header + min(10, N) rows
  const auto rows = static_cast<std::size_t>(
      std::count(text.begin(), text.end(), '\n'));
  CHECK(rows == 1 + std::min<std::size_t>(10, matrix.word_count()));

  // values are an exact pass-through of the matrix column
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  auto k = matrix.category_index("cat1");
  while (std::getline(in, line)) {
    auto fields = split_csv_line(line);
    REQUIRE(fields.size() == 3);
    CHECK(std::stod(fields[2]) == matrix.at(matrix.word_index(fields[1]), k));
  }
}

TEST_CASE("perfectly co-occurring words share identical RIG values") {
  CorpusBuilder builder;
  for (int i = 0; i < 6; ++i) {
    Document d;
    d.id = "d" + std::to_string(i);
    d.categories.insert(i < 3 ? "health" : "other");
    if (i < 3) {
      d.word_set = {"health", "care"};
    } else if (i == 3) {
      d.word_set = {"noise"};
    }
    builder.add(d);
  }
  auto matrix = build_rig_matrix(builder.finalize());
  auto k = matrix.category_index("health");
  CHECK(matrix.at(matrix.word_index("health"), k) ==
        matrix.at(matrix.word_index("care"), k));
}

TEST_CASE("ranking comparison") {
  auto index = planted_index();
  auto matrix = build_rig_matrix(index);
  auto result = compare_rankings(matrix, index, "cat0", 2);
  CHECK(result.by_rig.size() == 2);
  CHECK(result.by_frequency.size() == 2);
  // planted words and fillers split the two top-2 lists
  CHECK(result.overlap < 2);

  // one-document corpus: both rankings defined, no crash
  CorpusBuilder builder;
  builder.add(make_document_tokenized("d1", {"only"}, {"solo"}));
  auto tiny_index = builder.finalize();
  auto tiny_matrix = build_rig_matrix(tiny_index);
  auto tiny = compare_rankings(tiny_matrix, tiny_index, "solo", 5);
  CHECK(tiny.by_rig.size() == 1);
  CHECK(tiny.by_frequency.size() == 1);
  CHECK(tiny.overlap == 1);
}

TEST_CASE("exports are byte-deterministic") {
  TempDir dir_a, dir_b;
  auto index = planted_index();
  auto matrix = build_rig_matrix(index);
  auto model = fit_pca(matrix);

  for (const auto& dir : {dir_a.path, dir_b.path}) {
    export_word_cloud(word_cloud_data(matrix, index, "cat0", RankMode::rig, 20), dir);
    export_top10_histogram(matrix, "cat0", dir);
    export_comparison(compare_rankings(matrix, index, "cat0", 20), "cat0", dir);
    export_word_scores(word_informativeness_sum(matrix), dir);
    export_scree(model, dir);
    export_loading_groups(loading_groups(model, 0), matrix.categories, dir);
    export_extreme_ends(extreme_ends(model, matrix, 0, 1, 5, 1), matrix, dir);
  }
  for (const auto& entry : fs::directory_iterator(dir_a.path)) {
    auto other = dir_b.path / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(slurp(entry.path()) == slurp(other));
  }
}

TEST_CASE("filename sanitization") {
  CHECK(sanitize_for_filename("Biochemistry & Molecular Biology") ==
        "Biochemistry___Molecular_Biology");
  CHECK(sanitize_for_filename("plain-name_9") == "plain-name_9");
}
