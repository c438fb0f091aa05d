// Command-line driver: ingestion -> RIG matrix -> thesaurus -> PCA ->
// report files, as reproducible batch runs. Every command writes its
// effective configuration to <out-dir>/run_config.json; re-running with
// --config on that file reproduces the run. Exit codes: 0 success,
// 1 usage error, 2 data error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "rigspace/corpus.hpp"
#include "rigspace/infogain.hpp"
#include "rigspace/io.hpp"
#include "rigspace/pca.hpp"
#include "rigspace/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string config;
  std::string input;
  std::string format = "raw";
  std::string index_path;
  std::string matrix_path;
  std::string out_dir;
  std::string category;
  std::string by = "rig";
  std::string select = "kaiser";
  std::string convention = "unit";
  bool no_stem = false;
  bool stopwords = false;
  std::int64_t min_df = 1;
  std::size_t top = 10;
  std::size_t cloud_top = 100;
  std::size_t size = 1;
  double cn = 10.0;
  std::size_t pc = 1;
  std::size_t n_categories = 10;
  std::size_t n_words = 150;
  std::size_t min_lists = 5;
};

void options_from_json(const json& j, Options& opt) {
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("input", opt.input);
  get("format", opt.format);
  get("index", opt.index_path);
  get("matrix", opt.matrix_path);
  get("out_dir", opt.out_dir);
  get("category", opt.category);
  get("by", opt.by);
  get("select", opt.select);
  get("convention", opt.convention);
  get("no_stem", opt.no_stem);
  get("stopwords", opt.stopwords);
  get("min_df", opt.min_df);
  get("top", opt.top);
  get("cloud_top", opt.cloud_top);
  get("size", opt.size);
  get("cn", opt.cn);
  get("pc", opt.pc);
  get("n_categories", opt.n_categories);
  get("n_words", opt.n_words);
  get("min_lists", opt.min_lists);
}

json options_to_json(const std::string& subcommand, const Options& opt) {
  return {{"subcommand", subcommand},
          {"input", opt.input},
          {"format", opt.format},
          {"index", opt.index_path},
          {"matrix", opt.matrix_path},
          {"out_dir", opt.out_dir},
          {"category", opt.category},
          {"by", opt.by},
          {"select", opt.select},
          {"convention", opt.convention},
          {"no_stem", opt.no_stem},
          {"stopwords", opt.stopwords},
          {"min_df", opt.min_df},
          {"top", opt.top},
          {"cloud_top", opt.cloud_top},
          {"size", opt.size},
          {"cn", opt.cn},
          {"pc", opt.pc},
          {"n_categories", opt.n_categories},
          {"n_words", opt.n_words},
          {"min_lists", opt.min_lists}};
}

fs::path resolve_out_dir(Options& opt) {
  if (opt.out_dir.empty()) {
    if (const char* env = std::getenv("RIGSPACE_OUT_DIR")) opt.out_dir = env;
    else opt.out_dir = ".";
  }
  fs::path dir(opt.out_dir);
  fs::create_directories(dir);
  return dir;
}

void write_run_config(const std::string& subcommand, const Options& opt, const fs::path& dir) {
  std::ofstream out(dir / "run_config.json", std::ios::binary);
  out << options_to_json(subcommand, opt).dump(2) << '\n';
}

rigspace::CorpusIndex load_index_required(const Options& opt) {
  if (opt.index_path.empty()) throw rigspace::IngestError("--index is required");
  return rigspace::load_index(opt.index_path);
}

// Matrix either directly from CSV or computed from the index snapshot.
rigspace::RigMatrix load_matrix(const Options& opt) {
  if (!opt.matrix_path.empty()) return rigspace::load_rig_matrix_csv(opt.matrix_path);
  return rigspace::build_rig_matrix(load_index_required(opt));
}

rigspace::LoadingConvention parse_convention(const std::string& name) {
  if (name == "unit") return rigspace::LoadingConvention::unit_eigenvector;
  if (name == "scaled") return rigspace::LoadingConvention::sqrt_scaled;
  throw rigspace::IngestError("unknown loading convention: " + name);
}

int run_ingest(Options& opt) {
  if (opt.input.empty()) throw rigspace::IngestError("--input is required");
  auto dir = resolve_out_dir(opt);
  rigspace::NormalizeOptions norm{!opt.no_stem, opt.stopwords};
  auto format = opt.format == "tokenized" ? rigspace::InputFormat::tokenized
                                          : rigspace::InputFormat::raw;
  auto index = rigspace::ingest_corpus_file(opt.input, format, norm, opt.min_df);
  auto path = dir / "index.json";
  rigspace::save_index(index, path);
  write_run_config("ingest", opt, dir);
  std::cout << "ingest: " << index.total_docs << " documents, " << index.dictionary.size()
            << " words, " << index.registry.size() << " categories -> " << path.string()
            << "\n";
  return 0;
}

int run_rig(Options& opt) {
  auto dir = resolve_out_dir(opt);
  auto index = load_index_required(opt);
  auto matrix = rigspace::build_rig_matrix(index);
  auto path = dir / "rig_matrix.csv";
  rigspace::save_rig_matrix_csv(matrix, path);
  write_run_config("rig", opt, dir);
  std::cout << "rig: " << matrix.word_count() << "x" << matrix.category_count()
            << " matrix";
  if (!matrix.degenerate_categories.empty())
    std::cout << " (" << matrix.degenerate_categories.size() << " degenerate categories)";
  std::cout << " -> " << path.string() << "\n";
  return 0;
}

int run_rank(Options& opt) {
  if (opt.category.empty()) throw rigspace::IngestError("--category is required");
  auto dir = resolve_out_dir(opt);
  auto index = load_index_required(opt);
  std::vector<rigspace::RankedWord> ranked;
  if (opt.by == "freq") {
    ranked = rigspace::rank_by_frequency(index, index.registry.at(opt.category), opt.top);
  } else {
    auto matrix = rigspace::build_rig_matrix(index);
    ranked = rigspace::rank_by_rig(matrix, matrix.category_index(opt.category), opt.top);
  }
  auto path = dir / ("rank_" + rigspace::sanitize_for_filename(opt.category) + "_" + opt.by +
                     ".csv");
  std::ofstream out(path, std::ios::binary);
  out << "rank,word,score\n";
  for (std::size_t i = 0; i < ranked.size(); ++i)
    out << (i + 1) << ',' << rigspace::csv_field(ranked[i].name) << ','
        << rigspace::format_double(ranked[i].score) << '\n';
  write_run_config("rank", opt, dir);
  std::cout << "rank: top " << ranked.size() << " words of '" << opt.category << "' by "
            << opt.by << " -> " << path.string() << "\n";
  return 0;
}

int run_thesaurus(Options& opt) {
  auto dir = resolve_out_dir(opt);
  auto index = load_index_required(opt);
  auto matrix = rigspace::build_rig_matrix(index);
  auto scores = rigspace::word_informativeness_sum(matrix);
  rigspace::export_word_scores(scores, dir);
  auto selected = rigspace::select_thesaurus(scores, opt.size);
  auto path = rigspace::export_word_scores(selected, dir, "thesaurus.csv");
  write_run_config("thesaurus", opt, dir);
  std::cout << "thesaurus: " << selected.size() << " of " << scores.size() << " words -> "
            << path.string() << "\n";
  return 0;
}

int run_pca(Options& opt) {
  auto dir = resolve_out_dir(opt);
  auto matrix = load_matrix(opt);
  auto model = rigspace::fit_pca(matrix);
  rigspace::export_scree(model, dir);
  rigspace::SelectionRule rule = rigspace::SelectionRule::kaiser;
  if (opt.select == "broken-stick") rule = rigspace::SelectionRule::broken_stick;
  else if (opt.select == "pca-cn") rule = rigspace::SelectionRule::pca_cn;
  else if (opt.select != "kaiser")
    throw rigspace::IngestError("unknown selection rule: " + opt.select);
  auto result = rigspace::select_components(model, rule, opt.cn);
  write_run_config("pca", opt, dir);
  std::cout << "pca: " << opt.select << " k=" << result.k
            << (result.flagged ? " (flagged: " + result.note + ")" : "") << " -> "
            << (dir / "scree.csv").string() << "\n";
  return 0;
}

int run_groups(Options& opt) {
  if (opt.pc < 1) throw rigspace::IngestError("--pc is 1-based");
  auto dir = resolve_out_dir(opt);
  auto matrix = load_matrix(opt);
  auto model = rigspace::fit_pca(matrix);
  auto groups = rigspace::loading_groups(model, opt.pc - 1, parse_convention(opt.convention));
  auto path = rigspace::export_loading_groups(groups, matrix.categories, dir);
  write_run_config("groups", opt, dir);
  std::cout << "groups: pc" << opt.pc << " positive=" << groups.positive.size()
            << " zero=" << groups.zero.size() << " negative=" << groups.negative.size()
            << " -> " << path.string() << "\n";
  return 0;
}

int run_extremes(Options& opt) {
  if (opt.pc < 1) throw rigspace::IngestError("--pc is 1-based");
  auto dir = resolve_out_dir(opt);
  auto matrix = load_matrix(opt);
  auto model = rigspace::fit_pca(matrix);
  auto report = rigspace::extreme_ends(model, matrix, opt.pc - 1, opt.n_categories,
                                       opt.n_words, opt.min_lists,
                                       parse_convention(opt.convention));
  auto path = rigspace::export_extreme_ends(report, matrix, dir);
  write_run_config("extremes", opt, dir);
  std::cout << "extremes: pc" << opt.pc << " common+=" << report.positive.common_words.size()
            << " common-=" << report.negative.common_words.size() << " -> " << path.string()
            << "\n";
  return 0;
}

int run_report(Options& opt) {
  if (opt.category.empty()) throw rigspace::IngestError("--category is required");
  auto dir = resolve_out_dir(opt);
  auto index = load_index_required(opt);
  auto matrix = rigspace::build_rig_matrix(index);
  const std::size_t top_n = opt.cloud_top;
  rigspace::export_word_cloud(
      rigspace::word_cloud_data(matrix, index, opt.category, rigspace::RankMode::rig, top_n),
      dir);
  rigspace::export_word_cloud(
      rigspace::word_cloud_data(matrix, index, opt.category, rigspace::RankMode::frequency,
                                top_n),
      dir);
  rigspace::export_top10_histogram(matrix, opt.category, dir);
  auto comparison = rigspace::compare_rankings(matrix, index, opt.category, top_n);
  rigspace::export_comparison(comparison, opt.category, dir);
  write_run_config("report", opt, dir);
  std::cout << "report: category '" << opt.category << "' overlap=" << comparison.overlap
            << "/" << top_n << " -> " << dir.string() << "\n";
  return 0;
}

// --config supplies defaults; explicit flags override them.
void preload_config(int argc, char** argv, Options& opt) {
  for (int i = 1; i < argc - 1; ++i) {
    if (std::string(argv[i]) == "--config") {
      std::ifstream in(argv[i + 1]);
      if (!in) throw rigspace::IngestError(std::string("cannot open config: ") + argv[i + 1]);
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw rigspace::IngestError("invalid config JSON: " + std::string(e.what()));
      }
      options_from_json(j, opt);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  try {
    preload_config(argc, argv, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Word-category relative information gain toolkit"};
  app.require_subcommand(1);
  app.add_option("--config", opt.config, "JSON config supplying option defaults");

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config, "JSON config supplying option defaults");
    cmd->add_option("--out-dir", opt.out_dir, "output directory");
  };

  auto* ingest = app.add_subcommand("ingest", "build an index snapshot from labeled documents");
  add_common(ingest);
  ingest->add_option("--input", opt.input, "JSON-lines corpus file");
  ingest->add_option("--format", opt.format, "raw|tokenized")
      ->check(CLI::IsMember({"raw", "tokenized"}));
  ingest->add_option("--min-df", opt.min_df, "minimum document frequency");
  ingest->add_flag("--no-stem", opt.no_stem, "disable Porter stemming");
  ingest->add_flag("--stopwords", opt.stopwords, "remove stop words");

  auto* rig = app.add_subcommand("rig", "compute the word-category RIG matrix CSV");
  add_common(rig);
  rig->add_option("--index", opt.index_path, "index snapshot");

  auto* rank = app.add_subcommand("rank", "rank a category's words");
  add_common(rank);
  rank->add_option("--index", opt.index_path, "index snapshot");
  rank->add_option("--category", opt.category, "category name");
  rank->add_option("--by", opt.by, "rig|freq")->check(CLI::IsMember({"rig", "freq"}));
  rank->add_option("--top", opt.top, "list length");

  auto* thesaurus = app.add_subcommand("thesaurus", "select the most informative words");
  add_common(thesaurus);
  thesaurus->add_option("--index", opt.index_path, "index snapshot");
  thesaurus->add_option("--size", opt.size, "number of words to keep");

  auto* pca = app.add_subcommand("pca", "fit PCA and select the component count");
  add_common(pca);
  pca->add_option("--index", opt.index_path, "index snapshot");
  pca->add_option("--matrix", opt.matrix_path, "RIG matrix CSV (bypasses the index)");
  pca->add_option("--select", opt.select, "kaiser|broken-stick|pca-cn")
      ->check(CLI::IsMember({"kaiser", "broken-stick", "pca-cn"}));
  pca->add_option("--cn", opt.cn, "condition-number limit for pca-cn");

  auto* groups = app.add_subcommand("groups", "positive/zero/negative category groups of a PC");
  add_common(groups);
  groups->add_option("--index", opt.index_path, "index snapshot");
  groups->add_option("--matrix", opt.matrix_path, "RIG matrix CSV");
  groups->add_option("--pc", opt.pc, "1-based component index");
  groups->add_option("--convention", opt.convention, "unit|scaled")
      ->check(CLI::IsMember({"unit", "scaled"}));

  auto* extremes = app.add_subcommand("extremes", "extreme-end category/word analysis of a PC");
  add_common(extremes);
  extremes->add_option("--index", opt.index_path, "index snapshot");
  extremes->add_option("--matrix", opt.matrix_path, "RIG matrix CSV");
  extremes->add_option("--pc", opt.pc, "1-based component index");
  extremes->add_option("--n-categories", opt.n_categories, "categories per end");
  extremes->add_option("--n-words", opt.n_words, "top words per category");
  extremes->add_option("--min-lists", opt.min_lists, "relaxed common-word list threshold");
  extremes->add_option("--convention", opt.convention, "unit|scaled")
      ->check(CLI::IsMember({"unit", "scaled"}));

  auto* report = app.add_subcommand("report", "word-cloud, histogram and comparison files");
  add_common(report);
  report->add_option("--index", opt.index_path, "index snapshot");
  report->add_option("--category", opt.category, "category name");
  report->add_option("--top", opt.cloud_top, "word-cloud length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (ingest->parsed()) return run_ingest(opt);
    if (rig->parsed()) return run_rig(opt);
    if (rank->parsed()) return run_rank(opt);
    if (thesaurus->parsed()) return run_thesaurus(opt);
    if (pca->parsed()) return run_pca(opt);
    if (groups->parsed()) return run_groups(opt);
    if (extremes->parsed()) return run_extremes(opt);
    if (report->parsed()) return run_report(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
