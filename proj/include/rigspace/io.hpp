#pragma once

// File I/O: JSON-lines corpus ingestion, the CorpusIndex snapshot format
// and CSV read/write for the RIG matrix. All numeric output uses
// shortest round-trip formatting so exports re-parse to identical values.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rigspace/corpus.hpp"
#include "rigspace/infogain.hpp"

namespace rigspace {

inline std::string format_double(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

// RFC-4180 style quoting, applied only when needed.
inline std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  quoted += '"';
  return quoted;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

enum class InputFormat { raw, tokenized };

// Reads JSON-lines records ({"id", "text"|"words", "categories"}) into the
// builder. Blank lines are skipped; any malformed record aborts with the
// line number.
inline void ingest_jsonl(std::istream& in, CorpusBuilder& builder, InputFormat format,
                         const NormalizeOptions& options = {}) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw IngestError("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
    }
    try {
      if (!record.is_object() || !record.contains("id") || !record.contains("categories"))
        throw IngestError("record must have 'id' and 'categories'");
      auto id = record.at("id").get<std::string>();
      auto categories = record.at("categories").get<std::vector<std::string>>();
      if (categories.empty()) throw IngestError("record '" + id + "' has no categories");
      if (format == InputFormat::raw) {
        builder.add(make_document(std::move(id), record.at("text").get<std::string>(),
                                  std::move(categories), options));
      } else {
        builder.add(make_document_tokenized(
            std::move(id), record.at("words").get<std::vector<std::string>>(),
            std::move(categories)));
      }
    } catch (const nlohmann::json::exception& e) {
      throw IngestError("line " + std::to_string(line_no) + ": bad record: " + e.what());
    } catch (const IngestError& e) {
      throw IngestError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

inline CorpusIndex ingest_corpus_file(const std::filesystem::path& path, InputFormat format,
                                      const NormalizeOptions& options = {},
                                      std::int64_t min_doc_frequency = 1) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open input file: " + path.string());
  CorpusBuilder builder;
  ingest_jsonl(in, builder, format, options);
  return builder.finalize(min_doc_frequency);
}

inline constexpr int kIndexSnapshotVersion = 1;

// Versioned JSON snapshot of a CorpusIndex; round-trips all counts exactly.
inline nlohmann::json index_to_json(const CorpusIndex& index) {
  nlohmann::json snapshot;
  snapshot["format"] = "rigspace-index";
  snapshot["version"] = kIndexSnapshotVersion;
  snapshot["total_docs"] = index.total_docs;
  snapshot["words"] = index.dictionary.words;
  snapshot["doc_frequency"] = index.dictionary.doc_frequency;
  snapshot["categories"] = index.registry.names;
  snapshot["category_doc_count"] = index.registry.doc_count;
  auto joint = nlohmann::json::array();
  for (std::size_t j = 0; j < index.joint.size(); ++j)
    for (const auto& [k, count] : index.joint[j])
      joint.push_back({j, k, count});
  snapshot["joint"] = std::move(joint);
  return snapshot;
}

inline CorpusIndex index_from_json(const nlohmann::json& snapshot) {
  if (!snapshot.is_object() || snapshot.value("format", "") != "rigspace-index")
    throw IngestError("not a rigspace index snapshot");
  if (snapshot.value("version", 0) != kIndexSnapshotVersion)
    throw IngestError("unsupported index snapshot version");
  CorpusIndex index;
  index.total_docs = snapshot.at("total_docs").get<std::int64_t>();
  index.dictionary.words = snapshot.at("words").get<std::vector<std::string>>();
  index.dictionary.doc_frequency =
      snapshot.at("doc_frequency").get<std::vector<std::int64_t>>();
  index.registry.names = snapshot.at("categories").get<std::vector<std::string>>();
  index.registry.doc_count =
      snapshot.at("category_doc_count").get<std::vector<std::int64_t>>();
  for (std::size_t j = 0; j < index.dictionary.words.size(); ++j)
    index.dictionary.index.emplace(index.dictionary.words[j], j);
  for (std::size_t k = 0; k < index.registry.names.size(); ++k)
    index.registry.index.emplace(index.registry.names[k], k);
  index.joint.resize(index.dictionary.words.size());
  for (const auto& entry : snapshot.at("joint")) {
    auto j = entry.at(0).get<std::size_t>();
    auto k = entry.at(1).get<std::size_t>();
    auto count = entry.at(2).get<std::int64_t>();
    if (j >= index.joint.size() || k >= index.registry.names.size())
      throw IngestError("joint entry out of range in snapshot");
    index.joint[j].emplace_back(k, count);
  }
  for (auto& row : index.joint) std::sort(row.begin(), row.end());
  return index;
}

inline void save_index(const CorpusIndex& index, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IngestError("cannot write index snapshot: " + path.string());
  out << index_to_json(index).dump() << '\n';
}

inline CorpusIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open index snapshot: " + path.string());
  nlohmann::json snapshot;
  try {
    in >> snapshot;
  } catch (const nlohmann::json::exception& e) {
    throw IngestError("invalid index snapshot: " + std::string(e.what()));
  }
  return index_from_json(snapshot);
}

// CSV layout: header "word,<cat1>,<cat2>,...", one row per word.
inline void save_rig_matrix_csv(const RigMatrix& matrix, std::ostream& out) {
  out << "word";
  for (const auto& c : matrix.categories) out << ',' << csv_field(c);
  out << '\n';
  for (std::size_t j = 0; j < matrix.word_count(); ++j) {
    out << csv_field(matrix.words[j]);
    for (std::size_t k = 0; k < matrix.category_count(); ++k)
      out << ',' << format_double(matrix.at(j, k));
    out << '\n';
  }
}

inline void save_rig_matrix_csv(const RigMatrix& matrix, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IngestError("cannot write matrix CSV: " + path.string());
  save_rig_matrix_csv(matrix, out);
}

inline RigMatrix load_rig_matrix_csv(std::istream& in) {
  RigMatrix matrix;
  std::string line;
  if (!std::getline(in, line)) throw IngestError("empty matrix CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "word")
    throw IngestError("matrix CSV header must start with 'word'");
  matrix.categories.assign(header.begin() + 1, header.end());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw IngestError("matrix CSV line " + std::to_string(line_no) + ": wrong field count");
    matrix.words.push_back(fields[0]);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      double v = 0.0;
      auto [p, ec] = std::from_chars(fields[k].data(), fields[k].data() + fields[k].size(), v);
      if (ec != std::errc() || p != fields[k].data() + fields[k].size())
        throw IngestError("matrix CSV line " + std::to_string(line_no) + ": bad number '" +
                          fields[k] + "'");
      matrix.values.push_back(v);
    }
  }
  if (matrix.words.empty()) throw IngestError("matrix CSV has no data rows");
  return matrix;
}

inline RigMatrix load_rig_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open matrix CSV: " + path.string());
  return load_rig_matrix_csv(in);
}

}  // namespace rigspace
