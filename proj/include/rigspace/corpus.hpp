#pragma once

// Corpus ingestion: text normalization, dictionary/category registries and
// the binary word-document-category incidence counts everything downstream
// consumes. Counting is presence-based: a word either occurs in a document
// or it does not.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rigspace/porter.hpp"

namespace rigspace {

struct IngestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LookupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NormalizeOptions {
  bool stem = true;
  bool remove_stopwords = false;
};

// A small English stop list, applied pre-stemming when enabled.
inline const std::unordered_set<std::string>& stopword_set() {
  static const std::unordered_set<std::string> words = {
      "a",    "an",   "and",  "are", "as",   "at",   "be",   "but", "by",
      "for",  "from", "had",  "has", "have", "in",   "into", "is",  "it",
      "its",  "of",   "on",   "or",  "that", "the",  "their", "there",
      "these", "they", "this", "to",  "was",  "were", "which", "with"};
  return words;
}

// Lowercases and splits on anything non-alphabetic; digits and punctuation
// act as separators. Duplicates are preserved here; deduplication happens
// when a Document is built.
inline std::vector<std::string> normalize_text(const std::string& text,
                                               const NormalizeOptions& options = {}) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    if (!options.remove_stopwords || !stopword_set().contains(current)) {
      tokens.push_back(options.stem ? porter_stem(current) : current);
    }
    current.clear();
  };
  for (unsigned char c : text) {
    if (c >= 'a' && c <= 'z') current.push_back(static_cast<char>(c));
    else if (c >= 'A' && c <= 'Z') current.push_back(static_cast<char>(c - 'A' + 'a'));
    else flush();
  }
  flush();
  return tokens;
}

// One labeled input record after normalization. word_set is deduplicated;
// categories must be non-empty.
struct Document {
  std::string id;
  std::set<std::string> word_set;
  std::set<std::string> categories;
};

struct Dictionary {
  std::vector<std::string> words;                       // lexicographic
  std::unordered_map<std::string, std::size_t> index;   // word -> position
  std::vector<std::int64_t> doc_frequency;              // |D^j|

  std::size_t size() const { return words.size(); }

  std::size_t at(const std::string& word) const {
    auto it = index.find(word);
    if (it == index.end()) throw LookupError("unknown word: " + word);
    return it->second;
  }
};

struct CategoryRegistry {
  std::vector<std::string> names;                       // lexicographic
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::int64_t> doc_count;                  // |D_k|

  std::size_t size() const { return names.size(); }

  std::size_t at(const std::string& name) const {
    auto it = index.find(name);
    if (it == index.end()) throw LookupError("unknown category: " + name);
    return it->second;
  }
};

// The four counts of the 2x2 word/category contingency table.
struct ContingencyTable {
  std::int64_t joint = 0;      // texts in category k containing word j (w_jk)
  std::int64_t word_docs = 0;  // |D^j|
  std::int64_t cat_docs = 0;   // |D_k|
  std::int64_t total = 0;      // M

  bool valid() const {
    return total >= 1 && word_docs >= 0 && word_docs <= total && cat_docs >= 0 &&
           cat_docs <= total && joint >= 0 && joint <= word_docs && joint <= cat_docs &&
           total - cat_docs - (word_docs - joint) >= 0;
  }
};

// Immutable incidence counts for a whole corpus. joint is sparse per word,
// sorted by category index; absent entries mean w_jk = 0.
struct CorpusIndex {
  std::int64_t total_docs = 0;  // M
  Dictionary dictionary;
  CategoryRegistry registry;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> joint;  // per word

  std::int64_t joint_count(std::size_t word, std::size_t category) const {
    const auto& row = joint[word];
    auto it = std::lower_bound(row.begin(), row.end(), category,
                               [](const auto& p, std::size_t k) { return p.first < k; });
    return (it != row.end() && it->first == category) ? it->second : 0;
  }

  ContingencyTable contingency(std::size_t word, std::size_t category) const {
    if (word >= dictionary.size()) throw LookupError("word index out of range");
    if (category >= registry.size()) throw LookupError("category index out of range");
    return {joint_count(word, category), dictionary.doc_frequency[word],
            registry.doc_count[category], total_docs};
  }

  ContingencyTable contingency(const std::string& word, const std::string& category) const {
    return contingency(dictionary.at(word), registry.at(category));
  }
};

// Accumulates documents and finalizes into a CorpusIndex with lexicographic
// word and category order. Order of add() calls does not affect the result.
class CorpusBuilder {
public:
  void add(const Document& doc) {
    if (doc.id.empty()) throw IngestError("document with empty id");
    if (doc.categories.empty())
      throw IngestError("document '" + doc.id + "' has no categories");
    if (!seen_ids_.insert(doc.id).second)
      throw IngestError("duplicate document id '" + doc.id + "'");
    for (const auto& w : doc.word_set)
      if (w.empty()) throw IngestError("document '" + doc.id + "' contains an empty word");
    ++total_docs_;
    for (const auto& c : doc.categories) ++cat_counts_[c];
    for (const auto& w : doc.word_set) {
      ++word_counts_[w];
      auto& per_cat = joint_[w];
      for (const auto& c : doc.categories) ++per_cat[c];
    }
  }

  CorpusIndex finalize(std::int64_t min_doc_frequency = 1) const {
    if (total_docs_ == 0) throw IngestError("empty corpus");
    CorpusIndex index;
    index.total_docs = total_docs_;

    for (const auto& [word, df] : word_counts_) {
      if (df >= min_doc_frequency) {
        index.dictionary.words.push_back(word);
        index.dictionary.doc_frequency.push_back(df);
      }
    }
    for (std::size_t j = 0; j < index.dictionary.words.size(); ++j)
      index.dictionary.index.emplace(index.dictionary.words[j], j);

    for (const auto& [name, count] : cat_counts_) {
      index.registry.names.push_back(name);
      index.registry.doc_count.push_back(count);
    }
    for (std::size_t k = 0; k < index.registry.names.size(); ++k)
      index.registry.index.emplace(index.registry.names[k], k);

    index.joint.resize(index.dictionary.size());
    for (std::size_t j = 0; j < index.dictionary.size(); ++j) {
      const auto& per_cat = joint_.at(index.dictionary.words[j]);
      auto& row = index.joint[j];
      row.reserve(per_cat.size());
      for (const auto& [name, count] : per_cat)
        row.emplace_back(index.registry.index.at(name), count);
      std::sort(row.begin(), row.end());
    }
    return index;
  }

  std::int64_t total_docs() const { return total_docs_; }

private:
  std::int64_t total_docs_ = 0;
  std::unordered_set<std::string> seen_ids_;
  std::map<std::string, std::int64_t> word_counts_;  // ordered: fixes dictionary order
  std::map<std::string, std::int64_t> cat_counts_;
  std::map<std::string, std::map<std::string, std::int64_t>> joint_;
};

// Builds a Document from raw text (normalize + dedupe).
inline Document make_document(std::string id, const std::string& text,
                              std::vector<std::string> categories,
                              const NormalizeOptions& options = {}) {
  Document doc;
  doc.id = std::move(id);
  auto tokens = normalize_text(text, options);
  doc.word_set.insert(tokens.begin(), tokens.end());
  doc.categories.insert(categories.begin(), categories.end());
  return doc;
}

// Builds a Document from pre-tokenized words, bypassing normalization.
inline Document make_document_tokenized(std::string id, const std::vector<std::string>& words,
                                        std::vector<std::string> categories) {
  Document doc;
  doc.id = std::move(id);
  for (const auto& w : words)
    if (!w.empty()) doc.word_set.insert(w);
  doc.categories.insert(categories.begin(), categories.end());
  return doc;
}

}  // namespace rigspace
