#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lexkit {

struct WordVector {
    std::string word;            // lowercase token
    std::vector<double> vector;  // unit length
    std::size_t rank = 0;        // 1-based position in source order
};

enum class EmbeddingFormat {
    GloveText,    // word v1 v2 ... vD, no header
    FastTextVec,  // "vocab dim" header line, then same row shape
};

EmbeddingFormat parse_embedding_format(std::string_view name);
std::string_view embedding_format_name(EmbeddingFormat format);

struct ParseStats {
    std::size_t rows_read = 0;     // data rows seen, skipped included
    std::size_t rows_skipped = 0;  // malformed, wrong width, or zero norm
    std::size_t duplicates = 0;    // repeats of an already-stored word
    std::size_t header_vocab = 0;  // fasttext header count, 0 for glove
    bool header_mismatch = false;  // fasttext header disagrees with body
};

// In-memory vocabulary of unit-normalized vectors. Entry order is source
// order; the first occurrence of a word wins and later repeats are dropped.
class EmbeddingTable {
public:
    static EmbeddingTable load(const std::filesystem::path& path,
                               EmbeddingFormat format,
                               ParseStats* stats = nullptr);

    // Builds a table from raw (word, vector) rows, normalizing each vector.
    // Rows with zero-length vectors or repeated words are rejected.
    static EmbeddingTable from_rows(
        std::vector<std::pair<std::string, std::vector<double>>> rows);

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return entries_.size(); }
    const WordVector& at(std::size_t index) const { return entries_.at(index); }
    const std::vector<WordVector>& entries() const { return entries_; }

    const WordVector* find(std::string_view word) const;
    bool contains(std::string_view word) const { return find(word) != nullptr; }

    // Stable fingerprint of the source contents, for provenance records.
    const std::string& source_id() const { return source_id_; }

private:
    std::size_t dimension_ = 0;
    std::vector<WordVector> entries_;
    std::unordered_map<std::string, std::size_t> index_;
    std::string source_id_;

    void insert(std::string word, std::vector<double> vec);
};

// Clamped to [-1, 1]; order of arguments never changes the result.
double cosine(const WordVector& a, const WordVector& b);

struct VocabFilterConfig {
    std::size_t drop_top_ranks = 50;
    std::size_t min_word_length = 2;
    bool alpha_only = true;
    std::optional<std::filesystem::path> allowlist_path;
    std::optional<std::filesystem::path> blocklist_path;
};

// Selects candidate words for lexicon expansion, preserving table order.
std::vector<std::string> filter_vocabulary(const EmbeddingTable& table,
                                           const VocabFilterConfig& config);

// One word per line; blank lines and lines starting with '#' are ignored.
std::vector<std::string> read_word_list(const std::filesystem::path& path);

// Rank-to-count estimate for a word at the given frequency rank, following
// the Zipf-Mandelbrot form count = corpus_size / (rank + 2.7)^a.
double estimate_frequency(std::int64_t rank, double corpus_size = 1e6,
                          double a = 1.0);

}  // namespace lexkit
