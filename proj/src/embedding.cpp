#include "lexkit/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "lexkit/digest.hpp"

namespace lexkit {

namespace {

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

// Splits on runs of spaces/tabs. Embedding rows never quote fields.
std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

bool parse_double(std::string_view s, double& out) {
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size() &&
           std::isfinite(out);
}

bool parse_size(std::string_view s, std::size_t& out) {
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

// Returns false for vectors too short to normalize.
bool unit_normalize(std::vector<double>& vec) {
    double sq = 0.0;
    for (double v : vec) sq += v * v;
    double norm = std::sqrt(sq);
    if (!(norm > 1e-12)) return false;
    for (double& v : vec) v /= norm;
    return true;
}

}  // namespace

EmbeddingFormat parse_embedding_format(std::string_view name) {
    if (name == "glove" || name == "glove-text") return EmbeddingFormat::GloveText;
    if (name == "fasttext" || name == "fasttext-vec") {
        return EmbeddingFormat::FastTextVec;
    }
    throw std::invalid_argument("unknown embedding format: " + std::string(name) +
                                " (expected glove or fasttext)");
}

std::string_view embedding_format_name(EmbeddingFormat format) {
    switch (format) {
        case EmbeddingFormat::GloveText: return "glove-text";
        case EmbeddingFormat::FastTextVec: return "fasttext-vec";
    }
    return "unknown";
}

void EmbeddingTable::insert(std::string word, std::vector<double> vec) {
    std::size_t idx = entries_.size();
    index_.emplace(word, idx);
    entries_.push_back(WordVector{std::move(word), std::move(vec), idx + 1});
}

const WordVector* EmbeddingTable::find(std::string_view word) const {
    auto it = index_.find(std::string(word));
    if (it == index_.end()) return nullptr;
    return &entries_[it->second];
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path,
                                    EmbeddingFormat format, ParseStats* stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open embedding file: " + path.string());
    }

    EmbeddingTable table;
    ParseStats st;
    Fnv1a64 digest;
    std::string line;
    std::size_t header_dim = 0;

    if (format == EmbeddingFormat::FastTextVec) {
        if (!std::getline(in, line)) {
            throw std::runtime_error("embedding file has no header line: " +
                                     path.string());
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        digest.update(line);
        digest.update("\n");
        auto fields = split_ws(line);
        if (fields.size() != 2 || !parse_size(fields[0], st.header_vocab) ||
            !parse_size(fields[1], header_dim)) {
            throw std::runtime_error("malformed vocab/dimension header in " +
                                     path.string() + ": \"" + line + "\"");
        }
    }

    std::vector<double> values;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        digest.update(line);
        digest.update("\n");
        if (line.empty()) continue;
        ++st.rows_read;

        auto fields = split_ws(line);
        if (fields.size() < 2) {
            ++st.rows_skipped;
            continue;
        }
        values.clear();
        values.reserve(fields.size() - 1);
        bool ok = true;
        for (std::size_t i = 1; i < fields.size(); ++i) {
            double v;
            if (!parse_double(fields[i], v)) {
                ok = false;
                break;
            }
            values.push_back(v);
        }
        if (!ok) {
            ++st.rows_skipped;
            continue;
        }
        if (table.dimension_ == 0) {
            // First parsable row fixes the width, even under a fasttext
            // header that claims otherwise.
            table.dimension_ = values.size();
        }
        if (values.size() != table.dimension_) {
            ++st.rows_skipped;
            continue;
        }
        if (!unit_normalize(values)) {
            ++st.rows_skipped;
            continue;
        }
        std::string word = to_lower_ascii(fields[0]);
        if (table.index_.count(word)) {
            ++st.duplicates;
            continue;
        }
        table.insert(std::move(word), values);
    }

    if (format == EmbeddingFormat::FastTextVec) {
        if (header_dim != table.dimension_ ||
            st.header_vocab != st.rows_read) {
            st.header_mismatch = true;
        }
    }
    if (st.rows_read == 0) {
        throw std::runtime_error("no embedding rows found in " + path.string());
    }
    if (st.rows_skipped * 100 > st.rows_read) {
        throw std::runtime_error(
            "embedding file " + path.string() + " looks corrupt: " +
            std::to_string(st.rows_skipped) + " of " +
            std::to_string(st.rows_read) + " rows were unusable");
    }

    table.source_id_ = path.filename().string() + ":" + digest.hex();
    if (stats) *stats = st;
    return table;
}

EmbeddingTable EmbeddingTable::from_rows(
    std::vector<std::pair<std::string, std::vector<double>>> rows) {
    EmbeddingTable table;
    Fnv1a64 digest;
    for (auto& [raw_word, vec] : rows) {
        std::string word = to_lower_ascii(raw_word);
        if (word.empty()) throw std::invalid_argument("empty word in row list");
        if (table.dimension_ == 0) {
            table.dimension_ = vec.size();
            if (table.dimension_ == 0) {
                throw std::invalid_argument("zero-dimensional vector for \"" +
                                            word + "\"");
            }
        }
        if (vec.size() != table.dimension_) {
            throw std::invalid_argument("inconsistent vector width for \"" +
                                        word + "\"");
        }
        if (!unit_normalize(vec)) {
            throw std::invalid_argument("vector for \"" + word +
                                        "\" has near-zero length");
        }
        if (table.index_.count(word)) {
            throw std::invalid_argument("duplicate word in row list: \"" + word +
                                        "\"");
        }
        digest.update(word);
        for (double v : vec) {
            digest.update(std::string_view(reinterpret_cast<const char*>(&v),
                                           sizeof(v)));
        }
        table.insert(std::move(word), std::move(vec));
    }
    if (table.entries_.empty()) {
        throw std::invalid_argument("cannot build an empty embedding table");
    }
    table.source_id_ = "memory:" + digest.hex();
    return table;
}

double cosine(const WordVector& a, const WordVector& b) {
    if (a.vector.size() != b.vector.size()) {
        throw std::invalid_argument("dimension mismatch between \"" + a.word +
                                    "\" and \"" + b.word + "\"");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < a.vector.size(); ++i) {
        dot += a.vector[i] * b.vector[i];
    }
    return std::clamp(dot, -1.0, 1.0);
}

namespace {

bool is_ascii_letter(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Treats non-ASCII bytes as letters so accented words survive the filter.
bool is_letter_byte(unsigned char c) {
    return is_ascii_letter(c) || c >= 0x80;
}

bool alpha_token(const std::string& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(w[i]);
        if (is_letter_byte(c)) continue;
        if (c == '\'' || c == '-') {
            // Only allowed strictly inside the word, between letters.
            if (i == 0 || i + 1 == w.size()) return false;
            if (!is_letter_byte(static_cast<unsigned char>(w[i - 1])) ||
                !is_letter_byte(static_cast<unsigned char>(w[i + 1]))) {
                return false;
            }
            continue;
        }
        return false;
    }
    return !w.empty();
}

}  // namespace

std::vector<std::string> read_word_list(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open word list: " + path.string());
    }
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t");
        std::string word = line.substr(start, end - start + 1);
        if (word[0] == '#') continue;
        words.push_back(to_lower_ascii(word));
    }
    return words;
}

std::vector<std::string> filter_vocabulary(const EmbeddingTable& table,
                                           const VocabFilterConfig& config) {
    std::optional<std::unordered_set<std::string>> allow;
    if (config.allowlist_path) {
        auto words = read_word_list(*config.allowlist_path);
        allow.emplace(words.begin(), words.end());
    }
    std::unordered_set<std::string> block;
    if (config.blocklist_path) {
        auto words = read_word_list(*config.blocklist_path);
        block.insert(words.begin(), words.end());
    }

    std::vector<std::string> out;
    for (std::size_t i = config.drop_top_ranks; i < table.size(); ++i) {
        const std::string& w = table.at(i).word;
        if (w.size() < config.min_word_length) continue;
        if (config.alpha_only && !alpha_token(w)) continue;
        if (allow && !allow->count(w)) continue;
        if (block.count(w)) continue;
        out.push_back(w);
    }
    return out;
}

double estimate_frequency(std::int64_t rank, double corpus_size, double a) {
    if (rank < 1) {
        throw std::invalid_argument("rank must be a positive integer, got " +
                                    std::to_string(rank));
    }
    if (!(corpus_size > 0.0)) {
        throw std::invalid_argument("corpus_size must be positive");
    }
    return corpus_size / std::pow(static_cast<double>(rank) + 2.7, a);
}

}  // namespace lexkit
