#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lexkit/embedding.hpp"

namespace lexkit {

// A concept pole pair, e.g. Positive/Negative or Care/Anti-Care.
struct SeedSet {
    std::string concept_name;
    std::string positive_label;
    std::string negative_label;
    std::vector<std::string> positive_seeds;
    std::vector<std::string> negative_seeds;

    // Throws std::invalid_argument on empty poles, repeats, or overlap.
    void validate() const;
};

struct LexiconEntry {
    std::string word;
    double valence = 0.0;  // [-1, 1], never 0; sign matches the pole
    bool seed = false;
    std::string pole;
};

struct LexiconProvenance {
    std::string embedding_source;
    std::string filter_digest;
    std::string seed_digest;
    std::size_t positive_size = 0;  // requested expansion sizes
    std::size_t negative_size = 0;
    std::vector<std::string> dropped_seeds;  // seeds missing from the table
};

struct Lexicon {
    std::string concept_name;
    std::string positive_label;
    std::string negative_label;
    // Sorted by valence descending, then word ascending.
    std::vector<LexiconEntry> entries;
    LexiconProvenance provenance;
    bool truncated_positive = false;  // fewer qualifying words than requested
    bool truncated_negative = false;
};

struct RawPolarityScore {
    std::string word;
    double score = 0.0;
};

struct ExpansionOptions {
    // Score each word against the pole sums, or against pole means when the
    // two seed lists differ a lot in size.
    bool use_pole_means = false;
};

// Summed cosine similarity to the positive seeds minus summed cosine
// similarity to the negative seeds. Seeds missing from the table are skipped;
// a pole with no resolvable seed at all is an error.
double net_polarity(std::string_view word, const SeedSet& seeds,
                    const EmbeddingTable& table,
                    const ExpansionOptions& options = {});

// net_polarity for every candidate present in the table, in candidate order.
// Candidates that are seed words or missing from the table are omitted.
std::vector<RawPolarityScore> score_candidates(
    const SeedSet& seeds, const std::vector<std::string>& candidates,
    const EmbeddingTable& table, const ExpansionOptions& options = {});

// Scales raw scores into [-1, 1] by the largest magnitude on each side of
// zero, so the extreme of each side lands exactly on +1 or -1. Zeros stay 0.
// Throws if every score is zero.
std::vector<double> normalize_valences(const std::vector<double>& raw);

// Expands the seed poles to the requested sizes over the candidate list,
// normalizes valences per side, and appends the seeds at valence +/-1.
Lexicon build_lexicon(const SeedSet& seeds,
                      const std::vector<std::string>& candidates,
                      const EmbeddingTable& table, std::size_t positive_size,
                      std::size_t negative_size,
                      const ExpansionOptions& options = {});

// CSV with header word,valence,seed,sentiment. Valences are written in the
// shortest form that reads back to the identical double.
void export_lexicon_csv(const Lexicon& lexicon,
                        const std::filesystem::path& path);
std::string lexicon_to_csv(const Lexicon& lexicon);

// Rejects malformed rows with their line numbers: bad field counts, valence
// outside [-1, 1] or exactly 0, seed flags other than 0/1, repeated words,
// or more than one pole label per valence sign.
Lexicon import_lexicon_csv(const std::filesystem::path& path,
                           std::string concept_name = "");
Lexicon lexicon_from_csv(std::string_view text, std::string concept_name = "",
                         std::string source_name = "");

// Uniform subsample of k seeds per pole, without replacement, deterministic
// for a given rng_seed. Output pole lists are sorted.
SeedSet sample_seeds(const SeedSet& full, std::size_t k, std::uint64_t rng_seed);

struct ResidualOutlier {
    std::string word;
    double a_valence = 0.0;
    double b_valence = 0.0;
    double residual = 0.0;
};

struct OverlapReport {
    std::size_t a_words = 0;  // expanded words considered in a
    std::size_t b_words = 0;
    std::size_t shared = 0;
    double overlap_fraction = 0.0;      // shared / a_words
    double direction_agreement = 0.0;   // same-sign share among shared
    bool has_regression = false;        // needs >= 3 shared words
    double slope = 0.0;
    double intercept = 0.0;
    // Shared words whose a-valence sits far from the fitted line, sorted by
    // residual magnitude descending.
    std::vector<ResidualOutlier> outliers_over_05;
    std::vector<ResidualOutlier> outliers_over_06;
};

// How much of a's expanded vocabulary b covers, and how well the shared
// words' valences line up (OLS of a's valences on b's).
OverlapReport compare_lexicons(const Lexicon& a, const Lexicon& b,
                               bool include_seeds = false);

}  // namespace lexkit
