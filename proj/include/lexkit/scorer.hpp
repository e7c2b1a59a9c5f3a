#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexkit/lexicon.hpp"

namespace lexkit {

struct TokenizedDoc {
    std::string doc_id;
    std::vector<std::string> tokens;  // lowercase unigrams, order preserved
};

// Lowercases and splits on anything that is not a letter or digit, keeping
// apostrophes and hyphens that sit inside a token. Tokens that are digits
// only are dropped.
TokenizedDoc tokenize(std::string_view doc_id, std::string_view text);

enum class ScoreMode {
    Polarity,  // (P - N) / (P + N) over matched token counts
    Valence,   // mean valence of matched tokens
};

ScoreMode parse_score_mode(std::string_view name);
std::string_view score_mode_name(ScoreMode mode);

struct DocumentScore {
    std::string doc_id;
    std::string concept_name;
    ScoreMode mode = ScoreMode::Polarity;
    double score = 0.0;
    std::size_t matched_positive = 0;  // token occurrences, repeats counted
    std::size_t matched_negative = 0;
    std::size_t matched_total = 0;
    bool no_match = false;  // score pinned to 0 when nothing matched
};

struct ScoreOptions {
    // Polarity only: divide P - N by the document token count instead of
    // P + N, as a length-adjusted variant.
    bool per_token_denominator = false;
};

DocumentScore score_document(const TokenizedDoc& doc, const Lexicon& lexicon,
                             ScoreMode mode, const ScoreOptions& options = {});

// Scores every document, output index i belonging to docs[i]. The work is
// split across threads (0 = auto) without changing the results.
std::vector<DocumentScore> score_corpus(const std::vector<TokenizedDoc>& docs,
                                        const Lexicon& lexicon, ScoreMode mode,
                                        const ScoreOptions& options = {},
                                        std::size_t threads = 1);

struct MatchAttribution {
    std::string word;
    double valence = 0.0;
    std::size_t occurrences = 0;
    double contribution = 0.0;  // occurrences x valence, or x pole sign
};

// The matched words behind a document's score, strongest first. The
// contributions of the full (untruncated) list sum to the score numerator.
std::vector<MatchAttribution> attribute_matches(const TokenizedDoc& doc,
                                                const Lexicon& lexicon,
                                                ScoreMode mode,
                                                std::size_t top_k);

struct FramePrediction {
    std::string doc_id;
    // One (frame, matched occurrences) pair per frame, in the order the
    // frames were scored.
    std::vector<std::pair<std::string, std::size_t>> frame_matches;
    std::string predicted;  // winning frame, or "Non-moral" on zero matches
    bool tie = false;       // a tied top count was broken by frame order
};

inline constexpr const char* kNonMoralLabel = "Non-moral";

// Stable ordering used to break ties: the five standard frames first (Care,
// Fairness, Loyalty, Authority, Sanctity), then anything else as given.
std::vector<std::size_t> canonical_frame_order(
    const std::vector<std::string>& names);

// Picks the frame whose lexicon matches the most token occurrences, both
// poles counted positively. No matches at all predicts Non-moral.
FramePrediction predict_frame(const TokenizedDoc& doc,
                              const std::vector<Lexicon>& frames);

std::vector<FramePrediction> predict_frames(
    const std::vector<TokenizedDoc>& docs, const std::vector<Lexicon>& frames,
    std::size_t threads = 1);

}  // namespace lexkit
