#include "lexkit/scorer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "lexkit/parallel.hpp"

namespace lexkit {

namespace {

bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c >= 0x80;
}

bool digits_only(const std::string& token) {
    for (unsigned char c : token) {
        if (c < '0' || c > '9') return false;
    }
    return !token.empty();
}

}  // namespace

TokenizedDoc tokenize(std::string_view doc_id, std::string_view text) {
    TokenizedDoc doc;
    doc.doc_id = std::string(doc_id);
    std::string current;
    auto flush = [&] {
        if (!current.empty() && !digits_only(current)) {
            doc.tokens.push_back(current);
        }
        current.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (is_word_byte(c)) {
            current += static_cast<char>(std::tolower(c));
        } else if ((c == '\'' || c == '-') && !current.empty() &&
                   i + 1 < text.size() &&
                   is_word_byte(static_cast<unsigned char>(text[i + 1]))) {
            // Keep apostrophes and hyphens with letters on both sides.
            current += static_cast<char>(c);
        } else {
            flush();
        }
    }
    flush();
    return doc;
}

ScoreMode parse_score_mode(std::string_view name) {
    if (name == "polarity") return ScoreMode::Polarity;
    if (name == "valence") return ScoreMode::Valence;
    throw std::invalid_argument("unknown score mode: " + std::string(name) +
                                " (expected polarity or valence)");
}

std::string_view score_mode_name(ScoreMode mode) {
    return mode == ScoreMode::Polarity ? "polarity" : "valence";
}

namespace {

using ValenceIndex = std::unordered_map<std::string, double>;

ValenceIndex make_index(const Lexicon& lexicon) {
    ValenceIndex index;
    index.reserve(lexicon.entries.size());
    for (const auto& e : lexicon.entries) index.emplace(e.word, e.valence);
    return index;
}

DocumentScore score_with_index(const TokenizedDoc& doc, const Lexicon& lexicon,
                               const ValenceIndex& index, ScoreMode mode,
                               const ScoreOptions& options) {
    DocumentScore s;
    s.doc_id = doc.doc_id;
    s.concept_name = lexicon.concept_name;
    s.mode = mode;
    double valence_sum = 0.0;
    for (const auto& token : doc.tokens) {
        auto it = index.find(token);
        if (it == index.end()) continue;
        if (it->second > 0.0) ++s.matched_positive;
        else ++s.matched_negative;
        valence_sum += it->second;
    }
    s.matched_total = s.matched_positive + s.matched_negative;
    if (s.matched_total == 0) {
        s.no_match = true;
        s.score = 0.0;
        return s;
    }
    if (mode == ScoreMode::Polarity) {
        double num = static_cast<double>(s.matched_positive) -
                     static_cast<double>(s.matched_negative);
        double den = options.per_token_denominator
                         ? static_cast<double>(doc.tokens.size())
                         : static_cast<double>(s.matched_total);
        s.score = num / den;
    } else {
        s.score = valence_sum / static_cast<double>(s.matched_total);
    }
    return s;
}

}  // namespace

DocumentScore score_document(const TokenizedDoc& doc, const Lexicon& lexicon,
                             ScoreMode mode, const ScoreOptions& options) {
    return score_with_index(doc, lexicon, make_index(lexicon), mode, options);
}

std::vector<DocumentScore> score_corpus(const std::vector<TokenizedDoc>& docs,
                                        const Lexicon& lexicon, ScoreMode mode,
                                        const ScoreOptions& options,
                                        std::size_t threads) {
    ValenceIndex index = make_index(lexicon);
    std::vector<DocumentScore> out(docs.size());
    parallel_for(docs.size(), threads, [&](std::size_t i) {
        out[i] = score_with_index(docs[i], lexicon, index, mode, options);
    });
    return out;
}

std::vector<MatchAttribution> attribute_matches(const TokenizedDoc& doc,
                                                const Lexicon& lexicon,
                                                ScoreMode mode,
                                                std::size_t top_k) {
    ValenceIndex index = make_index(lexicon);
    std::unordered_map<std::string, std::size_t> counts;
    for (const auto& token : doc.tokens) {
        if (index.count(token)) ++counts[token];
    }
    std::vector<MatchAttribution> out;
    out.reserve(counts.size());
    for (const auto& [word, occurrences] : counts) {
        double valence = index.at(word);
        double weight =
            mode == ScoreMode::Polarity ? (valence > 0.0 ? 1.0 : -1.0) : valence;
        out.push_back(MatchAttribution{
            word, valence, occurrences,
            static_cast<double>(occurrences) * weight});
    }
    std::sort(out.begin(), out.end(),
              [](const MatchAttribution& a, const MatchAttribution& b) {
                  double ma = std::fabs(a.contribution);
                  double mb = std::fabs(b.contribution);
                  if (ma != mb) return ma > mb;
                  return a.word < b.word;
              });
    if (top_k > 0 && out.size() > top_k) out.resize(top_k);
    return out;
}

std::vector<std::size_t> canonical_frame_order(
    const std::vector<std::string>& names) {
    auto rank = [](const std::string& name) -> std::size_t {
        if (name == "Care") return 0;
        if (name == "Fairness") return 1;
        if (name == "Loyalty") return 2;
        if (name == "Authority") return 3;
        if (name == "Sanctity") return 4;
        return 5;
    };
    std::vector<std::size_t> order(names.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return rank(names[a]) < rank(names[b]);
                     });
    return order;
}

namespace {

FramePrediction predict_with_indexes(
    const TokenizedDoc& doc, const std::vector<Lexicon>& frames,
    const std::vector<std::size_t>& order,
    const std::vector<ValenceIndex>& indexes) {
    FramePrediction pred;
    pred.doc_id = doc.doc_id;
    std::size_t best = 0;
    std::size_t best_pos = 0;
    bool tie = false;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const std::size_t f = order[pos];
        std::size_t matched = 0;
        for (const auto& token : doc.tokens) {
            if (indexes[f].count(token)) ++matched;
        }
        pred.frame_matches.emplace_back(frames[f].concept_name, matched);
        if (matched > best) {
            best = matched;
            best_pos = pos;
            tie = false;
        } else if (matched == best && best > 0) {
            tie = true;
        }
    }
    if (best == 0) {
        pred.predicted = kNonMoralLabel;
    } else {
        pred.predicted = pred.frame_matches[best_pos].first;
        pred.tie = tie;
    }
    return pred;
}

}  // namespace

FramePrediction predict_frame(const TokenizedDoc& doc,
                              const std::vector<Lexicon>& frames) {
    if (frames.empty()) {
        throw std::invalid_argument("no frame lexicons to score against");
    }
    std::vector<std::string> names;
    std::vector<ValenceIndex> indexes;
    for (const auto& f : frames) {
        names.push_back(f.concept_name);
        indexes.push_back(make_index(f));
    }
    return predict_with_indexes(doc, frames, canonical_frame_order(names),
                                indexes);
}

std::vector<FramePrediction> predict_frames(
    const std::vector<TokenizedDoc>& docs, const std::vector<Lexicon>& frames,
    std::size_t threads) {
    if (frames.empty()) {
        throw std::invalid_argument("no frame lexicons to score against");
    }
    std::vector<std::string> names;
    std::vector<ValenceIndex> indexes;
    for (const auto& f : frames) {
        names.push_back(f.concept_name);
        indexes.push_back(make_index(f));
    }
    auto order = canonical_frame_order(names);
    std::vector<FramePrediction> out(docs.size());
    parallel_for(docs.size(), threads, [&](std::size_t i) {
        out[i] = predict_with_indexes(docs[i], frames, order, indexes);
    });
    return out;
}

}  // namespace lexkit
