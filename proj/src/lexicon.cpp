#include "lexkit/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "lexkit/csv.hpp"
#include "lexkit/digest.hpp"

namespace lexkit {

void SeedSet::validate() const {
    if (positive_seeds.empty() || negative_seeds.empty()) {
        throw std::invalid_argument("seed set \"" + concept_name +
                                    "\" needs at least one seed per pole");
    }
    std::unordered_set<std::string> seen;
    for (const auto& w : positive_seeds) {
        if (!seen.insert(w).second) {
            throw std::invalid_argument("repeated seed word \"" + w + "\" in \"" +
                                        concept_name + "\"");
        }
    }
    for (const auto& w : negative_seeds) {
        if (!seen.insert(w).second) {
            throw std::invalid_argument(
                "seed word \"" + w + "\" appears on both poles of \"" + concept_name +
                "\" (or twice on one)");
        }
    }
}

namespace {

struct ResolvedSeeds {
    std::vector<const WordVector*> positive;
    std::vector<const WordVector*> negative;
    std::vector<std::string> dropped;
};

ResolvedSeeds resolve_seeds(const SeedSet& seeds, const EmbeddingTable& table) {
    ResolvedSeeds r;
    for (const auto& w : seeds.positive_seeds) {
        if (const WordVector* v = table.find(w)) r.positive.push_back(v);
        else r.dropped.push_back(w);
    }
    for (const auto& w : seeds.negative_seeds) {
        if (const WordVector* v = table.find(w)) r.negative.push_back(v);
        else r.dropped.push_back(w);
    }
    if (r.positive.empty() || r.negative.empty()) {
        throw std::runtime_error("no seed for a pole of \"" + seeds.concept_name +
                                 "\" is present in the embedding table");
    }
    return r;
}

// With unit vectors the summed cosines collapse to one dot product against
// the summed (or averaged) pole difference.
std::vector<double> pole_difference(const ResolvedSeeds& r, std::size_t dim,
                                    bool use_means) {
    std::vector<double> pooled(dim, 0.0);
    double pos_w = use_means ? 1.0 / static_cast<double>(r.positive.size()) : 1.0;
    double neg_w = use_means ? 1.0 / static_cast<double>(r.negative.size()) : 1.0;
    for (const WordVector* v : r.positive) {
        for (std::size_t i = 0; i < dim; ++i) pooled[i] += pos_w * v->vector[i];
    }
    for (const WordVector* v : r.negative) {
        for (std::size_t i = 0; i < dim; ++i) pooled[i] -= neg_w * v->vector[i];
    }
    return pooled;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string seed_set_digest(const SeedSet& seeds) {
    Fnv1a64 h;
    h.update(seeds.concept_name);
    h.update("\x1f");
    h.update(seeds.positive_label);
    h.update("\x1f");
    h.update(seeds.negative_label);
    for (const auto& w : seeds.positive_seeds) {
        h.update("\x1e+");
        h.update(w);
    }
    for (const auto& w : seeds.negative_seeds) {
        h.update("\x1e-");
        h.update(w);
    }
    return h.hex();
}

std::string candidate_digest(const std::vector<std::string>& candidates) {
    Fnv1a64 h;
    for (const auto& w : candidates) {
        h.update(w);
        h.update("\n");
    }
    return h.hex();
}

}  // namespace

double net_polarity(std::string_view word, const SeedSet& seeds,
                    const EmbeddingTable& table,
                    const ExpansionOptions& options) {
    seeds.validate();
    const WordVector* v = table.find(word);
    if (!v) {
        throw std::runtime_error("word \"" + std::string(word) +
                                 "\" is not in the embedding table");
    }
    ResolvedSeeds r = resolve_seeds(seeds, table);
    auto pooled = pole_difference(r, table.dimension(), options.use_pole_means);
    return dot(v->vector, pooled);
}

std::vector<RawPolarityScore> score_candidates(
    const SeedSet& seeds, const std::vector<std::string>& candidates,
    const EmbeddingTable& table, const ExpansionOptions& options) {
    seeds.validate();
    ResolvedSeeds r = resolve_seeds(seeds, table);
    auto pooled = pole_difference(r, table.dimension(), options.use_pole_means);

    std::unordered_set<std::string> seed_words(seeds.positive_seeds.begin(),
                                               seeds.positive_seeds.end());
    seed_words.insert(seeds.negative_seeds.begin(), seeds.negative_seeds.end());

    std::vector<RawPolarityScore> out;
    out.reserve(candidates.size());
    std::unordered_set<std::string> seen;
    for (const auto& w : candidates) {
        if (seed_words.count(w)) continue;
        const WordVector* v = table.find(w);
        if (!v) continue;
        if (!seen.insert(w).second) continue;
        out.push_back(RawPolarityScore{w, dot(v->vector, pooled)});
    }
    return out;
}

std::vector<double> normalize_valences(const std::vector<double>& raw) {
    double max_pos = 0.0;
    double min_neg = 0.0;
    for (double s : raw) {
        if (s > max_pos) max_pos = s;
        if (s < min_neg) min_neg = s;
    }
    if (max_pos == 0.0 && min_neg == 0.0) {
        throw std::invalid_argument("cannot normalize an all-zero score list");
    }
    std::vector<double> out;
    out.reserve(raw.size());
    for (double s : raw) {
        if (s > 0.0) out.push_back(s / max_pos);
        else if (s < 0.0) out.push_back(-(s / min_neg));
        else out.push_back(0.0);
    }
    return out;
}

Lexicon build_lexicon(const SeedSet& seeds,
                      const std::vector<std::string>& candidates,
                      const EmbeddingTable& table, std::size_t positive_size,
                      std::size_t negative_size,
                      const ExpansionOptions& options) {
    seeds.validate();
    ResolvedSeeds resolved = resolve_seeds(seeds, table);
    auto scored = score_candidates(seeds, candidates, table, options);

    std::vector<RawPolarityScore> positives;
    std::vector<RawPolarityScore> negatives;
    for (const auto& s : scored) {
        if (s.score > 0.0) positives.push_back(s);
        else if (s.score < 0.0) negatives.push_back(s);
    }
    // Most extreme first on both sides; exact score ties fall back to the word.
    std::sort(positives.begin(), positives.end(), [](const auto& a, const auto& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.word < b.word;
    });
    std::sort(negatives.begin(), negatives.end(), [](const auto& a, const auto& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.word < b.word;
    });

    Lexicon lex;
    lex.concept_name = seeds.concept_name;
    lex.positive_label = seeds.positive_label;
    lex.negative_label = seeds.negative_label;
    lex.truncated_positive = positives.size() < positive_size;
    lex.truncated_negative = negatives.size() < negative_size;
    if (positives.size() > positive_size) positives.resize(positive_size);
    if (negatives.size() > negative_size) negatives.resize(negative_size);

    // The extreme of each selected side scales that side, so the top expanded
    // word lands exactly on +1 (or -1) and seeds share that endpoint.
    for (const auto& s : positives) {
        lex.entries.push_back(
            LexiconEntry{s.word, s.score / positives.front().score, false,
                         seeds.positive_label});
    }
    for (const auto& s : negatives) {
        lex.entries.push_back(
            LexiconEntry{s.word, -(s.score / negatives.front().score), false,
                         seeds.negative_label});
    }
    for (const WordVector* v : resolved.positive) {
        lex.entries.push_back(
            LexiconEntry{v->word, 1.0, true, seeds.positive_label});
    }
    for (const WordVector* v : resolved.negative) {
        lex.entries.push_back(
            LexiconEntry{v->word, -1.0, true, seeds.negative_label});
    }
    std::sort(lex.entries.begin(), lex.entries.end(),
              [](const LexiconEntry& a, const LexiconEntry& b) {
                  if (a.valence != b.valence) return a.valence > b.valence;
                  return a.word < b.word;
              });

    lex.provenance.embedding_source = table.source_id();
    lex.provenance.filter_digest = candidate_digest(candidates);
    lex.provenance.seed_digest = seed_set_digest(seeds);
    lex.provenance.positive_size = positive_size;
    lex.provenance.negative_size = negative_size;
    lex.provenance.dropped_seeds = resolved.dropped;
    return lex;
}

std::string lexicon_to_csv(const Lexicon& lexicon) {
    std::string out = "word,valence,seed,sentiment\n";
    for (const auto& e : lexicon.entries) {
        out += csv::format_row({e.word, csv::format_double(e.valence),
                                e.seed ? "1" : "0", e.pole});
    }
    return out;
}

void export_lexicon_csv(const Lexicon& lexicon,
                        const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write lexicon CSV: " + path.string());
    }
    out << lexicon_to_csv(lexicon);
    if (!out) {
        throw std::runtime_error("write failed for lexicon CSV: " + path.string());
    }
}

Lexicon lexicon_from_csv(std::string_view text, std::string concept_name,
                         std::string source_name) {
    auto rows = csv::parse(text);
    if (rows.empty()) {
        throw std::runtime_error("lexicon CSV is empty");
    }
    const std::vector<std::string> expected = {"word", "valence", "seed",
                                               "sentiment"};
    if (rows[0].fields != expected) {
        throw std::runtime_error(
            "lexicon CSV line 1: header must be word,valence,seed,sentiment");
    }

    Lexicon lex;
    lex.concept_name = std::move(concept_name);
    std::unordered_set<std::string> seen;
    std::string pos_label;
    std::string neg_label;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        auto fail = [&](const std::string& what) {
            throw std::runtime_error("lexicon CSV line " +
                                     std::to_string(row.line) + ": " + what);
        };
        if (row.fields.size() != 4) fail("expected 4 fields");
        const std::string& word = row.fields[0];
        if (word.empty()) fail("empty word");
        double valence;
        const std::string& vs = row.fields[1];
        auto res = std::from_chars(vs.data(), vs.data() + vs.size(), valence);
        if (res.ec != std::errc() || res.ptr != vs.data() + vs.size()) {
            fail("unparsable valence \"" + vs + "\"");
        }
        if (!(valence >= -1.0 && valence <= 1.0)) {
            fail("valence " + vs + " outside [-1, 1]");
        }
        if (valence == 0.0) fail("zero valence is not allowed");
        bool seed;
        if (row.fields[2] == "1") seed = true;
        else if (row.fields[2] == "0") seed = false;
        else fail("seed flag must be 0 or 1, got \"" + row.fields[2] + "\"");
        const std::string& pole = row.fields[3];
        if (pole.empty()) fail("empty pole label");
        if (!seen.insert(word).second) fail("word \"" + word + "\" repeats");

        std::string& label = valence > 0.0 ? pos_label : neg_label;
        if (label.empty()) label = pole;
        else if (label != pole) {
            fail("pole label \"" + pole + "\" conflicts with \"" + label +
                 "\" for the same valence sign");
        }
        lex.entries.push_back(LexiconEntry{word, valence, seed, pole});
    }
    if (lex.entries.empty()) {
        throw std::runtime_error("lexicon CSV has a header but no entries");
    }
    lex.positive_label = pos_label;
    lex.negative_label = neg_label;
    std::sort(lex.entries.begin(), lex.entries.end(),
              [](const LexiconEntry& a, const LexiconEntry& b) {
                  if (a.valence != b.valence) return a.valence > b.valence;
                  return a.word < b.word;
              });

    std::size_t pos_expanded = 0;
    std::size_t neg_expanded = 0;
    for (const auto& e : lex.entries) {
        if (e.seed) continue;
        if (e.valence > 0.0) ++pos_expanded;
        else ++neg_expanded;
    }
    lex.provenance.embedding_source = std::move(source_name);
    lex.provenance.filter_digest = "";
    lex.provenance.seed_digest = "";
    lex.provenance.positive_size = pos_expanded;
    lex.provenance.negative_size = neg_expanded;
    return lex;
}

Lexicon import_lexicon_csv(const std::filesystem::path& path,
                           std::string concept_name) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open lexicon CSV: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (concept_name.empty()) concept_name = path.stem().string();
    std::string source = path.filename().string() + ":" + digest_string(buf.str());
    return lexicon_from_csv(buf.str(), std::move(concept_name), std::move(source));
}

namespace {

// Rejection sampling on top of the standard-specified mt19937_64 stream, so
// the same seed picks the same words on every platform and compiler.
std::uint64_t bounded_uniform(std::mt19937_64& gen, std::uint64_t n) {
    std::uint64_t threshold = (-n) % n;  // 2^64 mod n
    std::uint64_t r;
    do {
        r = gen();
    } while (r < threshold);
    return r % n;
}

std::vector<std::string> sample_pole(std::vector<std::string> pool,
                                     std::size_t k, std::mt19937_64& gen) {
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(
                                bounded_uniform(gen, pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace

SeedSet sample_seeds(const SeedSet& full, std::size_t k,
                     std::uint64_t rng_seed) {
    full.validate();
    if (k == 0) {
        throw std::invalid_argument("cannot sample 0 seeds per pole");
    }
    if (k > full.positive_seeds.size() || k > full.negative_seeds.size()) {
        throw std::invalid_argument(
            "cannot sample " + std::to_string(k) + " seeds per pole from " +
            std::to_string(full.positive_seeds.size()) + "/" +
            std::to_string(full.negative_seeds.size()) + " available");
    }
    std::mt19937_64 gen(rng_seed);
    SeedSet out;
    out.concept_name = full.concept_name;
    out.positive_label = full.positive_label;
    out.negative_label = full.negative_label;
    out.positive_seeds = sample_pole(full.positive_seeds, k, gen);
    out.negative_seeds = sample_pole(full.negative_seeds, k, gen);
    return out;
}

OverlapReport compare_lexicons(const Lexicon& a, const Lexicon& b,
                               bool include_seeds) {
    auto considered = [&](const LexiconEntry& e) {
        return include_seeds || !e.seed;
    };

    std::unordered_map<std::string, double> b_valence;
    for (const auto& e : b.entries) {
        if (considered(e)) b_valence.emplace(e.word, e.valence);
    }

    OverlapReport rep;
    rep.b_words = b_valence.size();
    std::vector<ResidualOutlier> shared;  // residual filled after the fit
    for (const auto& e : a.entries) {
        if (!considered(e)) continue;
        ++rep.a_words;
        auto it = b_valence.find(e.word);
        if (it == b_valence.end()) continue;
        shared.push_back(ResidualOutlier{e.word, e.valence, it->second, 0.0});
    }
    rep.shared = shared.size();
    rep.overlap_fraction =
        rep.a_words == 0
            ? 0.0
            : static_cast<double>(rep.shared) / static_cast<double>(rep.a_words);

    if (shared.empty()) return rep;

    std::size_t same_sign = 0;
    for (const auto& s : shared) {
        if ((s.a_valence > 0.0) == (s.b_valence > 0.0)) ++same_sign;
    }
    rep.direction_agreement =
        static_cast<double>(same_sign) / static_cast<double>(shared.size());

    if (shared.size() < 3) return rep;

    // OLS of a's valence on b's, closed form.
    double n = static_cast<double>(shared.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& s : shared) {
        sx += s.b_valence;
        sy += s.a_valence;
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& s : shared) {
        sxx += (s.b_valence - mx) * (s.b_valence - mx);
        sxy += (s.b_valence - mx) * (s.a_valence - my);
    }
    if (sxx <= 0.0) return rep;  // b's valences are constant, no line to fit
    rep.has_regression = true;
    rep.slope = sxy / sxx;
    rep.intercept = my - rep.slope * mx;
    for (auto& s : shared) {
        s.residual = s.a_valence - (rep.intercept + rep.slope * s.b_valence);
    }
    std::sort(shared.begin(), shared.end(),
              [](const ResidualOutlier& x, const ResidualOutlier& y) {
                  double ax = std::fabs(x.residual), ay = std::fabs(y.residual);
                  if (ax != ay) return ax > ay;
                  return x.word < y.word;
              });
    for (const auto& s : shared) {
        if (std::fabs(s.residual) > 0.5) rep.outliers_over_05.push_back(s);
        if (std::fabs(s.residual) > 0.6) rep.outliers_over_06.push_back(s);
    }
    return rep;
}

}  // namespace lexkit
