#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "lexkit/embedding.hpp"
#include "lexkit/evaluator.hpp"
#include "lexkit/lexicon.hpp"
#include "lexkit/scorer.hpp"

namespace py = pybind11;
using namespace lexkit;

namespace {

ScoreMode mode_arg(const std::string& name) { return parse_score_mode(name); }

VocabFilterConfig filter_arg(std::size_t drop_top_ranks,
                             std::size_t min_word_length, bool alpha_only,
                             std::optional<std::filesystem::path> allowlist,
                             std::optional<std::filesystem::path> blocklist) {
    VocabFilterConfig config;
    config.drop_top_ranks = drop_top_ranks;
    config.min_word_length = min_word_length;
    config.alpha_only = alpha_only;
    config.allowlist_path = std::move(allowlist);
    config.blocklist_path = std::move(blocklist);
    return config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Seed-expanded lexicon induction and document scoring";

    py::class_<EmbeddingTable>(m, "EmbeddingTable")
        .def_static(
            "load",
            [](const std::filesystem::path& path, const std::string& format) {
                return EmbeddingTable::load(path,
                                            parse_embedding_format(format));
            },
            py::arg("path"), py::arg("format") = "glove")
        .def_static("from_rows", &EmbeddingTable::from_rows, py::arg("rows"))
        .def_property_readonly("dimension", &EmbeddingTable::dimension)
        .def_property_readonly("source_id", &EmbeddingTable::source_id)
        .def("__len__", &EmbeddingTable::size)
        .def("__contains__",
             [](const EmbeddingTable& t, const std::string& w) {
                 return t.contains(w);
             })
        .def(
            "vector",
            [](const EmbeddingTable& t, const std::string& w) {
                const WordVector* v = t.find(w);
                if (v == nullptr) {
                    throw py::key_error("word not in table: " + w);
                }
                return v->vector;
            },
            py::arg("word"), "Unit-normalized vector for a word.")
        .def("words", [](const EmbeddingTable& t) {
            std::vector<std::string> out;
            out.reserve(t.size());
            for (const auto& e : t.entries()) out.push_back(e.word);
            return out;
        });

    m.def(
        "filter_vocabulary",
        [](const EmbeddingTable& table, std::size_t drop_top_ranks,
           std::size_t min_word_length, bool alpha_only,
           std::optional<std::filesystem::path> allowlist,
           std::optional<std::filesystem::path> blocklist) {
            return filter_vocabulary(
                table, filter_arg(drop_top_ranks, min_word_length, alpha_only,
                                  std::move(allowlist), std::move(blocklist)));
        },
        py::arg("table"), py::arg("drop_top_ranks") = 50,
        py::arg("min_word_length") = 2, py::arg("alpha_only") = true,
        py::arg("allowlist") = py::none(), py::arg("blocklist") = py::none());

    m.def("estimate_frequency", &estimate_frequency, py::arg("rank"),
          py::arg("corpus_size") = 1e6, py::arg("a") = 1.0);

    py::class_<SeedSet>(m, "SeedSet")
        .def(py::init([](std::string concept_name, std::string positive_label,
                         std::string negative_label,
                         std::vector<std::string> positive_seeds,
                         std::vector<std::string> negative_seeds) {
                 SeedSet s;
                 s.concept_name = std::move(concept_name);
                 s.positive_label = std::move(positive_label);
                 s.negative_label = std::move(negative_label);
                 s.positive_seeds = std::move(positive_seeds);
                 s.negative_seeds = std::move(negative_seeds);
                 return s;
             }),
             py::arg("concept"), py::arg("positive_label"),
             py::arg("negative_label"), py::arg("positive_seeds"),
             py::arg("negative_seeds"))
        .def_readonly("concept", &SeedSet::concept_name)
        .def_readonly("positive_label", &SeedSet::positive_label)
        .def_readonly("negative_label", &SeedSet::negative_label)
        .def_readonly("positive_seeds", &SeedSet::positive_seeds)
        .def_readonly("negative_seeds", &SeedSet::negative_seeds)
        .def("validate", &SeedSet::validate);

    m.def("sample_seeds", &sample_seeds, py::arg("full"), py::arg("k"),
          py::arg("rng_seed"));

    py::class_<LexiconEntry>(m, "LexiconEntry")
        .def_readonly("word", &LexiconEntry::word)
        .def_readonly("valence", &LexiconEntry::valence)
        .def_readonly("seed", &LexiconEntry::seed)
        .def_readonly("pole", &LexiconEntry::pole)
        .def("__repr__", [](const LexiconEntry& e) {
            return "LexiconEntry(" + e.word + ", " + std::to_string(e.valence) +
                   (e.seed ? ", seed)" : ")");
        });

    py::class_<LexiconProvenance>(m, "LexiconProvenance")
        .def_readonly("embedding_source", &LexiconProvenance::embedding_source)
        .def_readonly("filter_digest", &LexiconProvenance::filter_digest)
        .def_readonly("seed_digest", &LexiconProvenance::seed_digest)
        .def_readonly("positive_size", &LexiconProvenance::positive_size)
        .def_readonly("negative_size", &LexiconProvenance::negative_size)
        .def_readonly("dropped_seeds", &LexiconProvenance::dropped_seeds);

    py::class_<Lexicon>(m, "Lexicon")
        .def_readonly("concept", &Lexicon::concept_name)
        .def_readonly("positive_label", &Lexicon::positive_label)
        .def_readonly("negative_label", &Lexicon::negative_label)
        .def_readonly("entries", &Lexicon::entries)
        .def_readonly("provenance", &Lexicon::provenance)
        .def_readonly("truncated_positive", &Lexicon::truncated_positive)
        .def_readonly("truncated_negative", &Lexicon::truncated_negative)
        .def("__len__", [](const Lexicon& l) { return l.entries.size(); })
        .def("to_csv", &lexicon_to_csv)
        .def("save", &export_lexicon_csv, py::arg("path"))
        .def_static("load", &import_lexicon_csv, py::arg("path"),
                    py::arg("concept") = "")
        .def_static("from_csv", &lexicon_from_csv, py::arg("text"),
                    py::arg("concept") = "", py::arg("source_name") = "");

    m.def(
        "build_lexicon",
        [](const SeedSet& seeds, const std::vector<std::string>& candidates,
           const EmbeddingTable& table, std::size_t positive_size,
           std::size_t negative_size, bool pole_means) {
            ExpansionOptions options;
            options.use_pole_means = pole_means;
            return build_lexicon(seeds, candidates, table, positive_size,
                                 negative_size, options);
        },
        py::arg("seeds"), py::arg("candidates"), py::arg("table"),
        py::arg("positive_size"), py::arg("negative_size"),
        py::arg("pole_means") = false);

    m.def(
        "score_candidates",
        [](const SeedSet& seeds, const std::vector<std::string>& candidates,
           const EmbeddingTable& table, bool pole_means) {
            ExpansionOptions options;
            options.use_pole_means = pole_means;
            auto scored = score_candidates(seeds, candidates, table, options);
            std::vector<std::pair<std::string, double>> out;
            out.reserve(scored.size());
            for (auto& s : scored) out.emplace_back(std::move(s.word), s.score);
            return out;
        },
        py::arg("seeds"), py::arg("candidates"), py::arg("table"),
        py::arg("pole_means") = false,
        "Net polarity of every candidate, as (word, raw score) pairs.");

    py::class_<ResidualOutlier>(m, "ResidualOutlier")
        .def_readonly("word", &ResidualOutlier::word)
        .def_readonly("a_valence", &ResidualOutlier::a_valence)
        .def_readonly("b_valence", &ResidualOutlier::b_valence)
        .def_readonly("residual", &ResidualOutlier::residual);

    py::class_<OverlapReport>(m, "OverlapReport")
        .def_readonly("a_words", &OverlapReport::a_words)
        .def_readonly("b_words", &OverlapReport::b_words)
        .def_readonly("shared", &OverlapReport::shared)
        .def_readonly("overlap_fraction", &OverlapReport::overlap_fraction)
        .def_readonly("direction_agreement", &OverlapReport::direction_agreement)
        .def_readonly("has_regression", &OverlapReport::has_regression)
        .def_readonly("slope", &OverlapReport::slope)
        .def_readonly("intercept", &OverlapReport::intercept)
        .def_readonly("outliers_over_05", &OverlapReport::outliers_over_05)
        .def_readonly("outliers_over_06", &OverlapReport::outliers_over_06);

    m.def("compare_lexicons", &compare_lexicons, py::arg("a"), py::arg("b"),
          py::arg("include_seeds") = false);

    py::class_<TokenizedDoc>(m, "TokenizedDoc")
        .def(py::init([](std::string doc_id, std::vector<std::string> tokens) {
                 return TokenizedDoc{std::move(doc_id), std::move(tokens)};
             }),
             py::arg("doc_id"), py::arg("tokens"))
        .def_readonly("doc_id", &TokenizedDoc::doc_id)
        .def_readonly("tokens", &TokenizedDoc::tokens)
        .def("__len__", [](const TokenizedDoc& d) { return d.tokens.size(); });

    m.def("tokenize", &tokenize, py::arg("doc_id"), py::arg("text"));

    py::class_<DocumentScore>(m, "DocumentScore")
        .def_readonly("doc_id", &DocumentScore::doc_id)
        .def_readonly("concept", &DocumentScore::concept_name)
        .def_property_readonly(
            "mode",
            [](const DocumentScore& s) {
                return std::string(score_mode_name(s.mode));
            })
        .def_readonly("score", &DocumentScore::score)
        .def_readonly("matched_positive", &DocumentScore::matched_positive)
        .def_readonly("matched_negative", &DocumentScore::matched_negative)
        .def_readonly("matched_total", &DocumentScore::matched_total)
        .def_readonly("no_match", &DocumentScore::no_match);

    m.def(
        "score_document",
        [](const TokenizedDoc& doc, const Lexicon& lexicon,
           const std::string& mode, bool per_token_denominator) {
            ScoreOptions options;
            options.per_token_denominator = per_token_denominator;
            return score_document(doc, lexicon, mode_arg(mode), options);
        },
        py::arg("doc"), py::arg("lexicon"), py::arg("mode") = "polarity",
        py::arg("per_token_denominator") = false);

    m.def(
        "score_corpus",
        [](const std::vector<TokenizedDoc>& docs, const Lexicon& lexicon,
           const std::string& mode, bool per_token_denominator,
           std::size_t threads) {
            ScoreOptions options;
            options.per_token_denominator = per_token_denominator;
            return score_corpus(docs, lexicon, mode_arg(mode), options,
                                threads);
        },
        py::arg("docs"), py::arg("lexicon"), py::arg("mode") = "polarity",
        py::arg("per_token_denominator") = false, py::arg("threads") = 1);

    py::class_<MatchAttribution>(m, "MatchAttribution")
        .def_readonly("word", &MatchAttribution::word)
        .def_readonly("valence", &MatchAttribution::valence)
        .def_readonly("occurrences", &MatchAttribution::occurrences)
        .def_readonly("contribution", &MatchAttribution::contribution);

    m.def(
        "attribute_matches",
        [](const TokenizedDoc& doc, const Lexicon& lexicon,
           const std::string& mode, std::size_t top_k) {
            return attribute_matches(doc, lexicon, mode_arg(mode), top_k);
        },
        py::arg("doc"), py::arg("lexicon"), py::arg("mode") = "polarity",
        py::arg("top_k") = 10);

    py::class_<FramePrediction>(m, "FramePrediction")
        .def_readonly("doc_id", &FramePrediction::doc_id)
        .def_readonly("frame_matches", &FramePrediction::frame_matches)
        .def_readonly("predicted", &FramePrediction::predicted)
        .def_readonly("tie", &FramePrediction::tie);

    m.attr("NON_MORAL_LABEL") = kNonMoralLabel;
    m.def("predict_frame", &predict_frame, py::arg("doc"), py::arg("frames"));
    m.def("predict_frames", &predict_frames, py::arg("docs"), py::arg("frames"),
          py::arg("threads") = 1);

    py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
        .def_readonly("labels", &ConfusionMatrix::labels)
        .def_readonly("counts", &ConfusionMatrix::counts)
        .def_readonly("total", &ConfusionMatrix::total)
        .def("at", &ConfusionMatrix::at, py::arg("truth"), py::arg("predicted"));

    m.def("confusion", &confusion, py::arg("truth"), py::arg("predicted"));

    py::class_<ClassMetrics>(m, "ClassMetrics")
        .def_readonly("label", &ClassMetrics::label)
        .def_readonly("precision", &ClassMetrics::precision)
        .def_readonly("recall", &ClassMetrics::recall)
        .def_readonly("f1", &ClassMetrics::f1)
        .def_readonly("support", &ClassMetrics::support);

    py::class_<ClassificationReport>(m, "ClassificationReport")
        .def_readonly("accuracy", &ClassificationReport::accuracy)
        .def_readonly("per_class", &ClassificationReport::per_class)
        .def_readonly("macro_f1", &ClassificationReport::macro_f1);

    m.def("classification_metrics", &classification_metrics, py::arg("matrix"));

    py::class_<RegressionReport>(m, "RegressionReport")
        .def_readonly("slope", &RegressionReport::slope)
        .def_readonly("intercept", &RegressionReport::intercept)
        .def_readonly("r_squared", &RegressionReport::r_squared)
        .def_readonly("adj_r_squared", &RegressionReport::adj_r_squared)
        .def_readonly("rmse", &RegressionReport::rmse)
        .def_readonly("n_used", &RegressionReport::n_used);

    m.def("ols_fit", &ols_fit, py::arg("x"), py::arg("y"));

    py::class_<LogisticFit>(m, "LogisticFit")
        .def_readonly("classes", &LogisticFit::classes)
        .def_readonly("params", &LogisticFit::params)
        .def_readonly("accuracy", &LogisticFit::accuracy)
        .def_readonly("converged", &LogisticFit::converged)
        .def_readonly("iterations", &LogisticFit::iterations)
        .def_readonly("grad_max_norm", &LogisticFit::grad_max_norm)
        .def_readonly("nll", &LogisticFit::nll);

    m.def(
        "logistic_fit_accuracy",
        [](const std::vector<double>& x, const std::vector<std::string>& labels,
           double learning_rate, std::size_t max_iterations,
           double gradient_tolerance) {
            LogisticFitOptions options;
            options.learning_rate = learning_rate;
            options.max_iterations = max_iterations;
            options.gradient_tolerance = gradient_tolerance;
            return logistic_fit_accuracy(x, labels, options);
        },
        py::arg("x"), py::arg("labels"), py::arg("learning_rate") = 0.5,
        py::arg("max_iterations") = 100000,
        py::arg("gradient_tolerance") = 1e-8);

    py::class_<SeedSensitivityRun>(m, "SeedSensitivityRun")
        .def_readonly("rng_seed", &SeedSensitivityRun::rng_seed)
        .def_readonly("value", &SeedSensitivityRun::value)
        .def_readonly("ok", &SeedSensitivityRun::ok)
        .def_readonly("error", &SeedSensitivityRun::error);

    py::class_<SeedSensitivityEntry>(m, "SeedSensitivityEntry")
        .def_readonly("k", &SeedSensitivityEntry::k)
        .def_readonly("runs", &SeedSensitivityEntry::runs)
        .def_readonly("succeeded", &SeedSensitivityEntry::succeeded)
        .def_readonly("mean", &SeedSensitivityEntry::mean)
        .def_readonly("sd", &SeedSensitivityEntry::sd);

    py::class_<SeedSensitivityReport>(m, "SeedSensitivityReport")
        .def_readonly("master_seed", &SeedSensitivityReport::master_seed)
        .def_readonly("runs_per_k", &SeedSensitivityReport::runs_per_k)
        .def_readonly("per_k", &SeedSensitivityReport::per_k);

    m.def("seed_sensitivity", &seed_sensitivity, py::arg("full"), py::arg("ks"),
          py::arg("runs_per_k"), py::arg("build_fn"), py::arg("eval_fn"),
          py::arg("master_seed"));
}
