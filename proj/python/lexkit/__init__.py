"""Seed-expanded lexicon induction and document scoring toolkit."""

from lexkit._core import (
    NON_MORAL_LABEL,
    ClassificationReport,
    ClassMetrics,
    ConfusionMatrix,
    DocumentScore,
    EmbeddingTable,
    FramePrediction,
    Lexicon,
    LexiconEntry,
    LexiconProvenance,
    LogisticFit,
    MatchAttribution,
    OverlapReport,
    RegressionReport,
    ResidualOutlier,
    SeedSensitivityEntry,
    SeedSensitivityReport,
    SeedSensitivityRun,
    SeedSet,
    TokenizedDoc,
    attribute_matches,
    build_lexicon,
    classification_metrics,
    compare_lexicons,
    confusion,
    estimate_frequency,
    filter_vocabulary,
    logistic_fit_accuracy,
    ols_fit,
    predict_frame,
    predict_frames,
    sample_seeds,
    score_candidates,
    score_corpus,
    score_document,
    seed_sensitivity,
    tokenize,
)

__version__ = "0.1.0"


def score_text(text, lexicon, mode="polarity", doc_id="doc", **kwargs):
    """Tokenize a raw string and score it in one step."""
    return score_document(tokenize(doc_id, text), lexicon, mode=mode, **kwargs)


__all__ = [
    "NON_MORAL_LABEL",
    "ClassificationReport",
    "ClassMetrics",
    "ConfusionMatrix",
    "DocumentScore",
    "EmbeddingTable",
    "FramePrediction",
    "Lexicon",
    "LexiconEntry",
    "LexiconProvenance",
    "LogisticFit",
    "MatchAttribution",
    "OverlapReport",
    "RegressionReport",
    "ResidualOutlier",
    "SeedSensitivityEntry",
    "SeedSensitivityReport",
    "SeedSensitivityRun",
    "SeedSet",
    "TokenizedDoc",
    "attribute_matches",
    "build_lexicon",
    "classification_metrics",
    "compare_lexicons",
    "confusion",
    "estimate_frequency",
    "filter_vocabulary",
    "logistic_fit_accuracy",
    "ols_fit",
    "predict_frame",
    "predict_frames",
    "sample_seeds",
    "score_candidates",
    "score_corpus",
    "score_document",
    "score_text",
    "seed_sensitivity",
    "tokenize",
]
