#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lexkit/lexicon.hpp"

namespace lexkit {

struct ConfusionMatrix {
    std::vector<std::string> labels;  // sorted union of truth and predicted
    // counts[t][p] = documents with truth labels[t] predicted as labels[p]
    std::vector<std::vector<std::size_t>> counts;
    std::size_t total = 0;

    std::size_t at(const std::string& truth, const std::string& predicted) const;
};

ConfusionMatrix confusion(const std::vector<std::string>& truth,
                          const std::vector<std::string>& predicted);

struct ClassMetrics {
    std::string label;
    double precision = 0.0;  // 0 when the class was never predicted
    double recall = 0.0;     // 0 when the class never occurs in truth
    double f1 = 0.0;         // 0 when precision + recall is 0
    std::size_t support = 0;
};

struct ClassificationReport {
    double accuracy = 0.0;
    std::vector<ClassMetrics> per_class;
    double macro_f1 = 0.0;  // unweighted mean of per-class F1
};

ClassificationReport classification_metrics(const ConfusionMatrix& matrix);

struct RegressionReport {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;  // adjusted for the single predictor
    double rmse = 0.0;           // sqrt(mean squared residual)
    std::size_t n_used = 0;      // pairs left after dropping NaN entries
};

// Single-predictor least squares of y on x. Pairs where either side is NaN
// are dropped. Throws when fewer than 3 usable pairs remain or x has no
// variance.
RegressionReport ols_fit(const std::vector<double>& x,
                         const std::vector<double>& y);

struct LogisticFitOptions {
    double learning_rate = 0.5;
    std::size_t max_iterations = 100000;
    double gradient_tolerance = 1e-8;  // max-norm stopping threshold
};

struct LogisticFit {
    std::vector<std::string> classes;  // sorted; classes[0] is the reference
    // One (intercept, slope) pair per non-reference class, flattened as
    // [b_1, w_1, b_2, w_2, ...]. The reference class is pinned at zero.
    std::vector<double> params;
    double accuracy = 0.0;  // in-sample, highest-probability class wins
    bool converged = false;
    std::size_t iterations = 0;
    double grad_max_norm = 0.0;
    double nll = 0.0;  // mean negative log-likelihood at the returned params
};

// Multinomial logistic regression of the labels on one numeric score, fitted
// by full-batch gradient descent with a fixed step. Stops when the gradient
// max-norm drops under the tolerance; perfectly separable data never gets
// there and runs into the iteration cap instead (converged stays false).
LogisticFit logistic_fit_accuracy(const std::vector<double>& x,
                                  const std::vector<std::string>& labels,
                                  const LogisticFitOptions& options = {});

// Mean negative log-likelihood and its gradient at the given parameter
// vector, for the same model layout as LogisticFit::params. y holds class
// indexes into the sorted class list.
void logistic_nll_grad(const std::vector<double>& x,
                       const std::vector<std::size_t>& y,
                       std::size_t n_classes,
                       const std::vector<double>& params, double* nll,
                       std::vector<double>* grad);

struct SeedSensitivityRun {
    std::uint64_t rng_seed = 0;
    double value = 0.0;
    bool ok = false;
    std::string error;
};

struct SeedSensitivityEntry {
    std::size_t k = 0;
    std::vector<SeedSensitivityRun> runs;
    std::size_t succeeded = 0;
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation, n - 1 denominator
};

struct SeedSensitivityReport {
    std::uint64_t master_seed = 0;
    std::size_t runs_per_k = 0;
    std::vector<SeedSensitivityEntry> per_k;
};

// Repeatedly subsamples k seeds per pole, rebuilds a lexicon through
// build_fn, and evaluates it through eval_fn. Every run draws a distinct
// seed derived from master_seed, so the whole experiment is reproducible.
// A run that throws is recorded with its message and left out of the stats.
SeedSensitivityReport seed_sensitivity(
    const SeedSet& full, const std::vector<std::size_t>& ks,
    std::size_t runs_per_k,
    const std::function<Lexicon(const SeedSet&)>& build_fn,
    const std::function<double(const Lexicon&)>& eval_fn,
    std::uint64_t master_seed);

}  // namespace lexkit
