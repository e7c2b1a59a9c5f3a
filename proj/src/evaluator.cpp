#include "lexkit/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace lexkit {

ConfusionMatrix confusion(const std::vector<std::string>& truth,
                          const std::vector<std::string>& predicted) {
    if (truth.size() != predicted.size()) {
        throw std::invalid_argument("truth and predicted lengths differ: " +
                                    std::to_string(truth.size()) + " vs " +
                                    std::to_string(predicted.size()));
    }
    if (truth.empty()) {
        throw std::invalid_argument("cannot build a confusion matrix from zero "
                                    "documents");
    }
    std::set<std::string> label_set(truth.begin(), truth.end());
    label_set.insert(predicted.begin(), predicted.end());

    ConfusionMatrix m;
    m.labels.assign(label_set.begin(), label_set.end());
    m.counts.assign(m.labels.size(),
                    std::vector<std::size_t>(m.labels.size(), 0));
    m.total = truth.size();

    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < m.labels.size(); ++i) index[m.labels[i]] = i;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++m.counts[index[truth[i]]][index[predicted[i]]];
    }
    return m;
}

std::size_t ConfusionMatrix::at(const std::string& truth,
                                const std::string& predicted) const {
    auto find = [&](const std::string& label) {
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) {
            throw std::invalid_argument("label \"" + label +
                                        "\" is not in the matrix");
        }
        return static_cast<std::size_t>(it - labels.begin());
    };
    return counts[find(truth)][find(predicted)];
}

ClassificationReport classification_metrics(const ConfusionMatrix& m) {
    ClassificationReport rep;
    std::size_t correct = 0;
    double f1_sum = 0.0;
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
        std::size_t tp = m.counts[i][i];
        std::size_t row = 0;  // truth == label i
        std::size_t col = 0;  // predicted == label i
        for (std::size_t j = 0; j < m.labels.size(); ++j) {
            row += m.counts[i][j];
            col += m.counts[j][i];
        }
        correct += tp;
        ClassMetrics cm;
        cm.label = m.labels[i];
        cm.support = row;
        cm.precision = col > 0 ? static_cast<double>(tp) / col : 0.0;
        cm.recall = row > 0 ? static_cast<double>(tp) / row : 0.0;
        double pr = cm.precision + cm.recall;
        cm.f1 = pr > 0.0 ? 2.0 * cm.precision * cm.recall / pr : 0.0;
        f1_sum += cm.f1;
        rep.per_class.push_back(std::move(cm));
    }
    rep.accuracy = static_cast<double>(correct) / static_cast<double>(m.total);
    rep.macro_f1 = f1_sum / static_cast<double>(m.labels.size());
    return rep;
}

RegressionReport ols_fit(const std::vector<double>& x,
                         const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("x and y lengths differ");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::isnan(x[i]) || std::isnan(y[i])) continue;
        xs.push_back(x[i]);
        ys.push_back(y[i]);
    }
    const std::size_t n = xs.size();
    if (n < 3) {
        throw std::invalid_argument(
            "need at least 3 complete pairs for a fit, have " +
            std::to_string(n));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = xs[i] - mx;
        double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) {
        throw std::invalid_argument("predictor has no variance, cannot fit");
    }

    RegressionReport rep;
    rep.n_used = n;
    rep.slope = sxy / sxx;
    rep.intercept = my - rep.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double resid = ys[i] - (rep.intercept + rep.slope * xs[i]);
        ssr += resid * resid;
    }
    // Constant y with zero residuals is a perfect fit by convention.
    rep.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    double dn = static_cast<double>(n);
    rep.adj_r_squared = 1.0 - (1.0 - rep.r_squared) * (dn - 1.0) / (dn - 2.0);
    rep.rmse = std::sqrt(ssr / dn);
    return rep;
}

void logistic_nll_grad(const std::vector<double>& x,
                       const std::vector<std::size_t>& y,
                       std::size_t n_classes,
                       const std::vector<double>& params, double* nll,
                       std::vector<double>* grad) {
    const std::size_t n = x.size();
    const std::size_t k = n_classes;
    if (params.size() != 2 * (k - 1)) {
        throw std::invalid_argument("parameter vector has the wrong size");
    }
    double loss = 0.0;
    if (grad) grad->assign(params.size(), 0.0);
    std::vector<double> logits(k);
    std::vector<double> probs(k);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        logits[0] = 0.0;  // reference class
        for (std::size_t c = 1; c < k; ++c) {
            logits[c] = params[2 * (c - 1)] + params[2 * (c - 1) + 1] * x[i];
        }
        double m = *std::max_element(logits.begin(), logits.end());
        double z = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            probs[c] = std::exp(logits[c] - m);
            z += probs[c];
        }
        for (std::size_t c = 0; c < k; ++c) probs[c] /= z;
        loss -= (logits[y[i]] - m - std::log(z)) * inv_n;
        if (grad) {
            for (std::size_t c = 1; c < k; ++c) {
                double delta = probs[c] - (y[i] == c ? 1.0 : 0.0);
                (*grad)[2 * (c - 1)] += delta * inv_n;
                (*grad)[2 * (c - 1) + 1] += delta * x[i] * inv_n;
            }
        }
    }
    if (nll) *nll = loss;
}

LogisticFit logistic_fit_accuracy(const std::vector<double>& x,
                                  const std::vector<std::string>& labels,
                                  const LogisticFitOptions& options) {
    if (x.size() != labels.size()) {
        throw std::invalid_argument("scores and labels lengths differ");
    }
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("scores contain a non-finite value");
        }
    }
    std::set<std::string> class_set(labels.begin(), labels.end());
    LogisticFit fit;
    fit.classes.assign(class_set.begin(), class_set.end());
    const std::size_t k = fit.classes.size();
    if (k < 2) {
        throw std::invalid_argument(
            "need at least 2 distinct classes, all labels are \"" +
            (labels.empty() ? std::string() : labels[0]) + "\"");
    }
    if (x.size() < 3 * k) {
        throw std::invalid_argument("need at least 3 documents per class, have " +
                                    std::to_string(x.size()) + " for " +
                                    std::to_string(k) + " classes");
    }
    std::unordered_map<std::string, std::size_t> class_index;
    for (std::size_t c = 0; c < k; ++c) class_index[fit.classes[c]] = c;
    std::vector<std::size_t> y(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        y[i] = class_index[labels[i]];
    }

    fit.params.assign(2 * (k - 1), 0.0);
    std::vector<double> grad;
    double nll = 0.0;
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        logistic_nll_grad(x, y, k, fit.params, &nll, &grad);
        double max_norm = 0.0;
        for (double g : grad) max_norm = std::max(max_norm, std::fabs(g));
        fit.grad_max_norm = max_norm;
        if (!std::isfinite(nll)) break;  // diverged, keep the last params
        if (max_norm < options.gradient_tolerance) {
            fit.converged = true;
            break;
        }
        for (std::size_t j = 0; j < fit.params.size(); ++j) {
            fit.params[j] -= options.learning_rate * grad[j];
        }
        fit.iterations = it + 1;  // parameter updates taken
    }
    logistic_nll_grad(x, y, k, fit.params, &fit.nll, &grad);
    double max_norm = 0.0;
    for (double g : grad) max_norm = std::max(max_norm, std::fabs(g));
    fit.grad_max_norm = max_norm;

    std::size_t correct = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::size_t arg = 0;
        double best = 0.0;  // reference class logit
        for (std::size_t c = 1; c < k; ++c) {
            double logit = fit.params[2 * (c - 1)] + fit.params[2 * (c - 1) + 1] * x[i];
            if (logit > best) {
                best = logit;
                arg = c;
            }
        }
        if (arg == y[i]) ++correct;
    }
    fit.accuracy = static_cast<double>(correct) / static_cast<double>(x.size());
    return fit;
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stateless per-run stream, stable under reordering or extending ks.
std::uint64_t derive_run_seed(std::uint64_t master, std::size_t k,
                              std::size_t run) {
    std::uint64_t s = master;
    s ^= mix64(static_cast<std::uint64_t>(k) + 0x9E3779B97F4A7C15ULL);
    s ^= mix64(static_cast<std::uint64_t>(run) + 0xC2B2AE3D27D4EB4FULL);
    return mix64(s);
}

}  // namespace

SeedSensitivityReport seed_sensitivity(
    const SeedSet& full, const std::vector<std::size_t>& ks,
    std::size_t runs_per_k,
    const std::function<Lexicon(const SeedSet&)>& build_fn,
    const std::function<double(const Lexicon&)>& eval_fn,
    std::uint64_t master_seed) {
    full.validate();
    if (ks.empty()) {
        throw std::invalid_argument("no subsample sizes given");
    }
    if (runs_per_k < 2) {
        throw std::invalid_argument(
            "need at least 2 runs per subsample size for a spread estimate");
    }
    if (!build_fn || !eval_fn) {
        throw std::invalid_argument("build and eval callbacks are required");
    }

    SeedSensitivityReport rep;
    rep.master_seed = master_seed;
    rep.runs_per_k = runs_per_k;
    for (std::size_t k : ks) {
        SeedSensitivityEntry entry;
        entry.k = k;
        for (std::size_t run = 0; run < runs_per_k; ++run) {
            SeedSensitivityRun r;
            r.rng_seed = derive_run_seed(master_seed, k, run);
            try {
                SeedSet sub = sample_seeds(full, k, r.rng_seed);
                Lexicon lex = build_fn(sub);
                r.value = eval_fn(lex);
                r.ok = true;
            } catch (const std::exception& e) {
                r.error = e.what();
            }
            entry.runs.push_back(std::move(r));
        }
        double sum = 0.0;
        for (const auto& r : entry.runs) {
            if (r.ok) {
                ++entry.succeeded;
                sum += r.value;
            }
        }
        if (entry.succeeded > 0) {
            entry.mean = sum / static_cast<double>(entry.succeeded);
        } else {
            entry.mean = std::numeric_limits<double>::quiet_NaN();
        }
        if (entry.succeeded >= 2) {
            double sq = 0.0;
            for (const auto& r : entry.runs) {
                if (r.ok) sq += (r.value - entry.mean) * (r.value - entry.mean);
            }
            entry.sd = std::sqrt(sq / static_cast<double>(entry.succeeded - 1));
        } else {
            entry.sd = std::numeric_limits<double>::quiet_NaN();
        }
        rep.per_k.push_back(std::move(entry));
    }
    return rep;
}

}  // namespace lexkit
