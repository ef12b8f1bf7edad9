#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

// Independent brute-force oracles. These deliberately avoid the library's
// code paths: everything is evaluated straight from the defining formulas,
// in long double where precision matters.

namespace oracles {

inline std::optional<long double> kendall_tau(const std::vector<double>& a,
                                              const std::vector<double>& b) {
    const std::size_t n = a.size();
    long long concordant = 0, discordant = 0, tied_a = 0, tied_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a[i] == a[j]) ++tied_a;
            if (b[i] == b[j]) ++tied_b;
            if (a[i] == a[j] || b[i] == b[j]) continue;
            const bool same_direction = (a[i] < a[j]) == (b[i] < b[j]);
            if (same_direction) ++concordant;
            else ++discordant;
        }
    }
    const long long n0 = static_cast<long long>(n) * (n - 1) / 2;
    const long double denominator =
        std::sqrt(static_cast<long double>(n0 - tied_a) *
                  static_cast<long double>(n0 - tied_b));
    if (denominator == 0.0L) return std::nullopt;
    return (concordant - discordant) / denominator;
}

inline std::optional<long double> cohens_kappa(const std::vector<int>& a,
                                               const std::vector<int>& b) {
    const std::size_t n = a.size();
    std::map<std::pair<int, int>, long double> table;
    for (std::size_t i = 0; i < n; ++i) table[{a[i], b[i]}] += 1.0L;

    long double observed = 0.0L;
    for (const auto& [cell, count] : table) {
        if (cell.first == cell.second) observed += count;
    }
    observed /= n;

    std::map<int, long double> row_sums, col_sums;
    for (const auto& [cell, count] : table) {
        row_sums[cell.first] += count;
        col_sums[cell.second] += count;
    }
    long double expected = 0.0L;
    for (const auto& [value, row] : row_sums) {
        auto it = col_sums.find(value);
        if (it != col_sums.end()) expected += (row / n) * (it->second / n);
    }
    if (expected == 1.0L) return std::nullopt;
    return (observed - expected) / (1.0L - expected);
}

enum class AlphaDistance { Nominal, Ordinal, Interval };

/// Krippendorff's alpha from first principles: D_o is the mean squared
/// distance over ordered intra-unit value pairs, D_e the mean over ordered
/// pairs of distinct positions in the pooled sample.
inline std::optional<long double> krippendorff_alpha(const std::vector<int>& a,
                                                     const std::vector<int>& b,
                                                     AlphaDistance distance) {
    const std::size_t units = a.size();
    std::vector<int> pooled;
    pooled.reserve(2 * units);
    for (std::size_t i = 0; i < units; ++i) {
        pooled.push_back(a[i]);
        pooled.push_back(b[i]);
    }
    std::map<int, long double> frequency;
    for (int v : pooled) frequency[v] += 1.0L;

    auto delta_sq = [&](int v, int w) -> long double {
        if (v == w) return 0.0L;
        switch (distance) {
            case AlphaDistance::Nominal:
                return 1.0L;
            case AlphaDistance::Interval:
                return static_cast<long double>(v - w) *
                       static_cast<long double>(v - w);
            case AlphaDistance::Ordinal: {
                const int lo = std::min(v, w), hi = std::max(v, w);
                long double span = 0.0L;
                for (const auto& [value, count] : frequency) {
                    if (value >= lo && value <= hi) span += count;
                }
                span -= (frequency.at(v) + frequency.at(w)) / 2.0L;
                return span * span;
            }
        }
        return 0.0L;
    };

    const long double n = static_cast<long double>(pooled.size());
    long double observed = 0.0L;
    for (std::size_t i = 0; i < units; ++i) {
        observed += delta_sq(a[i], b[i]) + delta_sq(b[i], a[i]);
    }
    observed /= n;

    long double expected = 0.0L;
    for (std::size_t i = 0; i < pooled.size(); ++i) {
        for (std::size_t j = 0; j < pooled.size(); ++j) {
            if (i == j) continue;
            expected += delta_sq(pooled[i], pooled[j]);
        }
    }
    expected /= n * (n - 1.0L);

    if (expected == 0.0L) return std::nullopt;
    return 1.0L - observed / expected;
}

/// NDCG from the defining formula over explicit (label-at-rank, judged-pool)
/// inputs for a single query.
inline long double ndcg_single_query(const std::vector<int>& labels_at_rank,
                                     std::vector<int> judged_pool, int k) {
    auto gain = [](int label) {
        return std::pow(2.0L, static_cast<long double>(label)) - 1.0L;
    };
    long double dcg = 0.0L;
    for (std::size_t i = 0; i < labels_at_rank.size() && i < static_cast<std::size_t>(k); ++i) {
        dcg += gain(labels_at_rank[i]) /
               (std::log(static_cast<long double>(i + 2)) / std::log(2.0L));
    }
    std::sort(judged_pool.begin(), judged_pool.end(), std::greater<int>());
    long double ideal = 0.0L;
    for (std::size_t i = 0; i < judged_pool.size() && i < static_cast<std::size_t>(k); ++i) {
        ideal += gain(judged_pool[i]) /
                 (std::log(static_cast<long double>(i + 2)) / std::log(2.0L));
    }
    if (ideal == 0.0L) return 0.0L;
    return dcg / ideal;
}

/// Gaussian NB reference: independent fit (long double) plus a direct
/// probability-space posterior, ties to the smaller label.
struct NbOracle {
    std::vector<int> classes;
    std::vector<long double> priors;
    std::vector<std::array<long double, 4>> means;
    std::vector<std::array<long double, 4>> variances;
};

inline NbOracle nb_fit(const std::vector<std::array<int, 4>>& rows,
                       const std::vector<int>& labels, long double epsilon) {
    const std::size_t n = rows.size();
    NbOracle model;
    for (int label : labels) {
        if (std::find(model.classes.begin(), model.classes.end(), label) ==
            model.classes.end())
            model.classes.push_back(label);
    }
    std::sort(model.classes.begin(), model.classes.end());

    std::array<long double, 4> pooled_mean{};
    for (const auto& row : rows)
        for (std::size_t f = 0; f < 4; ++f) pooled_mean[f] += row[f];
    for (auto& m : pooled_mean) m /= n;
    long double max_variance = 0.0L;
    for (std::size_t f = 0; f < 4; ++f) {
        long double acc = 0.0L;
        for (const auto& row : rows) {
            acc += (row[f] - pooled_mean[f]) * (row[f] - pooled_mean[f]);
        }
        max_variance = std::max(max_variance, acc / n);
    }
    const long double smoothing = epsilon * max_variance;

    for (int cls : model.classes) {
        std::size_t count = 0;
        std::array<long double, 4> mean{};
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i] != cls) continue;
            ++count;
            for (std::size_t f = 0; f < 4; ++f) mean[f] += rows[i][f];
        }
        for (auto& m : mean) m /= count;
        std::array<long double, 4> variance{};
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i] != cls) continue;
            for (std::size_t f = 0; f < 4; ++f) {
                variance[f] += (rows[i][f] - mean[f]) * (rows[i][f] - mean[f]);
            }
        }
        for (auto& v : variance) v = v / count + smoothing;
        model.priors.push_back(static_cast<long double>(count) / n);
        model.means.push_back(mean);
        model.variances.push_back(variance);
    }
    return model;
}

/// Posterior magnitudes are compared in log2 (long double): smoothed
/// variances can be ~1e-9, where the raw density product underflows any
/// native float format, and log2 tracking preserves the exact ordering of
/// prior * product-of-densities. Mathematically tied posteriors (symmetric
/// training data) come out ulps apart, so equality is taken at the same
/// 1e-12 relative band the library documents, resolved to the smaller label.
inline int nb_predict(const NbOracle& model, const std::array<int, 4>& features) {
    const long double pi = std::acos(-1.0L);
    const long double log2e = 1.0L / std::log(2.0L);
    int best_class = model.classes.front();
    bool have_best = false;
    long double best_log2_posterior = 0.0L;
    for (std::size_t c = 0; c < model.classes.size(); ++c) {
        long double log2_posterior = std::log2(model.priors[c]);
        for (std::size_t f = 0; f < 4; ++f) {
            const long double v = model.variances[c][f];
            const long double d = features[f] - model.means[c][f];
            // density = exp(-d^2 / 2v) / sqrt(2 pi v)
            log2_posterior += (-d * d / (2.0L * v)) * log2e -
                              0.5L * std::log2(2.0L * pi * v);
        }
        const long double tie_band =
            1e-12L * std::max({1.0L, std::fabs(log2_posterior),
                               std::fabs(best_log2_posterior)});
        if (!have_best || log2_posterior > best_log2_posterior + tie_band) {
            have_best = true;
            best_log2_posterior = log2_posterior;
            best_class = model.classes[c];
        }
    }
    return best_class;
}

}  // namespace oracles
