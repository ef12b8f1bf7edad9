#include "relgrade/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relgrade {

LabelVectorPair align_qrels(const QrelsSet& a, const QrelsSet& b) {
    LabelVectorPair pair;
    auto it_a = a.entries().begin();
    auto it_b = b.entries().begin();
    while (it_a != a.entries().end() && it_b != b.entries().end()) {
        if (it_a->first < it_b->first) {
            ++pair.dropped_a;
            ++it_a;
        } else if (it_b->first < it_a->first) {
            ++pair.dropped_b;
            ++it_b;
        } else {
            pair.a.push_back(it_a->second.value());
            pair.b.push_back(it_b->second.value());
            ++it_a;
            ++it_b;
        }
    }
    pair.dropped_a += std::distance(it_a, a.entries().end());
    pair.dropped_b += std::distance(it_b, b.entries().end());
    return pair;
}

std::optional<double> kendall_tau(const std::vector<double>& a,
                                  const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("kendall_tau: vectors must have equal length");
    if (a.size() < 2)
        throw std::invalid_argument("kendall_tau: need at least two items");

    // O(n^2) pair counting; n is a handful of systems here.
    long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double da = a[i] - a[j];
            const double db = b[i] - b[j];
            if (da == 0.0 && db == 0.0) {
                ++ties_a;
                ++ties_b;
            } else if (da == 0.0) {
                ++ties_a;
            } else if (db == 0.0) {
                ++ties_b;
            } else if ((da > 0.0) == (db > 0.0)) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const long long n0 = static_cast<long long>(n) * (n - 1) / 2;
    const double denom = std::sqrt(static_cast<double>(n0 - ties_a) *
                                   static_cast<double>(n0 - ties_b));
    if (denom == 0.0) return std::nullopt;
    return static_cast<double>(concordant - discordant) / denom;
}

int collapse_label(int label, CollapseScheme scheme) {
    // Each bucket maps to a representative member of itself, so collapsing
    // twice equals collapsing once.
    switch (scheme) {
        case CollapseScheme::FourPoint: return label;
        case CollapseScheme::ZeroVs123: return label == 0 ? 0 : 1;
        case CollapseScheme::ZeroOneVs23: return label <= 1 ? 0 : 2;
        case CollapseScheme::ZeroOneTwoVs3: return label <= 2 ? 0 : 3;
    }
    throw std::logic_error("unknown collapse scheme");
}

std::string_view collapse_scheme_name(CollapseScheme scheme) {
    switch (scheme) {
        case CollapseScheme::FourPoint: return "4-point";
        case CollapseScheme::ZeroVs123: return "0 vs 123";
        case CollapseScheme::ZeroOneVs23: return "01 vs 23";
        case CollapseScheme::ZeroOneTwoVs3: return "012 vs 3";
    }
    throw std::logic_error("unknown collapse scheme");
}

std::optional<double> cohens_kappa(const LabelVectorPair& pair,
                                   CollapseScheme scheme) {
    if (pair.a.size() != pair.b.size() || pair.a.empty())
        throw std::invalid_argument("cohens_kappa: need aligned non-empty vectors");
    const std::size_t n = pair.a.size();
    std::map<int, double> marginal_a, marginal_b;
    std::size_t agreements = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int va = collapse_label(pair.a[i], scheme);
        const int vb = collapse_label(pair.b[i], scheme);
        marginal_a[va] += 1.0;
        marginal_b[vb] += 1.0;
        if (va == vb) ++agreements;
    }
    const double observed = static_cast<double>(agreements) / static_cast<double>(n);
    double expected = 0.0;
    for (const auto& [value, count_a] : marginal_a) {
        auto it = marginal_b.find(value);
        if (it == marginal_b.end()) continue;
        expected += (count_a / n) * (it->second / n);
    }
    if (expected == 1.0) return std::nullopt;
    return (observed - expected) / (1.0 - expected);
}

std::string_view alpha_distance_name(AlphaDistance distance) {
    switch (distance) {
        case AlphaDistance::Nominal: return "nominal";
        case AlphaDistance::Ordinal: return "ordinal";
        case AlphaDistance::Interval: return "interval";
    }
    throw std::logic_error("unknown alpha distance");
}

std::optional<AlphaDistance> alpha_distance_from_string(std::string_view name) {
    if (name == "nominal") return AlphaDistance::Nominal;
    if (name == "ordinal") return AlphaDistance::Ordinal;
    if (name == "interval") return AlphaDistance::Interval;
    return std::nullopt;
}

std::optional<double> krippendorff_alpha(const LabelVectorPair& pair,
                                         AlphaDistance distance) {
    if (pair.a.size() != pair.b.size() || pair.a.empty())
        throw std::invalid_argument(
            "krippendorff_alpha: need aligned non-empty vectors");

    // Two raters, no missing values: every unit contributes one coincidence
    // in each direction, so o(v,w) counts ordered pairs and n_v the pooled
    // frequency of value v.
    std::map<std::pair<int, int>, double> coincidences;
    std::map<int, double> totals;
    for (std::size_t i = 0; i < pair.a.size(); ++i) {
        coincidences[{pair.a[i], pair.b[i]}] += 1.0;
        coincidences[{pair.b[i], pair.a[i]}] += 1.0;
        totals[pair.a[i]] += 1.0;
        totals[pair.b[i]] += 1.0;
    }
    const double n = 2.0 * static_cast<double>(pair.a.size());

    std::vector<int> values;
    values.reserve(totals.size());
    for (const auto& [value, count] : totals) values.push_back(value);

    auto delta_sq = [&](int v, int w) -> double {
        if (v == w) return 0.0;
        switch (distance) {
            case AlphaDistance::Nominal:
                return 1.0;
            case AlphaDistance::Interval: {
                const double d = static_cast<double>(v - w);
                return d * d;
            }
            case AlphaDistance::Ordinal: {
                // Squared sum of pooled frequencies from v to w, minus half
                // of the endpoints' own frequencies.
                const int lo = std::min(v, w), hi = std::max(v, w);
                double span = 0.0;
                for (const auto& [value, count] : totals) {
                    if (value >= lo && value <= hi) span += count;
                }
                span -= (totals.at(v) + totals.at(w)) / 2.0;
                return span * span;
            }
        }
        throw std::logic_error("unknown alpha distance");
    };

    double observed = 0.0;
    for (const auto& [key, count] : coincidences) {
        observed += count * delta_sq(key.first, key.second);
    }
    double expected = 0.0;
    for (int v : values) {
        for (int w : values) {
            expected += totals.at(v) * totals.at(w) * delta_sq(v, w);
        }
    }
    if (expected == 0.0) return std::nullopt;
    return 1.0 - (n - 1.0) * observed / expected;
}

double ndcg_at_k(const RunFile& run, const QrelsSet& qrels, int k) {
    if (k < 1) throw std::invalid_argument("ndcg_at_k: k must be >= 1");
    if (run.rankings.empty())
        throw std::invalid_argument("ndcg_at_k: run has no queries");

    auto gain = [](int label) { return std::exp2(label) - 1.0; };
    auto discount = [](std::size_t rank) {
        return std::log2(static_cast<double>(rank) + 1.0);
    };

    double total = 0.0;
    for (const auto& [query_id, ranking] : run.rankings) {
        double dcg = 0.0;
        const std::size_t depth = std::min<std::size_t>(ranking.size(), k);
        for (std::size_t i = 0; i < depth; ++i) {
            auto label = qrels.get(query_id, ranking[i].passage_id);
            if (!label) continue;  // unjudged gains nothing
            dcg += gain(label->value()) / discount(i + 1);
        }

        std::vector<int> judged;
        for (const auto& [key, label] : qrels.entries()) {
            if (key.first == query_id) judged.push_back(label.value());
        }
        std::sort(judged.begin(), judged.end(), std::greater<int>());
        double ideal = 0.0;
        const std::size_t ideal_depth = std::min<std::size_t>(judged.size(), k);
        for (std::size_t i = 0; i < ideal_depth; ++i) {
            ideal += gain(judged[i]) / discount(i + 1);
        }
        if (ideal > 0.0) total += dcg / ideal;
        // ideal == 0: no relevant passage for this query, contributes 0
    }
    return total / static_cast<double>(run.rankings.size());
}

Leaderboard build_leaderboard(const std::vector<RunFile>& runs, const QrelsSet& qrels,
                              int k) {
    Leaderboard board;
    for (const RunFile& run : runs) {
        board.rows.push_back({run.system_tag, ndcg_at_k(run, qrels, k)});
    }
    std::stable_sort(board.rows.begin(), board.rows.end(),
                     [](const Leaderboard::Row& a, const Leaderboard::Row& b) {
                         return a.effectiveness > b.effectiveness;
                     });
    return board;
}

std::optional<double> leaderboard_correlation(const std::vector<RunFile>& runs,
                                              const QrelsSet& manual,
                                              const QrelsSet& predicted, int k) {
    if (runs.size() < 2)
        throw std::invalid_argument("leaderboard correlation needs >= 2 runs");
    std::vector<double> under_manual, under_predicted;
    under_manual.reserve(runs.size());
    under_predicted.reserve(runs.size());
    for (const RunFile& run : runs) {
        under_manual.push_back(ndcg_at_k(run, manual, k));
        under_predicted.push_back(ndcg_at_k(run, predicted, k));
    }
    return kendall_tau(under_manual, under_predicted);
}

}  // namespace relgrade
