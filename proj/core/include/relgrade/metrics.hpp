#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relgrade/model.hpp"

namespace relgrade {

/// Two aligned label vectors plus counts of keys dropped from either side
/// during alignment. Silent misalignment would corrupt every statistic, so
/// the drops are always reported.
struct LabelVectorPair {
    std::vector<int> a;
    std::vector<int> b;
    std::size_t dropped_a = 0;
    std::size_t dropped_b = 0;

    std::size_t size() const { return a.size(); }
};

/// Intersects two qrels sets by (query id, passage id) key, in key order.
LabelVectorPair align_qrels(const QrelsSet& a, const QrelsSet& b);

/// Kendall's tau-b: (C - D) / sqrt((n0 - t_a)(n0 - t_b)). Returns nullopt
/// when either vector is entirely tied (zero denominator). Throws on length
/// mismatch or fewer than two items.
std::optional<double> kendall_tau(const std::vector<double>& a,
                                  const std::vector<double>& b);

/// Ways of collapsing the 4-point scale before computing agreement.
enum class CollapseScheme { FourPoint, ZeroVs123, ZeroOneVs23, ZeroOneTwoVs3 };

int collapse_label(int label, CollapseScheme scheme);
std::string_view collapse_scheme_name(CollapseScheme scheme);

/// Cohen's kappa (p_o - p_e) / (1 - p_e) after collapsing both vectors.
/// Returns nullopt when p_e = 1 (both raters constant and equal).
std::optional<double> cohens_kappa(const LabelVectorPair& pair,
                                   CollapseScheme scheme);

enum class AlphaDistance { Nominal, Ordinal, Interval };

std::string_view alpha_distance_name(AlphaDistance distance);
std::optional<AlphaDistance> alpha_distance_from_string(std::string_view name);

/// Krippendorff's alpha, 1 - D_o/D_e, via the two-rater coincidence matrix
/// with the selected distance. Returns nullopt when D_e = 0 (no variation in
/// the pooled values).
std::optional<double> krippendorff_alpha(const LabelVectorPair& pair,
                                         AlphaDistance distance);

struct RunEntry {
    std::string passage_id;
    double score = 0.0;
};

/// One system's ranked retrieval output: per query, passages in descending
/// score order with dense ranks from 1.
struct RunFile {
    std::string system_tag;
    std::map<std::string, std::vector<RunEntry>> rankings;  // query id -> ranked list
};

/// NDCG@k with gain 2^label - 1 and discount log2(rank + 1), averaged over
/// the queries present in the run. Unjudged passages gain 0; queries with no
/// relevant passage contribute 0. Throws on an empty run or k < 1.
double ndcg_at_k(const RunFile& run, const QrelsSet& qrels, int k);

struct Leaderboard {
    struct Row {
        std::string system_tag;
        double effectiveness = 0.0;
    };
    std::vector<Row> rows;  // effectiveness descending, ties in input order
};

Leaderboard build_leaderboard(const std::vector<RunFile>& runs, const QrelsSet& qrels,
                              int k);

/// Kendall's tau between per-system effectiveness under manual vs predicted
/// qrels, systems aligned by tag. Requires at least two runs.
std::optional<double> leaderboard_correlation(const std::vector<RunFile>& runs,
                                              const QrelsSet& manual,
                                              const QrelsSet& predicted, int k);

}  // namespace relgrade
