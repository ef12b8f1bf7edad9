#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relgrade/audit.hpp"
#include "relgrade/config.hpp"
#include "relgrade/metrics.hpp"
#include "relgrade/model.hpp"

namespace relgrade {

/// Builds the configured backend. For HTTP the API key is read from the
/// environment variable named in the config; for mock the script file is
/// loaded. Throws ConfigError on an unusable configuration.
std::unique_ptr<ChatBackend> make_backend(const PipelineConfig& config);

struct JudgingResult {
    QrelsSet qrels;
    std::vector<AuditRecord> audit;  // input order
    std::size_t pairs_with_errors = 0;
};

/// Judges every pair with at most `parallelism` concurrent workers. Results
/// are reassembled by input index before anything is emitted, so the output
/// is a pure function of (pairs, spec, backend behavior) at any parallelism.
/// Per-pair faults become label 0 with an error note; nothing is dropped.
JudgingResult judge_pairs(const std::vector<QueryPassagePair>& pairs,
                          ChatBackend& backend, const JudgeSpec& spec,
                          int parallelism, bool capture_timings = false);

struct JudgingSummary {
    std::size_t pairs = 0;
    std::size_t pairs_with_errors = 0;
};

/// File-level orchestration: reads pairs, judges them, writes the qrels file
/// and (when configured) the audit log. Per-pair faults are data, not
/// process failures.
JudgingSummary run_judging(const PipelineConfig& config);
JudgingSummary run_judging(const PipelineConfig& config, ChatBackend& backend);

struct FitSummary {
    std::size_t rows_used = 0;
    std::size_t skipped_missing_label = 0;
    std::vector<int> classes;
};

/// Computes Phase One grades for the dev pairs, joins them with dev qrels
/// labels (pairs without a label are skipped and counted), fits the Gaussian
/// NB model and writes it as JSON. Throws if the join is empty.
FitSummary run_fit_nb(const PipelineConfig& config, ChatBackend& backend,
                      const std::string& dev_pairs_path,
                      const std::string& dev_qrels_path,
                      const std::string& out_model_path, double epsilon = 1e-9);

struct EvaluationReport {
    std::size_t aligned = 0;
    std::size_t dropped_predicted = 0;
    std::size_t dropped_manual = 0;
    AlphaDistance alpha_distance = AlphaDistance::Interval;
    std::optional<double> alpha;
    std::optional<double> kappa_4point;
    std::optional<double> kappa_0v123;
    std::optional<double> kappa_01v23;
    std::optional<double> kappa_012v3;
    int ndcg_k = 10;
    std::optional<double> tau;  // present when runs were supplied
    std::optional<Leaderboard> manual_leaderboard;
    std::optional<Leaderboard> predicted_leaderboard;
};

class NoOverlapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Compares predicted against manual qrels: alignment counts, Krippendorff's
/// alpha under the chosen distance, Cohen's kappa under all four collapse
/// schemes, and leaderboard correlation when runs are supplied. Throws
/// NoOverlapError when the key intersection is empty.
EvaluationReport run_evaluate(const QrelsSet& predicted, const QrelsSet& manual,
                              const std::vector<RunFile>* runs, int k,
                              AlphaDistance distance);

std::string render_report_text(const EvaluationReport& report);
std::string render_report_json(const EvaluationReport& report);

}  // namespace relgrade
