// relgrade: batch relevance judging for query-passage pairs with an LLM
// backend, plus evaluation of predicted qrels against manual judgments.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "relgrade/formats.hpp"
#include "relgrade/pipeline.hpp"

namespace {

using namespace relgrade;

/// Flag holder; only flags the user actually passed override the config file.
struct CommonFlags {
    std::string config_path;
    std::string backend;
    std::string endpoint;
    std::string model;
    std::string api_key_env;
    double temperature = 0.0;
    int max_new_tokens = 0;
    long length_budget = 0;
    int retries = 0;
    int backoff_ms = 0;
    int timeout_ms = 0;
    std::string method;
    int parallelism = 0;
    std::string thresholds;
    std::string nb_model;
    std::string mock_script;
};

void add_backend_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("-c,--config", flags.config_path,
                    "Flat key=value config file; flags override its values");
    cmd->add_option("--backend", flags.backend,
                    "Backend kind: http or mock");
    cmd->add_option("--endpoint", flags.endpoint,
                    "Chat-completion URL, e.g. http://host:8000/v1/chat/completions");
    cmd->add_option("--model", flags.model, "Model name sent with each request");
    cmd->add_option("--api-key-env", flags.api_key_env,
                    "Environment variable holding the API key (never a file)");
    cmd->add_option("--temperature", flags.temperature, "Sampling temperature");
    cmd->add_option("--max-new-tokens", flags.max_new_tokens,
                    "Completion token limit");
    cmd->add_option("--length-budget", flags.length_budget,
                    "Combined prompt character budget (inclusive)");
    cmd->add_option("--retries", flags.retries,
                    "Extra attempts for transport/timeout failures");
    cmd->add_option("--backoff-ms", flags.backoff_ms, "Base retry backoff");
    cmd->add_option("--timeout-ms", flags.timeout_ms, "HTTP timeout");
    cmd->add_option("--mock-script", flags.mock_script,
                    "JSON reply script (implies --backend mock)");
}

PipelineConfig build_config(const CLI::App* cmd, const CommonFlags& flags) {
    PipelineConfig config;
    if (cmd->count("--config") > 0) config = load_config_file(flags.config_path);
    auto override_if = [&](const char* flag, const char* key, auto format) {
        if (cmd->count(flag) > 0) apply_config_line(config, key, format());
    };
    override_if("--backend", "backend", [&] { return flags.backend; });
    override_if("--endpoint", "endpoint", [&] { return flags.endpoint; });
    override_if("--model", "model", [&] { return flags.model; });
    override_if("--api-key-env", "api_key_env", [&] { return flags.api_key_env; });
    override_if("--temperature", "temperature",
                [&] { return std::to_string(flags.temperature); });
    override_if("--max-new-tokens", "max_new_tokens",
                [&] { return std::to_string(flags.max_new_tokens); });
    override_if("--length-budget", "length_budget",
                [&] { return std::to_string(flags.length_budget); });
    override_if("--retries", "retries", [&] { return std::to_string(flags.retries); });
    override_if("--backoff-ms", "backoff_ms",
                [&] { return std::to_string(flags.backoff_ms); });
    override_if("--timeout-ms", "timeout_ms",
                [&] { return std::to_string(flags.timeout_ms); });
    if (cmd->count("--mock-script") > 0) {
        apply_config_line(config, "mock_script", flags.mock_script);
        apply_config_line(config, "backend", "mock");
    }
    return config;
}

int cmd_judge(const CLI::App* cmd, const CommonFlags& flags,
              const std::string& pairs_path, const std::string& out_path,
              const std::string& audit_path, bool verbose_audit,
              bool audit_timings) {
    PipelineConfig config = build_config(cmd, flags);
    auto override_if = [&](const char* flag, const char* key, const std::string& v) {
        if (cmd->count(flag) > 0) apply_config_line(config, key, v);
    };
    override_if("--method", "method", flags.method);
    if (cmd->count("--parallelism") > 0)
        apply_config_line(config, "parallelism", std::to_string(flags.parallelism));
    override_if("--thresholds", "thresholds", flags.thresholds);
    override_if("--nb-model", "nb_model", flags.nb_model);
    override_if("--pairs", "pairs", pairs_path);
    override_if("--out", "out_qrels", out_path);
    override_if("--audit", "audit_log", audit_path);
    if (cmd->count("--verbose-audit") > 0)
        config.verbose_audit = verbose_audit;
    if (cmd->count("--audit-timings") > 0)
        config.audit_timings = audit_timings;

    JudgingSummary summary = run_judging(config);
    std::cout << "judged " << summary.pairs << " pairs ("
              << summary.pairs_with_errors << " with error notes) -> "
              << config.out_qrels_path << '\n';
    return 0;
}

int cmd_fit_nb(const CLI::App* cmd, const CommonFlags& flags,
               const std::string& dev_pairs, const std::string& dev_qrels,
               const std::string& out_model, double epsilon) {
    PipelineConfig config = build_config(cmd, flags);
    if (cmd->count("--parallelism") > 0)
        apply_config_line(config, "parallelism", std::to_string(flags.parallelism));
    auto backend = make_backend(config);
    FitSummary summary =
        run_fit_nb(config, *backend, dev_pairs, dev_qrels, out_model, epsilon);
    std::cout << "fitted on " << summary.rows_used << " rows ("
              << summary.skipped_missing_label << " skipped without a dev label), "
              << summary.classes.size() << " classes -> " << out_model << '\n';
    return 0;
}

int cmd_evaluate(const std::string& predicted_path, const std::string& manual_path,
                 const std::string& runs_path, int k, const std::string& distance,
                 const std::string& json_path) {
    auto dist = alpha_distance_from_string(distance);
    if (!dist) {
        std::cerr << "unknown alpha distance: " << distance << '\n';
        return 1;
    }
    QrelsSet predicted = read_qrels_file(predicted_path);
    QrelsSet manual = read_qrels_file(manual_path);

    std::optional<std::vector<RunFile>> runs;
    if (!runs_path.empty()) runs = read_runs(runs_path);

    EvaluationReport report =
        run_evaluate(predicted, manual, runs ? &*runs : nullptr, k, *dist);
    std::cout << render_report_text(report);
    if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write report: " + json_path);
        out << render_report_json(report);
    }
    return 0;
}

int cmd_leaderboard(const std::string& runs_path, const std::string& qrels_path,
                    int k, const std::string& json_path) {
    auto runs = read_runs(runs_path);
    QrelsSet qrels = read_qrels_file(qrels_path);
    Leaderboard board = build_leaderboard(runs, qrels, k);
    std::size_t rank = 1;
    for (const auto& row : board.rows) {
        std::cout << rank << ' ' << row.system_tag << ' '
                  << format_score(row.effectiveness) << '\n';
        ++rank;
    }
    if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write report: " + json_path);
        out << "[";
        for (std::size_t i = 0; i < board.rows.size(); ++i) {
            if (i > 0) out << ",";
            out << "\n  {\"rank\": " << (i + 1) << ", \"system\": \""
                << board.rows[i].system_tag << "\", \"ndcg\": "
                << format_score(board.rows[i].effectiveness) << "}";
        }
        out << "\n]\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Predict graded relevance labels for query-passage pairs with an "
                 "LLM backend and evaluate them against manual judgments."};
    app.require_subcommand(1);

    CommonFlags flags;

    // judge
    auto* judge = app.add_subcommand(
        "judge", "Judge a pairs file and emit qrels plus an audit log");
    add_backend_flags(judge, flags);
    std::string pairs_path, out_path, audit_path;
    bool verbose_audit = false, audit_timings = false;
    judge->add_option("--pairs", pairs_path, "Input pairs (JSON lines)");
    judge->add_option("--out", out_path, "Output qrels path");
    judge->add_option("--audit", audit_path, "Audit log path (JSON lines)");
    judge->add_option("--method", flags.method,
                      "TREMA-4prompts | TREMA-sumdecompose | TREMA-naiveBdecompose "
                      "| TREMA-CoT | TREMA-other (or 4prompts/sum/nb/cot/p2q)");
    judge->add_option("--parallelism", flags.parallelism, "Concurrent pairs");
    judge->add_option("--thresholds", flags.thresholds,
                      "Sum bands, e.g. 0-4:0,5-6:1,7-9:2,10-12:3");
    judge->add_option("--nb-model", flags.nb_model, "Fitted NB model (JSON)");
    judge->add_flag("--verbose-audit", verbose_audit,
                    "Store full prompts in the audit log, not only hashes");
    judge->add_flag("--audit-timings", audit_timings,
                    "Record per-pair wall-clock durations (makes reruns differ)");

    // fit-nb
    auto* fit = app.add_subcommand(
        "fit-nb", "Fit the Gaussian NB aggregator on dev pairs and dev qrels");
    add_backend_flags(fit, flags);
    std::string dev_pairs, dev_qrels, out_model;
    double epsilon = 1e-9;
    fit->add_option("--pairs", dev_pairs, "Dev pairs (JSON lines)")->required();
    fit->add_option("--qrels", dev_qrels, "Dev qrels with manual labels")->required();
    fit->add_option("--out", out_model, "Output model path (JSON)")->required();
    fit->add_option("--epsilon", epsilon, "Variance smoothing factor");
    fit->add_option("--parallelism", flags.parallelism, "Concurrent pairs");

    // evaluate
    auto* evaluate = app.add_subcommand(
        "evaluate", "Compare predicted qrels against manual judgments");
    std::string predicted_path, manual_path, runs_path, report_json;
    int k = 10;
    std::string distance = "interval";
    evaluate->add_option("--predicted", predicted_path, "Predicted qrels")->required();
    evaluate->add_option("--manual", manual_path, "Manual qrels")->required();
    evaluate->add_option("--runs", runs_path,
                         "Run file or directory of run files (enables tau)");
    evaluate->add_option("-k,--k", k, "NDCG cutoff");
    evaluate->add_option("--distance", distance,
                         "Alpha distance: nominal | ordinal | interval");
    evaluate->add_option("--json", report_json, "Also write the report as JSON");

    // leaderboard
    auto* leaderboard = app.add_subcommand(
        "leaderboard", "Rank systems by NDCG under a qrels set");
    std::string lb_runs, lb_qrels, lb_json;
    int lb_k = 10;
    leaderboard->add_option("--runs", lb_runs, "Run file or directory")->required();
    leaderboard->add_option("--qrels", lb_qrels, "Qrels path")->required();
    leaderboard->add_option("-k,--k", lb_k, "NDCG cutoff");
    leaderboard->add_option("--json", lb_json, "Also write the board as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (judge->parsed())
            return cmd_judge(judge, flags, pairs_path, out_path, audit_path,
                             verbose_audit, audit_timings);
        if (fit->parsed())
            return cmd_fit_nb(fit, flags, dev_pairs, dev_qrels, out_model, epsilon);
        if (evaluate->parsed())
            return cmd_evaluate(predicted_path, manual_path, runs_path, k, distance,
                                report_json);
        if (leaderboard->parsed())
            return cmd_leaderboard(lb_runs, lb_qrels, lb_k, lb_json);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
