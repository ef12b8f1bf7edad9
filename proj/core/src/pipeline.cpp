#include "relgrade/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "relgrade/formats.hpp"
#include "relgrade/http_backend.hpp"
#include "relgrade/mock_backend.hpp"

namespace relgrade {

std::unique_ptr<ChatBackend> make_backend(const PipelineConfig& config) {
    BackendOptions options;
    options.length_budget = config.length_budget;
    options.retries = config.retries;
    options.backoff = std::chrono::milliseconds(config.backoff_ms);

    if (config.backend == BackendKind::Mock) {
        if (!config.mock_script_path)
            throw ConfigError("mock backend requires mock_script");
        try {
            return std::make_unique<ScriptedBackend>(
                ScriptedBackend::from_json_file(*config.mock_script_path, options));
        } catch (const std::exception& err) {
            throw ConfigError(std::string("cannot load mock script: ") + err.what());
        }
    }

    HttpBackendConfig http;
    http.endpoint_url = config.endpoint_url;
    http.timeout_ms = config.timeout_ms;
    if (const char* key = std::getenv(config.api_key_env.c_str())) {
        http.api_key = key;
    }
    try {
        return std::make_unique<HttpBackend>(std::move(http), options);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
}

JudgingResult judge_pairs(const std::vector<QueryPassagePair>& pairs,
                          ChatBackend& backend, const JudgeSpec& spec,
                          int parallelism, bool capture_timings) {
    if (parallelism < 1) throw ConfigError("parallelism must be >= 1");

    const std::size_t n = pairs.size();
    std::vector<AuditRecord> records(n);
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t index = next.fetch_add(1);
            if (index >= n) return;
            const auto start = std::chrono::steady_clock::now();
            AuditRecord record;
            try {
                JudgeOutcome outcome = judge_pair(pairs[index], backend, spec);
                record.pair = std::move(outcome.pair);
                record.calls = std::move(outcome.calls);
            } catch (const std::exception& err) {
                JudgedPair failed;
                failed.query_id = pairs[index].query.id;
                failed.passage_id = pairs[index].passage.id;
                failed.method = std::string(method_id(spec.method));
                failed.label = RelevanceLabel(0);
                failed.error = std::string("internal error: ") + err.what();
                record.pair = std::move(failed);
            }
            if (capture_timings) {
                record.duration_ms =
                    std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
            }
            records[index] = std::move(record);
        }
    };

    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(parallelism), std::max<std::size_t>(n, 1));
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) threads.emplace_back(worker);
    for (auto& thread : threads) thread.join();

    JudgingResult result;
    for (AuditRecord& record : records) {
        if (record.pair.error) ++result.pairs_with_errors;
        result.qrels.insert(record.pair.query_id, record.pair.passage_id,
                            record.pair.label);
        result.audit.push_back(std::move(record));
    }
    return result;
}

JudgingSummary run_judging(const PipelineConfig& config) {
    auto backend = make_backend(config);
    return run_judging(config, *backend);
}

JudgingSummary run_judging(const PipelineConfig& config, ChatBackend& backend) {
    config.validate();
    if (config.pairs_path.empty()) throw ConfigError("pairs path is required");
    if (config.out_qrels_path.empty()) throw ConfigError("out_qrels path is required");

    auto pairs = read_pairs_file(config.pairs_path);

    JudgeSpec spec;
    spec.method = config.method;
    spec.decode = config.decode_params();
    spec.thresholds = config.threshold_map();
    GaussianNbModel model;
    if (config.method == JudgeMethod::NaiveBayesDecompose) {
        model = GaussianNbModel::load(*config.nb_model_path);
        spec.nb_model = &model;
    }

    JudgingResult result = judge_pairs(pairs, backend, spec, config.parallelism,
                                       config.audit_timings);

    write_qrels_file(result.qrels, config.out_qrels_path);
    if (config.audit_log_path) {
        std::ofstream out(*config.audit_log_path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write audit log: " +
                                     *config.audit_log_path);
        for (const AuditRecord& record : result.audit) {
            out << audit_record_to_json_line(record, config.verbose_audit) << '\n';
        }
    }
    return {pairs.size(), result.pairs_with_errors};
}

FitSummary run_fit_nb(const PipelineConfig& config, ChatBackend& backend,
                      const std::string& dev_pairs_path,
                      const std::string& dev_qrels_path,
                      const std::string& out_model_path, double epsilon) {
    auto pairs = read_pairs_file(dev_pairs_path);
    QrelsSet dev_labels = read_qrels_file(dev_qrels_path);

    // Phase One grades for every dev pair, reusing the batch machinery so
    // the same parallelism and fault policy apply.
    JudgeSpec spec;
    spec.method = JudgeMethod::SumDecompose;  // phase-one-only method, no extra call
    spec.decode = config.decode_params();
    spec.thresholds = config.threshold_map();
    JudgingResult graded = judge_pairs(pairs, backend, spec, config.parallelism);

    std::vector<GaussianNbModel::FeatureVector> features;
    std::vector<RelevanceLabel> labels;
    FitSummary summary;
    for (const AuditRecord& record : graded.audit) {
        auto label = dev_labels.get(record.pair.query_id, record.pair.passage_id);
        if (!label) {
            ++summary.skipped_missing_label;
            continue;
        }
        auto grades = record.pair.full_grades();
        if (!grades) {
            ++summary.skipped_missing_label;
            continue;
        }
        features.push_back({grades->exactness.value(), grades->coverage.value(),
                            grades->topicality.value(),
                            grades->contextual_fit.value()});
        labels.push_back(*label);
    }
    if (features.empty())
        throw std::invalid_argument("empty training set after joining dev labels");

    GaussianNbModel model = fit_gaussian_nb(features, labels, epsilon);
    model.save(out_model_path);
    summary.rows_used = features.size();
    summary.classes = model.classes();
    return summary;
}

EvaluationReport run_evaluate(const QrelsSet& predicted, const QrelsSet& manual,
                              const std::vector<RunFile>* runs, int k,
                              AlphaDistance distance) {
    LabelVectorPair aligned = align_qrels(predicted, manual);
    if (aligned.size() == 0)
        throw NoOverlapError("predicted and manual qrels share no keys");

    EvaluationReport report;
    report.aligned = aligned.size();
    report.dropped_predicted = aligned.dropped_a;
    report.dropped_manual = aligned.dropped_b;
    report.alpha_distance = distance;
    report.alpha = krippendorff_alpha(aligned, distance);
    report.kappa_4point = cohens_kappa(aligned, CollapseScheme::FourPoint);
    report.kappa_0v123 = cohens_kappa(aligned, CollapseScheme::ZeroVs123);
    report.kappa_01v23 = cohens_kappa(aligned, CollapseScheme::ZeroOneVs23);
    report.kappa_012v3 = cohens_kappa(aligned, CollapseScheme::ZeroOneTwoVs3);
    report.ndcg_k = k;

    if (runs != nullptr) {
        report.tau = leaderboard_correlation(*runs, manual, predicted, k);
        report.manual_leaderboard = build_leaderboard(*runs, manual, k);
        report.predicted_leaderboard = build_leaderboard(*runs, predicted, k);
    }
    return report;
}

namespace {

std::string metric_text(const std::optional<double>& value) {
    if (!value) return "undefined";
    std::ostringstream out;
    out.precision(4);
    out << std::fixed << *value;
    return out.str();
}

}  // namespace

std::string render_report_text(const EvaluationReport& report) {
    std::ostringstream out;
    out << "pairs aligned        : " << report.aligned << " (dropped predicted="
        << report.dropped_predicted << ", manual=" << report.dropped_manual << ")\n";
    out << "krippendorff alpha   : " << metric_text(report.alpha) << " ("
        << alpha_distance_name(report.alpha_distance) << ")\n";
    out << "kappa 4-point        : " << metric_text(report.kappa_4point) << '\n';
    out << "kappa 0 vs 123       : " << metric_text(report.kappa_0v123) << '\n';
    out << "kappa 01 vs 23       : " << metric_text(report.kappa_01v23) << '\n';
    out << "kappa 012 vs 3       : " << metric_text(report.kappa_012v3) << '\n';
    if (report.tau || report.manual_leaderboard) {
        out << "leaderboard tau@" << report.ndcg_k << "   : " << metric_text(report.tau)
            << '\n';
    }
    return out.str();
}

std::string render_report_json(const EvaluationReport& report) {
    nlohmann::json doc;
    doc["aligned"] = report.aligned;
    doc["dropped_predicted"] = report.dropped_predicted;
    doc["dropped_manual"] = report.dropped_manual;
    doc["alpha_distance"] = std::string(alpha_distance_name(report.alpha_distance));
    auto set_metric = [&doc](const char* key, const std::optional<double>& value) {
        if (value) doc[key] = *value;
        else doc[key] = nullptr;
    };
    set_metric("alpha", report.alpha);
    set_metric("kappa_4point", report.kappa_4point);
    set_metric("kappa_0v123", report.kappa_0v123);
    set_metric("kappa_01v23", report.kappa_01v23);
    set_metric("kappa_012v3", report.kappa_012v3);
    if (report.tau || report.manual_leaderboard) {
        set_metric("tau", report.tau);
        doc["ndcg_k"] = report.ndcg_k;
    }
    auto board_json = [](const Leaderboard& board) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : board.rows) {
            rows.push_back({{"system", row.system_tag},
                            {"ndcg", row.effectiveness}});
        }
        return rows;
    };
    if (report.manual_leaderboard)
        doc["manual_leaderboard"] = board_json(*report.manual_leaderboard);
    if (report.predicted_leaderboard)
        doc["predicted_leaderboard"] = board_json(*report.predicted_leaderboard);
    return doc.dump(2) + "\n";
}

}  // namespace relgrade
