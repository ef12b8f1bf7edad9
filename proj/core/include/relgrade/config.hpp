#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "relgrade/aggregation.hpp"
#include "relgrade/backend.hpp"
#include "relgrade/judges.hpp"

namespace relgrade {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class BackendKind { Http, Mock };

/// Batch-run configuration. Values come from a flat key=value file, with
/// CLI flags overriding; the API key itself is only ever read from the
/// environment variable named by `api_key_env`.
struct PipelineConfig {
    BackendKind backend = BackendKind::Http;
    std::string endpoint_url;
    std::string model_name;
    std::string api_key_env = "RELGRADE_API_KEY";
    double temperature = 0.0;
    int max_new_tokens = 64;
    std::size_t length_budget = 6000;
    int retries = 2;
    int backoff_ms = 250;
    int timeout_ms = 30000;

    JudgeMethod method = JudgeMethod::FourPrompts;
    int parallelism = 1;
    std::string thresholds = "0-4:0,5-6:1,7-9:2,10-12:3";
    std::optional<std::string> nb_model_path;
    std::optional<std::string> mock_script_path;

    std::string pairs_path;
    std::string out_qrels_path;
    std::optional<std::string> audit_log_path;
    bool verbose_audit = false;   // store full prompts, not only hashes
    bool audit_timings = false;   // wall-clock durations make reruns differ

    DecodeParams decode_params() const;
    ThresholdMap threshold_map() const;

    /// Checks cross-field invariants; throws ConfigError.
    void validate() const;
};

/// Parses a flat key=value file ('#' starts a comment). Unknown keys are
/// rejected so typos fail loudly.
PipelineConfig load_config_file(const std::string& path);
void apply_config_line(PipelineConfig& config, const std::string& key,
                       const std::string& value);

}  // namespace relgrade
