#include "relgrade/config.hpp"

#include <charconv>
#include <fstream>

namespace relgrade {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& value) {
    int out;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError("config key '" + key + "': expected integer, got '" +
                          value + "'");
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    double out;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError("config key '" + key + "': expected number, got '" +
                          value + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config key '" + key + "': expected boolean, got '" + value +
                      "'");
}

}  // namespace

DecodeParams PipelineConfig::decode_params() const {
    return {temperature, max_new_tokens, model_name};
}

ThresholdMap PipelineConfig::threshold_map() const {
    try {
        return ThresholdMap::parse(thresholds);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("bad thresholds: ") + err.what());
    }
}

void PipelineConfig::validate() const {
    if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
    if (max_new_tokens < 1) throw ConfigError("max_new_tokens must be >= 1");
    if (temperature < 0.0) throw ConfigError("temperature must be >= 0");
    if (retries < 0) throw ConfigError("retries must be >= 0");
    threshold_map();
    if (method == JudgeMethod::NaiveBayesDecompose && !nb_model_path)
        throw ConfigError("method TREMA-naiveBdecompose requires nb_model");
    if (method != JudgeMethod::NaiveBayesDecompose && nb_model_path)
        throw ConfigError("nb_model is only used by method TREMA-naiveBdecompose");
    if (backend == BackendKind::Mock && !mock_script_path)
        throw ConfigError("mock backend requires mock_script");
    if (backend == BackendKind::Http && endpoint_url.empty())
        throw ConfigError("http backend requires endpoint");
}

void apply_config_line(PipelineConfig& config, const std::string& key,
                       const std::string& value) {
    if (key == "backend") {
        if (value == "http") config.backend = BackendKind::Http;
        else if (value == "mock") config.backend = BackendKind::Mock;
        else throw ConfigError("backend must be 'http' or 'mock'");
    } else if (key == "endpoint") {
        config.endpoint_url = value;
    } else if (key == "model") {
        config.model_name = value;
    } else if (key == "api_key_env") {
        config.api_key_env = value;
    } else if (key == "temperature") {
        config.temperature = parse_double(key, value);
    } else if (key == "max_new_tokens") {
        config.max_new_tokens = parse_int(key, value);
    } else if (key == "length_budget") {
        config.length_budget = static_cast<std::size_t>(parse_int(key, value));
    } else if (key == "retries") {
        config.retries = parse_int(key, value);
    } else if (key == "backoff_ms") {
        config.backoff_ms = parse_int(key, value);
    } else if (key == "timeout_ms") {
        config.timeout_ms = parse_int(key, value);
    } else if (key == "method") {
        auto method = method_from_string(value);
        if (!method) throw ConfigError("unknown method: " + value);
        config.method = *method;
    } else if (key == "parallelism") {
        config.parallelism = parse_int(key, value);
    } else if (key == "thresholds") {
        config.thresholds = value;
    } else if (key == "nb_model") {
        config.nb_model_path = value;
    } else if (key == "mock_script") {
        config.mock_script_path = value;
    } else if (key == "pairs") {
        config.pairs_path = value;
    } else if (key == "out_qrels") {
        config.out_qrels_path = value;
    } else if (key == "audit_log") {
        config.audit_log_path = value;
    } else if (key == "verbose_audit") {
        config.verbose_audit = parse_bool(key, value);
    } else if (key == "audit_timings") {
        config.audit_timings = parse_bool(key, value);
    } else {
        throw ConfigError("unknown config key: " + key);
    }
}

PipelineConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    PipelineConfig config;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_number) +
                              ": expected key=value");
        try {
            apply_config_line(config, trim(line.substr(0, eq)),
                              trim(line.substr(eq + 1)));
        } catch (const ConfigError& err) {
            throw ConfigError("config line " + std::to_string(line_number) + ": " +
                              err.what());
        }
    }
    return config;
}

}  // namespace relgrade
