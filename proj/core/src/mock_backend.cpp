#include "relgrade/mock_backend.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "relgrade/prompts.hpp"

namespace relgrade {

namespace {

BackendErrorKind fault_from_name(const std::string& name) {
    if (name == "transport") return BackendErrorKind::Transport;
    if (name == "timeout") return BackendErrorKind::Timeout;
    if (name == "capacity") return BackendErrorKind::CapacityExceeded;
    if (name == "malformed") return BackendErrorKind::MalformedReply;
    throw std::invalid_argument("unknown fault kind: " + name);
}

}  // namespace

ScriptedBackend::ScriptedBackend(BackendOptions options)
    : ChatBackend(options) {}

ScriptedBackend::ScriptedBackend(ScriptedBackend&& other) noexcept
    : ChatBackend(other.options()),
      script_(std::move(other.script_)),
      calls_(std::move(other.calls_)) {}

BackendOptions ScriptedBackend::mock_defaults() {
    BackendOptions options;
    options.retries = 0;
    options.backoff = std::chrono::milliseconds(0);
    options.length_budget = 1u << 20;
    return options;
}

void ScriptedBackend::script_reply(const std::string& system_message,
                                   const std::string& user_prompt,
                                   std::string reply) {
    script_reply_hash(prompt_fingerprint(system_message, user_prompt),
                      std::move(reply));
}

void ScriptedBackend::script_fault(const std::string& system_message,
                                   const std::string& user_prompt,
                                   BackendErrorKind kind) {
    script_fault_hash(prompt_fingerprint(system_message, user_prompt), kind);
}

void ScriptedBackend::script_reply_hash(std::uint64_t fingerprint,
                                        std::string reply) {
    script_[fingerprint] = Entry(std::move(reply));
}

void ScriptedBackend::script_fault_hash(std::uint64_t fingerprint,
                                        BackendErrorKind kind) {
    script_[fingerprint] = Entry(kind);
}

ScriptedBackend ScriptedBackend::from_json(const std::string& json_text,
                                           BackendOptions options) {
    nlohmann::json doc = nlohmann::json::parse(json_text);
    if (!doc.is_array())
        throw std::invalid_argument("mock script must be a JSON array");
    ScriptedBackend backend(options);
    for (const auto& entry : doc) {
        std::uint64_t hash;
        if (entry.contains("hash")) {
            auto parsed = fingerprint_from_hex(entry.at("hash").get<std::string>());
            if (!parsed)
                throw std::invalid_argument("mock script: bad hash field");
            hash = *parsed;
        } else {
            hash = prompt_fingerprint(entry.value("system", ""),
                                      entry.at("prompt").get<std::string>());
        }
        if (entry.contains("fault")) {
            backend.script_fault_hash(hash,
                                      fault_from_name(entry.at("fault").get<std::string>()));
        } else {
            backend.script_reply_hash(hash, entry.at("reply").get<std::string>());
        }
    }
    return backend;
}

ScriptedBackend ScriptedBackend::from_json_file(const std::string& path,
                                                BackendOptions options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mock script: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json(buffer.str(), options);
}

std::vector<std::uint64_t> ScriptedBackend::call_log() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return calls_;
}

std::size_t ScriptedBackend::call_count() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return calls_.size();
}

ChatResponse ScriptedBackend::send(const ChatRequest& request) {
    const std::uint64_t hash =
        prompt_fingerprint(request.system_message, request.user_prompt);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        calls_.push_back(hash);
    }
    auto it = script_.find(hash);
    if (it == script_.end()) {
        throw BackendError(BackendErrorKind::MalformedReply,
                           "unscripted prompt " + fingerprint_hex(hash));
    }
    if (const auto* fault = std::get_if<BackendErrorKind>(&it->second)) {
        throw BackendError(*fault, "scripted fault");
    }
    return ChatResponse{std::get<std::string>(it->second)};
}

}  // namespace relgrade
