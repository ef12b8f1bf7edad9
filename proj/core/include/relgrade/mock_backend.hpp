#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "relgrade/backend.hpp"

namespace relgrade {

/// Scripted chat backend for deterministic tests and dry runs. Replies are
/// keyed on the stable fingerprint of (system message, user prompt), so a
/// script only matches byte-exact rendered prompts; any unscripted request
/// fails with MalformedReply, which makes template drift fail loudly.
class ScriptedBackend : public ChatBackend {
public:
    explicit ScriptedBackend(BackendOptions options = mock_defaults());
    ScriptedBackend(ScriptedBackend&& other) noexcept;

    /// Mock default: no retries (a scripted fault stays a fault) and a large
    /// budget so scripts do not trip the capacity check by accident.
    static BackendOptions mock_defaults();

    void script_reply(const std::string& system_message,
                      const std::string& user_prompt, std::string reply);
    void script_fault(const std::string& system_message,
                      const std::string& user_prompt, BackendErrorKind kind);
    void script_reply_hash(std::uint64_t fingerprint, std::string reply);
    void script_fault_hash(std::uint64_t fingerprint, BackendErrorKind kind);

    /// Loads a JSON script: an array of entries, each either
    ///   {"system": "...", "prompt": "...", "reply": "..."} or
    ///   {"hash": "<16 hex digits>", "reply": "..."} or the same keys with
    ///   "fault": "transport"|"timeout"|"capacity"|"malformed" instead of
    ///   "reply".
    static ScriptedBackend from_json(const std::string& json_text,
                                     BackendOptions options = mock_defaults());
    static ScriptedBackend from_json_file(const std::string& path,
                                          BackendOptions options = mock_defaults());

    /// Fingerprints of every send() attempt, in call order.
    std::vector<std::uint64_t> call_log() const;
    std::size_t call_count() const;

private:
    ChatResponse send(const ChatRequest& request) override;

    using Entry = std::variant<std::string, BackendErrorKind>;
    std::map<std::uint64_t, Entry> script_;
    mutable std::mutex mutex_;
    std::vector<std::uint64_t> calls_;
};

}  // namespace relgrade
