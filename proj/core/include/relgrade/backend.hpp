#pragma once

#include <chrono>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace relgrade {

struct DecodeParams {
    double temperature = 0.0;
    int max_new_tokens = 64;
    std::string model_name;
};

struct ChatRequest {
    std::string system_message;
    std::string user_prompt;  // must be non-empty
    DecodeParams decode;
};

struct ChatResponse {
    std::string text;  // raw completion, may be empty
};

enum class BackendErrorKind { Transport, Timeout, CapacityExceeded, MalformedReply };

std::string_view backend_error_kind_name(BackendErrorKind kind);

class BackendError : public std::runtime_error {
public:
    BackendError(BackendErrorKind kind, std::string detail);
    BackendErrorKind kind() const { return kind_; }

private:
    BackendErrorKind kind_;
};

struct BackendOptions {
    /// Combined system+prompt character budget, inclusive; requests above it
    /// fail with CapacityExceeded before anything is sent.
    std::size_t length_budget = 6000;
    /// Extra attempts after the first for Transport/Timeout failures.
    int retries = 2;
    std::chrono::milliseconds backoff{250};
};

/// Deterministic size estimate for a request: combined character count of
/// the system message and user prompt.
std::size_t estimate_budget(const ChatRequest& request);

/// Chat-completion transport. complete() enforces the length budget, then
/// delegates to send(); Transport and Timeout failures are retried with
/// exponential backoff, CapacityExceeded and MalformedReply are not.
/// Implementations must be safe to share across concurrent callers.
class ChatBackend {
public:
    virtual ~ChatBackend() = default;

    ChatResponse complete(const ChatRequest& request);

    const BackendOptions& options() const { return options_; }

protected:
    explicit ChatBackend(BackendOptions options) : options_(options) {}

    virtual ChatResponse send(const ChatRequest& request) = 0;

private:
    BackendOptions options_;
};

}  // namespace relgrade
