#include "relgrade/backend.hpp"

#include <thread>

namespace relgrade {

std::string_view backend_error_kind_name(BackendErrorKind kind) {
    switch (kind) {
        case BackendErrorKind::Transport: return "transport";
        case BackendErrorKind::Timeout: return "timeout";
        case BackendErrorKind::CapacityExceeded: return "capacity exceeded";
        case BackendErrorKind::MalformedReply: return "malformed reply";
    }
    return "unknown";
}

BackendError::BackendError(BackendErrorKind kind, std::string detail)
    : std::runtime_error(std::string(backend_error_kind_name(kind)) + ": " + detail),
      kind_(kind) {}

std::size_t estimate_budget(const ChatRequest& request) {
    return request.system_message.size() + request.user_prompt.size();
}

ChatResponse ChatBackend::complete(const ChatRequest& request) {
    if (request.user_prompt.empty())
        throw std::invalid_argument("chat request user prompt must be non-empty");
    if (estimate_budget(request) > options_.length_budget) {
        throw BackendError(BackendErrorKind::CapacityExceeded,
                           "request size " + std::to_string(estimate_budget(request)) +
                               " exceeds budget " +
                               std::to_string(options_.length_budget));
    }
    int attempt = 0;
    for (;;) {
        try {
            return send(request);
        } catch (const BackendError& err) {
            bool retryable = err.kind() == BackendErrorKind::Transport ||
                             err.kind() == BackendErrorKind::Timeout;
            if (!retryable || attempt >= options_.retries) throw;
            if (options_.backoff.count() > 0) {
                std::this_thread::sleep_for(options_.backoff * (1 << attempt));
            }
            ++attempt;
        }
    }
}

}  // namespace relgrade
