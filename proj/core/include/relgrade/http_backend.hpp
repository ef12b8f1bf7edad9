#pragma once

#include <string>

#include "relgrade/backend.hpp"

namespace relgrade {

struct HttpBackendConfig {
    /// Full chat-completion URL, e.g. "http://localhost:8000/v1/chat/completions".
    std::string endpoint_url;
    /// Bearer token; empty means no Authorization header.
    std::string api_key;
    int timeout_ms = 30000;
};

/// OpenAI-compatible chat-completion client. Each request posts a JSON body
/// with the model name, a two-message array (system, user), temperature and
/// max_tokens; the reply text is the first choice's message content. Rendered
/// strings travel to the wire unmodified.
class HttpBackend : public ChatBackend {
public:
    HttpBackend(HttpBackendConfig config, BackendOptions options = {});

private:
    ChatResponse send(const ChatRequest& request) override;

    HttpBackendConfig config_;
    std::string scheme_host_port_;
    std::string path_;
};

}  // namespace relgrade
