#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

#include "relgrade/http_backend.hpp"

#include <stdexcept>

#include "json.hpp"

namespace relgrade {

namespace {

// Splits "scheme://host[:port]/path" into the scheme://host:port prefix
// httplib expects and the request path.
void split_endpoint(const std::string& url, std::string& scheme_host_port,
                    std::string& path) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw std::invalid_argument("endpoint URL must include a scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        scheme_host_port = url;
        path = "/";
    } else {
        scheme_host_port = url.substr(0, path_start);
        path = url.substr(path_start);
    }
}

BackendErrorKind classify(httplib::Error error) {
    switch (error) {
        case httplib::Error::ConnectionTimeout:
        case httplib::Error::Read:
        case httplib::Error::Write:
            return BackendErrorKind::Timeout;
        default:
            return BackendErrorKind::Transport;
    }
}

}  // namespace

HttpBackend::HttpBackend(HttpBackendConfig config, BackendOptions options)
    : ChatBackend(options), config_(std::move(config)) {
    if (config_.endpoint_url.empty())
        throw std::invalid_argument("endpoint URL must be non-empty");
    split_endpoint(config_.endpoint_url, scheme_host_port_, path_);
}

ChatResponse HttpBackend::send(const ChatRequest& request) {
    nlohmann::json body = {
        {"model", request.decode.model_name},
        {"messages",
         {{{"role", "system"}, {"content", request.system_message}},
          {{"role", "user"}, {"content", request.user_prompt}}}},
        {"temperature", request.decode.temperature},
        {"max_tokens", request.decode.max_new_tokens},
    };

    // One client per request keeps the backend shareable across workers.
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(std::chrono::milliseconds(config_.timeout_ms));
    client.set_read_timeout(std::chrono::milliseconds(config_.timeout_ms));
    httplib::Headers headers;
    if (!config_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + config_.api_key);
    }

    auto result = client.Post(path_, headers, body.dump(), "application/json");
    if (!result) {
        throw BackendError(classify(result.error()),
                           httplib::to_string(result.error()));
    }
    if (result->status != 200) {
        throw BackendError(BackendErrorKind::Transport,
                           "HTTP " + std::to_string(result->status));
    }

    nlohmann::json reply = nlohmann::json::parse(result->body, nullptr, false);
    if (reply.is_discarded())
        throw BackendError(BackendErrorKind::MalformedReply, "response is not JSON");
    if (!reply.contains("choices") || !reply["choices"].is_array() ||
        reply["choices"].empty())
        throw BackendError(BackendErrorKind::MalformedReply, "response has no choices");
    const auto& message = reply["choices"][0];
    if (!message.contains("message") || !message["message"].contains("content") ||
        !message["message"]["content"].is_string())
        throw BackendError(BackendErrorKind::MalformedReply,
                           "first choice has no message content");
    return ChatResponse{message["message"]["content"].get<std::string>()};
}

}  // namespace relgrade
