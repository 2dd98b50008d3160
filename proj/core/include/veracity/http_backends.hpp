#pragma once

#include <chrono>
#include <string>
#include <string_view>

#include "veracity/backends.hpp"

namespace veracity {

/// Base URL plus the name of the environment variable holding the API key.
/// Keys are never stored in configuration files.
struct HttpEndpoint {
    std::string base_url;
    std::string api_key_env;
    std::string model;
    std::chrono::seconds timeout{60};
};

/// Reads the key named by `endpoint.api_key_env`; empty when unset.
std::string api_key_from_env(const HttpEndpoint& endpoint);

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;    // starts with '/', includes the query string
};

/// Throws ConfigError for anything that is not an absolute http(s) URL.
SplitUrl split_url(std::string_view url);

/// OpenAI-compatible `POST {base}/chat/completions`. Requests per-token
/// logprobs when asked; they are returned only if the provider supplies them.
class ChatCompletionsBackend final : public LlmBackend {
public:
    explicit ChatCompletionsBackend(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
    CompletionResult complete(const CompletionRequest& request) override;

    static nlohmann::json request_body(const CompletionRequest& request, std::string_view model);
    static CompletionResult parse_response(const nlohmann::json& body);

private:
    HttpEndpoint endpoint_;
};

/// Serper-style `POST {base}/search` with `{"q": ..., "num": k}`; results are
/// read from the `organic` array (`title`, `link`, `snippet`).
class SerpSearchBackend final : public SearchBackend {
public:
    explicit SerpSearchBackend(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
    std::vector<SearchHit> search(std::string_view query, std::size_t k) override;

    static std::vector<SearchHit> parse_response(const nlohmann::json& body);

private:
    HttpEndpoint endpoint_;
};

/// Content-extraction service addressed as `GET {base}/{url}`, returning
/// plain text.
class ReaderServiceBackend final : public ReaderBackend {
public:
    explicit ReaderServiceBackend(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
    std::string read_page(std::string_view url) override;

private:
    HttpEndpoint endpoint_;
};

/// Fetches the page itself and converts HTML to text.
class DirectFetchReader final : public ReaderBackend {
public:
    explicit DirectFetchReader(std::chrono::seconds timeout = std::chrono::seconds{30}) : timeout_(timeout) {}
    std::string read_page(std::string_view url) override;

private:
    std::chrono::seconds timeout_;
};

/// Drops script/style/head content and tags, decodes common entities and
/// collapses whitespace runs (keeping paragraph breaks at block elements).
std::string html_to_text(std::string_view html);

}  // namespace veracity
