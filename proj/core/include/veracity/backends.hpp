#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "veracity/accounting.hpp"
#include "veracity/extraction.hpp"

namespace veracity {

struct CompletionRequest {
    std::string prompt;
    bool want_logprobs = false;
    int max_tokens = 1024;
    double temperature = 0.0;
};

struct CompletionResult {
    std::string text;
    std::optional<std::vector<TokenLogprob>> token_logprobs;
    std::uint64_t prompt_tokens = 0;
    std::uint64_t completion_tokens = 0;

    bool operator==(const CompletionResult&) const = default;
};

struct SearchHit {
    std::string title;
    std::string url;
    std::string snippet;

    bool operator==(const SearchHit&) const = default;
};

// Raw service adapters. Implementations throw TransientBackendError for
// failures worth retrying and BackendError for everything else; retries,
// caching and accounting are layered on top by BackendClient.

class LlmBackend {
public:
    virtual ~LlmBackend() = default;
    virtual CompletionResult complete(const CompletionRequest& request) = 0;
};

class SearchBackend {
public:
    virtual ~SearchBackend() = default;
    virtual std::vector<SearchHit> search(std::string_view query, std::size_t k) = 0;
};

class ReaderBackend {
public:
    virtual ~ReaderBackend() = default;
    /// Main textual content of the page as plain text.
    virtual std::string read_page(std::string_view url) = 0;
};

// Content addresses of requests: SHA-256 of a canonical JSON rendering.
std::string completion_key(const CompletionRequest& request);
std::string search_key(std::string_view query, std::size_t k);
std::string page_key(std::string_view url);

/// Rough whitespace token count used by offline backends for usage numbers.
std::uint64_t approximate_token_count(std::string_view text);

/// http(s)://host[...] with a non-empty host.
bool is_valid_url(std::string_view url);

nlohmann::json to_json(const CompletionResult& result);
CompletionResult completion_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SearchHit& hit);
SearchHit search_hit_from_json(const nlohmann::json& j);

/// Directory of JSON documents addressed by (kind, key), laid out as
/// `<root>/<kind>/<key>.json`. Used both as the on-disk response cache and as
/// the fixture store behind mock backends. Writes go through a temporary file
/// and a rename, so concurrent writers of one key leave one complete value.
class ResponseStore {
public:
    explicit ResponseStore(std::filesystem::path root);

    std::optional<nlohmann::json> get(std::string_view kind, std::string_view key) const;
    void put(std::string_view kind, std::string_view key, const nlohmann::json& value) const;
    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path path_for(std::string_view kind, std::string_view key) const;
    std::filesystem::path root_;
};

inline constexpr std::string_view kCompletionKind = "llm";
inline constexpr std::string_view kSearchKind = "search";
inline constexpr std::string_view kPageKind = "page";

// Fixture-backed mocks. A fixture document is either the response payload or
// {"error": "<message>", "transient": bool}. Missing fixtures raise a
// non-transient BackendError naming the key.

class FixtureLlm final : public LlmBackend {
public:
    explicit FixtureLlm(std::shared_ptr<const ResponseStore> store) : store_(std::move(store)) {}
    CompletionResult complete(const CompletionRequest& request) override;

private:
    std::shared_ptr<const ResponseStore> store_;
};

class FixtureSearch final : public SearchBackend {
public:
    explicit FixtureSearch(std::shared_ptr<const ResponseStore> store) : store_(std::move(store)) {}
    std::vector<SearchHit> search(std::string_view query, std::size_t k) override;

private:
    std::shared_ptr<const ResponseStore> store_;
};

class FixtureReader final : public ReaderBackend {
public:
    explicit FixtureReader(std::shared_ptr<const ResponseStore> store) : store_(std::move(store)) {}
    std::string read_page(std::string_view url) override;

private:
    std::shared_ptr<const ResponseStore> store_;
};

/// Helpers for writing fixtures that the Fixture* mocks will serve.
void put_completion_fixture(const ResponseStore& store, const CompletionRequest& request,
                            const CompletionResult& result);
void put_search_fixture(const ResponseStore& store, std::string_view query, std::size_t k,
                        const std::vector<SearchHit>& hits);
void put_page_fixture(const ResponseStore& store, std::string_view url, std::string_view text);
void put_error_fixture(const ResponseStore& store, std::string_view kind, std::string_view key,
                       std::string_view message, bool transient);

// Record mode: forward to a live backend and store every successful response
// as a fixture.

class RecordingLlm final : public LlmBackend {
public:
    RecordingLlm(std::shared_ptr<LlmBackend> inner, std::shared_ptr<const ResponseStore> store)
        : inner_(std::move(inner)), store_(std::move(store)) {}
    CompletionResult complete(const CompletionRequest& request) override;

private:
    std::shared_ptr<LlmBackend> inner_;
    std::shared_ptr<const ResponseStore> store_;
};

class RecordingSearch final : public SearchBackend {
public:
    RecordingSearch(std::shared_ptr<SearchBackend> inner, std::shared_ptr<const ResponseStore> store)
        : inner_(std::move(inner)), store_(std::move(store)) {}
    std::vector<SearchHit> search(std::string_view query, std::size_t k) override;

private:
    std::shared_ptr<SearchBackend> inner_;
    std::shared_ptr<const ResponseStore> store_;
};

class RecordingReader final : public ReaderBackend {
public:
    RecordingReader(std::shared_ptr<ReaderBackend> inner, std::shared_ptr<const ResponseStore> store)
        : inner_(std::move(inner)), store_(std::move(store)) {}
    std::string read_page(std::string_view url) override;

private:
    std::shared_ptr<ReaderBackend> inner_;
    std::shared_ptr<const ResponseStore> store_;
};

// In-memory scripted mocks for tests. Responses are pure functions of the
// request content.

class ScriptedLlm final : public LlmBackend {
public:
    using Script = std::function<CompletionResult(const CompletionRequest&)>;

    ScriptedLlm() = default;
    explicit ScriptedLlm(Script fallback) : fallback_(std::move(fallback)) {}

    /// Serves `result` for requests whose prompt hashes to the same key.
    void add(std::string_view prompt, CompletionResult result);
    CompletionResult complete(const CompletionRequest& request) override;

private:
    std::map<std::string, CompletionResult, std::less<>> by_prompt_hash_;
    Script fallback_;
};

class ScriptedSearch final : public SearchBackend {
public:
    using Script = std::function<std::vector<SearchHit>(std::string_view query, std::size_t k)>;

    explicit ScriptedSearch(Script script) : script_(std::move(script)) {}
    std::vector<SearchHit> search(std::string_view query, std::size_t k) override { return script_(query, k); }

private:
    Script script_;
};

class ScriptedReader final : public ReaderBackend {
public:
    using Script = std::function<std::string(std::string_view url)>;

    explicit ScriptedReader(Script script) : script_(std::move(script)) {}
    std::string read_page(std::string_view url) override { return script_(url); }

private:
    Script script_;
};

struct RetryPolicy {
    int max_attempts = 3;
    std::chrono::milliseconds base_delay{500};
    /// Each delay is scaled by a uniform factor in [1 - jitter, 1 + jitter].
    double jitter = 0.25;
    /// Replaceable for tests; defaults to std::this_thread::sleep_for.
    std::function<void(std::chrono::milliseconds)> sleep;

    void validate() const;
};

struct CompletionOutcome {
    CompletionResult result;
    int attempts = 0;
    bool from_cache = false;
    std::vector<std::string> warnings;
};

/// Accounted gateway to the three services.
///
/// Every attempt that reaches a service increments exactly one ledger counter:
/// the call counter on success or `failures` on error. Cache hits increment only
/// `cache_hits`. Transient failures are retried with exponential backoff up to
/// the policy's attempt cap.
class BackendClient {
public:
    BackendClient(std::shared_ptr<LlmBackend> llm,
                  std::shared_ptr<SearchBackend> search,
                  std::shared_ptr<ReaderBackend> reader,
                  RetryPolicy retry = {},
                  std::shared_ptr<const ResponseStore> cache = nullptr);

    CompletionOutcome complete(const CompletionRequest& request, CallRole role, CostLedger& ledger);

    /// Provider-order hits with invalid and duplicate URLs removed, truncated
    /// to k. Throws ConfigError for an empty query or k == 0.
    std::vector<SearchHit> search(std::string_view query, std::size_t k, CostLedger& ledger);

    /// Throws BackendError when the page cannot be fetched.
    std::string read_page(std::string_view url, CostLedger& ledger);

    bool caching() const { return cache_ != nullptr; }

private:
    template <typename Fn>
    auto with_retries(Fn&& fn, CostLedger& ledger) -> decltype(fn());

    std::chrono::milliseconds backoff_delay(int attempt);

    std::shared_ptr<LlmBackend> llm_;
    std::shared_ptr<SearchBackend> search_;
    std::shared_ptr<ReaderBackend> reader_;
    RetryPolicy retry_;
    std::shared_ptr<const ResponseStore> cache_;
    std::mutex jitter_mutex_;
    std::mt19937_64 jitter_rng_{0x5eedULL};
};

}  // namespace veracity
