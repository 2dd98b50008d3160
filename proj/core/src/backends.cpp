#include "veracity/backends.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "veracity/errors.hpp"
#include "veracity/hashing.hpp"

namespace veracity {

using nlohmann::json;

std::string completion_key(const CompletionRequest& request) {
    const json canonical = {
        {"kind", "complete"},
        {"prompt", request.prompt},
        {"want_logprobs", request.want_logprobs},
        {"max_tokens", request.max_tokens},
        {"temperature", request.temperature},
    };
    return sha256_hex(canonical.dump());
}

std::string search_key(std::string_view query, std::size_t k) {
    const json canonical = {{"kind", "search"}, {"query", query}, {"k", k}};
    return sha256_hex(canonical.dump());
}

std::string page_key(std::string_view url) {
    const json canonical = {{"kind", "page"}, {"url", url}};
    return sha256_hex(canonical.dump());
}

std::uint64_t approximate_token_count(std::string_view text) {
    std::uint64_t count = 0;
    bool in_word = false;
    for (char c : text) {
        const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
        if (!space && !in_word) ++count;
        in_word = !space;
    }
    return count;
}

bool is_valid_url(std::string_view url) {
    std::string_view rest;
    if (url.starts_with("https://")) {
        rest = url.substr(8);
    } else if (url.starts_with("http://")) {
        rest = url.substr(7);
    } else {
        return false;
    }
    const auto host_end = rest.find_first_of("/?#");
    const auto host = rest.substr(0, host_end);
    if (host.empty()) return false;
    return std::none_of(url.begin(), url.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) != 0 || static_cast<unsigned char>(c) < 0x20;
    });
}

json to_json(const CompletionResult& result) {
    json j = {
        {"text", result.text},
        {"prompt_tokens", result.prompt_tokens},
        {"completion_tokens", result.completion_tokens},
    };
    if (result.token_logprobs) {
        json tokens = json::array();
        for (const auto& t : *result.token_logprobs) tokens.push_back({{"token", t.token}, {"logprob", t.logprob}});
        j["token_logprobs"] = std::move(tokens);
    } else {
        j["token_logprobs"] = nullptr;
    }
    return j;
}

CompletionResult completion_from_json(const json& j) {
    CompletionResult result;
    result.text = j.at("text").get<std::string>();
    result.prompt_tokens = j.value("prompt_tokens", std::uint64_t{0});
    result.completion_tokens = j.value("completion_tokens", std::uint64_t{0});
    if (auto it = j.find("token_logprobs"); it != j.end() && it->is_array()) {
        std::vector<TokenLogprob> tokens;
        for (const auto& t : *it) tokens.push_back({t.at("token").get<std::string>(), t.at("logprob").get<double>()});
        result.token_logprobs = std::move(tokens);
    }
    return result;
}

json to_json(const SearchHit& hit) { return {{"title", hit.title}, {"url", hit.url}, {"snippet", hit.snippet}}; }

SearchHit search_hit_from_json(const json& j) {
    return {j.value("title", std::string{}), j.at("url").get<std::string>(), j.value("snippet", std::string{})};
}

// ---------------------------------------------------------------------------
// ResponseStore

ResponseStore::ResponseStore(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path ResponseStore::path_for(std::string_view kind, std::string_view key) const {
    return root_ / std::string(kind) / (std::string(key) + ".json");
}

std::optional<json> ResponseStore::get(std::string_view kind, std::string_view key) const {
    std::ifstream in(path_for(kind, key), std::ios::binary);
    if (!in) return std::nullopt;
    try {
        return json::parse(in);
    } catch (const json::parse_error&) {
        return std::nullopt;
    }
}

void ResponseStore::put(std::string_view kind, std::string_view key, const json& value) const {
    const auto target = path_for(kind, key);
    std::filesystem::create_directories(target.parent_path());
    std::ostringstream suffix;
    suffix << ".tmp." << std::this_thread::get_id();
    auto tmp = target;
    tmp += suffix.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << value.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, target);
}

namespace {

[[noreturn]] void throw_fixture_error(const json& doc) {
    const auto message = doc.at("error").get<std::string>();
    if (doc.value("transient", false)) throw TransientBackendError(message);
    throw BackendError(message);
}

json require_fixture(const ResponseStore& store, std::string_view kind, const std::string& key,
                     std::string_view what) {
    auto doc = store.get(kind, key);
    if (!doc) {
        throw BackendError("no " + std::string(kind) + " fixture for " + std::string(what) + " (key " + key + ")");
    }
    if (doc->is_object() && doc->contains("error")) throw_fixture_error(*doc);
    return *doc;
}

}  // namespace

CompletionResult FixtureLlm::complete(const CompletionRequest& request) {
    return completion_from_json(require_fixture(*store_, kCompletionKind, completion_key(request), "prompt"));
}

std::vector<SearchHit> FixtureSearch::search(std::string_view query, std::size_t k) {
    const auto doc = require_fixture(*store_, kSearchKind, search_key(query, k), "query '" + std::string(query) + "'");
    std::vector<SearchHit> hits;
    for (const auto& h : doc.at("hits")) hits.push_back(search_hit_from_json(h));
    return hits;
}

std::string FixtureReader::read_page(std::string_view url) {
    return require_fixture(*store_, kPageKind, page_key(url), url).at("text").get<std::string>();
}

void put_completion_fixture(const ResponseStore& store, const CompletionRequest& request,
                            const CompletionResult& result) {
    store.put(kCompletionKind, completion_key(request), to_json(result));
}

void put_search_fixture(const ResponseStore& store, std::string_view query, std::size_t k,
                        const std::vector<SearchHit>& hits) {
    json list = json::array();
    for (const auto& h : hits) list.push_back(to_json(h));
    store.put(kSearchKind, search_key(query, k), {{"query", query}, {"hits", std::move(list)}});
}

void put_page_fixture(const ResponseStore& store, std::string_view url, std::string_view text) {
    store.put(kPageKind, page_key(url), {{"url", url}, {"text", text}});
}

void put_error_fixture(const ResponseStore& store, std::string_view kind, std::string_view key,
                       std::string_view message, bool transient) {
    store.put(kind, key, {{"error", message}, {"transient", transient}});
}

CompletionResult RecordingLlm::complete(const CompletionRequest& request) {
    auto result = inner_->complete(request);
    put_completion_fixture(*store_, request, result);
    return result;
}

std::vector<SearchHit> RecordingSearch::search(std::string_view query, std::size_t k) {
    auto hits = inner_->search(query, k);
    put_search_fixture(*store_, query, k, hits);
    return hits;
}

std::string RecordingReader::read_page(std::string_view url) {
    auto text = inner_->read_page(url);
    put_page_fixture(*store_, url, text);
    return text;
}

void ScriptedLlm::add(std::string_view prompt, CompletionResult result) {
    by_prompt_hash_[sha256_hex(prompt)] = std::move(result);
}

CompletionResult ScriptedLlm::complete(const CompletionRequest& request) {
    if (auto it = by_prompt_hash_.find(sha256_hex(request.prompt)); it != by_prompt_hash_.end()) return it->second;
    if (fallback_) return fallback_(request);
    throw BackendError("scripted LLM has no completion for this prompt");
}

// ---------------------------------------------------------------------------
// BackendClient

void RetryPolicy::validate() const {
    if (max_attempts < 1) throw ConfigError("retry attempts must be at least 1");
    if (base_delay.count() < 0) throw ConfigError("retry delay must be non-negative");
    if (!(jitter >= 0.0 && jitter < 1.0)) throw ConfigError("retry jitter must lie in [0, 1)");
}

BackendClient::BackendClient(std::shared_ptr<LlmBackend> llm, std::shared_ptr<SearchBackend> search,
                             std::shared_ptr<ReaderBackend> reader, RetryPolicy retry,
                             std::shared_ptr<const ResponseStore> cache)
    : llm_(std::move(llm)),
      search_(std::move(search)),
      reader_(std::move(reader)),
      retry_(std::move(retry)),
      cache_(std::move(cache)) {
    retry_.validate();
    if (!retry_.sleep) retry_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::chrono::milliseconds BackendClient::backoff_delay(int attempt) {
    const double base = static_cast<double>(retry_.base_delay.count()) * std::pow(2.0, attempt - 1);
    double factor = 1.0;
    if (retry_.jitter > 0.0) {
        std::lock_guard lock(jitter_mutex_);
        factor = std::uniform_real_distribution<double>(1.0 - retry_.jitter, 1.0 + retry_.jitter)(jitter_rng_);
    }
    return std::chrono::milliseconds{static_cast<std::int64_t>(base * factor)};
}

template <typename Fn>
auto BackendClient::with_retries(Fn&& fn, CostLedger& ledger) -> decltype(fn()) {
    for (int attempt = 1;; ++attempt) {
        try {
            return fn();
        } catch (const TransientBackendError& e) {
            ledger.record_failure();
            if (attempt >= retry_.max_attempts) {
                throw BackendError(std::string(e.what()) + " (gave up after " + std::to_string(attempt) + " attempts)",
                                   attempt);
            }
            retry_.sleep(backoff_delay(attempt));
        } catch (const BackendError& e) {
            ledger.record_failure();
            throw BackendError(e.what(), attempt);
        } catch (const std::exception& e) {
            // Adapters are expected to classify their errors; anything else is permanent.
            ledger.record_failure();
            throw BackendError(e.what(), attempt);
        }
    }
}

CompletionOutcome BackendClient::complete(const CompletionRequest& request, CallRole role, CostLedger& ledger) {
    if (request.prompt.empty()) throw ConfigError("completion prompt must not be empty");
    if (!llm_) throw ConfigError("no LLM backend configured");
    CompletionOutcome outcome;
    const auto key = cache_ ? completion_key(request) : std::string{};
    if (cache_) {
        if (auto hit = cache_->get(kCompletionKind, key); hit && !hit->contains("error")) {
            ledger.record_cache_hit();
            outcome.result = completion_from_json(*hit);
            outcome.from_cache = true;
        }
    }
    if (!outcome.from_cache) {
        int attempts = 0;
        outcome.result = with_retries(
            [&] {
                ++attempts;
                return llm_->complete(request);
            },
            ledger);
        outcome.attempts = attempts;
        ledger.record_completion(role, outcome.result.prompt_tokens, outcome.result.completion_tokens);
        if (cache_) cache_->put(kCompletionKind, key, to_json(outcome.result));
    }
    if (request.want_logprobs && !outcome.result.token_logprobs) {
        outcome.warnings.push_back("backend returned no token logprobs; confidence gate disabled for this call");
    }
    return outcome;
}

std::vector<SearchHit> BackendClient::search(std::string_view query, std::size_t k, CostLedger& ledger) {
    if (query.empty()) throw ConfigError("search query must not be empty");
    if (k == 0) throw ConfigError("search result count k must be at least 1");
    if (!search_) throw ConfigError("no search backend configured");

    std::vector<SearchHit> raw;
    const auto key = cache_ ? search_key(query, k) : std::string{};
    std::optional<json> cached = cache_ ? cache_->get(kSearchKind, key) : std::nullopt;
    if (cached && cached->contains("hits")) {
        ledger.record_cache_hit();
        for (const auto& h : cached->at("hits")) raw.push_back(search_hit_from_json(h));
    } else {
        raw = with_retries([&] { return search_->search(query, k); }, ledger);
        ledger.record_search(k);
        if (cache_) put_search_fixture(*cache_, query, k, raw);
    }

    std::vector<SearchHit> hits;
    std::set<std::string, std::less<>> seen;
    for (auto& hit : raw) {
        if (hits.size() >= k) break;
        if (!is_valid_url(hit.url) || !seen.insert(hit.url).second) continue;
        hits.push_back(std::move(hit));
    }
    return hits;
}

std::string BackendClient::read_page(std::string_view url, CostLedger& ledger) {
    if (!reader_) throw ConfigError("no reader backend configured");
    const auto key = cache_ ? page_key(url) : std::string{};
    if (cache_) {
        if (auto hit = cache_->get(kPageKind, key); hit && hit->contains("text")) {
            ledger.record_cache_hit();
            return hit->at("text").get<std::string>();
        }
    }
    auto text = with_retries([&] { return reader_->read_page(url); }, ledger);
    ledger.record_page_fetch();
    if (cache_) put_page_fixture(*cache_, url, text);
    return text;
}

}  // namespace veracity
