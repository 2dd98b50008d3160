#include <gtest/gtest.h>

#include "scenario.hpp"
#include "temp_dir.hpp"
#include "veracity/backends.hpp"
#include "veracity/errors.hpp"

namespace veracity {
namespace {

using testing::TempDir;

class CountingLlm final : public LlmBackend {
public:
    explicit CountingLlm(int transient_failures, bool permanent = false)
        : transient_failures_(transient_failures), permanent_(permanent) {}

    CompletionResult complete(const CompletionRequest& request) override {
        ++calls;
        if (permanent_) throw BackendError("bad request");
        if (calls <= transient_failures_) throw TransientBackendError("503");
        return {"echo: " + request.prompt, std::nullopt, 3, 4};
    }

    int calls = 0;

private:
    int transient_failures_;
    bool permanent_;
};

RetryPolicy recording_policy(std::vector<std::chrono::milliseconds>& sleeps, double jitter = 0.0) {
    RetryPolicy policy;
    policy.base_delay = std::chrono::milliseconds{100};
    policy.jitter = jitter;
    policy.sleep = [&sleeps](std::chrono::milliseconds d) { sleeps.push_back(d); };
    return policy;
}

TEST(ResponseStore, PutGetRoundTrip) {
    TempDir dir;
    ResponseStore store(dir.path());
    EXPECT_FALSE(store.get("llm", "key").has_value());
    store.put("llm", "key", {{"text", "hello"}});
    auto got = store.get("llm", "key");
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(got->at("text"), "hello");
    EXPECT_FALSE(store.get("search", "key").has_value());
}

TEST(Keys, StableAndDistinct) {
    CompletionRequest a{"prompt", true, 1024, 0.0};
    CompletionRequest b{"prompt", false, 1024, 0.0};
    EXPECT_EQ(completion_key(a), completion_key(a));
    EXPECT_NE(completion_key(a), completion_key(b));
    EXPECT_NE(search_key("q", 5), search_key("q", 6));
    EXPECT_NE(page_key("https://a.test/x"), page_key("https://a.test/y"));
}

TEST(Urls, Validation) {
    EXPECT_TRUE(is_valid_url("https://example.com/a?b=c"));
    EXPECT_TRUE(is_valid_url("http://example.com"));
    EXPECT_FALSE(is_valid_url("ftp://example.com"));
    EXPECT_FALSE(is_valid_url("https://"));
    EXPECT_FALSE(is_valid_url("not a url"));
    EXPECT_FALSE(is_valid_url("https://exa mple.com"));
}

TEST(Fixtures, ServeRecordedResponses) {
    TempDir dir;
    auto store = std::make_shared<ResponseStore>(dir.path());
    const CompletionRequest request{"Say hi", true, 1024, 0.0};
    const CompletionResult result{"hi", std::vector<TokenLogprob>{{"hi", -0.1}}, 2, 1};
    put_completion_fixture(*store, request, result);
    put_search_fixture(*store, "q", 2, {{"T", "https://a.test/1", "s"}});
    put_page_fixture(*store, "https://a.test/1", "Body text.");

    FixtureLlm llm(store);
    EXPECT_EQ(llm.complete(request), result);
    FixtureSearch search(store);
    EXPECT_EQ(search.search("q", 2).size(), 1u);
    FixtureReader reader(store);
    EXPECT_EQ(reader.read_page("https://a.test/1"), "Body text.");
    EXPECT_THROW(reader.read_page("https://a.test/missing"), BackendError);
}

TEST(Fixtures, ErrorDocuments) {
    TempDir dir;
    auto store = std::make_shared<ResponseStore>(dir.path());
    put_error_fixture(*store, kPageKind, page_key("https://a.test/t"), "timeout", true);
    put_error_fixture(*store, kPageKind, page_key("https://a.test/p"), "gone", false);
    FixtureReader reader(store);
    EXPECT_THROW(reader.read_page("https://a.test/t"), TransientBackendError);
    try {
        reader.read_page("https://a.test/p");
        FAIL();
    } catch (const TransientBackendError&) {
        FAIL() << "permanent error surfaced as transient";
    } catch (const BackendError&) {
    }
}

TEST(BackendClient, RetriesTransientThenSucceeds) {
    auto llm = std::make_shared<CountingLlm>(2);
    std::vector<std::chrono::milliseconds> sleeps;
    BackendClient client(llm, nullptr, nullptr, recording_policy(sleeps));
    CostLedger ledger;
    const auto outcome = client.complete({"p", false, 10, 0.0}, CallRole::Verifier, ledger);
    EXPECT_EQ(outcome.attempts, 3);
    EXPECT_EQ(llm->calls, 3);
    const auto t = ledger.totals();
    EXPECT_EQ(t.failures, 2u);
    EXPECT_EQ(t.verifier_calls, 1u);
    EXPECT_EQ(sleeps, (std::vector<std::chrono::milliseconds>{std::chrono::milliseconds{100},
                                                               std::chrono::milliseconds{200}}));
}

TEST(BackendClient, GivesUpAfterCap) {
    auto llm = std::make_shared<CountingLlm>(10);
    std::vector<std::chrono::milliseconds> sleeps;
    BackendClient client(llm, nullptr, nullptr, recording_policy(sleeps));
    CostLedger ledger;
    try {
        client.complete({"p", false, 10, 0.0}, CallRole::Extractor, ledger);
        FAIL();
    } catch (const BackendError& e) {
        EXPECT_EQ(e.attempts(), 3);
    }
    EXPECT_EQ(llm->calls, 3);
    EXPECT_EQ(ledger.totals().failures, 3u);
    EXPECT_EQ(ledger.totals().extractor_calls, 0u);
}

TEST(BackendClient, PermanentErrorsAreNotRetried) {
    auto llm = std::make_shared<CountingLlm>(0, true);
    std::vector<std::chrono::milliseconds> sleeps;
    BackendClient client(llm, nullptr, nullptr, recording_policy(sleeps));
    CostLedger ledger;
    EXPECT_THROW(client.complete({"p", false, 10, 0.0}, CallRole::Extractor, ledger), BackendError);
    EXPECT_EQ(llm->calls, 1);
    EXPECT_TRUE(sleeps.empty());
    EXPECT_EQ(ledger.totals().failures, 1u);
}

TEST(BackendClient, JitterStaysInBounds) {
    auto llm = std::make_shared<CountingLlm>(2);
    std::vector<std::chrono::milliseconds> sleeps;
    BackendClient client(llm, nullptr, nullptr, recording_policy(sleeps, 0.25));
    CostLedger ledger;
    client.complete({"p", false, 10, 0.0}, CallRole::Verifier, ledger);
    ASSERT_EQ(sleeps.size(), 2u);
    EXPECT_GE(sleeps[0].count(), 75);
    EXPECT_LE(sleeps[0].count(), 125);
    EXPECT_GE(sleeps[1].count(), 150);
    EXPECT_LE(sleeps[1].count(), 250);
}

TEST(BackendClient, CacheHitsCountOnlyCacheHits) {
    TempDir dir;
    auto cache = std::make_shared<ResponseStore>(dir.path());
    auto llm = std::make_shared<CountingLlm>(0);
    BackendClient client(llm, nullptr, nullptr, testing::instant_retry(), cache);
    CostLedger first;
    client.complete({"p", false, 10, 0.0}, CallRole::Verifier, first);
    CostLedger second;
    const auto outcome = client.complete({"p", false, 10, 0.0}, CallRole::Verifier, second);
    EXPECT_TRUE(outcome.from_cache);
    EXPECT_EQ(llm->calls, 1);
    EXPECT_EQ(first.totals().verifier_calls, 1u);
    LedgerTotals expected;
    expected.cache_hits = 1;
    EXPECT_EQ(second.totals(), expected);
}

TEST(BackendClient, SearchFiltersAndCounts) {
    auto search = std::make_shared<ScriptedSearch>([](std::string_view, std::size_t) {
        return std::vector<SearchHit>{{"a", "https://a.test/1", ""},
                                      {"dup", "https://a.test/1", ""},
                                      {"bad", "javascript:alert(1)", ""},
                                      {"b", "https://b.test/2", ""},
                                      {"c", "https://c.test/3", ""}};
    });
    BackendClient client(nullptr, search, nullptr, testing::instant_retry());
    CostLedger ledger;
    const auto hits = client.search("query", 2, ledger);
    ASSERT_EQ(hits.size(), 2u);
    EXPECT_EQ(hits[0].url, "https://a.test/1");
    EXPECT_EQ(hits[1].url, "https://b.test/2");
    EXPECT_EQ(ledger.totals().search_queries, 2u);
    EXPECT_THROW(client.search("", 2, ledger), ConfigError);
    EXPECT_THROW(client.search("q", 0, ledger), ConfigError);
}

TEST(BackendClient, ReaderExceptionsBecomeBackendErrors) {
    auto reader = std::make_shared<ScriptedReader>([](std::string_view) -> std::string {
        throw std::runtime_error("parser blew up");
    });
    BackendClient client(nullptr, nullptr, reader, testing::instant_retry());
    CostLedger ledger;
    EXPECT_THROW(client.read_page("https://a.test/", ledger), BackendError);
    EXPECT_EQ(ledger.totals().failures, 1u);
    EXPECT_EQ(ledger.totals().pages_fetched, 0u);
}

TEST(Recording, WritesFixturesThatReplay) {
    TempDir dir;
    auto store = std::make_shared<ResponseStore>(dir.path());
    auto live = std::make_shared<CountingLlm>(0);
    RecordingLlm recorder(live, store);
    const CompletionRequest request{"hello", false, 10, 0.0};
    const auto recorded = recorder.complete(request);
    FixtureLlm replay(store);
    EXPECT_EQ(replay.complete(request), recorded);
}

TEST(ScriptedLlm, ExactPromptBeforeFallback) {
    ScriptedLlm llm([](const CompletionRequest&) { return CompletionResult{"fallback", std::nullopt, 0, 0}; });
    llm.add("known", {"scripted", std::nullopt, 0, 0});
    EXPECT_EQ(llm.complete({"known", false, 1, 0}).text, "scripted");
    EXPECT_EQ(llm.complete({"other", false, 1, 0}).text, "fallback");
    ScriptedLlm strict;
    EXPECT_THROW(strict.complete({"x", false, 1, 0}), BackendError);
}

}  // namespace
}  // namespace veracity
