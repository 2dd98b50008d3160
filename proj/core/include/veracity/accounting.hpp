#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace veracity {

enum class CallRole { Extractor, Verifier };

/// Plain snapshot of ledger counters.
struct LedgerTotals {
    std::uint64_t extractor_calls = 0;
    std::uint64_t verifier_calls = 0;
    std::uint64_t search_queries = 0;
    std::uint64_t pages_fetched = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t failures = 0;
    std::uint64_t prompt_tokens = 0;
    std::uint64_t completion_tokens = 0;
    std::chrono::milliseconds wall_time{0};

    LedgerTotals& operator+=(const LedgerTotals& other);
    bool operator==(const LedgerTotals&) const = default;
};

LedgerTotals operator+(LedgerTotals lhs, const LedgerTotals& rhs);

/// Counters for every external call of a run or a part of one. Increments are
/// atomic, so one ledger may be shared across workers; totals() is meant to be
/// read once the workers touching the ledger have finished.
class CostLedger {
public:
    CostLedger() = default;
    CostLedger(const CostLedger&) = delete;
    CostLedger& operator=(const CostLedger&) = delete;

    void record_completion(CallRole role, std::uint64_t prompt_tokens, std::uint64_t completion_tokens);
    /// One issued search query accounts for the `results_requested` result
    /// slots it pays for.
    void record_search(std::uint64_t results_requested);
    void record_page_fetch();
    void record_cache_hit();
    void record_failure();
    void add_wall_time(std::chrono::milliseconds elapsed);
    void merge(const LedgerTotals& totals);

    LedgerTotals totals() const;

private:
    std::atomic<std::uint64_t> extractor_calls_{0};
    std::atomic<std::uint64_t> verifier_calls_{0};
    std::atomic<std::uint64_t> search_queries_{0};
    std::atomic<std::uint64_t> pages_fetched_{0};
    std::atomic<std::uint64_t> cache_hits_{0};
    std::atomic<std::uint64_t> failures_{0};
    std::atomic<std::uint64_t> prompt_tokens_{0};
    std::atomic<std::uint64_t> completion_tokens_{0};
    std::atomic<std::int64_t> wall_ms_{0};
};

enum class PipelineKind { fastfact, safe, veriscore, factscore };

std::string_view to_string(PipelineKind kind);
/// Throws ConfigError for unknown names.
PipelineKind parse_pipeline_kind(std::string_view name);

/// Complexity parameters of one evaluation: N sentences, M claims, k search
/// results per claim, p fraction of claims sent to evidence verification and
/// chunk stride w.
struct PipelineParams {
    std::uint64_t sentences = 0;
    std::uint64_t claims = 0;
    std::uint64_t results_per_claim = 1;
    double verify_fraction = 1.0;
    std::uint64_t stride = 1;

    void validate() const;
};

struct CallBudget {
    std::uint64_t extractor = 0;
    std::uint64_t searches = 0;
    std::uint64_t verifier = 0;
    std::uint64_t total_llm = 0;

    bool operator==(const CallBudget&) const = default;
};

/// Predicted extractor calls, search queries, verifier calls and total LLM
/// calls. Fractional terms (N/w, pM) are rounded up.
CallBudget predicted_calls(PipelineKind kind, const PipelineParams& params);

struct ReconcileItem {
    std::string counter;
    std::uint64_t observed = 0;
    std::uint64_t predicted = 0;
    bool match = false;
};

struct ReconcileReport {
    std::vector<ReconcileItem> items;
    /// True when no cache hits and no failures occurred, so observed counts must
    /// equal predictions exactly.
    bool exact_required = false;
    /// All items match, or exact match was not required.
    bool consistent = false;
    std::vector<std::string> notes;
};

/// Compares observed extractor calls, search queries and verifier calls with
/// the chunked, gated prediction for `params`.
ReconcileReport reconcile(const LedgerTotals& ledger, const PipelineParams& params);

/// Per-million-token prices for deriving monetary cost from a ledger.
struct TokenRates {
    double prompt_per_million = 0.0;
    double completion_per_million = 0.0;
};

double monetary_cost(const LedgerTotals& ledger, const TokenRates& rates);

}  // namespace veracity
