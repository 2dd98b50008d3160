#include "veracity/accounting.hpp"

#include <cmath>

#include "veracity/errors.hpp"

namespace veracity {
namespace {

// Ceil of a non-negative real that is mathematically an integer more often
// than not (p * M with p = gated / M); absorbs rounding noise first.
std::uint64_t ceil_count(double value) {
    const double nearest = std::round(value);
    if (std::fabs(value - nearest) < 1e-9) return static_cast<std::uint64_t>(nearest);
    return static_cast<std::uint64_t>(std::ceil(value));
}

std::uint64_t ceil_div(std::uint64_t n, std::uint64_t d) { return n / d + (n % d != 0 ? 1 : 0); }

}  // namespace

LedgerTotals& LedgerTotals::operator+=(const LedgerTotals& other) {
    extractor_calls += other.extractor_calls;
    verifier_calls += other.verifier_calls;
    search_queries += other.search_queries;
    pages_fetched += other.pages_fetched;
    cache_hits += other.cache_hits;
    failures += other.failures;
    prompt_tokens += other.prompt_tokens;
    completion_tokens += other.completion_tokens;
    wall_time += other.wall_time;
    return *this;
}

LedgerTotals operator+(LedgerTotals lhs, const LedgerTotals& rhs) { return lhs += rhs; }

void CostLedger::record_completion(CallRole role, std::uint64_t prompt_tokens, std::uint64_t completion_tokens) {
    (role == CallRole::Extractor ? extractor_calls_ : verifier_calls_).fetch_add(1, std::memory_order_relaxed);
    prompt_tokens_.fetch_add(prompt_tokens, std::memory_order_relaxed);
    completion_tokens_.fetch_add(completion_tokens, std::memory_order_relaxed);
}

void CostLedger::record_search(std::uint64_t results_requested) {
    search_queries_.fetch_add(results_requested, std::memory_order_relaxed);
}

void CostLedger::record_page_fetch() { pages_fetched_.fetch_add(1, std::memory_order_relaxed); }
void CostLedger::record_cache_hit() { cache_hits_.fetch_add(1, std::memory_order_relaxed); }
void CostLedger::record_failure() { failures_.fetch_add(1, std::memory_order_relaxed); }

void CostLedger::add_wall_time(std::chrono::milliseconds elapsed) {
    wall_ms_.fetch_add(elapsed.count(), std::memory_order_relaxed);
}

void CostLedger::merge(const LedgerTotals& t) {
    extractor_calls_.fetch_add(t.extractor_calls, std::memory_order_relaxed);
    verifier_calls_.fetch_add(t.verifier_calls, std::memory_order_relaxed);
    search_queries_.fetch_add(t.search_queries, std::memory_order_relaxed);
    pages_fetched_.fetch_add(t.pages_fetched, std::memory_order_relaxed);
    cache_hits_.fetch_add(t.cache_hits, std::memory_order_relaxed);
    failures_.fetch_add(t.failures, std::memory_order_relaxed);
    prompt_tokens_.fetch_add(t.prompt_tokens, std::memory_order_relaxed);
    completion_tokens_.fetch_add(t.completion_tokens, std::memory_order_relaxed);
    wall_ms_.fetch_add(t.wall_time.count(), std::memory_order_relaxed);
}

LedgerTotals CostLedger::totals() const {
    LedgerTotals t;
    t.extractor_calls = extractor_calls_.load();
    t.verifier_calls = verifier_calls_.load();
    t.search_queries = search_queries_.load();
    t.pages_fetched = pages_fetched_.load();
    t.cache_hits = cache_hits_.load();
    t.failures = failures_.load();
    t.prompt_tokens = prompt_tokens_.load();
    t.completion_tokens = completion_tokens_.load();
    t.wall_time = std::chrono::milliseconds{wall_ms_.load()};
    return t;
}

std::string_view to_string(PipelineKind kind) {
    switch (kind) {
        case PipelineKind::fastfact: return "fastfact";
        case PipelineKind::safe: return "safe";
        case PipelineKind::veriscore: return "veriscore";
        case PipelineKind::factscore: return "factscore";
    }
    return "fastfact";
}

PipelineKind parse_pipeline_kind(std::string_view name) {
    for (auto kind : {PipelineKind::fastfact, PipelineKind::safe, PipelineKind::veriscore, PipelineKind::factscore}) {
        if (name == to_string(kind)) return kind;
    }
    throw ConfigError("unknown pipeline '" + std::string(name) + "' (expected fastfact, safe, veriscore or factscore)");
}

void PipelineParams::validate() const {
    if (!(verify_fraction >= 0.0 && verify_fraction <= 1.0)) throw ConfigError("p must lie in [0, 1]");
    if (stride < 1) throw ConfigError("w must be at least 1");
    if (results_per_claim < 1) throw ConfigError("k must be at least 1");
}

CallBudget predicted_calls(PipelineKind kind, const PipelineParams& params) {
    params.validate();
    const auto n = params.sentences;
    const auto m = params.claims;
    const auto k = params.results_per_claim;
    CallBudget budget;
    switch (kind) {
        case PipelineKind::factscore:
            budget = {n, 0, m, n + m};
            break;
        case PipelineKind::veriscore:
            budget = {n, k * m, m, n + m};
            break;
        case PipelineKind::safe:
            // Extraction, revision and relevance per claim plus k query-generation calls.
            budget = {n + 2 * m + k * m, k * m, m, n + (3 + k) * m};
            break;
        case PipelineKind::fastfact: {
            const auto extractor = ceil_div(n, params.stride);
            const auto verified = ceil_count(params.verify_fraction * static_cast<double>(m));
            budget = {extractor, verified * k, verified, extractor + verified};
            break;
        }
    }
    return budget;
}

ReconcileReport reconcile(const LedgerTotals& ledger, const PipelineParams& params) {
    const auto predicted = predicted_calls(PipelineKind::fastfact, params);
    ReconcileReport report;
    report.items = {
        {"extractor_calls", ledger.extractor_calls, predicted.extractor, ledger.extractor_calls == predicted.extractor},
        {"search_queries", ledger.search_queries, predicted.searches, ledger.search_queries == predicted.searches},
        {"verifier_calls", ledger.verifier_calls, predicted.verifier, ledger.verifier_calls == predicted.verifier},
    };
    report.exact_required = ledger.cache_hits == 0 && ledger.failures == 0;
    bool all_match = true;
    for (const auto& item : report.items) {
        if (!item.match) {
            all_match = false;
            report.notes.push_back(item.counter + ": observed " + std::to_string(item.observed) + ", predicted " +
                                   std::to_string(item.predicted));
        }
    }
    report.consistent = all_match || !report.exact_required;
    if (ledger.cache_hits > 0) {
        report.notes.push_back("cache mode: " + std::to_string(ledger.cache_hits) +
                               " responses served from cache are not counted as calls");
    }
    if (ledger.failures > 0) {
        report.notes.push_back(std::to_string(ledger.failures) + " failed backend attempts");
    }
    const auto expected_pages = predicted.searches;
    if (ledger.pages_fetched < expected_pages) {
        report.notes.push_back("pages_fetched " + std::to_string(ledger.pages_fetched) + " below k*pM = " +
                               std::to_string(expected_pages) + " (failed or missing pages)");
    }
    return report;
}

double monetary_cost(const LedgerTotals& ledger, const TokenRates& rates) {
    return static_cast<double>(ledger.prompt_tokens) * rates.prompt_per_million / 1e6 +
           static_cast<double>(ledger.completion_tokens) * rates.completion_per_million / 1e6;
}

}  // namespace veracity
