#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "veracity/backends.hpp"
#include "veracity/http_backends.hpp"
#include "veracity/record.hpp"
#include "veracity/report.hpp"
#include "veracity/retrieval.hpp"
#include "veracity/serialization.hpp"
#include "veracity/scoring.hpp"

namespace veracity {

struct BackendSettings {
    /// "mock" serves fixtures from `fixtures_dir`; "http" talks to live services.
    std::string kind = "mock";
    std::string fixtures_dir;
    /// With kind == "http": also write every response into `fixtures_dir`.
    bool record = false;
    HttpEndpoint llm{"https://api.openai.com/v1", "OPENAI_API_KEY", "gpt-4o-mini", std::chrono::seconds{120}};
    HttpEndpoint search{"https://google.serper.dev", "SERPER_API_KEY", "", std::chrono::seconds{30}};
    HttpEndpoint reader{"https://r.jina.ai", "JINA_API_KEY", "", std::chrono::seconds{60}};
    /// Fetch pages directly and convert HTML locally instead of using the reader service.
    bool direct_fetch = false;
};

struct PipelineConfig {
    std::size_t stride = 28;
    double theta = 0.9;
    std::size_t results_per_claim = 10;
    std::size_t top_m = 10;
    ChunkingConfig evidence;
    Bm25Params bm25;
    ScoreConfig scoring;
    int max_tokens = 1024;
    double temperature = 0.0;

    std::size_t parallelism = 8;
    std::string cache_dir;
    RetryPolicy retry;
    BackendSettings backend;

    /// Throws ConfigError on the first violated precondition.
    void validate() const;

    /// Parameters that influence results. Execution settings (parallelism,
    /// cache, endpoints, retries) are left out so they never change records.
    nlohmann::json evaluation_snapshot() const;
};

nlohmann::json to_json(const PipelineConfig& config);
/// Overlays the fields present in `j` onto `base`. Stride accepts "max".
PipelineConfig config_from_json(const nlohmann::json& j, PipelineConfig base = {});
std::string config_digest(const PipelineConfig& config);

/// Builds the backend client described by `config.backend` and `config.cache_dir`.
std::unique_ptr<BackendClient> make_backend_client(const PipelineConfig& config);

struct ResponseInput {
    std::string id;
    std::string question;
    std::string response;
    std::string benchmark_tag;
};

/// JSON-lines rows {id, question, response, benchmark_tag?}. Malformed rows and
/// repeated ids are skipped and described in `warnings`.
std::vector<ResponseInput> load_inputs(std::string_view jsonl, std::vector<std::string>* warnings = nullptr);

using Clock = std::function<std::chrono::system_clock::time_point()>;

Clock system_clock();
Clock fixed_clock(std::chrono::system_clock::time_point at = {});

/// Bounds the number of concurrently running backend-bound tasks.
class WorkLimiter {
public:
    explicit WorkLimiter(std::size_t permits);

    class Permit {
    public:
        explicit Permit(WorkLimiter& limiter);
        ~Permit();
        Permit(const Permit&) = delete;
        Permit& operator=(const Permit&) = delete;

    private:
        WorkLimiter& limiter_;
    };

    std::size_t permits() const { return permits_; }

private:
    void acquire();
    void release();

    std::size_t permits_;
    std::size_t available_;
    std::mutex mutex_;
    std::condition_variable cv_;
};

/// Runs `body(i)` for i in [0, count) on up to `workers` threads. The first
/// exception thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body);

// Intermediate stage results. Each is persisted as soon as it exists so an
// interrupted run resumes without repeating completed backend calls.

struct ExtractionStage {
    std::string id;
    std::size_t sentence_count = 0;
    std::vector<ChunkSummary> chunks;
    std::vector<AtomicClaim> claims;
    std::vector<DuplicateClaim> duplicates;
    std::vector<ParseWarning> parse_warnings;
    std::vector<std::string> warnings;
    LedgerTotals ledger;
};

struct EvidenceStage {
    std::string id;
    std::string claim_id;
    std::vector<WebDocument> documents;
    std::vector<ScoredChunk> retrieved;
};

struct ClaimStage {
    std::string id;
    VerifiedClaim verdict;
    LedgerTotals ledger;
};

nlohmann::json to_json(const ExtractionStage& stage);
ExtractionStage extraction_stage_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EvidenceStage& stage);
nlohmann::json to_json(const ClaimStage& stage);
ClaimStage claim_stage_from_json(const nlohmann::json& j);

class StageSink {
public:
    virtual ~StageSink() = default;
    virtual void on_extraction(const ExtractionStage& stage) = 0;
    virtual void on_evidence(const EvidenceStage& stage) = 0;
    virtual void on_claim(const ClaimStage& stage) = 0;
};

struct ResumeState {
    std::optional<ExtractionStage> extraction;
    std::map<std::string, ClaimStage> claims;
};

/// Runs segmentation, chunked extraction, the confidence gate, per-claim
/// search/scrape/retrieval/verification and scoring for single responses.
class Evaluator {
public:
    Evaluator(PipelineConfig config, BackendClient& client, Clock clock = system_clock(),
              std::shared_ptr<WorkLimiter> limiter = nullptr);

    /// Never throws for backend trouble: an extraction outage yields a record
    /// with status failed, and per-claim failures are annotated on the claim.
    EvaluationRecord evaluate(const ResponseInput& input,
                              const ResumeState* resume = nullptr,
                              StageSink* sink = nullptr) const;

    const PipelineConfig& config() const { return config_; }

private:
    ExtractionStage extract(const ResponseInput& input, CostLedger& ledger) const;
    ClaimStage verify_claim(const std::string& response_id, const AtomicClaim& claim, StageSink* sink) const;
    std::chrono::milliseconds elapsed_since(std::chrono::system_clock::time_point start) const;

    PipelineConfig config_;
    BackendClient& client_;
    Clock clock_;
    std::shared_ptr<WorkLimiter> limiter_;
};

EvaluationRecord evaluate_response(std::string_view question, std::string_view response,
                                   const PipelineConfig& config, BackendClient& client,
                                   Clock clock = system_clock());

/// Recomputes tally and score of a record from its persisted claims.
void rescore_record(EvaluationRecord& record, const ScoreConfig& scoring);

// Batch runs over a run directory:
//   claims.jsonl  evidence.jsonl  verdicts.jsonl  records.jsonl  manifest.json

inline constexpr std::string_view kClaimsFile = "claims.jsonl";
inline constexpr std::string_view kEvidenceFile = "evidence.jsonl";
inline constexpr std::string_view kVerdictsFile = "verdicts.jsonl";
inline constexpr std::string_view kRecordsFile = "records.jsonl";
inline constexpr std::string_view kManifestFile = "manifest.json";
inline constexpr std::string_view kSessionFile = "session.json";

struct ResponseStatus {
    std::string status;  // "complete" | "failed"
    std::string record_digest;
    std::optional<std::string> error;

    bool operator==(const ResponseStatus&) const = default;
};

struct RunManifest {
    int schema_version = kRecordSchemaVersion;
    std::string run_id;
    std::string input_digest;
    std::string config_digest;
    std::map<std::string, ResponseStatus> responses;
    nlohmann::json aggregate;
    std::vector<std::string> warnings;
    std::string digest;

    nlohmann::json to_json() const;
    static RunManifest from_json(const nlohmann::json& j);
    /// SHA-256 over every field except `digest`.
    std::string compute_digest() const;
};

/// Thrown when BatchOptions::halt_after_barriers is reached; simulates the
/// process dying right after a durable write.
class HaltRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BatchOptions {
    std::optional<std::filesystem::path> ground_truth;
    Clock clock = system_clock();
    std::optional<std::size_t> halt_after_barriers;
};

struct BatchResult {
    RunManifest manifest;
    AggregateReport report;
    std::vector<EvaluationRecord> records;
    /// Calls made by this invocation only (zero for a fully resumed run).
    LedgerTotals session_ledger;
    std::size_t evaluated = 0;
    std::size_t resumed = 0;
};

/// Evaluates every response of `input` not yet complete in `run_dir`.
/// Throws ConfigError when `run_dir` belongs to a different input or config.
BatchResult run_batch(const std::filesystem::path& input, const std::filesystem::path& run_dir,
                      const PipelineConfig& config, BackendClient& client, const BatchOptions& options = {});

RunManifest load_manifest(const std::filesystem::path& run_dir);

/// Records of `run_dir` in id order, keeping the last complete line per id.
std::vector<EvaluationRecord> load_records(const std::filesystem::path& run_dir);

struct RescoreResult {
    std::vector<EvaluationRecord> records;
    AggregateReport report;
};

/// Re-scores persisted claims with `scoring`; never touches a backend or the
/// run directory. Ground truth K' overrides `scoring.k_target` per response.
RescoreResult rescore_run(const std::filesystem::path& run_dir, const ScoreConfig& scoring,
                          const std::optional<std::filesystem::path>& ground_truth = std::nullopt);

}  // namespace veracity
