#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "veracity/accounting.hpp"
#include "veracity/extraction.hpp"
#include "veracity/scoring.hpp"
#include "veracity/verification.hpp"

namespace veracity {

enum class RecordStatus { complete, failed };

std::string_view to_string(RecordStatus status);

struct ChunkSummary {
    std::size_t index = 0;
    std::size_t first_sentence = 0;
    std::size_t last_sentence = 0;
    std::string text;

    bool operator==(const ChunkSummary&) const = default;
};

/// Everything known about one evaluated response. `tally` always equals the
/// category counts over `claims`, and `score` is reproducible from `tally`
/// and `score.config`.
struct EvaluationRecord {
    std::string id;
    std::string question;
    std::string response;
    std::string benchmark_tag;
    RecordStatus status = RecordStatus::complete;
    std::optional<std::string> error;

    std::size_t sentence_count = 0;
    std::vector<ChunkSummary> chunks;
    std::vector<VerifiedClaim> claims;
    std::vector<DuplicateClaim> duplicates;
    std::vector<ParseWarning> parse_warnings;
    std::vector<std::string> warnings;

    ClaimTally tally;
    FactualityScore score;
    LedgerTotals ledger;
    PipelineParams params;
    ReconcileReport reconcile;

    nlohmann::json config;
    std::string started_at;
    std::string finished_at;
};

void to_json(nlohmann::json& j, const EvaluationRecord& record);
void from_json(const nlohmann::json& j, EvaluationRecord& record);

/// SHA-256 of the record's canonical JSON without timestamps and wall time.
std::string record_digest(const EvaluationRecord& record);

}  // namespace veracity
