#pragma once

// JSON mappings for the domain types. Field names are the persisted schema of
// the run directory; changing them requires bumping kRecordSchemaVersion.

#include <nlohmann/json.hpp>

#include "veracity/accounting.hpp"
#include "veracity/extraction.hpp"
#include "veracity/retrieval.hpp"
#include "veracity/scoring.hpp"
#include "veracity/segmentation.hpp"
#include "veracity/verification.hpp"

namespace veracity {

inline constexpr int kRecordSchemaVersion = 1;

void to_json(nlohmann::json& j, const AtomicClaim& claim);
void from_json(const nlohmann::json& j, AtomicClaim& claim);

void to_json(nlohmann::json& j, const ParseWarning& warning);
void from_json(const nlohmann::json& j, ParseWarning& warning);

void to_json(nlohmann::json& j, const DuplicateClaim& duplicate);
void from_json(const nlohmann::json& j, DuplicateClaim& duplicate);

void to_json(nlohmann::json& j, const EvidenceRef& ref);
void from_json(const nlohmann::json& j, EvidenceRef& ref);

void to_json(nlohmann::json& j, const VerifiedClaim& claim);
void from_json(const nlohmann::json& j, VerifiedClaim& claim);

void to_json(nlohmann::json& j, const EvidenceChunk& chunk);
void from_json(const nlohmann::json& j, EvidenceChunk& chunk);

void to_json(nlohmann::json& j, const WebDocument& doc);
void from_json(const nlohmann::json& j, WebDocument& doc);

void to_json(nlohmann::json& j, const ScoredChunk& scored);
void from_json(const nlohmann::json& j, ScoredChunk& scored);

void to_json(nlohmann::json& j, const ClaimTally& tally);
void from_json(const nlohmann::json& j, ClaimTally& tally);

void to_json(nlohmann::json& j, const ScoreConfig& config);
void from_json(const nlohmann::json& j, ScoreConfig& config);

void to_json(nlohmann::json& j, const FactualityScore& score);
void from_json(const nlohmann::json& j, FactualityScore& score);

void to_json(nlohmann::json& j, const LedgerTotals& totals);
void from_json(const nlohmann::json& j, LedgerTotals& totals);

void to_json(nlohmann::json& j, const PipelineParams& params);
void from_json(const nlohmann::json& j, PipelineParams& params);

void to_json(nlohmann::json& j, const CallBudget& budget);

void to_json(nlohmann::json& j, const ReconcileReport& report);
void from_json(const nlohmann::json& j, ReconcileReport& report);

void to_json(nlohmann::json& j, const AlignmentDeltas& deltas);
void to_json(nlohmann::json& j, const AlignmentReport& report);

void to_json(nlohmann::json& j, const ChunkingConfig& config);
void from_json(const nlohmann::json& j, ChunkingConfig& config);

void to_json(nlohmann::json& j, const Bm25Params& params);
void from_json(const nlohmann::json& j, Bm25Params& params);

}  // namespace veracity
