#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "veracity/accounting.hpp"
#include "veracity/record.hpp"
#include "veracity/scoring.hpp"

namespace veracity {

struct GroupSummary {
    std::size_t responses = 0;
    std::size_t failed = 0;
    std::size_t no_claim_responses = 0;
    ClaimTally claims;
    /// Mean over completed responses with a defined precision.
    double mean_precision = 0.0;
    double mean_recall = 0.0;
    double mean_f1 = 0.0;
    LedgerTotals ledger;
};

struct AggregateReport {
    GroupSummary overall;
    std::map<std::string, GroupSummary> by_tag;
    std::size_t reconciled = 0;
    std::size_t reconcile_mismatches = 0;
    std::optional<AlignmentReport> alignment;
};

/// Groups by benchmark tag (untagged responses fall under "untagged") and
/// appends alignment deltas when ground truth is given.
AggregateReport aggregate(std::span<const EvaluationRecord> records,
                          const std::vector<GroundTruthRow>* truth = nullptr);

nlohmann::json to_json(const AggregateReport& report);

/// Plain-text tables for terminals.
std::string render_text(const AggregateReport& report);

}  // namespace veracity
