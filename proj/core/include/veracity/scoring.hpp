#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "veracity/verification.hpp"

namespace veracity {

struct ClaimTally {
    std::size_t supported = 0;
    std::size_t non_supported = 0;
    std::size_t irrelevant = 0;
    std::size_t dropped = 0;

    /// Predicted count of valid claims, S + N. Irrelevant and dropped claims are
    /// excluded.
    std::size_t valid() const { return supported + non_supported; }
    std::size_t total() const { return supported + non_supported + irrelevant + dropped; }

    void add(FinalCategory category);
    bool operator==(const ClaimTally&) const = default;
};

ClaimTally tally(std::span<const VerifiedClaim> claims);

enum class ScoreMode { fastfact, safe };

std::string_view to_string(ScoreMode mode);
ScoreMode parse_score_mode(std::string_view name);

struct ScoreConfig {
    double gamma = 0.3;
    ScoreMode mode = ScoreMode::fastfact;
    /// K' (per-response ground-truth valid claim count) in fastfact mode, the
    /// fixed K in safe mode.
    std::size_t k_target = 10;

    void validate() const;
    bool operator==(const ScoreConfig&) const = default;
};

struct FactualityScore {
    std::optional<double> precision;
    double recall = 0.0;
    double f1 = 0.0;
    ClaimTally tally;
    ScoreConfig config;
    bool no_verifiable_claims = false;

    bool operator==(const FactualityScore&) const = default;
};

/// S / (S + N); nullopt when there are no valid claims.
std::optional<double> precision(const ClaimTally& tally);

/// min(S / K, 1). Throws ConfigError when k == 0.
double recall_safe(std::size_t supported, std::size_t k);

/// 2 / (1 + exp(gamma * |S - K'|)). Symmetric penalty around K'.
/// Throws ConfigError when k_prime == 0 or gamma <= 0.
double recall_fastfact(std::size_t supported, std::size_t k_prime, double gamma);

/// Harmonic mean; 0 when precision is undefined or P + R == 0.
double f1(std::optional<double> precision, double recall);

FactualityScore score(const ClaimTally& tally, const ScoreConfig& config);

// Alignment against ground-truth annotations.

struct GroundTruthRow {
    std::string id;
    std::string benchmark_tag;
    std::size_t k_prime = 0;
    std::size_t supported = 0;
    std::size_t non_supported = 0;
    std::size_t irrelevant = 0;
    double f1 = 0.0;
};

inline constexpr int kGroundTruthSchemaVersion = 1;

/// JSON-lines rows {id, benchmark_tag, K_prime, S_true, N_true, I_true, f1_true}.
/// Malformed lines are reported in `warnings` and skipped.
std::vector<GroundTruthRow> load_ground_truth(std::string_view jsonl, std::vector<std::string>* warnings = nullptr);

struct PredictedRow {
    std::string id;
    ClaimTally tally;
    double f1 = 0.0;
};

struct AlignmentDeltas {
    std::size_t responses = 0;
    double k_prime = 0.0;
    double f1 = 0.0;
    double supported = 0.0;
    double unsupported = 0.0;
    double irrelevant = 0.0;

    bool operator==(const AlignmentDeltas&) const = default;
};

struct AlignmentReport {
    AlignmentDeltas overall;
    std::map<std::string, AlignmentDeltas> by_tag;
    std::vector<std::string> unmatched_ids;
    std::vector<std::string> warnings;
};

/// Mean absolute differences between predictions and ground truth, overall and
/// per benchmark tag. Ids present on only one side are listed and excluded.
AlignmentReport alignment_metrics(std::span<const PredictedRow> predicted, std::span<const GroundTruthRow> truth);

}  // namespace veracity
