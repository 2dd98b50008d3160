#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "veracity/segmentation.hpp"

namespace veracity {

/// Reference-free label the extractor attaches to each claim.
enum class PreVerificationLabel {
    Irrelevant,
    Supported,
    NonSupported,
    LikelySupported,
    LikelyNonSupported,
    Unsure,
};

/// Canonical upper-case spelling used in prompts ("LIKELY NON-SUPPORTED").
std::string_view to_string(PreVerificationLabel label);

/// Case-insensitive; surrounding whitespace ignored and internal whitespace
/// runs collapsed. Any other spelling yields nullopt.
std::optional<PreVerificationLabel> parse_pre_label(std::string_view text);

/// Supported, NonSupported and Irrelevant are definite; the rest express doubt.
bool is_definite(PreVerificationLabel label);

struct TokenLogprob {
    std::string token;
    double logprob = 0.0;

    bool operator==(const TokenLogprob&) const = default;
};

/// Half-open range of token positions inside a completion's logprob sequence.
struct TokenRange {
    std::size_t first = 0;
    std::size_t last = 0;

    bool empty() const { return last <= first; }
};

struct AtomicClaim {
    std::string claim_id;
    std::string text;
    std::size_t source_chunk = 0;
    std::size_t source_line = 0;  // 1-based line in the completion
    PreVerificationLabel pre_label = PreVerificationLabel::Unsure;
    std::optional<double> confidence;
    bool gated = false;

    bool operator==(const AtomicClaim&) const = default;
};

struct ParseWarning {
    std::size_t chunk = 0;
    std::size_t line = 0;
    std::string reason;

    bool operator==(const ParseWarning&) const = default;
};

struct ExtractionOutcome {
    std::vector<AtomicClaim> claims;
    std::vector<ParseWarning> parse_warnings;
    std::string raw_output;
};

/// The extraction preamble followed by the question and the chunk wrapped in
/// `<SOS>`/`<EOS>`. Deterministic.
std::string render_extraction_prompt(std::string_view question, const Chunk& chunk);

/// Stable claim identifier built from response id, chunk ordinal and output line.
std::string make_claim_id(std::string_view response_id, std::size_t chunk, std::size_t line);

/// Parses one extractor completion.
///
/// Lines of the form `- <claim> ###<LABEL>###` become claims, the literal
/// "No verifiable claim." and blank lines are skipped, and every other line is
/// reported as a warning. When `token_logprobs` is supplied the confidence of
/// each claim's label is computed from the tokens overlapping the label text.
///
/// Throws EmptyCompletionError when `raw` is empty or whitespace only.
ExtractionOutcome parse_extraction_output(std::string_view raw,
                                          const std::optional<std::vector<TokenLogprob>>& token_logprobs,
                                          std::string_view response_id = {},
                                          std::size_t chunk_index = 0);

/// Tokens whose character span overlaps [char_begin, char_end) of the text
/// obtained by concatenating all tokens.
TokenRange locate_token_range(std::span<const TokenLogprob> tokens,
                              std::size_t char_begin, std::size_t char_end);

/// exp(mean logprob) over `range`, i.e. the geometric-mean token probability.
/// nullopt when the range is empty or out of bounds.
std::optional<double> compute_label_confidence(std::span<const TokenLogprob> tokens, TokenRange range);

/// True iff the label is definite, a confidence is present and it strictly
/// exceeds `theta`. Throws ConfigError unless 0 <= theta <= 1.
bool passes_confidence_gate(const AtomicClaim& claim, double theta);

/// Sets `gated` on every claim from passes_confidence_gate.
void apply_confidence_gate(std::span<AtomicClaim> claims, double theta);

struct DuplicateClaim {
    std::string claim_id;
    std::string duplicate_of;
    std::string text;

    bool operator==(const DuplicateClaim&) const = default;
};

struct DedupResult {
    std::vector<AtomicClaim> kept;
    std::vector<DuplicateClaim> duplicates;
};

/// Drops exact duplicate claim texts, keeping the first occurrence.
DedupResult deduplicate_claims(std::vector<AtomicClaim> claims);

}  // namespace veracity
