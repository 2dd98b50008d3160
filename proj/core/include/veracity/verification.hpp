#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "veracity/extraction.hpp"
#include "veracity/retrieval.hpp"

namespace veracity {

enum class VerificationLabel { Supported, Refuted, ConflictingEvidence, NotEnoughEvidence, Unverifiable };

/// Lowercase prompt spelling, e.g. "not enough evidence".
std::string_view to_string(VerificationLabel label);
std::optional<VerificationLabel> parse_verification_label(std::string_view text);

enum class FinalCategory { Supported, NonSupported, Irrelevant, Dropped };

std::string_view to_string(FinalCategory category);
std::optional<FinalCategory> parse_final_category(std::string_view text);

enum class Route { Gated, EvidenceVerified };

std::string_view to_string(Route route);
std::optional<Route> parse_route(std::string_view text);

struct EvidenceRef {
    std::string source_url;
    std::size_t chunk_index = 0;

    bool operator==(const EvidenceRef&) const = default;
};

struct VerifiedClaim {
    AtomicClaim claim;
    Route route = Route::EvidenceVerified;
    std::optional<VerificationLabel> verification_label;
    FinalCategory final_category = FinalCategory::NonSupported;
    std::optional<std::string> reasoning;
    std::vector<EvidenceRef> evidence_used;
    std::vector<std::string> errors;

    bool operator==(const VerifiedClaim&) const = default;
};

/// Placeholder rendered in place of evidence blocks when nothing was retrieved.
inline constexpr std::string_view kNoEvidenceBlock = "No evidence retrieved.";

/// Verification preamble, then the claim, numbered evidence blocks
/// ("Evidence i" / "Source Title: ..." / "Content: ...") and a "Reasoning:" stub.
std::string render_verification_prompt(std::string_view claim_text, std::span<const EvidenceChunk> evidence);

struct VerifierVerdict {
    std::string reasoning;
    VerificationLabel label = VerificationLabel::NotEnoughEvidence;
};

/// The last `###...###` span naming one of the five labels wins; the reasoning
/// is the text before it with any "Reasoning:"/"Decision:" scaffolding removed.
/// nullopt when no span names a label.
std::optional<VerifierVerdict> parse_verification_output(std::string_view raw);

/// Gated claims keep their pre-verification verdict; evidence verdicts map
/// supported -> supported, unverifiable -> dropped and everything else to
/// non_supported. Throws std::logic_error for a gated claim whose label is not
/// definite or for a missing label on either route.
FinalCategory map_to_final(Route route,
                           std::optional<PreVerificationLabel> pre_label,
                           std::optional<VerificationLabel> verification_label);

/// Verdict for a claim that passed the confidence gate.
VerifiedClaim verdict_for_gated(const AtomicClaim& claim);

/// Verdict for a claim checked against evidence. A missing parse result falls
/// back to not_enough_evidence with an error annotation.
VerifiedClaim verdict_for_evidence(const AtomicClaim& claim,
                                   const std::optional<VerifierVerdict>& parsed,
                                   std::vector<EvidenceRef> evidence_used,
                                   std::vector<std::string> errors = {});

}  // namespace veracity
