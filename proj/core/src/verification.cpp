#include "veracity/verification.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <stdexcept>

#include "veracity/prompt_templates.hpp"

namespace veracity {

namespace {

std::string normalize_label(std::string_view text) {
    std::string out;
    bool pending_space = false;
    for (char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (std::isspace(c) || c == '_') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    return text;
}

bool starts_with_ci(std::string_view text, std::string_view prefix) {
    if (text.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[i])) != std::tolower(static_cast<unsigned char>(prefix[i]))) {
            return false;
        }
    }
    return true;
}

bool ends_with_ci(std::string_view text, std::string_view suffix) {
    return text.size() >= suffix.size() && starts_with_ci(text.substr(text.size() - suffix.size()), suffix);
}

}  // namespace

std::string_view to_string(VerificationLabel label) {
    switch (label) {
        case VerificationLabel::Supported: return "supported";
        case VerificationLabel::Refuted: return "refuted";
        case VerificationLabel::ConflictingEvidence: return "conflicting evidence";
        case VerificationLabel::NotEnoughEvidence: return "not enough evidence";
        case VerificationLabel::Unverifiable: return "unverifiable";
    }
    return "not enough evidence";
}

std::optional<VerificationLabel> parse_verification_label(std::string_view text) {
    const auto norm = normalize_label(text);
    for (auto label : {VerificationLabel::Supported, VerificationLabel::Refuted, VerificationLabel::ConflictingEvidence,
                       VerificationLabel::NotEnoughEvidence, VerificationLabel::Unverifiable}) {
        if (norm == to_string(label)) return label;
    }
    return std::nullopt;
}

std::string_view to_string(FinalCategory category) {
    switch (category) {
        case FinalCategory::Supported: return "supported";
        case FinalCategory::NonSupported: return "non_supported";
        case FinalCategory::Irrelevant: return "irrelevant";
        case FinalCategory::Dropped: return "dropped";
    }
    return "non_supported";
}

std::optional<FinalCategory> parse_final_category(std::string_view text) {
    for (auto c : {FinalCategory::Supported, FinalCategory::NonSupported, FinalCategory::Irrelevant,
                   FinalCategory::Dropped}) {
        if (text == to_string(c)) return c;
    }
    return std::nullopt;
}

std::string_view to_string(Route route) { return route == Route::Gated ? "gated" : "evidence_verified"; }

std::optional<Route> parse_route(std::string_view text) {
    if (text == "gated") return Route::Gated;
    if (text == "evidence_verified") return Route::EvidenceVerified;
    return std::nullopt;
}

std::string render_verification_prompt(std::string_view claim_text, std::span<const EvidenceChunk> evidence) {
    std::string prompt(prompts::kVerificationPreamble);
    prompt += "Claim: ";
    prompt += claim_text;
    prompt += "\nSearched Results: ";
    if (evidence.empty()) {
        prompt += kNoEvidenceBlock;
    }
    for (std::size_t i = 0; i < evidence.size(); ++i) {
        if (i > 0) prompt += "\n\n";
        prompt += "Evidence " + std::to_string(i + 1) + "\nSource Title: ";
        prompt += evidence[i].source_title;
        prompt += "\nContent: ";
        prompt += evidence[i].text;
    }
    prompt += "\n\nReasoning:";
    return prompt;
}

std::optional<VerifierVerdict> parse_verification_output(std::string_view raw) {
    static const std::regex marker(R"(###\s*([A-Za-z _-]+?)\s*###)");
    const std::string text(raw);
    std::optional<VerifierVerdict> verdict;
    std::size_t label_begin = 0;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), marker); it != std::sregex_iterator(); ++it) {
        if (auto label = parse_verification_label((*it)[1].str())) {
            verdict = VerifierVerdict{{}, *label};
            label_begin = static_cast<std::size_t>(it->position(0));
        }
    }
    if (!verdict) return std::nullopt;

    auto reasoning = trim(std::string_view(text).substr(0, label_begin));
    if (ends_with_ci(reasoning, "decision:")) reasoning = trim(reasoning.substr(0, reasoning.size() - 9));
    if (starts_with_ci(reasoning, "reasoning:")) reasoning = trim(reasoning.substr(10));
    verdict->reasoning = std::string(reasoning);
    return verdict;
}

FinalCategory map_to_final(Route route,
                           std::optional<PreVerificationLabel> pre_label,
                           std::optional<VerificationLabel> verification_label) {
    if (route == Route::Gated) {
        if (!pre_label) throw std::logic_error("gated claim without a pre-verification label");
        switch (*pre_label) {
            case PreVerificationLabel::Supported: return FinalCategory::Supported;
            case PreVerificationLabel::NonSupported: return FinalCategory::NonSupported;
            case PreVerificationLabel::Irrelevant: return FinalCategory::Irrelevant;
            default: throw std::logic_error("gated claim with an indefinite label");
        }
    }
    if (!verification_label) throw std::logic_error("evidence-verified claim without a verification label");
    switch (*verification_label) {
        case VerificationLabel::Supported: return FinalCategory::Supported;
        case VerificationLabel::Unverifiable: return FinalCategory::Dropped;
        default: return FinalCategory::NonSupported;
    }
}

VerifiedClaim verdict_for_gated(const AtomicClaim& claim) {
    VerifiedClaim out;
    out.claim = claim;
    out.route = Route::Gated;
    out.final_category = map_to_final(Route::Gated, claim.pre_label, std::nullopt);
    return out;
}

VerifiedClaim verdict_for_evidence(const AtomicClaim& claim,
                                   const std::optional<VerifierVerdict>& parsed,
                                   std::vector<EvidenceRef> evidence_used,
                                   std::vector<std::string> errors) {
    VerifiedClaim out;
    out.claim = claim;
    out.route = Route::EvidenceVerified;
    out.evidence_used = std::move(evidence_used);
    out.errors = std::move(errors);
    if (parsed) {
        out.verification_label = parsed->label;
        out.reasoning = parsed->reasoning;
    } else {
        out.verification_label = VerificationLabel::NotEnoughEvidence;
        out.errors.emplace_back("verifier output had no recognizable label; defaulted to not enough evidence");
    }
    out.final_category = map_to_final(Route::EvidenceVerified, std::nullopt, out.verification_label);
    return out;
}

}  // namespace veracity
