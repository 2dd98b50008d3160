#include "veracity/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>
#include <variant>

#include "veracity/errors.hpp"
#include "veracity/prompt_templates.hpp"

namespace veracity {
namespace {

constexpr std::string_view kMarker = "###";
constexpr std::string_view kNoClaims = "No verifiable claim.";

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

// Uppercase with whitespace runs collapsed to one space.
std::string normalize_label(std::string_view text) {
    std::string out;
    bool pending_space = false;
    for (char c : trim(text)) {
        if (is_space(c)) {
            pending_space = true;
            continue;
        }
        if (pending_space && !out.empty()) out.push_back(' ');
        pending_space = false;
        out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

constexpr PreVerificationLabel kAllLabels[] = {
    PreVerificationLabel::Irrelevant,      PreVerificationLabel::Supported,
    PreVerificationLabel::NonSupported,    PreVerificationLabel::LikelySupported,
    PreVerificationLabel::LikelyNonSupported, PreVerificationLabel::Unsure,
};

struct ClaimLine {
    std::string_view text;
    std::size_t label_begin = 0;  // offsets relative to the line
    std::size_t label_end = 0;
    PreVerificationLabel label = PreVerificationLabel::Unsure;
};

// Either a parsed claim line or the reason it was rejected.
std::variant<ClaimLine, std::string> parse_claim_line(std::string_view line) {
    if (line.empty() || line.front() != '-') return std::string("line does not start with '- '");
    if (line.size() < 2 * kMarker.size() || line.substr(line.size() - kMarker.size()) != kMarker) {
        return std::string("missing ###LABEL### marker at end of line");
    }
    const std::size_t close = line.size() - kMarker.size();
    const std::size_t open = close >= kMarker.size() ? line.rfind(kMarker, close - kMarker.size()) : std::string_view::npos;
    if (open == std::string_view::npos || open == 0) return std::string("unbalanced ### markers");

    ClaimLine parsed;
    const auto inner = line.substr(open + kMarker.size(), close - open - kMarker.size());
    const auto label = parse_pre_label(inner);
    if (!label) return "unknown label '" + std::string(trim(inner)) + "'";
    parsed.label = *label;

    const auto trimmed_inner = trim(inner);
    parsed.label_begin = static_cast<std::size_t>(trimmed_inner.data() - line.data());
    parsed.label_end = parsed.label_begin + trimmed_inner.size();

    parsed.text = trim(line.substr(1, open - 1));
    if (parsed.text.empty()) return std::string("empty claim text");
    if (parsed.text.find(kMarker) != std::string_view::npos) return std::string("### marker inside claim text");
    return parsed;
}

}  // namespace

std::string_view to_string(PreVerificationLabel label) {
    switch (label) {
        case PreVerificationLabel::Irrelevant: return "IRRELEVANT";
        case PreVerificationLabel::Supported: return "SUPPORTED";
        case PreVerificationLabel::NonSupported: return "NON-SUPPORTED";
        case PreVerificationLabel::LikelySupported: return "LIKELY SUPPORTED";
        case PreVerificationLabel::LikelyNonSupported: return "LIKELY NON-SUPPORTED";
        case PreVerificationLabel::Unsure: return "UNSURE";
    }
    return "UNSURE";
}

std::optional<PreVerificationLabel> parse_pre_label(std::string_view text) {
    const auto normalized = normalize_label(text);
    for (const auto label : kAllLabels) {
        if (normalized == to_string(label)) return label;
    }
    return std::nullopt;
}

bool is_definite(PreVerificationLabel label) {
    return label == PreVerificationLabel::Supported || label == PreVerificationLabel::NonSupported ||
           label == PreVerificationLabel::Irrelevant;
}

std::string render_extraction_prompt(std::string_view question, const Chunk& chunk) {
    std::string prompt;
    prompt.reserve(prompts::kExtractionPreamble.size() + question.size() + chunk.text.size() + 48);
    prompt.append(prompts::kExtractionPreamble);
    prompt.append("Question: ").append(question).append("\n");
    prompt.append("Response: <SOS>").append(chunk.text).append("<EOS>\n");
    prompt.append("Claims:\n");
    return prompt;
}

std::string make_claim_id(std::string_view response_id, std::size_t chunk, std::size_t line) {
    std::string id(response_id);
    if (!id.empty()) id.push_back('#');
    id += "c" + std::to_string(chunk) + ".l" + std::to_string(line);
    return id;
}

ExtractionOutcome parse_extraction_output(std::string_view raw,
                                          const std::optional<std::vector<TokenLogprob>>& token_logprobs,
                                          std::string_view response_id, std::size_t chunk_index) {
    if (trim(raw).empty()) throw EmptyCompletionError("extractor returned an empty completion");

    ExtractionOutcome outcome;
    outcome.raw_output = std::string(raw);

    bool logprobs_usable = false;
    if (token_logprobs) {
        std::size_t total = 0;
        for (const auto& t : *token_logprobs) total += t.token.size();
        logprobs_usable = total == raw.size();
        if (!logprobs_usable) {
            outcome.parse_warnings.push_back(
                {chunk_index, 0, "token logprobs do not reproduce the completion text; confidence unavailable"});
        }
    }

    std::size_t line_no = 1;
    for (std::size_t pos = 0; pos <= raw.size(); ++line_no) {
        std::size_t end = raw.find('\n', pos);
        if (end == std::string_view::npos) end = raw.size();
        const auto line = trim(raw.substr(pos, end - pos));
        const std::size_t line_offset = static_cast<std::size_t>(line.data() - raw.data());
        const std::size_t next = end + 1;

        if (line.empty() || iequals(line, kNoClaims) || iequals(line, "Claims:")) {
            pos = next;
            continue;
        }
        auto parsed = parse_claim_line(line);
        if (auto* reason = std::get_if<std::string>(&parsed)) {
            outcome.parse_warnings.push_back({chunk_index, line_no, std::move(*reason)});
            pos = next;
            continue;
        }
        const auto& claim_line = std::get<ClaimLine>(parsed);
        AtomicClaim claim;
        claim.claim_id = make_claim_id(response_id, chunk_index, line_no);
        claim.text = std::string(claim_line.text);
        claim.source_chunk = chunk_index;
        claim.source_line = line_no;
        claim.pre_label = claim_line.label;
        if (logprobs_usable) {
            const auto range = locate_token_range(*token_logprobs, line_offset + claim_line.label_begin,
                                                  line_offset + claim_line.label_end);
            claim.confidence = compute_label_confidence(*token_logprobs, range);
        }
        outcome.claims.push_back(std::move(claim));
        pos = next;
    }
    return outcome;
}

TokenRange locate_token_range(std::span<const TokenLogprob> tokens, std::size_t char_begin, std::size_t char_end) {
    TokenRange range{0, 0};
    bool found = false;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::size_t begin = pos;
        const std::size_t end = pos + tokens[i].token.size();
        pos = end;
        if (begin < char_end && char_begin < end) {
            if (!found) range.first = i;
            found = true;
            range.last = i + 1;
        }
    }
    return range;
}

std::optional<double> compute_label_confidence(std::span<const TokenLogprob> tokens, TokenRange range) {
    if (range.empty() || range.last > tokens.size()) return std::nullopt;
    double sum = 0.0;
    for (std::size_t i = range.first; i < range.last; ++i) {
        if (std::isnan(tokens[i].logprob)) return std::nullopt;
        sum += tokens[i].logprob;
    }
    const double mean = sum / static_cast<double>(range.last - range.first);
    return std::clamp(std::exp(mean), 0.0, 1.0);
}

bool passes_confidence_gate(const AtomicClaim& claim, double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw ConfigError("confidence threshold must lie in [0, 1]");
    return is_definite(claim.pre_label) && claim.confidence.has_value() && *claim.confidence > theta;
}

void apply_confidence_gate(std::span<AtomicClaim> claims, double theta) {
    for (auto& claim : claims) claim.gated = passes_confidence_gate(claim, theta);
}

DedupResult deduplicate_claims(std::vector<AtomicClaim> claims) {
    DedupResult result;
    std::unordered_map<std::string, std::string> first_by_text;
    for (auto& claim : claims) {
        auto [it, inserted] = first_by_text.emplace(claim.text, claim.claim_id);
        if (inserted) {
            result.kept.push_back(std::move(claim));
        } else {
            result.duplicates.push_back({claim.claim_id, it->second, claim.text});
        }
    }
    return result;
}

}  // namespace veracity
