#include "veracity/serialization.hpp"

#include <stdexcept>

namespace veracity {

using nlohmann::json;

namespace {

template <typename Enum, typename Parser>
Enum parse_or_throw(const json& j, Parser parse, const char* what) {
    const auto text = j.get<std::string>();
    auto value = parse(text);
    if (!value) throw std::invalid_argument(std::string("unknown ") + what + ": " + text);
    return *value;
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->get<T>();
}

}  // namespace

void to_json(json& j, const AtomicClaim& claim) {
    j = {{"claim_id", claim.claim_id},
         {"text", claim.text},
         {"source_chunk", claim.source_chunk},
         {"source_line", claim.source_line},
         {"pre_label", to_string(claim.pre_label)},
         {"confidence", claim.confidence ? json(*claim.confidence) : json(nullptr)},
         {"gated", claim.gated}};
}

void from_json(const json& j, AtomicClaim& claim) {
    claim.claim_id = j.at("claim_id").get<std::string>();
    claim.text = j.at("text").get<std::string>();
    claim.source_chunk = j.at("source_chunk").get<std::size_t>();
    claim.source_line = j.at("source_line").get<std::size_t>();
    claim.pre_label = parse_or_throw<PreVerificationLabel>(j.at("pre_label"), parse_pre_label, "pre-verification label");
    claim.confidence = optional_field<double>(j, "confidence");
    claim.gated = j.at("gated").get<bool>();
}

void to_json(json& j, const ParseWarning& warning) {
    j = {{"chunk", warning.chunk}, {"line", warning.line}, {"reason", warning.reason}};
}

void from_json(const json& j, ParseWarning& warning) {
    warning.chunk = j.at("chunk").get<std::size_t>();
    warning.line = j.at("line").get<std::size_t>();
    warning.reason = j.at("reason").get<std::string>();
}

void to_json(json& j, const DuplicateClaim& duplicate) {
    j = {{"claim_id", duplicate.claim_id}, {"duplicate_of", duplicate.duplicate_of}, {"text", duplicate.text}};
}

void from_json(const json& j, DuplicateClaim& duplicate) {
    duplicate.claim_id = j.at("claim_id").get<std::string>();
    duplicate.duplicate_of = j.at("duplicate_of").get<std::string>();
    duplicate.text = j.at("text").get<std::string>();
}

void to_json(json& j, const EvidenceRef& ref) {
    j = {{"source_url", ref.source_url}, {"chunk_index", ref.chunk_index}};
}

void from_json(const json& j, EvidenceRef& ref) {
    ref.source_url = j.at("source_url").get<std::string>();
    ref.chunk_index = j.at("chunk_index").get<std::size_t>();
}

void to_json(json& j, const VerifiedClaim& claim) {
    j = {{"claim", claim.claim},
         {"route", to_string(claim.route)},
         {"verification_label",
          claim.verification_label ? json(to_string(*claim.verification_label)) : json(nullptr)},
         {"final_category", to_string(claim.final_category)},
         {"reasoning", claim.reasoning ? json(*claim.reasoning) : json(nullptr)},
         {"evidence_used", claim.evidence_used},
         {"errors", claim.errors}};
}

void from_json(const json& j, VerifiedClaim& claim) {
    claim.claim = j.at("claim").get<AtomicClaim>();
    claim.route = parse_or_throw<Route>(j.at("route"), parse_route, "route");
    if (auto label = optional_field<std::string>(j, "verification_label")) {
        claim.verification_label = parse_or_throw<VerificationLabel>(json(*label), parse_verification_label,
                                                                     "verification label");
    } else {
        claim.verification_label.reset();
    }
    claim.final_category = parse_or_throw<FinalCategory>(j.at("final_category"), parse_final_category,
                                                         "final category");
    claim.reasoning = optional_field<std::string>(j, "reasoning");
    claim.evidence_used = j.value("evidence_used", std::vector<EvidenceRef>{});
    claim.errors = j.value("errors", std::vector<std::string>{});
}

void to_json(json& j, const EvidenceChunk& chunk) {
    j = {{"source_url", chunk.source_url},       {"source_title", chunk.source_title},
         {"chunk_index", chunk.chunk_index},     {"text", chunk.text},
         {"first_sentence", chunk.first_sentence}, {"last_sentence", chunk.last_sentence}};
}

void from_json(const json& j, EvidenceChunk& chunk) {
    chunk.source_url = j.at("source_url").get<std::string>();
    chunk.source_title = j.value("source_title", std::string{});
    chunk.chunk_index = j.at("chunk_index").get<std::size_t>();
    chunk.text = j.at("text").get<std::string>();
    chunk.first_sentence = j.value("first_sentence", std::size_t{0});
    chunk.last_sentence = j.value("last_sentence", std::size_t{0});
}

void to_json(json& j, const WebDocument& doc) {
    j = {{"url", doc.url},
         {"title", doc.title},
         {"body", doc.body},
         {"word_count", doc.word_count},
         {"failure", doc.failure ? json(*doc.failure) : json(nullptr)}};
}

void from_json(const json& j, WebDocument& doc) {
    doc.url = j.at("url").get<std::string>();
    doc.title = j.value("title", std::string{});
    doc.body = j.value("body", std::string{});
    doc.word_count = j.value("word_count", std::size_t{0});
    doc.failure = optional_field<std::string>(j, "failure");
}

void to_json(json& j, const ScoredChunk& scored) { j = {{"chunk", scored.chunk}, {"score", scored.score}}; }

void from_json(const json& j, ScoredChunk& scored) {
    scored.chunk = j.at("chunk").get<EvidenceChunk>();
    scored.score = j.at("score").get<double>();
}

void to_json(json& j, const ClaimTally& tally) {
    j = {{"supported", tally.supported},
         {"non_supported", tally.non_supported},
         {"irrelevant", tally.irrelevant},
         {"dropped", tally.dropped}};
}

void from_json(const json& j, ClaimTally& tally) {
    tally.supported = j.at("supported").get<std::size_t>();
    tally.non_supported = j.at("non_supported").get<std::size_t>();
    tally.irrelevant = j.at("irrelevant").get<std::size_t>();
    tally.dropped = j.value("dropped", std::size_t{0});
}

void to_json(json& j, const ScoreConfig& config) {
    j = {{"gamma", config.gamma}, {"mode", to_string(config.mode)}, {"k_target", config.k_target}};
}

void from_json(const json& j, ScoreConfig& config) {
    config.gamma = j.at("gamma").get<double>();
    config.mode = parse_score_mode(j.at("mode").get<std::string>());
    config.k_target = j.at("k_target").get<std::size_t>();
}

void to_json(json& j, const FactualityScore& score) {
    j = {{"precision", score.precision ? json(*score.precision) : json(nullptr)},
         {"recall", score.recall},
         {"f1", score.f1},
         {"tally", score.tally},
         {"config", score.config},
         {"no_verifiable_claims", score.no_verifiable_claims}};
}

void from_json(const json& j, FactualityScore& score) {
    score.precision = optional_field<double>(j, "precision");
    score.recall = j.at("recall").get<double>();
    score.f1 = j.at("f1").get<double>();
    score.tally = j.at("tally").get<ClaimTally>();
    score.config = j.at("config").get<ScoreConfig>();
    score.no_verifiable_claims = j.value("no_verifiable_claims", false);
}

void to_json(json& j, const LedgerTotals& totals) {
    j = {{"extractor_calls", totals.extractor_calls},
         {"verifier_calls", totals.verifier_calls},
         {"search_queries", totals.search_queries},
         {"pages_fetched", totals.pages_fetched},
         {"cache_hits", totals.cache_hits},
         {"failures", totals.failures},
         {"prompt_tokens", totals.prompt_tokens},
         {"completion_tokens", totals.completion_tokens},
         {"wall_time_ms", totals.wall_time.count()}};
}

void from_json(const json& j, LedgerTotals& totals) {
    totals.extractor_calls = j.at("extractor_calls").get<std::uint64_t>();
    totals.verifier_calls = j.at("verifier_calls").get<std::uint64_t>();
    totals.search_queries = j.at("search_queries").get<std::uint64_t>();
    totals.pages_fetched = j.at("pages_fetched").get<std::uint64_t>();
    totals.cache_hits = j.at("cache_hits").get<std::uint64_t>();
    totals.failures = j.at("failures").get<std::uint64_t>();
    totals.prompt_tokens = j.value("prompt_tokens", std::uint64_t{0});
    totals.completion_tokens = j.value("completion_tokens", std::uint64_t{0});
    totals.wall_time = std::chrono::milliseconds(j.value("wall_time_ms", std::int64_t{0}));
}

void to_json(json& j, const PipelineParams& params) {
    j = {{"N", params.sentences},
         {"M", params.claims},
         {"k", params.results_per_claim},
         {"p", params.verify_fraction},
         {"w", params.stride}};
}

void from_json(const json& j, PipelineParams& params) {
    params.sentences = j.at("N").get<std::uint64_t>();
    params.claims = j.at("M").get<std::uint64_t>();
    params.results_per_claim = j.at("k").get<std::uint64_t>();
    params.verify_fraction = j.at("p").get<double>();
    params.stride = j.at("w").get<std::uint64_t>();
}

void to_json(json& j, const CallBudget& budget) {
    j = {{"extractor", budget.extractor},
         {"searches", budget.searches},
         {"verifier", budget.verifier},
         {"total_llm", budget.total_llm}};
}

void to_json(json& j, const ReconcileReport& report) {
    json items = json::array();
    for (const auto& item : report.items) {
        items.push_back({{"counter", item.counter},
                         {"observed", item.observed},
                         {"predicted", item.predicted},
                         {"match", item.match}});
    }
    j = {{"items", items},
         {"exact_required", report.exact_required},
         {"consistent", report.consistent},
         {"notes", report.notes}};
}

void from_json(const json& j, ReconcileReport& report) {
    report.items.clear();
    for (const auto& item : j.at("items")) {
        report.items.push_back({item.at("counter").get<std::string>(), item.at("observed").get<std::uint64_t>(),
                                item.at("predicted").get<std::uint64_t>(), item.at("match").get<bool>()});
    }
    report.exact_required = j.at("exact_required").get<bool>();
    report.consistent = j.at("consistent").get<bool>();
    report.notes = j.value("notes", std::vector<std::string>{});
}

void to_json(json& j, const AlignmentDeltas& deltas) {
    j = {{"responses", deltas.responses},
         {"abs_delta_k_prime", deltas.k_prime},
         {"abs_delta_f1", deltas.f1},
         {"abs_delta_supported", deltas.supported},
         {"abs_delta_unsupported", deltas.unsupported},
         {"abs_delta_irrelevant", deltas.irrelevant}};
}

void to_json(json& j, const AlignmentReport& report) {
    json by_tag = json::object();
    for (const auto& [tag, deltas] : report.by_tag) by_tag[tag] = deltas;
    j = {{"overall", report.overall},
         {"by_tag", by_tag},
         {"unmatched_ids", report.unmatched_ids},
         {"warnings", report.warnings}};
}

void to_json(json& j, const ChunkingConfig& config) {
    j = {{"chunk_len", config.chunk_len}, {"overlap", config.overlap}};
}

void from_json(const json& j, ChunkingConfig& config) {
    config.chunk_len = j.at("chunk_len").get<std::size_t>();
    config.overlap = j.at("overlap").get<std::size_t>();
}

void to_json(json& j, const Bm25Params& params) { j = {{"k1", params.k1}, {"b", params.b}}; }

void from_json(const json& j, Bm25Params& params) {
    params.k1 = j.at("k1").get<double>();
    params.b = j.at("b").get<double>();
}

}  // namespace veracity
