#include "veracity/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "veracity/errors.hpp"
#include "veracity/extraction.hpp"
#include "veracity/hashing.hpp"
#include "veracity/segmentation.hpp"
#include "veracity/serialization.hpp"
#include "veracity/verification.hpp"

namespace veracity {

using nlohmann::json;
namespace fs = std::filesystem;

// ---- configuration ----------------------------------------------------------

void PipelineConfig::validate() const {
    if (stride < 1) throw ConfigError("stride w must be at least 1");
    if (!(theta >= 0.0 && theta <= 1.0)) throw ConfigError("theta must lie in [0, 1]");
    if (results_per_claim < 1) throw ConfigError("results per claim k must be at least 1");
    if (top_m < 1) throw ConfigError("top_m must be at least 1");
    evidence.validate();
    bm25.validate();
    scoring.validate();
    if (max_tokens < 1) throw ConfigError("max_tokens must be positive");
    if (!(temperature >= 0.0)) throw ConfigError("temperature must be non-negative");
    if (parallelism < 1) throw ConfigError("parallelism must be at least 1");
    retry.validate();
    if (backend.kind != "mock" && backend.kind != "http") {
        throw ConfigError("backend kind must be \"mock\" or \"http\", got \"" + backend.kind + "\"");
    }
    if (backend.kind == "mock" && backend.fixtures_dir.empty()) {
        throw ConfigError("the mock backend needs a fixtures directory");
    }
    if (backend.record && backend.fixtures_dir.empty()) {
        throw ConfigError("record mode needs a fixtures directory");
    }
}

namespace {

json stride_json(std::size_t stride) { return stride == kWholeResponse ? json("max") : json(stride); }

json endpoint_json(const HttpEndpoint& e) {
    return {{"base_url", e.base_url}, {"api_key_env", e.api_key_env}, {"model", e.model},
            {"timeout_s", e.timeout.count()}};
}

void overlay_endpoint(const json& j, HttpEndpoint& e) {
    e.base_url = j.value("base_url", e.base_url);
    e.api_key_env = j.value("api_key_env", e.api_key_env);
    e.model = j.value("model", e.model);
    if (j.contains("timeout_s")) e.timeout = std::chrono::seconds(j.at("timeout_s").get<std::int64_t>());
}

}  // namespace

json PipelineConfig::evaluation_snapshot() const {
    return {{"stride", stride_json(stride)},
            {"theta", theta},
            {"results_per_claim", results_per_claim},
            {"top_m", top_m},
            {"evidence", evidence},
            {"bm25", bm25},
            {"scoring", scoring},
            {"max_tokens", max_tokens},
            {"temperature", temperature}};
}

json to_json(const PipelineConfig& config) {
    json j = config.evaluation_snapshot();
    j["parallelism"] = config.parallelism;
    j["cache_dir"] = config.cache_dir;
    j["retry"] = {{"max_attempts", config.retry.max_attempts},
                  {"base_delay_ms", config.retry.base_delay.count()},
                  {"jitter", config.retry.jitter}};
    j["backend"] = {{"kind", config.backend.kind},
                    {"fixtures_dir", config.backend.fixtures_dir},
                    {"record", config.backend.record},
                    {"direct_fetch", config.backend.direct_fetch},
                    {"llm", endpoint_json(config.backend.llm)},
                    {"search", endpoint_json(config.backend.search)},
                    {"reader", endpoint_json(config.backend.reader)}};
    return j;
}

PipelineConfig config_from_json(const json& j, PipelineConfig base) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    try {
        if (j.contains("stride")) {
            const auto& s = j.at("stride");
            if (s.is_string()) {
                if (s.get<std::string>() != "max") throw ConfigError("stride must be a positive integer or \"max\"");
                base.stride = kWholeResponse;
            } else {
                base.stride = s.get<std::size_t>();
            }
        }
        base.theta = j.value("theta", base.theta);
        base.results_per_claim = j.value("results_per_claim", base.results_per_claim);
        base.top_m = j.value("top_m", base.top_m);
        if (j.contains("evidence")) {
            base.evidence.chunk_len = j["evidence"].value("chunk_len", base.evidence.chunk_len);
            base.evidence.overlap = j["evidence"].value("overlap", base.evidence.overlap);
        }
        if (j.contains("bm25")) {
            base.bm25.k1 = j["bm25"].value("k1", base.bm25.k1);
            base.bm25.b = j["bm25"].value("b", base.bm25.b);
        }
        if (j.contains("scoring")) {
            const auto& s = j.at("scoring");
            base.scoring.gamma = s.value("gamma", base.scoring.gamma);
            if (s.contains("mode")) base.scoring.mode = parse_score_mode(s.at("mode").get<std::string>());
            base.scoring.k_target = s.value("k_target", base.scoring.k_target);
        }
        base.max_tokens = j.value("max_tokens", base.max_tokens);
        base.temperature = j.value("temperature", base.temperature);
        base.parallelism = j.value("parallelism", base.parallelism);
        base.cache_dir = j.value("cache_dir", base.cache_dir);
        if (j.contains("retry")) {
            const auto& r = j.at("retry");
            base.retry.max_attempts = r.value("max_attempts", base.retry.max_attempts);
            if (r.contains("base_delay_ms")) {
                base.retry.base_delay = std::chrono::milliseconds(r.at("base_delay_ms").get<std::int64_t>());
            }
            base.retry.jitter = r.value("jitter", base.retry.jitter);
        }
        if (j.contains("backend")) {
            const auto& b = j.at("backend");
            base.backend.kind = b.value("kind", base.backend.kind);
            base.backend.fixtures_dir = b.value("fixtures_dir", base.backend.fixtures_dir);
            base.backend.record = b.value("record", base.backend.record);
            base.backend.direct_fetch = b.value("direct_fetch", base.backend.direct_fetch);
            if (b.contains("llm")) overlay_endpoint(b.at("llm"), base.backend.llm);
            if (b.contains("search")) overlay_endpoint(b.at("search"), base.backend.search);
            if (b.contains("reader")) overlay_endpoint(b.at("reader"), base.backend.reader);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    return base;
}

std::string config_digest(const PipelineConfig& config) { return sha256_hex(config.evaluation_snapshot().dump()); }

std::unique_ptr<BackendClient> make_backend_client(const PipelineConfig& config) {
    config.validate();
    std::shared_ptr<const ResponseStore> cache;
    if (!config.cache_dir.empty()) cache = std::make_shared<ResponseStore>(config.cache_dir);

    const auto& b = config.backend;
    if (b.kind == "mock") {
        auto store = std::make_shared<ResponseStore>(b.fixtures_dir);
        return std::make_unique<BackendClient>(std::make_shared<FixtureLlm>(store), std::make_shared<FixtureSearch>(store),
                                               std::make_shared<FixtureReader>(store), config.retry, cache);
    }

    std::shared_ptr<LlmBackend> llm = std::make_shared<ChatCompletionsBackend>(b.llm);
    std::shared_ptr<SearchBackend> search = std::make_shared<SerpSearchBackend>(b.search);
    std::shared_ptr<ReaderBackend> reader;
    if (b.direct_fetch) {
        reader = std::make_shared<DirectFetchReader>(b.reader.timeout);
    } else {
        reader = std::make_shared<ReaderServiceBackend>(b.reader);
    }
    if (b.record) {
        auto store = std::make_shared<ResponseStore>(b.fixtures_dir);
        llm = std::make_shared<RecordingLlm>(llm, store);
        search = std::make_shared<RecordingSearch>(search, store);
        reader = std::make_shared<RecordingReader>(reader, store);
    }
    return std::make_unique<BackendClient>(llm, search, reader, config.retry, cache);
}

// ---- inputs and clocks -------------------------------------------------------

std::vector<ResponseInput> load_inputs(std::string_view jsonl, std::vector<std::string>* warnings) {
    std::vector<ResponseInput> inputs;
    std::unordered_set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    const auto warn = [&](const std::string& message) {
        if (warnings) warnings->push_back("input line " + std::to_string(line_no) + ": " + message);
    };
    while (pos <= jsonl.size()) {
        auto end = jsonl.find('\n', pos);
        if (end == std::string_view::npos) end = jsonl.size();
        const auto line = jsonl.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        ResponseInput input;
        try {
            const auto j = json::parse(line);
            input.id = j.at("id").get<std::string>();
            input.question = j.at("question").get<std::string>();
            input.response = j.at("response").get<std::string>();
            if (j.contains("benchmark_tag") && !j.at("benchmark_tag").is_null()) {
                input.benchmark_tag = j.at("benchmark_tag").get<std::string>();
            }
        } catch (const json::exception& e) {
            warn(std::string("malformed row skipped: ") + e.what());
            continue;
        }
        if (input.id.empty()) {
            warn("row with an empty id skipped");
            continue;
        }
        if (!seen.insert(input.id).second) {
            warn("duplicate id \"" + input.id + "\" skipped");
            continue;
        }
        inputs.push_back(std::move(input));
    }
    return inputs;
}

Clock system_clock() {
    return [] { return std::chrono::system_clock::now(); };
}

Clock fixed_clock(std::chrono::system_clock::time_point at) {
    return [at] { return at; };
}

namespace {

std::string iso8601(std::chrono::system_clock::time_point t) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
    const std::time_t secs = static_cast<std::time_t>(ms / 1000);
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[40];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[48];
    std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms % 1000));
    return out;
}

}  // namespace

// ---- concurrency -------------------------------------------------------------

WorkLimiter::WorkLimiter(std::size_t permits) : permits_(permits), available_(permits) {
    if (permits == 0) throw ConfigError("work limiter needs at least one permit");
}

void WorkLimiter::acquire() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [this] { return available_ > 0; });
    --available_;
}

void WorkLimiter::release() {
    {
        std::lock_guard lock(mutex_);
        ++available_;
    }
    cv_.notify_one();
}

WorkLimiter::Permit::Permit(WorkLimiter& limiter) : limiter_(limiter) { limiter_.acquire(); }

WorkLimiter::Permit::~Permit() { limiter_.release(); }

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    workers = std::clamp<std::size_t>(workers, 1, count);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const auto run = [&] {
        for (;;) {
            if (stop.load()) return;
            const auto i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                stop = true;
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) threads.emplace_back(run);
    run();
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

// ---- stage records -----------------------------------------------------------

namespace {

json chunk_summary_json(const ChunkSummary& c) {
    return {{"index", c.index}, {"first_sentence", c.first_sentence}, {"last_sentence", c.last_sentence},
            {"text", c.text}};
}

ChunkSummary chunk_summary_from_json(const json& j) {
    return {j.at("index").get<std::size_t>(), j.at("first_sentence").get<std::size_t>(),
            j.at("last_sentence").get<std::size_t>(), j.at("text").get<std::string>()};
}

void check_stage_version(const json& j) {
    if (j.value("schema_version", 0) != kRecordSchemaVersion) throw std::invalid_argument("unsupported stage schema");
}

}  // namespace

json to_json(const ExtractionStage& stage) {
    json chunks = json::array();
    for (const auto& c : stage.chunks) chunks.push_back(chunk_summary_json(c));
    return {{"schema_version", kRecordSchemaVersion},
            {"id", stage.id},
            {"sentence_count", stage.sentence_count},
            {"chunks", chunks},
            {"claims", stage.claims},
            {"duplicates", stage.duplicates},
            {"parse_warnings", stage.parse_warnings},
            {"warnings", stage.warnings},
            {"ledger", stage.ledger}};
}

ExtractionStage extraction_stage_from_json(const json& j) {
    check_stage_version(j);
    ExtractionStage stage;
    stage.id = j.at("id").get<std::string>();
    stage.sentence_count = j.at("sentence_count").get<std::size_t>();
    for (const auto& c : j.at("chunks")) stage.chunks.push_back(chunk_summary_from_json(c));
    stage.claims = j.at("claims").get<std::vector<AtomicClaim>>();
    stage.duplicates = j.at("duplicates").get<std::vector<DuplicateClaim>>();
    stage.parse_warnings = j.at("parse_warnings").get<std::vector<ParseWarning>>();
    stage.warnings = j.at("warnings").get<std::vector<std::string>>();
    stage.ledger = j.at("ledger").get<LedgerTotals>();
    return stage;
}

json to_json(const EvidenceStage& stage) {
    return {{"schema_version", kRecordSchemaVersion},
            {"id", stage.id},
            {"claim_id", stage.claim_id},
            {"documents", stage.documents},
            {"retrieved", stage.retrieved}};
}

json to_json(const ClaimStage& stage) {
    return {{"schema_version", kRecordSchemaVersion},
            {"id", stage.id},
            {"claim_id", stage.verdict.claim.claim_id},
            {"verdict", stage.verdict},
            {"ledger", stage.ledger}};
}

ClaimStage claim_stage_from_json(const json& j) {
    check_stage_version(j);
    return {j.at("id").get<std::string>(), j.at("verdict").get<VerifiedClaim>(), j.at("ledger").get<LedgerTotals>()};
}

// ---- evaluator -----------------------------------------------------------------

Evaluator::Evaluator(PipelineConfig config, BackendClient& client, Clock clock, std::shared_ptr<WorkLimiter> limiter)
    : config_(std::move(config)), client_(client), clock_(std::move(clock)), limiter_(std::move(limiter)) {
    config_.validate();
    if (!clock_) clock_ = system_clock();
    if (!limiter_) limiter_ = std::make_shared<WorkLimiter>(config_.parallelism);
}

std::chrono::milliseconds Evaluator::elapsed_since(std::chrono::system_clock::time_point start) const {
    return std::max(std::chrono::milliseconds{0},
                    std::chrono::duration_cast<std::chrono::milliseconds>(clock_() - start));
}

ExtractionStage Evaluator::extract(const ResponseInput& input, CostLedger& ledger) const {
    const auto start = clock_();
    ExtractionStage stage;
    stage.id = input.id;
    const auto sentences = split_sentences(input.response);
    const auto chunks = build_chunks(input.response, sentences, config_.stride);
    stage.sentence_count = sentences.size();
    for (const auto& chunk : chunks) {
        stage.chunks.push_back({chunk.index, chunk.sentences.empty() ? 0 : chunk.sentences.front().index,
                                chunk.sentences.empty() ? 0 : chunk.sentences.back().index, chunk.text});
    }

    std::vector<ExtractionOutcome> outcomes(chunks.size());
    std::vector<std::vector<std::string>> call_warnings(chunks.size());
    parallel_for(chunks.size(), config_.parallelism, [&](std::size_t i) {
        WorkLimiter::Permit permit(*limiter_);
        CompletionRequest request;
        request.prompt = render_extraction_prompt(input.question, chunks[i]);
        request.want_logprobs = true;
        request.max_tokens = config_.max_tokens;
        request.temperature = config_.temperature;
        auto outcome = client_.complete(request, CallRole::Extractor, ledger);
        outcomes[i] = parse_extraction_output(outcome.result.text, outcome.result.token_logprobs, input.id,
                                              chunks[i].index);
        for (auto& w : outcome.warnings) call_warnings[i].push_back("chunk " + std::to_string(i) + ": " + w);
    });

    std::vector<AtomicClaim> claims;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        for (auto& c : outcomes[i].claims) claims.push_back(std::move(c));
        for (auto& w : outcomes[i].parse_warnings) stage.parse_warnings.push_back(std::move(w));
        for (auto& w : call_warnings[i]) stage.warnings.push_back(std::move(w));
    }
    auto dedup = deduplicate_claims(std::move(claims));
    apply_confidence_gate(dedup.kept, config_.theta);
    stage.claims = std::move(dedup.kept);
    stage.duplicates = std::move(dedup.duplicates);
    ledger.add_wall_time(elapsed_since(start));
    stage.ledger = ledger.totals();
    return stage;
}

ClaimStage Evaluator::verify_claim(const std::string& response_id, const AtomicClaim& claim, StageSink* sink) const {
    ClaimStage stage;
    stage.id = response_id;
    if (claim.gated) {
        stage.verdict = verdict_for_gated(claim);
        return stage;
    }

    const auto start = clock_();
    CostLedger ledger;
    std::vector<std::string> errors;

    std::vector<SearchHit> hits;
    try {
        hits = client_.search(claim.text, config_.results_per_claim, ledger);
    } catch (const BackendError& e) {
        errors.push_back(std::string("search failed: ") + e.what());
    }

    std::vector<WebDocument> documents;
    for (const auto& hit : hits) {
        try {
            documents.push_back(WebDocument::fetched(hit.url, hit.title, client_.read_page(hit.url, ledger)));
        } catch (const BackendError& e) {
            documents.push_back(WebDocument::failed(hit.url, hit.title, e.what()));
        }
    }

    const auto index = EvidenceIndex::build(chunk_documents(documents, config_.evidence), config_.bm25);
    const auto retrieved = index.retrieve(claim.text, config_.top_m);
    if (sink) sink->on_evidence({response_id, claim.claim_id, documents, retrieved});

    std::vector<EvidenceChunk> evidence;
    std::vector<EvidenceRef> refs;
    for (const auto& scored : retrieved) {
        evidence.push_back(scored.chunk);
        refs.push_back({scored.chunk.source_url, scored.chunk.chunk_index});
    }

    CompletionRequest request;
    request.prompt = render_verification_prompt(claim.text, evidence);
    request.max_tokens = config_.max_tokens;
    request.temperature = config_.temperature;
    std::optional<VerifierVerdict> parsed;
    try {
        const auto outcome = client_.complete(request, CallRole::Verifier, ledger);
        parsed = parse_verification_output(outcome.result.text);
    } catch (const BackendError& e) {
        errors.push_back(std::string("verifier failed: ") + e.what() + "; defaulted to not enough evidence");
        parsed = VerifierVerdict{"", VerificationLabel::NotEnoughEvidence};
    }
    stage.verdict = verdict_for_evidence(claim, parsed, std::move(refs), std::move(errors));
    ledger.add_wall_time(elapsed_since(start));
    stage.ledger = ledger.totals();
    return stage;
}

EvaluationRecord Evaluator::evaluate(const ResponseInput& input, const ResumeState* resume, StageSink* sink) const {
    EvaluationRecord record;
    record.id = input.id;
    record.question = input.question;
    record.response = input.response;
    record.benchmark_tag = input.benchmark_tag;
    record.config = config_.evaluation_snapshot();
    record.started_at = iso8601(clock_());

    const auto finish = [&](std::uint64_t verified) {
        record.tally = tally(record.claims);
        record.score = score(record.tally, config_.scoring);
        record.params.sentences = record.sentence_count;
        record.params.claims = record.claims.size();
        record.params.results_per_claim = config_.results_per_claim;
        record.params.verify_fraction =
            record.claims.empty() ? 0.0
                                  : static_cast<double>(verified) / static_cast<double>(record.claims.size());
        record.params.stride = config_.stride == kWholeResponse ? std::max<std::size_t>(record.sentence_count, 1)
                                                                : config_.stride;
        record.reconcile = reconcile(record.ledger, record.params);
        record.finished_at = iso8601(clock_());
        return record;
    };

    ExtractionStage extraction;
    if (resume && resume->extraction) {
        extraction = *resume->extraction;
    } else {
        CostLedger ledger;
        try {
            extraction = extract(input, ledger);
        } catch (const std::exception& e) {
            const bool expected = dynamic_cast<const BackendError*>(&e) || dynamic_cast<const EmptyCompletionError*>(&e);
            if (!expected) throw;
            record.status = RecordStatus::failed;
            record.error = std::string("extraction failed: ") + e.what();
            record.sentence_count = split_sentences(input.response).size();
            record.ledger = ledger.totals();
            return finish(0);
        }
        if (sink) sink->on_extraction(extraction);
    }

    record.sentence_count = extraction.sentence_count;
    record.chunks = extraction.chunks;
    record.duplicates = extraction.duplicates;
    record.parse_warnings = extraction.parse_warnings;
    record.warnings = extraction.warnings;
    record.ledger = extraction.ledger;

    const auto& claims = extraction.claims;
    std::vector<std::optional<ClaimStage>> stages(claims.size());
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < claims.size(); ++i) {
        if (resume) {
            auto it = resume->claims.find(claims[i].claim_id);
            if (it != resume->claims.end()) {
                stages[i] = it->second;
                continue;
            }
        }
        pending.push_back(i);
    }
    parallel_for(pending.size(), config_.parallelism, [&](std::size_t p) {
        const auto i = pending[p];
        ClaimStage stage;
        if (claims[i].gated) {
            stage = verify_claim(input.id, claims[i], sink);
        } else {
            WorkLimiter::Permit permit(*limiter_);
            stage = verify_claim(input.id, claims[i], sink);
        }
        if (sink) sink->on_claim(stage);
        stages[i] = std::move(stage);
    });

    std::uint64_t verified = 0;
    for (auto& stage : stages) {
        record.ledger += stage->ledger;
        if (stage->verdict.route == Route::EvidenceVerified) ++verified;
        record.claims.push_back(std::move(stage->verdict));
    }
    return finish(verified);
}

EvaluationRecord evaluate_response(std::string_view question, std::string_view response,
                                   const PipelineConfig& config, BackendClient& client, Clock clock) {
    Evaluator evaluator(config, client, std::move(clock));
    return evaluator.evaluate({"response", std::string(question), std::string(response), ""});
}

void rescore_record(EvaluationRecord& record, const ScoreConfig& scoring) {
    record.tally = tally(record.claims);
    record.score = score(record.tally, scoring);
}

// ---- run directory -------------------------------------------------------------

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("short write to " + tmp);
    }
    fs::rename(tmp, path);
}

/// Parsed lines of a JSON-lines file; a torn final line from an interrupted
/// write is ignored.
std::vector<json> read_jsonl(const fs::path& path) {
    std::vector<json> rows;
    if (!fs::exists(path)) return rows;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            rows.push_back(json::parse(line));
        } catch (const json::exception&) {
        }
    }
    return rows;
}

json strip_wall_time(json j) {
    if (j.is_object()) {
        j.erase("wall_time_ms");
        for (auto& [key, value] : j.items()) value = strip_wall_time(value);
    } else if (j.is_array()) {
        for (auto& value : j) value = strip_wall_time(value);
    }
    return j;
}

class RunDirSink final : public StageSink {
public:
    RunDirSink(const fs::path& dir, std::optional<std::size_t> halt_after)
        : claims_(dir / kClaimsFile, std::ios::app),
          evidence_(dir / kEvidenceFile, std::ios::app),
          verdicts_(dir / kVerdictsFile, std::ios::app),
          records_(dir / kRecordsFile, std::ios::app),
          halt_after_(halt_after) {
        if (!claims_ || !evidence_ || !verdicts_ || !records_) {
            throw std::runtime_error("cannot open stage files in " + dir.string());
        }
    }

    void on_extraction(const ExtractionStage& stage) override {
        write(claims_, to_json(stage), &stage.ledger);
    }
    void on_evidence(const EvidenceStage& stage) override { write(evidence_, to_json(stage), nullptr); }
    void on_claim(const ClaimStage& stage) override { write(verdicts_, to_json(stage), &stage.ledger); }
    void on_record(const EvaluationRecord& record, bool count_ledger) {
        write(records_, json(record), count_ledger ? &record.ledger : nullptr);
    }

    LedgerTotals session() const {
        std::lock_guard lock(mutex_);
        return session_;
    }

private:
    void write(std::ofstream& out, const json& row, const LedgerTotals* ledger) {
        std::lock_guard lock(mutex_);
        if (halted_) throw HaltRequested("run halted");
        out << row.dump() << '\n';
        out.flush();
        if (!out) throw std::runtime_error("failed to append to a stage file");
        if (ledger) session_ += *ledger;
        ++barriers_;
        if (halt_after_ && barriers_ >= *halt_after_) {
            halted_ = true;
            throw HaltRequested("halted after " + std::to_string(barriers_) + " persistence barriers");
        }
    }

    std::ofstream claims_;
    std::ofstream evidence_;
    std::ofstream verdicts_;
    std::ofstream records_;
    std::optional<std::size_t> halt_after_;
    mutable std::mutex mutex_;
    std::size_t barriers_ = 0;
    bool halted_ = false;
    LedgerTotals session_;
};

/// Rewrites a stage file sorted by `key` with one row per key (last wins).
void compact_jsonl(const fs::path& path, const std::function<std::string(const json&)>& key) {
    std::map<std::string, json> rows;
    for (auto& row : read_jsonl(path)) {
        try {
            auto k = key(row);
            rows[std::move(k)] = std::move(row);
        } catch (const json::exception&) {
        }
    }
    std::string content;
    for (const auto& [k, row] : rows) content += row.dump() + '\n';
    write_file_atomic(path, content);
}

std::string claim_key(const json& row) {
    return row.at("id").get<std::string>() + '\n' + row.at("claim_id").get<std::string>();
}

std::string id_key(const json& row) { return row.at("id").get<std::string>(); }

}  // namespace

json RunManifest::to_json() const {
    json statuses = json::object();
    for (const auto& [id, s] : responses) {
        statuses[id] = {{"status", s.status},
                        {"record_digest", s.record_digest},
                        {"error", s.error ? json(*s.error) : json(nullptr)}};
    }
    return {{"schema_version", schema_version},
            {"run_id", run_id},
            {"input_digest", input_digest},
            {"config_digest", config_digest},
            {"responses", statuses},
            {"aggregate", aggregate},
            {"warnings", warnings},
            {"digest", digest}};
}

RunManifest RunManifest::from_json(const json& j) {
    RunManifest m;
    m.schema_version = j.at("schema_version").get<int>();
    if (m.schema_version != kRecordSchemaVersion) throw ConfigError("unsupported manifest schema version");
    m.run_id = j.at("run_id").get<std::string>();
    m.input_digest = j.at("input_digest").get<std::string>();
    m.config_digest = j.at("config_digest").get<std::string>();
    for (const auto& [id, s] : j.at("responses").items()) {
        ResponseStatus status;
        status.status = s.at("status").get<std::string>();
        status.record_digest = s.at("record_digest").get<std::string>();
        if (s.contains("error") && !s.at("error").is_null()) status.error = s.at("error").get<std::string>();
        m.responses[id] = std::move(status);
    }
    m.aggregate = j.value("aggregate", json(nullptr));
    m.warnings = j.value("warnings", std::vector<std::string>{});
    m.digest = j.value("digest", std::string{});
    return m;
}

std::string RunManifest::compute_digest() const {
    auto j = to_json();
    j.erase("digest");
    return sha256_hex(j.dump());
}

RunManifest load_manifest(const fs::path& run_dir) {
    return RunManifest::from_json(json::parse(read_file(run_dir / kManifestFile)));
}

std::vector<EvaluationRecord> load_records(const fs::path& run_dir) {
    std::map<std::string, EvaluationRecord> by_id;
    for (const auto& row : read_jsonl(run_dir / kRecordsFile)) {
        try {
            auto record = row.get<EvaluationRecord>();
            by_id[record.id] = std::move(record);
        } catch (const std::exception&) {
        }
    }
    std::vector<EvaluationRecord> records;
    for (auto& [id, record] : by_id) records.push_back(std::move(record));
    return records;
}

BatchResult run_batch(const fs::path& input, const fs::path& run_dir, const PipelineConfig& config,
                      BackendClient& client, const BatchOptions& options) {
    config.validate();
    const auto input_text = read_file(input);

    RunManifest manifest;
    manifest.input_digest = sha256_hex(input_text);
    manifest.config_digest = config_digest(config);
    manifest.run_id = sha256_hex(manifest.input_digest + manifest.config_digest).substr(0, 16);
    const auto inputs = load_inputs(input_text, &manifest.warnings);

    std::vector<GroundTruthRow> truth;
    std::unordered_map<std::string, std::size_t> k_prime;
    if (options.ground_truth) {
        truth = load_ground_truth(read_file(*options.ground_truth), &manifest.warnings);
        for (const auto& row : truth) k_prime[row.id] = row.k_prime;
    }

    fs::create_directories(run_dir);
    if (fs::exists(run_dir / kManifestFile)) {
        const auto previous = load_manifest(run_dir);
        if (previous.input_digest != manifest.input_digest || previous.config_digest != manifest.config_digest) {
            throw ConfigError("run directory " + run_dir.string() + " belongs to a different input or configuration");
        }
    } else {
        auto pending = manifest;
        pending.aggregate = nullptr;
        pending.digest = pending.compute_digest();
        write_file_atomic(run_dir / kManifestFile, pending.to_json().dump(2) + '\n');
    }

    // Durable state from earlier invocations.
    std::map<std::string, ExtractionStage> extractions;
    for (const auto& row : read_jsonl(run_dir / kClaimsFile)) {
        try {
            auto stage = extraction_stage_from_json(row);
            extractions[stage.id] = std::move(stage);
        } catch (const std::exception&) {
        }
    }
    std::map<std::string, std::map<std::string, ClaimStage>> verdicts;
    for (const auto& row : read_jsonl(run_dir / kVerdictsFile)) {
        try {
            auto stage = claim_stage_from_json(row);
            verdicts[stage.id][stage.verdict.claim.claim_id] = std::move(stage);
        } catch (const std::exception&) {
        }
    }
    std::map<std::string, EvaluationRecord> done;
    for (auto& record : load_records(run_dir)) {
        if (record.status == RecordStatus::complete) done[record.id] = std::move(record);
    }

    BatchResult result;
    std::vector<const ResponseInput*> pending;
    for (const auto& in : inputs) {
        if (done.count(in.id)) {
            ++result.resumed;
        } else {
            pending.push_back(&in);
        }
    }

    RunDirSink sink(run_dir, options.halt_after_barriers);
    auto limiter = std::make_shared<WorkLimiter>(config.parallelism);
    Evaluator evaluator(config, client, options.clock, limiter);
    std::mutex done_mutex;
    parallel_for(pending.size(), config.parallelism, [&](std::size_t i) {
        const auto& in = *pending[i];
        ResumeState resume;
        if (auto it = extractions.find(in.id); it != extractions.end()) resume.extraction = it->second;
        if (auto it = verdicts.find(in.id); it != verdicts.end()) resume.claims = it->second;
        auto record = evaluator.evaluate(in, &resume, &sink);
        if (auto it = k_prime.find(in.id); it != k_prime.end()) {
            auto scoring = config.scoring;
            scoring.k_target = it->second;
            rescore_record(record, scoring);
        }
        // A failed extraction never reaches the sink, so its calls are counted here.
        sink.on_record(record, record.status == RecordStatus::failed);
        std::lock_guard lock(done_mutex);
        done[in.id] = std::move(record);
        ++result.evaluated;
    });

    compact_jsonl(run_dir / kClaimsFile, id_key);
    compact_jsonl(run_dir / kEvidenceFile, claim_key);
    compact_jsonl(run_dir / kVerdictsFile, claim_key);
    compact_jsonl(run_dir / kRecordsFile, id_key);

    for (const auto& in : inputs) {
        auto it = done.find(in.id);
        if (it == done.end()) continue;
        const auto& record = it->second;
        manifest.responses[in.id] = {std::string(to_string(record.status)), record_digest(record), record.error};
        result.records.push_back(record);
    }
    std::sort(result.records.begin(), result.records.end(),
              [](const EvaluationRecord& a, const EvaluationRecord& b) { return a.id < b.id; });

    result.report = aggregate(result.records, options.ground_truth ? &truth : nullptr);
    manifest.aggregate = strip_wall_time(to_json(result.report));
    manifest.digest = manifest.compute_digest();
    write_file_atomic(run_dir / kManifestFile, manifest.to_json().dump(2) + '\n');

    result.session_ledger = sink.session();
    write_file_atomic(run_dir / kSessionFile, json{{"run_id", manifest.run_id},
                                                   {"evaluated", result.evaluated},
                                                   {"resumed", result.resumed},
                                                   {"ledger", result.session_ledger}}
                                                  .dump(2) + '\n');
    result.manifest = std::move(manifest);
    return result;
}

RescoreResult rescore_run(const fs::path& run_dir, const ScoreConfig& scoring,
                          const std::optional<fs::path>& ground_truth) {
    scoring.validate();
    RescoreResult result;
    std::vector<GroundTruthRow> truth;
    std::unordered_map<std::string, std::size_t> k_prime;
    if (ground_truth) {
        truth = load_ground_truth(read_file(*ground_truth));
        for (const auto& row : truth) k_prime[row.id] = row.k_prime;
    }
    result.records = load_records(run_dir);
    for (auto& record : result.records) {
        auto config = scoring;
        if (auto it = k_prime.find(record.id); it != k_prime.end()) config.k_target = it->second;
        rescore_record(record, config);
    }
    result.report = aggregate(result.records, ground_truth ? &truth : nullptr);
    return result;
}

}  // namespace veracity
