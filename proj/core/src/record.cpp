#include "veracity/record.hpp"

#include <stdexcept>

#include "veracity/hashing.hpp"
#include "veracity/serialization.hpp"

namespace veracity {

using nlohmann::json;

std::string_view to_string(RecordStatus status) { return status == RecordStatus::failed ? "failed" : "complete"; }

namespace {

void to_json(json& j, const ChunkSummary& chunk) {
    j = {{"index", chunk.index},
         {"first_sentence", chunk.first_sentence},
         {"last_sentence", chunk.last_sentence},
         {"text", chunk.text}};
}

void from_json(const json& j, ChunkSummary& chunk) {
    chunk.index = j.at("index").get<std::size_t>();
    chunk.first_sentence = j.at("first_sentence").get<std::size_t>();
    chunk.last_sentence = j.at("last_sentence").get<std::size_t>();
    chunk.text = j.at("text").get<std::string>();
}

}  // namespace

void to_json(json& j, const EvaluationRecord& record) {
    json chunks = json::array();
    for (const auto& c : record.chunks) {
        json cj;
        to_json(cj, c);
        chunks.push_back(std::move(cj));
    }
    j = {{"schema_version", kRecordSchemaVersion},
         {"id", record.id},
         {"question", record.question},
         {"response", record.response},
         {"benchmark_tag", record.benchmark_tag},
         {"status", to_string(record.status)},
         {"error", record.error ? json(*record.error) : json(nullptr)},
         {"sentence_count", record.sentence_count},
         {"chunks", chunks},
         {"claims", record.claims},
         {"duplicates", record.duplicates},
         {"parse_warnings", record.parse_warnings},
         {"warnings", record.warnings},
         {"tally", record.tally},
         {"score", record.score},
         {"ledger", record.ledger},
         {"params", record.params},
         {"reconcile", record.reconcile},
         {"config", record.config},
         {"started_at", record.started_at},
         {"finished_at", record.finished_at}};
}

void from_json(const json& j, EvaluationRecord& record) {
    const int version = j.value("schema_version", 0);
    if (version != kRecordSchemaVersion) {
        throw std::invalid_argument("unsupported record schema version " + std::to_string(version));
    }
    record.id = j.at("id").get<std::string>();
    record.question = j.at("question").get<std::string>();
    record.response = j.at("response").get<std::string>();
    record.benchmark_tag = j.value("benchmark_tag", std::string{});
    const auto status = j.at("status").get<std::string>();
    if (status != "complete" && status != "failed") throw std::invalid_argument("unknown record status: " + status);
    record.status = status == "failed" ? RecordStatus::failed : RecordStatus::complete;
    record.error = j.contains("error") && !j.at("error").is_null()
                       ? std::optional<std::string>(j.at("error").get<std::string>())
                       : std::nullopt;
    record.sentence_count = j.at("sentence_count").get<std::size_t>();
    record.chunks.clear();
    for (const auto& c : j.at("chunks")) {
        ChunkSummary summary;
        from_json(c, summary);
        record.chunks.push_back(std::move(summary));
    }
    record.claims = j.at("claims").get<std::vector<VerifiedClaim>>();
    record.duplicates = j.value("duplicates", std::vector<DuplicateClaim>{});
    record.parse_warnings = j.value("parse_warnings", std::vector<ParseWarning>{});
    record.warnings = j.value("warnings", std::vector<std::string>{});
    record.tally = j.at("tally").get<ClaimTally>();
    record.score = j.at("score").get<FactualityScore>();
    record.ledger = j.at("ledger").get<LedgerTotals>();
    record.params = j.at("params").get<PipelineParams>();
    record.reconcile = j.at("reconcile").get<ReconcileReport>();
    record.config = j.value("config", json::object());
    record.started_at = j.value("started_at", std::string{});
    record.finished_at = j.value("finished_at", std::string{});
}

std::string record_digest(const EvaluationRecord& record) {
    json j = record;
    j.erase("started_at");
    j.erase("finished_at");
    j["ledger"].erase("wall_time_ms");
    return sha256_hex(j.dump());
}

}  // namespace veracity
