// veracity: command-line front end for batch evaluation, rescoring, cost
// prediction and report rendering.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "veracity/accounting.hpp"
#include "veracity/errors.hpp"
#include "veracity/pipeline.hpp"
#include "veracity/report.hpp"
#include "veracity/serialization.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace veracity;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Config flags shared by `evaluate`; each one that is given overrides the
/// config file.
struct ConfigFlags {
    std::string config_file;
    std::optional<std::string> stride;
    std::optional<double> theta;
    std::optional<std::size_t> results_per_claim;
    std::optional<std::size_t> top_m;
    std::optional<std::size_t> chunk_len;
    std::optional<std::size_t> chunk_overlap;
    std::optional<double> k1;
    std::optional<double> b;
    std::optional<double> gamma;
    std::optional<std::string> score_mode;
    std::optional<std::size_t> k_target;
    std::optional<int> max_tokens;
    std::optional<double> temperature;
    std::optional<std::size_t> parallelism;
    std::optional<std::string> cache_dir;
    std::optional<int> max_attempts;
    std::optional<std::int64_t> base_delay_ms;
    std::optional<std::string> backend;
    std::optional<std::string> fixtures;
    bool record = false;
    bool direct_fetch = false;
    std::optional<std::string> model;
    std::optional<std::string> llm_url;
    std::optional<std::string> search_url;
    std::optional<std::string> reader_url;

    void add_to(CLI::App& app) {
        app.add_option("--config", config_file, "JSON config file; flags override its values")
            ->check(CLI::ExistingFile);
        app.add_option("--stride", stride, "Sentences per extraction chunk, or \"max\" for the whole response");
        app.add_option("--theta", theta, "Confidence gate threshold");
        app.add_option("--results-per-claim", results_per_claim, "Search results fetched per claim");
        app.add_option("--top-m", top_m, "Evidence chunks given to the verifier");
        app.add_option("--chunk-len", chunk_len, "Sentences per evidence chunk");
        app.add_option("--chunk-overlap", chunk_overlap, "Sentence overlap between evidence chunks");
        app.add_option("--k1", k1, "BM25 k1");
        app.add_option("--b", b, "BM25 b");
        app.add_option("--gamma", gamma, "Recall decay rate");
        app.add_option("--score-mode", score_mode, "fastfact or safe")->check(CLI::IsMember({"fastfact", "safe"}));
        app.add_option("--k-target", k_target, "K' (fastfact) or K (safe) when no ground truth is given");
        app.add_option("--max-tokens", max_tokens, "Completion token limit");
        app.add_option("--temperature", temperature, "Sampling temperature");
        app.add_option("--parallelism", parallelism, "Concurrent backend-bound tasks");
        app.add_option("--cache-dir", cache_dir, "Response cache directory");
        app.add_option("--max-attempts", max_attempts, "Attempts per backend call");
        app.add_option("--base-delay-ms", base_delay_ms, "First retry delay");
        app.add_option("--backend", backend, "mock or http")->check(CLI::IsMember({"mock", "http"}));
        app.add_option("--fixtures", fixtures, "Fixture directory (mock backend, or record target)");
        app.add_flag("--record", record, "With --backend http, store every response under --fixtures");
        app.add_flag("--direct-fetch", direct_fetch, "Fetch pages directly instead of through the reader service");
        app.add_option("--model", model, "LLM model name");
        app.add_option("--llm-url", llm_url, "Chat completions base URL");
        app.add_option("--search-url", search_url, "Search API base URL");
        app.add_option("--reader-url", reader_url, "Reader service base URL");
    }

    PipelineConfig build() const {
        PipelineConfig config;
        if (!config_file.empty()) {
            try {
                config = config_from_json(json::parse(read_file(config_file)));
            } catch (const json::exception& e) {
                throw ConfigError("invalid config file " + config_file + ": " + e.what());
            }
        }
        json overlay = json::object();
        if (stride) {
            if (*stride == "max") {
                overlay["stride"] = "max";
            } else {
                try {
                    std::size_t used = 0;
                    const auto value = std::stoull(*stride, &used);
                    if (used != stride->size()) throw std::invalid_argument("trailing characters");
                    overlay["stride"] = value;
                } catch (const std::exception&) {
                    throw ConfigError("--stride must be a positive integer or \"max\"");
                }
            }
        }
        if (theta) overlay["theta"] = *theta;
        if (results_per_claim) overlay["results_per_claim"] = *results_per_claim;
        if (top_m) overlay["top_m"] = *top_m;
        if (chunk_len) overlay["evidence"]["chunk_len"] = *chunk_len;
        if (chunk_overlap) overlay["evidence"]["overlap"] = *chunk_overlap;
        if (k1) overlay["bm25"]["k1"] = *k1;
        if (b) overlay["bm25"]["b"] = *b;
        if (gamma) overlay["scoring"]["gamma"] = *gamma;
        if (score_mode) overlay["scoring"]["mode"] = *score_mode;
        if (k_target) overlay["scoring"]["k_target"] = *k_target;
        if (max_tokens) overlay["max_tokens"] = *max_tokens;
        if (temperature) overlay["temperature"] = *temperature;
        if (parallelism) overlay["parallelism"] = *parallelism;
        if (cache_dir) overlay["cache_dir"] = *cache_dir;
        if (max_attempts) overlay["retry"]["max_attempts"] = *max_attempts;
        if (base_delay_ms) overlay["retry"]["base_delay_ms"] = *base_delay_ms;
        if (backend) overlay["backend"]["kind"] = *backend;
        if (fixtures) overlay["backend"]["fixtures_dir"] = *fixtures;
        if (record) overlay["backend"]["record"] = true;
        if (direct_fetch) overlay["backend"]["direct_fetch"] = true;
        if (model) overlay["backend"]["llm"]["model"] = *model;
        if (llm_url) overlay["backend"]["llm"]["base_url"] = *llm_url;
        if (search_url) overlay["backend"]["search"]["base_url"] = *search_url;
        if (reader_url) overlay["backend"]["reader"]["base_url"] = *reader_url;
        config = config_from_json(overlay, config);
        config.validate();
        if (config.backend.kind == "mock" && config.backend.fixtures_dir.empty()) {
            throw ConfigError("--backend mock needs --fixtures <dir>");
        }
        return config;
    }
};

void print_report(const AggregateReport& report, const std::string& format) {
    if (format == "json" || format == "both") std::cout << to_json(report).dump(2) << '\n';
    if (format == "text" || format == "both") std::cout << render_text(report);
}

ScoreConfig score_config(const std::optional<double>& gamma, const std::optional<std::string>& mode,
                         const std::optional<std::size_t>& k_target) {
    ScoreConfig scoring;
    if (gamma) scoring.gamma = *gamma;
    if (mode) scoring.mode = parse_score_mode(*mode);
    if (k_target) scoring.k_target = *k_target;
    scoring.validate();
    return scoring;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Factuality evaluation of long-form LLM responses"};
    app.require_subcommand(1);

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate a JSON-lines batch into a run directory");
    ConfigFlags flags;
    std::string input, run_dir, question, response, eval_format = "text";
    std::optional<std::string> eval_truth;
    bool deterministic = false;
    evaluate->add_option("--input", input, "JSON lines {id, question, response, benchmark_tag?}");
    evaluate->add_option("--run-dir", run_dir, "Run directory; an existing one is resumed");
    evaluate->add_option("--question", question, "Evaluate one response instead of a batch");
    evaluate->add_option("--response", response, "Response text for --question");
    evaluate->add_option("--ground-truth", eval_truth, "Ground-truth JSON lines")->check(CLI::ExistingFile);
    evaluate->add_flag("--deterministic", deterministic, "Use a fixed clock so records are byte-stable");
    evaluate->add_option("--format", eval_format, "text, json or both")->check(CLI::IsMember({"text", "json", "both"}));
    flags.add_to(*evaluate);

    // score
    auto* score_cmd = app.add_subcommand("score", "Recompute scores from persisted claims without backends");
    std::string score_dir, score_format = "text";
    std::optional<std::string> score_truth, score_mode;
    std::optional<double> score_gamma;
    std::optional<std::size_t> score_k;
    std::string score_out;
    score_cmd->add_option("--run-dir", score_dir, "Run directory")->required()->check(CLI::ExistingDirectory);
    score_cmd->add_option("--ground-truth", score_truth, "Ground-truth JSON lines")->check(CLI::ExistingFile);
    score_cmd->add_option("--gamma", score_gamma, "Recall decay rate");
    score_cmd->add_option("--score-mode", score_mode, "fastfact or safe")->check(CLI::IsMember({"fastfact", "safe"}));
    score_cmd->add_option("--k-target", score_k, "K' or K for responses without ground truth");
    score_cmd->add_option("--out", score_out, "Write rescored records to this JSON-lines file");
    score_cmd->add_option("--format", score_format, "text, json or both")
        ->check(CLI::IsMember({"text", "json", "both"}));

    // predict-cost
    auto* predict = app.add_subcommand("predict-cost", "Predicted backend calls for one response");
    std::string pipeline = "fastfact";
    PipelineParams params;
    bool predict_json = false;
    predict->add_option("--pipeline", pipeline, "fastfact, safe, veriscore or factscore");
    predict->add_option("-N,--sentences", params.sentences, "Sentences in the response")->required();
    predict->add_option("-M,--claims", params.claims, "Atomic claims")->required();
    predict->add_option("-k,--results-per-claim", params.results_per_claim, "Search results per claim");
    predict->add_option("-p,--verify-fraction", params.verify_fraction, "Fraction of claims verified with evidence");
    predict->add_option("-w,--stride", params.stride, "Sentences per extraction chunk");
    predict->add_flag("--json", predict_json, "Print JSON");

    // report
    auto* report_cmd = app.add_subcommand("report", "Render the aggregate report of a run directory");
    std::string report_dir, report_format = "text";
    std::optional<std::string> report_truth;
    report_cmd->add_option("--run-dir", report_dir, "Run directory")->required()->check(CLI::ExistingDirectory);
    report_cmd->add_option("--ground-truth", report_truth, "Ground-truth JSON lines")->check(CLI::ExistingFile);
    report_cmd->add_option("--format", report_format, "text, json or both")
        ->check(CLI::IsMember({"text", "json", "both"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*evaluate) {
            const auto config = flags.build();
            auto client = make_backend_client(config);
            const Clock clock = deterministic ? fixed_clock() : system_clock();
            if (!question.empty() || !response.empty()) {
                if (question.empty() || response.empty()) throw ConfigError("--question and --response go together");
                const auto record = evaluate_response(question, response, config, *client, clock);
                std::cout << json(record).dump(2) << '\n';
                return record.status == RecordStatus::complete ? 0 : 1;
            }
            if (input.empty() || run_dir.empty()) throw ConfigError("evaluate needs --input and --run-dir");
            BatchOptions options;
            options.clock = clock;
            if (eval_truth) options.ground_truth = fs::path(*eval_truth);
            const auto result = run_batch(input, run_dir, config, *client, options);
            for (const auto& w : result.manifest.warnings) std::cerr << "warning: " << w << '\n';
            std::cerr << "run " << result.manifest.run_id << ": evaluated " << result.evaluated << ", resumed "
                      << result.resumed << '\n';
            print_report(result.report, eval_format);
            return result.report.overall.failed == 0 ? 0 : 1;
        }
        if (*score_cmd) {
            const auto scoring = score_config(score_gamma, score_mode, score_k);
            std::optional<fs::path> truth;
            if (score_truth) truth = fs::path(*score_truth);
            const auto result = rescore_run(score_dir, scoring, truth);
            if (!score_out.empty()) {
                std::ofstream out(score_out);
                for (const auto& r : result.records) out << json(r).dump() << '\n';
                if (!out) throw std::runtime_error("cannot write " + score_out);
            }
            print_report(result.report, score_format);
            return 0;
        }
        if (*predict) {
            const auto kind = parse_pipeline_kind(pipeline);
            params.validate();
            const auto budget = predicted_calls(kind, params);
            if (predict_json) {
                std::cout << json{{"pipeline", to_string(kind)},
                                  {"extractor", budget.extractor},
                                  {"searches", budget.searches},
                                  {"verifier", budget.verifier},
                                  {"total", budget.total_llm}}
                                 .dump(2)
                          << '\n';
            } else {
                std::cout << "pipeline " << to_string(kind) << "\nextractor " << budget.extractor << "\nsearches "
                          << budget.searches << "\nverifier " << budget.verifier << "\ntotal " << budget.total_llm
                          << '\n';
            }
            return 0;
        }
        if (*report_cmd) {
            const auto records = load_records(report_dir);
            std::vector<GroundTruthRow> truth;
            if (report_truth) truth = load_ground_truth(read_file(*report_truth));
            print_report(aggregate(records, report_truth ? &truth : nullptr), report_format);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
