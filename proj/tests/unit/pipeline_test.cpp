#include <gtest/gtest.h>

#include <fstream>
#include <thread>

#include "scenario.hpp"
#include "temp_dir.hpp"
#include "veracity/errors.hpp"
#include "veracity/pipeline.hpp"

namespace veracity {
namespace {

using testing::ScenarioWorld;
using testing::TempDir;

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string input_line(const ResponseInput& in) {
    nlohmann::json j{{"id", in.id}, {"question", in.question}, {"response", in.response}};
    if (!in.benchmark_tag.empty()) j["benchmark_tag"] = in.benchmark_tag;
    return j.dump() + "\n";
}

PipelineConfig config_with(std::size_t parallelism = 1) {
    auto config = testing::scripted_config();
    config.parallelism = parallelism;
    return config;
}

TEST(PipelineConfig, Validation) {
    auto c = config_with();
    EXPECT_NO_THROW(c.validate());
    c.stride = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = config_with();
    c.theta = 1.1;
    EXPECT_THROW(c.validate(), ConfigError);
    c = config_with();
    c.scoring.gamma = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = config_with();
    c.evidence = {2, 2};
    EXPECT_THROW(c.validate(), ConfigError);
    c = config_with();
    c.results_per_claim = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = config_with();
    c.top_m = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = config_with();
    c.backend.kind = "grpc";
    EXPECT_THROW(c.validate(), ConfigError);
    c = config_with();
    c.backend.fixtures_dir.clear();
    EXPECT_THROW(c.validate(), ConfigError);
}

TEST(PipelineConfig, JsonOverlayAndDigest) {
    const auto base = config_with();
    const auto c = config_from_json(
        {{"stride", "max"}, {"theta", 0.8}, {"scoring", {{"gamma", 0.5}, {"mode", "safe"}}}, {"parallelism", 3}},
        base);
    EXPECT_EQ(c.stride, kWholeResponse);
    EXPECT_EQ(c.theta, 0.8);
    EXPECT_EQ(c.scoring.mode, ScoreMode::safe);
    EXPECT_EQ(c.scoring.gamma, 0.5);
    EXPECT_EQ(c.results_per_claim, base.results_per_claim);
    EXPECT_EQ(c.evaluation_snapshot().at("stride"), "max");
    EXPECT_THROW(config_from_json({{"stride", "huge"}}), ConfigError);
    EXPECT_THROW(config_from_json({{"theta", "high"}}), ConfigError);

    auto other = c;
    other.parallelism = 16;
    other.cache_dir = "/tmp/x";
    EXPECT_EQ(config_digest(c), config_digest(other));
    other.top_m = 3;
    EXPECT_NE(config_digest(c), config_digest(other));

    const auto round = config_from_json(to_json(c), PipelineConfig{});
    EXPECT_EQ(config_digest(round), config_digest(c));
    EXPECT_EQ(round.parallelism, 3u);
}

TEST(LoadInputs, SkipsMalformedAndDuplicates) {
    std::vector<std::string> warnings;
    const auto inputs = load_inputs(
        "{\"id\":\"a\",\"question\":\"q\",\"response\":\"r\"}\n"
        "{\"id\":\"b\",\"question\":\"q\"}\n"
        "{\"id\":\"a\",\"question\":\"q2\",\"response\":\"r2\"}\n"
        "\n"
        "{\"id\":\"c\",\"question\":\"q\",\"response\":\"r\",\"benchmark_tag\":\"t\"}",
        &warnings);
    ASSERT_EQ(inputs.size(), 2u);
    EXPECT_EQ(inputs[1].benchmark_tag, "t");
    EXPECT_EQ(warnings.size(), 2u);
}

TEST(WorkLimiter, BoundsConcurrency) {
    WorkLimiter limiter(3);
    std::atomic<int> active{0}, peak{0};
    parallel_for(40, 10, [&](std::size_t) {
        WorkLimiter::Permit permit(limiter);
        const int now = ++active;
        int seen = peak.load();
        while (now > seen && !peak.compare_exchange_weak(seen, now)) {
        }
        std::this_thread::sleep_for(std::chrono::milliseconds{1});
        --active;
    });
    EXPECT_LE(peak.load(), 3);
    EXPECT_THROW(WorkLimiter(0), ConfigError);
}

TEST(ParallelFor, RethrowsFirstError) {
    std::atomic<int> ran{0};
    EXPECT_THROW(parallel_for(100, 4,
                              [&](std::size_t i) {
                                  ++ran;
                                  if (i == 5) throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
    EXPECT_GE(ran.load(), 1);
    std::vector<int> out(50, 0);
    parallel_for(50, 8, [&](std::size_t i) { out[i] = int(i); });
    for (int i = 0; i < 50; ++i) EXPECT_EQ(out[i], i);
}

TEST(Evaluator, ThreeClaimScenario) {
    ScenarioWorld world;
    const auto scenario = testing::three_claim_scenario();
    world.add(scenario);
    auto client = world.client();
    auto config = config_with();
    config.scoring.k_target = 2;
    Evaluator evaluator(config, *client, fixed_clock());
    const auto record = evaluator.evaluate(scenario.input());

    EXPECT_EQ(record.status, RecordStatus::complete);
    ASSERT_EQ(record.claims.size(), 3u);
    EXPECT_EQ(record.claims[0].route, Route::Gated);
    EXPECT_EQ(record.claims[1].route, Route::EvidenceVerified);
    EXPECT_EQ(record.claims[2].verification_label, VerificationLabel::Refuted);
    EXPECT_EQ(record.tally, (ClaimTally{2, 1, 0, 0}));
    EXPECT_EQ(record.score.precision, 2.0 / 3.0);
    EXPECT_EQ(record.score.recall, 1.0);
    EXPECT_NEAR(record.score.f1, 0.8, 1e-15);

    EXPECT_EQ(record.ledger.extractor_calls, 1u);
    EXPECT_EQ(record.ledger.search_queries, 20u);
    EXPECT_EQ(record.ledger.pages_fetched, 20u);
    EXPECT_EQ(record.ledger.verifier_calls, 2u);
    EXPECT_TRUE(record.reconcile.exact_required);
    EXPECT_TRUE(record.reconcile.consistent);
    EXPECT_FALSE(record.claims[1].evidence_used.empty());
    EXPECT_EQ(record.claims[0].claim.claim_id, "r1#c0.l1");
}

TEST(Evaluator, NoClaims) {
    ScenarioWorld world;
    testing::Scenario s;
    s.sentences = {"Hello there.", "Nothing to check."};
    world.add(s);
    auto client = world.client();
    const auto record = Evaluator(config_with(), *client, fixed_clock()).evaluate(s.input());
    EXPECT_TRUE(record.claims.empty());
    EXPECT_TRUE(record.score.no_verifiable_claims);
    EXPECT_EQ(record.score.f1, 0.0);
    EXPECT_EQ(record.ledger.search_queries, 0u);
    EXPECT_EQ(record.ledger.extractor_calls, 1u);
}

TEST(Evaluator, EmptyResponseMakesNoCalls) {
    ScenarioWorld world;
    auto client = world.client();
    const auto record = Evaluator(config_with(), *client, fixed_clock()).evaluate({"e", "q", "   ", ""});
    EXPECT_EQ(record.status, RecordStatus::complete);
    EXPECT_EQ(record.ledger, LedgerTotals{});
    EXPECT_TRUE(record.reconcile.consistent);
}

TEST(Evaluator, ThetaOneDisablesGate) {
    ScenarioWorld world;
    const auto scenario = testing::three_claim_scenario();
    world.add(scenario);
    auto client = world.client();
    auto config = config_with();
    config.theta = 1.0;
    const auto record = Evaluator(config, *client, fixed_clock()).evaluate(scenario.input());
    EXPECT_EQ(record.ledger.verifier_calls, 3u);
    for (const auto& c : record.claims) EXPECT_EQ(c.route, Route::EvidenceVerified);
}

TEST(Evaluator, MissingLogprobsNeverGate) {
    ScenarioWorld world;
    world.set_logprobs(false);
    const auto scenario = testing::three_claim_scenario();
    world.add(scenario);
    auto client = world.client();
    const auto record = Evaluator(config_with(), *client, fixed_clock()).evaluate(scenario.input());
    EXPECT_EQ(record.ledger.verifier_calls, 3u);
    EXPECT_FALSE(record.warnings.empty());
}

TEST(Evaluator, StrideControlsExtractorCalls) {
    ScenarioWorld world;
    std::mt19937_64 rng(3);
    const auto s = testing::random_scenario(rng, "s", 10, 4, 0.5);
    world.add(s);
    auto client = world.client();
    for (std::size_t w : {1u, 3u, 10u, 28u}) {
        auto config = config_with();
        config.stride = w;
        const auto record = Evaluator(config, *client, fixed_clock()).evaluate(s.input());
        EXPECT_EQ(record.ledger.extractor_calls, (10 + w - 1) / w);
        EXPECT_EQ(record.claims.size(), 4u);
    }
    auto config = config_with();
    config.stride = kWholeResponse;
    const auto record = Evaluator(config, *client, fixed_clock()).evaluate(s.input());
    EXPECT_EQ(record.ledger.extractor_calls, 1u);
    EXPECT_TRUE(record.reconcile.consistent);
}

TEST(Evaluator, ExtractionOutageFailsRecord) {
    auto llm = std::make_shared<ScriptedLlm>(
        [](const CompletionRequest&) -> CompletionResult { throw TransientBackendError("503"); });
    BackendClient client(llm, nullptr, nullptr, testing::instant_retry());
    const auto record = Evaluator(config_with(), client, fixed_clock()).evaluate({"x", "q", "One. Two.", ""});
    EXPECT_EQ(record.status, RecordStatus::failed);
    ASSERT_TRUE(record.error.has_value());
    EXPECT_EQ(record.ledger.failures, 3u);
    EXPECT_EQ(record.sentence_count, 2u);
}

TEST(Evaluator, SearchAndVerifierFailuresAreAnnotated) {
    ScenarioWorld world;
    const auto scenario = testing::three_claim_scenario();
    world.add(scenario);
    auto search = std::make_shared<ScriptedSearch>(
        [](std::string_view, std::size_t) -> std::vector<SearchHit> { throw BackendError("quota"); });
    auto failing_verifier = std::make_shared<ScriptedLlm>([&](const CompletionRequest& r) {
        if (r.prompt.find("<SOS>") == std::string::npos) throw BackendError("verifier down");
        return world.llm()->complete(r);
    });
    BackendClient client(failing_verifier, search, world.reader(), testing::instant_retry());
    const auto record = Evaluator(config_with(), client, fixed_clock()).evaluate(scenario.input());
    EXPECT_EQ(record.status, RecordStatus::complete);
    const auto& verified = record.claims[1];
    EXPECT_EQ(verified.verification_label, VerificationLabel::NotEnoughEvidence);
    EXPECT_EQ(verified.final_category, FinalCategory::NonSupported);
    EXPECT_EQ(verified.errors.size(), 2u);
    EXPECT_TRUE(verified.evidence_used.empty());
    EXPECT_FALSE(record.reconcile.exact_required);
}

TEST(Evaluator, DeterministicAcrossParallelism) {
    ScenarioWorld world;
    std::mt19937_64 rng(11);
    const auto s = testing::random_scenario(rng, "p", 20, 15, 0.3);
    world.add(s);
    auto client = world.client();
    auto c1 = config_with(1);
    c1.stride = 3;
    auto c8 = config_with(8);
    c8.stride = 3;
    const auto a = Evaluator(c1, *client, fixed_clock()).evaluate(s.input());
    const auto b = Evaluator(c8, *client, fixed_clock()).evaluate(s.input());
    EXPECT_EQ(nlohmann::json(a).dump(), nlohmann::json(b).dump());
}

TEST(Record, JsonRoundTripAndDigest) {
    ScenarioWorld world;
    const auto scenario = testing::three_claim_scenario();
    world.add(scenario);
    auto client = world.client();
    const auto record = Evaluator(config_with(), *client, fixed_clock()).evaluate(scenario.input());
    const nlohmann::json j = record;
    const auto back = j.get<EvaluationRecord>();
    EXPECT_EQ(nlohmann::json(back).dump(), j.dump());
    auto shifted = record;
    shifted.started_at = "2030-01-01T00:00:00.000Z";
    shifted.ledger.wall_time = std::chrono::milliseconds{999};
    EXPECT_EQ(record_digest(shifted), record_digest(record));
    shifted.claims[0].final_category = FinalCategory::Dropped;
    EXPECT_NE(record_digest(shifted), record_digest(record));
}

TEST(Rescore, ScoreRecomputableFromTally) {
    ScenarioWorld world;
    const auto scenario = testing::three_claim_scenario();
    world.add(scenario);
    auto client = world.client();
    auto record = Evaluator(config_with(), *client, fixed_clock()).evaluate(scenario.input());
    const auto original = record.score;
    rescore_record(record, original.config);
    EXPECT_EQ(record.score, original);
    rescore_record(record, {0.9, ScoreMode::fastfact, 5});
    EXPECT_NE(record.score.f1, original.f1);
}

struct BatchFixture {
    TempDir dir;
    ScenarioWorld world;
    std::vector<testing::Scenario> scenarios;
    std::filesystem::path input = dir / "input.jsonl";

    explicit BatchFixture(std::size_t n = 4, std::uint64_t seed = 5) {
        std::mt19937_64 rng(seed);
        std::string text;
        for (std::size_t i = 0; i < n; ++i) {
            auto s = testing::random_scenario(rng, "resp" + std::to_string(i), 3 + i, 2 + i, 0.4);
            s.benchmark_tag = i % 2 == 0 ? "even" : "odd";
            world.add(s);
            text += input_line(s.input());
            scenarios.push_back(std::move(s));
        }
        write_text(input, text);
    }

    BatchOptions options() const {
        BatchOptions o;
        o.clock = fixed_clock();
        return o;
    }
};

TEST(RunBatch, MalformedRowsAndRerun) {
    BatchFixture f;
    {
        std::ofstream out(f.input, std::ios::app);
        out << "{\"id\": 7}\n";
    }
    auto client = f.world.client();
    const auto run = f.dir / "run";
    const auto first = run_batch(f.input, run, config_with(2), *client, f.options());
    EXPECT_EQ(first.records.size(), 4u);
    EXPECT_EQ(first.manifest.warnings.size(), 1u);
    EXPECT_EQ(first.evaluated, 4u);
    EXPECT_EQ(first.manifest.digest, first.manifest.compute_digest());
    EXPECT_GT(first.session_ledger.extractor_calls, 0u);

    const auto before = f.world.calls().extractor + f.world.calls().verifier + f.world.calls().searches;
    const auto second = run_batch(f.input, run, config_with(2), *client, f.options());
    EXPECT_EQ(f.world.calls().extractor + f.world.calls().verifier + f.world.calls().searches, before);
    EXPECT_EQ(second.evaluated, 0u);
    EXPECT_EQ(second.resumed, 4u);
    EXPECT_EQ(second.session_ledger, LedgerTotals{});
    EXPECT_EQ(second.manifest.digest, first.manifest.digest);
    EXPECT_EQ(load_manifest(run).digest, first.manifest.digest);
    EXPECT_EQ(load_records(run).size(), 4u);
}

TEST(RunBatch, RejectsForeignRunDirectory) {
    BatchFixture f;
    auto client = f.world.client();
    const auto run = f.dir / "run";
    run_batch(f.input, run, config_with(), *client, f.options());
    auto changed = config_with();
    changed.top_m = 2;
    EXPECT_THROW(run_batch(f.input, run, changed, *client, f.options()), ConfigError);
}

TEST(RunBatch, KillAndResumeAtEveryBarrier) {
    BatchFixture f(3);
    auto client = f.world.client();
    const auto reference = run_batch(f.input, f.dir / "reference", config_with(1), *client, f.options());

    std::size_t barrier = 1;
    for (;; ++barrier) {
        const auto run = f.dir / ("kill" + std::to_string(barrier));
        auto options = f.options();
        options.halt_after_barriers = barrier;
        bool halted = false;
        try {
            run_batch(f.input, run, config_with(1), *client, options);
        } catch (const HaltRequested&) {
            halted = true;
        }
        const auto resumed = run_batch(f.input, run, config_with(1), *client, f.options());
        EXPECT_EQ(resumed.manifest.digest, reference.manifest.digest) << "barrier " << barrier;
        if (!halted) break;
    }
    EXPECT_GT(barrier, 5u);
}

TEST(RunBatch, ParallelismDoesNotChangeManifest) {
    BatchFixture f(5, 9);
    auto client = f.world.client();
    const auto a = run_batch(f.input, f.dir / "a", config_with(1), *client, f.options());
    const auto b = run_batch(f.input, f.dir / "b", config_with(8), *client, f.options());
    EXPECT_EQ(a.manifest.digest, b.manifest.digest);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        EXPECT_EQ(nlohmann::json(a.records[i]).dump(), nlohmann::json(b.records[i]).dump());
    }
}

TEST(RunBatch, GroundTruthAlignmentAndRescore) {
    BatchFixture f;
    auto client = f.world.client();
    const auto run = f.dir / "run";
    const auto first = run_batch(f.input, run, config_with(), *client, f.options());

    std::string truth;
    for (const auto& r : first.records) {
        truth += nlohmann::json{{"id", r.id},
                                {"benchmark_tag", r.benchmark_tag},
                                {"K_prime", std::max<std::size_t>(r.tally.valid(), 1)},
                                {"S_true", r.tally.supported},
                                {"N_true", r.tally.non_supported},
                                {"I_true", r.tally.irrelevant},
                                {"f1_true", 0.0}}
                     .dump() +
                 "\n";
    }
    write_text(f.dir / "truth.jsonl", truth);

    const auto rescored = rescore_run(run, {0.3, ScoreMode::fastfact, 10}, f.dir / "truth.jsonl");
    ASSERT_TRUE(rescored.report.alignment.has_value());
    EXPECT_EQ(rescored.report.alignment->overall.k_prime, 0.0);
    EXPECT_EQ(rescored.report.alignment->overall.supported, 0.0);
    EXPECT_EQ(rescored.report.alignment->overall.unsupported, 0.0);
    EXPECT_EQ(rescored.report.alignment->overall.irrelevant, 0.0);

    const auto calls = f.world.calls().extractor.load();
    const auto soft = rescore_run(run, {0.05, ScoreMode::fastfact, 1});
    const auto hard = rescore_run(run, {2.0, ScoreMode::fastfact, 1});
    EXPECT_EQ(f.world.calls().extractor.load(), calls);
    bool changed = false;
    for (std::size_t i = 0; i < soft.records.size(); ++i) {
        EXPECT_EQ(soft.records[i].claims, hard.records[i].claims);
        changed |= soft.records[i].score.f1 != hard.records[i].score.f1;
    }
    EXPECT_TRUE(changed);
    EXPECT_EQ(first.report.by_tag.size(), 2u);
}

TEST(RunBatch, FailedRecordsAreRetriedOnResume) {
    BatchFixture f(2);
    std::atomic<bool> outage{true};
    auto llm = std::make_shared<ScriptedLlm>([&](const CompletionRequest& r) {
        if (outage) throw TransientBackendError("down");
        return f.world.llm()->complete(r);
    });
    BackendClient flaky(llm, f.world.search(), f.world.reader(), testing::instant_retry());
    const auto run = f.dir / "run";
    const auto first = run_batch(f.input, run, config_with(), flaky, f.options());
    EXPECT_EQ(first.report.overall.failed, 2u);
    EXPECT_EQ(first.session_ledger.failures, 6u);
    outage = false;
    const auto second = run_batch(f.input, run, config_with(), flaky, f.options());
    EXPECT_EQ(second.evaluated, 2u);
    EXPECT_EQ(second.report.overall.failed, 0u);
    EXPECT_EQ(load_records(run).size(), 2u);
}

TEST(MockBackend, RecordThenReplay) {
    ScenarioWorld world;
    const auto scenario = testing::three_claim_scenario();
    world.add(scenario);
    TempDir fixtures;
    auto store = std::make_shared<ResponseStore>(fixtures.path());
    BackendClient recorder(std::make_shared<RecordingLlm>(world.llm(), store),
                           std::make_shared<RecordingSearch>(world.search(), store),
                           std::make_shared<RecordingReader>(world.reader(), store), testing::instant_retry());
    auto config = config_with();
    config.backend.fixtures_dir = fixtures.path().string();
    const auto live = Evaluator(config, recorder, fixed_clock()).evaluate(scenario.input());

    auto replay = make_backend_client(config);
    const auto replayed = Evaluator(config, *replay, fixed_clock()).evaluate(scenario.input());
    EXPECT_EQ(record_digest(live), record_digest(replayed));
}

TEST(Cache, SecondRunServedFromCache) {
    ScenarioWorld world;
    const auto scenario = testing::three_claim_scenario();
    world.add(scenario);
    TempDir cache_dir;
    auto cache = std::make_shared<ResponseStore>(cache_dir.path());
    auto client = world.client(cache);
    const auto first = Evaluator(config_with(), *client, fixed_clock()).evaluate(scenario.input());
    const auto second = Evaluator(config_with(), *client, fixed_clock()).evaluate(scenario.input());
    EXPECT_EQ(second.ledger.extractor_calls + second.ledger.verifier_calls + second.ledger.search_queries, 0u);
    EXPECT_GT(second.ledger.cache_hits, 0u);
    EXPECT_FALSE(second.reconcile.exact_required);
    EXPECT_EQ(second.tally, first.tally);
}

}  // namespace
}  // namespace veracity
