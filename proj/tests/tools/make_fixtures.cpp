// Records the scripted scenario world into a fixture directory so the CLI can
// be exercised offline with `--backend mock`.
//
//   veracity_make_fixtures <out_dir>
//
// Writes <out_dir>/input.jsonl, <out_dir>/ground_truth.jsonl and
// <out_dir>/fixtures/.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "scenario.hpp"
#include "veracity/pipeline.hpp"

using namespace veracity;
using namespace veracity::testing;
namespace fs = std::filesystem;

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: veracity_make_fixtures <out_dir>\n";
        return 2;
    }
    const fs::path out = argv[1];
    fs::remove_all(out);
    fs::create_directories(out);

    ScenarioWorld world;
    std::vector<Scenario> scenarios{three_claim_scenario()};
    std::mt19937_64 rng(11);
    scenarios.push_back(random_scenario(rng, "b1", 9, 6, 0.5));
    scenarios.push_back(random_scenario(rng, "b2", 4, 0, 0.5));
    scenarios[1].benchmark_tag = "bio";

    std::ofstream input(out / "input.jsonl");
    std::ofstream truth(out / "ground_truth.jsonl");
    for (auto& s : scenarios) {
        world.add(s);
        input << nlohmann::json{{"id", s.id}, {"question", s.question}, {"response", s.response()},
                                {"benchmark_tag", s.benchmark_tag}}
                     .dump()
              << '\n';
        truth << nlohmann::json{{"id", s.id}, {"benchmark_tag", s.benchmark_tag}, {"K_prime", 2}, {"S_true", 2},
                                {"N_true", 1}, {"I_true", 0}, {"f1_true", 0.8}}
                     .dump()
              << '\n';
    }
    input.close();
    truth.close();

    // Replaying requires the CLI defaults for every request-shaping setting.
    PipelineConfig config;
    config.backend.fixtures_dir = (out / "fixtures").string();
    auto store = std::make_shared<ResponseStore>(out / "fixtures");
    BackendClient client(std::make_shared<RecordingLlm>(world.llm(), store),
                         std::make_shared<RecordingSearch>(world.search(), store),
                         std::make_shared<RecordingReader>(world.reader(), store), instant_retry());
    BatchOptions options;
    options.clock = fixed_clock();
    BatchResult result;
    try {
        result = run_batch(out / "input.jsonl", out / "recording_run", config, client, options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    fs::remove_all(out / "recording_run");
    std::cout << "recorded " << result.records.size() << " responses into " << (out / "fixtures").string() << '\n';
    return 0;
}
