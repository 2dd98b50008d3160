#include "veracity/scoring.hpp"

#include <cmath>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "veracity/errors.hpp"

namespace veracity {

void ClaimTally::add(FinalCategory category) {
    switch (category) {
        case FinalCategory::Supported: ++supported; break;
        case FinalCategory::NonSupported: ++non_supported; break;
        case FinalCategory::Irrelevant: ++irrelevant; break;
        case FinalCategory::Dropped: ++dropped; break;
    }
}

ClaimTally tally(std::span<const VerifiedClaim> claims) {
    ClaimTally t;
    for (const auto& c : claims) t.add(c.final_category);
    return t;
}

std::string_view to_string(ScoreMode mode) { return mode == ScoreMode::safe ? "safe" : "fastfact"; }

ScoreMode parse_score_mode(std::string_view name) {
    if (name == "fastfact") return ScoreMode::fastfact;
    if (name == "safe") return ScoreMode::safe;
    throw ConfigError("unknown score mode: " + std::string(name));
}

void ScoreConfig::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be a positive finite number");
    if (k_target == 0) throw ConfigError("target claim count must be positive");
}

std::optional<double> precision(const ClaimTally& tally) {
    if (tally.valid() == 0) return std::nullopt;
    return static_cast<double>(tally.supported) / static_cast<double>(tally.valid());
}

double recall_safe(std::size_t supported, std::size_t k) {
    if (k == 0) throw ConfigError("K must be positive");
    return std::min(static_cast<double>(supported) / static_cast<double>(k), 1.0);
}

double recall_fastfact(std::size_t supported, std::size_t k_prime, double gamma) {
    if (k_prime == 0) throw ConfigError("K' must be positive");
    if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
    const double distance = std::fabs(static_cast<double>(supported) - static_cast<double>(k_prime));
    return 2.0 / (1.0 + std::exp(gamma * distance));
}

double f1(std::optional<double> precision, double recall) {
    if (!precision) return 0.0;
    const double sum = *precision + recall;
    return sum > 0.0 ? 2.0 * *precision * recall / sum : 0.0;
}

FactualityScore score(const ClaimTally& tally, const ScoreConfig& config) {
    config.validate();
    FactualityScore s;
    s.tally = tally;
    s.config = config;
    s.precision = precision(tally);
    s.recall = config.mode == ScoreMode::safe ? recall_safe(tally.supported, config.k_target)
                                              : recall_fastfact(tally.supported, config.k_target, config.gamma);
    s.no_verifiable_claims = !s.precision.has_value();
    s.f1 = f1(s.precision, s.recall);
    return s;
}

std::vector<GroundTruthRow> load_ground_truth(std::string_view jsonl, std::vector<std::string>* warnings) {
    std::vector<GroundTruthRow> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= jsonl.size()) {
        auto end = jsonl.find('\n', pos);
        if (end == std::string_view::npos) end = jsonl.size();
        const auto line = jsonl.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            GroundTruthRow row;
            row.id = j.at("id").get<std::string>();
            row.benchmark_tag = j.value("benchmark_tag", std::string{});
            row.k_prime = j.at("K_prime").get<std::size_t>();
            row.supported = j.at("S_true").get<std::size_t>();
            row.non_supported = j.at("N_true").get<std::size_t>();
            row.irrelevant = j.value("I_true", std::size_t{0});
            row.f1 = j.value("f1_true", 0.0);
            if (row.k_prime == 0) throw std::invalid_argument("K_prime must be positive");
            rows.push_back(std::move(row));
        } catch (const std::exception& e) {
            if (warnings) warnings->push_back("ground truth line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return rows;
}

AlignmentReport alignment_metrics(std::span<const PredictedRow> predicted, std::span<const GroundTruthRow> truth) {
    AlignmentReport report;
    std::unordered_map<std::string, const GroundTruthRow*> by_id;
    for (const auto& row : truth) {
        if (!by_id.emplace(row.id, &row).second) report.warnings.push_back("duplicate ground truth id: " + row.id);
    }

    std::set<std::string> matched;
    const auto accumulate = [](AlignmentDeltas& d, const PredictedRow& p, const GroundTruthRow& t) {
        const auto diff = [](std::size_t a, std::size_t b) {
            return std::fabs(static_cast<double>(a) - static_cast<double>(b));
        };
        ++d.responses;
        d.k_prime += diff(p.tally.valid(), t.k_prime);
        d.f1 += std::fabs(p.f1 - t.f1);
        d.supported += diff(p.tally.supported, t.supported);
        d.unsupported += diff(p.tally.non_supported, t.non_supported);
        d.irrelevant += diff(p.tally.irrelevant, t.irrelevant);
    };
    for (const auto& p : predicted) {
        auto it = by_id.find(p.id);
        if (it == by_id.end()) {
            report.unmatched_ids.push_back(p.id);
            continue;
        }
        if (!matched.insert(p.id).second) {
            report.warnings.push_back("duplicate predicted id: " + p.id);
            continue;
        }
        accumulate(report.overall, p, *it->second);
        accumulate(report.by_tag[it->second->benchmark_tag], p, *it->second);
    }
    for (const auto& row : truth) {
        if (!matched.count(row.id)) report.unmatched_ids.push_back(row.id);
    }

    const auto finish = [](AlignmentDeltas& d) {
        if (d.responses == 0) return;
        const double n = static_cast<double>(d.responses);
        d.k_prime /= n;
        d.f1 /= n;
        d.supported /= n;
        d.unsupported /= n;
        d.irrelevant /= n;
    };
    finish(report.overall);
    for (auto& [tag, d] : report.by_tag) finish(d);
    return report;
}

}  // namespace veracity
