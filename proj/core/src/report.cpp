#include "veracity/report.hpp"

#include <cstdio>
#include <sstream>

#include "veracity/serialization.hpp"

namespace veracity {

using nlohmann::json;

namespace {

constexpr std::string_view kUntagged = "untagged";

struct Accumulator {
    GroupSummary summary;
    double precision_sum = 0.0;
    std::size_t precision_count = 0;
    double recall_sum = 0.0;
    double f1_sum = 0.0;
    std::size_t scored = 0;

    void add(const EvaluationRecord& record) {
        ++summary.responses;
        summary.ledger += record.ledger;
        if (record.status == RecordStatus::failed) {
            ++summary.failed;
            return;
        }
        summary.claims.supported += record.tally.supported;
        summary.claims.non_supported += record.tally.non_supported;
        summary.claims.irrelevant += record.tally.irrelevant;
        summary.claims.dropped += record.tally.dropped;
        if (record.score.no_verifiable_claims) ++summary.no_claim_responses;
        if (record.score.precision) {
            precision_sum += *record.score.precision;
            ++precision_count;
        }
        recall_sum += record.score.recall;
        f1_sum += record.score.f1;
        ++scored;
    }

    GroupSummary finish() {
        if (precision_count > 0) summary.mean_precision = precision_sum / static_cast<double>(precision_count);
        if (scored > 0) {
            summary.mean_recall = recall_sum / static_cast<double>(scored);
            summary.mean_f1 = f1_sum / static_cast<double>(scored);
        }
        return summary;
    }
};

json summary_json(const GroupSummary& s) {
    return {{"responses", s.responses},
            {"failed", s.failed},
            {"no_claim_responses", s.no_claim_responses},
            {"claims", s.claims},
            {"mean_precision", s.mean_precision},
            {"mean_recall", s.mean_recall},
            {"mean_f1", s.mean_f1},
            {"ledger", s.ledger}};
}

std::string fixed(double value, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

void summary_row(std::ostringstream& out, std::string_view name, const GroupSummary& s) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-20.20s %6zu %6zu %6zu %6zu %6zu %8s %8s %8s\n", std::string(name).c_str(),
                  s.responses, s.failed, s.claims.supported, s.claims.non_supported, s.claims.irrelevant,
                  fixed(s.mean_precision).c_str(), fixed(s.mean_recall).c_str(), fixed(s.mean_f1).c_str());
    out << buf;
}

}  // namespace

AggregateReport aggregate(std::span<const EvaluationRecord> records, const std::vector<GroundTruthRow>* truth) {
    AggregateReport report;
    Accumulator overall;
    std::map<std::string, Accumulator> by_tag;
    std::vector<PredictedRow> predicted;
    for (const auto& record : records) {
        overall.add(record);
        by_tag[record.benchmark_tag.empty() ? std::string(kUntagged) : record.benchmark_tag].add(record);
        if (record.status == RecordStatus::complete) {
            predicted.push_back({record.id, record.tally, record.score.f1});
            if (record.reconcile.consistent) {
                ++report.reconciled;
            } else {
                ++report.reconcile_mismatches;
            }
        }
    }
    report.overall = overall.finish();
    for (auto& [tag, acc] : by_tag) report.by_tag[tag] = acc.finish();
    if (truth) report.alignment = alignment_metrics(predicted, *truth);
    return report;
}

json to_json(const AggregateReport& report) {
    json by_tag = json::object();
    for (const auto& [tag, s] : report.by_tag) by_tag[tag] = summary_json(s);
    json j = {{"overall", summary_json(report.overall)},
              {"by_tag", by_tag},
              {"reconciled", report.reconciled},
              {"reconcile_mismatches", report.reconcile_mismatches}};
    j["alignment"] = report.alignment ? json(*report.alignment) : json(nullptr);
    return j;
}

std::string render_text(const AggregateReport& report) {
    std::ostringstream out;
    char header[256];
    std::snprintf(header, sizeof header, "%-20s %6s %6s %6s %6s %6s %8s %8s %8s\n", "group", "resp", "fail", "S",
                  "N", "I", "P", "R", "F1");
    out << header;
    summary_row(out, "overall", report.overall);
    for (const auto& [tag, s] : report.by_tag) summary_row(out, tag, s);

    const auto& l = report.overall.ledger;
    out << "\ncalls: extractor " << l.extractor_calls << ", verifier " << l.verifier_calls << ", search results "
        << l.search_queries << ", pages " << l.pages_fetched << ", cache hits " << l.cache_hits << ", failures "
        << l.failures << "\n";
    out << "reconciled " << report.reconciled << ", mismatched " << report.reconcile_mismatches << "\n";

    if (report.alignment) {
        const auto row = [&](std::string_view name, const AlignmentDeltas& d) {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%-20.20s %6zu %8s %8s %8s %8s %8s\n", std::string(name).c_str(),
                          d.responses, fixed(d.k_prime).c_str(), fixed(d.f1).c_str(), fixed(d.supported).c_str(),
                          fixed(d.unsupported).c_str(), fixed(d.irrelevant).c_str());
            out << buf;
        };
        char buf[256];
        std::snprintf(buf, sizeof buf, "\n%-20s %6s %8s %8s %8s %8s %8s\n", "alignment", "resp", "|dK'|", "|dF1|",
                      "|dS|", "|dN|", "|dI|");
        out << buf;
        row("overall", report.alignment->overall);
        for (const auto& [tag, d] : report.alignment->by_tag) row(tag.empty() ? kUntagged : tag, d);
        if (!report.alignment->unmatched_ids.empty()) {
            out << "unmatched ids: " << report.alignment->unmatched_ids.size() << "\n";
        }
    }
    return out.str();
}

}  // namespace veracity
