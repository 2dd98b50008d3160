#pragma once

// Independent reference implementations used to cross-check the library.
// They share no code with core/ beyond the public data types.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace veracity::testing {

std::optional<double> oracle_precision(std::size_t supported, std::size_t non_supported);
double oracle_recall_safe(std::size_t supported, std::size_t k);
/// Symmetric-penalty recall written as 1 - tanh(gamma * d / 2).
double oracle_recall_fastfact(std::size_t supported, std::size_t k_prime, double gamma);
double oracle_f1(std::optional<double> precision, double recall);

struct OracleChunk {
    std::string url;
    std::size_t chunk_index = 0;
    std::string text;
};

struct OracleHit {
    std::size_t position = 0;  // index into the corpus
    double score = 0.0;
};

/// Scores every chunk against the distinct query terms by direct counting and
/// returns the positive-scoring top m (score desc, url asc, chunk_index asc).
std::vector<OracleHit> oracle_bm25_top_m(const std::vector<OracleChunk>& corpus, const std::string& query,
                                         std::size_t m, double k1 = 1.2, double b = 0.75);

std::vector<std::string> oracle_tokens(const std::string& text);

/// Call counts of the fastfact pipeline computed by hand from the scenario
/// shape: one extractor call per chunk, k searches and one verifier call per
/// claim that misses the gate.
struct OracleBudget {
    std::size_t extractor = 0;
    std::size_t searches = 0;
    std::size_t verifier = 0;
};

OracleBudget oracle_fastfact_budget(std::size_t sentences, std::size_t stride, std::size_t ungated_claims,
                                    std::size_t k);

}  // namespace veracity::testing
