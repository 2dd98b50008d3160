#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace veracity {

/// A scraped page. Failed fetches keep an empty body and the failure reason.
struct WebDocument {
    std::string url;
    std::string title;
    std::string body;
    std::size_t word_count = 0;
    std::optional<std::string> failure;

    static WebDocument fetched(std::string url, std::string title, std::string body);
    static WebDocument failed(std::string url, std::string title, std::string reason);

    bool ok() const { return !failure.has_value(); }
};

/// A run of whole sentences from one document; the unit of retrieval.
struct EvidenceChunk {
    std::string source_url;
    std::string source_title;
    std::size_t chunk_index = 0;
    std::string text;
    std::size_t first_sentence = 0;
    std::size_t last_sentence = 0;

    bool operator==(const EvidenceChunk&) const = default;
};

struct ChunkingConfig {
    std::size_t chunk_len = 6;
    std::size_t overlap = 2;

    /// Throws ConfigError unless chunk_len >= 1 and overlap < chunk_len.
    void validate() const;
};

/// Sliding window of `chunk_len` sentences advancing by chunk_len - overlap,
/// over every ok document in order. The last window of a document ends at its
/// final sentence.
std::vector<EvidenceChunk> chunk_documents(std::span<const WebDocument> docs, const ChunkingConfig& config);

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;

    void validate() const;
};

/// Lowercase ASCII, split on anything that is not alphanumeric. Bytes >= 0x80
/// count as word characters so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text);

struct ScoredChunk {
    EvidenceChunk chunk;
    double score = 0.0;
};

/// Immutable Okapi BM25 index over a claim's evidence chunks.
class EvidenceIndex {
public:
    EvidenceIndex() = default;

    static EvidenceIndex build(std::vector<EvidenceChunk> chunks, Bm25Params params = {});

    std::size_t size() const { return chunks_.size(); }
    const EvidenceChunk& chunk(std::size_t i) const { return chunks_.at(i); }
    const Bm25Params& params() const { return params_; }
    double average_length() const { return average_length_; }
    std::size_t chunk_length(std::size_t i) const { return lengths_.at(i); }
    std::size_t document_frequency(std::string_view term) const;
    std::size_t term_frequency(std::string_view term, std::size_t chunk) const;

    /// idf(t) = ln(1 + (n - df + 0.5) / (df + 0.5)).
    double idf(std::string_view term) const;

    /// Sum over distinct query terms of
    /// idf(t) * tf * (k1 + 1) / (tf + k1 * (1 - b + b * len / avglen)).
    double score(std::span<const std::string> query_terms, std::size_t chunk) const;

    /// Chunks with the `m` highest positive scores, descending; ties are broken
    /// by source URL then chunk index.
    std::vector<ScoredChunk> retrieve(std::string_view claim_text, std::size_t m) const;

    nlohmann::json to_json() const;
    static EvidenceIndex from_json(const nlohmann::json& j);

private:
    std::vector<std::string> distinct_terms(std::span<const std::string> query_terms) const;
    double term_weight(std::uint32_t term, std::uint32_t tf, std::size_t chunk) const;
    void finalize();

    Bm25Params params_;
    std::vector<EvidenceChunk> chunks_;
    std::unordered_map<std::string, std::uint32_t> vocabulary_;
    std::vector<std::uint32_t> document_frequency_;
    // postings_[term] = (chunk, tf), ascending by chunk.
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> postings_;
    // Per-chunk term frequencies as (term, tf), ascending by term.
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> term_frequencies_;
    std::vector<std::size_t> lengths_;
    double average_length_ = 0.0;
};

EvidenceIndex build_index(std::vector<EvidenceChunk> chunks, Bm25Params params = {});
double bm25_score(const EvidenceIndex& index, std::span<const std::string> query_terms, std::size_t chunk);
std::vector<ScoredChunk> retrieve(const EvidenceIndex& index, std::string_view claim_text, std::size_t m);

}  // namespace veracity
