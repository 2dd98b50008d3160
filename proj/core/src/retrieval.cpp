#include "veracity/retrieval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <unordered_set>

#include "veracity/errors.hpp"
#include "veracity/segmentation.hpp"

namespace veracity {

using nlohmann::json;

namespace {

std::size_t count_words(std::string_view text) {
    std::size_t count = 0;
    bool in_word = false;
    for (char c : text) {
        const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
        if (!space && !in_word) ++count;
        in_word = !space;
    }
    return count;
}

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

}  // namespace

WebDocument WebDocument::fetched(std::string url, std::string title, std::string body) {
    WebDocument doc;
    doc.url = std::move(url);
    doc.title = std::move(title);
    doc.word_count = count_words(body);
    doc.body = std::move(body);
    return doc;
}

WebDocument WebDocument::failed(std::string url, std::string title, std::string reason) {
    WebDocument doc;
    doc.url = std::move(url);
    doc.title = std::move(title);
    doc.failure = std::move(reason);
    return doc;
}

void ChunkingConfig::validate() const {
    if (chunk_len < 1) throw ConfigError("evidence chunk length must be at least 1 sentence");
    if (overlap >= chunk_len) throw ConfigError("evidence chunk overlap must be smaller than the chunk length");
}

std::vector<EvidenceChunk> chunk_documents(std::span<const WebDocument> docs, const ChunkingConfig& config) {
    config.validate();
    const std::size_t step = config.chunk_len - config.overlap;
    std::vector<EvidenceChunk> chunks;
    for (const auto& doc : docs) {
        if (!doc.ok()) continue;
        const auto sentences = split_sentences(doc.body);
        std::size_t chunk_index = 0;
        for (std::size_t first = 0; first < sentences.size(); first += step) {
            const std::size_t last = std::min(first + config.chunk_len, sentences.size()) - 1;
            EvidenceChunk chunk;
            chunk.source_url = doc.url;
            chunk.source_title = doc.title;
            chunk.chunk_index = chunk_index++;
            chunk.first_sentence = first;
            chunk.last_sentence = last;
            chunk.text = doc.body.substr(sentences[first].start, sentences[last].end - sentences[first].start);
            chunks.push_back(std::move(chunk));
            if (last + 1 == sentences.size()) break;
        }
    }
    return chunks;
}

void Bm25Params::validate() const {
    if (!(k1 >= 0.0)) throw ConfigError("bm25 k1 must be non-negative");
    if (!(b >= 0.0 && b <= 1.0)) throw ConfigError("bm25 b must lie in [0, 1]");
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (is_word_byte(c)) {
            current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

EvidenceIndex EvidenceIndex::build(std::vector<EvidenceChunk> chunks, Bm25Params params) {
    params.validate();
    EvidenceIndex index;
    index.params_ = params;
    index.chunks_ = std::move(chunks);
    index.finalize();
    return index;
}

void EvidenceIndex::finalize() {
    vocabulary_.clear();
    document_frequency_.clear();
    postings_.clear();
    term_frequencies_.assign(chunks_.size(), {});
    lengths_.assign(chunks_.size(), 0);

    std::size_t total_length = 0;
    for (std::size_t c = 0; c < chunks_.size(); ++c) {
        const auto tokens = tokenize(chunks_[c].text);
        lengths_[c] = tokens.size();
        total_length += tokens.size();
        std::map<std::uint32_t, std::uint32_t> counts;
        for (const auto& token : tokens) {
            auto [it, inserted] = vocabulary_.emplace(token, static_cast<std::uint32_t>(vocabulary_.size()));
            if (inserted) {
                document_frequency_.push_back(0);
                postings_.emplace_back();
            }
            ++counts[it->second];
        }
        auto& tf = term_frequencies_[c];
        tf.assign(counts.begin(), counts.end());
        for (const auto& [term, count] : tf) {
            ++document_frequency_[term];
            postings_[term].emplace_back(static_cast<std::uint32_t>(c), count);
        }
    }
    average_length_ = chunks_.empty() ? 0.0 : static_cast<double>(total_length) / static_cast<double>(chunks_.size());
}

std::size_t EvidenceIndex::document_frequency(std::string_view term) const {
    auto it = vocabulary_.find(std::string(term));
    return it == vocabulary_.end() ? 0 : document_frequency_[it->second];
}

std::size_t EvidenceIndex::term_frequency(std::string_view term, std::size_t chunk) const {
    auto it = vocabulary_.find(std::string(term));
    if (it == vocabulary_.end()) return 0;
    const auto& tf = term_frequencies_.at(chunk);
    auto pos = std::lower_bound(tf.begin(), tf.end(), std::make_pair(it->second, std::uint32_t{0}));
    return pos != tf.end() && pos->first == it->second ? pos->second : 0;
}

double EvidenceIndex::idf(std::string_view term) const {
    const double n = static_cast<double>(chunks_.size());
    const double df = static_cast<double>(document_frequency(term));
    return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

double EvidenceIndex::term_weight(std::uint32_t term, std::uint32_t tf, std::size_t chunk) const {
    const double n = static_cast<double>(chunks_.size());
    const double df = static_cast<double>(document_frequency_[term]);
    const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
    const double freq = static_cast<double>(tf);
    const double norm = average_length_ > 0.0 ? static_cast<double>(lengths_[chunk]) / average_length_ : 0.0;
    return idf * freq * (params_.k1 + 1.0) / (freq + params_.k1 * (1.0 - params_.b + params_.b * norm));
}

std::vector<std::string> EvidenceIndex::distinct_terms(std::span<const std::string> query_terms) const {
    std::vector<std::string> distinct;
    std::unordered_set<std::string_view> seen;
    for (const auto& term : query_terms) {
        if (seen.insert(term).second) distinct.push_back(term);
    }
    return distinct;
}

double EvidenceIndex::score(std::span<const std::string> query_terms, std::size_t chunk) const {
    if (chunk >= chunks_.size()) throw std::out_of_range("chunk ordinal out of range");
    double total = 0.0;
    for (const auto& term : distinct_terms(query_terms)) {
        auto it = vocabulary_.find(term);
        if (it == vocabulary_.end()) continue;
        const auto tf = term_frequency(term, chunk);
        if (tf == 0) continue;
        total += term_weight(it->second, static_cast<std::uint32_t>(tf), chunk);
    }
    return total;
}

std::vector<ScoredChunk> EvidenceIndex::retrieve(std::string_view claim_text, std::size_t m) const {
    if (m == 0 || chunks_.empty()) return {};
    const auto terms = distinct_terms(tokenize(claim_text));

    // Term-at-a-time accumulation in query order, matching score().
    std::vector<double> scores(chunks_.size(), 0.0);
    for (const auto& term : terms) {
        auto it = vocabulary_.find(term);
        if (it == vocabulary_.end()) continue;
        for (const auto& [chunk, tf] : postings_[it->second]) scores[chunk] += term_weight(it->second, tf, chunk);
    }

    std::vector<std::size_t> candidates;
    for (std::size_t c = 0; c < scores.size(); ++c) {
        if (scores[c] > 0.0) candidates.push_back(c);
    }
    const auto better = [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        if (chunks_[a].source_url != chunks_[b].source_url) return chunks_[a].source_url < chunks_[b].source_url;
        if (chunks_[a].chunk_index != chunks_[b].chunk_index) return chunks_[a].chunk_index < chunks_[b].chunk_index;
        return a < b;
    };
    const auto keep = std::min(m, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep), candidates.end(),
                      better);
    std::vector<ScoredChunk> out;
    out.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) out.push_back({chunks_[candidates[i]], scores[candidates[i]]});
    return out;
}

json EvidenceIndex::to_json() const {
    json chunks = json::array();
    for (const auto& c : chunks_) {
        chunks.push_back({{"source_url", c.source_url},
                          {"source_title", c.source_title},
                          {"chunk_index", c.chunk_index},
                          {"text", c.text},
                          {"first_sentence", c.first_sentence},
                          {"last_sentence", c.last_sentence}});
    }
    // The derived statistics are rebuilt on load; only inputs are stored.
    return {{"format", "veracity-bm25"}, {"version", 1}, {"k1", params_.k1}, {"b", params_.b}, {"chunks", chunks}};
}

EvidenceIndex EvidenceIndex::from_json(const json& j) {
    if (j.value("format", std::string{}) != "veracity-bm25" || j.value("version", 0) != 1) {
        throw std::invalid_argument("unsupported evidence index format");
    }
    std::vector<EvidenceChunk> chunks;
    for (const auto& c : j.at("chunks")) {
        chunks.push_back({c.at("source_url").get<std::string>(), c.at("source_title").get<std::string>(),
                          c.at("chunk_index").get<std::size_t>(), c.at("text").get<std::string>(),
                          c.at("first_sentence").get<std::size_t>(), c.at("last_sentence").get<std::size_t>()});
    }
    return build(std::move(chunks), {j.at("k1").get<double>(), j.at("b").get<double>()});
}

EvidenceIndex build_index(std::vector<EvidenceChunk> chunks, Bm25Params params) {
    return EvidenceIndex::build(std::move(chunks), params);
}

double bm25_score(const EvidenceIndex& index, std::span<const std::string> query_terms, std::size_t chunk) {
    return index.score(query_terms, chunk);
}

std::vector<ScoredChunk> retrieve(const EvidenceIndex& index, std::string_view claim_text, std::size_t m) {
    return index.retrieve(claim_text, m);
}

}  // namespace veracity
