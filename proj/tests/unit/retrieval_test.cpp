#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "veracity/errors.hpp"
#include "veracity/retrieval.hpp"

namespace veracity {
namespace {

WebDocument doc(std::string url, std::string body) { return WebDocument::fetched(std::move(url), "T", std::move(body)); }

TEST(ChunkDocuments, SlidingWindowWithOverlap) {
    std::string body;
    for (int i = 0; i < 10; ++i) body += "Sentence " + std::to_string(i) + " here. ";
    const std::vector<WebDocument> docs{doc("https://a.test/", body)};
    const auto chunks = chunk_documents(docs, {6, 2});
    ASSERT_EQ(chunks.size(), 2u);
    EXPECT_EQ(chunks[0].first_sentence, 0u);
    EXPECT_EQ(chunks[0].last_sentence, 5u);
    EXPECT_EQ(chunks[1].first_sentence, 4u);
    EXPECT_EQ(chunks[1].last_sentence, 9u);
    EXPECT_EQ(chunks[1].chunk_index, 1u);
    EXPECT_EQ(chunks[0].text.rfind("Sentence 0 here.", 0), 0u);
}

TEST(ChunkDocuments, ShortDocumentsAndFailures) {
    const std::vector<WebDocument> docs{doc("https://a.test/", "Only one sentence."),
                                        WebDocument::failed("https://b.test/", "B", "timeout"),
                                        doc("https://c.test/", "")};
    const auto chunks = chunk_documents(docs, {6, 2});
    ASSERT_EQ(chunks.size(), 1u);
    EXPECT_EQ(chunks[0].text, "Only one sentence.");
}

TEST(ChunkDocuments, WindowsCoverEverySentence) {
    std::string body;
    for (int i = 0; i < 13; ++i) body += "Line " + std::to_string(i) + " ends. ";
    const std::vector<WebDocument> docs{doc("https://a.test/", body)};
    for (std::size_t len = 1; len <= 7; ++len) {
        for (std::size_t overlap = 0; overlap < len; ++overlap) {
            const auto chunks = chunk_documents(docs, {len, overlap});
            ASSERT_FALSE(chunks.empty());
            EXPECT_EQ(chunks.front().first_sentence, 0u);
            EXPECT_EQ(chunks.back().last_sentence, 12u);
            for (std::size_t i = 1; i < chunks.size(); ++i) {
                EXPECT_EQ(chunks[i].first_sentence, chunks[i - 1].first_sentence + len - overlap);
                EXPECT_LE(chunks[i].last_sentence - chunks[i].first_sentence + 1, len);
            }
        }
    }
}

TEST(ChunkingConfig, Validation) {
    EXPECT_THROW((ChunkingConfig{0, 0}.validate()), ConfigError);
    EXPECT_THROW((ChunkingConfig{3, 3}.validate()), ConfigError);
    EXPECT_NO_THROW((ChunkingConfig{3, 2}.validate()));
    EXPECT_THROW((Bm25Params{-1.0, 0.5}.validate()), ConfigError);
    EXPECT_THROW((Bm25Params{1.2, 1.5}.validate()), ConfigError);
}

TEST(Tokenize, LowercaseAlnum) {
    EXPECT_EQ(tokenize("Hello, World! 42-x café"),
              (std::vector<std::string>{"hello", "world", "42", "x", "café"}));
    EXPECT_TRUE(tokenize(" ,;: ").empty());
}

std::vector<EvidenceChunk> make_chunks(const std::vector<std::string>& texts) {
    std::vector<EvidenceChunk> chunks;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        chunks.push_back({"https://d.test/" + std::to_string(i % 3), "t", i, texts[i], 0, 0});
    }
    return chunks;
}

TEST(EvidenceIndex, HandComputedScore) {
    const auto index = EvidenceIndex::build(make_chunks({"cat sat", "dog dog ran far", "bird"}));
    EXPECT_DOUBLE_EQ(index.average_length(), 7.0 / 3.0);
    EXPECT_EQ(index.document_frequency("dog"), 1u);
    EXPECT_EQ(index.term_frequency("dog", 1), 2u);
    const double idf = std::log(1.0 + (3.0 - 1.0 + 0.5) / (1.0 + 0.5));
    EXPECT_DOUBLE_EQ(index.idf("dog"), idf);
    const double expected = idf * 2.0 * 2.2 / (2.0 + 1.2 * (1.0 - 0.75 + 0.75 * 4.0 / (7.0 / 3.0)));
    const std::vector<std::string> q{"dog", "dog"};
    EXPECT_NEAR(index.score(q, 1), expected, 1e-12);
    EXPECT_EQ(index.score(q, 0), 0.0);
}

TEST(EvidenceIndex, RetrieveOrdersAndFiltersZero) {
    const auto index = EvidenceIndex::build(make_chunks({"alpha beta", "gamma", "alpha alpha beta", "delta"}));
    const auto hits = index.retrieve("Alpha beta?", 10);
    ASSERT_EQ(hits.size(), 2u);
    EXPECT_GE(hits[0].score, hits[1].score);
    for (const auto& h : hits) EXPECT_GT(h.score, 0.0);
    EXPECT_TRUE(index.retrieve("zzz", 10).empty());
    EXPECT_TRUE(index.retrieve("alpha", 0).empty());
    EXPECT_TRUE(EvidenceIndex::build({}).retrieve("alpha", 5).empty());
}

TEST(EvidenceIndex, TieBreakByUrlThenChunk) {
    std::vector<EvidenceChunk> chunks{{"https://b.test/", "", 0, "same words", 0, 0},
                                      {"https://a.test/", "", 1, "same words", 0, 0},
                                      {"https://a.test/", "", 0, "same words", 0, 0}};
    const auto hits = EvidenceIndex::build(chunks).retrieve("same", 3);
    ASSERT_EQ(hits.size(), 3u);
    EXPECT_EQ(hits[0].chunk.source_url, "https://a.test/");
    EXPECT_EQ(hits[0].chunk.chunk_index, 0u);
    EXPECT_EQ(hits[1].chunk.chunk_index, 1u);
    EXPECT_EQ(hits[2].chunk.source_url, "https://b.test/");
}

TEST(EvidenceIndex, JsonRoundTrip) {
    const auto index = EvidenceIndex::build(make_chunks({"one two", "two three three"}), {1.5, 0.5});
    const auto copy = EvidenceIndex::from_json(index.to_json());
    EXPECT_EQ(copy.size(), index.size());
    EXPECT_EQ(copy.params().k1, 1.5);
    const std::vector<std::string> q{"three"};
    EXPECT_EQ(copy.score(q, 1), index.score(q, 1));
    EXPECT_THROW(EvidenceIndex::from_json({{"format", "other"}}), std::invalid_argument);
}

TEST(EvidenceIndex, MatchesOracleOnRandomCorpora) {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 50; ++round) {
        std::uniform_int_distribution<int> n_chunks(1, 20), n_words(0, 12), word(0, 15);
        std::vector<testing::OracleChunk> corpus;
        std::vector<EvidenceChunk> chunks;
        const int n = n_chunks(rng);
        for (int c = 0; c < n; ++c) {
            std::string text;
            for (int w = n_words(rng); w > 0; --w) text += "w" + std::to_string(word(rng)) + " ";
            const std::string url = "https://u.test/" + std::to_string(c % 4);
            corpus.push_back({url, std::size_t(c), text});
            chunks.push_back({url, "", std::size_t(c), text, 0, 0});
        }
        std::string query;
        for (int w = 0; w < 4; ++w) query += "W" + std::to_string(word(rng)) + " ";
        const auto index = EvidenceIndex::build(chunks);
        const auto got = index.retrieve(query, 5);
        const auto want = testing::oracle_bm25_top_m(corpus, query, 5);
        ASSERT_EQ(got.size(), want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            EXPECT_EQ(got[i].chunk.chunk_index, want[i].position);
            EXPECT_NEAR(got[i].score, want[i].score, 1e-12);
        }
    }
}

}  // namespace
}  // namespace veracity
