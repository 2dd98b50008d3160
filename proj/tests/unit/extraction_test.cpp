#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "veracity/errors.hpp"
#include "veracity/extraction.hpp"
#include "veracity/prompt_templates.hpp"
#include "veracity/segmentation.hpp"

namespace veracity {
namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(VERACITY_TEST_FIXTURES) + "/" + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<TokenLogprob> tokens_for(const std::string& text, std::string_view label, double label_logprob) {
    const auto pos = text.find(label);
    return {{text.substr(0, pos), -0.2},
            {std::string(label), label_logprob},
            {text.substr(pos + label.size()), -0.3}};
}

TEST(PreLabel, RoundTripAndVariants) {
    for (auto label : {PreVerificationLabel::Irrelevant, PreVerificationLabel::Supported,
                       PreVerificationLabel::NonSupported, PreVerificationLabel::LikelySupported,
                       PreVerificationLabel::LikelyNonSupported, PreVerificationLabel::Unsure}) {
        EXPECT_EQ(parse_pre_label(to_string(label)), label);
    }
    EXPECT_EQ(parse_pre_label("  likely   non-supported "), PreVerificationLabel::LikelyNonSupported);
    EXPECT_EQ(parse_pre_label("Supported"), PreVerificationLabel::Supported);
    EXPECT_FALSE(parse_pre_label("MAYBE").has_value());
    EXPECT_TRUE(is_definite(PreVerificationLabel::Irrelevant));
    EXPECT_FALSE(is_definite(PreVerificationLabel::LikelySupported));
    EXPECT_FALSE(is_definite(PreVerificationLabel::Unsure));
}

TEST(ExtractionPrompt, WrapsChunk) {
    const std::string source = "First fact. Second fact.";
    const auto chunks = build_chunks(source, split_sentences(source), 28);
    const auto prompt = render_extraction_prompt("Why?", chunks.at(0));
    EXPECT_EQ(prompt.rfind(prompts::kExtractionPreamble, 0), 0u);
    EXPECT_NE(prompt.find("Question: Why?\nResponse: <SOS>First fact. Second fact.<EOS>\nClaims:\n"),
              std::string::npos);
    EXPECT_EQ(prompt, render_extraction_prompt("Why?", chunks.at(0)));
}

TEST(ParseExtraction, TaylorFixture) {
    const auto out = parse_extraction_output(fixture("extract_taylor.txt"), std::nullopt, "r9", 2);
    ASSERT_EQ(out.claims.size(), 4u);
    EXPECT_TRUE(out.parse_warnings.empty());
    EXPECT_EQ(out.claims[0].text, "Taylor Swift won her first Golden Globe Award in 2020.");
    EXPECT_EQ(out.claims[0].pre_label, PreVerificationLabel::NonSupported);
    EXPECT_EQ(out.claims[1].pre_label, PreVerificationLabel::NonSupported);
    EXPECT_EQ(out.claims[2].pre_label, PreVerificationLabel::LikelySupported);
    EXPECT_EQ(out.claims[3].pre_label, PreVerificationLabel::Supported);
    EXPECT_EQ(out.claims[3].text, "\"Beautiful Ghosts\" was written for the film \"Cats.\"");
    EXPECT_EQ(out.claims[0].claim_id, "r9#c2.l1");
    EXPECT_EQ(out.claims[3].claim_id, "r9#c2.l4");
    for (const auto& c : out.claims) {
        EXPECT_FALSE(c.confidence.has_value());
        EXPECT_EQ(c.source_chunk, 2u);
    }
}

TEST(ParseExtraction, WatermelonFixture) {
    const auto out = parse_extraction_output(fixture("extract_watermelon.txt"), std::nullopt);
    ASSERT_EQ(out.claims.size(), 2u);
    EXPECT_EQ(out.claims[0].pre_label, PreVerificationLabel::Supported);
    EXPECT_EQ(out.claims[1].pre_label, PreVerificationLabel::LikelyNonSupported);
    EXPECT_EQ(out.claims[1].text, "Watermelon seeds are a good source of protein.");
}

TEST(ParseExtraction, NoVerifiableClaim) {
    const auto out = parse_extraction_output(fixture("extract_none.txt"), std::nullopt);
    EXPECT_TRUE(out.claims.empty());
    EXPECT_TRUE(out.parse_warnings.empty());
}

TEST(ParseExtraction, LabelVariants) {
    const auto out = parse_extraction_output(
        "- A holds. ### supported ###\n- B holds. ###Likely Non-Supported###\n-C holds.###unsure###", std::nullopt);
    ASSERT_EQ(out.claims.size(), 3u);
    EXPECT_EQ(out.claims[0].pre_label, PreVerificationLabel::Supported);
    EXPECT_EQ(out.claims[1].pre_label, PreVerificationLabel::LikelyNonSupported);
    EXPECT_EQ(out.claims[2].pre_label, PreVerificationLabel::Unsure);
    EXPECT_EQ(out.claims[2].text, "C holds.");
}

TEST(ParseExtraction, MalformedLinesWarn) {
    const auto out = parse_extraction_output(
        "Claims:\n- ok claim ###SUPPORTED###\n- missing label\nrandom chatter\n- bad ###MAYBE###\n-  ###SUPPORTED###\n"
        "- ###SUPPORTED",
        std::nullopt);
    ASSERT_EQ(out.claims.size(), 1u);
    EXPECT_EQ(out.claims[0].source_line, 2u);
    EXPECT_EQ(out.parse_warnings.size(), 5u);
}

TEST(ParseExtraction, EmptyOutputThrows) {
    EXPECT_THROW(parse_extraction_output("", std::nullopt), EmptyCompletionError);
    EXPECT_THROW(parse_extraction_output(" \n\t", std::nullopt), EmptyCompletionError);
}

TEST(ParseExtraction, ConfidenceFromLabelTokens) {
    const std::string text = "- Paris is in France. ###SUPPORTED###";
    const auto out = parse_extraction_output(text, tokens_for(text, "SUPPORTED", std::log(0.97)));
    ASSERT_EQ(out.claims.size(), 1u);
    ASSERT_TRUE(out.claims[0].confidence.has_value());
    EXPECT_NEAR(*out.claims[0].confidence, 0.97, 1e-12);
}

TEST(ParseExtraction, ConfidenceAveragesSplitLabelTokens) {
    const std::string text = "- X. ###NON-SUPPORTED###";
    std::vector<TokenLogprob> tokens{{"- X. ###", -1.0}, {"NON", std::log(0.8)}, {"-SUPPORTED", std::log(0.5)},
                                     {"###", -1.0}};
    const auto out = parse_extraction_output(text, tokens);
    ASSERT_EQ(out.claims.size(), 1u);
    EXPECT_NEAR(*out.claims[0].confidence, std::exp((std::log(0.8) + std::log(0.5)) / 2.0), 1e-12);
}

TEST(ParseExtraction, MisalignedTokensWarnAndSkipConfidence) {
    const std::string text = "- Y. ###SUPPORTED###";
    std::vector<TokenLogprob> tokens{{"something else entirely", -0.1}};
    const auto out = parse_extraction_output(text, tokens);
    ASSERT_EQ(out.claims.size(), 1u);
    EXPECT_FALSE(out.claims[0].confidence.has_value());
    EXPECT_FALSE(out.parse_warnings.empty());
}

TEST(TokenRange, Overlap) {
    std::vector<TokenLogprob> tokens{{"ab", 0}, {"cd", 0}, {"ef", 0}};
    auto r = locate_token_range(tokens, 1, 3);
    EXPECT_EQ(r.first, 0u);
    EXPECT_EQ(r.last, 2u);
    r = locate_token_range(tokens, 4, 6);
    EXPECT_EQ(r.first, 2u);
    EXPECT_EQ(r.last, 3u);
    EXPECT_FALSE(compute_label_confidence(tokens, {2, 2}).has_value());
    EXPECT_FALSE(compute_label_confidence(tokens, {2, 9}).has_value());
}

AtomicClaim claim(PreVerificationLabel label, std::optional<double> confidence) {
    AtomicClaim c;
    c.text = "t";
    c.pre_label = label;
    c.confidence = confidence;
    return c;
}

TEST(ConfidenceGate, RequiresDefiniteAndStrictlyAbove) {
    EXPECT_TRUE(passes_confidence_gate(claim(PreVerificationLabel::Supported, 0.95), 0.9));
    EXPECT_FALSE(passes_confidence_gate(claim(PreVerificationLabel::Supported, 0.9), 0.9));
    EXPECT_FALSE(passes_confidence_gate(claim(PreVerificationLabel::LikelySupported, 0.99), 0.9));
    EXPECT_FALSE(passes_confidence_gate(claim(PreVerificationLabel::Supported, std::nullopt), 0.0));
    EXPECT_FALSE(passes_confidence_gate(claim(PreVerificationLabel::Supported, 1.0), 1.0));
    EXPECT_THROW(passes_confidence_gate(claim(PreVerificationLabel::Supported, 0.5), 1.5), ConfigError);
    EXPECT_THROW(passes_confidence_gate(claim(PreVerificationLabel::Supported, 0.5), -0.1), ConfigError);
}

TEST(Dedup, KeepsFirstOccurrence) {
    std::vector<AtomicClaim> claims(3);
    claims[0].claim_id = "a";
    claims[0].text = "same";
    claims[1].claim_id = "b";
    claims[1].text = "other";
    claims[2].claim_id = "c";
    claims[2].text = "same";
    const auto result = deduplicate_claims(claims);
    ASSERT_EQ(result.kept.size(), 2u);
    EXPECT_EQ(result.kept[0].claim_id, "a");
    ASSERT_EQ(result.duplicates.size(), 1u);
    EXPECT_EQ(result.duplicates[0].claim_id, "c");
    EXPECT_EQ(result.duplicates[0].duplicate_of, "a");
}

}  // namespace
}  // namespace veracity
