#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "veracity/prompt_templates.hpp"
#include "veracity/verification.hpp"

namespace veracity {
namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(VERACITY_TEST_FIXTURES) + "/" + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

TEST(VerificationLabel, ParseVariants) {
    EXPECT_EQ(parse_verification_label("supported"), VerificationLabel::Supported);
    EXPECT_EQ(parse_verification_label(" Not  Enough Evidence "), VerificationLabel::NotEnoughEvidence);
    EXPECT_EQ(parse_verification_label("conflicting_evidence"), VerificationLabel::ConflictingEvidence);
    EXPECT_EQ(parse_verification_label("REFUTED"), VerificationLabel::Refuted);
    EXPECT_FALSE(parse_verification_label("true").has_value());
}

TEST(VerificationPrompt, Layout) {
    const std::vector<EvidenceChunk> evidence{{"https://a.test/", "Title A", 0, "Content A.", 0, 0},
                                              {"https://b.test/", "Title B", 3, "Content B.", 0, 0}};
    const auto prompt = render_verification_prompt("The claim.", evidence);
    EXPECT_EQ(prompt.rfind(prompts::kVerificationPreamble, 0), 0u);
    const std::string tail =
        "Claim: The claim.\nSearched Results: Evidence 1\nSource Title: Title A\nContent: Content A.\n\n"
        "Evidence 2\nSource Title: Title B\nContent: Content B.\n\nReasoning:";
    ASSERT_GE(prompt.size(), tail.size());
    EXPECT_EQ(prompt.substr(prompt.size() - tail.size()), tail);
}

TEST(VerificationPrompt, NoEvidencePlaceholder) {
    const auto prompt = render_verification_prompt("X.", {});
    EXPECT_NE(prompt.find("Searched Results: No evidence retrieved.\n\nReasoning:"), std::string::npos);
}

TEST(ParseVerification, PaperFixtures) {
    const std::pair<const char*, VerificationLabel> cases[] = {
        {"verify_katahdin.txt", VerificationLabel::Refuted},
        {"verify_metlife.txt", VerificationLabel::Supported},
        {"verify_simpsons.txt", VerificationLabel::ConflictingEvidence},
        {"verify_taral.txt", VerificationLabel::NotEnoughEvidence},
        {"verify_katsu.txt", VerificationLabel::Unverifiable},
    };
    for (const auto& [name, label] : cases) {
        const auto verdict = parse_verification_output(fixture(name));
        ASSERT_TRUE(verdict.has_value()) << name;
        EXPECT_EQ(verdict->label, label) << name;
        EXPECT_FALSE(verdict->reasoning.empty()) << name;
    }
}

TEST(ParseVerification, LastLabelWinsAndScaffoldingStripped) {
    const auto verdict =
        parse_verification_output("Reasoning: first I thought ###supported### but then ###note### Decision: ###Refuted###");
    ASSERT_TRUE(verdict.has_value());
    EXPECT_EQ(verdict->label, VerificationLabel::Refuted);
    EXPECT_EQ(verdict->reasoning, "first I thought ###supported### but then ###note###");
}

TEST(ParseVerification, WhitespaceInsideMarkers) {
    const auto verdict = parse_verification_output("ok\n###  not enough evidence ###\n");
    ASSERT_TRUE(verdict.has_value());
    EXPECT_EQ(verdict->label, VerificationLabel::NotEnoughEvidence);
}

TEST(ParseVerification, MissingLabel) {
    EXPECT_FALSE(parse_verification_output("").has_value());
    EXPECT_FALSE(parse_verification_output("Decision: supported").has_value());
    EXPECT_FALSE(parse_verification_output("###maybe###").has_value());
}

TEST(MapToFinal, EvidenceRoute) {
    using VL = VerificationLabel;
    EXPECT_EQ(map_to_final(Route::EvidenceVerified, std::nullopt, VL::Supported), FinalCategory::Supported);
    EXPECT_EQ(map_to_final(Route::EvidenceVerified, std::nullopt, VL::Refuted), FinalCategory::NonSupported);
    EXPECT_EQ(map_to_final(Route::EvidenceVerified, std::nullopt, VL::ConflictingEvidence),
              FinalCategory::NonSupported);
    EXPECT_EQ(map_to_final(Route::EvidenceVerified, std::nullopt, VL::NotEnoughEvidence),
              FinalCategory::NonSupported);
    EXPECT_EQ(map_to_final(Route::EvidenceVerified, std::nullopt, VL::Unverifiable), FinalCategory::Dropped);
    EXPECT_THROW(map_to_final(Route::EvidenceVerified, std::nullopt, std::nullopt), std::logic_error);
}

TEST(MapToFinal, GatedRoute) {
    using PL = PreVerificationLabel;
    EXPECT_EQ(map_to_final(Route::Gated, PL::Supported, std::nullopt), FinalCategory::Supported);
    EXPECT_EQ(map_to_final(Route::Gated, PL::NonSupported, std::nullopt), FinalCategory::NonSupported);
    EXPECT_EQ(map_to_final(Route::Gated, PL::Irrelevant, std::nullopt), FinalCategory::Irrelevant);
    EXPECT_THROW(map_to_final(Route::Gated, PL::LikelySupported, std::nullopt), std::logic_error);
    EXPECT_THROW(map_to_final(Route::Gated, std::nullopt, std::nullopt), std::logic_error);
}

TEST(Verdicts, FallbackOnUnparsedOutput) {
    AtomicClaim claim;
    claim.text = "c";
    const auto v = verdict_for_evidence(claim, std::nullopt, {{"https://a.test/", 0}});
    EXPECT_EQ(v.verification_label, VerificationLabel::NotEnoughEvidence);
    EXPECT_EQ(v.final_category, FinalCategory::NonSupported);
    EXPECT_EQ(v.errors.size(), 1u);
    EXPECT_EQ(v.evidence_used.size(), 1u);
}

}  // namespace
}  // namespace veracity
