#pragma once

#include <string_view>

namespace veracity::prompts {

/// Instructions and few-shot demonstrations for claim extraction with
/// pre-verification labels. Ends just before the rendered question/chunk.
extern const std::string_view kExtractionPreamble;

/// Label definitions and worked examples for evidence-based verification.
/// Ends just before the rendered claim and evidence.
extern const std::string_view kVerificationPreamble;

}  // namespace veracity::prompts
