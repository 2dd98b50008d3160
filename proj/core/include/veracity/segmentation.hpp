#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace veracity {

/// One sentence of a source text. `text` is exactly `source.substr(start, end - start)`
/// and carries no leading or trailing whitespace.
struct SentenceSpan {
    std::size_t index = 0;
    std::string text;
    std::size_t start = 0;
    std::size_t end = 0;

    bool operator==(const SentenceSpan&) const = default;
};

/// A window of consecutive sentences handed to the extractor in one call.
struct Chunk {
    std::size_t index = 0;
    std::vector<SentenceSpan> sentences;
    std::string text;
};

/// Stride meaning "the whole response in a single chunk".
inline constexpr std::size_t kWholeResponse = std::numeric_limits<std::size_t>::max();

/// Rule-based sentence splitter.
///
/// Blocks are separated by blank lines and by lines that open a list item
/// ("- ", "* ", "1. ", "2) "). Inside a block a sentence ends at a run of
/// `.`, `!` or `?` (plus any closing quotes/brackets) followed by whitespace
/// and an uppercase letter, digit or opening quote. A single `.` does not
/// split after a known abbreviation, a single-letter initial or a dotted
/// acronym, and punctuation inside matched parentheses or quotes never splits.
///
/// Every non-whitespace byte of `text` belongs to exactly one span.
std::vector<SentenceSpan> split_sentences(std::string_view text);

/// Abbreviations that never end a sentence when followed by a single period.
std::span<const std::string_view> sentence_abbreviations();

/// Greedy left-to-right grouping of `stride` sentences per chunk. Chunk text is
/// the slice of `source` from the first sentence start to the last sentence end.
/// Throws ConfigError when stride is zero.
std::vector<Chunk> build_chunks(std::string_view source,
                                std::span<const SentenceSpan> sentences,
                                std::size_t stride);

}  // namespace veracity
