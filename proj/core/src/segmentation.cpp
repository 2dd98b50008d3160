#include "veracity/segmentation.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <utility>

#include "veracity/errors.hpp"

namespace veracity {
namespace {

constexpr std::string_view kAbbreviations[] = {
    // titles
    "Mr", "Mrs", "Ms", "Dr", "Prof", "Sr", "Jr", "St", "Rev", "Hon", "Gen", "Col", "Lt", "Sgt",
    "Capt", "Cmdr", "Adm", "Gov", "Sen", "Rep", "Pres", "Mt", "Ft",
    // corporate and reference
    "Inc", "Ltd", "Co", "Corp", "Bros", "No", "Nos", "Vol", "Fig", "Figs", "Eq", "Ch", "Sec", "pp",
    "approx", "dept",
    // latin
    "etc", "vs", "cf", "al", "ca", "viz",
    // months
    "Jan", "Feb", "Mar", "Apr", "Jun", "Jul", "Aug", "Sep", "Sept", "Oct", "Nov", "Dec",
    // misc
    "ft", "lb", "oz",
};

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool starts_with(std::string_view text, std::size_t pos, std::string_view prefix) {
    return text.substr(pos, prefix.size()) == prefix;
}

// UTF-8 curly quotes.
constexpr std::string_view kLeftDouble = "\xE2\x80\x9C";
constexpr std::string_view kRightDouble = "\xE2\x80\x9D";
constexpr std::string_view kLeftSingle = "\xE2\x80\x98";
constexpr std::string_view kRightSingle = "\xE2\x80\x99";

// Length of a closing quote/bracket at pos, 0 if none.
std::size_t closer_length(std::string_view text, std::size_t pos) {
    const char c = text[pos];
    if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
    if (starts_with(text, pos, kRightDouble) || starts_with(text, pos, kRightSingle)) return 3;
    return 0;
}

bool is_sentence_opener(std::string_view text, std::size_t pos) {
    const auto c = static_cast<unsigned char>(text[pos]);
    if (std::isupper(c) || std::isdigit(c)) return true;
    if (c == '"' || c == '\'') return true;
    // Non-ASCII letters carry no case information here; treat them as openers.
    if (c >= 0xC0 && c != 0xE2) return true;
    return starts_with(text, pos, kLeftDouble) || starts_with(text, pos, kLeftSingle);
}

// Length of a list marker ("- ", "* ", "1. ", "12) ") starting at pos, or 0.
std::size_t list_marker_length(std::string_view text, std::size_t pos, std::size_t end) {
    if (pos >= end) return 0;
    const char c = text[pos];
    if ((c == '-' || c == '*') && pos + 1 < end && (text[pos + 1] == ' ' || text[pos + 1] == '\t')) {
        return 2;
    }
    std::size_t i = pos;
    while (i < end && i - pos < 3 && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == pos || i >= end) return 0;
    if ((text[i] == '.' || text[i] == ')') && i + 1 < end && (text[i + 1] == ' ' || text[i + 1] == '\t')) {
        return i + 2 - pos;
    }
    return 0;
}

struct Range {
    std::size_t begin;
    std::size_t end;
};

// Blocks are separated by blank lines and by lines that open a list item.
std::vector<Range> split_blocks(std::string_view text) {
    std::vector<Range> blocks;
    std::size_t block_start = std::string_view::npos;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t line_end = text.find('\n', pos);
        if (line_end == std::string_view::npos) line_end = text.size();
        std::size_t first = pos;
        while (first < line_end && is_space(text[first])) ++first;
        const bool blank = first == line_end;
        if (blank) {
            if (block_start != std::string_view::npos) {
                blocks.push_back({block_start, pos});
                block_start = std::string_view::npos;
            }
        } else if (list_marker_length(text, first, line_end) > 0) {
            if (block_start != std::string_view::npos) blocks.push_back({block_start, pos});
            block_start = pos;
        } else if (block_start == std::string_view::npos) {
            block_start = pos;
        }
        pos = line_end + 1;
    }
    if (block_start != std::string_view::npos) blocks.push_back({block_start, text.size()});
    return blocks;
}

// Regions enclosed by matched parentheses or quotes inside [begin, end).
std::vector<Range> protected_regions(std::string_view text, Range block) {
    std::vector<Range> regions;
    std::vector<std::size_t> parens;
    std::vector<std::size_t> curly;
    std::optional<std::size_t> straight;
    for (std::size_t i = block.begin; i < block.end; ++i) {
        const char c = text[i];
        if (c == '(') {
            parens.push_back(i);
        } else if (c == ')' && !parens.empty()) {
            regions.push_back({parens.back(), i});
            parens.pop_back();
        } else if (c == '"') {
            if (straight) {
                regions.push_back({*straight, i});
                straight.reset();
            } else {
                straight = i;
            }
        } else if (starts_with(text, i, kLeftDouble)) {
            curly.push_back(i);
            i += 2;
        } else if (starts_with(text, i, kRightDouble)) {
            if (!curly.empty()) {
                regions.push_back({curly.back(), i});
                curly.pop_back();
            }
            i += 2;
        }
    }
    return regions;
}

// True when `pos` lies strictly inside a region that does not close within
// [close_from, close_to).
bool is_protected(const std::vector<Range>& regions, std::size_t pos, std::size_t close_from, std::size_t close_to) {
    return std::any_of(regions.begin(), regions.end(), [&](const Range& r) {
        return r.begin < pos && pos < r.end && !(r.end >= close_from && r.end < close_to);
    });
}

bool is_abbreviation(std::string_view word) {
    if (word.empty()) return false;
    if (word.size() == 1 && std::isalpha(static_cast<unsigned char>(word[0]))) return true;  // initial
    for (const auto abbr : kAbbreviations) {
        if (word == abbr) return true;
    }
    // e.g, i.e, U.S, Ph.D: dotted segments of one or two letters.
    if (word.find('.') != std::string_view::npos) {
        std::size_t segments = 0;
        std::size_t start = 0;
        while (start <= word.size()) {
            std::size_t dot = word.find('.', start);
            if (dot == std::string_view::npos) dot = word.size();
            const auto segment = word.substr(start, dot - start);
            if (segment.empty() || segment.size() > 2) return false;
            for (char c : segment) {
                if (!std::isalpha(static_cast<unsigned char>(c))) return false;
            }
            ++segments;
            start = dot + 1;
        }
        return segments >= 2;
    }
    return false;
}

// The token ending right before `pos` (exclusive), stripped of opening
// punctuation.
std::string_view word_before(std::string_view text, std::size_t block_begin, std::size_t pos) {
    std::size_t start = pos;
    while (start > block_begin && !is_space(text[start - 1])) --start;
    while (start < pos && (text[start] == '(' || text[start] == '"' || text[start] == '\'' || text[start] == '[')) {
        ++start;
    }
    return text.substr(start, pos - start);
}

void emit(std::string_view text, std::size_t begin, std::size_t end, std::vector<SentenceSpan>& out) {
    while (begin < end && is_space(text[begin])) ++begin;
    while (end > begin && is_space(text[end - 1])) --end;
    if (begin == end) return;
    out.push_back({out.size(), std::string(text.substr(begin, end - begin)), begin, end});
}

void split_block(std::string_view text, Range block, std::vector<SentenceSpan>& out) {
    const auto regions = protected_regions(text, block);
    std::size_t sentence_begin = block.begin;
    std::size_t i = block.begin;
    while (i < block.end && is_space(text[i])) ++i;
    i += list_marker_length(text, i, block.end);

    while (i < block.end) {
        if (!is_terminal(text[i])) {
            ++i;
            continue;
        }
        std::size_t punct_end = i;
        while (punct_end < block.end && is_terminal(text[punct_end])) ++punct_end;
        std::size_t close_end = punct_end;
        while (close_end < block.end) {
            const std::size_t len = closer_length(text, close_end);
            if (len == 0) break;
            close_end += len;
        }
        if (close_end >= block.end || !is_space(text[close_end])) {
            i = std::max(punct_end, i + 1);
            continue;
        }
        std::size_t next = close_end;
        while (next < block.end && is_space(text[next])) ++next;
        if (next >= block.end) break;

        bool split = is_sentence_opener(text, next);
        if (split && is_protected(regions, i, punct_end, close_end)) split = false;
        if (split && text[i] == '.' && punct_end == i + 1 && is_abbreviation(word_before(text, block.begin, i))) {
            split = false;
        }
        if (split) {
            emit(text, sentence_begin, close_end, out);
            sentence_begin = next;
        }
        i = next;
    }
    emit(text, sentence_begin, block.end, out);
}

}  // namespace

std::span<const std::string_view> sentence_abbreviations() { return kAbbreviations; }

std::vector<SentenceSpan> split_sentences(std::string_view text) {
    std::vector<SentenceSpan> sentences;
    for (const auto& block : split_blocks(text)) split_block(text, block, sentences);
    return sentences;
}

std::vector<Chunk> build_chunks(std::string_view source, std::span<const SentenceSpan> sentences, std::size_t stride) {
    if (stride == 0) throw ConfigError("chunk stride must be at least 1");
    std::vector<Chunk> chunks;
    for (std::size_t first = 0; first < sentences.size();) {
        const std::size_t count = std::min(stride, sentences.size() - first);
        Chunk chunk;
        chunk.index = chunks.size();
        chunk.sentences.assign(sentences.begin() + static_cast<std::ptrdiff_t>(first),
                               sentences.begin() + static_cast<std::ptrdiff_t>(first + count));
        const auto begin = chunk.sentences.front().start;
        const auto end = chunk.sentences.back().end;
        if (end <= source.size() && begin <= end) {
            chunk.text = std::string(source.substr(begin, end - begin));
        } else {
            // Spans not taken from `source`; fall back to joining sentence texts.
            for (const auto& s : chunk.sentences) {
                if (!chunk.text.empty()) chunk.text += ' ';
                chunk.text += s.text;
            }
        }
        chunks.push_back(std::move(chunk));
        first += count;
    }
    return chunks;
}

}  // namespace veracity
