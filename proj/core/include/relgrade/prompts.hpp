#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "relgrade/model.hpp"

namespace relgrade {

/// A fully substituted (system message, user prompt) pair ready to send.
/// The system message may be empty (the binary relevance check has none).
struct RenderedPrompt {
    std::string system_message;
    std::string user_prompt;

    bool operator==(const RenderedPrompt&) const = default;
};

// Rendering. All renderers are pure: identical inputs give identical bytes.
// Query and passage text is whitespace-normalized (trimmed, internal runs
// collapsed to single spaces) at render time only; stored text stays verbatim.

RenderedPrompt render_criterion_prompt(Criterion criterion, const Query& query,
                                       const Passage& passage);

RenderedPrompt render_aggregation_prompt(const Query& query, const Passage& passage,
                                         const CriterionGrades& grades);

RenderedPrompt render_binary_prompt(const Query& query, const Passage& passage);

RenderedPrompt render_relevance_grading_prompt(const Query& query,
                                               const Passage& passage,
                                               Grade exactness, Grade coverage);

RenderedPrompt render_nonrelevance_grading_prompt(const Query& query,
                                                  const Passage& passage,
                                                  Grade topicality,
                                                  Grade contextual_fit);

RenderedPrompt render_query_generation_prompt(const Passage& passage);

RenderedPrompt render_similarity_prompt(const std::string& generated_query,
                                        const Query& original_query);

// Reply parsing.

/// Scans left to right for maximal digit runs delimited by non-digits and
/// returns the value of the first run inside [lo, hi]. Out-of-range runs are
/// skipped ("42" never matches [0,3]); a '-' is a delimiter, so negative
/// numbers are not recognized. Returns nullopt when no in-range run exists.
std::optional<int> parse_score(std::string_view text, int lo, int hi);

/// Case-insensitive prefix match on the first alphabetic token: "yes..." is
/// true, "no..." is false, anything else is nullopt (ambiguous decision).
std::optional<bool> parse_yes_no(std::string_view text);

/// Trims whitespace and collapses internal whitespace runs to single spaces.
std::string normalize_whitespace(std::string_view text);

/// Stable 64-bit FNV-1a fingerprint of a rendered prompt; identical across
/// runs and platforms (unlike std::hash). Used for mock scripting keys and
/// audit-log prompt identity.
std::uint64_t prompt_fingerprint(std::string_view system_message,
                                 std::string_view user_prompt);

/// Lowercase 16-digit hex form of a fingerprint.
std::string fingerprint_hex(std::uint64_t fingerprint);
std::optional<std::uint64_t> fingerprint_from_hex(std::string_view hex);

}  // namespace relgrade
