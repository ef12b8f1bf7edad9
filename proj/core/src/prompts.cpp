#include "relgrade/prompts.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace relgrade {

namespace {

// The templates below are the method's contract; edits here must be mirrored
// in the golden transcripts under tests/golden. The wording is fixed; only
// the bracketed slots vary.

constexpr std::string_view kCriterionSystem =
    "Please assess how well the provided passage meets specific criteria in "
    "relation to the query. Use the following scoring scale (0-3) for evaluation:\n"
    "\n"
    "0: Not relevant at all / No information provided.\n"
    "1: Marginally relevant / Partially addresses the criterion.\n"
    "2: Fairly relevant / Adequately addresses the criterion.\n"
    "3: Highly relevant / Fully satisfies the criterion.";

constexpr std::string_view kAggregationSystem =
    "You are a search quality rater evaluating the relevance of passages. "
    "Given a query and passage, you must provide a score on an integer scale "
    "of 0 to 3 with the following meanings:\n"
    "3 = Perfectly relevant: The passage is dedicated to the query and "
    "contains the exact answer.\n"
    "2 = Highly relevant: The passage has some answer for the query, but the "
    "answer may be a bit unclear, or hidden amongst extraneous information.\n"
    "1 = Related: The passage seems related to the query but does not answer it.\n"
    "0 = Irrelevant: The passage has nothing to do with the query.\n"
    "Assume that you are writing an answer to the query. If the passage seems "
    "to be related to the query but does not include any answer to the query, "
    "mark it 1. If you would use any of the information contained in the "
    "passage in such an answer, mark it 2. If the passage is primarily about "
    "the query, or contains vital information about the topic, mark it 3. "
    "Otherwise, mark it 0.";

constexpr std::string_view kRelevanceGradingSystem =
    "You are a search quality rater evaluating the relevance of passages. "
    "Given a query and passage, you must provide a score on an integer scale "
    "of 2 or 3 with the following meanings:\n"
    "2 = Highly relevant: The passage has some answer for the query, but the "
    "answer may be a bit unclear, or hidden amongst extraneous information.\n"
    "3 = Perfectly relevant: The passage is dedicated to the query and "
    "contains the exact answer.";

constexpr std::string_view kNonRelevanceGradingSystem =
    "You are a search quality rater evaluating the relevance of passages. "
    "Given a query and passage, you must provide a score on an integer scale "
    "of 0 or 1 with the following meanings:\n"
    "0 = Irrelevant: The passage has nothing to do with the query.\n"
    "1 = Related: The passage seems related to the query but does not answer it.";

constexpr std::string_view kQueryGenerationSystem =
    "You are a query generator. For example, having this document:'Categories: "
    "Dogs. Article Summary X. If your puppy is starting to get teeth, it's "
    "probably between 3 and 4 weeks old. At 8 weeks of age, your puppy will "
    "have 28 baby teeth. For an adult dog, expect 1 or 2-year-olds to have "
    "white teeth, while 3-year-olds may have signs of tooth decay, such as "
    "yellow and brown tartar.' You should generate a query such as: "
    "'dog age by teeth'.";

constexpr std::string_view kSimilaritySystem =
    "You are a similarity evaluator agent. Please rate the similarity between "
    "the two items on a scale from 0 to 3.";

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_alpha(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

char lower(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

bool starts_with_icase(std::string_view token, std::string_view prefix) {
    if (token.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (lower(token[i]) != lower(prefix[i])) return false;
    }
    return true;
}

std::string norm(const std::string& text) { return normalize_whitespace(text); }

}  // namespace

std::string normalize_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (is_space(c)) {
            pending_space = !out.empty();
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(c);
        }
    }
    return out;
}

RenderedPrompt render_criterion_prompt(Criterion criterion, const Query& query,
                                       const Passage& passage) {
    std::string prompt;
    prompt += "Please rate how well the given passage meets the ";
    prompt += criterion_name(criterion);
    prompt += " criterion in relation to the query. The output should be a "
              "single score (0-3) indicating ";
    prompt += criterion_description(criterion);
    prompt += "\nQuery: " + norm(query.text);
    prompt += "\nPassage: " + norm(passage.text);
    prompt += "\nScore:";
    return {std::string(kCriterionSystem), std::move(prompt)};
}

RenderedPrompt render_aggregation_prompt(const Query& query, const Passage& passage,
                                         const CriterionGrades& grades) {
    // Slot order below (Exactness, Topicality, Coverage, Contextual Fit) is
    // part of the template and differs from the Phase One call order.
    std::string prompt;
    prompt += "Please rate how the given passage is relevant to the query "
              "based on the given scores. The output must be only a score "
              "that indicates how relevant they are.";
    prompt += "\nQuery: " + norm(query.text);
    prompt += "\nPassage: " + norm(passage.text);
    prompt += "\nExactness: " + std::to_string(grades.exactness.value()) +
              " (From Phase One)";
    prompt += "\nTopicality: " + std::to_string(grades.topicality.value()) +
              " (From Phase One)";
    prompt += "\nCoverage: " + std::to_string(grades.coverage.value()) +
              " (From Phase One)";
    prompt += "\nContextual Fit: " + std::to_string(grades.contextual_fit.value()) +
              " (From Phase One)";
    prompt += "\nScore:";
    return {std::string(kAggregationSystem), std::move(prompt)};
}

RenderedPrompt render_binary_prompt(const Query& query, const Passage& passage) {
    std::string prompt;
    prompt += "Instruction: Given a passage and a query, predict whether the "
              "passage includes an answer to the query by producing either "
              "\"Yes\" or \"No\".\n";
    prompt += "Question: " + norm(query.text) + " Passage: " + norm(passage.text) +
              " Answer:";
    // The binary check sends no system message.
    return {std::string(), std::move(prompt)};
}

RenderedPrompt render_relevance_grading_prompt(const Query& query,
                                               const Passage& passage,
                                               Grade exactness, Grade coverage) {
    std::string prompt;
    prompt += "The given passage is relevant to the query, please rate how "
              "relevant it is to the query. The output must be only a score "
              "(2 or 3) that indicates how relevant they are.";
    prompt += "\nQuery: " + norm(query.text);
    prompt += "\nPassage: " + norm(passage.text);
    prompt += "\nExactness: " + std::to_string(exactness.value()) +
              " (From Phase One: Criterion-Specific Grading)";
    prompt += "\nCoverage: " + std::to_string(coverage.value()) +
              "(From Phase One: Criterion-Specific Grading)";
    prompt += "\nScore:";
    return {std::string(kRelevanceGradingSystem), std::move(prompt)};
}

RenderedPrompt render_nonrelevance_grading_prompt(const Query& query,
                                                  const Passage& passage,
                                                  Grade topicality,
                                                  Grade contextual_fit) {
    std::string prompt;
    prompt += "The given passage is irrelevant to the query, please rate how "
              "irrelevant it is to the query. The output must be only a score "
              "(0 or 1) that indicates how irrelevant they are.";
    prompt += "\nQuery: " + norm(query.text);
    prompt += "\nPassage: " + norm(passage.text);
    prompt += "\nTopicality: " + std::to_string(topicality.value()) +
              " (From Phase One: Criterion-Specific Grading)";
    prompt += "\nContextual Fit: " + std::to_string(contextual_fit.value()) +
              "(From Phase One: Criterion-Specific Grading)";
    prompt += "\nScore:";
    return {std::string(kNonRelevanceGradingSystem), std::move(prompt)};
}

RenderedPrompt render_query_generation_prompt(const Passage& passage) {
    std::string prompt;
    prompt += "Please identify the search query that best corresponds to the "
              "following passage. Keep your response concise. Passage: ";
    prompt += norm(passage.text);
    prompt += ".";
    return {std::string(kQueryGenerationSystem), std::move(prompt)};
}

RenderedPrompt render_similarity_prompt(const std::string& generated_query,
                                        const Query& original_query) {
    if (normalize_whitespace(generated_query).empty())
        throw std::invalid_argument("generated query must be non-empty");
    std::string prompt;
    prompt += "Please rate the similarity between the following queries:\n";
    prompt += normalize_whitespace(generated_query);
    prompt += "\nand\n";
    prompt += norm(original_query.text);
    prompt += "\n3: Highest similarity";
    prompt += "\n2: Fairly similar";
    prompt += "\n1: Minor similarity";
    prompt += "\n0: Not similar";
    return {std::string(kSimilaritySystem), std::move(prompt)};
}

std::optional<int> parse_score(std::string_view text, int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("parse_score: lo > hi");
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_digit(text[i])) {
            ++i;
            continue;
        }
        long long value = 0;
        bool too_big = false;
        std::size_t j = i;
        while (j < text.size() && is_digit(text[j])) {
            if (!too_big) {
                value = value * 10 + (text[j] - '0');
                if (value > std::numeric_limits<int>::max()) too_big = true;
            }
            ++j;
        }
        if (!too_big && value >= lo && value <= hi) return static_cast<int>(value);
        i = j;  // out-of-range run skipped, keep scanning
    }
    return std::nullopt;
}

std::optional<bool> parse_yes_no(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && !is_alpha(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && is_alpha(text[j])) ++j;
    std::string_view token = text.substr(i, j - i);
    if (starts_with_icase(token, "yes")) return true;
    if (starts_with_icase(token, "no")) return false;
    return std::nullopt;
}

std::uint64_t prompt_fingerprint(std::string_view system_message,
                                 std::string_view user_prompt) {
    constexpr std::uint64_t kOffset = 14695981039346656037ull;
    constexpr std::uint64_t kPrime = 1099511628211ull;
    std::uint64_t h = kOffset;
    auto mix = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= kPrime;
        }
    };
    mix(system_message);
    h ^= 0x1e;  // field separator, keeps ("ab","c") distinct from ("a","bc")
    h *= kPrime;
    mix(user_prompt);
    return h;
}

std::string fingerprint_hex(std::uint64_t fingerprint) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[fingerprint & 0xf];
        fingerprint >>= 4;
    }
    return out;
}

std::optional<std::uint64_t> fingerprint_from_hex(std::string_view hex) {
    if (hex.empty() || hex.size() > 16) return std::nullopt;
    std::uint64_t value = 0;
    for (char c : hex) {
        int digit;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
        else return std::nullopt;
        value = (value << 4) | static_cast<std::uint64_t>(digit);
    }
    return value;
}

}  // namespace relgrade
