#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace relgrade {

/// The four relevance facets graded in Phase One. Order here is the fixed
/// call order used by the judges (not the aggregation-prompt slot order).
enum class Criterion { Exactness, Coverage, Topicality, ContextualFit };

constexpr std::array<Criterion, 4> all_criteria() {
    return {Criterion::Exactness, Criterion::Coverage, Criterion::Topicality,
            Criterion::ContextualFit};
}

std::string_view criterion_name(Criterion c);
std::string_view criterion_description(Criterion c);

/// Snake-case key used in audit records and JSON documents.
std::string_view criterion_key(Criterion c);

/// A Phase One criterion grade on the 0-3 scale.
class Grade {
public:
    explicit Grade(int value);
    int value() const { return value_; }
    auto operator<=>(const Grade&) const = default;

private:
    int value_;
};

/// A final relevance label on the 0-3 scale (3 = perfectly relevant).
class RelevanceLabel {
public:
    explicit RelevanceLabel(int value);
    int value() const { return value_; }
    auto operator<=>(const RelevanceLabel&) const = default;

private:
    int value_;
};

std::optional<Grade> validate_grade(int raw) noexcept;
std::optional<RelevanceLabel> validate_label(int raw) noexcept;

struct Query {
    Query(std::string id, std::string text);
    std::string id;
    std::string text;
};

struct Passage {
    Passage(std::string id, std::string text);
    std::string id;
    std::string text;
};

struct QueryPassagePair {
    Query query;
    Passage passage;
};

/// All four Phase One grades for one pair.
struct CriterionGrades {
    Grade exactness;
    Grade coverage;
    Grade topicality;
    Grade contextual_fit;

    Grade get(Criterion c) const;
    int sum() const;
    bool operator==(const CriterionGrades&) const = default;
};

/// Audit-oriented record of one judged pair. The label is always present —
/// failure paths force label 0 and carry a note in `error`. `grades` holds
/// the criteria a method actually graded (all four for Phase One methods,
/// the branch pair for the binary-check method, none for passage-to-query).
struct JudgedPair {
    std::string query_id;
    std::string passage_id;
    std::string method;
    RelevanceLabel label{0};
    std::map<Criterion, Grade> grades;
    std::optional<bool> binary_check;
    std::optional<std::string> generated_query;
    std::optional<std::string> error;

    /// Set iff all four criteria were graded.
    std::optional<CriterionGrades> full_grades() const;
};

/// Relevance judgments keyed by (query id, passage id), kept key-sorted.
class QrelsSet {
public:
    using Key = std::pair<std::string, std::string>;
    using Map = std::map<Key, RelevanceLabel>;

    /// Returns false if the key was already present (existing label kept).
    bool insert(std::string query_id, std::string passage_id, RelevanceLabel label);

    std::optional<RelevanceLabel> get(std::string_view query_id,
                                      std::string_view passage_id) const;

    const Map& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

private:
    Map entries_;
};

}  // namespace relgrade
