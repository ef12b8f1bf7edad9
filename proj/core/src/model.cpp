#include "relgrade/model.hpp"

#include <cctype>
#include <stdexcept>

namespace relgrade {

namespace {

bool blank(std::string_view s) {
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

std::string_view criterion_name(Criterion c) {
    switch (c) {
        case Criterion::Exactness: return "Exactness";
        case Criterion::Coverage: return "Coverage";
        case Criterion::Topicality: return "Topicality";
        case Criterion::ContextualFit: return "Contextual Fit";
    }
    throw std::logic_error("unknown criterion");
}

std::string_view criterion_description(Criterion c) {
    switch (c) {
        case Criterion::Exactness:
            return "How precisely does the passage answer the query.";
        case Criterion::Coverage:
            return "How much of the passage is dedicated to discussing the query "
                   "and its related topics.";
        case Criterion::Topicality:
            return "Is the passage about the same subject as the whole query "
                   "(not only a single word of it).";
        case Criterion::ContextualFit:
            return "Does the passage provide relevant background or context.";
    }
    throw std::logic_error("unknown criterion");
}

std::string_view criterion_key(Criterion c) {
    switch (c) {
        case Criterion::Exactness: return "exactness";
        case Criterion::Coverage: return "coverage";
        case Criterion::Topicality: return "topicality";
        case Criterion::ContextualFit: return "contextual_fit";
    }
    throw std::logic_error("unknown criterion");
}

Grade::Grade(int value) : value_(value) {
    if (value < 0 || value > 3)
        throw std::out_of_range("grade out of range: " + std::to_string(value));
}

RelevanceLabel::RelevanceLabel(int value) : value_(value) {
    if (value < 0 || value > 3)
        throw std::out_of_range("relevance label out of range: " + std::to_string(value));
}

std::optional<Grade> validate_grade(int raw) noexcept {
    if (raw < 0 || raw > 3) return std::nullopt;
    return Grade(raw);
}

std::optional<RelevanceLabel> validate_label(int raw) noexcept {
    if (raw < 0 || raw > 3) return std::nullopt;
    return RelevanceLabel(raw);
}

Query::Query(std::string id_in, std::string text_in)
    : id(std::move(id_in)), text(std::move(text_in)) {
    if (id.empty()) throw std::invalid_argument("query id must be non-empty");
    if (blank(text)) throw std::invalid_argument("query text must be non-empty");
}

Passage::Passage(std::string id_in, std::string text_in)
    : id(std::move(id_in)), text(std::move(text_in)) {
    if (id.empty()) throw std::invalid_argument("passage id must be non-empty");
    if (text.empty()) throw std::invalid_argument("passage text must be non-empty");
}

Grade CriterionGrades::get(Criterion c) const {
    switch (c) {
        case Criterion::Exactness: return exactness;
        case Criterion::Coverage: return coverage;
        case Criterion::Topicality: return topicality;
        case Criterion::ContextualFit: return contextual_fit;
    }
    throw std::logic_error("unknown criterion");
}

int CriterionGrades::sum() const {
    return exactness.value() + coverage.value() + topicality.value() +
           contextual_fit.value();
}

std::optional<CriterionGrades> JudgedPair::full_grades() const {
    if (grades.size() != 4) return std::nullopt;
    return CriterionGrades{grades.at(Criterion::Exactness),
                           grades.at(Criterion::Coverage),
                           grades.at(Criterion::Topicality),
                           grades.at(Criterion::ContextualFit)};
}

bool QrelsSet::insert(std::string query_id, std::string passage_id,
                      RelevanceLabel label) {
    return entries_
        .emplace(Key{std::move(query_id), std::move(passage_id)}, label)
        .second;
}

std::optional<RelevanceLabel> QrelsSet::get(std::string_view query_id,
                                            std::string_view passage_id) const {
    auto it = entries_.find(Key{std::string(query_id), std::string(passage_id)});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

}  // namespace relgrade
