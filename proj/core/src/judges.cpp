#include "relgrade/judges.hpp"

#include <cctype>
#include <stdexcept>

#include "relgrade/prompts.hpp"

namespace relgrade {

namespace {

struct CallResult {
    std::optional<std::string> reply;
    std::optional<std::string> note;
};

/// Sends one rendered prompt, records the call, and converts backend errors
/// into notes (the label-0 fallback policy is applied by the caller).
CallResult issue(ChatBackend& backend, const RenderedPrompt& prompt,
                 const DecodeParams& decode, std::string_view stage,
                 std::vector<CallRecord>& calls) {
    CallRecord record;
    record.prompt_hash =
        prompt_fingerprint(prompt.system_message, prompt.user_prompt);
    record.system_message = prompt.system_message;
    record.user_prompt = prompt.user_prompt;
    try {
        ChatResponse response =
            backend.complete({prompt.system_message, prompt.user_prompt, decode});
        record.reply = response.text;
        calls.push_back(std::move(record));
        return {response.text, std::nullopt};
    } catch (const BackendError& err) {
        std::string note = std::string(stage) + ": " + err.what();
        record.error = note;
        calls.push_back(std::move(record));
        return {std::nullopt, std::move(note)};
    }
}

Grade grade_one_criterion(const QueryPassagePair& pair, Criterion criterion,
                          ChatBackend& backend, const DecodeParams& decode,
                          std::vector<CallRecord>& calls,
                          std::vector<std::string>& notes) {
    const std::string_view stage = criterion_key(criterion);
    auto prompt = render_criterion_prompt(criterion, pair.query, pair.passage);
    CallResult result = issue(backend, prompt, decode, stage, calls);
    if (!result.reply) {
        notes.push_back(*result.note);
        return Grade(0);
    }
    auto score = parse_score(*result.reply, 0, 3);
    if (!score) {
        notes.push_back(std::string(stage) + ": no valid score in reply");
        return Grade(0);
    }
    return Grade(*score);
}

std::optional<std::string> join_notes(const std::vector<std::string>& notes) {
    if (notes.empty()) return std::nullopt;
    std::string joined;
    for (const auto& note : notes) {
        if (!joined.empty()) joined += "; ";
        joined += note;
    }
    return joined;
}

JudgedPair base_pair(const QueryPassagePair& pair, JudgeMethod method) {
    JudgedPair judged;
    judged.query_id = pair.query.id;
    judged.passage_id = pair.passage.id;
    judged.method = std::string(method_id(method));
    judged.label = RelevanceLabel(0);
    return judged;
}

void record_full_grades(JudgedPair& judged, const CriterionGrades& grades) {
    for (Criterion c : all_criteria()) judged.grades.emplace(c, grades.get(c));
}

std::string strip_generated_query(std::string_view reply) {
    auto trim = [](std::string_view s) {
        std::size_t b = 0, e = s.size();
        while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
        return s.substr(b, e - b);
    };
    std::string_view s = trim(reply);
    while (s.size() >= 2 && s.front() == s.back() &&
           (s.front() == '"' || s.front() == '\'')) {
        s = trim(s.substr(1, s.size() - 2));
    }
    return std::string(s);
}

}  // namespace

std::string_view method_id(JudgeMethod method) {
    switch (method) {
        case JudgeMethod::FourPrompts: return "TREMA-4prompts";
        case JudgeMethod::SumDecompose: return "TREMA-sumdecompose";
        case JudgeMethod::NaiveBayesDecompose: return "TREMA-naiveBdecompose";
        case JudgeMethod::BinaryCheckCoT: return "TREMA-CoT";
        case JudgeMethod::PassageToQuery: return "TREMA-other";
    }
    throw std::logic_error("unknown judge method");
}

std::optional<JudgeMethod> method_from_string(std::string_view name) {
    for (JudgeMethod m : all_methods()) {
        if (name == method_id(m)) return m;
    }
    if (name == "4prompts" || name == "four-prompts") return JudgeMethod::FourPrompts;
    if (name == "sum" || name == "sum-decompose") return JudgeMethod::SumDecompose;
    if (name == "nb" || name == "naive-bayes") return JudgeMethod::NaiveBayesDecompose;
    if (name == "cot" || name == "binary-check") return JudgeMethod::BinaryCheckCoT;
    if (name == "p2q" || name == "passage-to-query") return JudgeMethod::PassageToQuery;
    return std::nullopt;
}

std::vector<JudgeMethod> all_methods() {
    return {JudgeMethod::FourPrompts, JudgeMethod::SumDecompose,
            JudgeMethod::NaiveBayesDecompose, JudgeMethod::BinaryCheckCoT,
            JudgeMethod::PassageToQuery};
}

PhaseOneResult grade_all_criteria(const QueryPassagePair& pair, ChatBackend& backend,
                                  const DecodeParams& decode) {
    std::vector<CallRecord> calls;
    std::vector<std::string> notes;
    Grade exactness =
        grade_one_criterion(pair, Criterion::Exactness, backend, decode, calls, notes);
    Grade coverage =
        grade_one_criterion(pair, Criterion::Coverage, backend, decode, calls, notes);
    Grade topicality =
        grade_one_criterion(pair, Criterion::Topicality, backend, decode, calls, notes);
    Grade contextual_fit = grade_one_criterion(pair, Criterion::ContextualFit, backend,
                                               decode, calls, notes);
    return {CriterionGrades{exactness, coverage, topicality, contextual_fit},
            std::move(notes), std::move(calls)};
}

JudgeOutcome judge_four_prompts(const QueryPassagePair& pair, ChatBackend& backend,
                                const DecodeParams& decode) {
    PhaseOneResult phase_one = grade_all_criteria(pair, backend, decode);
    JudgedPair judged = base_pair(pair, JudgeMethod::FourPrompts);
    record_full_grades(judged, phase_one.grades);

    std::vector<std::string> notes = phase_one.notes;
    auto prompt = render_aggregation_prompt(pair.query, pair.passage, phase_one.grades);
    CallResult result = issue(backend, prompt, decode, "aggregation", phase_one.calls);
    if (!result.reply) {
        notes.push_back(*result.note);
    } else if (auto score = parse_score(*result.reply, 0, 3)) {
        judged.label = RelevanceLabel(*score);
    } else {
        notes.push_back("aggregation: no valid score in reply");
    }
    judged.error = join_notes(notes);
    return {std::move(judged), std::move(phase_one.calls)};
}

JudgeOutcome judge_sum(const QueryPassagePair& pair, ChatBackend& backend,
                       const ThresholdMap& thresholds, const DecodeParams& decode) {
    PhaseOneResult phase_one = grade_all_criteria(pair, backend, decode);
    JudgedPair judged = base_pair(pair, JudgeMethod::SumDecompose);
    record_full_grades(judged, phase_one.grades);
    judged.label = sum_to_label(phase_one.grades, thresholds);
    judged.error = join_notes(phase_one.notes);
    return {std::move(judged), std::move(phase_one.calls)};
}

JudgeOutcome judge_naive_bayes(const QueryPassagePair& pair, ChatBackend& backend,
                               const GaussianNbModel& model,
                               const DecodeParams& decode) {
    PhaseOneResult phase_one = grade_all_criteria(pair, backend, decode);
    JudgedPair judged = base_pair(pair, JudgeMethod::NaiveBayesDecompose);
    record_full_grades(judged, phase_one.grades);
    judged.label = model.predict(phase_one.grades);
    judged.error = join_notes(phase_one.notes);
    return {std::move(judged), std::move(phase_one.calls)};
}

JudgeOutcome judge_binary_branch(const QueryPassagePair& pair, ChatBackend& backend,
                                 const DecodeParams& decode) {
    JudgedPair judged = base_pair(pair, JudgeMethod::BinaryCheckCoT);
    std::vector<CallRecord> calls;
    std::vector<std::string> notes;

    CallResult binary = issue(backend, render_binary_prompt(pair.query, pair.passage),
                              decode, "binary check", calls);
    if (!binary.reply) {
        notes.push_back(*binary.note);
        judged.error = join_notes(notes);
        return {std::move(judged), std::move(calls)};
    }
    auto decision = parse_yes_no(*binary.reply);
    if (!decision) {
        notes.push_back("binary check: ambiguous reply");
        judged.error = join_notes(notes);
        return {std::move(judged), std::move(calls)};
    }
    judged.binary_check = *decision;

    if (*decision) {
        Grade exactness = grade_one_criterion(pair, Criterion::Exactness, backend,
                                              decode, calls, notes);
        Grade coverage = grade_one_criterion(pair, Criterion::Coverage, backend,
                                             decode, calls, notes);
        judged.grades.emplace(Criterion::Exactness, exactness);
        judged.grades.emplace(Criterion::Coverage, coverage);
        auto prompt = render_relevance_grading_prompt(pair.query, pair.passage,
                                                      exactness, coverage);
        CallResult final = issue(backend, prompt, decode, "relevance grading", calls);
        if (!final.reply) {
            notes.push_back(*final.note);
        } else if (auto score = parse_score(*final.reply, 2, 3)) {
            judged.label = RelevanceLabel(*score);
        } else {
            notes.push_back("relevance grading: no valid score in [2,3]");
        }
    } else {
        Grade topicality = grade_one_criterion(pair, Criterion::Topicality, backend,
                                               decode, calls, notes);
        Grade contextual_fit = grade_one_criterion(pair, Criterion::ContextualFit,
                                                   backend, decode, calls, notes);
        judged.grades.emplace(Criterion::Topicality, topicality);
        judged.grades.emplace(Criterion::ContextualFit, contextual_fit);
        auto prompt = render_nonrelevance_grading_prompt(pair.query, pair.passage,
                                                         topicality, contextual_fit);
        CallResult final = issue(backend, prompt, decode, "non-relevance grading", calls);
        if (!final.reply) {
            notes.push_back(*final.note);
        } else if (auto score = parse_score(*final.reply, 0, 1)) {
            judged.label = RelevanceLabel(*score);
        } else {
            notes.push_back("non-relevance grading: no valid score in [0,1]");
        }
    }
    judged.error = join_notes(notes);
    return {std::move(judged), std::move(calls)};
}

JudgeOutcome judge_passage_to_query(const QueryPassagePair& pair,
                                    ChatBackend& backend,
                                    const DecodeParams& decode) {
    JudgedPair judged = base_pair(pair, JudgeMethod::PassageToQuery);
    std::vector<CallRecord> calls;
    std::vector<std::string> notes;

    CallResult generation = issue(backend, render_query_generation_prompt(pair.passage),
                                  decode, "query generation", calls);
    if (!generation.reply) {
        notes.push_back(*generation.note);
        judged.error = join_notes(notes);
        return {std::move(judged), std::move(calls)};
    }
    std::string generated = strip_generated_query(*generation.reply);
    if (generated.empty()) {
        notes.push_back("query generation: empty generated query");
        judged.error = join_notes(notes);
        return {std::move(judged), std::move(calls)};
    }
    judged.generated_query = generated;

    auto prompt = render_similarity_prompt(generated, pair.query);
    CallResult similarity = issue(backend, prompt, decode, "similarity", calls);
    if (!similarity.reply) {
        notes.push_back(*similarity.note);
    } else if (auto score = parse_score(*similarity.reply, 0, 3)) {
        // The similarity score is the relevance label.
        judged.label = RelevanceLabel(*score);
    } else {
        notes.push_back("similarity: no valid score in reply");
    }
    judged.error = join_notes(notes);
    return {std::move(judged), std::move(calls)};
}

JudgeOutcome judge_pair(const QueryPassagePair& pair, ChatBackend& backend,
                        const JudgeSpec& spec) {
    switch (spec.method) {
        case JudgeMethod::FourPrompts:
            return judge_four_prompts(pair, backend, spec.decode);
        case JudgeMethod::SumDecompose:
            return judge_sum(pair, backend, spec.thresholds, spec.decode);
        case JudgeMethod::NaiveBayesDecompose:
            if (spec.nb_model == nullptr)
                throw std::invalid_argument(
                    "naive Bayes judging requires a fitted model");
            return judge_naive_bayes(pair, backend, *spec.nb_model, spec.decode);
        case JudgeMethod::BinaryCheckCoT:
            return judge_binary_branch(pair, backend, spec.decode);
        case JudgeMethod::PassageToQuery:
            return judge_passage_to_query(pair, backend, spec.decode);
    }
    throw std::logic_error("unknown judge method");
}

}  // namespace relgrade
