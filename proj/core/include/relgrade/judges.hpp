#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relgrade/aggregation.hpp"
#include "relgrade/backend.hpp"
#include "relgrade/model.hpp"

namespace relgrade {

/// The five judging strategies. Identifier strings match the run names the
/// methods were submitted under, so output files line up with published
/// results tables.
enum class JudgeMethod {
    FourPrompts,
    SumDecompose,
    NaiveBayesDecompose,
    BinaryCheckCoT,
    PassageToQuery,
};

std::string_view method_id(JudgeMethod method);

/// Accepts identifier strings ("TREMA-4prompts") and short aliases
/// ("4prompts", "sum", "nb", "cot", "p2q").
std::optional<JudgeMethod> method_from_string(std::string_view name);

std::vector<JudgeMethod> all_methods();

/// One backend call as seen by a judge: the rendered prompt, its stable
/// fingerprint, and either the raw reply or the failure note.
struct CallRecord {
    std::uint64_t prompt_hash = 0;
    std::string system_message;
    std::string user_prompt;
    std::string reply;
    std::optional<std::string> error;
};

struct JudgeOutcome {
    JudgedPair pair;
    std::vector<CallRecord> calls;
};

struct PhaseOneResult {
    CriterionGrades grades;
    std::vector<std::string> notes;  // one entry per failed criterion
    std::vector<CallRecord> calls;
};

/// Issues the four criterion prompts in the fixed order Exactness, Coverage,
/// Topicality, Contextual Fit. A failed call or unparseable reply degrades
/// that criterion to grade 0 with a note; the others proceed.
PhaseOneResult grade_all_criteria(const QueryPassagePair& pair, ChatBackend& backend,
                                  const DecodeParams& decode);

JudgeOutcome judge_four_prompts(const QueryPassagePair& pair, ChatBackend& backend,
                                const DecodeParams& decode);

JudgeOutcome judge_sum(const QueryPassagePair& pair, ChatBackend& backend,
                       const ThresholdMap& thresholds, const DecodeParams& decode);

JudgeOutcome judge_naive_bayes(const QueryPassagePair& pair, ChatBackend& backend,
                               const GaussianNbModel& model,
                               const DecodeParams& decode);

JudgeOutcome judge_binary_branch(const QueryPassagePair& pair, ChatBackend& backend,
                                 const DecodeParams& decode);

JudgeOutcome judge_passage_to_query(const QueryPassagePair& pair,
                                    ChatBackend& backend,
                                    const DecodeParams& decode);

/// Everything a dispatch needs beyond the pair and the backend.
struct JudgeSpec {
    JudgeMethod method = JudgeMethod::FourPrompts;
    DecodeParams decode;
    ThresholdMap thresholds = ThresholdMap::standard();
    const GaussianNbModel* nb_model = nullptr;  // required for NaiveBayesDecompose
};

JudgeOutcome judge_pair(const QueryPassagePair& pair, ChatBackend& backend,
                        const JudgeSpec& spec);

}  // namespace relgrade
