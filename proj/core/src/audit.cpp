#include "relgrade/audit.hpp"

#include "json.hpp"
#include "relgrade/prompts.hpp"

namespace relgrade {

std::string audit_record_to_json_line(const AuditRecord& record, bool verbose) {
    nlohmann::json doc;
    doc["qid"] = record.pair.query_id;
    doc["pid"] = record.pair.passage_id;
    doc["method"] = record.pair.method;
    doc["label"] = record.pair.label.value();
    if (!record.pair.grades.empty()) {
        nlohmann::json grades;
        for (const auto& [criterion, grade] : record.pair.grades) {
            grades[std::string(criterion_key(criterion))] = grade.value();
        }
        doc["grades"] = std::move(grades);
    }
    if (record.pair.binary_check) doc["binary_check"] = *record.pair.binary_check;
    if (record.pair.generated_query)
        doc["generated_query"] = *record.pair.generated_query;
    if (record.pair.error) doc["error"] = *record.pair.error;

    nlohmann::json calls = nlohmann::json::array();
    for (const CallRecord& call : record.calls) {
        nlohmann::json entry;
        entry["prompt_hash"] = fingerprint_hex(call.prompt_hash);
        if (verbose) {
            entry["system"] = call.system_message;
            entry["prompt"] = call.user_prompt;
        }
        if (call.error) {
            entry["error"] = *call.error;
        } else {
            entry["reply"] = call.reply;
        }
        calls.push_back(std::move(entry));
    }
    doc["calls"] = std::move(calls);
    if (record.duration_ms) doc["duration_ms"] = *record.duration_ms;
    return doc.dump();
}

}  // namespace relgrade
