#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relgrade/judges.hpp"
#include "relgrade/model.hpp"

namespace relgrade {

/// One JSON line per judged pair: the judged result plus the per-call
/// transcript. By default calls carry prompt fingerprints only; full prompt
/// text duplicates large passages and is stored only under verbose mode.
struct AuditRecord {
    JudgedPair pair;
    std::vector<CallRecord> calls;
    std::optional<long long> duration_ms;
};

std::string audit_record_to_json_line(const AuditRecord& record, bool verbose);

}  // namespace relgrade
