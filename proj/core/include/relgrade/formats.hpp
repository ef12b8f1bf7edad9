#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "relgrade/metrics.hpp"
#include "relgrade/model.hpp"

namespace relgrade {

/// Raised for any malformed input line; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line_number, const std::string& message);
    std::size_t line_number() const { return line_number_; }

private:
    std::size_t line_number_;
};

/// Input pairs: one JSON object per line with fields qid, query, pid,
/// passage. Input order is preserved; duplicate (qid, pid) keys are
/// rejected. Blank lines are skipped.
std::vector<QueryPassagePair> read_pairs(std::istream& in);
std::vector<QueryPassagePair> read_pairs_file(const std::string& path);
void write_pairs(const std::vector<QueryPassagePair>& pairs, std::ostream& out);
void write_pairs_file(const std::vector<QueryPassagePair>& pairs,
                      const std::string& path);

/// Qrels: four whitespace-separated columns "qid 0 pid label". Reading
/// tolerates variable whitespace; writing emits single spaces with lines
/// sorted by (qid, pid), so read-then-write is idempotent on canonical files.
QrelsSet read_qrels(std::istream& in);
QrelsSet read_qrels_file(const std::string& path);
void write_qrels(const QrelsSet& qrels, std::ostream& out);
void write_qrels_file(const QrelsSet& qrels, const std::string& path);

/// Runs: six whitespace-separated TREC columns "qid Q0 pid rank score tag".
/// Each file must carry a single system tag; entries are re-sorted by
/// descending score per query with dense ranks recomputed. A directory path
/// yields one RunFile per contained file.
RunFile read_run(std::istream& in);
std::vector<RunFile> read_runs(const std::string& path_or_dir);
void write_run(const RunFile& run, std::ostream& out);
void write_run_file(const RunFile& run, const std::string& path);

/// Canonical decimal form used for run scores (shortest round-trip).
std::string format_score(double score);

}  // namespace relgrade
