#include "relgrade/formats.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace relgrade {

namespace {

bool blank(const std::string& line) {
    return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string field;
    while (in >> field) fields.push_back(std::move(field));
    return fields;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

}  // namespace

ParseError::ParseError(std::size_t line_number, const std::string& message)
    : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
      line_number_(line_number) {}

std::vector<QueryPassagePair> read_pairs(std::istream& in) {
    std::vector<QueryPassagePair> pairs;
    std::set<std::pair<std::string, std::string>> seen;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (blank(line)) continue;
        nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
        if (doc.is_discarded() || !doc.is_object())
            throw ParseError(line_number, "not a JSON object");
        for (const char* field : {"qid", "query", "pid", "passage"}) {
            if (!doc.contains(field) || !doc[field].is_string())
                throw ParseError(line_number,
                                 std::string("missing string field '") + field + "'");
        }
        auto qid = doc["qid"].get<std::string>();
        auto pid = doc["pid"].get<std::string>();
        if (!seen.emplace(qid, pid).second)
            throw ParseError(line_number, "duplicate key (" + qid + ", " + pid + ")");
        try {
            pairs.push_back({Query(qid, doc["query"].get<std::string>()),
                             Passage(pid, doc["passage"].get<std::string>())});
        } catch (const std::invalid_argument& err) {
            throw ParseError(line_number, err.what());
        }
    }
    return pairs;
}

std::vector<QueryPassagePair> read_pairs_file(const std::string& path) {
    auto in = open_input(path);
    return read_pairs(in);
}

void write_pairs(const std::vector<QueryPassagePair>& pairs, std::ostream& out) {
    for (const auto& pair : pairs) {
        nlohmann::json doc = {{"qid", pair.query.id},
                              {"query", pair.query.text},
                              {"pid", pair.passage.id},
                              {"passage", pair.passage.text}};
        out << doc.dump() << '\n';
    }
}

void write_pairs_file(const std::vector<QueryPassagePair>& pairs,
                      const std::string& path) {
    auto out = open_output(path);
    write_pairs(pairs, out);
}

QrelsSet read_qrels(std::istream& in) {
    QrelsSet qrels;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (blank(line)) continue;
        auto fields = split_ws(line);
        if (fields.size() != 4)
            throw ParseError(line_number, "expected 4 columns, got " +
                                              std::to_string(fields.size()));
        int raw;
        auto [ptr, ec] = std::from_chars(
            fields[3].data(), fields[3].data() + fields[3].size(), raw);
        if (ec != std::errc() || ptr != fields[3].data() + fields[3].size())
            throw ParseError(line_number, "label is not an integer: " + fields[3]);
        auto label = validate_label(raw);
        if (!label)
            throw ParseError(line_number, "label out of range 0-3: " + fields[3]);
        if (!qrels.insert(fields[0], fields[2], *label))
            throw ParseError(line_number, "duplicate key (" + fields[0] + ", " +
                                              fields[2] + ")");
    }
    return qrels;
}

QrelsSet read_qrels_file(const std::string& path) {
    auto in = open_input(path);
    return read_qrels(in);
}

void write_qrels(const QrelsSet& qrels, std::ostream& out) {
    for (const auto& [key, label] : qrels.entries()) {
        out << key.first << " 0 " << key.second << ' ' << label.value() << '\n';
    }
}

void write_qrels_file(const QrelsSet& qrels, const std::string& path) {
    auto out = open_output(path);
    write_qrels(qrels, out);
}

std::string format_score(double score) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), score);
    return std::string(buffer, ptr);
}

RunFile read_run(std::istream& in) {
    RunFile run;
    std::set<std::pair<std::string, std::string>> seen;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (blank(line)) continue;
        auto fields = split_ws(line);
        if (fields.size() != 6)
            throw ParseError(line_number, "expected 6 columns, got " +
                                              std::to_string(fields.size()));
        if (fields[1] != "Q0")
            throw ParseError(line_number, "second column must be Q0");
        double score;
        auto [ptr, ec] = std::from_chars(
            fields[4].data(), fields[4].data() + fields[4].size(), score);
        if (ec != std::errc() || ptr != fields[4].data() + fields[4].size())
            throw ParseError(line_number, "score is not a number: " + fields[4]);
        if (run.system_tag.empty()) {
            run.system_tag = fields[5];
        } else if (run.system_tag != fields[5]) {
            throw ParseError(line_number, "inconsistent system tag: expected '" +
                                              run.system_tag + "', got '" +
                                              fields[5] + "'");
        }
        if (!seen.emplace(fields[0], fields[2]).second)
            throw ParseError(line_number, "duplicate passage " + fields[2] +
                                              " for query " + fields[0]);
        run.rankings[fields[0]].push_back({fields[2], score});
    }
    // Canonical form: descending score per query, ranks dense from 1 (ranks
    // are implied by position, the stored rank column is recomputed on write).
    for (auto& [query_id, ranking] : run.rankings) {
        std::stable_sort(ranking.begin(), ranking.end(),
                         [](const RunEntry& a, const RunEntry& b) {
                             return a.score > b.score;
                         });
    }
    return run;
}

std::vector<RunFile> read_runs(const std::string& path_or_dir) {
    namespace fs = std::filesystem;
    std::vector<RunFile> runs;
    if (fs::is_directory(path_or_dir)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path_or_dir)) {
            if (entry.is_regular_file()) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            auto in = open_input(file.string());
            try {
                runs.push_back(read_run(in));
            } catch (const ParseError& err) {
                throw std::runtime_error(file.string() + ": " + err.what());
            }
        }
    } else {
        auto in = open_input(path_or_dir);
        runs.push_back(read_run(in));
    }
    std::set<std::string> tags;
    for (const RunFile& run : runs) {
        if (!tags.insert(run.system_tag).second)
            throw std::runtime_error("duplicate system tag across run files: " +
                                     run.system_tag);
    }
    return runs;
}

void write_run(const RunFile& run, std::ostream& out) {
    for (const auto& [query_id, ranking] : run.rankings) {
        std::size_t rank = 1;
        for (const RunEntry& entry : ranking) {
            out << query_id << " Q0 " << entry.passage_id << ' ' << rank << ' '
                << format_score(entry.score) << ' ' << run.system_tag << '\n';
            ++rank;
        }
    }
}

void write_run_file(const RunFile& run, const std::string& path) {
    auto out = open_output(path);
    write_run(run, out);
}

}  // namespace relgrade
