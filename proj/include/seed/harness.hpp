#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seed/config.hpp"
#include "seed/grader.hpp"

namespace seed {

enum class Topic : std::uint8_t {
  Magnetism,
  Superconductivity,
  StronglyCorrelated,
  Semiconductors,
  TheoreticalFoundations,
  Others,
};
std::string_view topic_name(Topic t);
std::optional<Topic> parse_topic(std::string_view name);

struct BenchmarkItem {
  std::string id;
  Topic topic = Topic::Others;
  AnswerType answer_type = AnswerType::Expression;
  std::string problem;
  std::string ground_truth;
  TypedAnswer parsed;  // ground truth after validation
};

struct Response {
  std::string id;
  std::string model;
  std::string response;
};

// Line-delimited JSON. Every invalid row is appended to `issues` (with its
// line number); afterwards the first failure is thrown as SchemaError or
// GroundTruthInvalid.
std::vector<BenchmarkItem> parse_dataset(std::string_view text, const GradeConfig& cfg = {},
                                         std::vector<std::string>* issues = nullptr);
std::vector<BenchmarkItem> load_dataset(const std::string& path, const GradeConfig& cfg = {},
                                        std::vector<std::string>* issues = nullptr);

// Duplicate (id, model) rows: the last wins and a warning is recorded.
std::vector<Response> parse_responses(std::string_view text, std::vector<std::string>* warnings = nullptr);
std::vector<Response> load_responses(const std::string& path, std::vector<std::string>* warnings = nullptr);

struct ItemRecord {
  std::string id;
  std::string model;
  Topic topic = Topic::Others;
  AnswerType answer_type = AnswerType::Expression;
  GradeResult result;
};

struct RunReport {
  std::vector<ItemRecord> records;  // models sorted, items in dataset order
};

// Each model appearing in `responses` is graded on every item; a missing
// response scores 0 (MissingResponse). Responses whose id is not in the
// dataset are reported in `warnings`. Results do not depend on `threads`.
RunReport grade_run(const std::vector<BenchmarkItem>& items, const std::vector<Response>& responses,
                    const GradeConfig& cfg = {}, std::vector<std::string>* warnings = nullptr);

enum class GroupBy : std::uint8_t { Topic, AnswerType, Model };
std::optional<GroupBy> parse_group_by(std::string_view name);

struct GroupRow {
  std::string key;
  std::size_t count = 0;
  long double mean = 0;
  long double accuracy = 0;  // SEED-exact: share of records scoring 100
};

// Groups in a stable order (enum order, or model name). Empty groups are
// omitted and listed in `empty_groups`.
std::vector<GroupRow> aggregate(const RunReport& report, GroupBy by,
                                std::vector<std::string>* empty_groups = nullptr);
GroupRow overall(const RunReport& report);

std::string record_json(const ItemRecord& r);
std::string records_jsonl(const RunReport& report);
RunReport parse_records(std::string_view jsonl);

std::string render_table(const std::vector<GroupRow>& rows, const GroupRow& total, std::string_view title);
std::string report_text(const RunReport& report);

// Writes records.jsonl, report.txt and config.txt into `dir` (created).
void write_run(const std::string& dir, const RunReport& report, const GradeConfig& cfg);
RunReport read_run(const std::string& dir);

// One number per line, or JSON objects carrying a numeric "score".
std::vector<long double> parse_scores(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace seed
