#include "seed/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "seed/errors.hpp"
#include "seed/text_util.hpp"

namespace seed {

using json = nlohmann::json;

namespace {

constexpr Topic kTopics[] = {Topic::Magnetism, Topic::Superconductivity, Topic::StronglyCorrelated,
                             Topic::Semiconductors, Topic::TheoreticalFoundations, Topic::Others};
constexpr AnswerType kTypes[] = {AnswerType::Expression, AnswerType::Equation, AnswerType::Numeric,
                                 AnswerType::Tuple, AnswerType::Interval};

std::string fixed(long double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf", digits, v);
  return buf;
}

std::string required_string(const json& row, const char* field, std::size_t line) {
  if (!row.contains(field)) throw SchemaError(line, field, "missing");
  if (!row[field].is_string()) throw SchemaError(line, field, "must be a string");
  return row[field].get<std::string>();
}

json parse_row(std::string_view line, std::size_t line_no) {
  json row;
  try {
    row = json::parse(line);
  } catch (const json::parse_error& e) {
    throw SchemaError(line_no, "(line)", std::string("invalid JSON: ") + e.what());
  }
  if (!row.is_object()) throw SchemaError(line_no, "(line)", "expected a JSON object");
  return row;
}

}  // namespace

std::string_view topic_name(Topic t) {
  switch (t) {
    case Topic::Magnetism: return "Magnetism";
    case Topic::Superconductivity: return "Superconductivity";
    case Topic::StronglyCorrelated: return "StronglyCorrelated";
    case Topic::Semiconductors: return "Semiconductors";
    case Topic::TheoreticalFoundations: return "TheoreticalFoundations";
    case Topic::Others: return "Others";
  }
  return "Others";
}

std::optional<Topic> parse_topic(std::string_view name) {
  for (Topic t : kTopics) {
    if (topic_name(t) == name) return t;
  }
  return std::nullopt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(0, path, "cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<BenchmarkItem> parse_dataset(std::string_view text, const GradeConfig& cfg,
                                         std::vector<std::string>* issues) {
  std::vector<BenchmarkItem> items;
  std::set<std::string> ids;
  std::exception_ptr first;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      json row = parse_row(line, line_no);
      BenchmarkItem item;
      item.id = required_string(row, "id", line_no);
      if (item.id.empty()) throw SchemaError(line_no, "id", "must not be empty");
      if (!ids.insert(item.id).second) throw SchemaError(line_no, "id", "duplicate id '" + item.id + "'");
      const std::string topic = required_string(row, "topic", line_no);
      auto t = parse_topic(topic);
      if (!t) throw SchemaError(line_no, "topic", "unknown topic '" + topic + "'");
      item.topic = *t;
      const std::string type = required_string(row, "answer_type", line_no);
      auto at = parse_answer_type(type);
      if (!at) throw SchemaError(line_no, "answer_type", "unknown answer type '" + type + "'");
      item.answer_type = *at;
      item.problem = required_string(row, "problem", line_no);
      item.ground_truth = required_string(row, "ground_truth", line_no);
      try {
        item.parsed = prepare_ground_truth(item.ground_truth, item.answer_type, cfg);
      } catch (const GroundTruthInvalid& e) {
        throw GroundTruthInvalid(std::string(e.what()) + " (item " + item.id + ")", line_no, e.position());
      }
      items.push_back(std::move(item));
    } catch (const Error& e) {
      if (issues) issues->push_back("line " + std::to_string(line_no) + ": " + e.code() + ": " + e.what());
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
  return items;
}

std::vector<BenchmarkItem> load_dataset(const std::string& path, const GradeConfig& cfg,
                                        std::vector<std::string>* issues) {
  return parse_dataset(read_file(path), cfg, issues);
}

std::vector<Response> parse_responses(std::string_view text, std::vector<std::string>* warnings) {
  std::vector<Response> out;
  std::map<std::pair<std::string, std::string>, std::size_t> seen;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json row = parse_row(line, line_no);
    Response r;
    r.id = required_string(row, "id", line_no);
    r.model = required_string(row, "model", line_no);
    r.response = required_string(row, "response", line_no);
    auto key = std::make_pair(r.id, r.model);
    if (auto it = seen.find(key); it != seen.end()) {
      if (warnings) {
        warnings->push_back("line " + std::to_string(line_no) + ": duplicate response for (" + r.id + ", " +
                            r.model + "); the last one wins");
      }
      out[it->second] = std::move(r);
    } else {
      seen.emplace(key, out.size());
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<Response> load_responses(const std::string& path, std::vector<std::string>* warnings) {
  return parse_responses(read_file(path), warnings);
}

RunReport grade_run(const std::vector<BenchmarkItem>& items, const std::vector<Response>& responses,
                    const GradeConfig& cfg, std::vector<std::string>* warnings) {
  std::set<std::string> models;
  std::map<std::pair<std::string, std::string>, const Response*> by_key;
  std::set<std::string> known_ids;
  for (const auto& item : items) known_ids.insert(item.id);
  for (const auto& r : responses) {
    models.insert(r.model);
    by_key[{r.model, r.id}] = &r;
    if (!known_ids.count(r.id) && warnings) {
      warnings->push_back("response for unknown item '" + r.id + "' (model " + r.model + ") ignored");
    }
  }

  struct Job {
    const BenchmarkItem* item;
    const std::string* model;
    const Response* response;
  };
  std::vector<Job> jobs;
  for (const auto& model : models) {
    for (const auto& item : items) {
      auto it = by_key.find({model, item.id});
      jobs.push_back({&item, &model, it == by_key.end() ? nullptr : it->second});
    }
  }

  RunReport report;
  report.records.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const Job& j = jobs[k];
      ItemRecord& rec = report.records[k];
      rec.id = j.item->id;
      rec.model = *j.model;
      rec.topic = j.item->topic;
      rec.answer_type = j.item->answer_type;
      if (!j.response) {
        rec.result.relative_distance = 1;
        rec.result.diagnostics.push_back("MissingResponse: no response for this item");
        continue;
      }
      try {
        rec.result = grade(j.response->response, j.item->parsed, cfg);
      } catch (const std::exception& e) {
        rec.result = GradeResult{};
        rec.result.relative_distance = 1;
        rec.result.diagnostics.push_back(std::string("InternalError: ") + e.what());
      }
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return report;
}

std::optional<GroupBy> parse_group_by(std::string_view name) {
  if (name == "topic") return GroupBy::Topic;
  if (name == "answer_type") return GroupBy::AnswerType;
  if (name == "model") return GroupBy::Model;
  return std::nullopt;
}

namespace {

GroupRow summarize(std::string key, const std::vector<const ItemRecord*>& rows) {
  GroupRow g;
  g.key = std::move(key);
  g.count = rows.size();
  if (rows.empty()) return g;
  long double sum = 0;
  std::size_t exact = 0;
  for (const ItemRecord* r : rows) {
    sum += r->result.score;
    exact += r->result.score == 100;
  }
  g.mean = sum / static_cast<long double>(rows.size());
  g.accuracy = static_cast<long double>(exact) / static_cast<long double>(rows.size());
  return g;
}

}  // namespace

std::vector<GroupRow> aggregate(const RunReport& report, GroupBy by, std::vector<std::string>* empty_groups) {
  std::vector<std::string> keys;
  if (by == GroupBy::Topic) {
    for (Topic t : kTopics) keys.emplace_back(topic_name(t));
  } else if (by == GroupBy::AnswerType) {
    for (AnswerType t : kTypes) keys.emplace_back(answer_type_name(t));
  } else {
    std::set<std::string> models;
    for (const auto& r : report.records) models.insert(r.model);
    keys.assign(models.begin(), models.end());
  }
  auto key_of = [by](const ItemRecord& r) {
    if (by == GroupBy::Topic) return std::string(topic_name(r.topic));
    if (by == GroupBy::AnswerType) return std::string(answer_type_name(r.answer_type));
    return r.model;
  };
  std::vector<GroupRow> out;
  for (const auto& k : keys) {
    std::vector<const ItemRecord*> rows;
    for (const auto& r : report.records) {
      if (key_of(r) == k) rows.push_back(&r);
    }
    if (rows.empty()) {
      if (empty_groups) empty_groups->push_back(k);
      continue;
    }
    out.push_back(summarize(k, rows));
  }
  return out;
}

GroupRow overall(const RunReport& report) {
  std::vector<const ItemRecord*> rows;
  for (const auto& r : report.records) rows.push_back(&r);
  return summarize("overall", rows);
}

namespace {

json result_json(const GradeResult& g) {
  json script = json::array();
  for (const EditOp& op : g.edit_script) {
    json o = {{"op", std::string(edit_kind_name(op.kind))}, {"path", op.path}};
    if (op.kind != EditKind::Insert) o["before"] = op.before;
    if (op.kind != EditKind::Delete) o["after"] = op.after;
    if (op.kind == EditKind::Insert) {
      o["position"] = op.position;
      o["adopt"] = op.adopt;
    }
    script.push_back(std::move(o));
  }
  return {
      {"score", std::stod(fixed(g.score, 6))},
      {"equivalent", g.equivalent},
      {"distance", to_string(g.distance)},
      {"relative_distance", std::stod(fixed(g.relative_distance, 6))},
      {"edit_script", std::move(script)},
      {"diagnostics", g.diagnostics},
  };
}

}  // namespace

std::string record_json(const ItemRecord& r) {
  json j = {{"id", r.id},
            {"model", r.model},
            {"topic", std::string(topic_name(r.topic))},
            {"answer_type", std::string(answer_type_name(r.answer_type))}};
  j.update(result_json(r.result));
  return j.dump();
}

std::string records_jsonl(const RunReport& report) {
  std::string out;
  for (const auto& r : report.records) out += record_json(r) + "\n";
  return out;
}

RunReport parse_records(std::string_view jsonl) {
  RunReport report;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(jsonl)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json row = parse_row(line, line_no);
    ItemRecord r;
    r.id = required_string(row, "id", line_no);
    r.model = required_string(row, "model", line_no);
    auto t = parse_topic(required_string(row, "topic", line_no));
    if (!t) throw SchemaError(line_no, "topic", "unknown topic");
    r.topic = *t;
    auto at = parse_answer_type(required_string(row, "answer_type", line_no));
    if (!at) throw SchemaError(line_no, "answer_type", "unknown answer type");
    r.answer_type = *at;
    if (!row.contains("score") || !row["score"].is_number()) throw SchemaError(line_no, "score", "must be a number");
    r.result.score = row["score"].get<double>();
    if (row.contains("equivalent") && row["equivalent"].is_boolean()) r.result.equivalent = row["equivalent"].get<bool>();
    if (row.contains("diagnostics") && row["diagnostics"].is_array()) {
      for (const auto& d : row["diagnostics"]) {
        if (d.is_string()) r.result.diagnostics.push_back(d.get<std::string>());
      }
    }
    report.records.push_back(std::move(r));
  }
  return report;
}

std::string render_table(const std::vector<GroupRow>& rows, const GroupRow& total, std::string_view title) {
  std::ostringstream out;
  char buf[160];
  out << title << "\n";
  std::snprintf(buf, sizeof buf, "%-26s %7s %10s %12s\n", "group", "count", "mean SEED", "SEED-exact");
  out << buf;
  auto line = [&](const GroupRow& g) {
    std::snprintf(buf, sizeof buf, "%-26s %7zu %10s %12s\n", g.key.c_str(), g.count, fixed(g.mean, 2).c_str(),
                  fixed(g.accuracy, 4).c_str());
    out << buf;
  };
  for (const auto& g : rows) line(g);
  line(total);
  return out.str();
}

std::string report_text(const RunReport& report) {
  std::ostringstream out;
  const GroupRow total = overall(report);
  out << "SEED run report\n";
  out << "records: " << report.records.size() << "\n";
  out << "accuracy column: SEED-exact accuracy (share of items scoring exactly 100), not expert-labelled\n\n";
  out << render_table(aggregate(report, GroupBy::Model), total, "by model") << "\n";
  out << render_table(aggregate(report, GroupBy::Topic), total, "by topic") << "\n";
  out << render_table(aggregate(report, GroupBy::AnswerType), total, "by answer_type");
  return out.str();
}

void write_run(const std::string& dir, const RunReport& report, const GradeConfig& cfg) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream f(std::filesystem::path(dir) / name, std::ios::binary | std::ios::trunc);
    if (!f) throw SchemaError(0, name, "cannot write file");
    f << body;
  };
  write("records.jsonl", records_jsonl(report));
  write("report.txt", report_text(report));
  write("config.txt", to_config_text(cfg));
}

RunReport read_run(const std::string& dir) {
  return parse_records(read_file((std::filesystem::path(dir) / "records.jsonl").string()));
}

std::vector<long double> parse_scores(std::string_view text) {
  std::vector<long double> out;
  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    const std::string line(trim(raw));
    if (line.empty()) continue;
    if (line.front() == '{') {
      json row = parse_row(line, line_no);
      if (!row.contains("score") || !row["score"].is_number()) throw SchemaError(line_no, "score", "must be a number");
      out.push_back(row["score"].get<double>());
      continue;
    }
    char* end = nullptr;
    const long double v = std::strtold(line.c_str(), &end);
    if (end == line.c_str() || *end != '\0') throw SchemaError(line_no, "score", "not a number '" + line + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace seed
