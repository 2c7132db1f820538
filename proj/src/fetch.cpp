#include "seed/fetch.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "seed/errors.hpp"

namespace seed {

using json = nlohmann::json;

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string completions_url(const std::string& endpoint) {
  const std::string suffix = "/chat/completions";
  if (endpoint.size() >= suffix.size() &&
      endpoint.compare(endpoint.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return endpoint;
  }
  std::string base = endpoint;
  while (!base.empty() && base.back() == '/') base.pop_back();
  return base + suffix;
}

bool retryable(int status) { return status == 0 || status == 429 || (status >= 500 && status <= 599); }

std::chrono::milliseconds backoff(const FetchConfig& cfg, const std::string& key, int attempt,
                                  const HttpResponse& resp) {
  if (auto it = resp.headers.find("retry-after"); it != resp.headers.end()) {
    char* end = nullptr;
    const long secs = std::strtol(it->second.c_str(), &end, 10);
    if (end != it->second.c_str() && *end == '\0' && secs >= 0) {
      return std::min(cfg.max_delay, std::chrono::milliseconds(secs * 1000));
    }
  }
  const long long base = cfg.base_delay.count() << std::min(attempt, 20);
  // Jitter in [0, base/2), derived from the item key so runs are repeatable.
  const std::uint64_t h = fnv1a(key + "#" + std::to_string(attempt));
  const long long jitter = base > 1 ? static_cast<long long>(h % static_cast<std::uint64_t>(base / 2 + 1)) : 0;
  return std::min(cfg.max_delay, std::chrono::milliseconds(base + jitter));
}

std::string extract_content(const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error&) {
    throw HttpError(200, "response body is not JSON");
  }
  try {
    const json& content = j.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw HttpError(200, "message content is not a string");
    return content.get<std::string>();
  } catch (const json::exception&) {
    throw HttpError(200, "response lacks choices[0].message.content");
  }
}

}  // namespace

const std::string& prompt_template() {
  static const std::string t =
      "Solve the condensed matter physics problem below. Show your reasoning, and express the result "
      "only in terms of symbols defined in the problem. Put the final answer, written as a LaTeX "
      "formula, inside \\boxed{}.";
  return t;
}

std::string build_prompt(const std::string& problem) { return prompt_template() + "\n\n" + problem; }

std::string prompt_hash(const std::string& problem) { return hex64(fnv1a(build_prompt(problem))); }

std::string cache_key(const std::string& model, const std::string& id, const std::string& problem) {
  std::string bytes = model;
  bytes.push_back('\0');
  bytes += id;
  bytes.push_back('\0');
  bytes += prompt_hash(problem);
  return hex64(fnv1a(bytes));
}

std::vector<Response> fetch_responses(const FetchConfig& cfg, const std::vector<BenchmarkItem>& items,
                                      const Transport& transport, const Sleeper& sleeper) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.cache_dir);
  const char* key_env = std::getenv(cfg.api_key_env.c_str());
  const std::string api_key = key_env ? key_env : "";
  const std::string url = completions_url(cfg.endpoint);

  std::vector<Response> out;
  for (const BenchmarkItem& item : items) {
    const std::string key = cache_key(cfg.model, item.id, item.problem);
    const fs::path file = fs::path(cfg.cache_dir) / (key + ".json");
    if (fs::exists(file)) {
      std::ifstream in(file, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      try {
        json j = json::parse(ss.str());
        if (j.at("model") != cfg.model || j.at("id") != item.id || j.at("prompt_hash") != prompt_hash(item.problem)) {
          throw CacheCorrupt(file.string());
        }
        out.push_back({item.id, cfg.model, j.at("response").get<std::string>()});
        continue;
      } catch (const json::exception&) {
        throw CacheCorrupt(file.string());
      }
    }

    HttpRequest req;
    req.url = url;
    req.headers["Content-Type"] = "application/json";
    if (!api_key.empty()) req.headers["Authorization"] = "Bearer " + api_key;
    json body = {{"model", cfg.model},
                 {"temperature", static_cast<double>(cfg.temperature)},
                 {"messages", json::array({{{"role", "user"}, {"content", build_prompt(item.problem)}}})}};
    req.body = body.dump();

    HttpResponse resp;
    for (int attempt = 0;; ++attempt) {
      resp = transport(req);
      if (resp.status >= 200 && resp.status < 300) break;
      if (!retryable(resp.status)) {
        throw HttpError(resp.status, "request for item " + item.id + " failed: " + resp.body.substr(0, 200));
      }
      if (attempt + 1 >= cfg.max_attempts) {
        throw HttpError(resp.status, "retries exhausted for item " + item.id);
      }
      sleeper(backoff(cfg, key, attempt, resp));
    }
    Response r{item.id, cfg.model, extract_content(resp.body)};
    json entry = {{"model", cfg.model}, {"id", item.id}, {"prompt_hash", prompt_hash(item.problem)},
                  {"response", r.response}};
    const fs::path tmp = file.string() + ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      f << entry.dump() << "\n";
    }
    fs::rename(tmp, file);
    out.push_back(std::move(r));
  }
  return out;
}

Sleeper real_sleeper() {
  return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

}  // namespace seed
