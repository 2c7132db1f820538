#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "seed/harness.hpp"

namespace seed {

struct HttpRequest {
  std::string url;
  std::string body;
  std::map<std::string, std::string> headers;
};

struct HttpResponse {
  int status = 0;  // 0: transport failure
  std::string body;
  std::map<std::string, std::string> headers;  // lower-case names
};

using Transport = std::function<HttpResponse(const HttpRequest&)>;
using Sleeper = std::function<void(std::chrono::milliseconds)>;

// Real network transport; HTTPS requires an OpenSSL-enabled build.
Transport make_http_transport(std::chrono::seconds timeout = std::chrono::seconds(120));
Sleeper real_sleeper();

struct FetchConfig {
  std::string endpoint;  // base URL; "/chat/completions" is appended when absent
  std::string model;
  std::string api_key_env = "SEED_API_KEY";
  std::string cache_dir = "seed_cache";
  int max_attempts = 6;  // per item, including the first request
  std::chrono::milliseconds base_delay{500};
  std::chrono::milliseconds max_delay{30000};
  long double temperature = 0;
};

// The fixed generation prompt; the problem text follows it.
const std::string& prompt_template();
std::string build_prompt(const std::string& problem);
std::string prompt_hash(const std::string& problem);

// Cache file name for (model, item id, prompt hash).
std::string cache_key(const std::string& model, const std::string& id, const std::string& problem);

// One chat-completion request per uncached item; responses are cached as
// they arrive, so an interrupted fetch resumes where it stopped. 429 and 5xx
// are retried with exponential backoff plus deterministic jitter (Retry-After
// is honoured). Throws HttpError once retries are exhausted and CacheCorrupt
// on an unreadable cache entry.
std::vector<Response> fetch_responses(const FetchConfig& cfg, const std::vector<BenchmarkItem>& items,
                                      const Transport& transport, const Sleeper& sleeper);

}  // namespace seed
