#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "seed/errors.hpp"
#include "seed/fetch.hpp"

using namespace seed;

namespace {

struct TempDir {
  std::string path;
  explicit TempDir(const std::string& name)
      : path((std::filesystem::temp_directory_path() / name).string()) {
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

BenchmarkItem item(const std::string& id, const std::string& problem) {
  BenchmarkItem it;
  it.id = id;
  it.problem = problem;
  return it;
}

HttpResponse ok(const std::string& content) {
  nlohmann::json body = {{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}};
  return {200, body.dump(), {}};
}

FetchConfig config(const TempDir& dir) {
  FetchConfig cfg;
  cfg.endpoint = "http://stub.invalid/v1";
  cfg.model = "stub-model";
  cfg.cache_dir = dir.path;
  return cfg;
}

}  // namespace

TEST_SUITE("fetch") {
  TEST_CASE("rate limit then success") {
    TempDir dir("seed_fetch_429");
    int calls = 0;
    std::vector<std::chrono::milliseconds> sleeps;
    Transport t = [&](const HttpRequest& req) {
      ++calls;
      CHECK(req.url == "http://stub.invalid/v1/chat/completions");
      const auto body = nlohmann::json::parse(req.body);
      CHECK(body["model"] == "stub-model");
      CHECK(body["messages"][0]["content"].get<std::string>().find(prompt_template()) == 0);
      if (calls == 1) return HttpResponse{429, "slow down", {{"retry-after", "2"}}};
      return ok("\\boxed{x}");
    };
    const auto out = fetch_responses(config(dir), {item("a", "q")}, t, [&](auto d) { sleeps.push_back(d); });
    CHECK(calls == 2);
    REQUIRE(sleeps.size() == 1);
    CHECK(sleeps[0] == std::chrono::milliseconds(2000));
    REQUIRE(out.size() == 1);
    CHECK(out[0].response == "\\boxed{x}");
  }

  TEST_CASE("cache hit makes no call; prompt change misses") {
    TempDir dir("seed_fetch_cache");
    int calls = 0;
    Transport t = [&](const HttpRequest&) {
      ++calls;
      return ok("answer " + std::to_string(calls));
    };
    auto nosleep = [](std::chrono::milliseconds) {};
    (void)fetch_responses(config(dir), {item("a", "q")}, t, nosleep);
    const auto again = fetch_responses(config(dir), {item("a", "q")}, t, nosleep);
    CHECK(calls == 1);
    CHECK(again[0].response == "answer 1");
    CHECK(prompt_hash("q") != prompt_hash("q2"));
    const auto changed = fetch_responses(config(dir), {item("a", "q2")}, t, nosleep);
    CHECK(calls == 2);
    CHECK(changed[0].response == "answer 2");
  }

  TEST_CASE("retries are bounded and jitter is repeatable") {
    TempDir dir("seed_fetch_503");
    FetchConfig cfg = config(dir);
    cfg.max_attempts = 3;
    std::vector<std::chrono::milliseconds> a, b;
    Transport fail = [](const HttpRequest&) { return HttpResponse{503, "down", {}}; };
    CHECK_THROWS_AS(fetch_responses(cfg, {item("a", "q")}, fail, [&](auto d) { a.push_back(d); }), HttpError);
    CHECK_THROWS_AS(fetch_responses(cfg, {item("a", "q")}, fail, [&](auto d) { b.push_back(d); }), HttpError);
    CHECK(a.size() == 2);
    CHECK(a == b);
    CHECK(a[1] >= a[0]);
    Transport denied = [](const HttpRequest&) { return HttpResponse{401, "no", {}}; };
    CHECK_THROWS_AS(fetch_responses(cfg, {item("a", "q")}, denied, [](auto) {}), HttpError);
  }

  TEST_CASE("corrupt cache entry") {
    TempDir dir("seed_fetch_corrupt");
    std::filesystem::create_directories(dir.path);
    const FetchConfig cfg = config(dir);
    {
      std::ofstream f(std::filesystem::path(dir.path) / (cache_key(cfg.model, "a", "q") + ".json"));
      f << "{truncated";
    }
    Transport t = [](const HttpRequest&) { return ok("x"); };
    CHECK_THROWS_AS(fetch_responses(cfg, {item("a", "q")}, t, [](auto) {}), CacheCorrupt);
  }

  TEST_CASE("cache key separates model, id and prompt") {
    CHECK(cache_key("m", "a", "q") != cache_key("n", "a", "q"));
    CHECK(cache_key("m", "a", "q") != cache_key("m", "b", "q"));
    CHECK(cache_key("m", "a", "q") != cache_key("m", "a", "r"));
    CHECK(cache_key("m", "a", "q") == cache_key("m", "a", "q"));
  }
}
