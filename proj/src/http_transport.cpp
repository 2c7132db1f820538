#include <cctype>

#include "httplib.h"
#include "seed/errors.hpp"
#include "seed/fetch.hpp"

namespace seed {

Transport make_http_transport(std::chrono::seconds timeout) {
  return [timeout](const HttpRequest& req) {
    // scheme://host[:port]/path
    const auto scheme_end = req.url.find("://");
    if (scheme_end == std::string::npos) throw HttpError(0, "endpoint must be an absolute URL: " + req.url);
    const auto path_start = req.url.find('/', scheme_end + 3);
    const std::string origin = req.url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : req.url.substr(path_start);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (req.url.compare(0, 8, "https://") == 0) throw HttpError(0, "this build has no TLS support");
#endif
    httplib::Client client(origin);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Headers headers;
    std::string content_type = "application/json";
    for (const auto& [k, v] : req.headers) {
      if (k == "Content-Type") content_type = v;
      else headers.emplace(k, v);
    }
    HttpResponse out;
    auto res = client.Post(path, headers, req.body, content_type);
    if (!res) return out;  // status 0: retryable transport failure
    out.status = res->status;
    out.body = res->body;
    for (const auto& [k, v] : res->headers) {
      std::string lower;
      for (char c : k) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      out.headers[lower] = v;
    }
    return out;
  };
}

}  // namespace seed
