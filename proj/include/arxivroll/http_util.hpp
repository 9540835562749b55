#pragma once

#include <string>
#include <string_view>

namespace arxivroll {

// "https://host:8443/api/query?x=1" -> origin "https://host:8443",
// path "/api/query?x=1". An empty path becomes "/".
struct UrlParts {
  std::string origin;
  std::string path;
};

UrlParts split_url(std::string_view url);

// Percent-encodes everything outside RFC 3986 unreserved characters.
std::string url_encode(std::string_view s);

}  // namespace arxivroll
