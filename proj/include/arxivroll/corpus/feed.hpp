#pragma once

#include <chrono>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arxivroll/corpus/article.hpp"

namespace arxivroll::corpus {

class Clock {
 public:
  using time_point = std::chrono::steady_clock::time_point;
  using duration = std::chrono::steady_clock::duration;

  virtual ~Clock() = default;
  virtual time_point now() = 0;
  virtual void sleep_for(duration d) = 0;
};

class SteadyClock final : public Clock {
 public:
  time_point now() override { return std::chrono::steady_clock::now(); }
  void sleep_for(duration d) override;
};

// Serializes callers so that consecutive acquire() calls return at least
// `min_interval` apart on the given clock.
class RateLimiter {
 public:
  RateLimiter(std::chrono::milliseconds min_interval, Clock& clock)
      : min_interval_(min_interval), clock_(clock) {}

  void acquire();

 private:
  std::chrono::milliseconds min_interval_;
  Clock& clock_;
  std::mutex mu_;
  std::optional<Clock::time_point> last_;
};

// Raw GET transport; the default talks HTTP(S) and tests substitute fakes.
class Fetcher {
 public:
  virtual ~Fetcher() = default;
  // Returns the body of a 2xx response. Throws NetworkError otherwise;
  // 429, 5xx and transport failures are retryable.
  virtual std::string get(const std::string& url) = 0;
};

class HttpFetcher final : public Fetcher {
 public:
  explicit HttpFetcher(std::chrono::seconds timeout = std::chrono::seconds(30))
      : timeout_(timeout) {}
  std::string get(const std::string& url) override;

 private:
  std::chrono::seconds timeout_;
};

struct ListingEntry {
  ArticleMeta meta;
  std::string summary;  // abstract, whitespace-normalized
};

// Parses an arXiv Atom response, keeping entries submitted inside `window`.
// Every returned entry is tagged with `domain`; ids lose their version suffix.
std::vector<ListingEntry> parse_atom_feed(std::string_view xml, Domain domain,
                                          const DateRange& window);

struct ArxivClientOptions {
  std::string listing_url = "https://export.arxiv.org/api/query";
  std::string source_url = "https://arxiv.org/e-print";
  std::chrono::milliseconds min_interval{3000};
  std::size_t page_size = 100;
};

// Query string (without '?') for one listing page.
std::string listing_query(Domain domain, const DateRange& window,
                          std::size_t page, std::size_t page_size);

class ArxivClient {
 public:
  ArxivClient(ArxivClientOptions options, Fetcher& fetcher, Clock& clock)
      : options_(std::move(options)),
        fetcher_(fetcher),
        limiter_(options_.min_interval, clock) {}

  // One page of metadata in API order; an empty page means the listing is
  // exhausted.
  std::vector<ListingEntry> fetch_listing(Domain domain,
                                          const DateRange& window,
                                          std::size_t page);

  // Raw e-print bytes (usually gzip'd tar or gzip'd .tex).
  std::string fetch_source(const std::string& arxiv_id);

 private:
  ArxivClientOptions options_;
  Fetcher& fetcher_;
  RateLimiter limiter_;
};

}  // namespace arxivroll::corpus
