#include "arxivroll/corpus/feed.hpp"

#include <thread>

#include "arxivroll/corpus/xml.hpp"
#include "arxivroll/http_util.hpp"
#include "httplib.h"

namespace arxivroll::corpus {

void SteadyClock::sleep_for(duration d) { std::this_thread::sleep_for(d); }

void RateLimiter::acquire() {
  std::lock_guard lock(mu_);
  if (last_) {
    auto elapsed = clock_.now() - *last_;
    if (elapsed < min_interval_) clock_.sleep_for(min_interval_ - elapsed);
  }
  last_ = clock_.now();
}

std::string HttpFetcher::get(const std::string& url) {
  UrlParts parts = split_url(url);
  httplib::Client client(parts.origin);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_follow_location(true);
  auto res = client.Get(parts.path);
  if (!res) {
    throw NetworkError("GET " + url + " failed: " +
                           httplib::to_string(res.error()),
                       true);
  }
  if (res->status >= 200 && res->status < 300) return res->body;
  bool retryable = res->status == 429 || res->status >= 500;
  throw NetworkError(
      "GET " + url + " returned HTTP " + std::to_string(res->status),
      retryable);
}

namespace {

// arXiv archives grouped under each of the eight domains.
std::string category_clause(Domain d) {
  switch (d) {
    case Domain::kPhysics:
      return "(cat:physics.* OR cat:astro-ph* OR cat:cond-mat* OR cat:gr-qc "
             "OR cat:hep-* OR cat:math-ph OR cat:nlin.* OR cat:nucl-* OR "
             "cat:quant-ph)";
    default:
      return "cat:" + std::string(to_string(d)) + ".*";
  }
}

std::string compact(const Date& d) {
  std::string s = d.str();
  return s.substr(0, 4) + s.substr(5, 2) + s.substr(8, 2);
}

std::string strip_version(std::string id) {
  std::size_t v = id.rfind('v');
  if (v != std::string::npos && v + 1 < id.size() && v > 0) {
    bool digits = true;
    for (std::size_t i = v + 1; i < id.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(id[i]))) digits = false;
    }
    if (digits && std::isdigit(static_cast<unsigned char>(id[v - 1]))) {
      id.resize(v);
    }
  }
  return id;
}

std::string id_from_url(std::string_view url) {
  constexpr std::string_view kAbs = "/abs/";
  std::size_t p = url.find(kAbs);
  std::string id(p == std::string_view::npos ? url : url.substr(p + kAbs.size()));
  return strip_version(trim(id));
}

}  // namespace

std::vector<ListingEntry> parse_atom_feed(std::string_view xml, Domain domain,
                                          const DateRange& window) {
  XmlNode feed = parse_xml(xml);
  if (feed.local_name() != "feed") {
    throw ParseError("Atom document root is <" + feed.name + ">", 0);
  }
  std::vector<ListingEntry> out;
  for (const auto& entry : feed.children) {
    if (entry.local_name() != "entry") continue;
    const XmlNode* id = entry.child("id");
    const XmlNode* published = entry.child("published");
    if (!id || !published) continue;
    auto date = parse_date(trim(published->text));
    if (!date || !window.contains(*date)) continue;
    ListingEntry e;
    e.meta.arxiv_id = id_from_url(id->text);
    if (e.meta.arxiv_id.empty()) continue;
    e.meta.domain = domain;
    e.meta.submitted = *date;
    if (const XmlNode* title = entry.child("title")) {
      e.meta.title = normalize_whitespace(title->text);
    }
    if (const XmlNode* summary = entry.child("summary")) {
      e.summary = normalize_whitespace(summary->text);
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string listing_query(Domain domain, const DateRange& window,
                          std::size_t page, std::size_t page_size) {
  std::string q = category_clause(domain) + " AND submittedDate:[" +
                  compact(window.start) + "0000 TO " + compact(window.end) +
                  "2359]";
  return "search_query=" + url_encode(q) +
         "&start=" + std::to_string(page * page_size) +
         "&max_results=" + std::to_string(page_size) +
         "&sortBy=submittedDate&sortOrder=ascending";
}

std::vector<ListingEntry> ArxivClient::fetch_listing(Domain domain,
                                                     const DateRange& window,
                                                     std::size_t page) {
  if (!window.valid()) {
    throw PreconditionError("listing window starts after it ends");
  }
  std::string url = options_.listing_url + "?" +
                    listing_query(domain, window, page, options_.page_size);
  limiter_.acquire();
  return parse_atom_feed(fetcher_.get(url), domain, window);
}

std::string ArxivClient::fetch_source(const std::string& arxiv_id) {
  limiter_.acquire();
  return fetcher_.get(options_.source_url + "/" + arxiv_id);
}

}  // namespace arxivroll::corpus
