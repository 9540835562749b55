#include <algorithm>
#include <cmath>
#include <set>

#include "arxivroll/corpus/store.hpp"
#include "arxivroll/scpgen/builder.hpp"
#include "arxivroll/scpgen/fixture.hpp"
#include "arxivroll/scpgen/fragment.hpp"
#include "arxivroll/scpgen/generators.hpp"
#include "arxivroll/scpgen/sentences.hpp"
#include "arxivroll/scpgen/test_case.hpp"
#include "arxivroll/scpgen/tfidf.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace arxivroll;
using namespace arxivroll::scpgen;
using Strings = std::vector<std::string>;

namespace {

const std::string kMath(kMathToken);

Strings split(const std::string& s, char sep) {
  Strings out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

constexpr const char* kWords[] = {
    "alpha", "bravo", "charlie", "delta",  "echo",    "foxtrot", "golf",
    "hotel", "india", "juliet",  "kilo",   "lima",    "mike",    "november",
    "oscar", "papa",  "quebec",  "romeo",  "sierra",  "tango",   "uniform",
    "victor", "whiskey", "xray", "yankee", "zulu"};

// Ten words, a distinct code word per index.
std::string sentence(std::size_t k, std::string_view tag = "graph") {
  return "Claim " + std::string(kWords[k % 26]) + std::to_string(k) +
         " holds for every sparse " + std::string(tag) + " in our study.";
}

std::string paragraph(std::size_t first, std::size_t n,
                      std::string_view tag = "graph") {
  Strings s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(sentence(first + i, tag));
  return join(s, " ");
}

corpus::Article article(std::string id, Strings paragraphs,
                        Domain d = Domain::kCs) {
  corpus::Article a;
  a.meta.arxiv_id = std::move(id);
  a.meta.domain = d;
  a.meta.submitted = Date{2024, 5, 1};
  a.paragraphs = std::move(paragraphs);
  return a;
}

Fragment fragment_of(const corpus::Article& a, std::size_t start = 0) {
  auto f = make_fragment(a, start, FragmentConfig{});
  REQUIRE(std::holds_alternative<Fragment>(f));
  return std::get<Fragment>(f);
}

const std::vector<corpus::Article>& fixture_articles() {
  static const auto articles = make_fixture_articles(FixtureSpec{});
  return articles;
}

const corpus::Article& find_article(const std::string& id) {
  for (const auto& a : fixture_articles()) {
    if (a.meta.arxiv_id == id) return a;
  }
  FAIL("no fixture article " << id);
  throw;
}

BuildRequest request(TaskKind task, std::uint64_t seed, std::size_t size) {
  BuildRequest r;
  r.domain = Domain::kCs;
  r.task = task;
  r.seed = seed;
  r.target_size = size;
  r.period_label = "2024b";
  r.created = "2024-09-30T00:00:00Z";
  return r;
}

}  // namespace

TEST_CASE("sentence splitting") {
  CHECK(split_sentences("One. Two! Three? four.") ==
        Strings{"One.", "Two!", "Three? four."});
  CHECK(split_sentences("We use e.g. this one. Next.") ==
        Strings{"We use e.g. this one.", "Next."});
  CHECK(split_sentences("As in Fig. 3 and Eq. 2 we see. Then more.") ==
        Strings{"As in Fig. 3 and Eq. 2 we see.", "Then more."});
  CHECK(split_sentences("Smith et al. Showed it. J. Doe agreed.") ==
        Strings{"Smith et al. Showed it.", "J. Doe agreed."});
  CHECK(split_sentences("The value 3.14 is pi. 42 is next.") ==
        Strings{"The value 3.14 is pi.", "42 is next."});
  CHECK(split_sentences("He said \"stop.\" Then (left.) \"Quoted.\"") ==
        Strings{"He said \"stop.\"", "Then (left.)", "\"Quoted.\""});
  CHECK(split_sentences("Bound holds. " + kMath + " is small.") ==
        Strings{"Bound holds.", kMath + " is small."});
  CHECK(split_sentences("  no terminal punctuation  ") ==
        Strings{"no terminal punctuation"});
  CHECK(split_sentences("   ").empty());
}

TEST_CASE("sentences rejoin to the normalized paragraph") {
  for (const auto& a : fixture_articles()) {
    for (const auto& p : a.paragraphs) {
      auto s = split_sentences(p);
      CHECK(join(s, " ") == normalize_whitespace(p));
      for (const auto& x : s) CHECK_FALSE(x.empty());
    }
  }
}

TEST_CASE("tokenize") {
  CHECK(tokenize("Hello, World-42 " + kMath + " x_1") ==
        Strings{"hello", "world", "42", "math", "x", "1"});
  CHECK(tokenize("caf\xC3\xA9").size() == 1);
}

TEST_CASE("tfidf worked example") {
  Strings pool = {"red fox", "red red fox", "blue sky"};
  auto r = tfidf_rank("red fox", pool);
  REQUIRE(r.size() == 3);
  CHECK(r[0].index == 0);
  CHECK(r[1].index == 1);
  CHECK(r[2].index == 2);
  CHECK(r[0].similarity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r[1].similarity == doctest::Approx(3.0 / std::sqrt(10.0)).epsilon(1e-12));
  CHECK(r[2].similarity == 0.0);

  SUBCASE("unknown query terms are ignored and ties keep pool order") {
    auto none = tfidf_rank("zebra", pool);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(none[i].index == i);
      CHECK(none[i].similarity == 0.0);
    }
    CHECK(tfidf_rank("red fox zebra", pool)[1].similarity ==
          doctest::Approx(r[1].similarity).epsilon(1e-12));
  }
  SUBCASE("empty pool") {
    CHECK_THROWS_AS(tfidf_rank("red", Strings{}), PreconditionError);
  }
}

TEST_CASE("tfidf agrees with the dense oracle") {
  Rng rng(77);
  for (int round = 0; round < 50; ++round) {
    Strings pool;
    std::size_t n = 1 + rng.below(30);
    for (std::size_t i = 0; i < n; ++i) {
      std::string s;
      std::size_t len = rng.below(8);
      for (std::size_t w = 0; w < len; ++w) {
        s += std::string(kWords[rng.below(12)]) + " ";
      }
      pool.push_back(s);
    }
    std::string query;
    for (int w = 0; w < 5; ++w) query += std::string(kWords[rng.below(14)]) + " ";

    auto got = tfidf_rank(query, pool);
    auto cos = oracle::tfidf_cosines(query, pool);
    auto order = oracle::tfidf_order(cos);
    REQUIRE(got.size() == n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(got[i].index == order[i]);
      CHECK(std::abs(got[i].similarity - cos[got[i].index]) < 1e-9);
    }
  }
}

TEST_CASE("fragment filters") {
  FragmentConfig c;
  SUBCASE("accepts a long plain paragraph") {
    auto a = article("x", {paragraph(0, 9)});
    auto f = make_fragment(a, 0, c);
    REQUIRE(std::holds_alternative<Fragment>(f));
    const auto& frag = std::get<Fragment>(f);
    CHECK(frag.sentences.size() == 9);
    CHECK(frag.word_count == 90);
    CHECK(frag.math_tokens == 0);
    CHECK(frag.span_end == 1);
    CHECK(frag.text() == a.paragraphs[0]);
  }
  SUBCASE("too short") {
    auto f = make_fragment(article("x", {paragraph(0, 7)}), 0, c);
    REQUIRE(std::holds_alternative<Rejection>(f));
    CHECK(std::get<Rejection>(f).reason == RejectReason::kTooShort);
  }
  SUBCASE("too much math") {
    // 30 math tokens against 90 ordinary words.
    std::string p = paragraph(0, 9);
    for (int i = 0; i < 3; ++i) {
      p += " We";
      for (int k = 0; k < 10; ++k) p += " " + kMath;
      p += ".";
    }
    auto f = make_fragment(article("x", {p}), 0, c);
    REQUIRE(std::holds_alternative<Rejection>(f));
    CHECK(std::get<Rejection>(f).reason == RejectReason::kTooMuchMath);
  }
  SUBCASE("too few sentences") {
    std::string longer;
    for (int i = 0; i < 45; ++i) longer += "word ";
    auto f = make_fragment(article("x", {longer + "end. " + longer + "end."}),
                           0, c);
    REQUIRE(std::holds_alternative<Rejection>(f));
    CHECK(std::get<Rejection>(f).reason == RejectReason::kTooFewSentences);
  }
  SUBCASE("multi-paragraph window") {
    c.n_paragraphs = 2;
    auto a = article("x", {paragraph(0, 5), paragraph(5, 5), paragraph(10, 5)});
    auto f = std::get<Fragment>(make_fragment(a, 1, c));
    CHECK(f.span_start == 1);
    CHECK(f.span_end == 3);
    CHECK(f.sentences.size() == 10);
    CHECK_THROWS_AS(make_fragment(a, 2, c), PreconditionError);
    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
      auto s = std::get<Fragment>(sample_fragment(a, c, rng));
      CHECK(s.span_end - s.span_start == 2);
    }
    c.n_paragraphs = 4;
    CHECK_THROWS_AS(sample_fragment(a, c, rng), PreconditionError);
  }
  SUBCASE("config bounds") {
    FragmentConfig bad;
    bad.min_sentences_cloze = 5;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = FragmentConfig{};
    bad.max_math_ratio = 1.5;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = FragmentConfig{};
    bad.n_paragraphs = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    nlohmann::json j = c;
    CHECK(j.get<FragmentConfig>().min_words == c.min_words);
  }
}

TEST_CASE("sequencing structure") {
  auto a = article("2404.00001", {paragraph(0, 9)});
  Fragment f = fragment_of(a);
  std::set<std::string> correct_seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    auto tc = std::get<TestCase>(gen_sequencing(f, {Domain::kCs, 3}, rng));
    validate(tc);
    auto lines = split(tc.stem, '\n');
    REQUIRE(lines.size() == 4);
    std::multiset<std::size_t> group_sizes;
    for (int k = 0; k < 4; ++k) {
      CHECK(lines[k].rfind("(" + std::string(1, char('A' + k)) + ") ", 0) == 0);
      group_sizes.insert(split_sentences(lines[k].substr(4)).size());
    }
    CHECK(group_sizes == std::multiset<std::size_t>{2, 2, 2, 3});
    for (const auto& cand : tc.candidates) {
      CHECK(cand.size() == 7);
      std::string letters = cand;
      letters.erase(std::remove(letters.begin(), letters.end(), '-'),
                    letters.end());
      std::sort(letters.begin(), letters.end());
      CHECK(letters == "ABCD");
    }
    // The shown order is never the reading order.
    CHECK(tc.candidates[tc.correct_index] != "A-B-C-D");
    CHECK(oracle::reconstruct(tc) == f.text());
    correct_seen.insert(tc.candidates[tc.correct_index]);
  }
  CHECK(correct_seen.size() == 23);
  auto short_frag = f;
  short_frag.sentences.resize(3);
  Rng rng(0);
  CHECK(std::holds_alternative<Rejection>(
      gen_sequencing(short_frag, {Domain::kCs, 3}, rng)));
}

TEST_CASE("cloze structure") {
  auto a = article("2404.00001", {paragraph(0, 8)});
  Fragment f = fragment_of(a);
  std::array<int, 4> correct_slot_counts{};
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Rng rng(seed);
    auto tc = std::get<TestCase>(gen_cloze(f, {Domain::kCs, 3}, rng));
    validate(tc);
    auto lines = split(tc.stem, '\n');
    REQUIRE(lines.size() == 5);
    std::size_t pos = 0;
    for (int b = 1; b <= 4; ++b) {
      std::size_t at = lines[0].find("[BLANK-" + std::to_string(b) + "]");
      REQUIRE(at != std::string::npos);
      CHECK(at >= pos);
      pos = at;
    }
    for (int j = 0; j < 4; ++j) {
      CHECK(lines[j + 1].rfind("(" + std::string(roman_label(j)) + ") ", 0) == 0);
    }
    CHECK(oracle::reconstruct(tc) == f.text());
    ++correct_slot_counts[tc.correct_index];
  }
  // The answer lands in every position.
  for (int n : correct_slot_counts) CHECK(n > 60);
  auto short_frag = f;
  short_frag.sentences.resize(5);
  Rng rng(0);
  CHECK(std::holds_alternative<Rejection>(
      gen_cloze(short_frag, {Domain::kCs, 3}, rng)));
}

TEST_CASE("prediction distractors") {
  // The fragment's last sentence appears verbatim in another paragraph.
  std::string answer = sentence(8, "kernel");
  Strings paras = {paragraph(0, 8, "kernel") + " " + answer,
                   paragraph(20, 3, "kernel") + " " + answer + " " +
                       paragraph(30, 3, "graph"),
                   sentence(8, "graph") + " " + sentence(40, "kernel")};
  auto a = article("2404.00001", paras);
  Fragment f = fragment_of(a);
  Rng rng(5);
  auto tc = std::get<TestCase>(gen_prediction(f, a, {Domain::kCs, 1}, rng));
  validate(tc);
  CHECK(tc.candidates[tc.correct_index] == answer);
  CHECK(std::count(tc.candidates.begin(), tc.candidates.end(), answer) == 1);
  CHECK(tc.stem + " " + answer == f.text());

  // Independent expectation: oracle ranking over the outside pool, skipping
  // copies of the answer and of earlier picks.
  Strings pool;
  for (std::size_t p = 1; p < paras.size(); ++p) {
    for (auto& s : split_sentences(paras[p])) pool.push_back(s);
  }
  auto order = oracle::tfidf_order(oracle::tfidf_cosines(answer, pool));
  std::set<std::string> want, seen = {answer};
  for (std::size_t i : order) {
    if (seen.insert(pool[i]).second) want.insert(pool[i]);
    if (want.size() == 3) break;
  }
  std::set<std::string> got;
  for (int k = 0; k < 4; ++k) {
    if (k != tc.correct_index) got.insert(tc.candidates[k]);
  }
  CHECK(got == want);
  CHECK(got.count(sentence(8, "graph")) == 1);

  SUBCASE("not enough outside sentences") {
    auto lone = article("2404.00002", {paragraph(0, 9), sentence(50)});
    Fragment lf = fragment_of(lone);
    auto r = gen_prediction(lf, lone, {Domain::kCs, 1}, rng);
    REQUIRE(std::holds_alternative<Rejection>(r));
    CHECK(std::get<Rejection>(r).reason == RejectReason::kTooFewDistractors);
  }
  SUBCASE("outside sentences that only copy the answer") {
    auto copies = article("2404.00003",
                          {paragraph(0, 9), paragraph(8, 1) + " " +
                                                paragraph(8, 1) + " " +
                                                sentence(60) + " " +
                                                sentence(61)});
    Fragment cf = fragment_of(copies);
    auto r = gen_prediction(cf, copies, {Domain::kCs, 1}, rng);
    REQUIRE(std::holds_alternative<Rejection>(r));
    CHECK(std::get<Rejection>(r).reason == RejectReason::kTooFewDistractors);
  }
}

TEST_CASE("case validation") {
  auto a = article("2404.00001", {paragraph(0, 9)});
  Rng rng(3);
  auto tc = std::get<TestCase>(gen_sequencing(fragment_of(a), {}, rng));
  validate(tc);
  auto bad = tc;
  bad.correct_index = 4;
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = tc;
  bad.candidates[1] = bad.candidates[0];
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = tc;
  bad.stem += " {{slot}}";
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = tc;
  bad.candidates[2].clear();
  CHECK_THROWS_AS(validate(bad), DomainError);
}

TEST_CASE("ids") {
  auto id = make_case_id("2404.00001", TaskKind::kCloze, 7, 2, 3);
  CHECK(id == make_case_id("2404.00001", TaskKind::kCloze, 7, 2, 3));
  CHECK(id != make_case_id("2404.00002", TaskKind::kCloze, 7, 2, 3));
  CHECK(id != make_case_id("2404.00001", TaskKind::kPrediction, 7, 2, 3));
  CHECK(id != make_case_id("2404.00001", TaskKind::kCloze, 8, 2, 3));
  CHECK(id != make_case_id("2404.00001", TaskKind::kCloze, 7, 3, 4));
  auto bid = make_benchmark_id("2024b", Domain::kCs, TaskKind::kCloze, 7,
                               kGeneratorVersion);
  CHECK(bid != make_benchmark_id("2024b", Domain::kCs, TaskKind::kCloze, 7,
                                 "scp-0.9"));
  CHECK(bid != make_benchmark_id("2024a", Domain::kCs, TaskKind::kCloze, 7,
                                 kGeneratorVersion));
}

TEST_CASE("bundled fixture corpus matches the generator") {
  corpus::CorpusStore store(support::fixture_path("corpus"));
  std::vector<corpus::Article> on_disk;
  for (Domain d : {Domain::kCs, Domain::kMath, Domain::kStat}) {
    for (auto& a : store.load_domain(d)) on_disk.push_back(std::move(a));
  }
  CHECK(on_disk == fixture_articles());
  auto m = store.manifest();
  CHECK(m.period_label == "2024b");
  CHECK(m.counts.at("cs") == 14);
}

TEST_CASE("benchmark build") {
  const auto& articles = fixture_articles();
  for (TaskKind task :
       {TaskKind::kSequencing, TaskKind::kCloze, TaskKind::kPrediction}) {
    CAPTURE(to_string(task));
    auto b = build_benchmark(articles, request(task, 11, 300));
    CHECK(b.items.size() == 300);
    CHECK(b.status == BenchmarkStatus::kPrivate);
    CHECK(b.generator_version == kGeneratorVersion);
    CHECK(b.created == "2024-09-30T00:00:00Z");

    std::set<std::string> ids;
    for (const auto& tc : b.items) {
      validate(tc);
      CHECK(tc.task_kind == task);
      CHECK(tc.domain == Domain::kCs);
      CHECK(tc.provenance.seed == 11);
      CHECK(ids.insert(tc.case_id).second);
      CHECK(oracle::reconstruct(tc) ==
            oracle::source_text(find_article(tc.provenance.article_id), tc));
    }

    // Same inputs, same bytes.
    auto again = build_benchmark(articles, request(task, 11, 300));
    CHECK(to_jsonl(again) == to_jsonl(b));
    auto other = build_benchmark(articles, request(task, 12, 300));
    CHECK(to_jsonl(other) != to_jsonl(b));

    // Input order does not matter.
    auto reversed = articles;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(build_benchmark(reversed, request(task, 11, 300)) == b);
  }
}

TEST_CASE("benchmark round robin and limits") {
  const auto& articles = fixture_articles();
  auto b = build_benchmark(articles, request(TaskKind::kSequencing, 4, 28));
  std::map<std::string, int> per_article;
  for (const auto& tc : b.items) ++per_article[tc.provenance.article_id];
  CHECK(per_article.size() == 14);
  for (const auto& [id, n] : per_article) CHECK(n == 2);

  auto all = build_benchmark(articles, request(TaskKind::kSequencing, 4, 0));
  // Every window of every cs article except the short and math-heavy ones.
  CHECK(all.items.size() == 14 * (42 - 4));

  std::vector<corpus::Article> none;
  CHECK_THROWS_AS(build_benchmark(none, request(TaskKind::kCloze, 1, 5)),
                  PreconditionError);
  std::vector<corpus::Article> tiny = {
      article("2404.00001", {"Too short to use."})};
  CHECK_THROWS_AS(build_benchmark(tiny, request(TaskKind::kCloze, 1, 5)),
                  DomainError);
}

TEST_CASE("jsonl round trip and integrity") {
  auto b = build_benchmark(fixture_articles(),
                           request(TaskKind::kCloze, 9, 20));
  std::string text = to_jsonl(b);
  CHECK(std::count(text.begin(), text.end(), '\n') == 21);
  CHECK(from_jsonl(text) == b);

  support::TempDir tmp;
  write_benchmark(b, tmp / "b.jsonl");
  CHECK(read_benchmark(tmp / "b.jsonl") == b);

  auto header = benchmark_header(b);
  CHECK(header.at("n_items") == 20);
  CHECK(header.at("benchmark_id") == b.benchmark_id);

  SUBCASE("truncated file") {
    std::string cut = text.substr(0, text.rfind('\n', text.size() - 2) + 1);
    CHECK_THROWS_AS(from_jsonl(cut), IntegrityError);
  }
  SUBCASE("duplicate case") {
    auto lines = split(text, '\n');
    std::string dup = text + lines[1] + "\n";
    CHECK_THROWS_AS(from_jsonl(dup), DomainError);
  }
  SUBCASE("foreign task") {
    auto other = build_benchmark(fixture_articles(),
                                 request(TaskKind::kPrediction, 9, 1));
    auto lines = split(text, '\n');
    auto olines = split(to_jsonl(other), '\n');
    lines[1] = olines[1];
    CHECK_THROWS_AS(from_jsonl(join(lines, "\n")), DomainError);
  }
  SUBCASE("empty") { CHECK_THROWS_AS(from_jsonl(""), DomainError); }
}
