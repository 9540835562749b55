#include "arxivroll/scpgen/builder.hpp"

#include <numeric>
#include <set>

#include "arxivroll/scpgen/generators.hpp"

namespace arxivroll::scpgen {

Outcome<TestCase> generate_case(const Fragment& fragment,
                                const corpus::Article& article,
                                const BuildRequest& request, Rng& rng) {
  const FragmentConfig& c = request.config;
  CaseContext ctx{request.domain, request.seed};
  std::size_t n = fragment.sentences.size();
  switch (request.task) {
    case TaskKind::kSequencing:
      if (n < c.min_sentences_seq) break;
      return gen_sequencing(fragment, ctx, rng);
    case TaskKind::kCloze:
      if (n < c.min_sentences_cloze) break;
      return gen_cloze(fragment, ctx, rng);
    case TaskKind::kPrediction:
      if (n < c.min_sentences_pred) break;
      return gen_prediction(fragment, article, ctx, rng);
  }
  return Rejection{RejectReason::kTooFewSentences,
                   std::to_string(n) + " sentences"};
}

namespace {

struct ArticleCursor {
  const corpus::Article* article;
  Rng rng;
  std::vector<std::size_t> windows;
  std::size_t next = 0;

  bool exhausted() const { return next >= windows.size(); }
};

}  // namespace

Benchmark build_benchmark(const std::vector<corpus::Article>& articles,
                          const BuildRequest& request) {
  request.config.validate();
  std::vector<const corpus::Article*> pool;
  for (const auto& a : articles) {
    if (a.meta.domain == request.domain) pool.push_back(&a);
  }
  if (pool.empty()) {
    throw PreconditionError("no articles in domain " +
                            std::string(to_string(request.domain)));
  }
  std::sort(pool.begin(), pool.end(), [](const auto* a, const auto* b) {
    return a->meta.arxiv_id < b->meta.arxiv_id;
  });
  Rng order_rng = Rng::derive(request.seed, "article-order");
  order_rng.shuffle(std::span<const corpus::Article*>(pool));

  const std::size_t span = request.config.n_paragraphs;
  std::vector<ArticleCursor> cursors;
  for (const auto* a : pool) {
    ArticleCursor c{a, Rng::derive(request.seed, a->meta.arxiv_id), {}, 0};
    if (a->paragraphs.size() >= span) {
      c.windows.resize(a->paragraphs.size() - span + 1);
      std::iota(c.windows.begin(), c.windows.end(), std::size_t{0});
      c.rng.shuffle(std::span<std::size_t>(c.windows));
    }
    cursors.push_back(std::move(c));
  }

  Benchmark b;
  b.period_label = request.period_label;
  b.domain = request.domain;
  b.task_kind = request.task;
  b.seed = request.seed;
  b.created = request.created;
  b.status = BenchmarkStatus::kPrivate;
  b.generator_version = std::string(kGeneratorVersion);
  b.tool_version = std::string(kToolVersion);
  b.config = request.config;
  b.benchmark_id = make_benchmark_id(request.period_label, request.domain,
                                     request.task, request.seed,
                                     kGeneratorVersion);

  auto full = [&] {
    return request.target_size && b.items.size() >= request.target_size;
  };
  std::set<std::string> ids;
  bool progressed = true;
  while (!full() && progressed) {
    progressed = false;
    for (auto& c : cursors) {
      if (full()) break;
      while (!c.exhausted()) {
        std::size_t start = c.windows[c.next++];
        auto frag = make_fragment(*c.article, start, request.config);
        if (std::holds_alternative<Rejection>(frag)) continue;
        auto tc = generate_case(std::get<Fragment>(frag), *c.article, request,
                                c.rng);
        if (std::holds_alternative<Rejection>(tc)) continue;
        auto& item = std::get<TestCase>(tc);
        if (!ids.insert(item.case_id).second) {
          throw Error("case id collision for " + item.case_id);
        }
        b.items.push_back(std::move(item));
        progressed = true;
        break;
      }
    }
  }
  if (b.items.empty()) {
    throw DomainError("no eligible fragments for " +
                      std::string(to_string(request.domain)) + "/" +
                      std::string(to_string(request.task)) +
                      ": empty benchmark");
  }
  return b;
}

Benchmark build_benchmark(const corpus::CorpusStore& store,
                          const BuildRequest& request) {
  return build_benchmark(store.load_domain(request.domain), request);
}

}  // namespace arxivroll::scpgen
