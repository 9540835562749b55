#include "arxivroll/scpgen/fixture.hpp"

#include <cstdio>

#include "arxivroll/corpus/store.hpp"
#include "arxivroll/rng.hpp"

namespace arxivroll::scpgen {

namespace {

constexpr std::string_view kNouns[] = {
    "model",      "estimator",  "network",    "dataset",    "policy",
    "gradient",   "kernel",     "sample",     "benchmark",  "encoder",
    "decoder",    "graph",      "signal",     "channel",    "protocol",
    "manifold",   "operator",   "bound",      "prior",      "posterior",
    "simulation", "experiment", "baseline",   "framework",  "algorithm",
    "variance",   "spectrum",   "embedding",  "classifier", "regressor",
    "controller", "sensor",     "market",     "portfolio",  "population",
    "protein",    "sequence",   "lattice",    "particle",   "field",
    "residual",   "objective",  "constraint", "solver",     "scheduler",
    "cache",      "compiler",   "query",      "index",      "ledger",
    "detector",   "filter",     "wavelet",    "tensor",     "matrix",
    "likelihood", "inference",  "trajectory", "reward",     "agent"};

constexpr std::string_view kAdjectives[] = {
    "robust",    "sparse",     "adaptive",   "stochastic", "linear",
    "nonlinear", "hierarchical", "efficient", "scalable",  "noisy",
    "latent",    "empirical",  "asymptotic", "convex",     "discrete",
    "continuous", "temporal",  "spatial",    "bayesian",   "synthetic",
    "distributed", "compact",  "structured", "calibrated", "unbiased",
    "high-dimensional", "low-rank", "causal", "modular",   "variational"};

constexpr std::string_view kVerbs[] = {
    "improves",   "reduces",   "stabilizes", "captures",  "predicts",
    "constrains", "aligns",    "estimates",  "compresses", "regularizes",
    "outperforms", "explains", "controls",   "summarizes", "approximates",
    "identifies", "decouples", "preserves",  "amplifies",  "tracks"};

constexpr std::string_view kOpeners[] = {
    "The", "Our", "This", "Each", "A", "Every", "In practice, the",
    "Moreover, the", "However, the", "Consequently, the", "In contrast, the",
    "Finally, the"};

constexpr std::string_view kConnectives[] = {
    "across", "under", "within", "beyond", "without", "through", "against",
    "alongside"};

template <typename T, std::size_t N>
std::string_view pick(const T (&list)[N], Rng& rng) {
  return list[rng.below(N)];
}

struct Topic {
  std::vector<std::string_view> nouns;
  std::vector<std::string_view> adjectives;
};

Topic make_topic(Rng& rng) {
  Topic t;
  for (int i = 0; i < 6; ++i) t.nouns.push_back(pick(kNouns, rng));
  for (int i = 0; i < 4; ++i) t.adjectives.push_back(pick(kAdjectives, rng));
  return t;
}

std::string_view noun(const Topic& t, Rng& rng) {
  return rng.below(2) ? t.nouns[rng.below(t.nouns.size())] : pick(kNouns, rng);
}

std::string_view adjective(const Topic& t, Rng& rng) {
  return rng.below(2) ? t.adjectives[rng.below(t.adjectives.size())]
                      : pick(kAdjectives, rng);
}

std::string sentence(const Topic& t, Rng& rng) {
  std::string s(pick(kOpeners, rng));
  s += " ";
  s += adjective(t, rng);
  s += " ";
  s += noun(t, rng);
  s += " ";
  s += pick(kVerbs, rng);
  s += " the ";
  s += noun(t, rng);
  s += " of the ";
  s += adjective(t, rng);
  s += " ";
  s += noun(t, rng);
  switch (rng.below(4)) {
    case 0:
      s += " " + std::string(pick(kConnectives, rng)) + " " +
           std::to_string(2 + rng.below(98)) + " " + std::string(noun(t, rng)) +
           " settings";
      break;
    case 1:
      s += " when the " + std::string(noun(t, rng)) + " " +
           std::string(pick(kVerbs, rng)) + " the " +
           std::string(adjective(t, rng)) + " " + std::string(noun(t, rng));
      break;
    case 2:
      s += ", which " + std::string(pick(kVerbs, rng)) + " every " +
           std::string(noun(t, rng)) + " in the study";
      break;
    default:
      break;
  }
  return s + ".";
}

std::string math_sentence(const Topic& t, Rng& rng) {
  std::string m(kMathToken);
  return "We bound " + m + " by " + m + " for the " +
         std::string(noun(t, rng)) + " and set " + m + " so that " + m +
         " holds.";
}

std::string paragraph(const Topic& t, Rng& rng, std::size_t sentences,
                      bool mathy) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < sentences; ++i) {
    parts.push_back(mathy ? math_sentence(t, rng) : sentence(t, rng));
  }
  return join(parts, " ");
}

}  // namespace

std::vector<corpus::Article> make_fixture_articles(const FixtureSpec& spec) {
  std::vector<corpus::Article> out;
  std::vector<Domain> domains;
  domains.insert(domains.end(), spec.cs_articles, Domain::kCs);
  domains.insert(domains.end(), spec.math_articles, Domain::kMath);
  domains.insert(domains.end(), spec.stat_articles, Domain::kStat);
  for (std::size_t a = 0; a < domains.size(); ++a) {
    char id[32];
    std::snprintf(id, sizeof id, "2404.9%04zu", a + 1);
    Rng rng = Rng::derive(spec.seed, id);
    Topic topic = make_topic(rng);

    corpus::Article art;
    art.meta.arxiv_id = id;
    art.meta.domain = domains[a];
    art.meta.submitted = Date{2024, 4 + static_cast<int>(a % 6),
                              1 + static_cast<int>(rng.below(28))};
    art.meta.title = "On " + std::string(topic.adjectives[0]) + " " +
                     std::string(topic.nouns[0]) + "s for " +
                     std::string(topic.nouns[1]) + " analysis";

    // Mark which paragraph slots are short or math-heavy.
    std::vector<int> kind(spec.paragraphs_per_article, 0);
    for (std::size_t i = 0;
         i < spec.short_paragraphs + spec.math_paragraphs && i < kind.size();
         ++i) {
      kind[i] = i < spec.short_paragraphs ? 1 : 2;
    }
    rng.shuffle(std::span<int>(kind));
    for (int k : kind) {
      if (k == 1) {
        art.paragraphs.push_back(paragraph(topic, rng, 2, false));
      } else if (k == 2) {
        art.paragraphs.push_back(paragraph(topic, rng, 8, true));
      } else {
        art.paragraphs.push_back(paragraph(topic, rng, 8 + rng.below(4), false));
      }
    }
    for (const auto& p : art.paragraphs) art.raw_char_count += p.size() + 2;
    out.push_back(std::move(art));
  }
  return out;
}

void write_fixture_corpus(const std::filesystem::path& root,
                          const FixtureSpec& spec) {
  corpus::CorpusStore store(root);
  store.init("2024b", DateRange{Date{2024, 4, 1}, Date{2024, 9, 30}});
  for (const auto& a : make_fixture_articles(spec)) store.store_article(a);
}

}  // namespace arxivroll::scpgen
