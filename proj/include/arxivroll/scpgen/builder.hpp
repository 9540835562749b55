#pragma once

#include <cstdint>
#include <string>

#include "arxivroll/corpus/store.hpp"
#include "arxivroll/scpgen/test_case.hpp"

namespace arxivroll::scpgen {

struct BuildRequest {
  Domain domain = Domain::kCs;
  TaskKind task = TaskKind::kSequencing;
  FragmentConfig config;
  std::uint64_t seed = 0;
  std::size_t target_size = 0;  // 0 = every eligible fragment
  std::string period_label;
  std::string created;  // stamped into the header verbatim
};

// Generates one private benchmark from the articles of a domain.
//
// Articles are visited in a seed-shuffled order. Each article owns an
// independent stream derived from (seed, arxiv_id) that shuffles its
// paragraph windows and drives case generation. Visiting proceeds in rounds:
// every article contributes its next eligible window per round, until the
// target size is met or every window has been tried. The result depends only
// on the articles and the request.
//
// Throws PreconditionError for an empty domain and DomainError when no
// fragment qualifies.
Benchmark build_benchmark(const std::vector<corpus::Article>& articles,
                          const BuildRequest& request);
Benchmark build_benchmark(const corpus::CorpusStore& store,
                          const BuildRequest& request);

// Applies the builder's per-task eligibility to a fragment and generates
// the case. Exposed for the stability and unit tests.
Outcome<TestCase> generate_case(const Fragment& fragment,
                                const corpus::Article& article,
                                const BuildRequest& request, Rng& rng);

}  // namespace arxivroll::scpgen
