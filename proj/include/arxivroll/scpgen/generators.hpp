#pragma once

#include "arxivroll/corpus/article.hpp"
#include "arxivroll/rng.hpp"
#include "arxivroll/scpgen/fragment.hpp"
#include "arxivroll/scpgen/test_case.hpp"

namespace arxivroll::scpgen {

// Shared identity for the cases built from one fragment.
struct CaseContext {
  Domain domain = Domain::kCs;
  std::uint64_t seed = 0;
};

// Sequencing. The fragment's sentences are cut into four contiguous groups
// (sizes differ by at most one, larger groups first), shown in a random
// non-identity order labeled (A)-(D), one per stem line:
//
//   (A) <group>
//   (B) <group>
//   ...
//
// Each candidate is a label chain such as "C-A-D-B": reading the labeled
// groups in that order restores the passage. Needs >= 4 sentences.
Outcome<TestCase> gen_sequencing(const Fragment& fragment,
                                 const CaseContext& ctx, Rng& rng);

// Cloze. Four distinct sentences become [BLANK-1]..[BLANK-4] in passage
// order; the removed sentences follow in a shuffled bank, one per line:
//
//   <passage with blanks>
//   (i) <sentence>
//   ...
//   (iv) <sentence>
//
// Candidates assign bank labels to blanks, e.g. "1→iii, 2→i, 3→iv, 4→ii".
// The three wrong candidates are other permutations. Needs >= 6 sentences.
Outcome<TestCase> gen_cloze(const Fragment& fragment, const CaseContext& ctx,
                            Rng& rng);

// Prediction. The stem is the fragment without its final sentence, which is
// the answer. Distractors are the three sentences from outside the fragment
// that rank highest by TF-IDF similarity to the answer (document order on
// ties), skipping verbatim copies of the answer or of an earlier pick.
Outcome<TestCase> gen_prediction(const Fragment& fragment,
                                 const corpus::Article& article,
                                 const CaseContext& ctx, Rng& rng);

// Label helpers shared with tests and prompt rendering.
std::string_view roman_label(int i);  // 0 -> "i" ... 3 -> "iv"

}  // namespace arxivroll::scpgen
