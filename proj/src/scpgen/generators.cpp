#include "arxivroll/scpgen/generators.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "arxivroll/scpgen/sentences.hpp"
#include "arxivroll/scpgen/tfidf.hpp"

namespace arxivroll::scpgen {

namespace {

using Perm = std::array<int, 4>;

std::vector<Perm> all_permutations() {
  std::vector<Perm> out;
  Perm p = {0, 1, 2, 3};
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Draws `k` distinct elements uniformly without replacement.
template <typename T>
std::vector<T> pick_distinct(std::vector<T> pool, std::size_t k, Rng& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

// Places the correct answer and three distractors in shuffled positions.
void fill_candidates(TestCase& tc, const std::string& correct,
                     const std::vector<std::string>& distractors, Rng& rng) {
  std::array<int, 4> slot = {0, 1, 2, 3};
  rng.shuffle(std::span<int>(slot));
  // slot[k] says which source (0 = correct, 1..3 = distractors) lands at k.
  for (int k = 0; k < 4; ++k) {
    tc.candidates[k] = slot[k] == 0 ? correct : distractors[slot[k] - 1];
    if (slot[k] == 0) tc.correct_index = k;
  }
}

TestCase start_case(const Fragment& f, TaskKind task, const CaseContext& ctx) {
  TestCase tc;
  tc.task_kind = task;
  tc.domain = ctx.domain;
  tc.case_id = make_case_id(f.article_id, task, ctx.seed, f.span_start,
                            f.span_end);
  tc.provenance = {f.article_id, ctx.seed, std::string(kGeneratorVersion),
                   f.span_start, f.span_end};
  return tc;
}

std::string label_chain(const Perm& labels) {
  std::string s;
  for (int i = 0; i < 4; ++i) {
    if (i) s += '-';
    s += static_cast<char>('A' + labels[i]);
  }
  return s;
}

std::string assignment_text(const Perm& bank_label_for_blank) {
  std::string s;
  for (int k = 0; k < 4; ++k) {
    if (k) s += ", ";
    s += std::to_string(k + 1) + "→" +
         std::string(roman_label(bank_label_for_blank[k]));
  }
  return s;
}

}  // namespace

std::string_view roman_label(int i) {
  static constexpr std::string_view kLabels[] = {"i", "ii", "iii", "iv"};
  return kLabels[i];
}

Outcome<TestCase> gen_sequencing(const Fragment& fragment,
                                 const CaseContext& ctx, Rng& rng) {
  const auto& s = fragment.sentences;
  if (s.size() < 4) {
    return Rejection{RejectReason::kTooFewSentences,
                     "sequencing needs 4 sentences"};
  }
  std::array<std::string, 4> groups;
  std::size_t q = s.size() / 4, r = s.size() % 4, next = 0;
  for (std::size_t g = 0; g < 4; ++g) {
    std::size_t size = q + (g < r ? 1 : 0);
    std::vector<std::string> part(s.begin() + next, s.begin() + next + size);
    groups[g] = join(part, " ");
    next += size;
  }

  // shown[k] = group displayed under label k; never the identity.
  auto perms = all_permutations();
  Perm shown = perms[1 + rng.below(perms.size() - 1)];

  TestCase tc = start_case(fragment, TaskKind::kSequencing, ctx);
  for (int k = 0; k < 4; ++k) {
    if (k) tc.stem += '\n';
    tc.stem += "(" + std::string(1, static_cast<char>('A' + k)) + ") " +
               groups[shown[k]];
  }

  // Reading order that restores the passage: the label holding group g.
  Perm restore{};
  for (int k = 0; k < 4; ++k) restore[shown[k]] = k;

  std::vector<std::string> wrong;
  for (const auto& p : perms) {
    if (p != restore) wrong.push_back(label_chain(p));
  }
  fill_candidates(tc, label_chain(restore), pick_distinct(wrong, 3, rng), rng);
  return tc;
}

Outcome<TestCase> gen_cloze(const Fragment& fragment, const CaseContext& ctx,
                            Rng& rng) {
  const auto& s = fragment.sentences;
  if (s.size() < 6) {
    return Rejection{RejectReason::kTooFewSentences, "cloze needs 6 sentences"};
  }
  std::vector<std::size_t> positions(s.size());
  for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
  positions = pick_distinct(positions, 4, rng);
  std::sort(positions.begin(), positions.end());

  // bank[j] = blank whose sentence is listed under roman label j.
  Perm bank = {0, 1, 2, 3};
  rng.shuffle(std::span<int>(bank));

  TestCase tc = start_case(fragment, TaskKind::kCloze, ctx);
  std::vector<std::string> parts;
  for (std::size_t i = 0, blank = 0; i < s.size(); ++i) {
    if (blank < 4 && positions[blank] == i) {
      parts.push_back("[BLANK-" + std::to_string(++blank) + "]");
    } else {
      parts.push_back(s[i]);
    }
  }
  tc.stem = join(parts, " ");
  for (int j = 0; j < 4; ++j) {
    tc.stem += "\n(" + std::string(roman_label(j)) + ") " + s[positions[bank[j]]];
  }

  Perm correct{};
  for (int j = 0; j < 4; ++j) correct[bank[j]] = j;
  std::vector<std::string> wrong;
  for (const auto& p : all_permutations()) {
    if (p != correct) wrong.push_back(assignment_text(p));
  }
  fill_candidates(tc, assignment_text(correct), pick_distinct(wrong, 3, rng),
                  rng);
  return tc;
}

Outcome<TestCase> gen_prediction(const Fragment& fragment,
                                 const corpus::Article& article,
                                 const CaseContext& ctx, Rng& rng) {
  const auto& s = fragment.sentences;
  if (s.size() < 3) {
    return Rejection{RejectReason::kTooFewSentences,
                     "prediction needs 3 sentences"};
  }
  const std::string& answer = s.back();

  std::vector<std::string> pool;
  for (std::size_t p = 0; p < article.paragraphs.size(); ++p) {
    if (p >= fragment.span_start && p < fragment.span_end) continue;
    for (auto& sent : split_sentences(article.paragraphs[p])) {
      pool.push_back(std::move(sent));
    }
  }
  if (pool.size() < 3) {
    return Rejection{RejectReason::kTooFewDistractors,
                     std::to_string(pool.size()) + " sentences outside fragment"};
  }

  std::vector<std::string> distractors;
  std::set<std::string> seen = {answer};
  for (const auto& ranked : tfidf_rank(answer, pool)) {
    const std::string& cand = pool[ranked.index];
    if (!seen.insert(cand).second) continue;
    distractors.push_back(cand);
    if (distractors.size() == 3) break;
  }
  if (distractors.size() < 3) {
    return Rejection{RejectReason::kTooFewDistractors,
                     "fewer than 3 distinct distractor sentences"};
  }

  TestCase tc = start_case(fragment, TaskKind::kPrediction, ctx);
  tc.stem = join(std::vector<std::string>(s.begin(), s.end() - 1), " ");
  fill_candidates(tc, answer, distractors, rng);
  return tc;
}

}  // namespace arxivroll::scpgen
