#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "arxivroll/corpus/article.hpp"

namespace arxivroll::scpgen {

// Synthetic article corpus for tests, demos and the acceptance suite.
//
// Articles are built from fixed word lists by the seeded generator, so a
// given spec always yields the same text. Every article mixes ordinary
// paragraphs (8-11 sentences of at least ten words each) with a few that the
// fragment filter must reject: short ones and ones dense with math tokens.
struct FixtureSpec {
  std::uint64_t seed = 2024;
  std::size_t cs_articles = 14;
  std::size_t math_articles = 3;
  std::size_t stat_articles = 3;
  std::size_t paragraphs_per_article = 42;
  std::size_t short_paragraphs = 2;
  std::size_t math_paragraphs = 2;
};

std::vector<corpus::Article> make_fixture_articles(const FixtureSpec& spec);

// Writes the articles into a fresh corpus at `root` (period "2024b",
// window 2024-04-01..2024-09-30).
void write_fixture_corpus(const std::filesystem::path& root,
                          const FixtureSpec& spec);

}  // namespace arxivroll::scpgen
