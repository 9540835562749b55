#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace arxivroll::corpus {

// Inflates a gzip stream. Throws DomainError on corrupt input.
std::string gunzip(std::string_view bytes);

// Turns an arXiv e-print payload into a single LaTeX document.
//
// Accepts a plain .tex file, a gzip'd .tex file, or a (gzip'd) tar archive.
// For archives the main file is the first .tex member, in name order, that
// contains \begin{document}; \input and \include of other members are
// spliced in one level deep. Returns nullopt when no LaTeX is found (for
// example a PDF-only submission).
std::optional<std::string> unpack_latex_source(std::string_view bytes);

}  // namespace arxivroll::corpus
