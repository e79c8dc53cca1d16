#pragma once

#include <string>
#include <vector>

#include "gazforge/record.hpp"

namespace gazforge {

// Splits on whitespace and commas, lowercases ASCII letters, strips
// surrounding ASCII punctuation. Bytes >= 0x80 (e.g. CJK tags) pass through
// verbatim. Empty tokens are dropped, order and duplicates preserved.
std::vector<std::string> tokenize(const std::string& text);

// Token stream used for place-name matching and tag statistics:
// tag tokens followed by title tokens.
std::vector<std::string> match_tokens(const GeoRecord& rec);

// True when `needle` occurs as a contiguous subsequence of `haystack`.
bool contains_subsequence(const std::vector<std::string>& haystack,
                          const std::vector<std::string>& needle);

}  // namespace gazforge
