#include "gazforge/tokenize.hpp"

#include <algorithm>
#include <cctype>

namespace gazforge {

namespace {

inline bool is_sep(unsigned char c) { return c == ',' || std::isspace(c); }
inline bool is_ascii_punct(unsigned char c) { return c < 0x80 && std::ispunct(c); }

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::size_t i = 0, n = text.size();
  while (i < n) {
    while (i < n && is_sep(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < n && !is_sep(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) continue;

    std::size_t b = start, e = i;
    while (b < e && is_ascii_punct(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && is_ascii_punct(static_cast<unsigned char>(text[e - 1]))) --e;
    if (b == e) continue;

    std::string tok;
    tok.reserve(e - b);
    for (std::size_t j = b; j < e; ++j) {
      unsigned char c = static_cast<unsigned char>(text[j]);
      tok.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : text[j]);
    }
    out.push_back(std::move(tok));
  }
  return out;
}

std::vector<std::string> match_tokens(const GeoRecord& rec) {
  std::vector<std::string> out;
  for (const auto& tag : rec.tags) {
    auto toks = tokenize(tag);
    out.insert(out.end(), std::make_move_iterator(toks.begin()),
               std::make_move_iterator(toks.end()));
  }
  auto title_toks = tokenize(rec.title);
  out.insert(out.end(), std::make_move_iterator(title_toks.begin()),
             std::make_move_iterator(title_toks.end()));
  return out;
}

bool contains_subsequence(const std::vector<std::string>& haystack,
                          const std::vector<std::string>& needle) {
  if (needle.empty()) return false;
  if (needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

}  // namespace gazforge
