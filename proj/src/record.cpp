#include "gazforge/record.hpp"

#include <cstdio>

namespace gazforge {

namespace {

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool plausible(int y, int mo, int d, int h, int mi, int s) {
  return y >= 1900 && y <= 2200 && mo >= 1 && mo <= 12 && d >= 1 && d <= 31 && h >= 0 &&
         h <= 23 && mi >= 0 && mi <= 59 && s >= 0 && s <= 60;
}

}  // namespace

std::optional<std::int64_t> parse_timestamp(const std::string& text) {
  int y, mo, d, h, mi, s = 0;
  int consumed = 0;
  // Table 2 style: M/D/YYYY H:MM
  if (std::sscanf(text.c_str(), "%d/%d/%d %d:%d%n", &mo, &d, &y, &h, &mi, &consumed) == 5 &&
      static_cast<std::size_t>(consumed) == text.size() && plausible(y, mo, d, h, mi, 0)) {
    return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60;
  }
  // ISO-8601: YYYY-MM-DD[T ]HH:MM[:SS][Z]
  char sep = 0, tail = 0;
  int got = std::sscanf(text.c_str(), "%d-%d-%d%c%d:%d:%d%c", &y, &mo, &d, &sep, &h, &mi, &s, &tail);
  if (got >= 6 && (sep == 'T' || sep == ' ') && plausible(y, mo, d, h, mi, got >= 7 ? s : 0)) {
    if (got == 6) s = 0;
    if (got == 8 && tail != 'Z') return std::nullopt;
    return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
  }
  return std::nullopt;
}

}  // namespace gazforge
