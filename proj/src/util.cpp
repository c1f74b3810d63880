#include "castline/util.hpp"

#include <cstdlib>
#include <mutex>
#include <stdexcept>

namespace castline {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("CASTLINE_LOG");
    if (!env) return LogLevel::warn;
    const std::string v(env);
    if (v == "error") return LogLevel::error;
    if (v == "warn") return LogLevel::warn;
    if (v == "info") return LogLevel::info;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::warn;
  }();
  return level;
}

void log_message(LogLevel level, const std::string& msg) {
  if (level > log_level()) return;
  static std::mutex mtx;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::lock_guard<std::mutex> lock(mtx);
  std::fprintf(stderr, "[castline:%s] %s\n", names[static_cast<int>(level)], msg.c_str());
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string to_hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Scalar quantile(std::vector<Scalar> values, Scalar q) {
  if (values.empty()) throw std::invalid_argument("quantile of empty sample");
  std::sort(values.begin(), values.end());
  if (q <= 0) return values.front();
  if (q >= 1) return values.back();
  const Scalar pos = q * static_cast<Scalar>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const Scalar frac = pos - static_cast<Scalar>(lo);
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

Scalar median(std::vector<Scalar> values) { return quantile(std::move(values), 0.5); }

}  // namespace castline
