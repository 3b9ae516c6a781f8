// Copyright (c) 2026 the maskwise authors
// SPDX-License-Identifier: Apache-2.0
#include "maskwise/common.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>

namespace maskwise {

std::uint64_t fnv1a64(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  return fnv1a64(bytes.data(), bytes.size());
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view salt) {
  std::string buf;
  buf.reserve(8 + salt.size());
  append_u64_le(buf, seed);
  buf.append(salt);
  return fnv1a64(buf);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::string buf;
  append_u64_le(buf, seed);
  append_u64_le(buf, index);
  return fnv1a64(buf);
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) throw Error("uniform_below: n must be positive");
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return (r - threshold) % n;
  }
}

double next_gaussian(Rng& rng) {
  // Box-Muller; u clamped away from 0 so log stays finite.
  double u = next_u01(rng);
  const double v = next_u01(rng);
  if (u < 1e-300) u = 1e-300;
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file for reading: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path.string());
  return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open file for writing: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failure: " + path.string());
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  const std::string all = read_file(path);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= all.size()) {
    const std::size_t nl = all.find('\n', start);
    if (nl == std::string::npos) {
      if (start < all.size()) lines.push_back(all.substr(start));
      break;
    }
    lines.push_back(all.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

void append_u32_le(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void append_u64_le(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void append_f64_le(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  append_u64_le(out, bits);
}

std::uint32_t read_u32_le(std::string_view bytes, std::size_t& offset) {
  if (offset + 4 > bytes.size()) throw FormatError("truncated u32 field");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
  offset += 4;
  return v;
}

std::uint64_t read_u64_le(std::string_view bytes, std::size_t& offset) {
  if (offset + 8 > bytes.size()) throw FormatError("truncated u64 field");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
  offset += 8;
  return v;
}

double read_f64_le(std::string_view bytes, std::size_t& offset) {
  const std::uint64_t bits = read_u64_le(bytes, offset);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

std::string to_hex(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

std::string file_fingerprint(const std::filesystem::path& path) {
  return "fnv1a64:" + to_hex(fnv1a64(read_file(path)));
}

std::string utc_timestamp() {
  std::time_t t = 0;
  if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(e, nullptr, 10));
  } else {
    t = std::time(nullptr);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

}  // namespace maskwise
