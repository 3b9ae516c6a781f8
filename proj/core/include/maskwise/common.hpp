// Copyright (c) 2026 the maskwise authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace maskwise {

inline constexpr std::string_view kToolVersion = "maskwise 0.1.0";

// ---------------------------------------------------------------------------
// Error types. Each failure mode carries a message; callers catch by type.
// ---------------------------------------------------------------------------
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BuildError : public Error { public: using Error::Error; };
class DecodeError : public Error { public: using Error::Error; };
class TemplateError : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };
class FormatError : public Error { public: using Error::Error; };
class SampleError : public Error { public: using Error::Error; };
class ShapeError : public Error { public: using Error::Error; };
class NumericsError : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };
class PromptError : public Error { public: using Error::Error; };
class ReportError : public Error { public: using Error::Error; };

// ---------------------------------------------------------------------------
// Deterministic randomness. std::mt19937_64 output is fully specified by the
// standard; the distributions are not, so every draw below is hand-rolled to
// keep artifacts bit-identical across compilers.
// ---------------------------------------------------------------------------
using Rng = std::mt19937_64;

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64(const void* data, std::size_t n);

// Stable seed derivation: hash of (seed, salt) or (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view salt);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Uniform double in [0, 1) with 53 random bits.
inline double next_u01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n), rejection-sampled so the result does not depend
// on the platform's std::uniform_int_distribution.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

// Standard normal via Box-Muller; consumes exactly two engine draws.
double next_gaussian(Rng& rng);

template <typename T>
void shuffle_seeded(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

// ---------------------------------------------------------------------------
// File and little-endian helpers.
// ---------------------------------------------------------------------------
std::string read_file(const std::filesystem::path& path);           // IoError
void write_file(const std::filesystem::path& path, std::string_view bytes);
std::vector<std::string> read_lines(const std::filesystem::path& path);

void append_u32_le(std::string& out, std::uint32_t v);
void append_u64_le(std::string& out, std::uint64_t v);
void append_f64_le(std::string& out, double v);
std::uint32_t read_u32_le(std::string_view bytes, std::size_t& offset);
std::uint64_t read_u64_le(std::string_view bytes, std::size_t& offset);
double read_f64_le(std::string_view bytes, std::size_t& offset);

std::string to_hex(std::uint64_t v);

// Content fingerprint of a file, "fnv1a64:<hex>". IoError if unreadable.
std::string file_fingerprint(const std::filesystem::path& path);

// ISO-8601 UTC timestamp; honors SOURCE_DATE_EPOCH for reproducible output.
std::string utc_timestamp();

}  // namespace maskwise
