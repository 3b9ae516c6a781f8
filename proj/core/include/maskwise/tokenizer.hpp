// Copyright (c) 2026 the maskwise authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "maskwise/common.hpp"

namespace maskwise {

enum class Scheme { kWhitespace, kBytePair };

std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view name);  // ConfigError on unknown name

// Subword vocabulary with reserved special tokens and byte fallback.
//
// Fixed id layout:
//   0..5     specials: [PAD] [UNK] [MASK] [ANS] [BOS] [EOS]
//   6..261   byte tokens, one per byte value (id = 6 + byte)
//   262..    derived tokens: corpus words (whitespace scheme) or BPE merges
//
// Every single byte is always encodable, so encode never fails and
// decode(encode(x)) == x holds for arbitrary byte strings. Single printable
// ASCII characters ("A".."Z", "0".."9", ...) are atomic byte tokens by
// construction, which keeps letter and digit verbalizers single-token under
// any vocabulary.
class Vocabulary {
 public:
  static constexpr std::uint32_t kPadId = 0;
  static constexpr std::uint32_t kUnkId = 1;
  static constexpr std::uint32_t kMaskId = 2;
  static constexpr std::uint32_t kAnchorId = 3;
  static constexpr std::uint32_t kBosId = 4;
  static constexpr std::uint32_t kEosId = 5;
  static constexpr std::uint32_t kByteBase = 6;
  static constexpr std::uint32_t kDerivedBase = 262;

  static constexpr std::string_view kPadToken = "[PAD]";
  static constexpr std::string_view kUnkToken = "[UNK]";
  static constexpr std::string_view kMaskToken = "[MASK]";
  static constexpr std::string_view kAnchorToken = "[ANS]";
  static constexpr std::string_view kBosToken = "[BOS]";
  static constexpr std::string_view kEosToken = "[EOS]";

  Scheme scheme() const { return scheme_; }
  std::size_t size() const { return contents_.size(); }

  // Special-token strings encode atomically to their reserved ids; everything
  // else is segmented into word / whitespace runs and matched against the
  // vocabulary, falling back to byte tokens.
  std::vector<std::uint32_t> encode(std::string_view text) const;

  // Concatenation of the ids' contents. DecodeError on id >= size().
  std::string decode(std::span<const std::uint32_t> ids) const;

  // True iff the text (leading whitespace stripped) encodes to one id.
  bool is_single_token(std::string_view text) const;

  // The id for a single-token string, nullopt when it is multi-token.
  std::optional<std::uint32_t> single_token_id(std::string_view text) const;

  const std::string& token_content(std::uint32_t id) const;  // DecodeError
  bool is_special(std::uint32_t id) const { return id < kByteBase; }
  bool has_token(std::string_view content) const;

  std::string to_text() const;  // the MWVOCAB file image
  void save(const std::filesystem::path& path) const;
  static Vocabulary from_text(std::string_view file_bytes);  // FormatError
  static Vocabulary load(const std::filesystem::path& path);

  friend Vocabulary build_vocab(std::istream&, std::size_t, Scheme);

 private:
  Vocabulary() = default;
  void init_structural();
  std::uint32_t add_token(std::string content);
  void encode_chunk(std::string_view chunk, std::vector<std::uint32_t>& out) const;
  void encode_word(std::string_view word, std::vector<std::uint32_t>& out) const;

  Scheme scheme_ = Scheme::kWhitespace;
  std::vector<std::string> contents_;
  std::unordered_map<std::string, std::uint32_t> content_to_id_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> merges_;  // BPE only
  std::unordered_map<std::uint64_t, std::uint32_t> merge_rank_;  // pair -> rank
};

// Builds a vocabulary from a line-oriented corpus. Deterministic given corpus
// bytes, scheme, and target size. The effective size is at least the
// structural floor (specials + bytes); target_size caps derived tokens.
// BuildError on an empty corpus or if the anchor string appears in it.
Vocabulary build_vocab(std::istream& corpus, std::size_t target_size, Scheme scheme);
Vocabulary build_vocab(const std::vector<std::string>& corpus_lines, std::size_t target_size,
                       Scheme scheme);
Vocabulary build_vocab_file(const std::filesystem::path& corpus_path, std::size_t target_size,
                            Scheme scheme);

}  // namespace maskwise
