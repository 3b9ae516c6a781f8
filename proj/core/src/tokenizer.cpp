// Copyright (c) 2026 the maskwise authors
// SPDX-License-Identifier: Apache-2.0
#include "maskwise/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <sstream>

namespace maskwise {

namespace {

constexpr std::array<std::string_view, 6> kSpecialTokens = {
    Vocabulary::kPadToken, Vocabulary::kUnkToken,  Vocabulary::kMaskToken,
    Vocabulary::kAnchorToken, Vocabulary::kBosToken, Vocabulary::kEosToken};

bool is_ascii_ws(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool printable_byte(unsigned char b) { return b >= 0x21 && b <= 0x7e; }

std::string byte_display(unsigned char b) {
  if (printable_byte(b)) return std::string(1, static_cast<char>(b));
  static const char* digits = "0123456789ABCDEF";
  std::string s = "<0x";
  s += digits[b >> 4];
  s += digits[b & 0xf];
  s += '>';
  return s;
}

std::string escape_display(const std::string& content) {
  std::string out;
  for (unsigned char b : content) out += byte_display(b);
  return out;
}

std::uint64_t pair_key(std::uint32_t l, std::uint32_t r) {
  return (static_cast<std::uint64_t>(l) << 32) | r;
}

bool contains_special(std::string_view word) {
  for (const auto& sp : kSpecialTokens)
    if (word.find(sp) != std::string_view::npos) return true;
  return false;
}

// Finds the earliest special-token occurrence at or after `from`.
// Returns npos in .first when none remains.
std::pair<std::size_t, std::size_t> find_special(std::string_view text, std::size_t from) {
  std::size_t best = std::string_view::npos;
  std::size_t best_len = 0;
  for (const auto& sp : kSpecialTokens) {
    const std::size_t at = text.find(sp, from);
    if (at < best) {
      best = at;
      best_len = sp.size();
    }
  }
  return {best, best_len};
}

std::uint32_t special_id(std::string_view token) {
  for (std::size_t i = 0; i < kSpecialTokens.size(); ++i)
    if (kSpecialTokens[i] == token) return static_cast<std::uint32_t>(i);
  throw Error("not a special token");
}

}  // namespace

std::string_view scheme_name(Scheme s) {
  return s == Scheme::kWhitespace ? "whitespace" : "bpe";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "whitespace") return Scheme::kWhitespace;
  if (name == "bpe" || name == "byte-pair") return Scheme::kBytePair;
  throw ConfigError("unknown tokenizer scheme: " + std::string(name));
}

void Vocabulary::init_structural() {
  contents_.clear();
  content_to_id_.clear();
  for (const auto& sp : kSpecialTokens) add_token(std::string(sp));
  for (int b = 0; b < 256; ++b) add_token(std::string(1, static_cast<char>(b)));
}

std::uint32_t Vocabulary::add_token(std::string content) {
  const auto id = static_cast<std::uint32_t>(contents_.size());
  content_to_id_.emplace(content, id);  // first writer wins on duplicates
  contents_.push_back(std::move(content));
  return id;
}

void Vocabulary::encode_word(std::string_view word, std::vector<std::uint32_t>& out) const {
  const auto it = content_to_id_.find(std::string(word));
  if (it != content_to_id_.end() && it->second >= kByteBase) {
    out.push_back(it->second);
    return;
  }
  if (scheme_ == Scheme::kWhitespace || merge_rank_.empty()) {
    for (unsigned char b : word) out.push_back(kByteBase + b);
    return;
  }
  // BPE: start from bytes, repeatedly apply the best-ranked adjacent merge.
  std::vector<std::uint32_t> symbols;
  symbols.reserve(word.size());
  for (unsigned char b : word) symbols.push_back(kByteBase + b);
  while (symbols.size() >= 2) {
    std::uint32_t best_rank = UINT32_MAX;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      const auto mit = merge_rank_.find(pair_key(symbols[i], symbols[i + 1]));
      if (mit != merge_rank_.end() && mit->second < best_rank) best_rank = mit->second;
    }
    if (best_rank == UINT32_MAX) break;
    const auto [l, r] = merges_[best_rank];
    const std::uint32_t merged = kDerivedBase + best_rank;
    std::vector<std::uint32_t> next;
    next.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size();) {
      if (i + 1 < symbols.size() && symbols[i] == l && symbols[i + 1] == r) {
        next.push_back(merged);
        i += 2;
      } else {
        next.push_back(symbols[i]);
        i += 1;
      }
    }
    symbols = std::move(next);
  }
  out.insert(out.end(), symbols.begin(), symbols.end());
}

void Vocabulary::encode_chunk(std::string_view chunk, std::vector<std::uint32_t>& out) const {
  std::size_t i = 0;
  while (i < chunk.size()) {
    const bool ws = is_ascii_ws(chunk[i]);
    std::size_t j = i;
    while (j < chunk.size() && is_ascii_ws(chunk[j]) == ws) ++j;
    if (ws) {
      for (std::size_t k = i; k < j; ++k)
        out.push_back(kByteBase + static_cast<unsigned char>(chunk[k]));
    } else {
      encode_word(chunk.substr(i, j - i), out);
    }
    i = j;
  }
}

std::vector<std::uint32_t> Vocabulary::encode(std::string_view text) const {
  std::vector<std::uint32_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto [at, len] = find_special(text, pos);
    if (at == std::string_view::npos) {
      encode_chunk(text.substr(pos), out);
      break;
    }
    if (at > pos) encode_chunk(text.substr(pos, at - pos), out);
    out.push_back(special_id(text.substr(at, len)));
    pos = at + len;
  }
  return out;
}

std::string Vocabulary::decode(std::span<const std::uint32_t> ids) const {
  std::string out;
  for (const std::uint32_t id : ids) {
    if (id >= contents_.size())
      throw DecodeError("token id " + std::to_string(id) + " out of range (|V|=" +
                        std::to_string(contents_.size()) + ")");
    out += contents_[id];
  }
  return out;
}

bool Vocabulary::is_single_token(std::string_view text) const {
  return single_token_id(text).has_value();
}

std::optional<std::uint32_t> Vocabulary::single_token_id(std::string_view text) const {
  // Leading whitespace is stripped before the test so that answers rendered
  // with a separating space (" B") count as their bare token.
  std::size_t start = 0;
  while (start < text.size() && is_ascii_ws(text[start])) ++start;
  const auto ids = encode(text.substr(start));
  if (ids.size() != 1) return std::nullopt;
  return ids[0];
}

const std::string& Vocabulary::token_content(std::uint32_t id) const {
  if (id >= contents_.size())
    throw DecodeError("token id " + std::to_string(id) + " out of range");
  return contents_[id];
}

bool Vocabulary::has_token(std::string_view content) const {
  return content_to_id_.contains(std::string(content));
}

std::string Vocabulary::to_text() const {
  std::string out;
  out += "MWVOCAB 1\n";
  out += "scheme ";
  out += scheme_name(scheme_);
  out += '\n';
  out += "size " + std::to_string(contents_.size()) + '\n';
  static const char* names[6] = {"PAD", "UNK", "MASK", "ANCHOR", "BOS", "EOS"};
  for (std::uint32_t i = 0; i < 6; ++i) {
    out += "special ";
    out += names[i];
    out += ' ' + std::to_string(i) + ' ' + contents_[i] + '\n';
  }
  out += "byte_base " + std::to_string(kByteBase) + '\n';
  out += "derived_base " + std::to_string(kDerivedBase) + '\n';
  out += "merges " + std::to_string(merges_.size()) + '\n';
  out += "tokens\n";
  for (std::uint32_t id = 0; id < contents_.size(); ++id) {
    if (id < kByteBase) {
      out += contents_[id];
    } else if (id < kDerivedBase) {
      out += byte_display(static_cast<unsigned char>(contents_[id][0]));
    } else if (scheme_ == Scheme::kBytePair) {
      out += escape_display(contents_[id]);
    } else {
      out += contents_[id];
    }
    out += '\n';
  }
  for (const auto& [l, r] : merges_)
    out += std::to_string(l) + ' ' + std::to_string(r) + '\n';
  return out;
}

void Vocabulary::save(const std::filesystem::path& path) const { write_file(path, to_text()); }

Vocabulary Vocabulary::from_text(std::string_view file_bytes) {
  std::istringstream in{std::string(file_bytes)};
  std::string line;
  auto next_line = [&](std::string& dst) {
    if (!std::getline(in, dst)) throw FormatError("vocabulary file truncated");
  };
  next_line(line);
  if (line != "MWVOCAB 1") throw FormatError("bad vocabulary magic: " + line);

  Vocabulary v;
  std::size_t declared_size = 0;
  std::size_t merge_count = 0;
  for (;;) {
    next_line(line);
    if (line == "tokens") break;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "scheme") {
      std::string s;
      ls >> s;
      v.scheme_ = parse_scheme(s);
    } else if (key == "size") {
      ls >> declared_size;
    } else if (key == "merges") {
      ls >> merge_count;
    } else if (key == "special" || key == "byte_base" || key == "derived_base") {
      // fixed layout; informational
    } else {
      throw FormatError("unknown vocabulary header field: " + key);
    }
  }
  if (declared_size < kDerivedBase) throw FormatError("vocabulary size below structural floor");

  v.init_structural();
  std::vector<std::string> token_lines(declared_size);
  for (std::size_t i = 0; i < declared_size; ++i) next_line(token_lines[i]);

  if (v.scheme_ == Scheme::kBytePair) {
    for (std::size_t k = 0; k < merge_count; ++k) {
      next_line(line);
      std::istringstream ls(line);
      std::uint32_t l = 0, r = 0;
      if (!(ls >> l >> r)) throw FormatError("bad merge line: " + line);
      if (l >= v.contents_.size() || r >= v.contents_.size())
        throw FormatError("merge references unknown token id");
      v.merge_rank_.emplace(pair_key(l, r), static_cast<std::uint32_t>(v.merges_.size()));
      v.merges_.emplace_back(l, r);
      v.add_token(v.contents_[l] + v.contents_[r]);
    }
  } else {
    for (std::size_t id = kDerivedBase; id < declared_size; ++id)
      v.add_token(token_lines[id]);
  }
  if (v.contents_.size() != declared_size)
    throw FormatError("vocabulary size mismatch: declared " + std::to_string(declared_size) +
                      ", reconstructed " + std::to_string(v.contents_.size()));
  return v;
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  return from_text(read_file(path));
}

namespace {

struct WordStats {
  std::uint64_t count = 0;
  std::uint64_t first_seen = 0;
};

void scan_corpus(std::istream& corpus,
                 std::unordered_map<std::string, WordStats>& words,
                 std::uint64_t& line_count) {
  std::string line;
  std::uint64_t order = 0;
  while (std::getline(corpus, line)) {
    ++line_count;
    if (line.find(Vocabulary::kAnchorToken) != std::string::npos)
      throw BuildError("anchor token string found in pretraining corpus at line " +
                       std::to_string(line_count));
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_ascii_ws(line[i])) ++i;
      std::size_t j = i;
      while (j < line.size() && !is_ascii_ws(line[j])) ++j;
      if (j > i) {
        auto& st = words[line.substr(i, j - i)];
        if (st.count == 0) st.first_seen = order++;
        st.count += 1;
      }
      i = j;
    }
  }
}

}  // namespace

Vocabulary build_vocab(std::istream& corpus, std::size_t target_size, Scheme scheme) {
  std::unordered_map<std::string, WordStats> words;
  std::uint64_t line_count = 0;
  scan_corpus(corpus, words, line_count);
  if (line_count == 0) throw BuildError("corpus is empty");

  Vocabulary v;
  v.scheme_ = scheme;
  v.init_structural();
  const std::size_t cap = std::max<std::size_t>(target_size, Vocabulary::kDerivedBase);

  if (scheme == Scheme::kWhitespace) {
    std::vector<std::pair<const std::string*, WordStats>> ranked;
    ranked.reserve(words.size());
    for (const auto& [w, st] : words) {
      if (w.size() < 2) continue;  // single bytes are already atomic
      if (contains_special(w)) continue;
      if (v.has_token(w)) continue;
      ranked.emplace_back(&w, st);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.second.count != b.second.count) return a.second.count > b.second.count;
      return a.second.first_seen < b.second.first_seen;
    });
    for (const auto& [w, st] : ranked) {
      if (v.size() >= cap) break;
      v.add_token(*w);
    }
    return v;
  }

  // Byte-pair: symbol sequences per distinct word, weighted by frequency.
  struct Seq {
    std::vector<std::uint32_t> symbols;
    std::uint64_t count;
  };
  std::vector<Seq> seqs;
  {
    std::vector<std::pair<const std::string*, const WordStats*>> ordered;
    ordered.reserve(words.size());
    for (const auto& [w, st] : words) ordered.emplace_back(&w, &st);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.second->first_seen < b.second->first_seen; });
    for (const auto& [w, st] : ordered) {
      if (w->size() < 2 || contains_special(*w)) continue;
      Seq s;
      s.count = st->count;
      for (unsigned char b : *w) s.symbols.push_back(Vocabulary::kByteBase + b);
      seqs.push_back(std::move(s));
    }
  }

  while (v.size() < cap) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> pair_counts;
    for (const auto& s : seqs) {
      for (std::size_t i = 0; i + 1 < s.symbols.size(); ++i)
        pair_counts[{s.symbols[i], s.symbols[i + 1]}] += s.count;
    }
    std::uint64_t best_count = 0;
    std::pair<std::uint32_t, std::uint32_t> best{0, 0};
    std::string best_content;
    for (const auto& [pr, cnt] : pair_counts) {
      std::string content = v.token_content(pr.first) + v.token_content(pr.second);
      if (cnt > best_count || (cnt == best_count && content < best_content)) {
        best_count = cnt;
        best = pr;
        best_content = std::move(content);
      }
    }
    if (best_count < 2) break;

    const std::uint32_t merged = v.add_token(best_content);
    v.merge_rank_.emplace(pair_key(best.first, best.second),
                          static_cast<std::uint32_t>(v.merges_.size()));
    v.merges_.emplace_back(best.first, best.second);
    for (auto& s : seqs) {
      std::vector<std::uint32_t> next;
      next.reserve(s.symbols.size());
      for (std::size_t i = 0; i < s.symbols.size();) {
        if (i + 1 < s.symbols.size() && s.symbols[i] == best.first &&
            s.symbols[i + 1] == best.second) {
          next.push_back(merged);
          i += 2;
        } else {
          next.push_back(s.symbols[i]);
          i += 1;
        }
      }
      s.symbols = std::move(next);
    }
  }
  return v;
}

Vocabulary build_vocab(const std::vector<std::string>& corpus_lines, std::size_t target_size,
                       Scheme scheme) {
  std::string joined;
  for (const auto& l : corpus_lines) {
    joined += l;
    joined += '\n';
  }
  std::istringstream in(joined);
  return build_vocab(in, target_size, scheme);
}

Vocabulary build_vocab_file(const std::filesystem::path& corpus_path, std::size_t target_size,
                            Scheme scheme) {
  const std::string bytes = read_file(corpus_path);
  std::istringstream in(bytes);
  return build_vocab(in, target_size, scheme);
}

}  // namespace maskwise
