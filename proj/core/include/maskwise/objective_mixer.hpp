// Copyright (c) 2026 the maskwise authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "maskwise/data_pipeline.hpp"
#include "maskwise/tokenizer.hpp"

namespace maskwise {

// Label value marking a position that contributes nothing to the loss.
inline constexpr std::uint32_t kIgnoreLabel = 0xFFFFFFFFu;

enum class Objective : std::uint32_t { kAtp = 0, kMlm = 1, kDummy = 2 };

std::string_view objective_name(Objective o);
Objective parse_objective(std::string_view name);  // ConfigError

// One supervised training sample. Invariants:
//   - input_ids, labels, attention_mask have equal length;
//   - ATP: exactly one non-ignore label, at the single mask position;
//   - MLM: non-ignore labels exactly at masked positions, original ids;
//   - DUMMY: non-ignore labels exactly at masked positions, all mask_id.
struct TemplatedSample {
  std::vector<std::uint32_t> input_ids;
  std::vector<std::uint32_t> labels;
  std::vector<std::uint8_t> attention_mask;  // 1 = real, 0 = pad
  Objective objective = Objective::kAtp;

  std::size_t supervised_count() const;
};

struct ObjectiveMixConfig {
  double atp_fraction = 0.8;
  Objective filler = Objective::kDummy;  // kMlm or kDummy
  double mlm_rate = 0.30;
  std::uint64_t seed = 0;
  void validate() const;  // ConfigError on out-of-range fields
};

// Single-token answer prediction: the one mask position is labeled with the
// answer's token id; everything else is ignored. SampleError unless the text
// contains exactly one mask and the answer is a single token.
TemplatedSample make_atp_sample(std::string_view text, std::string_view answer,
                                const Vocabulary& v);

// Random masking at cfg.mlm_rate over non-special positions; labels carry the
// original ids. The draw is repeated until at least one position is masked.
// SampleError on texts shorter than two tokens or with nothing maskable.
TemplatedSample make_mlm_sample(std::string_view text, const ObjectiveMixConfig& cfg,
                                const Vocabulary& v);

// Same masking procedure as make_mlm_sample, but every supervised label is
// the mask id itself.
TemplatedSample make_dummy_sample(std::string_view text, const ObjectiveMixConfig& cfg,
                                  const Vocabulary& v);

struct MixStats {
  std::array<std::size_t, 3> counts{};  // indexed by Objective
  std::size_t total() const { return counts[0] + counts[1] + counts[2]; }
};

// Renders each manifest record with the training template and assigns it ATP
// with probability atp_fraction, else the filler objective. Per-sample
// randomness is derived as hash(seed, index), so the stream is deterministic
// and independent of any batching or parallelism downstream.
std::vector<TemplatedSample> mix(const std::vector<ManifestRecord>& manifest,
                                 const ObjectiveMixConfig& cfg, const Vocabulary& v,
                                 MixStats* stats = nullptr);

// Shard container: "MWSHARD 1\n" then per record [u32 objective][u32 length]
// [length u32 input ids][length u32 labels], all little-endian.
std::string shard_to_bytes(std::span<const TemplatedSample> samples);
void write_shard(const std::filesystem::path& path, std::span<const TemplatedSample> samples);
std::vector<TemplatedSample> read_shard(const std::filesystem::path& path);

}  // namespace maskwise
