// Copyright (c) 2026 the maskwise authors
// SPDX-License-Identifier: Apache-2.0
#include "maskwise/objective_mixer.hpp"

#include <string>

namespace maskwise {

namespace {

constexpr std::string_view kShardMagic = "MWSHARD 1\n";

// Masks eligible (non-special) positions in place. Labels are the original
// ids for MLM and the mask id for the dummy variant. Redraws until at least
// one position is masked.
void apply_random_masking(TemplatedSample& s, double rate, Rng& rng, bool dummy_labels) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < s.input_ids.size(); ++i)
    if (s.input_ids[i] >= Vocabulary::kByteBase) eligible.push_back(i);
  if (eligible.empty())
    throw SampleError("no maskable positions: text is all special tokens");

  std::vector<std::size_t> chosen;
  while (chosen.empty()) {
    for (const std::size_t i : eligible)
      if (next_u01(rng) < rate) chosen.push_back(i);
  }
  for (const std::size_t i : chosen) {
    s.labels[i] = dummy_labels ? Vocabulary::kMaskId : s.input_ids[i];
    s.input_ids[i] = Vocabulary::kMaskId;
  }
}

TemplatedSample encode_blank(std::string_view text, const Vocabulary& v) {
  TemplatedSample s;
  s.input_ids = v.encode(text);
  s.labels.assign(s.input_ids.size(), kIgnoreLabel);
  s.attention_mask.assign(s.input_ids.size(), 1);
  return s;
}

TemplatedSample make_filler(std::string_view text, double rate, Rng& rng, bool dummy,
                            const Vocabulary& v) {
  TemplatedSample s = encode_blank(text, v);
  if (s.input_ids.size() < 2)
    throw SampleError("text too short to mask: " + std::to_string(s.input_ids.size()) +
                      " token(s)");
  apply_random_masking(s, rate, rng, dummy);
  s.objective = dummy ? Objective::kDummy : Objective::kMlm;
  return s;
}

}  // namespace

std::string_view objective_name(Objective o) {
  switch (o) {
    case Objective::kAtp: return "ATP";
    case Objective::kMlm: return "MLM";
    case Objective::kDummy: return "DUMMY";
  }
  throw Error("bad objective value");
}

Objective parse_objective(std::string_view name) {
  if (name == "ATP" || name == "atp") return Objective::kAtp;
  if (name == "MLM" || name == "mlm") return Objective::kMlm;
  if (name == "DUMMY" || name == "dummy") return Objective::kDummy;
  throw ConfigError("unknown objective: " + std::string(name));
}

std::size_t TemplatedSample::supervised_count() const {
  std::size_t n = 0;
  for (const std::uint32_t l : labels)
    if (l != kIgnoreLabel) ++n;
  return n;
}

void ObjectiveMixConfig::validate() const {
  if (atp_fraction < 0.0 || atp_fraction > 1.0)
    throw ConfigError("atp_fraction must be in [0, 1]");
  if (!(mlm_rate > 0.0) || !(mlm_rate < 1.0)) throw ConfigError("mlm_rate must be in (0, 1)");
  if (filler != Objective::kMlm && filler != Objective::kDummy)
    throw ConfigError("filler objective must be MLM or DUMMY");
}

TemplatedSample make_atp_sample(std::string_view text, std::string_view answer,
                                const Vocabulary& v) {
  TemplatedSample s = encode_blank(text, v);
  std::size_t mask_pos = 0;
  std::size_t mask_count = 0;
  for (std::size_t i = 0; i < s.input_ids.size(); ++i) {
    if (s.input_ids[i] == Vocabulary::kMaskId) {
      mask_pos = i;
      ++mask_count;
    }
  }
  if (mask_count != 1)
    throw SampleError("ATP text must contain exactly one mask, found " +
                      std::to_string(mask_count));
  const auto answer_id = v.single_token_id(answer);
  if (!answer_id)
    throw SampleError("ATP answer is not a single token: \"" + std::string(answer) + "\"");
  s.labels[mask_pos] = *answer_id;
  s.objective = Objective::kAtp;
  return s;
}

TemplatedSample make_mlm_sample(std::string_view text, const ObjectiveMixConfig& cfg,
                                const Vocabulary& v) {
  cfg.validate();
  Rng rng(cfg.seed);
  return make_filler(text, cfg.mlm_rate, rng, /*dummy=*/false, v);
}

TemplatedSample make_dummy_sample(std::string_view text, const ObjectiveMixConfig& cfg,
                                  const Vocabulary& v) {
  cfg.validate();
  Rng rng(cfg.seed);
  return make_filler(text, cfg.mlm_rate, rng, /*dummy=*/true, v);
}

std::vector<TemplatedSample> mix(const std::vector<ManifestRecord>& manifest,
                                 const ObjectiveMixConfig& cfg, const Vocabulary& v,
                                 MixStats* stats) {
  cfg.validate();
  std::vector<TemplatedSample> out;
  out.reserve(manifest.size());
  MixStats s;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const std::string text = render_train(manifest[i].example, v);
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    const bool atp = next_u01(rng) < cfg.atp_fraction;
    TemplatedSample sample =
        atp ? make_atp_sample(text, manifest[i].example.answer, v)
            : make_filler(text, cfg.mlm_rate, rng, cfg.filler == Objective::kDummy, v);
    s.counts[static_cast<std::size_t>(sample.objective)] += 1;
    out.push_back(std::move(sample));
  }
  if (stats) *stats = s;
  return out;
}

std::string shard_to_bytes(std::span<const TemplatedSample> samples) {
  std::string out{kShardMagic};
  for (const auto& s : samples) {
    if (s.input_ids.size() != s.labels.size())
      throw SampleError("sample ids/labels length mismatch");
    append_u32_le(out, static_cast<std::uint32_t>(s.objective));
    append_u32_le(out, static_cast<std::uint32_t>(s.input_ids.size()));
    for (const std::uint32_t id : s.input_ids) append_u32_le(out, id);
    for (const std::uint32_t l : s.labels) append_u32_le(out, l);
  }
  return out;
}

void write_shard(const std::filesystem::path& path, std::span<const TemplatedSample> samples) {
  write_file(path, shard_to_bytes(samples));
}

std::vector<TemplatedSample> read_shard(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() < kShardMagic.size() ||
      std::string_view(bytes).substr(0, kShardMagic.size()) != kShardMagic)
    throw FormatError("bad shard magic in " + path.string());
  std::size_t offset = kShardMagic.size();
  std::vector<TemplatedSample> out;
  while (offset < bytes.size()) {
    TemplatedSample s;
    const std::uint32_t obj = read_u32_le(bytes, offset);
    if (obj > 2) throw FormatError("bad objective tag in shard record");
    s.objective = static_cast<Objective>(obj);
    const std::uint32_t len = read_u32_le(bytes, offset);
    s.input_ids.resize(len);
    s.labels.resize(len);
    for (std::uint32_t i = 0; i < len; ++i) s.input_ids[i] = read_u32_le(bytes, offset);
    for (std::uint32_t i = 0; i < len; ++i) s.labels[i] = read_u32_le(bytes, offset);
    s.attention_mask.assign(len, 1);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace maskwise
