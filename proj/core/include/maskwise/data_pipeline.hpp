// Copyright (c) 2026 the maskwise authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "maskwise/templating.hpp"
#include "maskwise/tokenizer.hpp"

namespace maskwise {

// Instruction record plus provenance, as carried through the pipeline and
// into the training manifest.
struct ManifestRecord {
  InstructionExample example;
  std::uint64_t line_no = 0;  // 1-based line in the source file
  std::string split = "train";
};

struct FilterConfig {
  std::set<std::string> heldout_datasets;  // matched case-insensitively
  std::size_t per_dataset_cap = 2048;
  std::uint64_t seed = 0;
};

// Held-out defaults: the knowledge benchmarks plus the classification tasks
// the eval harness uses downstream.
FilterConfig default_filter_config();

struct IngestResult {
  std::vector<ManifestRecord> records;
  std::size_t malformed = 0;
  std::size_t total_lines = 0;  // non-blank lines seen
};

// Reads JSON-lines records {source_dataset, input, answer, choices?} in file
// order. Malformed lines are counted and skipped; IoError if the file cannot
// be read, FormatError when more than 10% of lines are malformed.
IngestResult ingest(const std::filesystem::path& path);

// Keeps records whose answer is a single token; order preserved.
std::vector<ManifestRecord> filter_single_token(std::vector<ManifestRecord> records,
                                                const Vocabulary& v);

// Drops records whose source_dataset is held out (case-insensitive match).
std::vector<ManifestRecord> exclude_heldout(std::vector<ManifestRecord> records,
                                            const FilterConfig& cfg);

// Per-dataset cap via seeded sampling without replacement (one stream per
// dataset tag, seeded from hash(seed, tag)), then a seeded global shuffle.
// Records are ordered by provenance before shuffling, so the result does not
// depend on upstream ordering quirks.
std::vector<ManifestRecord> downsample(std::vector<ManifestRecord> records,
                                       const FilterConfig& cfg);

struct PipelineStats {
  std::size_t ingested = 0;
  std::size_t malformed = 0;
  std::size_t after_single_token = 0;
  std::size_t after_heldout = 0;
  std::size_t final_count = 0;
};

// ingest -> single-token filter -> held-out exclusion -> downsample.
std::vector<ManifestRecord> run_pipeline(const std::filesystem::path& path, const Vocabulary& v,
                                         const FilterConfig& cfg, PipelineStats* stats = nullptr);

std::string manifest_to_jsonl(const std::vector<ManifestRecord>& records);
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRecord>& records);
std::vector<ManifestRecord> read_manifest(const std::filesystem::path& path);

}  // namespace maskwise
