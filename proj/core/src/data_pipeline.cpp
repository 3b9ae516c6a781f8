// Copyright (c) 2026 the maskwise authors
// SPDX-License-Identifier: Apache-2.0
#include "maskwise/data_pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "json.hpp"

namespace maskwise {

namespace {

using nlohmann::json;

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\v\f") == std::string_view::npos;
}

bool parse_record(const std::string& line, std::uint64_t line_no, ManifestRecord& out) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return false;
  if (!j.contains("source_dataset") || !j["source_dataset"].is_string()) return false;
  if (!j.contains("input") || !j["input"].is_string()) return false;
  if (!j.contains("answer") || !j["answer"].is_string()) return false;
  InstructionExample ex;
  ex.source_dataset = j["source_dataset"].get<std::string>();
  ex.input = j["input"].get<std::string>();
  ex.answer = j["answer"].get<std::string>();
  if (blank(ex.input) || blank(ex.answer)) return false;
  if (j.contains("choices")) {
    if (!j["choices"].is_array()) return false;
    for (const auto& c : j["choices"]) {
      if (!c.is_string()) return false;
      ex.choices.push_back(c.get<std::string>());
    }
  }
  out.example = std::move(ex);
  out.line_no = line_no;
  out.split = "train";
  return true;
}

json record_to_json(const ManifestRecord& r) {
  json j;
  j["source_dataset"] = r.example.source_dataset;
  j["input"] = r.example.input;
  j["answer"] = r.example.answer;
  if (!r.example.choices.empty()) j["choices"] = r.example.choices;
  j["provenance"] = {{"source_dataset", r.example.source_dataset}, {"line", r.line_no}};
  j["split"] = r.split;
  return j;
}

}  // namespace

FilterConfig default_filter_config() {
  FilterConfig cfg;
  cfg.heldout_datasets = {"mmlu", "bbh", "adev2", "nis", "ose"};
  cfg.per_dataset_cap = 2048;
  return cfg;
}

IngestResult ingest(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  IngestResult result;
  std::uint64_t line_no = 0;
  for (const auto& line : lines) {
    ++line_no;
    if (blank(line)) continue;
    ++result.total_lines;
    ManifestRecord rec;
    if (parse_record(line, line_no, rec)) {
      result.records.push_back(std::move(rec));
    } else {
      ++result.malformed;
    }
  }
  if (result.total_lines > 0 &&
      static_cast<double>(result.malformed) > 0.10 * static_cast<double>(result.total_lines))
    throw FormatError("more than 10% malformed lines in " + path.string() + " (" +
                      std::to_string(result.malformed) + "/" +
                      std::to_string(result.total_lines) + ")");
  return result;
}

std::vector<ManifestRecord> filter_single_token(std::vector<ManifestRecord> records,
                                                const Vocabulary& v) {
  std::vector<ManifestRecord> out;
  out.reserve(records.size());
  for (auto& r : records)
    if (v.is_single_token(r.example.answer)) out.push_back(std::move(r));
  return out;
}

std::vector<ManifestRecord> exclude_heldout(std::vector<ManifestRecord> records,
                                            const FilterConfig& cfg) {
  std::set<std::string> heldout;
  for (const auto& tag : cfg.heldout_datasets) heldout.insert(lower_ascii(tag));
  std::vector<ManifestRecord> out;
  out.reserve(records.size());
  for (auto& r : records)
    if (!heldout.contains(lower_ascii(r.example.source_dataset))) out.push_back(std::move(r));
  return out;
}

std::vector<ManifestRecord> downsample(std::vector<ManifestRecord> records,
                                       const FilterConfig& cfg) {
  if (cfg.per_dataset_cap < 1) throw ConfigError("per_dataset_cap must be >= 1");
  std::sort(records.begin(), records.end(),
            [](const ManifestRecord& a, const ManifestRecord& b) { return a.line_no < b.line_no; });

  std::map<std::string, std::vector<std::size_t>> by_tag;
  for (std::size_t i = 0; i < records.size(); ++i)
    by_tag[lower_ascii(records[i].example.source_dataset)].push_back(i);

  std::vector<std::size_t> kept;
  for (const auto& [tag, indices] : by_tag) {
    if (indices.size() <= cfg.per_dataset_cap) {
      kept.insert(kept.end(), indices.begin(), indices.end());
      continue;
    }
    std::vector<std::size_t> pool = indices;
    Rng rng(derive_seed(cfg.seed, tag));
    shuffle_seeded(pool, rng);
    pool.resize(cfg.per_dataset_cap);
    kept.insert(kept.end(), pool.begin(), pool.end());
  }

  std::sort(kept.begin(), kept.end());
  std::vector<ManifestRecord> out;
  out.reserve(kept.size());
  for (const std::size_t i : kept) out.push_back(std::move(records[i]));
  Rng rng(cfg.seed);
  shuffle_seeded(out, rng);
  return out;
}

std::vector<ManifestRecord> run_pipeline(const std::filesystem::path& path, const Vocabulary& v,
                                         const FilterConfig& cfg, PipelineStats* stats) {
  IngestResult in = ingest(path);
  PipelineStats s;
  s.ingested = in.records.size();
  s.malformed = in.malformed;
  auto records = filter_single_token(std::move(in.records), v);
  s.after_single_token = records.size();
  records = exclude_heldout(std::move(records), cfg);
  s.after_heldout = records.size();
  records = downsample(std::move(records), cfg);
  s.final_count = records.size();
  if (stats) *stats = s;
  return records;
}

std::string manifest_to_jsonl(const std::vector<ManifestRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += record_to_json(r).dump();
    out += '\n';
  }
  return out;
}

void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRecord>& records) {
  write_file(path, manifest_to_jsonl(records));
}

std::vector<ManifestRecord> read_manifest(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  std::vector<ManifestRecord> out;
  std::uint64_t line_no = 0;
  for (const auto& line : lines) {
    ++line_no;
    if (blank(line)) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw FormatError("bad manifest line " + std::to_string(line_no));
    ManifestRecord rec;
    if (!parse_record(line, line_no, rec))
      throw FormatError("bad manifest record at line " + std::to_string(line_no));
    if (j.contains("provenance") && j["provenance"].contains("line"))
      rec.line_no = j["provenance"]["line"].get<std::uint64_t>();
    if (j.contains("split") && j["split"].is_string()) rec.split = j["split"].get<std::string>();
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace maskwise
