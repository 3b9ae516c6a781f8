// Copyright (c) 2026 the maskwise authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maskwise/tokenizer.hpp"

namespace maskwise {

// One source record of instruction data: pre-templated input text plus the
// expected single-token answer.
struct InstructionExample {
  std::string source_dataset;
  std::string input;
  std::string answer;
  std::vector<std::string> choices;  // empty when the record has none
};

// A multiple-choice prompt to be rendered for single-pass prediction.
struct InferenceTask {
  std::string instructions;
  std::string question;
  std::vector<std::pair<std::string, std::string>> choices;  // (label, text)
  std::string answer_slot_prefix = "ANSWER:\n\nAnswer:";
};

enum class ClassificationMode { kLetters, kDirect };

// Training template: the input text followed by the anchor + mask pair on a
// new line. The answer never appears in the rendered text; it becomes the
// supervision label. TemplateError when the answer is multi-token under `v`
// or the input already contains a mask/anchor string.
std::string render_train(const InstructionExample& example, const Vocabulary& v);

// Inference template: instructions, QUESTION, CHOICES (one "- label: text"
// line each, order preserved), then the answer slot ending in anchor + mask.
std::string render_inference(const InferenceTask& task);

// Classification as a choice prompt over class labels. kLetters lists classes
// under letter labels; kDirect lists the bare class names and expects the
// class token itself at the mask (every class name must be single-token).
std::string render_classification(std::string_view text, const std::vector<std::string>& labels,
                                  std::string_view instruction, ClassificationMode mode,
                                  const Vocabulary& v);

// Letter label for choice position i: "A", "B", ...
std::string choice_letter(std::size_t index);

}  // namespace maskwise
