// Copyright (c) 2026 the maskwise authors
// SPDX-License-Identifier: Apache-2.0
#include "maskwise/templating.hpp"

#include <unordered_set>

namespace maskwise {

namespace {

void reject_reserved(std::string_view text, std::string_view what) {
  if (text.find(Vocabulary::kMaskToken) != std::string_view::npos ||
      text.find(Vocabulary::kAnchorToken) != std::string_view::npos)
    throw TemplateError(std::string(what) + " already contains a mask or anchor string");
}

constexpr std::string_view kAnchorMaskTail = "[ANS] [MASK]";

}  // namespace

std::string choice_letter(std::size_t index) {
  if (index >= 26) throw TemplateError("choice index beyond letter verbalizers: " +
                                       std::to_string(index));
  return std::string(1, static_cast<char>('A' + index));
}

std::string render_train(const InstructionExample& example, const Vocabulary& v) {
  reject_reserved(example.input, "training input");
  if (!v.is_single_token(example.answer))
    throw TemplateError("answer is not a single token under the active vocabulary: \"" +
                        example.answer + "\"");
  std::string out = example.input;
  out += '\n';
  out += kAnchorMaskTail;
  return out;
}

std::string render_inference(const InferenceTask& task) {
  if (task.choices.empty()) throw TemplateError("inference task has no choices");
  std::unordered_set<std::string_view> seen;
  for (const auto& [label, text] : task.choices) {
    if (!seen.insert(label).second)
      throw TemplateError("duplicate choice label: " + label);
    reject_reserved(text, "choice text");
  }
  reject_reserved(task.instructions, "instructions");
  reject_reserved(task.question, "question");

  std::string out = task.instructions;
  out += "\n\nQUESTION: ";
  out += task.question;
  out += "\n\nCHOICES:";
  for (const auto& [label, text] : task.choices) {
    out += "\n- ";
    out += label;
    out += ": ";
    out += text;
  }
  out += "\n\n";
  out += task.answer_slot_prefix;
  out += ' ';
  out += kAnchorMaskTail;
  return out;
}

std::string render_classification(std::string_view text, const std::vector<std::string>& labels,
                                  std::string_view instruction, ClassificationMode mode,
                                  const Vocabulary& v) {
  if (labels.empty()) throw TemplateError("classification task has no labels");
  reject_reserved(text, "document");
  reject_reserved(instruction, "instructions");

  std::string out{instruction};
  out += "\n\nQUESTION: ";
  out += text;
  out += "\n\nCHOICES:";
  if (mode == ClassificationMode::kLetters) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      reject_reserved(labels[i], "label");
      out += "\n- " + choice_letter(i) + ": " + labels[i];
    }
  } else {
    for (const auto& label : labels) {
      reject_reserved(label, "label");
      if (!v.is_single_token(label))
        throw TemplateError("direct verbalizer is not a single token: \"" + label + "\"");
      out += "\n- " + label;
    }
  }
  out += "\n\nANSWER:\n\nAnswer: ";
  out += kAnchorMaskTail;
  return out;
}

}  // namespace maskwise
