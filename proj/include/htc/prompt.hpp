#pragma once

#include <string>
#include <vector>

#include "htc/taxonomy.hpp"

namespace htc {

// The classification template with {task_description} and {category_text}
// placeholders, plus the knowledge section appended when a knowledge block is
// present ({knowledge} placeholder). Defaults are the exact strings the
// classifier was tuned with; both parts can be overridden from config.
struct PromptTemplate {
  std::string classify_part =
      "Classify {task_description} into one of the following categories: "
      "{category_text}. You must directly output one of the categories and do "
      "not add \", ', and *.";
  std::string knowledge_part =
      "\n\nHere is the partial knowledge graph: \n\"\"\"\n{knowledge}\n\"\"\"";
};

struct PromptBundle {
  std::string text;                  // filled template (the system message)
  std::vector<LabelId> candidates;   // offered labels, in prompt order
  std::string knowledge;             // serialized paths, possibly empty
};

// Joins candidate names with ", " and fills the template. An empty knowledge
// block drops the whole knowledge section. Throws NoCandidates.
PromptBundle build_prompt(const PromptTemplate& tmpl,
                          const std::string& task_description,
                          const std::vector<LabelId>& candidates,
                          const Taxonomy& taxonomy, const std::string& knowledge);

// In-place "{placeholder}" substitution helper (every occurrence).
std::string fill_placeholder(std::string text, const std::string& placeholder,
                             const std::string& value);

}  // namespace htc
