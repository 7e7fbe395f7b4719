#include "htc/prompt.hpp"

#include "htc/errors.hpp"

namespace htc {

std::string fill_placeholder(std::string text, const std::string& placeholder,
                             const std::string& value) {
  const std::string needle = "{" + placeholder + "}";
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    text.replace(pos, needle.size(), value);
    pos += value.size();
  }
  return text;
}

PromptBundle build_prompt(const PromptTemplate& tmpl,
                          const std::string& task_description,
                          const std::vector<LabelId>& candidates,
                          const Taxonomy& taxonomy, const std::string& knowledge) {
  if (candidates.empty()) {
    throw NoCandidates("cannot build a classification prompt without candidates");
  }
  std::string category_text;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (i > 0) {
      category_text += ", ";
    }
    category_text += taxonomy.name(candidates[i]);
  }

  std::string text = fill_placeholder(tmpl.classify_part, "task_description",
                                      task_description);
  text = fill_placeholder(std::move(text), "category_text", category_text);
  if (!knowledge.empty()) {
    text += fill_placeholder(tmpl.knowledge_part, "knowledge", knowledge);
  }

  PromptBundle bundle;
  bundle.text = std::move(text);
  bundle.candidates = candidates;
  bundle.knowledge = knowledge;
  return bundle;
}

}  // namespace htc
