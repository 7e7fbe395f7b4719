#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace htc {

using LabelId = int;

struct Label {
  LabelId id = -1;
  std::string name;  // normalized
  int level = 0;     // 1-based
};

// Leveled rooted forest of labels. Every label at level l > 1 has exactly one
// parent at level l-1; names are unique within a level. Immutable once built,
// so concurrent readers need no locking.
class Taxonomy {
 public:
  // rows: one full root-to-leaf path per row, columns level 1..L.
  // Names are normalized; duplicate rows and shared prefixes deduplicate.
  static Taxonomy from_rows(const std::vector<std::vector<std::string>>& rows);

  int depth() const { return depth_; }
  std::size_t size() const { return labels_.size(); }

  const Label& label(LabelId id) const;
  std::optional<LabelId> find(int level, std::string_view raw_name) const;

  // Parent of a level-1 label is empty.
  std::optional<LabelId> parent(LabelId id) const;
  // Children in ascending id order; empty for level-L labels.
  const std::vector<LabelId>& children(LabelId id) const;
  // All of C^l in ascending id order. Throws LevelOutOfRange.
  const std::vector<LabelId>& labels_at_level(int level) const;

  bool has_edge(LabelId parent_id, LabelId child_id) const;

  const std::string& name(LabelId id) const { return label(id).name; }
  std::vector<std::string> names(const std::vector<LabelId>& ids) const;

  // Root-to-leaf name rows, one per leaf. Inverse of from_rows up to
  // row order and duplicates.
  std::vector<std::vector<std::string>> export_rows() const;

 private:
  Taxonomy() = default;
  void check_id(LabelId id) const;

  int depth_ = 0;
  std::vector<Label> labels_;
  std::vector<LabelId> parent_;                // -1 at level 1
  std::vector<std::vector<LabelId>> children_;
  std::vector<std::vector<LabelId>> levels_;   // [level-1] -> ids
  std::vector<std::unordered_map<std::string, LabelId>> by_name_;  // per level
};

}  // namespace htc
