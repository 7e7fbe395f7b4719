#include "htc/taxonomy.hpp"

#include <algorithm>

#include "htc/errors.hpp"
#include "htc/text.hpp"

namespace htc {

Taxonomy Taxonomy::from_rows(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) {
    throw EmptyInput("taxonomy rows are empty");
  }
  const std::size_t depth = rows.front().size();
  if (depth == 0) {
    throw RaggedRow("row 1 has no columns");
  }

  Taxonomy t;
  t.depth_ = static_cast<int>(depth);
  t.levels_.resize(depth);
  t.by_name_.resize(depth);

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != depth) {
      throw RaggedRow("row " + std::to_string(r + 1) + " has " +
                      std::to_string(row.size()) + " columns, expected " +
                      std::to_string(depth));
    }
    LabelId prev = -1;
    for (std::size_t l = 0; l < depth; ++l) {
      std::string name = normalize_name(row[l]);
      if (name.empty()) {
        throw RaggedRow("row " + std::to_string(r + 1) + " column " +
                        std::to_string(l + 1) + " is empty after normalization");
      }
      auto& names = t.by_name_[l];
      auto it = names.find(name);
      LabelId id;
      if (it == names.end()) {
        id = static_cast<LabelId>(t.labels_.size());
        t.labels_.push_back(Label{id, name, static_cast<int>(l + 1)});
        t.parent_.push_back(prev);
        t.children_.emplace_back();
        t.levels_[l].push_back(id);
        names.emplace(std::move(name), id);
        if (prev >= 0) {
          t.children_[static_cast<std::size_t>(prev)].push_back(id);
        }
      } else {
        id = it->second;
        if (t.parent_[static_cast<std::size_t>(id)] != prev) {
          const auto& existing =
              t.parent_[static_cast<std::size_t>(id)] >= 0
                  ? t.labels_[static_cast<std::size_t>(
                                  t.parent_[static_cast<std::size_t>(id)])]
                        .name
                  : std::string("<none>");
          throw ConflictingParent(
              "label '" + t.labels_[static_cast<std::size_t>(id)].name +
              "' at level " + std::to_string(l + 1) + " has parent '" +
              existing + "' but row " + std::to_string(r + 1) +
              " assigns a different one");
        }
      }
      prev = id;
    }
  }

  for (std::size_t l = 0; l < depth; ++l) {
    if (t.levels_[l].empty()) {
      throw EmptyInput("level " + std::to_string(l + 1) + " has no labels");
    }
  }
  return t;
}

void Taxonomy::check_id(LabelId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= labels_.size()) {
    throw UnknownLabel("label id " + std::to_string(id) + " is not in the taxonomy");
  }
}

const Label& Taxonomy::label(LabelId id) const {
  check_id(id);
  return labels_[static_cast<std::size_t>(id)];
}

std::optional<LabelId> Taxonomy::find(int level, std::string_view raw_name) const {
  if (level < 1 || level > depth_) {
    return std::nullopt;
  }
  const auto& names = by_name_[static_cast<std::size_t>(level - 1)];
  auto it = names.find(normalize_name(raw_name));
  if (it == names.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<LabelId> Taxonomy::parent(LabelId id) const {
  check_id(id);
  LabelId p = parent_[static_cast<std::size_t>(id)];
  if (p < 0) {
    return std::nullopt;
  }
  return p;
}

const std::vector<LabelId>& Taxonomy::children(LabelId id) const {
  check_id(id);
  return children_[static_cast<std::size_t>(id)];
}

const std::vector<LabelId>& Taxonomy::labels_at_level(int level) const {
  if (level < 1 || level > depth_) {
    throw LevelOutOfRange("level " + std::to_string(level) +
                          " outside [1, " + std::to_string(depth_) + "]");
  }
  return levels_[static_cast<std::size_t>(level - 1)];
}

bool Taxonomy::has_edge(LabelId parent_id, LabelId child_id) const {
  check_id(parent_id);
  check_id(child_id);
  return parent_[static_cast<std::size_t>(child_id)] == parent_id;
}

std::vector<std::string> Taxonomy::names(const std::vector<LabelId>& ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (LabelId id : ids) {
    out.push_back(name(id));
  }
  return out;
}

std::vector<std::vector<std::string>> Taxonomy::export_rows() const {
  std::vector<std::vector<std::string>> rows;
  const auto& leaves = levels_.back();
  rows.reserve(leaves.size());
  for (LabelId leaf : leaves) {
    std::vector<std::string> row(static_cast<std::size_t>(depth_));
    LabelId cur = leaf;
    for (int l = depth_; l >= 1; --l) {
      row[static_cast<std::size_t>(l - 1)] = name(cur);
      cur = parent_[static_cast<std::size_t>(cur)];
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace htc
