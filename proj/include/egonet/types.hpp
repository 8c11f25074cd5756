#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace egonet {

/// Canonical person identifier (post alias resolution). Ordering of ids is
/// the canonical node order used by every algorithm in the library.
struct PersonId {
  std::string value;

  PersonId() = default;
  explicit PersonId(std::string v) : value(std::move(v)) {}

  auto operator<=>(const PersonId&) const = default;
  bool operator==(const PersonId&) const = default;
};

struct PersonAttributes {
  std::string gender;
  std::set<std::string> projects;
  std::set<std::string> role_tags;
  bool is_respondent = false;

  bool operator==(const PersonAttributes&) const = default;
};

/// Relationship categories and provenance flags carried by a tie.
struct TieLabelSet {
  bool family = false;
  bool friend_ = false;
  bool coworker = false;
  bool other = false;
  bool from_project = false;
  bool pre_existing = false;

  bool empty() const {
    return !(family || friend_ || coworker || other || from_project ||
             pre_existing);
  }
  bool conflicting() const { return from_project && pre_existing; }

  TieLabelSet& operator|=(const TieLabelSet& o) {
    family |= o.family;
    friend_ |= o.friend_;
    coworker |= o.coworker;
    other |= o.other;
    from_project |= o.from_project;
    pre_existing |= o.pre_existing;
    return *this;
  }
  friend TieLabelSet operator|(TieLabelSet a, const TieLabelSet& b) {
    return a |= b;
  }
  bool intersects(const TieLabelSet& o) const {
    return (family && o.family) || (friend_ && o.friend_) ||
           (coworker && o.coworker) || (other && o.other) ||
           (from_project && o.from_project) || (pre_existing && o.pre_existing);
  }

  bool operator==(const TieLabelSet&) const = default;
};

/// Fixed label order used by every serialisation (edge-csv column order).
inline constexpr std::string_view kLabelNames[] = {
    "family", "friend", "coworker", "other", "from_project", "pre_existing"};

inline bool label_flag(const TieLabelSet& s, std::size_t i) {
  switch (i) {
    case 0: return s.family;
    case 1: return s.friend_;
    case 2: return s.coworker;
    case 3: return s.other;
    case 4: return s.from_project;
    default: return s.pre_existing;
  }
}

inline void set_label_flag(TieLabelSet& s, std::size_t i, bool v) {
  switch (i) {
    case 0: s.family = v; break;
    case 1: s.friend_ = v; break;
    case 2: s.coworker = v; break;
    case 3: s.other = v; break;
    case 4: s.from_project = v; break;
    default: s.pre_existing = v; break;
  }
}

inline TieLabelSet make_labels(std::initializer_list<std::string_view> names) {
  TieLabelSet s;
  for (auto n : names) {
    std::size_t i = 0;
    while (i < std::size(kLabelNames) && kLabelNames[i] != n) ++i;
    if (i == std::size(kLabelNames)) {
      throw std::invalid_argument("unknown tie label: " + std::string(n));
    }
    set_label_flag(s, i, true);
  }
  return s;
}

}  // namespace egonet
