#include "tlfe/observation.hpp"

#include <algorithm>

namespace tlfe {

ParseError::ParseError(const std::string& message, std::size_t position)
    : InputError(message), position_(position) {}

ObservationSet::ObservationSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (const auto& n : names_) {
    if (!is_valid_name(n)) throw InputError("invalid observation name '" + n + "'");
  }
  std::sort(names_.begin(), names_.end());
  if (std::adjacent_find(names_.begin(), names_.end()) != names_.end()) {
    throw InputError("duplicate observation name");
  }
  if (names_.size() > kMaxObservations) {
    throw CapacityError("at most " + std::to_string(kMaxObservations) + " observations are supported");
  }
}

ObservationSet ObservationSet::from_csv(std::string_view csv) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    auto comma = csv.find(',', pos);
    if (comma == std::string_view::npos) comma = csv.size();
    std::string item(csv.substr(pos, comma - pos));
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(std::move(item));
    pos = comma + 1;
  }
  return ObservationSet(std::move(out));
}

bool ObservationSet::is_valid_name(std::string_view name) {
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  if (name == "true" || name == "false") return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::optional<std::size_t> ObservationSet::index_of(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

Letter ObservationSet::letter(std::span<const std::string> names) const {
  Letter l;
  for (const auto& n : names) {
    auto idx = index_of(n);
    if (!idx) throw InputError("unknown observation '" + n + "'");
    l.bits |= 1u << *idx;
  }
  return l;
}

std::vector<std::string> ObservationSet::letter_names(Letter l) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (l.contains(i)) out.push_back(names_[i]);
  }
  return out;
}

std::string ObservationSet::format(Letter l) const {
  std::string out = "{";
  bool first = true;
  for (const auto& n : letter_names(l)) {
    if (!first) out += ",";
    out += n;
    first = false;
  }
  return out + "}";
}

}  // namespace tlfe
