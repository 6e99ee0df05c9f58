#ifndef TLFE_OBSERVATION_HPP
#define TLFE_OBSERVATION_HPP

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tlfe/error.hpp"

namespace tlfe {

/// Largest observation set we accept; the alphabet 2^O is enumerated eagerly.
inline constexpr std::size_t kMaxObservations = 12;

/// A letter of 2^O encoded as a bitmask over the ordered observation set.
struct Letter {
  std::uint32_t bits = 0;

  bool contains(std::size_t obs) const { return (bits >> obs) & 1u; }
  int size() const { return __builtin_popcount(bits); }

  static Letter empty() { return {}; }
  static Letter single(std::size_t obs) { return Letter{1u << obs}; }

  auto operator<=>(const Letter&) const = default;
};

/// Ordered, duplicate-free set of observation names. Members are kept sorted
/// lexicographically so that letter encodings are canonical.
class ObservationSet {
 public:
  ObservationSet() = default;
  explicit ObservationSet(std::vector<std::string> names);
  ObservationSet(std::initializer_list<std::string> names)
      : ObservationSet(std::vector<std::string>(names)) {}

  /// Parses a comma separated list such as "a,b,c".
  static ObservationSet from_csv(std::string_view csv);

  static bool is_valid_name(std::string_view name);

  std::size_t size() const { return names_.size(); }
  std::size_t letter_count() const { return std::size_t{1} << names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t index) const { return names_.at(index); }

  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Builds a letter from observation names; throws on unknown names.
  Letter letter(std::span<const std::string> names) const;
  Letter letter(std::initializer_list<std::string> names) const {
    return letter(std::span<const std::string>(names.begin(), names.size()));
  }
  std::vector<std::string> letter_names(Letter l) const;
  std::string format(Letter l) const;

  bool operator==(const ObservationSet&) const = default;

 private:
  std::vector<std::string> names_;
};

}  // namespace tlfe

#endif  // TLFE_OBSERVATION_HPP
