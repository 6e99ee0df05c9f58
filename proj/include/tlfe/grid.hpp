#ifndef TLFE_GRID_HPP
#define TLFE_GRID_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tlfe/observation.hpp"

namespace tlfe {

struct Cell {
  int col = 0;
  int row = 0;

  // Row-major order; used for every deterministic tie-break.
  auto operator<=>(const Cell& o) const {
    if (auto c = row <=> o.row; c != 0) return c;
    return col <=> o.col;
  }
  bool operator==(const Cell&) const = default;
};

inline int manhattan(Cell a, Cell b) { return std::abs(a.col - b.col) + std::abs(a.row - b.row); }

enum class Action : std::uint8_t { Up, Down, Right, Left, Stay };

inline constexpr std::array<Action, 4> kMoves{Action::Up, Action::Down, Action::Right, Action::Left};
inline constexpr std::array<Action, 5> kActions{Action::Up, Action::Down, Action::Right, Action::Left,
                                                Action::Stay};

const char* action_name(Action a);

/// Labeled 4-connected grid. Each cell carries at most one observation.
///
/// Moves are deterministic; moving off the grid is undefined. Cells labeled
/// with the one-way observation form lower-level regions: a move from such a
/// cell onto an unlabeled cell does not exist, while entering them is always
/// possible. All transitions have unit weight.
class GridMap {
 public:
  static constexpr int kUnlabeled = -1;

  GridMap(int width, int height, Cell start, ObservationSet alphabet, std::vector<int> labels,
          std::optional<std::size_t> one_way = std::nullopt,
          std::vector<std::pair<char, std::string>> legend = {});

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t cell_count() const { return labels_.size(); }
  Cell start() const { return start_; }
  const ObservationSet& alphabet() const { return alphabet_; }
  std::optional<std::size_t> one_way() const { return one_way_; }

  bool contains(Cell c) const { return c.col >= 0 && c.row >= 0 && c.col < width_ && c.row < height_; }
  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.row) * width_ + c.col; }
  Cell cell(std::size_t index) const {
    return {static_cast<int>(index % width_), static_cast<int>(index / width_)};
  }

  /// Observation index at `c`, or kUnlabeled.
  int label(Cell c) const { return labels_[index(c)]; }
  Letter letter(Cell c) const {
    int l = label(c);
    return l == kUnlabeled ? Letter{} : Letter::single(static_cast<std::size_t>(l));
  }
  bool is_one_way(Cell c) const { return one_way_ && label(c) == static_cast<int>(*one_way_); }

  /// δ(x, σ); nullopt when the transition does not exist.
  std::optional<Cell> step(Cell from, Action a) const;
  int weight(Cell, Action) const { return 1; }

  /// Character used for an observation in text maps and renderings.
  char glyph(std::size_t obs) const;

  /// Undirected 4-neighbours inside the grid.
  std::vector<Cell> neighbours(Cell c) const;

  std::string to_text() const;

 private:
  int width_;
  int height_;
  Cell start_;
  ObservationSet alphabet_;
  std::vector<int> labels_;
  std::optional<std::size_t> one_way_;
  std::vector<char> glyphs_;
};

/// Map text format:
///   map <width> <height>
///   start <col> <row>
///   legend <char>=<obs> ...        ('.' is reserved for unlabeled cells)
///   [oneway <obs>|none]            (optional; defaults to the obs of 'L')
///   <height rows of width characters>
GridMap load_map(std::string_view text);
GridMap load_map_file(const std::string& path);

/// Cells whose labels have been revealed (X_k) together with those labels.
class KnownSet {
 public:
  KnownSet() = default;
  explicit KnownSet(const GridMap& map);

  bool is_known(std::size_t index) const { return !known_.empty() && known_[index]; }
  std::size_t count() const { return count_; }
  std::size_t capacity() const { return known_.size(); }
  /// Revealed label, only meaningful for known cells.
  int revealed_label(std::size_t index) const { return labels_[index]; }

  /// Marks a cell known with its observed label; returns false if it already was.
  bool reveal(std::size_t index, int label);

  bool operator==(const KnownSet&) const = default;

 private:
  std::vector<bool> known_;
  std::vector<int> labels_;
  std::size_t count_ = 0;
};

/// Reveals every cell within `h` undirected hops of `x`. Returns the cells
/// that were newly revealed, in row-major order.
std::vector<Cell> sense_in_place(const GridMap& map, Cell x, int h, KnownSet& known);
KnownSet sense(const GridMap& map, Cell x, int h, const KnownSet& known);

bool is_frontier(const GridMap& map, const KnownSet& known, Cell c);
/// Known cells with at least one unknown undirected neighbour, row-major.
std::vector<Cell> frontiers(const GridMap& map, const KnownSet& known);

/// Number of unknown cells within `h` hops of `x`.
std::size_t info_gain(const GridMap& map, Cell x, int h, const KnownSet& known);

struct RandomMapOptions {
  int block_size = 5;
  int person_cells = 2;
  int exit_cells = 2;
  int max_attempts = 10000;
};

/// Random benchmark map with alphabet {l, p, s}: `n_blocks` one-way blocks
/// labeled l fully inside the grid (overlap allowed), two p cells and two s
/// cells on distinct non-start cells. Start is the top-left corner. Samples
/// are rejected until some p and some s lie outside every block, the p is
/// reachable from start without touching l or s cells, and the s is
/// reachable from that p without touching l cells.
GridMap random_map(int size, int n_blocks, std::uint64_t seed, const RandomMapOptions& options = {});

/// The acceptance condition enforced by `random_map`.
bool has_safe_route(const GridMap& map, int block_size, const std::vector<Cell>& block_origins);

}  // namespace tlfe

#endif  // TLFE_GRID_HPP
