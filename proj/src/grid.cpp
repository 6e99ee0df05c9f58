#include "tlfe/grid.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>

namespace tlfe {

const char* action_name(Action a) {
  switch (a) {
    case Action::Up: return "up";
    case Action::Down: return "down";
    case Action::Right: return "right";
    case Action::Left: return "left";
    case Action::Stay: return "stay";
  }
  return "?";
}

GridMap::GridMap(int width, int height, Cell start, ObservationSet alphabet, std::vector<int> labels,
                 std::optional<std::size_t> one_way, std::vector<std::pair<char, std::string>> legend)
    : width_(width),
      height_(height),
      start_(start),
      alphabet_(std::move(alphabet)),
      labels_(std::move(labels)),
      one_way_(one_way) {
  if (width_ <= 0 || height_ <= 0) throw InputError("map dimensions must be positive");
  if (labels_.size() != static_cast<std::size_t>(width_) * height_) {
    throw InputError("label grid does not match map dimensions");
  }
  if (!contains(start_)) throw InputError("start cell lies outside the map");
  for (int l : labels_) {
    if (l != kUnlabeled && (l < 0 || static_cast<std::size_t>(l) >= alphabet_.size())) {
      throw InputError("cell label outside the alphabet");
    }
  }
  if (one_way_ && *one_way_ >= alphabet_.size()) throw InputError("one-way observation outside the alphabet");

  glyphs_.assign(alphabet_.size(), '\0');
  for (const auto& [ch, name] : legend) {
    auto idx = alphabet_.index_of(name);
    if (idx) glyphs_[*idx] = ch;
  }
  for (std::size_t i = 0; i < glyphs_.size(); ++i) {
    if (glyphs_[i] == '\0') {
      char c = static_cast<char>(alphabet_.name(i)[0] - 'a' + 'A');
      glyphs_[i] = c;
    }
  }
}

std::optional<Cell> GridMap::step(Cell from, Action a) const {
  Cell to = from;
  switch (a) {
    case Action::Up: --to.row; break;
    case Action::Down: ++to.row; break;
    case Action::Right: ++to.col; break;
    case Action::Left: --to.col; break;
    case Action::Stay: return from;
  }
  if (!contains(to)) return std::nullopt;
  if (is_one_way(from) && label(to) == kUnlabeled) return std::nullopt;
  return to;
}

char GridMap::glyph(std::size_t obs) const { return glyphs_.at(obs); }

std::vector<Cell> GridMap::neighbours(Cell c) const {
  std::vector<Cell> out;
  for (Cell n : {Cell{c.col, c.row - 1}, Cell{c.col, c.row + 1}, Cell{c.col + 1, c.row}, Cell{c.col - 1, c.row}}) {
    if (contains(n)) out.push_back(n);
  }
  return out;
}

std::string GridMap::to_text() const {
  std::ostringstream out;
  out << "map " << width_ << " " << height_ << "\n";
  out << "start " << start_.col << " " << start_.row << "\n";
  out << "legend";
  for (std::size_t i = 0; i < alphabet_.size(); ++i) out << " " << glyphs_[i] << "=" << alphabet_.name(i);
  out << "\n";
  const bool default_one_way = [&] {
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
      if (glyphs_[i] == 'L') return one_way_ == i;
    }
    return !one_way_.has_value();
  }();
  if (!default_one_way) out << "oneway " << (one_way_ ? alphabet_.name(*one_way_) : "none") << "\n";
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      int l = label({c, r});
      out << (l == kUnlabeled ? '.' : glyphs_[l]);
    }
    out << "\n";
  }
  return out.str();
}

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("map: invalid ") + what + " '" + s + "'");
  }
}

}  // namespace

GridMap load_map(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < 3) throw InputError("map: missing header lines");

  auto header = split_words(lines[0]);
  if (header.size() != 3 || header[0] != "map") throw InputError("map: expected 'map <width> <height>'");
  const int width = parse_int(header[1], "width");
  const int height = parse_int(header[2], "height");
  if (width <= 0 || height <= 0) throw InputError("map: dimensions must be positive");

  auto start_words = split_words(lines[1]);
  if (start_words.size() != 3 || start_words[0] != "start") throw InputError("map: missing start line");
  Cell start{parse_int(start_words[1], "start column"), parse_int(start_words[2], "start row")};

  auto legend_words = split_words(lines[2]);
  if (legend_words.empty() || legend_words[0] != "legend") throw InputError("map: missing legend line");
  std::vector<std::pair<char, std::string>> legend;
  std::vector<std::string> names;
  for (std::size_t i = 1; i < legend_words.size(); ++i) {
    const auto& entry = legend_words[i];
    if (entry.size() < 3 || entry[1] != '=') throw InputError("map: bad legend entry '" + entry + "'");
    if (entry[0] == '.') throw InputError("map: '.' is reserved for unlabeled cells");
    for (const auto& [ch, _] : legend) {
      if (ch == entry[0]) throw InputError("map: legend character repeated");
    }
    legend.emplace_back(entry[0], entry.substr(2));
    names.push_back(entry.substr(2));
  }
  ObservationSet alphabet(names);

  std::size_t row_begin = 3;
  std::optional<std::size_t> one_way;
  bool explicit_one_way = false;
  if (lines.size() > 3) {
    auto words = split_words(lines[3]);
    if (!words.empty() && words[0] == "oneway") {
      if (words.size() != 2) throw InputError("map: expected 'oneway <obs>|none'");
      explicit_one_way = true;
      if (words[1] != "none") {
        one_way = alphabet.index_of(words[1]);
        if (!one_way) throw InputError("map: unknown one-way observation '" + words[1] + "'");
      }
      row_begin = 4;
    }
  }
  if (!explicit_one_way) {
    for (const auto& [ch, name] : legend) {
      if (ch == 'L') one_way = alphabet.index_of(name);
    }
  }

  if (lines.size() - row_begin != static_cast<std::size_t>(height)) {
    throw InputError("map: expected " + std::to_string(height) + " grid rows, found " +
                     std::to_string(lines.size() - row_begin));
  }
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(width) * height);
  for (int r = 0; r < height; ++r) {
    const auto& row = lines[row_begin + r];
    if (row.size() != static_cast<std::size_t>(width)) {
      throw InputError("map: row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                       " characters, expected " + std::to_string(width));
    }
    for (char ch : row) {
      if (ch == '.') {
        labels.push_back(GridMap::kUnlabeled);
        continue;
      }
      auto it = std::find_if(legend.begin(), legend.end(), [&](const auto& e) { return e.first == ch; });
      if (it == legend.end()) throw InputError(std::string("map: unknown legend character '") + ch + "'");
      labels.push_back(static_cast<int>(*alphabet.index_of(it->second)));
    }
  }
  return GridMap(width, height, start, std::move(alphabet), std::move(labels), one_way, std::move(legend));
}

GridMap load_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open map file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_map(buffer.str());
}

// ---------------------------------------------------------------------------

KnownSet::KnownSet(const GridMap& map)
    : known_(map.cell_count(), false), labels_(map.cell_count(), GridMap::kUnlabeled) {}

bool KnownSet::reveal(std::size_t index, int label) {
  if (known_[index]) return false;
  known_[index] = true;
  labels_[index] = label;
  ++count_;
  return true;
}

std::vector<Cell> sense_in_place(const GridMap& map, Cell x, int h, KnownSet& known) {
  if (h < 1) throw InputError("sensing radius must be at least 1");
  if (!map.contains(x)) throw InputError("sensing position outside the map");
  if (known.capacity() != map.cell_count()) known = KnownSet(map);
  std::vector<Cell> added;
  // On an obstacle-free grid the undirected hop distance is the Manhattan distance.
  for (int r = std::max(0, x.row - h); r <= std::min(map.height() - 1, x.row + h); ++r) {
    const int span = h - std::abs(r - x.row);
    for (int c = std::max(0, x.col - span); c <= std::min(map.width() - 1, x.col + span); ++c) {
      Cell cell{c, r};
      if (known.reveal(map.index(cell), map.label(cell))) added.push_back(cell);
    }
  }
  return added;
}

KnownSet sense(const GridMap& map, Cell x, int h, const KnownSet& known) {
  KnownSet out = known;
  sense_in_place(map, x, h, out);
  return out;
}

bool is_frontier(const GridMap& map, const KnownSet& known, Cell c) {
  if (!known.is_known(map.index(c))) return false;
  for (Cell n : map.neighbours(c)) {
    if (!known.is_known(map.index(n))) return true;
  }
  return false;
}

std::vector<Cell> frontiers(const GridMap& map, const KnownSet& known) {
  std::vector<Cell> out;
  if (known.capacity() != map.cell_count()) return out;
  for (std::size_t i = 0; i < map.cell_count(); ++i) {
    if (is_frontier(map, known, map.cell(i))) out.push_back(map.cell(i));
  }
  return out;
}

std::size_t info_gain(const GridMap& map, Cell x, int h, const KnownSet& known) {
  std::size_t count = 0;
  for (int r = std::max(0, x.row - h); r <= std::min(map.height() - 1, x.row + h); ++r) {
    const int span = h - std::abs(r - x.row);
    for (int c = std::max(0, x.col - span); c <= std::min(map.width() - 1, x.col + span); ++c) {
      if (!known.is_known(map.index({c, r}))) ++count;
    }
  }
  return count;
}

// ---------------------------------------------------------------------------

namespace {

// Uniform integer in [0, n) from a raw 64-bit engine. std::uniform_int_distribution
// is implementation defined, which would make generated suites differ across
// standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

std::vector<bool> flood(const GridMap& map, const std::vector<Cell>& sources, auto passable) {
  std::vector<bool> seen(map.cell_count(), false);
  std::deque<Cell> queue;
  for (Cell s : sources) {
    if (!passable(s) || seen[map.index(s)]) continue;
    seen[map.index(s)] = true;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    Cell c = queue.front();
    queue.pop_front();
    for (Cell n : map.neighbours(c)) {
      if (!seen[map.index(n)] && passable(n)) {
        seen[map.index(n)] = true;
        queue.push_back(n);
      }
    }
  }
  return seen;
}

}  // namespace

bool has_safe_route(const GridMap& map, int block_size, const std::vector<Cell>& block_origins) {
  const auto l = map.alphabet().index_of("l");
  const auto p = map.alphabet().index_of("p");
  const auto s = map.alphabet().index_of("s");
  if (!p || !s) return false;
  auto in_block = [&](Cell c) {
    return std::any_of(block_origins.begin(), block_origins.end(), [&](Cell o) {
      return c.col >= o.col && c.col < o.col + block_size && c.row >= o.row && c.row < o.row + block_size;
    });
  };
  auto is = [&](Cell c, std::optional<std::size_t> obs) { return obs && map.label(c) == static_cast<int>(*obs); };

  auto before_person = flood(map, {map.start()}, [&](Cell c) { return !is(c, l) && !is(c, s); });
  std::vector<Cell> people;
  for (std::size_t i = 0; i < map.cell_count(); ++i) {
    Cell c = map.cell(i);
    if (is(c, p) && !in_block(c) && before_person[i]) people.push_back(c);
  }
  if (people.empty()) return false;
  auto after_person = flood(map, people, [&](Cell c) { return !is(c, l); });
  for (std::size_t i = 0; i < map.cell_count(); ++i) {
    Cell c = map.cell(i);
    if (is(c, s) && !in_block(c) && after_person[i]) return true;
  }
  return false;
}

GridMap random_map(int size, int n_blocks, std::uint64_t seed, const RandomMapOptions& options) {
  if (size < 10) throw InputError("random maps need size >= 10");
  if (n_blocks < 0) throw InputError("block count must be non-negative");
  if (options.block_size > size) throw InputError("block larger than the map");

  const ObservationSet alphabet({"l", "p", "s"});
  const int l = 0, p = 1, s = 2;
  const Cell start{0, 0};
  const std::uint64_t cells = static_cast<std::uint64_t>(size) * size;
  std::mt19937_64 rng(seed);

  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    std::vector<int> labels(cells, GridMap::kUnlabeled);
    std::vector<Cell> origins;
    const auto span = static_cast<std::uint64_t>(size - options.block_size + 1);
    for (int b = 0; b < n_blocks; ++b) {
      Cell o{static_cast<int>(draw(rng, span)), static_cast<int>(draw(rng, span))};
      origins.push_back(o);
      for (int r = o.row; r < o.row + options.block_size; ++r) {
        for (int c = o.col; c < o.col + options.block_size; ++c) labels[static_cast<std::size_t>(r) * size + c] = l;
      }
    }
    std::vector<std::uint64_t> taken{static_cast<std::uint64_t>(start.row) * size + start.col};
    auto place = [&](int obs, int count) {
      for (int k = 0; k < count; ++k) {
        std::uint64_t idx;
        do {
          idx = draw(rng, cells);
        } while (std::find(taken.begin(), taken.end(), idx) != taken.end());
        taken.push_back(idx);
        labels[idx] = obs;
      }
    };
    place(p, options.person_cells);
    place(s, options.exit_cells);

    GridMap map(size, size, start, alphabet, std::move(labels), static_cast<std::size_t>(l),
                {{'L', "l"}, {'P', "p"}, {'S', "s"}});
    if (has_safe_route(map, options.block_size, origins)) return map;
  }
  throw CapacityError("random_map: no valid map for seed " + std::to_string(seed) + " after " +
                      std::to_string(options.max_attempts) + " attempts");
}

}  // namespace tlfe
