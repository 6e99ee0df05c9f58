#include "tlfe/render.hpp"

#include <sstream>

namespace tlfe {

RenderFormat parse_render_format(const std::string& name) {
  if (name == "ascii") return RenderFormat::Ascii;
  if (name == "svg") return RenderFormat::Svg;
  throw InputError("unsupported render format '" + name + "'");
}

namespace {

std::vector<bool> known_at(const GridMap& map, const Timeline& timeline, std::size_t t) {
  std::vector<bool> known(map.cell_count(), false);
  for (std::size_t i = 0; i <= t && i < timeline.revealed.size(); ++i) {
    for (Cell c : timeline.revealed[i]) known[map.index(c)] = true;
  }
  return known;
}

void check_bounds(const GridMap& map, const Timeline& timeline) {
  for (Cell c : timeline.trajectory) {
    if (!map.contains(c)) throw InputError("trajectory leaves the map");
  }
}

const char* fill_for(const GridMap& map, int label) {
  if (label == GridMap::kUnlabeled) return "#ffffff";
  switch (map.glyph(static_cast<std::size_t>(label))) {
    case 'L': return "#f2d43a";
    case 'P': return "#3aa655";
    case 'S': return "#3a6fd8";
    default: return "#c77dd1";
  }
}

}  // namespace

std::string render_ascii_frame(const GridMap& map, const Timeline& timeline, std::size_t t) {
  check_bounds(map, timeline);
  if (!timeline.trajectory.empty() && t > timeline.last_step()) throw InputError("render step beyond trajectory");
  const auto known = known_at(map, timeline, t);
  std::vector<char> grid(map.cell_count());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    int l = map.label(map.cell(i));
    grid[i] = !known[i] ? '?' : l == GridMap::kUnlabeled ? '.' : map.glyph(static_cast<std::size_t>(l));
  }
  if (!timeline.trajectory.empty()) {
    for (std::size_t i = 0; i < t; ++i) grid[map.index(timeline.trajectory[i])] = '*';
    grid[map.index(timeline.trajectory[t])] = '@';
  }
  std::string out;
  for (int r = 0; r < map.height(); ++r) {
    out.append(grid.begin() + static_cast<std::ptrdiff_t>(r) * map.width(),
               grid.begin() + static_cast<std::ptrdiff_t>(r + 1) * map.width());
    out += '\n';
  }
  return out;
}

std::string render_svg(const GridMap& map, const Timeline& timeline) {
  check_bounds(map, timeline);
  constexpr int kCell = 20;
  const auto known = known_at(map, timeline, timeline.last_step());
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << map.width() * kCell << "\" height=\""
      << map.height() * kCell << "\" viewBox=\"0 0 " << map.width() * kCell << " " << map.height() * kCell
      << "\">\n";
  for (std::size_t i = 0; i < map.cell_count(); ++i) {
    const Cell c = map.cell(i);
    const char* fill = known[i] ? fill_for(map, map.label(c)) : "#9a9a9a";
    out << "<rect x=\"" << c.col * kCell << "\" y=\"" << c.row * kCell << "\" width=\"" << kCell << "\" height=\""
        << kCell << "\" fill=\"" << fill << "\" stroke=\"#444\" stroke-width=\"0.5\"/>\n";
  }
  if (!timeline.trajectory.empty()) {
    out << "<polyline fill=\"none\" stroke=\"#000\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < timeline.trajectory.size(); ++i) {
      const Cell c = timeline.trajectory[i];
      out << (i ? " " : "") << c.col * kCell + kCell / 2 << "," << c.row * kCell + kCell / 2;
    }
    out << "\"/>\n";
    const Cell s = timeline.trajectory.front();
    out << "<circle cx=\"" << s.col * kCell + kCell / 2 << "\" cy=\"" << s.row * kCell + kCell / 2
        << "\" r=\"6\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    const Cell e = timeline.trajectory.back();
    out << "<circle cx=\"" << e.col * kCell + kCell / 2 << "\" cy=\"" << e.row * kCell + kCell / 2
        << "\" r=\"4\" fill=\"#000\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_trajectory(const GridMap& map, const Timeline& timeline, RenderFormat format,
                              std::span<const std::size_t> steps) {
  if (format == RenderFormat::Svg) return render_svg(map, timeline);
  std::vector<std::size_t> wanted(steps.begin(), steps.end());
  if (wanted.empty()) wanted.push_back(timeline.last_step());
  std::string out;
  for (std::size_t t : wanted) {
    out += "t=" + std::to_string(t) + "\n";
    out += render_ascii_frame(map, timeline, t);
  }
  return out;
}

}  // namespace tlfe
