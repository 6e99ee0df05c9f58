#ifndef TLFE_RENDER_HPP
#define TLFE_RENDER_HPP

#include <span>
#include <string>
#include <vector>

#include "tlfe/grid.hpp"

namespace tlfe {

enum class RenderFormat { Ascii, Svg };

RenderFormat parse_render_format(const std::string& name);

/// What a renderer needs from an episode: the cells first sensed at each
/// time step and the visited cells.
struct Timeline {
  std::span<const std::vector<Cell>> revealed;
  std::span<const Cell> trajectory;

  std::size_t last_step() const { return trajectory.empty() ? 0 : trajectory.size() - 1; }
};

/// Grid at time `t`: '?' unknown, '.' unlabeled, label glyphs, '*' earlier
/// trajectory cells, '@' the robot. Rows separated by newlines.
std::string render_ascii_frame(const GridMap& map, const Timeline& timeline, std::size_t t);

/// Self-contained SVG of the final state: label-coloured cells (l yellow,
/// p green, s blue), unknown cells shaded grey, the trail as a polyline.
std::string render_svg(const GridMap& map, const Timeline& timeline);

/// ASCII: one "t=<n>" headed frame per requested step (the final step when
/// `steps` is empty). SVG: the final state; `steps` is ignored.
std::string render_trajectory(const GridMap& map, const Timeline& timeline, RenderFormat format,
                              std::span<const std::size_t> steps = {});

}  // namespace tlfe

#endif  // TLFE_RENDER_HPP
