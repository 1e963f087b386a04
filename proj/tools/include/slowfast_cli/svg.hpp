#pragma once

#include <string>
#include <vector>

#include "slowfast/dimension.hpp"
#include "slowfast/models.hpp"

namespace slowfast::cli {

/// 800x600 SVG: chirp segments in black, the critical curve in red, axes
/// with tick labels in model coordinates (x, and section height).
std::string chirp_svg(const SlowFastModel& model, const std::vector<Segment>& segments,
                      const std::string& title);

}  // namespace slowfast::cli
