#ifndef PCL_SVG_HPP
#define PCL_SVG_HPP

#include <optional>
#include <string>

#include "pcl/checkers.hpp"

namespace pcl {

/// SVG 1.1 drawing of a planar set with an optional witness overlay.  The
/// output depends only on the inputs.  Throws DimensionError for d != 2.
std::string render_svg(const GeoSet& s, const std::optional<Witness>& w = std::nullopt);

}  // namespace pcl

#endif
