#ifndef BTORRT_SVG_HPP
#define BTORRT_SVG_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "btorrt/planner.hpp"
#include "btorrt/workspace.hpp"

namespace btorrt {

/// One trajectory to draw, tagged with a stage name ("raw", "downsample",
/// "upsample", "smooth", ...). Each stage becomes exactly one stroke per
/// view with the element id "stage-<name>".
struct RenderStage {
    std::string name;
    Polyline path;
};

/// Renders the environment, the search trees (when given), and the pipeline
/// stages with a legend. 2D workspaces render as a single view; 3D point
/// clouds render three orthographic projection panels (xy, xz, yz). Output
/// bytes are deterministic for identical input.
void render_svg(std::ostream& out, const Workspace& ws, const PlanResult* result,
                const std::vector<RenderStage>& stages);

void render_svg(const std::string& path, const Workspace& ws, const PlanResult* result,
                const std::vector<RenderStage>& stages);

}  // namespace btorrt

#endif  // BTORRT_SVG_HPP
