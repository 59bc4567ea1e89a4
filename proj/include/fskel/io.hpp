#pragma once

// File formats: IFS documents and point lists (JSON), skeleton and analysis
// reports (JSON), graph exports (DOT) and attractor figures (SVG).

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "fskel/graphs.hpp"
#include "fskel/ifs.hpp"
#include "fskel/neighbor.hpp"
#include "fskel/skeleton.hpp"

namespace fskel {

// Accepts {"name", "maps": [...]} or {"name", "single_matrix": {...}}. Map
// records are {"kind": "matrix", scale, angle_deg, reflect, tx, ty} or
// {"kind": "complex", lambda_re, lambda_im, t_re, t_im}. Throws ParseError for
// malformed JSON and ValidationError (with the field path) for bad content.
Ifs parse_ifs(const nlohmann::json& doc);
Ifs parse_ifs_text(const std::string& text);
Ifs parse_ifs_file(const std::string& path);

// A JSON list of [x, y], or an object carrying such a list under "points".
std::vector<Point> parse_points(const nlohmann::json& doc);
std::vector<Point> parse_points_file(const std::string& path);

nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const HataGraph& h);
nlohmann::json to_json(const SkeletonReport& report, double eps);
nlohmann::json to_json(const Skeleton& skeleton, double eps);

std::string neighbor_graph_dot(const Ifs& ifs, const NeighborGraph& graph);
std::string hata_graph_dot(const Ifs& ifs, const HataGraph& h);

struct RenderOptions {
    int depth = 6;
    double size_px = 800.0;
};

// Depth-limited attractor samples as dots; skeleton points, when given, are
// drawn on top and labelled a_1..a_k.
std::string render_svg(const Ifs& ifs, const RenderOptions& options, const std::vector<Point>& skeleton_points = {});

}  // namespace fskel
