#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "isoptic/analytic.hpp"
#include "isoptic/curve.hpp"
#include "isoptic/shapes.hpp"

namespace isoptic::io {

// Shape descriptions:
//   {"kind":"ellipse","a":2.0,"b":1.0}
//   {"kind":"polygon","vertices":[[0,0],[1,0],[0,1]]}
//   {"kind":"parabola"}   {"kind":"sine"}
//   {"kind":"wedge","apex":[0,0],"theta":0.785,"bisector":[1,0]}
//   {"kind":"function","name":"cosh","interval":[-1,1]}
// Throws Error(InvalidShape) on malformed input.
ConvexShape shape_from_json(const nlohmann::json& j);
nlohmann::json shape_to_json(const ConvexShape& shape);

// Accepts inline JSON text or "@path" naming a JSON file.
ConvexShape parse_shape_argument(const std::string& arg);

inline constexpr const char* kCsvHeader = "param,x,y,aperture_residual,left_kind,right_kind,region";

// Doubles with 17 significant digits; gap markers leave every column but
// param empty.
std::string format_double(double v);
void write_csv(std::ostream& out, const CurveTrace& trace);

struct SvgOptions {
  double pixels_per_unit = 100.0;
  double margin_fraction = 0.05;
  // Scale y by this extra factor (auto-fit zoom for shallow curves).
  double y_zoom = 1.0;
};

// One <path> per contiguous run of samples; bounded shapes get their outline
// as a <polyline class="shape">.
void write_svg(std::ostream& out, const std::vector<CurveTrace>& traces, const ConvexShape* shape = nullptr,
               const SvgOptions& opts = {});

nlohmann::json trace_to_json(const CurveTrace& trace);
nlohmann::json arc_to_json(const CircularArc& arc);
nlohmann::json wedge_to_json(const WedgeCurveResult& result);

}  // namespace isoptic::io
