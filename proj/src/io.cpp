#include "isoptic/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace isoptic::io {
namespace {

using nlohmann::json;

Point2 point_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::InvalidShape, std::string(what) + " must be a [x, y] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw Error(ErrorCode::InvalidShape, std::string("missing numeric field '") + key + "'");
  }
  return j[key].get<double>();
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

ConvexShape shape_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw Error(ErrorCode::InvalidShape, "shape must be an object with a string 'kind'");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "ellipse") return Ellipse::make(number_field(j, "a"), number_field(j, "b"));
  if (kind == "parabola") return ParabolaRegion{};
  if (kind == "sine") return SineArch{};
  if (kind == "polygon") {
    if (!j.contains("vertices") || !j["vertices"].is_array()) {
      throw Error(ErrorCode::InvalidShape, "polygon needs a 'vertices' array");
    }
    std::vector<Point2> vs;
    for (const auto& v : j["vertices"]) vs.push_back(point_from_json(v, "polygon vertex"));
    return Polygon::make(std::move(vs));
  }
  if (kind == "wedge") {
    if (!j.contains("apex") || !j.contains("bisector")) {
      throw Error(ErrorCode::InvalidShape, "wedge needs 'apex', 'theta' and 'bisector'");
    }
    return Wedge::make(point_from_json(j["apex"], "apex"), number_field(j, "theta"),
                       point_from_json(j["bisector"], "bisector"));
  }
  if (kind == "function") {
    if (!j.contains("name") || !j["name"].is_string() || !j.contains("interval")) {
      throw Error(ErrorCode::InvalidShape, "function needs 'name' and 'interval'");
    }
    const Point2 iv = point_from_json(j["interval"], "interval");
    return FunctionGraph::catalog(j["name"].get<std::string>(), iv.x, iv.y);
  }
  throw Error(ErrorCode::InvalidShape, "unknown shape kind '" + kind + "'");
}

json shape_to_json(const ConvexShape& shape) {
  if (const auto* e = std::get_if<Ellipse>(&shape)) return {{"kind", "ellipse"}, {"a", e->a}, {"b", e->b}};
  if (std::holds_alternative<ParabolaRegion>(shape)) return {{"kind", "parabola"}};
  if (std::holds_alternative<SineArch>(shape)) return {{"kind", "sine"}};
  if (const auto* p = std::get_if<Polygon>(&shape)) {
    json vs = json::array();
    for (const auto& v : p->vertices) vs.push_back(point_json(v));
    return {{"kind", "polygon"}, {"vertices", vs}};
  }
  if (const auto* w = std::get_if<Wedge>(&shape)) {
    return {{"kind", "wedge"}, {"apex", point_json(w->apex)}, {"theta", w->theta.value()},
            {"bisector", point_json(w->bisector)}};
  }
  const auto& g = std::get<FunctionGraph>(shape);
  return {{"kind", "function"}, {"name", g.name}, {"interval", json::array({g.lo, g.hi})}};
}

ConvexShape parse_shape_argument(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg.front() == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw Error(ErrorCode::InvalidShape, "cannot read shape file " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidShape, std::string("shape JSON does not parse: ") + e.what());
  }
  return shape_from_json(j);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const CurveTrace& trace) {
  out << kCsvHeader << '\n';
  for (const auto& s : trace.samples) {
    out << format_double(s.param) << ',';
    if (s.is_gap()) {
      out << ",,,,,\n";
      continue;
    }
    out << format_double(s.point->x) << ',' << format_double(s.point->y) << ','
        << format_double(s.aperture_residual) << ',' << to_string(s.left_kind) << ','
        << to_string(s.right_kind) << ',' << (s.region ? to_string(*s.region) : "") << '\n';
  }
}

void write_svg(std::ostream& out, const std::vector<CurveTrace>& traces, const ConvexShape* shape,
               const SvgOptions& opts) {
  const double sx = opts.pixels_per_unit;
  const double sy = opts.pixels_per_unit * opts.y_zoom;
  auto map = [&](Point2 p) { return Point2{sx * p.x, -sy * p.y}; };

  std::vector<Point2> outline;
  if (shape != nullptr && is_bounded(*shape)) {
    const double period = boundary_period(*shape);
    constexpr int kOutline = 256;
    for (int k = 0; k <= kOutline; ++k) {
      outline.push_back(boundary_point(*shape, std::min(period * k / kOutline, std::nextafter(period, 0.0))));
    }
  }

  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  auto grow = [&](Point2 p) {
    const Point2 q = map(p);
    min_x = std::min(min_x, q.x);
    max_x = std::max(max_x, q.x);
    min_y = std::min(min_y, q.y);
    max_y = std::max(max_y, q.y);
  };
  for (const auto& t : traces) {
    for (const auto& p : t.points()) grow(p);
  }
  for (const auto& p : outline) grow(p);
  if (!std::isfinite(min_x)) {
    min_x = min_y = 0.0;
    max_x = max_y = 1.0;
  }
  const double w = std::max(max_x - min_x, 1.0);
  const double h = std::max(max_y - min_y, 1.0);
  const double m = opts.margin_fraction * std::max(w, h);

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << px(min_x - m) << ' ' << px(min_y - m) << ' '
      << px(w + 2 * m) << ' ' << px(h + 2 * m) << "\">\n";
  if (!outline.empty()) {
    out << "  <polyline class=\"shape\" fill=\"none\" stroke=\"gray\" points=\"";
    for (std::size_t i = 0; i < outline.size(); ++i) {
      const Point2 q = map(outline[i]);
      out << (i ? " " : "") << px(q.x) << ',' << px(q.y);
    }
    out << "\"/>\n";
  }
  for (const auto& t : traces) {
    for (const auto& seg : t.segments()) {
      out << "  <path class=\"curve\" data-alpha=\"" << format_double(t.alpha.value())
          << "\" fill=\"none\" stroke=\"black\" d=\"";
      for (std::size_t i = 0; i < seg.size(); ++i) {
        const Point2 q = map(seg[i]);
        out << (i ? " L " : "M ") << px(q.x) << ',' << px(q.y);
      }
      out << "\"/>\n";
    }
  }
  out << "</svg>\n";
}

json trace_to_json(const CurveTrace& trace) {
  json samples = json::array();
  for (const auto& s : trace.samples) {
    json js = {{"param", s.param}};
    if (s.is_gap()) {
      js["gap"] = true;
    } else {
      js["x"] = s.point->x;
      js["y"] = s.point->y;
      js["aperture_residual"] = s.aperture_residual;
      js["left_kind"] = to_string(s.left_kind);
      js["right_kind"] = to_string(s.right_kind);
      if (s.region) js["region"] = to_string(*s.region);
    }
    samples.push_back(std::move(js));
  }
  return {{"shape", trace.shape},
          {"alpha", trace.alpha.value()},
          {"method", to_string(trace.method)},
          {"tolerance", trace.tolerance},
          {"max_residual", trace.max_residual()},
          {"skipped", trace.skipped},
          {"samples", std::move(samples)}};
}

json arc_to_json(const CircularArc& arc) {
  return {{"kind", "arc"},
          {"center", point_json(arc.center)},
          {"radius", arc.radius},
          {"start", arc.start_angle},
          {"end", arc.end_angle}};
}

json wedge_to_json(const WedgeCurveResult& r) {
  json j = {{"kind", "wedge_region"},
            {"case", to_string(r.kind)},
            {"apex", point_json(r.apex)},
            {"bisector", point_json(r.bisector)}};
  j["angle"] = r.region_angle ? json(*r.region_angle) : json(nullptr);
  return j;
}

}  // namespace isoptic::io
