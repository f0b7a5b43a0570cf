#include "isoptic/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isoptic/error.hpp"
#include "isoptic/io.hpp"
#include "isoptic/tracer.hpp"

namespace isoptic::experiments {
namespace {

using nlohmann::json;

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

void sort_by_x(std::vector<Point2>& pts) {
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x; });
}

int sign_changes(const std::vector<double>& v, double flat) {
  int changes = 0;
  int last = 0;
  for (double d : v) {
    if (std::abs(d) <= flat) continue;
    const int s = d > 0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<double> scan_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw Error(ErrorCode::InvalidArgument, "scan needs lo <= hi and step > 0");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t k = 0; k <= n; ++k) out.push_back(lo + step * static_cast<double>(k));
  return out;
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

double point_polyline_distance(Point2 p, const std::vector<Point2>& line, bool closed) {
  if (line.empty()) return std::numeric_limits<double>::infinity();
  if (line.size() == 1) return distance(p, line[0]);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < line.size(); ++i) best = std::min(best, point_segment_distance(p, line[i], line[i + 1]));
  if (closed) best = std::min(best, point_segment_distance(p, line.back(), line.front()));
  return best;
}

double hausdorff_distance(const std::vector<Point2>& a, const std::vector<Point2>& b, bool closed) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "hausdorff distance of an empty polyline");
  double h = 0.0;
  for (const auto& p : a) h = std::max(h, point_polyline_distance(p, b, closed));
  for (const auto& p : b) h = std::max(h, point_polyline_distance(p, a, closed));
  return h;
}

bool is_convex_polyline(const std::vector<Point2>& pts, bool closed, double slack) {
  const std::size_t n = pts.size();
  if (n < 3) return true;
  const std::size_t turns = closed ? n : n - 2;
  int orientation = 0;
  // First pass: dominant orientation from the largest turn.
  double biggest = 0.0;
  std::vector<double> crosses(turns);
  std::vector<double> scales(turns);
  for (std::size_t i = 0; i < turns; ++i) {
    const Point2 p0 = pts[i];
    const Point2 p1 = pts[(i + 1) % n];
    const Point2 p2 = pts[(i + 2) % n];
    const Vec2 e0 = p1 - p0;
    const Vec2 e1 = p2 - p1;
    crosses[i] = cross(e0, e1);
    scales[i] = norm(e0) * norm(e1);
    if (std::abs(crosses[i]) > biggest) {
      biggest = std::abs(crosses[i]);
      orientation = crosses[i] > 0 ? 1 : -1;
    }
  }
  if (orientation == 0) return true;
  for (std::size_t i = 0; i < turns; ++i) {
    if (orientation * crosses[i] < -slack * scales[i]) return false;
  }
  if (closed) {
    // A star-shaped closed curve with one turning direction could still wind
    // twice; require a total turn of 2pi.
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 e0 = pts[(i + 1) % n] - pts[i];
      const Vec2 e1 = pts[(i + 2) % n] - pts[(i + 1) % n];
      if (norm(e0) == 0.0 || norm(e1) == 0.0) continue;
      total += signed_angle(e0, e1);
    }
    if (std::abs(std::abs(total) - kTwoPi) > 1e-6) return false;
  }
  return true;
}

double concave_envelope_deviation(std::vector<Point2> pts) {
  if (pts.size() < 3) return 0.0;
  sort_by_x(pts);
  // Upper hull, monotone chain.
  std::vector<Point2> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 1] - hull[hull.size() - 2], p - hull[hull.size() - 2]) >= 0.0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  double dev = 0.0;
  std::size_t j = 0;
  for (const auto& p : pts) {
    while (j + 1 < hull.size() && hull[j + 1].x < p.x) ++j;
    if (j + 1 >= hull.size()) continue;
    const Point2 a = hull[j];
    const Point2 b = hull[j + 1];
    if (b.x == a.x) continue;
    const double t = (p.x - a.x) / (b.x - a.x);
    dev = std::max(dev, a.y + t * (b.y - a.y) - p.y);
  }
  return dev;
}

int turning_points(std::vector<Point2> pts, double flat) {
  sort_by_x(pts);
  std::vector<double> dy;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) dy.push_back(pts[i + 1].y - pts[i].y);
  return sign_changes(dy, flat);
}

int inflections(std::vector<Point2> pts, double flat) {
  sort_by_x(pts);
  std::vector<double> slopes;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double dx = pts[i + 1].x - pts[i].x;
    if (dx <= 0.0) continue;
    slopes.push_back((pts[i + 1].y - pts[i].y) / dx);
  }
  std::vector<double> ds;
  for (std::size_t i = 0; i + 1 < slopes.size(); ++i) ds.push_back(slopes[i + 1] - slopes[i]);
  return sign_changes(ds, flat);
}

const char* to_string(WaveVerdict v) {
  switch (v) {
    case WaveVerdict::Concave: return "concave";
    case WaveVerdict::Waveform: return "waveform";
    case WaveVerdict::Other: return "other";
  }
  return "?";
}

WaveformRow waveform_row(double alpha, std::size_t samples) {
  const ConvexShape sine = SineArch{};
  const CurveTrace trace = tangent_pair_trace(sine, Angle::radians(alpha), default_xi_grid(sine, samples));
  std::vector<Point2> section;
  for (const auto& s : trace.samples) {
    if (!s.is_gap() && s.region == SineRegion::I) section.push_back(*s.point);
  }
  WaveformRow row;
  row.alpha = alpha;
  row.region_one_points = section.size();
  row.amplitude = concave_envelope_deviation(section);
  row.turning_points = turning_points(section);
  row.inflections = inflections(section);
  row.max_residual = trace.max_residual();
  if (section.size() >= 3 && row.amplitude <= kConcaveSlack) {
    row.verdict = WaveVerdict::Concave;
  } else if (row.turning_points >= 3) {
    row.verdict = WaveVerdict::Waveform;
  } else {
    row.verdict = WaveVerdict::Other;
  }
  return row;
}

WaveformReport run_waveform_experiment(double alpha_lo, double alpha_hi, double step, std::size_t samples) {
  if (!(alpha_lo > 0.0) || !(alpha_hi < kPi)) throw Error(ErrorCode::InvalidArgument, "alpha range must lie in (0, pi)");
  WaveformReport rep;
  rep.alpha_lo = alpha_lo;
  rep.alpha_hi = alpha_hi;
  rep.step = step;
  rep.samples = samples;
  for (double a : scan_grid(alpha_lo, alpha_hi, step)) rep.rows.push_back(waveform_row(a, samples));

  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : rep.rows) {
    if (r.verdict == WaveVerdict::Waveform && r.amplitude < best) {
      best = r.amplitude;
      rep.amplitude_minimizer = r.alpha;
    }
  }
  for (const auto& r : rep.rows) {
    if (r.verdict != WaveVerdict::Concave) break;
    rep.concavity_onset = r.alpha;
  }
  return rep;
}

json WaveformReport::to_json() const {
  json rows_j = json::array();
  for (const auto& r : rows) {
    rows_j.push_back({{"alpha", r.alpha},
                      {"region_one_points", r.region_one_points},
                      {"amplitude", r.amplitude},
                      {"turning_points", r.turning_points},
                      {"inflections", r.inflections},
                      {"verdict", to_string(r.verdict)},
                      {"max_residual", r.max_residual}});
  }
  return {{"experiment", "waveform"},
          {"shape", "sine"},
          {"alpha_range", {alpha_lo, alpha_hi}},
          {"alpha_step", step},
          {"samples", samples},
          {"trace_tolerance", kDefaultTraceTolerance},
          {"concave_slack", kConcaveSlack},
          {"rows", rows_j},
          {"amplitude_minimizer", opt(amplitude_minimizer)},
          {"concavity_onset", opt(concavity_onset)}};
}

std::vector<double> open_alpha_grid(std::size_t count) {
  std::vector<double> out;
  for (std::size_t k = 1; k <= count; ++k) out.push_back(kPi * static_cast<double>(k) / static_cast<double>(count + 1));
  return out;
}

bool ellipse_curve_convex(double ratio, double alpha, std::size_t directions, double slack) {
  const ConvexShape e = Ellipse::make(1.0, ratio);
  const CurveTrace t = ray_bisection_trace(e, Angle::radians(alpha), {0.0, 0.0}, directions);
  if (t.point_count() != t.samples.size()) {
    throw Error(ErrorCode::InvalidArgument, "ellipse trace has gaps; raise the search radius");
  }
  return is_convex_polyline(t.points(), true, slack);
}

ConvexityRow convexity_row(double ratio, const std::vector<double>& alphas, std::size_t directions, double slack) {
  ConvexityRow row;
  row.ratio = ratio;
  for (double a : alphas) {
    if (!ellipse_curve_convex(ratio, a, directions, slack)) row.nonconvex_alphas.push_back(a);
  }
  row.all_convex = row.nonconvex_alphas.empty();
  return row;
}

EllipseConvexityReport run_ellipse_convexity(double ratio_lo, double ratio_hi, double ratio_step,
                                             std::size_t alpha_count, std::size_t directions) {
  if (!(ratio_lo > 0.0) || !(ratio_hi <= 1.0)) throw Error(ErrorCode::InvalidArgument, "ratio range must lie in (0, 1]");
  EllipseConvexityReport rep;
  rep.ratio_lo = ratio_lo;
  rep.ratio_hi = ratio_hi;
  rep.ratio_step = ratio_step;
  rep.alphas = open_alpha_grid(alpha_count);
  rep.directions = directions;
  for (double r : scan_grid(ratio_lo, ratio_hi, ratio_step)) {
    rep.rows.push_back(convexity_row(r, rep.alphas, directions, rep.slack));
  }
  for (auto it = rep.rows.rbegin(); it != rep.rows.rend() && it->all_convex; ++it) rep.threshold = it->ratio;
  return rep;
}

json EllipseConvexityReport::to_json() const {
  json rows_j = json::array();
  for (const auto& r : rows) {
    rows_j.push_back({{"ratio", r.ratio}, {"all_convex", r.all_convex}, {"nonconvex_alphas", r.nonconvex_alphas}});
  }
  return {{"experiment", "ellipse-convexity"},
          {"ratio_range", {ratio_lo, ratio_hi}},
          {"ratio_step", ratio_step},
          {"alphas", alphas},
          {"directions", directions},
          {"convexity_slack", slack},
          {"trace_tolerance", kDefaultTraceTolerance},
          {"rows", rows_j},
          {"threshold", opt(threshold)}};
}

PolygonConvergenceReport run_polygon_convergence(const ConvexShape& shape, double alpha,
                                                 const std::vector<std::size_t>& n_list, std::size_t directions) {
  if (!is_bounded(shape)) throw Error(ErrorCode::UnboundedShape, "polygon convergence needs a bounded shape");
  PolygonConvergenceReport rep;
  rep.shape = io::shape_to_json(shape);
  rep.alpha = alpha;
  rep.directions = directions;
  const Angle a = Angle::radians(alpha);
  const Point2 ref = interior_point(shape);
  const CurveTrace smooth = ray_bisection_trace(shape, a, ref, directions);
  const auto smooth_pts = smooth.points();
  for (std::size_t n : n_list) {
    const ConvexShape poly = polygon_inscribe(shape, n);
    if (!contains(poly, ref, true)) {
      throw Error(ErrorCode::ReferenceNotInterior, "reference point is not inside the inscribed polygon");
    }
    const CurveTrace t = ray_bisection_trace(poly, a, ref, directions);
    ConvergenceRow row;
    row.n = n;
    row.hausdorff = hausdorff_distance(t.points(), smooth_pts, true);
    row.max_residual = t.max_residual();
    rep.rows.push_back(row);
  }
  rep.strictly_decreasing = !rep.rows.empty();
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    if (!(rep.rows[i].hausdorff < rep.rows[i - 1].hausdorff)) rep.strictly_decreasing = false;
  }
  return rep;
}

json PolygonConvergenceReport::to_json() const {
  json rows_j = json::array();
  for (const auto& r : rows) rows_j.push_back({{"n", r.n}, {"hausdorff", r.hausdorff}, {"max_residual", r.max_residual}});
  return {{"experiment", "polygon-convergence"},
          {"shape", shape},
          {"alpha", alpha},
          {"directions", directions},
          {"trace_tolerance", kDefaultTraceTolerance},
          {"rows", rows_j},
          {"strictly_decreasing", strictly_decreasing}};
}

}  // namespace isoptic::experiments
