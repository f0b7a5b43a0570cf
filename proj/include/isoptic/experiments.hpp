#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

#include "isoptic/shapes.hpp"

namespace isoptic::experiments {

// Polyline helpers.
double point_polyline_distance(Point2 p, const std::vector<Point2>& line, bool closed);
// Symmetric Hausdorff distance between two polylines (point-to-segment).
double hausdorff_distance(const std::vector<Point2>& a, const std::vector<Point2>& b, bool closed);
// All turns share one orientation; each cross product may violate it by at
// most slack * |e_i| * |e_{i+1}|.
bool is_convex_polyline(const std::vector<Point2>& pts, bool closed, double slack = 1e-9);
// Largest vertical gap between points (any order) and their upper concave
// envelope; zero exactly when the points are in concave position.
double concave_envelope_deviation(std::vector<Point2> pts);
// Sign changes of successive y differences, points ordered by x. Differences
// with |dy| <= flat are ignored.
int turning_points(std::vector<Point2> pts, double flat = 1e-13);
// Sign changes of successive slope differences, points ordered by x.
int inflections(std::vector<Point2> pts, double flat = 1e-12);

// --- sine waveform scan -------------------------------------------------

enum class WaveVerdict { Concave, Waveform, Other };
const char* to_string(WaveVerdict v);

inline constexpr double kConcaveSlack = 1e-9;

struct WaveformRow {
  double alpha = 0.0;
  std::size_t region_one_points = 0;
  double amplitude = 0.0;  // concave_envelope_deviation of the region-I section
  int turning_points = 0;
  int inflections = 0;
  WaveVerdict verdict = WaveVerdict::Other;
  double max_residual = 0.0;
};

struct WaveformReport {
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  double step = 0.0;
  std::size_t samples = 0;
  std::vector<WaveformRow> rows;
  // Smallest amplitude among waveform rows.
  std::optional<double> amplitude_minimizer;
  // Largest alpha below which every scanned row is concave.
  std::optional<double> concavity_onset;

  nlohmann::json to_json() const;
};

// Traces the sine arch at alpha and inspects the central (region I) part.
// Waveform: not concave and at least 3 turning points.
WaveformRow waveform_row(double alpha, std::size_t samples);
WaveformReport run_waveform_experiment(double alpha_lo, double alpha_hi, double step, std::size_t samples);

// --- ellipse convexity threshold ----------------------------------------

struct ConvexityRow {
  double ratio = 1.0;
  bool all_convex = true;
  std::vector<double> nonconvex_alphas;
};

struct EllipseConvexityReport {
  double ratio_lo = 0.0;
  double ratio_hi = 0.0;
  double ratio_step = 0.0;
  std::vector<double> alphas;
  std::size_t directions = 0;
  double slack = 1e-9;
  std::vector<ConvexityRow> rows;
  // Smallest scanned ratio from which every larger ratio is all-convex.
  std::optional<double> threshold;

  nlohmann::json to_json() const;
};

// alpha_k = pi k / (count + 1), k = 1..count.
std::vector<double> open_alpha_grid(std::size_t count);
// Equal-aperture curve of the ellipse a = 1, b = ratio, traced from the centre.
bool ellipse_curve_convex(double ratio, double alpha, std::size_t directions, double slack = 1e-9);
ConvexityRow convexity_row(double ratio, const std::vector<double>& alphas, std::size_t directions,
                           double slack = 1e-9);
EllipseConvexityReport run_ellipse_convexity(double ratio_lo, double ratio_hi, double ratio_step,
                                             std::size_t alpha_count, std::size_t directions = 720);

// --- polygonal approximation --------------------------------------------

struct ConvergenceRow {
  std::size_t n = 0;
  double hausdorff = 0.0;
  double max_residual = 0.0;
};

struct PolygonConvergenceReport {
  nlohmann::json shape;
  double alpha = 0.0;
  std::size_t directions = 0;
  std::vector<ConvergenceRow> rows;
  bool strictly_decreasing = false;

  nlohmann::json to_json() const;
};

PolygonConvergenceReport run_polygon_convergence(const ConvexShape& shape, double alpha,
                                                 const std::vector<std::size_t>& n_list,
                                                 std::size_t directions = 720);

}  // namespace isoptic::experiments
