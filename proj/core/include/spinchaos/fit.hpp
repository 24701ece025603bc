#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spinchaos {

/// Ordinary least squares line y = intercept + slope * x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_stderr = 0.0;
    double residual_rms = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// One-parameter proportional fit y = c * x.
struct ProportionalFit {
    double c = 0.0;
    double r_squared = 0.0;
};

ProportionalFit fit_proportional(std::span<const double> x, std::span<const double> y);

/// Vertex of the parabola through (x0,y0), (x1,y1), (x2,y2); used for sub-bin
/// refinement of discrete extrema. Returns x1 when the points are collinear.
double parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2);

/// Sample mean / standard deviation / standard error via batch means over
/// `blocks` equal blocks.
struct BatchStats {
    double mean = 0.0;
    double stderr_mean = 0.0;
};

BatchStats batch_means(std::span<const double> values, int blocks = 10);

double median(std::vector<double> values);
double median_abs_deviation(const std::vector<double>& values, double center);

} // namespace spinchaos
