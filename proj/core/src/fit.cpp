#include "spinchaos/fit.hpp"

#include <algorithm>
#include <cmath>

#include "spinchaos/errors.hpp"

namespace spinchaos {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw FitError("fit_line needs >= 2 paired samples");
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) throw FitError("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.residual_rms = std::sqrt(ss_res / n);
    if (n > 2) fit.slope_stderr = std::sqrt(ss_res / ((n - 2) * sxx));
    return fit;
}

ProportionalFit fit_proportional(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw FitError("fit_proportional needs >= 2 paired samples");
    double sxx = 0.0, sxy = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        sy += y[i];
    }
    if (sxx <= 0.0) throw FitError("fit_proportional: degenerate abscissae");
    ProportionalFit fit;
    fit.c = sxy / sxx;
    const double my = sy / n;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - fit.c * x[i];
        ss_res += r * r;
        const double d = y[i] - my;
        ss_tot += d * d;
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

double parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d21 = (y2 - y1) / (x2 - x1);
    const double d10 = (y1 - y0) / (x1 - x0);
    const double curv = (d21 - d10) / (x2 - x0);
    if (std::abs(curv) < 1e-300) return x1;
    return 0.5 * (x0 + x1 - d10 / curv);
}

BatchStats batch_means(std::span<const double> values, int blocks) {
    BatchStats st;
    const std::size_t n = values.size();
    if (n == 0) return st;
    double total = 0.0;
    for (double v : values) total += v;
    st.mean = total / static_cast<double>(n);
    blocks = std::min<int>(blocks, static_cast<int>(n));
    if (blocks < 2) return st;
    const std::size_t per = n / static_cast<std::size_t>(blocks);
    double ss = 0.0;
    for (int b = 0; b < blocks; ++b) {
        double bm = 0.0;
        for (std::size_t i = per * b; i < per * (b + 1); ++i) bm += values[i];
        bm /= static_cast<double>(per);
        ss += (bm - st.mean) * (bm - st.mean);
    }
    st.stderr_mean = std::sqrt(ss / (blocks * (blocks - 1.0)));
    return st;
}

double median(std::vector<double> values) {
    if (values.empty()) throw FitError("median of empty set");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    double hi = values[mid];
    if (values.size() % 2 == 1) return hi;
    std::nth_element(values.begin(), values.begin() + mid - 1, values.end());
    return 0.5 * (hi + values[mid - 1]);
}

double median_abs_deviation(const std::vector<double>& values, double center) {
    std::vector<double> dev(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) dev[i] = std::abs(values[i] - center);
    return median(std::move(dev));
}

} // namespace spinchaos
