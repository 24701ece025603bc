#include "spinchaos/cusp.hpp"

#include <cmath>

#include "spinchaos/fit.hpp"
#include "spinchaos/parallel.hpp"
#include "spinchaos/rng.hpp"

namespace spinchaos {

CuspFit cusp_scan(double h, const std::vector<double>& delta_J_grid,
                  const CuspScanOptions& options) {
    const auto sep = find_separatrix_J(h);

    CuspFit fit;
    fit.delta_J = delta_J_grid;
    fit.lambda.resize(delta_J_grid.size());
    fit.fit_cutoff = options.fit_cutoff;

    parallel_for(delta_J_grid.size(), options.jobs, [&](std::size_t i) {
        HamiltonianParams p{sep.J_star + delta_J_grid[i], h, options.L};
        BenettinOptions opt = options.benettin;
        opt.seed = sub_seed(options.benettin.seed, i);
        const auto run = benettin(ReferenceKind::Periodic, p, opt);
        fit.lambda[i] = run.lambda;
    });

    // Pooled linear fit in x = 1/log|dJ| below the cutoff.
    std::vector<double> x, y, xs[2], ys[2];
    for (std::size_t i = 0; i < delta_J_grid.size(); ++i) {
        const double adj = std::abs(delta_J_grid[i]);
        if (adj <= 0.0 || adj > options.fit_cutoff) continue;
        const double xi = 1.0 / std::log(adj);
        x.push_back(xi);
        y.push_back(fit.lambda[i]);
        const int side = delta_J_grid[i] < 0.0 ? 0 : 1;
        xs[side].push_back(xi);
        ys[side].push_back(fit.lambda[i]);
    }
    if (x.size() < 4) throw FitError("cusp_scan: too few points below the fit cutoff");

    const auto pooled = fit_line(x, y);
    fit.lambda_A = pooled.intercept;
    fit.C = pooled.slope;
    fit.r_squared = pooled.r_squared;
    fit.residuals.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        fit.residuals[i] = y[i] - (pooled.intercept + pooled.slope * x[i]);

    if (xs[0].size() >= 2 && xs[1].size() >= 2) {
        const auto neg = fit_line(xs[0], ys[0]);
        const auto pos = fit_line(xs[1], ys[1]);
        fit.side_asymmetry = std::abs(neg.intercept - pos.intercept);
    }
    return fit;
}

SeparatrixScalings separatrix_scalings(double h, const std::vector<double>& delta_J_grid,
                                       const OrbitOptions& orbit_options) {
    const auto sep = find_separatrix_J(h);
    const Vec3 S_star = sep.fixed_point.orientation;

    SeparatrixScalings sc;
    sc.delta_J = delta_J_grid;
    sc.min_distance.resize(delta_J_grid.size());
    sc.period.resize(delta_J_grid.size());

    for (std::size_t i = 0; i < delta_J_grid.size(); ++i) {
        HamiltonianParams p{sep.J_star + delta_J_grid[i], h, 2};
        const auto orbit = periodic_orbit(p, {0.0, 0.0, 1.0}, orbit_options);
        sc.min_distance[i] = orbit.min_distance_to(S_star);
        sc.period[i] = orbit.period;
    }

    // Per-side power-law and log-period fits.
    for (int side = 0; side < 2; ++side) {
        std::vector<double> lx, ld, tx, ty;
        for (std::size_t i = 0; i < delta_J_grid.size(); ++i) {
            const bool is_rot = delta_J_grid[i] > 0.0;
            if ((side == 1) != is_rot) continue;
            const double adj = std::abs(delta_J_grid[i]);
            lx.push_back(std::log(adj));
            ld.push_back(std::log(sc.min_distance[i]));
            tx.push_back(std::log(adj));
            ty.push_back(sc.period[i]);
        }
        if (lx.size() < 2) continue;
        const auto dist_fit = fit_line(lx, ld);
        const auto period_fit = fit_line(tx, ty);
        if (side == 1) {
            sc.p_rotation = dist_fit.slope;
            sc.a_rotation = std::exp(dist_fit.intercept);
            sc.period_slope_rotation = -period_fit.slope;
        } else {
            sc.p_libration = dist_fit.slope;
            sc.a_libration = std::exp(dist_fit.intercept);
            sc.period_slope_libration = -period_fit.slope;
        }
    }
    return sc;
}

} // namespace spinchaos
