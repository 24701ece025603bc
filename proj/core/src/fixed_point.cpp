#include "spinchaos/fixed_point.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace spinchaos {

namespace {

// Solves the 4x4 linear system A x = b in place (partial pivoting).
bool solve4(std::array<std::array<double, 4>, 4>& A, std::array<double, 4>& b) {
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
        if (std::abs(A[pivot][col]) < 1e-14) return false;
        std::swap(A[col], A[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = A[r][col] / A[col][col];
            for (int c = col; c < 4; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int i = 0; i < 4; ++i) b[i] /= A[i][i];
    return true;
}

// Newton iteration for grad(H_p)(S) = mu S with |S| = 1.
std::optional<Vec3> newton_critical_point(Vec3 s, const HamiltonianParams& p) {
    s.normalize();
    double mu = dot(s, onespin_field(s, p));
    for (int it = 0; it < 60; ++it) {
        const Vec3 g = onespin_field(s, p);
        const Vec3 res = g - mu * s;
        const double cons = 0.5 * (s.squared_norm() - 1.0);
        if (res.norm() < 1e-13 && std::abs(cons) < 1e-13) return s.normalized();

        // Jacobian of [grad(H_p) - mu S; (|S|^2-1)/2] wrt (S, mu);
        // D2(H_p) = diag(-2J, -4J, 0).
        std::array<std::array<double, 4>, 4> A{};
        A[0] = {-2.0 * p.J - mu, 0.0, 0.0, -s.x};
        A[1] = {0.0, -4.0 * p.J - mu, 0.0, -s.y};
        A[2] = {0.0, 0.0, -mu, -s.z};
        A[3] = {s.x, s.y, s.z, 0.0};
        std::array<double, 4> b = {-res.x, -res.y, -res.z, -cons};
        if (!solve4(A, b)) return std::nullopt;
        s += Vec3{b[0], b[1], b[2]};
        mu += b[3];
        if (!std::isfinite(s.x) || !std::isfinite(mu)) return std::nullopt;
    }
    return std::nullopt;
}

void tangent_basis(const Vec3& n, Vec3& t1, Vec3& t2) {
    const Vec3 seed = std::abs(n.z) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
    t1 = cross(n, seed).normalized();
    t2 = cross(n, t1);
}

CriticalPoint characterize(const Vec3& s, const HamiltonianParams& p) {
    CriticalPoint cp;
    cp.orientation = s;
    cp.energy = onespin_energy(s, p);
    cp.multiplier = dot(s, onespin_field(s, p));

    Vec3 t1, t2;
    tangent_basis(s, t1, t2);
    const auto apply = [&](const Vec3& v) {
        // (D2(H_p) - mu I) v
        return Vec3{(-2.0 * p.J - cp.multiplier) * v.x,
                    (-4.0 * p.J - cp.multiplier) * v.y,
                    -cp.multiplier * v.z};
    };
    const double a = dot(t1, apply(t1));
    const double b = dot(t1, apply(t2));
    const double c = dot(t2, apply(t2));
    const double tr = a + c;
    const double disc = std::sqrt(std::max(0.0, 0.25 * (a - c) * (a - c) + b * b));
    cp.hess_low = 0.5 * tr - disc;
    cp.hess_high = 0.5 * tr + disc;
    if (cp.hess_low > 0.0)
        cp.type = CriticalPoint::Type::Minimum;
    else if (cp.hess_high < 0.0)
        cp.type = CriticalPoint::Type::Maximum;
    else
        cp.type = CriticalPoint::Type::Saddle;
    return cp;
}

// Projected-gradient flow to the extremum reached from `start`; sign +1 ascends.
Vec3 gradient_flow_extremum(Vec3 start, const HamiltonianParams& p, double sign) {
    Vec3 s = start.normalized();
    double step = 0.05;
    double e = onespin_energy(s, p);
    for (int it = 0; it < 20000; ++it) {
        const Vec3 g = onespin_field(s, p);
        const Vec3 pg = g - dot(g, s) * s;
        if (pg.norm() < 1e-12) break;
        Vec3 trial = (s + (sign * step) * pg).normalized();
        const double et = onespin_energy(trial, p);
        if (sign * (et - e) >= 0.0) {
            s = trial;
            e = et;
            step = std::min(step * 1.2, 0.2);
        } else {
            step *= 0.5;
            if (step < 1e-14) break;
        }
    }
    return s;
}

} // namespace

double FixedPoint::gradient_norm(const HamiltonianParams& params) const {
    const Vec3 g = onespin_field(orientation, params);
    return (g - dot(g, orientation) * orientation).norm();
}

std::vector<CriticalPoint> critical_points(const HamiltonianParams& params) {
    constexpr int n_phi = 32;
    constexpr int n_theta = 16;
    std::vector<CriticalPoint> found;
    for (int it = 0; it < n_theta; ++it) {
        const double theta = std::numbers::pi * (it + 0.5) / n_theta;
        for (int ip = 0; ip < n_phi; ++ip) {
            const double phi = 2.0 * std::numbers::pi * ip / n_phi;
            const Vec3 start{std::sin(theta) * std::cos(phi),
                             std::sin(theta) * std::sin(phi), std::cos(theta)};
            const auto root = newton_critical_point(start, params);
            if (!root) continue;
            bool duplicate = false;
            for (const auto& cp : found)
                if (distance(cp.orientation, *root) < 1e-6) { duplicate = true; break; }
            if (!duplicate) found.push_back(characterize(*root, params));
        }
    }
    std::sort(found.begin(), found.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.energy < b.energy; });
    return found;
}

CriticalPoint separatrix_saddle(const HamiltonianParams& params) {
    const auto points = critical_points(params);
    const CriticalPoint* best = nullptr;
    for (const auto& cp : points) {
        if (cp.type != CriticalPoint::Type::Saddle) continue;
        if (!best || std::abs(cp.energy) < std::abs(best->energy)) best = &cp;
    }
    if (!best)
        throw BracketError("H_p has no saddle at J=" + std::to_string(params.J) +
                           ", h=" + std::to_string(params.h));
    return *best;
}

double saddle_energy(const HamiltonianParams& params) {
    return separatrix_saddle(params).energy;
}

SeparatrixResult find_separatrix_J(double h, double lo, double hi, double tol) {
    if (!(h > 0.0)) throw InvalidParameterError("field constant h must be positive");

    const auto saddle_at = [&](double J) -> std::optional<CriticalPoint> {
        HamiltonianParams p{J, h, 2};
        try {
            return separatrix_saddle(p);
        } catch (const BracketError&) {
            return std::nullopt;
        }
    };

    // The saddle is born at finite J; advance the lower edge until it exists.
    auto slo = saddle_at(lo);
    while (!slo && lo < hi) {
        lo += 0.05 * (hi - lo);
        slo = saddle_at(lo);
    }
    const auto shi = saddle_at(hi);
    if (!slo || !shi)
        throw BracketError("no saddle of H_p inside the separatrix bracket");
    if (slo->energy * shi->energy > 0.0)
        throw BracketError("saddle energy does not change sign over the bracket");

    double elo = slo->energy;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double emid = saddle_at(mid)->energy;
        if (emid * elo <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            elo = emid;
        }
    }

    const double J_star = 0.5 * (lo + hi);
    const auto saddle = *saddle_at(J_star);
    SeparatrixResult res;
    res.J_star = J_star;
    res.fixed_point = FixedPoint{saddle.orientation, J_star,       h,
                                 saddle.energy,      saddle.hess_low, saddle.hess_high};
    return res;
}

Vec3 separatrix_axis(const HamiltonianParams& params) {
    const auto saddle = separatrix_saddle(params);
    Vec3 t1, t2;
    tangent_basis(saddle.orientation, t1, t2);
    const auto apply = [&](const Vec3& v) {
        return Vec3{(-2.0 * params.J - saddle.multiplier) * v.x,
                    (-4.0 * params.J - saddle.multiplier) * v.y,
                    -saddle.multiplier * v.z};
    };
    // Eigenvector of the tangent Hessian for the positive (ascending) eigenvalue.
    const double a = dot(t1, apply(t1));
    const double b = dot(t1, apply(t2));
    const double c = dot(t2, apply(t2));
    const double lam = saddle.hess_high;
    Vec3 e_up;
    if (std::abs(b) > 1e-14)
        e_up = ((lam - c) * t1 + b * t2).normalized();
    else
        e_up = (a > c) ? t1 : t2;

    const Vec3 plus = gradient_flow_extremum(saddle.orientation + 1e-3 * e_up, params, +1.0);
    const Vec3 minus = gradient_flow_extremum(saddle.orientation - 1e-3 * e_up, params, +1.0);
    if (distance(plus, minus) > 1e-4) return (plus - minus).normalized();

    // Lobes sit on the descending side instead.
    Vec3 e_dn;
    if (std::abs(b) > 1e-14)
        e_dn = ((saddle.hess_low - c) * t1 + b * t2).normalized();
    else
        e_dn = (a < c) ? t1 : t2;
    const Vec3 dplus = gradient_flow_extremum(saddle.orientation + 1e-3 * e_dn, params, -1.0);
    const Vec3 dminus = gradient_flow_extremum(saddle.orientation - 1e-3 * e_dn, params, -1.0);
    return (dplus - dminus).normalized();
}

OrbitClass classify_orbit(const HamiltonianParams& params, double E) {
    std::optional<CriticalPoint> saddle;
    try {
        saddle = separatrix_saddle(params);
    } catch (const BracketError&) {
        return OrbitClass::Libration;  // no saddle, every level set is connected
    }
    const double E_s = saddle->energy;
    if (std::abs(E - E_s) < 1e-10) return OrbitClass::Separatrix;

    // Which side of E_s holds two disconnected curves: follow the ascending
    // Hessian eigendirection from both sides of the saddle; reaching two
    // distinct maxima means the lobes (and hence rotations) live above E_s.
    Vec3 t1, t2;
    tangent_basis(saddle->orientation, t1, t2);
    const auto apply = [&](const Vec3& v) {
        return Vec3{(-2.0 * params.J - saddle->multiplier) * v.x,
                    (-4.0 * params.J - saddle->multiplier) * v.y,
                    -saddle->multiplier * v.z};
    };
    const double a = dot(t1, apply(t1));
    const double b = dot(t1, apply(t2));
    const double c = dot(t2, apply(t2));
    Vec3 e_up;
    if (std::abs(b) > 1e-14)
        e_up = ((saddle->hess_high - c) * t1 + b * t2).normalized();
    else
        e_up = (a > c) ? t1 : t2;
    const Vec3 plus = gradient_flow_extremum(saddle->orientation + 1e-3 * e_up, params, +1.0);
    const Vec3 minus = gradient_flow_extremum(saddle->orientation - 1e-3 * e_up, params, +1.0);
    const bool disconnected_above = distance(plus, minus) > 1e-4;

    const bool above = E > E_s;
    return (above == disconnected_above) ? OrbitClass::Rotation : OrbitClass::Libration;
}

} // namespace spinchaos
