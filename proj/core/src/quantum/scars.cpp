#include "spinchaos/quantum/scars.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinchaos/fit.hpp"
#include "spinchaos/parallel.hpp"
#include "spinchaos/quantum/spin_ops.hpp"

namespace spinchaos::quantum {

arma::cx_vec lift_to_full(const MomentumSectorBasis& basis, const arma::cx_vec& sector_state) {
    if (static_cast<int>(sector_state.n_elem) != basis.sector_dim())
        throw DimensionError("sector state dimension mismatch");
    arma::cx_vec full(basis.full_dim(), arma::fill::zeros);
    for (int b = 0; b < basis.sector_dim(); ++b) {
        const std::complex<double> coeff =
            sector_state(b) / std::sqrt(static_cast<double>(basis.orbit_size(b)));
        std::uint64_t code = basis.representatives()[static_cast<std::size_t>(b)];
        for (int t = 0; t < basis.orbit_size(b); ++t) {
            full(static_cast<arma::uword>(code)) = coeff;
            code = basis.translate(code);
        }
    }
    return full;
}

double entanglement_entropy(const MomentumSectorBasis& basis, const arma::cx_vec& full_state,
                            int cut) {
    const int L = basis.L();
    if (cut < 1 || cut >= L) throw InvalidParameterError("cut must satisfy 1 <= cut < L");
    std::uint64_t dim_a = 1;
    for (int i = 0; i < cut; ++i) dim_a *= static_cast<std::uint64_t>(basis.local_dim());
    const std::uint64_t dim_b = basis.full_dim() / dim_a;

    // Sites 1..cut are the low digits: code = row + dim_a * col.
    arma::cx_mat psi(dim_a, dim_b);
    for (std::uint64_t col = 0; col < dim_b; ++col)
        for (std::uint64_t row = 0; row < dim_a; ++row)
            psi(row, col) = full_state(static_cast<arma::uword>(row + dim_a * col));

    arma::vec sv = arma::svd(psi);
    double entropy = 0.0;
    for (arma::uword i = 0; i < sv.n_elem; ++i) {
        const double p = sv(i) * sv(i);
        if (p > 1e-14) entropy -= p * std::log(p);
    }
    return entropy;
}

RStatistic r_statistic(const arma::vec& energies, double edge_trim) {
    arma::vec sorted = arma::sort(energies);
    const int n = static_cast<int>(sorted.n_elem);
    const int skip = static_cast<int>(std::floor(edge_trim * n));
    const int lo = skip, hi = n - skip;
    if (hi - lo < 100)
        throw InvalidParameterError("r_statistic needs >= 100 levels after trimming");

    RStatistic st;
    double sum = 0.0;
    for (int i = lo + 1; i + 1 < hi; ++i) {
        const double s0 = sorted(i) - sorted(i - 1);
        const double s1 = sorted(i + 1) - sorted(i);
        const double mx = std::max(s0, s1);
        if (mx <= 0.0) {
            ++st.degenerate;
            ++st.used_spacings;
            continue;
        }
        sum += std::min(s0, s1) / mx;
        ++st.used_spacings;
    }
    st.mean_r = sum / static_cast<double>(st.used_spacings);
    return st;
}

ScarReport scar_report(const MomentumSectorBasis& basis, const EigenDecomposition& ed,
                       const ScarReportOptions& options) {
    const int N = static_cast<int>(ed.energies.n_elem);
    ScarReport report;
    report.energies = ed.energies;
    report.entropy.set_size(N);
    report.overlap.set_size(N);
    report.outlier_score.set_size(N);

    const int cut = basis.L() / 2;
    const int psi_up_index = basis.index_of_code(0);
    parallel_for(static_cast<std::size_t>(N), 0, [&](std::size_t n) {
        const arma::cx_vec full = lift_to_full(basis, ed.vectors.col(n));
        report.entropy(n) = entanglement_entropy(basis, full, cut);
        report.overlap(n) = std::norm(ed.vectors(psi_up_index, static_cast<arma::uword>(n)));
    });
    report.entropy_normalized = report.entropy / report.entropy.max();

    // Outlier score against the running median over +-window_levels states,
    // excluding the state itself; positive when the entropy sits below its
    // neighbourhood.
    for (int n = 0; n < N; ++n) {
        const int lo = std::max(0, n - options.window_levels);
        const int hi = std::min(N - 1, n + options.window_levels);
        std::vector<double> window;
        for (int i = lo; i <= hi; ++i)
            if (i != n) window.push_back(report.entropy(i));
        const double med = median(window);
        const double mad = std::max(median_abs_deviation(window, med), 1e-12);
        report.outlier_score(n) = (med - report.entropy(n)) / mad;
    }

    std::vector<int> order(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return report.overlap(a) > report.overlap(b); });
    for (int i = 0; i < std::min(options.top_count, N); ++i)
        report.top_overlap.push_back(order[static_cast<std::size_t>(i)]);
    report.max_overlap_index = order.front();

    for (int n = N / 4; n < 3 * N / 4; ++n)
        if (report.outlier_score(n) > options.score_threshold) report.scars.push_back(n);
    return report;
}

arma::cx_vec rotated_site_state(double S, double theta, double phi) {
    const auto ops = spin_operators(S);
    arma::cx_vec up(ops.dim, arma::fill::zeros);
    up(0) = 1.0;
    const arma::cx_mat rot_y = arma::expmat(std::complex<double>(0.0, -theta) * ops.Sy);
    const arma::cx_mat rot_z = arma::expmat(std::complex<double>(0.0, -phi) * ops.Sz);
    return rot_z * (rot_y * up);
}

SphericalMap spherical_overlap_map(const MomentumSectorBasis& basis,
                                   const arma::cx_vec& eigenstate_sector, int n_theta,
                                   int n_phi) {
    SphericalMap map;
    map.n_theta = n_theta;
    map.n_phi = n_phi;
    map.theta.resize(static_cast<std::size_t>(n_theta));
    map.phi.resize(static_cast<std::size_t>(n_phi));
    map.value.assign(static_cast<std::size_t>(n_theta),
                     std::vector<double>(static_cast<std::size_t>(n_phi), 0.0));

    const int d = basis.local_dim();
    const int L = basis.L();
    const int dim = basis.sector_dim();

    // Per-representative digit counts: the overlap with a uniform product
    // state depends only on how many sites hold each m.
    std::vector<std::vector<int>> counts(static_cast<std::size_t>(dim),
                                         std::vector<int>(static_cast<std::size_t>(d), 0));
    for (int b = 0; b < dim; ++b) {
        std::uint64_t code = basis.representatives()[static_cast<std::size_t>(b)];
        for (int i = 0; i < L; ++i) {
            ++counts[static_cast<std::size_t>(b)]
                    [static_cast<std::size_t>(code % static_cast<std::uint64_t>(d))];
            code /= static_cast<std::uint64_t>(d);
        }
    }

    const auto ops = spin_operators(basis.S());
    arma::cx_vec up(ops.dim, arma::fill::zeros);
    up(0) = 1.0;

    for (int it = 0; it < n_theta; ++it) {
        const double theta = std::numbers::pi * (it + 0.5) / n_theta;
        map.theta[static_cast<std::size_t>(it)] = theta;
        const arma::cx_vec tilted =
            arma::expmat(std::complex<double>(0.0, -theta) * ops.Sy) * up;
        arma::cx_vec site(ops.dim);
        for (int ip = 0; ip < n_phi; ++ip) {
            const double phi = 2.0 * std::numbers::pi * ip / n_phi;
            if (it == 0) map.phi[static_cast<std::size_t>(ip)] = phi;
            // e^{-i phi Sz} is diagonal with phases e^{-i phi m}.
            for (int v = 0; v < d; ++v)
                site(v) = std::polar(1.0, -phi * (basis.S() - v)) * tilted(v);

            // <b_sym|Psi(theta,phi)> = sqrt(R_b) prod_m site(m)^count_m.
            std::complex<double> overlap = 0.0;
            for (int b = 0; b < dim; ++b) {
                std::complex<double> prod = 1.0;
                for (int v = 0; v < d; ++v) {
                    const int c = counts[static_cast<std::size_t>(b)][static_cast<std::size_t>(v)];
                    for (int k = 0; k < c; ++k) prod *= site(v);
                }
                overlap += std::conj(eigenstate_sector(b)) * prod *
                           std::sqrt(static_cast<double>(basis.orbit_size(b)));
            }
            map.value[static_cast<std::size_t>(it)][static_cast<std::size_t>(ip)] =
                std::norm(overlap);
        }
    }
    return map;
}

double participation_ratio(const MomentumSectorBasis& basis, const EigenDecomposition& ed) {
    const int psi_up_index = basis.index_of_code(0);
    double sum4 = 0.0;
    for (arma::uword n = 0; n < ed.energies.n_elem; ++n)
        sum4 += std::pow(std::norm(ed.vectors(psi_up_index, n)), 2);
    return 1.0 / sum4;
}

ParticipationScan participation_ratio_scan(double S, int L, const std::vector<double>& J_grid,
                                           double h, int jobs) {
    ParticipationScan scan;
    scan.J_tilde = J_grid;
    scan.P.resize(J_grid.size());

    const auto basis = MomentumSectorBasis::build(S, L);
    parallel_for(J_grid.size(), jobs, [&](std::size_t i) {
        QuantumParams qp{S, L, J_grid[i], h};
        const auto H = build_sector_hamiltonian(basis, qp);
        const auto ed = diagonalize(H);
        scan.P[i] = participation_ratio(basis, ed);
    });

    std::size_t imax = 0;
    for (std::size_t i = 1; i < scan.P.size(); ++i)
        if (scan.P[i] > scan.P[imax]) imax = i;
    scan.peak_P = scan.P[imax];
    if (imax > 0 && imax + 1 < scan.P.size()) {
        scan.peak_J = parabola_vertex(scan.J_tilde[imax - 1], scan.P[imax - 1], scan.J_tilde[imax],
                                      scan.P[imax], scan.J_tilde[imax + 1], scan.P[imax + 1]);
    } else {
        scan.peak_J = scan.J_tilde[imax];
    }
    const double edge = std::max(scan.P.front(), scan.P.back());
    scan.prominence = (scan.peak_P - edge) / scan.peak_P;
    return scan;
}

} // namespace spinchaos::quantum
