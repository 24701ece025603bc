#include "spinchaos/quantum/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "spinchaos/rng.hpp"

namespace spinchaos::quantum {

namespace {

double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

arma::cx_vec psi_up_sector(const MomentumSectorBasis& basis) {
    arma::cx_vec psi(basis.sector_dim(), arma::fill::zeros);
    psi(basis.index_of_code(0)) = 1.0;
    return psi;
}

arma::cx_vec psi_inf_full(const MomentumSectorBasis& basis, std::uint64_t seed) {
    const int L = basis.L();
    const int d = basis.local_dim();
    std::uint64_t rest_dim = 1;
    for (int i = 1; i < L; ++i) rest_dim *= static_cast<std::uint64_t>(d);

    Rng rng = make_rng(seed);
    arma::cx_vec psi(basis.full_dim(), arma::fill::zeros);
    const double N = static_cast<double>(rest_dim);
    // Site 1 is digit 0 (the least significant); |m=S> is digit value 0, so
    // the populated codes are exactly (rest * d + 0).
    for (std::uint64_t rest = 0; rest < rest_dim; ++rest) {
        const double x = -std::log(1.0 - uniform01(rng)) / N;  // |c|^2 ~ N e^{-N x}
        const double phi = 2.0 * std::numbers::pi * uniform01(rng);
        psi(rest * static_cast<std::uint64_t>(d)) =
            std::sqrt(x) * std::complex<double>(std::cos(phi), std::sin(phi));
    }
    psi /= arma::norm(psi);
    return psi;
}

arma::vec s1z_sector_diagonal(const MomentumSectorBasis& basis) {
    arma::vec diag(basis.sector_dim());
    for (int b = 0; b < basis.sector_dim(); ++b)
        diag(b) = basis.total_mz(basis.representatives()[static_cast<std::size_t>(b)]) /
                  static_cast<double>(basis.L());
    return diag;
}

arma::vec s1z_full_diagonal(const MomentumSectorBasis& basis) {
    arma::vec diag(basis.full_dim());
    for (std::uint64_t code = 0; code < basis.full_dim(); ++code)
        diag(static_cast<arma::uword>(code)) =
            basis.m_of_digit(static_cast<int>(code % static_cast<std::uint64_t>(basis.local_dim())));
    return diag;
}

ExpectationSeries evolve_observable(const EigenDecomposition& ed, const arma::cx_vec& psi0,
                                    const arma::vec& observable_diagonal,
                                    const std::vector<double>& times) {
    if (psi0.n_elem != ed.vectors.n_rows || observable_diagonal.n_elem != ed.vectors.n_rows)
        throw DimensionError("state/observable dimension does not match the eigenbasis");

    const arma::cx_vec c = ed.vectors.t() * psi0;

    ExpectationSeries series;
    series.times = times;
    series.values.resize(times.size());
    const arma::vec& E = ed.energies;
    const arma::uword N = E.n_elem;
    arma::cx_vec coeff(N);
    for (std::size_t it = 0; it < times.size(); ++it) {
        const double t = times[it];
        for (arma::uword n = 0; n < N; ++n) coeff(n) = c(n) * std::polar(1.0, -E(n) * t);
        const arma::cx_vec psi_t = ed.vectors * coeff;
        double value = 0.0;
        for (arma::uword i = 0; i < N; ++i) value += observable_diagonal(i) * std::norm(psi_t(i));
        series.values[it] = value;
    }
    return series;
}

KrylovPropagator::KrylovPropagator(const arma::sp_cx_mat& H, int krylov_dim)
    : H_(H), m_(krylov_dim) {}

void KrylovPropagator::step(arma::cx_vec& psi, double dt) const {
    const int m = std::min<int>(m_, static_cast<int>(psi.n_elem));
    arma::cx_mat V(psi.n_elem, m);
    arma::mat T(m, m, arma::fill::zeros);

    const double nrm0 = arma::norm(psi);
    V.col(0) = psi / nrm0;
    int built = m;
    for (int j = 0; j < m; ++j) {
        arma::cx_vec w = H_ * V.col(j);
        if (j > 0) w -= T(j, j - 1) * V.col(j - 1);
        const double alpha = std::real(arma::cdot(V.col(j), w));
        T(j, j) = alpha;
        w -= alpha * V.col(j);
        // full reorthogonalization keeps the small basis clean
        for (int k = 0; k <= j; ++k) w -= arma::cdot(V.col(k), w) * V.col(k);
        if (j + 1 < m) {
            const double beta = arma::norm(w);
            if (beta < 1e-14) { built = j + 1; break; }
            T(j + 1, j) = T(j, j + 1) = beta;
            V.col(j + 1) = w / beta;
        }
    }

    arma::vec eval;
    arma::mat evec;
    arma::eig_sym(eval, evec, T.submat(0, 0, built - 1, built - 1));
    arma::cx_vec small(built, arma::fill::zeros);
    for (int i = 0; i < built; ++i) {
        std::complex<double> acc = 0.0;
        for (int k = 0; k < built; ++k)
            acc += evec(i, k) * std::polar(1.0, -eval(k) * dt) * evec(0, k);
        small(i) = acc;
    }
    psi = V.cols(0, built - 1) * small * nrm0;
    psi /= arma::norm(psi) / nrm0;   // keep the norm drift at rounding level
}

ExpectationSeries evolve_observable_krylov(const arma::sp_cx_mat& H, const arma::cx_vec& psi0,
                                           const arma::vec& observable_diagonal, double t_max,
                                           double dt_sample, int krylov_dim) {
    KrylovPropagator prop(H, krylov_dim);
    arma::cx_vec psi = psi0;
    ExpectationSeries series;
    double t = 0.0;
    while (t <= t_max + 1e-12) {
        series.times.push_back(t);
        double value = 0.0;
        for (arma::uword i = 0; i < psi.n_elem; ++i)
            value += observable_diagonal(i) * std::norm(psi(i));
        series.values.push_back(value);
        prop.step(psi, dt_sample);
        t += dt_sample;
    }
    return series;
}

} // namespace spinchaos::quantum
