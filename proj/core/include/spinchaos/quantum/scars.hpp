#pragma once

#include <cstdint>

#include "spinchaos/quantum/dynamics.hpp"

namespace spinchaos::quantum {

/// Lifts a sector state to the full product basis (each orbit member gets the
/// sector coefficient divided by sqrt of the orbit size).
arma::cx_vec lift_to_full(const MomentumSectorBasis& basis, const arma::cx_vec& sector_state);

/// Von Neumann entropy (nats) of the reduced density matrix over sites
/// 1..cut of a full-basis pure state; Schmidt values below 1e-14 are clipped.
double entanglement_entropy(const MomentumSectorBasis& basis, const arma::cx_vec& full_state,
                            int cut);

/// Mean adjacent-gap ratio <r> = < min(s_n, s_{n-1}) / max(s_n, s_{n-1}) >.
/// Degenerate spacings contribute r = 0 and are counted.
struct RStatistic {
    double mean_r = 0.0;
    int used_spacings = 0;
    int degenerate = 0;
};

RStatistic r_statistic(const arma::vec& energies, double edge_trim = 0.10);

/// Per-eigenstate scar diagnostics of the zero-momentum sector.
struct ScarReport {
    arma::vec energies;
    arma::vec entropy;              // raw nats
    arma::vec entropy_normalized;   // max over the sector = 1
    arma::vec overlap;              // |<Psi_up|E_n>|^2
    arma::vec outlier_score;        // (median window entropy - E_n entropy) / MAD
    std::vector<int> top_overlap;   // indices of the 5 largest overlaps
    std::vector<int> scars;         // central-half states with score > 5
    int max_overlap_index = 0;
};

struct ScarReportOptions {
    int window_levels = 20;    // +- levels for the running median
    double score_threshold = 5.0;
    int top_count = 5;
};

ScarReport scar_report(const MomentumSectorBasis& basis, const EigenDecomposition& ed,
                       const ScarReportOptions& options = {});

/// Spherical overlap map |<E_n|Psi(theta, phi)>|^2 where |Psi(theta, phi)> has
/// every spin fully polarised along (theta, phi).
struct SphericalMap {
    int n_theta = 90;
    int n_phi = 180;
    std::vector<double> theta;                // n_theta midpoints in [0, pi]
    std::vector<double> phi;                  // n_phi midpoints in [0, 2pi)
    std::vector<std::vector<double>> value;   // [theta][phi]
};

SphericalMap spherical_overlap_map(const MomentumSectorBasis& basis,
                                   const arma::cx_vec& eigenstate_sector, int n_theta = 90,
                                   int n_phi = 180);

/// Amplitudes <m|e^{-i phi Sz} e^{-i theta Sy}|S> of the rotated one-site
/// state, m ordered S..-S.
arma::cx_vec rotated_site_state(double S, double theta, double phi);

/// Participation ratio P = 1 / sum_n |<Psi_up|E_n>|^4 over the sector.
double participation_ratio(const MomentumSectorBasis& basis, const EigenDecomposition& ed);

struct ParticipationScan {
    std::vector<double> J_tilde;
    std::vector<double> P;
    double peak_J = 0.0;       // quadratic fit around the maximum
    double peak_P = 0.0;
    double prominence = 0.0;   // (max - edge baseline) / max
};

ParticipationScan participation_ratio_scan(double S, int L, const std::vector<double>& J_grid,
                                           double h, int jobs = 0);

} // namespace spinchaos::quantum
