#pragma once

#include <armadillo>

namespace spinchaos::quantum {

/// Dense spin-S matrices in the |m> basis ordered m = S, S-1, ..., -S.
struct SpinOperators {
    double S = 0.5;
    int dim = 2;          // 2S + 1
    arma::cx_mat Sx, Sy, Sz;
    arma::cx_mat Sp, Sm;  // ladder operators
};

/// Standard ladder construction; 2S must be a positive integer.
SpinOperators spin_operators(double S);

/// Row index of |m> in the m = S..-S ordering.
inline int m_index(double S, double m) { return static_cast<int>(std::lround(S - m)); }

} // namespace spinchaos::quantum
