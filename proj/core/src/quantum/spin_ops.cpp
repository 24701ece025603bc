#include "spinchaos/quantum/spin_ops.hpp"

#include "spinchaos/errors.hpp"

namespace spinchaos::quantum {

SpinOperators spin_operators(double S) {
    const double twoS = 2.0 * S;
    if (!(S > 0.0) || std::abs(twoS - std::lround(twoS)) > 1e-12)
        throw InvalidParameterError("spin S must satisfy 2S integer >= 1");

    SpinOperators ops;
    ops.S = S;
    ops.dim = static_cast<int>(std::lround(twoS)) + 1;
    ops.Sp.zeros(ops.dim, ops.dim);
    ops.Sm.zeros(ops.dim, ops.dim);
    ops.Sz.zeros(ops.dim, ops.dim);

    for (int i = 0; i < ops.dim; ++i) {
        const double m = S - i;
        ops.Sz(i, i) = m;
        if (i > 0) {
            // S+ |m> = sqrt(S(S+1) - m(m+1)) |m+1>; row i-1 is m+1.
            ops.Sp(i - 1, i) = std::sqrt(S * (S + 1.0) - m * (m + 1.0));
        }
        if (i < ops.dim - 1) {
            ops.Sm(i + 1, i) = std::sqrt(S * (S + 1.0) - m * (m - 1.0));
        }
    }
    ops.Sx = 0.5 * (ops.Sp + ops.Sm);
    ops.Sy = std::complex<double>(0.0, -0.5) * (ops.Sp - ops.Sm);
    return ops;
}

} // namespace spinchaos::quantum
