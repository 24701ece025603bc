#include <doctest.h>

#include <chrono>
#include <cstdio>

#include "spinchaos/integrator.hpp"
#include "spinchaos/lyapunov.hpp"

using namespace spinchaos;

TEST_CASE("benettin smoke") {
    auto t0 = std::chrono::steady_clock::now();

    // throughput calibration: L=20 chain, 1000 time units
    {
        HamiltonianParams p{1.76, 1.0, 20};
        Rk4Integrator integ(p);
        auto st = SpinChainState::all_up(20);
        integ.integrate(st, 1000.0, 1e-3);
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        std::printf("throughput: 2e7 site-steps in %.0f ms -> %.1f Msite-steps/s\n", ms,
                    2e7 / ms / 1e3);
    }

    // noninteracting chain: lambda = 0
    {
        HamiltonianParams p{0.0, 1.0, 6};
        BenettinOptions opt;
        opt.max_resets = 100;
        auto run = benettin(ReferenceKind::Periodic, p, opt);
        std::printf("J=0: lambda = %.3e\n", run.lambda);
        CHECK(std::abs(run.lambda) < 1e-3);
    }

    // L=6 and L=18 at J=1.76 (periodic), L=18 ergodic
    for (int L : {6, 18}) {
        HamiltonianParams p{1.76, 1.0, L};
        BenettinOptions opt;
        opt.max_resets = 400;
        opt.adaptive = true;
        auto t1 = std::chrono::steady_clock::now();
        auto run = benettin(ReferenceKind::Periodic, p, opt);
        auto t2 = std::chrono::steady_clock::now();
        std::printf("J=1.76 L=%d periodic: lambda_p = %.4f +- %.4f (M=%d, %.1f s)\n", L,
                    run.lambda, run.stderr_lambda, run.M,
                    std::chrono::duration<double>(t2 - t1).count());
    }
    {
        HamiltonianParams p{1.76, 1.0, 18};
        BenettinOptions opt;
        opt.max_resets = 400;
        auto t1 = std::chrono::steady_clock::now();
        auto run = benettin(ReferenceKind::Ergodic, p, opt);
        auto t2 = std::chrono::steady_clock::now();
        std::printf("J=1.76 L=18 ergodic: lambda_e = %.4f +- %.4f (%.1f s)\n", run.lambda,
                    run.stderr_lambda, std::chrono::duration<double>(t2 - t1).count());
        CHECK(run.lambda == doctest::Approx(1.13).epsilon(0.12));
    }

    // fixed point exponent at J=J*, L=10
    {
        auto sep = find_separatrix_J(1.0);
        HamiltonianParams p{sep.J_star, 1.0, 10};
        auto t1 = std::chrono::steady_clock::now();
        auto fpe = fixed_point_exponent(p, sep.fixed_point.orientation, {1e-6, 1e-5, 1e-4});
        auto t2 = std::chrono::steady_clock::now();
        std::printf("lambda_S(L=10) = %.4f  per-d0 = {%.4f, %.4f, %.4f} (%.1f s)\n", fpe.lambda_S,
                    fpe.per_d0[0], fpe.per_d0[1], fpe.per_d0[2],
                    std::chrono::duration<double>(t2 - t1).count());
        CHECK(fpe.lambda_S == doctest::Approx(1.99).epsilon(0.05));
    }
}
