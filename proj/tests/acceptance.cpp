// Acceptance suite: end-to-end checks of the library's headline claims, one
// pass/fail line per criterion, each with a pinned tolerance and a runtime
// budget. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "oddtangle/invariants.hpp"
#include "oddtangle/rng.hpp"
#include "oddtangle/state.hpp"
#include "oddtangle/symbolic.hpp"
#include "oddtangle/verify.hpp"

using namespace oddtangle;

namespace {

int g_failures = 0;
int g_index = 0;

struct Budget {
    double limit_ms;
};

void report(const std::string& name, bool pass, double deviation, double tolerance,
            double elapsed_ms, Budget budget) {
    const bool in_time = elapsed_ms < budget.limit_ms;
    const bool ok = pass && in_time;
    ++g_index;
    std::printf("[%s] %2d. %-46s dev=%9.3e tol=%7.1e time=%8.2f ms (budget %g ms)%s\n",
                ok ? "PASS" : "FAIL", g_index, name.c_str(), deviation, tolerance, elapsed_ms,
                budget.limit_ms, in_time ? "" : " TIME EXCEEDED");
    if (!ok) ++g_failures;
}

template <typename F>
void criterion(const std::string& name, double tolerance, Budget budget, F&& deviation_fn) {
    const auto start = std::chrono::steady_clock::now();
    const double deviation = deviation_fn();
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report(name, deviation <= tolerance, deviation, tolerance, elapsed_ms, budget);
}

PureState example_state() {
    std::vector<cplx> amps(32, cplx{0.0});
    amps[0] = amps[7] = amps[24] = amps[31] = cplx{0.5};
    return PureState(5, std::move(amps));
}

PureState example_state_swapped() {
    std::vector<cplx> amps(32, cplx{0.0});
    amps[0] = amps[9] = amps[22] = amps[31] = cplx{0.5};
    return PureState(5, std::move(amps));
}

}  // namespace

int main() {
    // 1. tau of the product example vanishes.
    criterion("tau anchor: tau(psi) = 0", 1e-12, {1.0},
              [] { return std::abs(tau(example_state()).normalized); });

    // 2. tau of the (1<->5)-permuted state is 1, and the permuted state is
    //    exactly the expected one.
    criterion("tau anchor: tau((1 5) psi) = 1", 1e-12, {1.0}, [] {
        const PureState moved = apply_qubit_permutation(
            example_state(), QubitPermutation::transposition(1, 5, 5));
        const double image_dev = max_abs_diff(moved, example_state_swapped());
        const double tau_dev = std::abs(tau(example_state_swapped()).normalized - 1.0);
        return std::max(image_dev, tau_dev);
    });

    // 3. R of the product example is 3/5 with components (0, 0, 1, 1, 1).
    criterion("R anchor: R(psi) = 3/5, components 0,0,1,1,1", 1e-12, {10.0}, [] {
        const PureState psi = example_state();
        double dev = std::abs(big_r(psi).normalized - 0.6);
        const double expected[5] = {0.0, 0.0, 1.0, 1.0, 1.0};
        for (int i = 1; i <= 5; ++i)
            dev = std::max(dev, std::abs(tau_i(psi, i).normalized - expected[i - 1]));
        return dev;
    });

    // 4. For three qubits, R collapses to tau and the tau_i agree pairwise.
    criterion("n=3 collapse: R = tau over 1000 states", 1e-12, {1000.0}, [] {
        double worst = 0.0;
        for (long t = 0; t < 1000; ++t) {
            const PureState psi = random_state(3, derive_seed(2024, "acceptance.n3", t));
            worst = std::max(worst, std::abs(big_r(psi).normalized - tau(psi).normalized));
        }
        return worst;
    });
    criterion("n=3 symmetry: pairwise tau_i agreement", 1e-10, {1000.0}, [] {
        double worst = 0.0;
        for (long t = 0; t < 1000; ++t) {
            const PureState psi = random_state(3, derive_seed(2024, "acceptance.n3", t));
            const double t1 = tau_i(psi, 1).normalized;
            const double t2 = tau_i(psi, 2).normalized;
            const double t3 = tau_i(psi, 3).normalized;
            worst = std::max({worst, std::abs(t1 - t2), std::abs(t1 - t3), std::abs(t2 - t3)});
        }
        return worst;
    });

    // 5. Symbolic identities: the three form variants are one canonical
    //    polynomial equal to the n=3 expansion; the n=3 expansion is fixed by
    //    all 6 permutations; the n=5 expansion is NOT fixed by (1,2).
    criterion("symbolic identities and (non-)symmetry", 0.0, {5000.0}, [] {
        const auto forms = three_qubit_form_variants();
        const Polynomial core3 = expand_tau_core(3);
        bool ok = poly_equal(forms[0], forms[1]) && poly_equal(forms[0], forms[2]) &&
                  poly_equal(forms[0], core3);

        std::vector<int> image{1, 2, 3};
        do {
            ok = ok && poly_equal(permute_polynomial(core3, QubitPermutation(image)), core3);
        } while (std::next_permutation(image.begin(), image.end()));

        const Polynomial core5 = expand_tau_core(5);
        ok = ok &&
             !poly_equal(permute_polynomial(core5, QubitPermutation::transposition(1, 2, 5)), core5);
        return ok ? 0.0 : 1.0;
    });

    // 6. R is invariant under all 120 permutations of 5 qubits.
    criterion("R invariance: 120 perms x 100 states (n=5)", 1e-10, {30000.0}, [] {
        VerificationConfig cfg;
        cfg.master_seed = 2024;
        cfg.trials = 100;
        cfg.n_values = {5};
        const CheckRecord rec = check_property3(cfg);
        return rec.trials_run == 100L * 120L ? rec.max_deviation : 1.0;
    });

    // 7. Determinant scaling over 500 (state, chain) pairs per n, and SL
    //    invariance of the normalized values.
    criterion("SLOCC det^2 scaling + SL invariance (n=3,5)", 1e-8, {30000.0}, [] {
        VerificationConfig cfg;
        cfg.master_seed = 2024;
        cfg.trials = 500;
        cfg.n_values = {3, 5};
        const CheckRecord scaling = check_det_scaling(cfg);
        const CheckRecord sl = check_sl_invariance(cfg);
        return std::max(scaling.max_deviation, sl.max_deviation);
    });

    // 8a. Bounds: normalized tau and R within [0, 1] over 1e4 states per n.
    criterion("bounds: tau, R in [0,1], 1e4 states, n=3,5,7", 1e-12, {120000.0}, [] {
        VerificationConfig cfg;
        cfg.master_seed = 2024;
        cfg.trials = 10000;
        cfg.n_values = {3, 5, 7};
        return check_bounds(cfg).max_deviation;
    });

    // 8b. Monotone: Born-weighted averages never rise, 1e3 measurements.
    criterion("monotone under 1e3 local measurements", 1e-9, {120000.0}, [] {
        VerificationConfig cfg;
        cfg.master_seed = 2024;
        cfg.trials = 500;  // per n over n = 3, 5
        cfg.n_values = {3, 5};
        return check_monotone(cfg).max_deviation;
    });

    // 9. Degree-4 homogeneity of the raw value.
    criterion("homogeneity: tau(c psi) = |c|^4 tau(psi), 100 draws", 1e-10, {1000.0}, [] {
        double worst = 0.0;
        for (long t = 0; t < 100; ++t) {
            std::mt19937_64 rng(derive_seed(2024, "acceptance.homogeneity", t));
            const int n = (t % 2 == 0) ? 3 : 5;
            const PureState psi = random_state(n, rng);
            const cplx c = normal_cplx(rng);
            std::vector<cplx> amps(psi.amps().begin(), psi.amps().end());
            for (cplx& a : amps) a *= c;
            const double lhs = tau(PureState(n, amps)).raw;
            const double rhs = std::pow(std::abs(c), 4.0) * tau(psi).raw;
            worst = std::max(worst, std::abs(lhs - rhs) /
                                        std::max({std::abs(lhs), std::abs(rhs), 1e-30}));
        }
        return worst;
    });

    if (g_failures == 0)
        std::printf("acceptance: all %d criteria passed\n", g_index);
    else
        std::printf("acceptance: %d of %d criteria FAILED\n", g_failures, g_index);
    return g_failures == 0 ? 0 : 1;
}
