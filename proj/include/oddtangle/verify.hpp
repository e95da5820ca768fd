// verify.hpp
// Monte Carlo and exhaustive verification campaigns for the invariant
// properties: invariance of tau^(i) under permutations of the other qubits,
// transposition exchange of tau^(i) and tau^(j), full permutation invariance
// of R, SLOCC determinant scaling, [0,1] bounds, the entanglement-monotone
// inequality under two-outcome local measurements, and product-state
// behavior.
//
// Campaigns are deterministic: every trial's randomness comes from
// derive_seed(master_seed, check name, trial index), so results are
// independent of execution order and reproducible from the config alone.
// Check failures are recorded, never thrown.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "oddtangle/state.hpp"

namespace oddtangle {

struct VerificationConfig {
    std::uint64_t master_seed = 1;
    int trials = 200;                // random states per check per n
    std::vector<int> n_values = {3, 5};
    double tol_abs = 1e-10;          // invariant equalities on normalized values
    double tol_rel = 1e-8;           // scaling laws with large determinant factors
    double monotone_tol = 1e-9;      // one-sided slack for the monotone test
    int perm_samples = 500;          // sampled permutations when n >= 7

    void validate() const;  // throws std::invalid_argument
};

struct CheckRecord {
    std::string name;
    long trials_run = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = true;  // max_deviation <= tolerance
    nlohmann::json worst_case;  // serialized inputs; re-runnable via replay_deviation
    nlohmann::json info;        // extra observations (per-n maxima, branch counts, ...)
};

struct VerificationReport {
    VerificationConfig config;
    std::vector<CheckRecord> checks;
    double wall_time_ms = 0.0;

    bool all_pass() const;
};

// Reference example values: tau = 0 and tau = 1 on the pair of
// 5-qubit states related by the (1 5) transposition, and R = 3/5 on the
// product of the two Bell-type factors, with per-qubit components
// (0, 0, 1, 1, 1). Gate tolerance 1e-12.
CheckRecord check_anchors(const VerificationConfig& cfg);

// tau^(i)(sigma psi) == tau^(i)(psi) for sigma fixing position i
// (exhaustive over the (n-1)! permutations for n <= 5).
CheckRecord check_property1(const VerificationConfig& cfg);

// tau^(i)((i,j) psi) == tau^(j)(psi) and vice versa, all pairs i < j.
CheckRecord check_property2(const VerificationConfig& cfg);

// R(sigma psi) == R(psi) for every sigma (exhaustive n! for n <= 5,
// perm_samples samples otherwise).
CheckRecord check_property3(const VerificationConfig& cfg);

// tau^(i)(chain psi).raw == tau^(i)(psi).raw * prod |det A_k|^2, same for R;
// relative residual against the larger side. The info block also records the
// residual of the opposite orientation, which coincides only for
// determinant-1 chains.
CheckRecord check_det_scaling(const VerificationConfig& cfg);

// Determinant-1 chains leave raw tau and R unchanged; determinant-1 unitary
// (LU) chains additionally leave the normalized values unchanged. Both are
// verified; non-unitary determinant-1 chains rescale the norm, so normalized
// values are only invariant in the unitary subcase.
CheckRecord check_sl_invariance(const VerificationConfig& cfg);

// Normalized tau and R lie in [0, 1] (slack 1e-12) on random states.
CheckRecord check_bounds(const VerificationConfig& cfg);

// Born-weighted average of the measure over the two outcomes of a random
// local measurement never exceeds the input value beyond monotone_tol.
// Outcome branches with probability < 1e-14 contribute zero.
CheckRecord check_monotone(const VerificationConfig& cfg);

// Product states: tau vanishes whenever position 1 is held by the even
// factor (or by a single-qubit odd factor), and otherwise factorizes as
// tau^(i_a)(odd factor) * |B(even factor, even factor)|^2, where i_a is the
// odd-factor qubit at position 1. Also pins the R = 3/5 example, which shows
// R is not multiplicative.
CheckRecord check_product_behavior(const VerificationConfig& cfg);

// All checks above, in a fixed order.
VerificationReport run_campaign(const VerificationConfig& cfg);
// The anchor check only.
VerificationReport run_anchor_campaign(const VerificationConfig& cfg);

// Recomputes a record's deviation from its serialized worst case. Every
// reported worst case reproduces its reported deviation exactly (the same
// deviation function runs on the same inputs).
double replay_deviation(const CheckRecord& record);

nlohmann::json config_to_json(const VerificationConfig& cfg);
VerificationConfig config_from_json(const nlohmann::json& doc);
nlohmann::json report_to_json(const VerificationReport& report);
// One row per check: name, trials, max_dev, pass.
std::string report_to_csv(const VerificationReport& report);

}  // namespace oddtangle
