#include "oddtangle/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "oddtangle/invariants.hpp"
#include "oddtangle/io.hpp"
#include "oddtangle/rng.hpp"

namespace oddtangle {

namespace {

using nlohmann::json;

constexpr double kAnchorTol = 1e-12;
constexpr double kBoundsSlack = 1e-12;
constexpr double kDegenerateOutcome = 1e-14;

std::uint64_t trial_key(int n, long t) {
    return (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(t);
}

// Keeps the largest deviation and its (lazily serialized) inputs. The
// reduction is a plain max, so any trial execution order yields the same
// record.
struct DevTracker {
    double max_dev = 0.0;
    long trials = 0;
    json worst;

    template <typename MakeWorst>
    void record(double dev, MakeWorst&& make_worst) {
        ++trials;
        if (worst.is_null() || dev > max_dev) {
            max_dev = dev;
            worst = make_worst();
        }
    }

    CheckRecord finish(std::string name, double tolerance, json info = json::object()) const {
        CheckRecord rec;
        rec.name = std::move(name);
        rec.trials_run = trials;
        rec.max_deviation = max_dev;
        rec.tolerance = tolerance;
        rec.pass = max_dev <= tolerance;
        rec.worst_case = worst;
        rec.info = std::move(info);
        return rec;
    }
};

// --- reference example states ---

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

// --- per-trial deviation functions, shared with replay ---

double dev_property1(const PureState& state, int i, const QubitPermutation& perm) {
    const double base = tau_i(state, i).normalized;
    const double moved = tau_i(apply_qubit_permutation(state, perm), i).normalized;
    return std::abs(moved - base);
}

double dev_property2(const PureState& state, int i, int j) {
    const PureState swapped =
        apply_qubit_permutation(state, QubitPermutation::transposition(i, j, state.num_qubits()));
    const double d1 = std::abs(tau_i(swapped, i).normalized - tau_i(state, j).normalized);
    const double d2 = std::abs(tau_i(swapped, j).normalized - tau_i(state, i).normalized);
    return std::max(d1, d2);
}

double dev_property3(const PureState& state, const QubitPermutation& perm) {
    return std::abs(big_r(apply_qubit_permutation(state, perm)).normalized -
                    big_r(state).normalized);
}

double relative_residual(double lhs, double rhs) {
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-30});
}

double dev_det_scaling(const PureState& state, const LocalOperatorChain& chain) {
    const PureState mapped = apply_local_operators(state, chain);
    const double factor = chain.abs_det_sq_product();
    double worst = 0.0;
    for (int i = 1; i <= state.num_qubits(); ++i)
        worst = std::max(worst, relative_residual(tau_i(mapped, i).raw, tau_i(state, i).raw * factor));
    worst = std::max(worst, relative_residual(big_r(mapped).raw, big_r(state).raw * factor));
    return worst;
}

// The opposite reading of the scaling law (pre-image value vs factored image
// value); coincides with dev_det_scaling only when prod |det| = 1.
double dev_det_scaling_reversed(const PureState& state, const LocalOperatorChain& chain) {
    const PureState mapped = apply_local_operators(state, chain);
    const double factor = chain.abs_det_sq_product();
    return relative_residual(tau(state).raw, tau(mapped).raw * factor);
}

// Determinant-1 chains leave the raw values unchanged; they are not
// isometries, so the invariance of normalized values is specific to the
// unitary (LU) subgroup and is checked against a det-1 unitary chain.
double dev_sl_invariance(const PureState& state, const LocalOperatorChain& sl_chain,
                         const LocalOperatorChain& lu_chain) {
    const PureState sl_mapped = apply_local_operators(state, sl_chain);
    double worst = relative_residual(tau(sl_mapped).raw, tau(state).raw);
    worst = std::max(worst, relative_residual(big_r(sl_mapped).raw, big_r(state).raw));

    const PureState lu_mapped = apply_local_operators(state, lu_chain);
    worst = std::max(worst, std::abs(tau(lu_mapped).normalized - tau(state).normalized));
    worst = std::max(worst, std::abs(big_r(lu_mapped).normalized - big_r(state).normalized));
    return worst;
}

// Out-of-range amount of normalized tau and R beyond [0, 1].
double dev_bounds(const PureState& state) {
    const double t = tau(state).normalized;
    const double r = big_r(state).normalized;
    double worst = 0.0;
    for (double v : {t, r}) worst = std::max({worst, v - 1.0, -v});
    return worst;
}

double dev_monotone(const PureState& state, int q, const Mat2& m1, const Mat2& m2) {
    const int n = state.num_qubits();
    const double base_t = tau(state).normalized;
    const double base_r = big_r(state).normalized;
    double avg_t = 0.0;
    double avg_r = 0.0;
    for (const Mat2& m : {m1, m2}) {
        LocalOperatorChain chain = LocalOperatorChain::identity(n);
        chain.set_op(q, m);
        const PureState outcome = apply_local_operators(state, chain);
        const double p = outcome.norm() * outcome.norm();
        if (p < kDegenerateOutcome) continue;
        avg_t += p * tau(outcome).normalized;
        avg_r += p * big_r(outcome).normalized;
    }
    return std::max({avg_t - base_t, avg_r - base_r, 0.0});
}

struct ProductTrialResult {
    double dev = 0.0;
    bool multiplicative = false;
};

// psi = placement(a (x) b). tau vanishes unless position 1 is held by a
// qubit of the odd factor with at least 3 qubits, in which case it
// factorizes as tau^(i_a)(odd) * |B(even, even)|^2.
ProductTrialResult product_trial(const PureState& a, const PureState& b,
                                 const QubitPermutation& placement) {
    const int k = a.num_qubits();
    const int n = k + b.num_qubits();
    const PureState psi = apply_qubit_permutation(tensor_product(a, b), placement);
    const int source = placement.inverse()(1);  // product qubit landing at position 1
    const bool a_is_odd = (k % 2 == 1);

    double predicted = 0.0;
    bool multiplicative = false;
    if (a_is_odd && source <= k && k >= 3) {
        const cplx bb = sigma_y_bilinear(b.amps(), b.amps());
        predicted = tau_i(a, source).raw * std::norm(bb);
        multiplicative = true;
    } else if (!a_is_odd && source > k && n - k >= 3) {
        const cplx aa = sigma_y_bilinear(a.amps(), a.amps());
        predicted = tau_i(b, source - k).raw * std::norm(aa);
        multiplicative = true;
    }
    return {std::abs(tau(psi).raw - predicted), multiplicative};
}

double dev_anchor(const std::string& anchor_case) {
    const PureState psi = example_state();
    const PureState psi2 = example_state_swapped();
    if (anchor_case == "tau_zero") return std::abs(tau(psi).normalized);
    if (anchor_case == "tau_one") return std::abs(tau(psi2).normalized - 1.0);
    if (anchor_case == "permutation_image")
        return max_abs_diff(apply_qubit_permutation(psi, QubitPermutation::transposition(1, 5, 5)), psi2);
    if (anchor_case == "big_r_product") return std::abs(big_r(psi).normalized - 0.6);
    if (anchor_case == "components") {
        const double expected[5] = {0.0, 0.0, 1.0, 1.0, 1.0};
        double worst = 0.0;
        for (int i = 1; i <= 5; ++i)
            worst = std::max(worst, std::abs(tau_i(psi, i).normalized - expected[i - 1]));
        return worst;
    }
    throw std::invalid_argument("unknown anchor case '" + anchor_case + "'");
}

json worst_property1(const PureState& s, int i, const QubitPermutation& p) {
    return json{{"kind", "property1"}, {"n", s.num_qubits()}, {"i", i},
                {"state", state_to_json(s)}, {"perm", p.image()}};
}

json worst_state_only(const char* kind, const PureState& s) {
    return json{{"kind", kind}, {"n", s.num_qubits()}, {"state", state_to_json(s)}};
}

// Iterates f over every permutation of {1..n} fixing the given position
// (fixed = 0 means none fixed).
template <typename F>
void for_each_permutation(int n, int fixed, F&& f) {
    std::vector<int> others;
    for (int j = 1; j <= n; ++j)
        if (j != fixed) others.push_back(j);
    std::sort(others.begin(), others.end());
    do {
        std::vector<int> image(static_cast<std::size_t>(n));
        std::size_t t = 0;
        for (int j = 1; j <= n; ++j)
            image[static_cast<std::size_t>(j - 1)] = (j == fixed) ? fixed : others[t++];
        f(QubitPermutation(std::move(image)));
    } while (std::next_permutation(others.begin(), others.end()));
}

}  // namespace

void VerificationConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (n_values.empty()) throw std::invalid_argument("config: n_values must be nonempty");
    for (int n : n_values)
        if (n < 3 || n % 2 == 0)
            throw std::invalid_argument("config: n_values must be odd and >= 3");
    if (tol_abs <= 0 || tol_rel <= 0 || monotone_tol <= 0)
        throw std::invalid_argument("config: tolerances must be positive");
    if (perm_samples < 1) throw std::invalid_argument("config: perm_samples must be >= 1");
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

CheckRecord check_anchors(const VerificationConfig&) {
    DevTracker tracker;
    for (const char* anchor_case :
         {"tau_zero", "tau_one", "permutation_image", "big_r_product", "components"}) {
        tracker.record(dev_anchor(anchor_case),
                       [&] { return json{{"kind", "anchors"}, {"case", anchor_case}}; });
    }
    return tracker.finish("anchors", kAnchorTol);
}

CheckRecord check_property1(const VerificationConfig& cfg) {
    DevTracker tracker;
    for (int n : cfg.n_values) {
        for (long t = 0; t < cfg.trials; ++t) {
            std::mt19937_64 rng(derive_seed(cfg.master_seed, "property1", trial_key(n, t)));
            const PureState state = random_state(n, rng);
            for (int i = 1; i <= n; ++i) {
                const auto run = [&](const QubitPermutation& perm) {
                    tracker.record(dev_property1(state, i, perm),
                                   [&] { return worst_property1(state, i, perm); });
                };
                if (n <= 5)
                    for_each_permutation(n, i, run);
                else
                    for (int s = 0; s < cfg.perm_samples; ++s)
                        run(random_permutation_fixing(n, i, rng));
            }
        }
    }
    return tracker.finish("property1", cfg.tol_abs);
}

CheckRecord check_property2(const VerificationConfig& cfg) {
    DevTracker tracker;
    for (int n : cfg.n_values) {
        for (long t = 0; t < cfg.trials; ++t) {
            std::mt19937_64 rng(derive_seed(cfg.master_seed, "property2", trial_key(n, t)));
            const PureState state = random_state(n, rng);
            for (int i = 1; i <= n; ++i) {
                for (int j = i + 1; j <= n; ++j) {
                    tracker.record(dev_property2(state, i, j), [&] {
                        return json{{"kind", "property2"}, {"n", n}, {"i", i}, {"j", j},
                                    {"state", state_to_json(state)}};
                    });
                }
            }
        }
    }
    return tracker.finish("property2", cfg.tol_abs);
}

CheckRecord check_property3(const VerificationConfig& cfg) {
    DevTracker tracker;
    for (int n : cfg.n_values) {
        for (long t = 0; t < cfg.trials; ++t) {
            std::mt19937_64 rng(derive_seed(cfg.master_seed, "property3", trial_key(n, t)));
            const PureState state = random_state(n, rng);
            const auto run = [&](const QubitPermutation& perm) {
                tracker.record(dev_property3(state, perm), [&] {
                    return json{{"kind", "property3"}, {"n", n}, {"state", state_to_json(state)},
                                {"perm", perm.image()}};
                });
            };
            if (n <= 5)
                for_each_permutation(n, 0, run);
            else
                for (int s = 0; s < cfg.perm_samples; ++s) run(random_permutation(n, rng));
        }
    }
    return tracker.finish("property3", cfg.tol_abs);
}

CheckRecord check_det_scaling(const VerificationConfig& cfg) {
    DevTracker tracker;
    double reversed_max = 0.0;
    for (int n : cfg.n_values) {
        for (long t = 0; t < cfg.trials; ++t) {
            std::mt19937_64 rng(derive_seed(cfg.master_seed, "det_scaling", trial_key(n, t)));
            const PureState state = random_state(n, rng);
            const LocalOperatorChain chain = random_invertible_chain(n, rng);
            tracker.record(dev_det_scaling(state, chain), [&] {
                return json{{"kind", "det_scaling"}, {"n", n}, {"state", state_to_json(state)},
                            {"chain", chain_to_json(chain)}};
            });
            reversed_max = std::max(reversed_max, dev_det_scaling_reversed(state, chain));
        }
    }
    return tracker.finish("det_scaling", cfg.tol_rel,
                          json{{"reversed_orientation_max_residual", reversed_max}});
}

CheckRecord check_sl_invariance(const VerificationConfig& cfg) {
    DevTracker tracker;
    for (int n : cfg.n_values) {
        for (long t = 0; t < cfg.trials; ++t) {
            std::mt19937_64 rng(derive_seed(cfg.master_seed, "sl_invariance", trial_key(n, t)));
            const PureState state = random_state(n, rng);
            const LocalOperatorChain sl_chain = random_sl_chain(n, rng);
            const LocalOperatorChain lu_chain = random_su_chain(n, rng);
            tracker.record(dev_sl_invariance(state, sl_chain, lu_chain), [&] {
                return json{{"kind", "sl_invariance"}, {"n", n}, {"state", state_to_json(state)},
                            {"sl_chain", chain_to_json(sl_chain)},
                            {"lu_chain", chain_to_json(lu_chain)}};
            });
        }
    }
    return tracker.finish("sl_invariance", cfg.tol_rel);
}

CheckRecord check_bounds(const VerificationConfig& cfg) {
    DevTracker tracker;
    json maxima = json::object();
    for (int n : cfg.n_values) {
        double max_t = 0.0;
        double max_r = 0.0;
        for (long t = 0; t < cfg.trials; ++t) {
            const PureState state =
                random_state(n, derive_seed(cfg.master_seed, "bounds", trial_key(n, t)));
            tracker.record(dev_bounds(state), [&] { return worst_state_only("bounds", state); });
            max_t = std::max(max_t, tau(state).normalized);
            max_r = std::max(max_r, big_r(state).normalized);
        }
        maxima["n=" + std::to_string(n)] = json{{"max_tau", max_t}, {"max_big_r", max_r}};
    }
    return tracker.finish("bounds", kBoundsSlack, json{{"max_observed", maxima}});
}

CheckRecord check_monotone(const VerificationConfig& cfg) {
    DevTracker tracker;
    for (int n : cfg.n_values) {
        for (long t = 0; t < cfg.trials; ++t) {
            std::mt19937_64 rng(derive_seed(cfg.master_seed, "monotone", trial_key(n, t)));
            const PureState state = random_state(n, rng);
            const int q = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            const auto [m1, m2] = random_local_measurement(rng);
            tracker.record(dev_monotone(state, q, m1, m2), [&] {
                return json{{"kind", "monotone"}, {"n", n}, {"q", q},
                            {"state", state_to_json(state)},
                            {"m1", mat2_to_json(m1)}, {"m2", mat2_to_json(m2)}};
            });
        }
    }
    return tracker.finish("monotone", cfg.monotone_tol);
}

CheckRecord check_product_behavior(const VerificationConfig& cfg) {
    DevTracker tracker;
    long zero_branch = 0;
    long multiplicative_branch = 0;

    const auto run = [&](const PureState& a, const PureState& b, const QubitPermutation& placement) {
        const ProductTrialResult result = product_trial(a, b, placement);
        (result.multiplicative ? multiplicative_branch : zero_branch) += 1;
        tracker.record(result.dev, [&] {
            return json{{"kind", "product"}, {"a", state_to_json(a)}, {"b", state_to_json(b)},
                        {"placement", placement.image()}};
        });
    };

    // The Bell (x) GHZ product example: tau = 0 while R = 3/5, so R is not
    // multiplicative over the factors.
    const PureState bell = normalize(PureState(2, {cplx{1.0}, {}, {}, cplx{1.0}})).state;
    run(bell, PureState::ghz(3), QubitPermutation::identity(5));
    const double r_example = big_r(example_state()).normalized;
    const double tau_example = tau(example_state()).normalized;

    // Odd factor padded by |0> qubits on either side.
    run(PureState::ghz(3), PureState::basis(2, 0), QubitPermutation::identity(5));
    run(PureState::basis(1, 0), tensor_product(PureState::ghz(3), PureState::basis(1, 0)),
        QubitPermutation::identity(5));

    for (int n : cfg.n_values) {
        for (long t = 0; t < cfg.trials; ++t) {
            std::mt19937_64 rng(derive_seed(cfg.master_seed, "product", trial_key(n, t)));
            const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
            const PureState a = random_state(k, rng);
            const PureState b = random_state(n - k, rng);
            run(a, b, random_permutation(n, rng));
        }
    }

    json info{{"zero_branch_trials", zero_branch},
              {"multiplicative_branch_trials", multiplicative_branch},
              {"product_example_tau", tau_example},
              {"product_example_big_r", r_example},
              {"big_r_non_multiplicative", r_example > 0.5 && tau_example < kAnchorTol}};
    return tracker.finish("product_states", cfg.tol_abs, std::move(info));
}

VerificationReport run_campaign(const VerificationConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.config = cfg;
    report.checks.push_back(check_anchors(cfg));
    report.checks.push_back(check_property1(cfg));
    report.checks.push_back(check_property2(cfg));
    report.checks.push_back(check_property3(cfg));
    report.checks.push_back(check_det_scaling(cfg));
    report.checks.push_back(check_sl_invariance(cfg));
    report.checks.push_back(check_bounds(cfg));
    report.checks.push_back(check_monotone(cfg));
    report.checks.push_back(check_product_behavior(cfg));
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

VerificationReport run_anchor_campaign(const VerificationConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.config = cfg;
    report.checks.push_back(check_anchors(cfg));
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

double replay_deviation(const CheckRecord& record) {
    const json& w = record.worst_case;
    if (w.is_null()) throw std::invalid_argument("replay: record has no worst case");
    const std::string kind = w.at("kind").get<std::string>();
    if (kind == "anchors") return dev_anchor(w.at("case").get<std::string>());
    if (kind == "property1")
        return dev_property1(state_from_json(w.at("state")), w.at("i").get<int>(),
                             QubitPermutation(w.at("perm").get<std::vector<int>>()));
    if (kind == "property2")
        return dev_property2(state_from_json(w.at("state")), w.at("i").get<int>(),
                             w.at("j").get<int>());
    if (kind == "property3")
        return dev_property3(state_from_json(w.at("state")),
                             QubitPermutation(w.at("perm").get<std::vector<int>>()));
    if (kind == "det_scaling")
        return dev_det_scaling(state_from_json(w.at("state")), chain_from_json(w.at("chain")));
    if (kind == "sl_invariance")
        return dev_sl_invariance(state_from_json(w.at("state")), chain_from_json(w.at("sl_chain")),
                                 chain_from_json(w.at("lu_chain")));
    if (kind == "bounds") return dev_bounds(state_from_json(w.at("state")));
    if (kind == "monotone")
        return dev_monotone(state_from_json(w.at("state")), w.at("q").get<int>(),
                            mat2_from_json(w.at("m1")), mat2_from_json(w.at("m2")));
    if (kind == "product")
        return product_trial(state_from_json(w.at("a")), state_from_json(w.at("b")),
                             QubitPermutation(w.at("placement").get<std::vector<int>>()))
            .dev;
    throw std::invalid_argument("replay: unknown worst-case kind '" + kind + "'");
}

json config_to_json(const VerificationConfig& cfg) {
    return json{{"master_seed", cfg.master_seed}, {"trials", cfg.trials},
                {"n_values", cfg.n_values},       {"tol_abs", cfg.tol_abs},
                {"tol_rel", cfg.tol_rel},         {"monotone_tol", cfg.monotone_tol},
                {"perm_samples", cfg.perm_samples}};
}

VerificationConfig config_from_json(const json& doc) {
    VerificationConfig cfg;
    cfg.master_seed = doc.value("master_seed", cfg.master_seed);
    cfg.trials = doc.value("trials", cfg.trials);
    cfg.n_values = doc.value("n_values", cfg.n_values);
    cfg.tol_abs = doc.value("tol_abs", cfg.tol_abs);
    cfg.tol_rel = doc.value("tol_rel", cfg.tol_rel);
    cfg.monotone_tol = doc.value("monotone_tol", cfg.monotone_tol);
    cfg.perm_samples = doc.value("perm_samples", cfg.perm_samples);
    cfg.validate();
    return cfg;
}

json report_to_json(const VerificationReport& report) {
    json checks = json::array();
    for (const CheckRecord& c : report.checks) {
        checks.push_back(json{{"name", c.name},
                              {"trials", c.trials_run},
                              {"max_deviation", c.max_deviation},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass},
                              {"worst_case", c.worst_case},
                              {"info", c.info}});
    }
    return json{{"config", config_to_json(report.config)},
                {"checks", std::move(checks)},
                {"all_pass", report.all_pass()},
                {"wall_time_ms", report.wall_time_ms}};
}

std::string report_to_csv(const VerificationReport& report) {
    std::string out = "check,trials,max_deviation,pass\n";
    char line[256];
    for (const CheckRecord& c : report.checks) {
        std::snprintf(line, sizeof line, "%s,%ld,%.17g,%s\n", c.name.c_str(), c.trials_run,
                      c.max_deviation, c.pass ? "true" : "false");
        out += line;
    }
    return out;
}

}  // namespace oddtangle
