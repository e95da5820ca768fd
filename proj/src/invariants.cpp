#include "oddtangle/invariants.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace oddtangle {

namespace {

void require_odd(int n) {
    if (n < 3) throw std::invalid_argument("tau: defined for n >= 3");
    if (n % 2 == 0) throw std::invalid_argument("tau: defined for odd n only");
}

InvariantValue make_value(double raw, double norm) {
    InvariantValue v;
    v.raw = raw;
    v.norm = norm;
    const double n4 = norm * norm * norm * norm;
    v.normalized = norm > 0.0 ? raw / n4 : 0.0;
    return v;
}

}  // namespace

cplx sigma_y_bilinear(std::span<const cplx> u, std::span<const cplx> v) {
    const std::size_t len = u.size();
    if (len == 0 || v.size() != len || (len & (len - 1)) != 0)
        throw std::invalid_argument("sigma_y_bilinear: arguments must share a power-of-two length");
    cplx sum{0.0};
    for (std::size_t i = 0; i < len; ++i) {
        const cplx term = u[i] * v[len - 1 - i];
        if (std::popcount(i) & 1)
            sum -= term;
        else
            sum += term;
    }
    return sum;
}

InvariantValue tau(const PureState& state) {
    const int n = state.num_qubits();
    require_odd(n);
    const std::uint64_t half = state.dim() / 2;
    const std::span<const cplx> u = state.amps().subspan(0, half);
    const std::span<const cplx> v = state.amps().subspan(half, half);
    const cplx buv = sigma_y_bilinear(u, v);
    const cplx buu = sigma_y_bilinear(u, u);
    const cplx bvv = sigma_y_bilinear(v, v);
    const double raw = 4.0 * std::abs(buv * buv - buu * bvv);
    return make_value(raw, state.norm());
}

InvariantValue tau_i(const PureState& state, int i) {
    const int n = state.num_qubits();
    require_odd(n);
    if (i < 1 || i > n) throw std::out_of_range("tau_i: position out of range");
    if (i == 1) return tau(state);
    return tau(apply_qubit_permutation(state, QubitPermutation::transposition(1, i, n)));
}

InvariantValue big_r(const PureState& state) {
    const int n = state.num_qubits();
    require_odd(n);
    double raw_sum = 0.0;
    for (int i = 1; i <= n; ++i) raw_sum += tau_i(state, i).raw;
    return make_value(raw_sum / n, state.norm());
}

std::array<double, 3> tau3_forms(const PureState& state) {
    if (state.num_qubits() != 3) throw std::invalid_argument("tau3_forms: requires n = 3");
    const std::span<const cplx> a = state.amps();

    const cplx f1_sq = (a[0] * a[7] - a[1] * a[6]) - (a[2] * a[5] - a[3] * a[4]);
    const cplx f1 = f1_sq * f1_sq - 4.0 * (a[0] * a[3] - a[1] * a[2]) * (a[4] * a[7] - a[5] * a[6]);

    const cplx f2_sq = (a[0] * a[7] - a[3] * a[4]) + (a[1] * a[6] - a[2] * a[5]);
    const cplx f2 = f2_sq * f2_sq - 4.0 * (a[3] * a[5] - a[1] * a[7]) * (a[2] * a[4] - a[0] * a[6]);

    const cplx f3_sq = a[0] * a[7] - a[3] * a[4] - (a[1] * a[6] - a[2] * a[5]);
    const cplx f3 = f3_sq * f3_sq - 4.0 * (a[1] * a[4] - a[0] * a[5]) * (a[3] * a[6] - a[2] * a[7]);

    return {4.0 * std::abs(f1), 4.0 * std::abs(f2), 4.0 * std::abs(f3)};
}

}  // namespace oddtangle
