// invariants.hpp
// The odd-n residual entanglement tau, its qubit-permuted variants tau^(i),
// and the permutation-invariant average R.
//
// Everything is built on one bilinear form over 2^m-dimensional blocks,
//
//   B(u, v) = sum_i (-1)^popcount(i) * u[i] * v[2^m - 1 - i],
//
// the sigma_y-type signed anti-diagonal pairing. For a state on odd n with
// amplitude halves u (position-1 bit 0) and v (position-1 bit 1),
//
//   tau(psi) = 4 * | B(u,v)^2 - B(u,u) * B(v,v) |,
//
// a degree-4 homogeneous polynomial in the amplitudes. tau is reported both
// on the raw amplitudes and after dividing by the norm, because the SLOCC
// determinant scaling law lives on raw values while the [0,1] bounds and the
// monotone property live on normalized ones.

#pragma once

#include <array>

#include "oddtangle/state.hpp"

namespace oddtangle {

struct InvariantValue {
    double raw = 0.0;         // value on the amplitudes as given
    double normalized = 0.0;  // value after dividing the amplitudes by the norm
    double norm = 0.0;        // Euclidean norm of the input

    // raw == normalized * norm^4 up to rounding (degree-4 homogeneity).
};

// B as above. u and v must have the same power-of-two length.
// Symmetric in its arguments when m is even.
cplx sigma_y_bilinear(std::span<const cplx> u, std::span<const cplx> v);

// Requires odd n >= 3.
InvariantValue tau(const PureState& state);

// tau after transposing qubits 1 and i; tau itself for i = 1.
InvariantValue tau_i(const PureState& state, int i);

// Arithmetic mean of tau_i over i = 1..n. Invariant under every qubit
// permutation, unlike tau.
InvariantValue big_r(const PureState& state);

// Three equivalent writings of the 3-qubit expression (4 * |...| of each), evaluated
// literally on a0..a7 as given. All three agree with each other and with
// tau(state).raw; they are the (1,2)- and (1,3)-transposition images of the
// same polynomial, which for three qubits coincide.
std::array<double, 3> tau3_forms(const PureState& state);

}  // namespace oddtangle
