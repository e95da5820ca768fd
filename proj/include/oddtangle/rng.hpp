// rng.hpp
// Deterministic, explicitly seeded sampling for states, local operators and
// measurements. All draws go through hand-rolled uniform/normal generators on
// top of mt19937_64 words so that a given seed produces the same stream on
// every platform and standard library.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>

#include "oddtangle/state.hpp"

namespace oddtangle {

// Stable 64-bit seed derivation: hash(master, stream id, index). Streams keep
// independent checks and trials decoupled, so campaign results do not depend
// on execution order.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream, std::uint64_t index);

double uniform_double(std::mt19937_64& rng);                // [0, 1)
double normal_double(std::mt19937_64& rng);                 // standard normal
cplx normal_cplx(std::mt19937_64& rng);                     // independent N(0,1) parts

// Haar-like random state: i.i.d. complex Gaussian amplitudes, normalized.
PureState random_state(int n, std::mt19937_64& rng);
PureState random_state(int n, std::uint64_t seed);

// Haar-distributed 2x2 unitary.
Mat2 random_unitary2(std::mt19937_64& rng);
Mat2 random_unitary2(std::uint64_t seed);

// Random invertible 2x2: complex Gaussian entries, redrawn until every entry
// has magnitude <= 4 and |det| >= 0.05, which keeps det^2 scaling factors
// inside float headroom and the scaling residuals well conditioned.
Mat2 random_invertible2(std::mt19937_64& rng);
Mat2 random_invertible2(std::uint64_t seed);

// Determinant-1 matrix: random invertible divided by a square root of its
// determinant. |det - 1| <= 1e-12 by construction.
Mat2 random_sl2(std::mt19937_64& rng);
Mat2 random_sl2(std::uint64_t seed);

// Determinant-1 unitary (the LU subcase of the SL group).
Mat2 random_su2(std::mt19937_64& rng);
Mat2 random_su2(std::uint64_t seed);

// Two-outcome local measurement {M1, M2} with M1^dag M1 + M2^dag M2 = I:
// M1 = U diag(d1, d2) V^dag with d uniform in [0,1], and
// M2 = W * V diag(sqrt(1 - d^2)) V^dag for an independent Haar unitary W.
std::pair<Mat2, Mat2> random_local_measurement(std::mt19937_64& rng);
std::pair<Mat2, Mat2> random_local_measurement(std::uint64_t seed);

// Uniformly random permutation of {1..n} (Fisher-Yates).
QubitPermutation random_permutation(int n, std::mt19937_64& rng);

// Uniformly random permutation of {1..n} that fixes the given position.
QubitPermutation random_permutation_fixing(int n, int fixed_position, std::mt19937_64& rng);

// Random invertible chain of n operators.
LocalOperatorChain random_invertible_chain(int n, std::mt19937_64& rng);
LocalOperatorChain random_sl_chain(int n, std::mt19937_64& rng);
LocalOperatorChain random_su_chain(int n, std::mt19937_64& rng);

}  // namespace oddtangle
