// state.hpp
// Dense n-qubit pure states, qubit permutations, and local operator chains.
//
// Basis convention: the amplitude vector has length 2^n and index k carries
// the computational basis ket |b1 b2 ... bn> where b1 is the MOST significant
// bit of k. "Position j" always means the 1-based qubit position j, so the
// bit of index k at position j is (k >> (n - j)) & 1.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace oddtangle {

using cplx = std::complex<double>;

// Dense amplitude vectors cap out at 2^21 entries unless a caller raises the
// limit explicitly.
inline constexpr int kDefaultMaxQubits = 21;

// Complex 2x2 matrix, row major: [[e00, e01], [e10, e11]].
struct Mat2 {
    std::array<cplx, 4> e{};

    static Mat2 identity() { return Mat2{{cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{1.0}}}; }
    static Mat2 diagonal(cplx a, cplx d) { return Mat2{{a, cplx{0.0}, cplx{0.0}, d}}; }

    cplx operator()(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }
    cplx& operator()(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }

    cplx det() const { return e[0] * e[3] - e[1] * e[2]; }
    Mat2 adjoint() const { return Mat2{{std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])}}; }
    bool finite() const;

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return Mat2{{a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
                     a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]}};
    }
    friend Mat2 operator*(cplx s, const Mat2& a) {
        return Mat2{{s * a.e[0], s * a.e[1], s * a.e[2], s * a.e[3]}};
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        return Mat2{{a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]}};
    }
};

// Largest |entry| of a - b; handy for "is this the matrix I expect" checks.
double max_abs_diff(const Mat2& a, const Mat2& b);

// Immutable n-qubit pure state. Amplitudes may be unnormalized; invariant
// evaluation treats raw amplitudes as first-class and normalization is an
// explicit, caller-driven step.
class PureState {
  public:
    PureState(int num_qubits, std::vector<cplx> amplitudes);

    // |index> as a unit basis ket.
    static PureState basis(int num_qubits, std::uint64_t index);
    // (|0...0> + |1...1>)/sqrt(2)
    static PureState ghz(int num_qubits);
    // Equal superposition of the n single-excitation kets.
    static PureState w(int num_qubits);

    int num_qubits() const { return n_; }
    std::uint64_t dim() const { return std::uint64_t{1} << n_; }
    std::span<const cplx> amps() const { return amps_; }
    const cplx& amp(std::uint64_t index) const { return amps_[index]; }
    double norm() const;

    friend bool operator==(const PureState& a, const PureState& b) {
        return a.n_ == b.n_ && a.amps_ == b.amps_;
    }

  private:
    int n_;
    std::vector<cplx> amps_;
};

// Largest |amplitude difference| between two states of equal size.
double max_abs_diff(const PureState& a, const PureState& b);

struct NormalizeResult {
    PureState state;  // unit norm
    double norm;      // Euclidean norm of the input
};

// Throws std::invalid_argument on a zero-norm state.
NormalizeResult normalize(const PureState& state);

// a's qubits occupy the high-order positions of the result: the amplitude at
// index j * 2^(b.n) + k is a[j] * b[k].
PureState tensor_product(const PureState& a, const PureState& b,
                         int max_qubits = kDefaultMaxQubits);

// Bijection on qubit positions {1..n}. image()[j-1] is where the qubit at
// position j ends up.
class QubitPermutation {
  public:
    explicit QubitPermutation(std::vector<int> image);

    static QubitPermutation identity(int n);
    static QubitPermutation transposition(int i, int j, int n);
    // Cycles use the usual notation: (c1 c2 ... ck) sends c1 -> c2, ...,
    // ck -> c1. Cycles must be disjoint; elements in 1..n.
    static QubitPermutation from_cycles(const std::vector<std::vector<int>>& cycles, int n);

    int size() const { return static_cast<int>(image_.size()); }
    int operator()(int position) const { return image_[static_cast<std::size_t>(position - 1)]; }
    const std::vector<int>& image() const { return image_; }

    QubitPermutation inverse() const;
    bool is_identity() const;

    // Induced map on basis indices: the bit at position j of k lands at
    // position image(j) of the result.
    std::uint64_t index_image(std::uint64_t k) const;

    friend bool operator==(const QubitPermutation& a, const QubitPermutation& b) {
        return a.image_ == b.image_;
    }

  private:
    std::vector<int> image_;
};

// Composition acts right to left: apply q first, then p, so that
// apply(compose(p, q), psi) == apply(p, apply(q, psi)).
QubitPermutation compose(const QubitPermutation& p, const QubitPermutation& q);

PureState apply_qubit_permutation(const PureState& state, const QubitPermutation& perm);

// Ordered list of n complex 2x2 matrices, one per qubit position,
// representing A1 (x) A2 (x) ... (x) An.
class LocalOperatorChain {
  public:
    explicit LocalOperatorChain(std::vector<Mat2> ops);

    static LocalOperatorChain identity(int n);

    int size() const { return static_cast<int>(ops_.size()); }
    const Mat2& op(int position) const { return ops_[static_cast<std::size_t>(position - 1)]; }
    const std::vector<Mat2>& ops() const { return ops_; }

    void set_op(int position, const Mat2& m) { ops_[static_cast<std::size_t>(position - 1)] = m; }

    cplx det_product() const;
    // prod_k |det(A_k)|^2 — the degree-4 scaling factor of the invariants.
    double abs_det_sq_product() const;
    bool is_special_linear(double tol = 1e-9) const;

  private:
    std::vector<Mat2> ops_;
};

// (A1 (x) ... (x) An)|psi> on raw amplitudes, no renormalization.
PureState apply_local_operators(const PureState& state, const LocalOperatorChain& chain);

}  // namespace oddtangle
