#include "oddtangle/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace oddtangle {

namespace {

bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

bool Mat2::finite() const {
    return std::all_of(e.begin(), e.end(), [](cplx z) { return is_finite(z); });
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(a.e[static_cast<std::size_t>(k)] - b.e[static_cast<std::size_t>(k)]));
    return worst;
}

PureState::PureState(int num_qubits, std::vector<cplx> amplitudes)
    : n_(num_qubits), amps_(std::move(amplitudes)) {
    if (n_ < 1) throw std::invalid_argument("PureState: qubit count must be >= 1");
    if (n_ > 62) throw std::invalid_argument("PureState: qubit count too large for 64-bit indexing");
    if (amps_.size() != (std::uint64_t{1} << n_))
        throw std::invalid_argument("PureState: amplitude vector must have length 2^n");
    for (const cplx& a : amps_)
        if (!is_finite(a)) throw std::invalid_argument("PureState: amplitudes must be finite");
}

PureState PureState::basis(int num_qubits, std::uint64_t index) {
    if (num_qubits < 1 || num_qubits > 62)
        throw std::invalid_argument("PureState::basis: bad qubit count");
    if (index >= (std::uint64_t{1} << num_qubits))
        throw std::out_of_range("PureState::basis: index out of range");
    std::vector<cplx> amps(std::uint64_t{1} << num_qubits, cplx{0.0});
    amps[index] = cplx{1.0};
    return PureState(num_qubits, std::move(amps));
}

PureState PureState::ghz(int num_qubits) {
    std::vector<cplx> amps(std::uint64_t{1} << num_qubits, cplx{0.0});
    const double s = 1.0 / std::sqrt(2.0);
    amps.front() = cplx{s};
    amps.back() = cplx{s};
    return PureState(num_qubits, std::move(amps));
}

PureState PureState::w(int num_qubits) {
    std::vector<cplx> amps(std::uint64_t{1} << num_qubits, cplx{0.0});
    const double s = 1.0 / std::sqrt(static_cast<double>(num_qubits));
    for (int j = 0; j < num_qubits; ++j) amps[std::uint64_t{1} << j] = cplx{s};
    return PureState(num_qubits, std::move(amps));
}

double PureState::norm() const {
    double sum = 0.0;
    for (const cplx& a : amps_) sum += std::norm(a);
    return std::sqrt(sum);
}

double max_abs_diff(const PureState& a, const PureState& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("max_abs_diff: qubit counts differ");
    double worst = 0.0;
    for (std::uint64_t k = 0; k < a.dim(); ++k)
        worst = std::max(worst, std::abs(a.amp(k) - b.amp(k)));
    return worst;
}

NormalizeResult normalize(const PureState& state) {
    const double nrm = state.norm();
    if (nrm == 0.0) throw std::invalid_argument("normalize: zero-norm state");
    std::vector<cplx> amps(state.amps().begin(), state.amps().end());
    for (cplx& a : amps) a /= nrm;
    return NormalizeResult{PureState(state.num_qubits(), std::move(amps)), nrm};
}

PureState tensor_product(const PureState& a, const PureState& b, int max_qubits) {
    const int n = a.num_qubits() + b.num_qubits();
    if (n > max_qubits)
        throw std::invalid_argument("tensor_product: combined qubit count " + std::to_string(n) +
                                    " exceeds the maximum " + std::to_string(max_qubits));
    std::vector<cplx> amps(std::uint64_t{1} << n, cplx{0.0});
    const int shift = b.num_qubits();
    for (std::uint64_t j = 0; j < a.dim(); ++j) {
        if (a.amp(j) == cplx{0.0}) continue;
        for (std::uint64_t k = 0; k < b.dim(); ++k)
            amps[(j << shift) | k] = a.amp(j) * b.amp(k);
    }
    return PureState(n, std::move(amps));
}

QubitPermutation::QubitPermutation(std::vector<int> image) : image_(std::move(image)) {
    const int n = static_cast<int>(image_.size());
    if (n < 1) throw std::invalid_argument("QubitPermutation: empty image");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : image_) {
        if (v < 1 || v > n) throw std::invalid_argument("QubitPermutation: image value out of range");
        if (seen[static_cast<std::size_t>(v - 1)])
            throw std::invalid_argument("QubitPermutation: image is not a bijection");
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
}

QubitPermutation QubitPermutation::identity(int n) {
    std::vector<int> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), 1);
    return QubitPermutation(std::move(image));
}

QubitPermutation QubitPermutation::transposition(int i, int j, int n) {
    if (i == j) throw std::invalid_argument("transposition: positions must differ");
    if (i < 1 || i > n || j < 1 || j > n)
        throw std::invalid_argument("transposition: position out of range");
    std::vector<int> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), 1);
    std::swap(image[static_cast<std::size_t>(i - 1)], image[static_cast<std::size_t>(j - 1)]);
    return QubitPermutation(std::move(image));
}

QubitPermutation QubitPermutation::from_cycles(const std::vector<std::vector<int>>& cycles, int n) {
    std::vector<int> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), 1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const auto& cycle : cycles) {
        for (int v : cycle) {
            if (v < 1 || v > n) throw std::invalid_argument("from_cycles: element out of range");
            if (used[static_cast<std::size_t>(v - 1)])
                throw std::invalid_argument("from_cycles: repeated element in cycle set");
            used[static_cast<std::size_t>(v - 1)] = true;
        }
        const std::size_t len = cycle.size();
        for (std::size_t t = 0; t < len; ++t)
            image[static_cast<std::size_t>(cycle[t] - 1)] = cycle[(t + 1) % len];
    }
    return QubitPermutation(std::move(image));
}

QubitPermutation QubitPermutation::inverse() const {
    std::vector<int> inv(image_.size());
    for (int j = 1; j <= size(); ++j) inv[static_cast<std::size_t>(image_[static_cast<std::size_t>(j - 1)] - 1)] = j;
    return QubitPermutation(std::move(inv));
}

bool QubitPermutation::is_identity() const {
    for (int j = 1; j <= size(); ++j)
        if ((*this)(j) != j) return false;
    return true;
}

std::uint64_t QubitPermutation::index_image(std::uint64_t k) const {
    const int n = size();
    std::uint64_t out = 0;
    for (int j = 1; j <= n; ++j)
        if ((k >> (n - j)) & 1u) out |= std::uint64_t{1} << (n - image_[static_cast<std::size_t>(j - 1)]);
    return out;
}

QubitPermutation compose(const QubitPermutation& p, const QubitPermutation& q) {
    if (p.size() != q.size()) throw std::invalid_argument("compose: size mismatch");
    std::vector<int> image(static_cast<std::size_t>(p.size()));
    for (int j = 1; j <= p.size(); ++j) image[static_cast<std::size_t>(j - 1)] = p(q(j));
    return QubitPermutation(std::move(image));
}

PureState apply_qubit_permutation(const PureState& state, const QubitPermutation& perm) {
    if (perm.size() != state.num_qubits())
        throw std::invalid_argument("apply_qubit_permutation: size mismatch");
    std::vector<cplx> out(state.dim());
    for (std::uint64_t k = 0; k < state.dim(); ++k) out[perm.index_image(k)] = state.amp(k);
    return PureState(state.num_qubits(), std::move(out));
}

LocalOperatorChain::LocalOperatorChain(std::vector<Mat2> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw std::invalid_argument("LocalOperatorChain: empty chain");
    for (const Mat2& m : ops_)
        for (cplx z : m.e)
            if (!is_finite(z)) throw std::invalid_argument("LocalOperatorChain: entries must be finite");
}

LocalOperatorChain LocalOperatorChain::identity(int n) {
    return LocalOperatorChain(std::vector<Mat2>(static_cast<std::size_t>(n), Mat2::identity()));
}

cplx LocalOperatorChain::det_product() const {
    cplx prod{1.0};
    for (const Mat2& m : ops_) prod *= m.det();
    return prod;
}

double LocalOperatorChain::abs_det_sq_product() const {
    double prod = 1.0;
    for (const Mat2& m : ops_) prod *= std::norm(m.det());
    return prod;
}

bool LocalOperatorChain::is_special_linear(double tol) const {
    for (const Mat2& m : ops_)
        if (std::abs(m.det() - cplx{1.0}) > tol) return false;
    return true;
}

PureState apply_local_operators(const PureState& state, const LocalOperatorChain& chain) {
    if (chain.size() != state.num_qubits())
        throw std::invalid_argument("apply_local_operators: size mismatch");
    const int n = state.num_qubits();
    std::vector<cplx> amps(state.amps().begin(), state.amps().end());
    for (int j = 1; j <= n; ++j) {
        const Mat2& A = chain.op(j);
        const std::uint64_t stride = std::uint64_t{1} << (n - j);
        for (std::uint64_t base = 0; base < amps.size(); base += 2 * stride) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                const std::uint64_t k0 = base + off;
                const std::uint64_t k1 = k0 + stride;
                const cplx x0 = amps[k0];
                const cplx x1 = amps[k1];
                amps[k0] = A.e[0] * x0 + A.e[1] * x1;
                amps[k1] = A.e[2] * x0 + A.e[3] * x1;
            }
        }
    }
    return PureState(n, std::move(amps));
}

}  // namespace oddtangle
