#include "oddtangle/rng.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace oddtangle {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view stream, std::uint64_t index) {
    return splitmix64(splitmix64(master ^ fnv1a64(stream)) ^ index);
}

double uniform_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double normal_double(std::mt19937_64& rng) {
    // Box-Muller on (0, 1] uniforms.
    const double u = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    const double v = uniform_double(rng);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

cplx normal_cplx(std::mt19937_64& rng) {
    const double re = normal_double(rng);
    const double im = normal_double(rng);
    return cplx{re, im};
}

PureState random_state(int n, std::mt19937_64& rng) {
    std::vector<cplx> amps(std::uint64_t{1} << n);
    double sum = 0.0;
    for (cplx& a : amps) {
        a = normal_cplx(rng);
        sum += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(sum);
    for (cplx& a : amps) a *= inv;
    return PureState(n, std::move(amps));
}

PureState random_state(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_state(n, rng);
}

Mat2 random_unitary2(std::mt19937_64& rng) {
    // Gram-Schmidt on a Ginibre matrix; the implicit R has a positive
    // diagonal, so the result is Haar distributed.
    cplx a0 = normal_cplx(rng), a1 = normal_cplx(rng);
    const cplx b0 = normal_cplx(rng), b1 = normal_cplx(rng);
    const double na = std::sqrt(std::norm(a0) + std::norm(a1));
    a0 /= na;
    a1 /= na;
    const cplx overlap = std::conj(a0) * b0 + std::conj(a1) * b1;
    cplx c0 = b0 - overlap * a0;
    cplx c1 = b1 - overlap * a1;
    const double nc = std::sqrt(std::norm(c0) + std::norm(c1));
    c0 /= nc;
    c1 /= nc;
    return Mat2{{a0, c0, a1, c1}};
}

Mat2 random_unitary2(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_unitary2(rng);
}

Mat2 random_invertible2(std::mt19937_64& rng) {
    for (;;) {
        Mat2 m{{normal_cplx(rng), normal_cplx(rng), normal_cplx(rng), normal_cplx(rng)}};
        bool bounded = true;
        for (cplx z : m.e) bounded = bounded && std::abs(z) <= 4.0;
        if (bounded && std::abs(m.det()) >= 0.05) return m;
    }
}

Mat2 random_invertible2(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_invertible2(rng);
}

Mat2 random_sl2(std::mt19937_64& rng) {
    const Mat2 m = random_invertible2(rng);
    const cplx root = std::sqrt(m.det());
    return Mat2{{m.e[0] / root, m.e[1] / root, m.e[2] / root, m.e[3] / root}};
}

Mat2 random_sl2(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_sl2(rng);
}

Mat2 random_su2(std::mt19937_64& rng) {
    const Mat2 u = random_unitary2(rng);
    const cplx root = std::sqrt(u.det());  // unit modulus, so this stays unitary
    return Mat2{{u.e[0] / root, u.e[1] / root, u.e[2] / root, u.e[3] / root}};
}

Mat2 random_su2(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_su2(rng);
}

std::pair<Mat2, Mat2> random_local_measurement(std::mt19937_64& rng) {
    const Mat2 u = random_unitary2(rng);
    const Mat2 v = random_unitary2(rng);
    const Mat2 w = random_unitary2(rng);
    const double d1 = uniform_double(rng);
    const double d2 = uniform_double(rng);
    const Mat2 m1 = u * Mat2::diagonal(d1, d2) * v.adjoint();
    // I - M1^dag M1 = V diag(1 - d^2) V^dag, so its square root is direct.
    const Mat2 s = v * Mat2::diagonal(std::sqrt(1.0 - d1 * d1), std::sqrt(1.0 - d2 * d2)) * v.adjoint();
    return {m1, w * s};
}

std::pair<Mat2, Mat2> random_local_measurement(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_local_measurement(rng);
}

QubitPermutation random_permutation(int n, std::mt19937_64& rng) {
    std::vector<int> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), 1);
    for (int k = n - 1; k > 0; --k) {
        const auto r = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(k + 1));
        std::swap(image[static_cast<std::size_t>(k)], image[r]);
    }
    return QubitPermutation(std::move(image));
}

QubitPermutation random_permutation_fixing(int n, int fixed_position, std::mt19937_64& rng) {
    if (fixed_position < 1 || fixed_position > n)
        throw std::out_of_range("random_permutation_fixing: position out of range");
    std::vector<int> others;
    others.reserve(static_cast<std::size_t>(n - 1));
    for (int j = 1; j <= n; ++j)
        if (j != fixed_position) others.push_back(j);
    for (std::size_t k = others.size() - 1; k > 0; --k) {
        const auto r = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(k + 1));
        std::swap(others[k], others[r]);
    }
    std::vector<int> image(static_cast<std::size_t>(n));
    image[static_cast<std::size_t>(fixed_position - 1)] = fixed_position;
    std::size_t t = 0;
    for (int j = 1; j <= n; ++j)
        if (j != fixed_position) image[static_cast<std::size_t>(j - 1)] = others[t++];
    return QubitPermutation(std::move(image));
}

LocalOperatorChain random_invertible_chain(int n, std::mt19937_64& rng) {
    std::vector<Mat2> ops;
    ops.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) ops.push_back(random_invertible2(rng));
    return LocalOperatorChain(std::move(ops));
}

LocalOperatorChain random_sl_chain(int n, std::mt19937_64& rng) {
    std::vector<Mat2> ops;
    ops.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) ops.push_back(random_sl2(rng));
    return LocalOperatorChain(std::move(ops));
}

LocalOperatorChain random_su_chain(int n, std::mt19937_64& rng) {
    std::vector<Mat2> ops;
    ops.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) ops.push_back(random_su2(rng));
    return LocalOperatorChain(std::move(ops));
}

}  // namespace oddtangle
