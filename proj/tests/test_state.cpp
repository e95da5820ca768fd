#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "oddtangle/rng.hpp"
#include "oddtangle/state.hpp"

using namespace oddtangle;

namespace {

// Independent oracle: permute index bits via explicit bit-string surgery,
// no shared code with QubitPermutation::index_image.
std::uint64_t bit_permute_oracle(std::uint64_t k, const std::vector<int>& image, int n) {
    std::string bits(static_cast<std::size_t>(n), '0');
    for (int j = 1; j <= n; ++j)
        if ((k >> (n - j)) & 1u) bits[static_cast<std::size_t>(j - 1)] = '1';
    std::string moved(static_cast<std::size_t>(n), '0');
    for (int j = 1; j <= n; ++j)
        moved[static_cast<std::size_t>(image[static_cast<std::size_t>(j - 1)] - 1)] =
            bits[static_cast<std::size_t>(j - 1)];
    std::uint64_t out = 0;
    for (int j = 1; j <= n; ++j)
        if (moved[static_cast<std::size_t>(j - 1)] == '1') out |= std::uint64_t{1} << (n - j);
    return out;
}

PureState bell_ghz_product_state() {
    std::vector<cplx> amps(32, cplx{0.0});
    amps[0] = amps[7] = amps[24] = amps[31] = cplx{0.5};
    return PureState(5, std::move(amps));
}

}  // namespace

TEST_CASE("pure state construction validates its invariants") {
    CHECK_THROWS_AS(PureState(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(PureState(2, std::vector<cplx>(3)), std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(PureState(1, {cplx{inf}, cplx{0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PureState(1, {cplx{0.0, std::nan("")}, cplx{0.0}}), std::invalid_argument);

    const PureState ghz = PureState::ghz(3);
    CHECK(ghz.dim() == 8);
    CHECK(ghz.amp(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("normalize returns the unit state and the original norm") {
    std::vector<cplx> amps(8, cplx{0.0});
    amps[0] = cplx{2.0};
    const auto [unit, nrm] = normalize(PureState(3, amps));
    CHECK(nrm == doctest::Approx(2.0));
    CHECK(unit.amp(0) == cplx{1.0});

    const auto [ghz, gnrm] = normalize(PureState::ghz(3));
    CHECK(gnrm == doctest::Approx(1.0));
    CHECK(max_abs_diff(ghz, PureState::ghz(3)) < 1e-15);

    std::vector<cplx> two(8, cplx{0.0});
    two[0] = two[1] = cplx{1.0};
    const auto [u2, n2] = normalize(PureState(3, two));
    CHECK(n2 == doctest::Approx(std::sqrt(2.0)));
    CHECK(u2.amp(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(u2.norm() - 1.0) < 1e-14);

    CHECK_THROWS_AS(normalize(PureState(2, std::vector<cplx>(4))), std::invalid_argument);
}

TEST_CASE("tensor product places factor a at the high-order positions") {
    // (|00>+|11>)/sqrt2 (x) (|000>+|111>)/sqrt2 = (1/2)(|0>+|7>+|24>+|31>)
    const PureState prod = tensor_product(PureState::ghz(2), PureState::ghz(3));
    CHECK(max_abs_diff(prod, bell_ghz_product_state()) < 1e-15);

    const PureState zeros = tensor_product(PureState::basis(1, 0), PureState::basis(1, 0));
    CHECK(zeros.amp(0) == cplx{1.0});

    // e1 (x) e2 over 1+2 qubits lands at 1*4+2 = 6
    const PureState e12 = tensor_product(PureState::basis(1, 1), PureState::basis(2, 2));
    CHECK(e12.amp(6) == cplx{1.0});

    // |11> (x) |000> = |11000> = |24>: qubit 1 is the most significant bit
    CHECK(tensor_product(PureState::basis(2, 3), PureState::basis(3, 0)).amp(24) == cplx{1.0});

    CHECK_THROWS_AS(tensor_product(PureState::ghz(3), PureState::ghz(2), 4), std::invalid_argument);
}

TEST_CASE("tensor product support law") {
    std::mt19937_64 rng(11);
    const PureState a = random_state(2, rng);
    PureState b = random_state(3, rng);
    // poke a couple of exact zeros into b
    std::vector<cplx> bam(b.amps().begin(), b.amps().end());
    bam[1] = bam[6] = cplx{0.0};
    b = PureState(3, bam);
    const PureState prod = tensor_product(a, b);
    for (std::uint64_t j = 0; j < a.dim(); ++j)
        for (std::uint64_t k = 0; k < b.dim(); ++k) {
            const bool expect_nonzero = a.amp(j) != cplx{0.0} && b.amp(k) != cplx{0.0};
            CHECK((prod.amp(j * b.dim() + k) != cplx{0.0}) == expect_nonzero);
        }
}

TEST_CASE("qubit permutation acts on indices by moving bits") {
    const QubitPermutation swap15 = QubitPermutation::transposition(1, 5, 5);
    CHECK(swap15.index_image(24) == 9);
    CHECK(swap15.index_image(7) == 22);

    std::vector<cplx> expected(32, cplx{0.0});
    expected[0] = expected[9] = expected[22] = expected[31] = cplx{0.5};
    CHECK(max_abs_diff(apply_qubit_permutation(bell_ghz_product_state(), swap15),
                       PureState(5, expected)) == 0.0);

    // |7> = |00111>; swapping positions 1 and 3 gives |10011> = |19>
    CHECK(QubitPermutation::transposition(1, 3, 5).index_image(7) == 19);

    const PureState any = bell_ghz_product_state();
    CHECK(max_abs_diff(apply_qubit_permutation(any, QubitPermutation::identity(5)), any) == 0.0);
}

TEST_CASE("index_image agrees with the bit-string oracle") {
    std::mt19937_64 rng(5);
    for (int n : {3, 5}) {
        for (int rep = 0; rep < 20; ++rep) {
            const QubitPermutation perm = random_permutation(n, rng);
            for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k)
                CHECK(perm.index_image(k) == bit_permute_oracle(k, perm.image(), n));
        }
    }
}

TEST_CASE("permutation group structure") {
    const QubitPermutation t12 = QubitPermutation::transposition(1, 2, 3);
    CHECK(compose(t12, t12).is_identity());

    // (1 2 3) == (1,2) then (2,3) applied right to left
    const QubitPermutation cycle = QubitPermutation::from_cycles({{1, 2, 3}}, 3);
    const QubitPermutation composed =
        compose(QubitPermutation::transposition(1, 2, 3), QubitPermutation::transposition(2, 3, 3));
    for (std::uint64_t k = 0; k < 8; ++k) CHECK(cycle.index_image(k) == composed.index_image(k));

    // (1, i1, ..., il) == (1,2)(2, i1, ..., il)(1,2)
    const QubitPermutation lhs = QubitPermutation::from_cycles({{1, 3, 5}}, 5);
    const QubitPermutation rhs =
        compose(QubitPermutation::transposition(1, 2, 5),
                compose(QubitPermutation::from_cycles({{2, 3, 5}}, 5),
                        QubitPermutation::transposition(1, 2, 5)));
    CHECK(lhs == rhs);

    CHECK(QubitPermutation::from_cycles({{1, 5}}, 5).index_image(24) == 9);

    CHECK_THROWS_AS(QubitPermutation::from_cycles({{1, 6}}, 5), std::invalid_argument);
    CHECK_THROWS_AS(QubitPermutation::from_cycles({{1, 2}, {2, 3}}, 5), std::invalid_argument);
    CHECK_THROWS_AS(QubitPermutation::transposition(2, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(QubitPermutation({1, 1, 3}), std::invalid_argument);
}

TEST_CASE("permutation action invariants") {
    std::mt19937_64 rng(17);
    for (int n : {3, 5}) {
        for (int rep = 0; rep < 50; ++rep) {
            const PureState psi = random_state(n, rng);
            const QubitPermutation p = random_permutation(n, rng);

            // inverse undoes the action exactly
            const PureState round =
                apply_qubit_permutation(apply_qubit_permutation(psi, p), p.inverse());
            CHECK(max_abs_diff(round, psi) == 0.0);

            // index permutations move amplitudes without touching them, so
            // the amplitude multiset (and hence the norm) is preserved
            const PureState moved = apply_qubit_permutation(psi, p);
            std::vector<std::pair<double, double>> before, after;
            for (std::uint64_t k = 0; k < psi.dim(); ++k) {
                before.emplace_back(psi.amp(k).real(), psi.amp(k).imag());
                after.emplace_back(moved.amp(k).real(), moved.amp(k).imag());
            }
            std::sort(before.begin(), before.end());
            std::sort(after.begin(), after.end());
            CHECK(before == after);
            CHECK(moved.norm() == doctest::Approx(psi.norm()).epsilon(1e-15));

            // composition convention: compose(p, q) acts as p after q
            const QubitPermutation q = random_permutation(n, rng);
            const PureState via_compose = apply_qubit_permutation(psi, compose(p, q));
            const PureState via_steps = apply_qubit_permutation(apply_qubit_permutation(psi, q), p);
            CHECK(max_abs_diff(via_compose, via_steps) == 0.0);
        }
    }
}

TEST_CASE("local operator chains act per qubit position") {
    const PureState ghz = PureState::ghz(3);
    CHECK(max_abs_diff(apply_local_operators(ghz, LocalOperatorChain::identity(3)), ghz) == 0.0);

    LocalOperatorChain scaled = LocalOperatorChain::identity(3);
    scaled.set_op(1, Mat2::diagonal(2.0, 2.0));
    const PureState doubled = apply_local_operators(ghz, scaled);
    CHECK(doubled.amp(0).real() == doctest::Approx(2.0 / std::sqrt(2.0)));
    CHECK(doubled.amp(7).real() == doctest::Approx(2.0 / std::sqrt(2.0)));

    // bit flip on qubit 1 sends |0...0> to |2^(n-1)>
    for (int n : {3, 5}) {
        LocalOperatorChain flip = LocalOperatorChain::identity(n);
        flip.set_op(1, Mat2{{cplx{0.0}, cplx{1.0}, cplx{1.0}, cplx{0.0}}});
        const PureState flipped = apply_local_operators(PureState::basis(n, 0), flip);
        CHECK(flipped.amp(std::uint64_t{1} << (n - 1)) == cplx{1.0});
    }

    CHECK_THROWS_AS(apply_local_operators(ghz, LocalOperatorChain::identity(4)),
                    std::invalid_argument);

    CHECK(LocalOperatorChain::identity(4).is_special_linear());
    CHECK(!scaled.is_special_linear());
    CHECK(scaled.abs_det_sq_product() == doctest::Approx(16.0));
}
