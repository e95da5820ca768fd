#include "oddtangle/symbolic.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace oddtangle {

namespace {

void require_same_n(const Polynomial& p, const Polynomial& q) {
    if (p.n != q.n) throw std::invalid_argument("polynomial arithmetic: qubit counts differ");
}

// B(x, y) over two index blocks of length 2^m: the monomial list
// { (-1)^popcount(i) * a_{ox+i} * a_{oy+2^m-1-i} }. Collapses to doubled
// coefficients when the blocks coincide.
Polynomial bilinear_block_poly(int n, std::uint64_t offset_x, std::uint64_t offset_y, std::uint64_t len) {
    std::vector<Monomial> terms;
    terms.reserve(len);
    for (std::uint64_t i = 0; i < len; ++i) {
        const long long sign = (std::popcount(i) & 1) ? -1 : 1;
        terms.push_back(Monomial{sign, {static_cast<int>(offset_x + i), static_cast<int>(offset_y + len - 1 - i)}});
    }
    return canonicalized(n, std::move(terms));
}

}  // namespace

Polynomial canonicalized(int n, std::vector<Monomial> terms) {
    for (Monomial& m : terms) std::sort(m.factors.begin(), m.factors.end());
    std::sort(terms.begin(), terms.end(),
              [](const Monomial& a, const Monomial& b) { return a.factors < b.factors; });
    std::vector<Monomial> merged;
    merged.reserve(terms.size());
    for (Monomial& m : terms) {
        if (!merged.empty() && merged.back().factors == m.factors)
            merged.back().coeff += m.coeff;
        else
            merged.push_back(std::move(m));
    }
    std::erase_if(merged, [](const Monomial& m) { return m.coeff == 0; });
    return Polynomial{n, std::move(merged)};
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    require_same_n(p, q);
    std::vector<Monomial> terms = p.monomials;
    terms.insert(terms.end(), q.monomials.begin(), q.monomials.end());
    return canonicalized(p.n, std::move(terms));
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) {
    return p + (-1LL * q);
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    require_same_n(p, q);
    std::vector<Monomial> terms;
    terms.reserve(p.monomials.size() * q.monomials.size());
    for (const Monomial& a : p.monomials) {
        for (const Monomial& b : q.monomials) {
            Monomial m;
            m.coeff = a.coeff * b.coeff;
            m.factors = a.factors;
            m.factors.insert(m.factors.end(), b.factors.begin(), b.factors.end());
            terms.push_back(std::move(m));
        }
    }
    return canonicalized(p.n, std::move(terms));
}

Polynomial operator*(long long scalar, const Polynomial& p) {
    std::vector<Monomial> terms = p.monomials;
    for (Monomial& m : terms) m.coeff *= scalar;
    return canonicalized(p.n, std::move(terms));
}

Polynomial expand_tau_core(int n) {
    if (n % 2 == 0) throw std::invalid_argument("expand_tau_core: odd n only");
    if (n < 3 || n > 9) throw std::invalid_argument("expand_tau_core: n must be in [3, 9]");
    const std::uint64_t half = std::uint64_t{1} << (n - 1);
    const Polynomial buv = bilinear_block_poly(n, 0, half, half);
    const Polynomial buu = bilinear_block_poly(n, 0, 0, half);
    const Polynomial bvv = bilinear_block_poly(n, half, half, half);
    return buv * buv - buu * bvv;
}

Polynomial permute_polynomial(const Polynomial& p, const QubitPermutation& perm) {
    if (perm.size() != p.n) throw std::invalid_argument("permute_polynomial: size mismatch");
    std::vector<Monomial> terms = p.monomials;
    for (Monomial& m : terms)
        for (int& f : m.factors) f = static_cast<int>(perm.index_image(static_cast<std::uint64_t>(f)));
    return canonicalized(p.n, std::move(terms));
}

bool poly_equal(const Polynomial& p, const Polynomial& q) {
    return p.n == q.n && p.monomials == q.monomials;
}

bool contains_pair(const Polynomial& p, int i, int j) {
    for (const Monomial& m : p.monomials) {
        const auto count = [&m](int x) { return std::count(m.factors.begin(), m.factors.end(), x); };
        if (i == j ? count(i) >= 2 : (count(i) > 0 && count(j) > 0)) return true;
    }
    return false;
}

cplx evaluate(const Polynomial& p, std::span<const cplx> amps) {
    if (amps.size() != (std::uint64_t{1} << p.n))
        throw std::invalid_argument("evaluate: amplitude vector length must be 2^n");
    cplx sum{0.0};
    for (const Monomial& m : p.monomials) {
        cplx prod{static_cast<double>(m.coeff)};
        for (int f : m.factors) prod *= amps[static_cast<std::size_t>(f)];
        sum += prod;
    }
    return sum;
}

std::array<Polynomial, 3> three_qubit_form_variants() {
    const auto quad = [](std::initializer_list<Monomial> ms) {
        return canonicalized(3, std::vector<Monomial>(ms));
    };

    // (a0a7 - a1a6 - a2a5 + a3a4)^2 - 4 (a0a3 - a1a2)(a4a7 - a5a6)
    const Polynomial s1 = quad({{1, {0, 7}}, {-1, {1, 6}}, {-1, {2, 5}}, {1, {3, 4}}});
    const Polynomial f1 = s1 * s1 - 4LL * (quad({{1, {0, 3}}, {-1, {1, 2}}}) * quad({{1, {4, 7}}, {-1, {5, 6}}}));

    // (a0a7 - a3a4 + a1a6 - a2a5)^2 - 4 (a3a5 - a1a7)(a2a4 - a0a6)
    const Polynomial s2 = quad({{1, {0, 7}}, {-1, {3, 4}}, {1, {1, 6}}, {-1, {2, 5}}});
    const Polynomial f2 = s2 * s2 - 4LL * (quad({{1, {3, 5}}, {-1, {1, 7}}}) * quad({{1, {2, 4}}, {-1, {0, 6}}}));

    // (a0a7 - a3a4 - a1a6 + a2a5)^2 - 4 (a1a4 - a0a5)(a3a6 - a2a7)
    const Polynomial s3 = quad({{1, {0, 7}}, {-1, {3, 4}}, {-1, {1, 6}}, {1, {2, 5}}});
    const Polynomial f3 = s3 * s3 - 4LL * (quad({{1, {1, 4}}, {-1, {0, 5}}}) * quad({{1, {3, 6}}, {-1, {2, 7}}}));

    return {f1, f2, f3};
}

}  // namespace oddtangle
