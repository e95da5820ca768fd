// symbolic.hpp
// Exact integer-coefficient expansion of the invariants as polynomials in the
// amplitude symbols a_0 .. a_{2^n - 1}. Polynomial identities (the equality of
// the equivalent 3-qubit forms, permutation behavior of the expansions) are
// proved here by canonical term collection instead of sampling.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "oddtangle/state.hpp"

namespace oddtangle {

// coefficient * product of amplitude symbols; factors is the sorted multiset
// of amplitude indices (degree 4 throughout this library).
struct Monomial {
    long long coeff = 0;
    std::vector<int> factors;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.coeff == b.coeff && a.factors == b.factors;
    }
};

// Canonical form: monomials sorted by factor multiset (lexicographic), one
// monomial per multiset, no zero coefficients. Two polynomials are equal iff
// their canonical lists are identical.
struct Polynomial {
    int n = 0;  // qubit count of the ambient state; symbols range over 2^n
    std::vector<Monomial> monomials;
};

// Sorts factor multisets, merges duplicates, drops zero coefficients.
// Idempotent.
Polynomial canonicalized(int n, std::vector<Monomial> terms);

Polynomial operator+(const Polynomial& p, const Polynomial& q);
Polynomial operator-(const Polynomial& p, const Polynomial& q);
Polynomial operator*(const Polynomial& p, const Polynomial& q);
Polynomial operator*(long long scalar, const Polynomial& p);

// The inner expression of tau (pre absolute value): B(u,v)^2 - B(u,u)B(v,v)
// expanded over the 2^n amplitude symbols. Requires odd n with 3 <= n <= 9;
// the expansion is exact and the cap keeps it desk-scale.
Polynomial expand_tau_core(int n);

// Substitutes every amplitude index by its image under the basis-index bit
// permutation induced by perm, then re-canonicalizes.
Polynomial permute_polynomial(const Polynomial& p, const QubitPermutation& perm);

bool poly_equal(const Polynomial& p, const Polynomial& q);

// True iff some monomial's factor multiset contains both i and j
// (for i == j: contains i at least twice).
bool contains_pair(const Polynomial& p, int i, int j);

// Numeric evaluation at a concrete amplitude vector.
cplx evaluate(const Polynomial& p, std::span<const cplx> amps);

// Three equivalent writings of the 3-qubit inner expression, transcribed
// term by term. forms[0] is the defining expression; forms[1] and forms[2]
// are its (1,3)- and (1,2)-transposition images. All three are equal as
// canonical polynomials.
std::array<Polynomial, 3> three_qubit_form_variants();

}  // namespace oddtangle
