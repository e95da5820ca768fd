// io.hpp
// Parsing and serialization: ket text and JSON state formats, cycle strings,
// operator chains, polynomials, and verification reports.
//
// State JSON:  {"n": 3, "terms": [{"index": 7, "re": 1.0, "im": 0.0}, ...]}
//              with indices strictly increasing; unlisted indices are zero.
// Ket text:    coefficient|index> terms joined by + or -, e.g.
//              "0.5|0> + 0.5|7> + 0.5|24> + 0.5|31>". Coefficients are
//              decimals or complex a+bi (parenthesized when serialized). An
//              optional leading "n=<int>;" pins the qubit count; without it,
//              n is the smallest count that fits the largest index.
// Polynomial:  {"n": 3, "monomials": [{"coeff": 1, "factors": [0,0,7,7]}, ...]}
//              in canonical order.

#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "oddtangle/state.hpp"
#include "oddtangle/symbolic.hpp"

namespace oddtangle {

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Auto-detects JSON (first non-space character '{') vs ket text.
PureState parse_state(const std::string& text, int max_qubits = kDefaultMaxQubits);

PureState state_from_json(const nlohmann::json& doc, int max_qubits = kDefaultMaxQubits);
nlohmann::json state_to_json(const PureState& state);
std::string state_to_ket(const PureState& state);

// "(1 5)", "(1 2 3)(4 5)", "()"; elements separated by spaces or commas.
QubitPermutation parse_cycles(const std::string& text, int n);

// {"ops": [[[re,im],[re,im],[re,im],[re,im]], ...]} — one row-major 2x2
// matrix per qubit position.
LocalOperatorChain chain_from_json(const nlohmann::json& doc);
nlohmann::json chain_to_json(const LocalOperatorChain& chain);
Mat2 mat2_from_json(const nlohmann::json& doc);
nlohmann::json mat2_to_json(const Mat2& m);

Polynomial polynomial_from_json(const nlohmann::json& doc);
nlohmann::json polynomial_to_json(const Polynomial& p);

}  // namespace oddtangle
