#include "oddtangle/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace oddtangle {

namespace {

using nlohmann::json;

std::string strip_whitespace(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

double parse_real(const std::string& text) {
    if (text.empty()) throw ParseError("empty numeric literal");
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end != begin + text.size()) throw ParseError("bad numeric literal '" + text + "'");
    if (!std::isfinite(value)) throw ParseError("non-finite numeric literal '" + text + "'");
    return value;
}

// Accepts "", "+", "-", "a", "bi", "a+bi", "a-bi", optionally parenthesized
// and optionally sign-prefixed (a joiner folded into the next term). Empty
// and bare signs mean +/-1 (a ket written without a coefficient).
cplx parse_coefficient(std::string text) {
    if (text.empty() || text == "+") return cplx{1.0};
    if (text == "-") return cplx{-1.0};
    double outer_sign = 1.0;
    if ((text.front() == '+' || text.front() == '-') && text.size() > 1 && text[1] == '(') {
        outer_sign = text.front() == '-' ? -1.0 : 1.0;
        text = text.substr(1);
    }
    if (text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
    if (text.empty()) throw ParseError("empty coefficient");

    const bool imaginary_tail = text.back() == 'i' || text.back() == 'I';
    std::string body = imaginary_tail ? text.substr(0, text.size() - 1) : text;

    // Split at the last top-level sign that is not an exponent sign and not
    // at the front; that sign separates the real and imaginary parts.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        const char c = body[k];
        if (c != '+' && c != '-') continue;
        const char prev = body[k - 1];
        if (prev == 'e' || prev == 'E') continue;
        split = k;
        break;
    }

    if (!imaginary_tail) {
        if (split != std::string::npos)
            throw ParseError("complex coefficient '" + text + "' must end in i");
        return outer_sign * cplx{parse_real(body)};
    }
    if (split == std::string::npos) {
        // pure imaginary: "i", "-i", "2i"
        if (body.empty() || body == "+") return outer_sign * cplx{0.0, 1.0};
        if (body == "-") return outer_sign * cplx{0.0, -1.0};
        return outer_sign * cplx{0.0, parse_real(body)};
    }
    const std::string re_text = body.substr(0, split);
    std::string im_text = body.substr(split);
    if (im_text == "+") im_text = "1";
    if (im_text == "-") im_text = "-1";
    return outer_sign * cplx{parse_real(re_text), parse_real(im_text)};
}

int bits_needed(std::uint64_t index) {
    int bits = 0;
    while (index > 0) {
        ++bits;
        index >>= 1;
    }
    return std::max(bits, 1);
}

PureState parse_ket(const std::string& raw, int max_qubits) {
    std::string text = strip_whitespace(raw);
    if (text.empty()) throw ParseError("empty state expression");

    int directive_n = 0;
    if (text.rfind("n=", 0) == 0) {
        const std::size_t semi = text.find(';');
        if (semi == std::string::npos) throw ParseError("qubit-count directive must end with ';'");
        const std::string num = text.substr(2, semi - 2);
        if (num.empty() || !std::all_of(num.begin(), num.end(),
                                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ParseError("bad qubit-count directive");
        directive_n = std::atoi(num.c_str());
        if (directive_n < 1) throw ParseError("qubit count must be >= 1");
        if (directive_n > max_qubits)
            throw ParseError("qubit count exceeds the maximum " + std::to_string(max_qubits));
        text = text.substr(semi + 1);
        if (text.empty()) throw ParseError("no terms after the qubit-count directive");
    }

    // Each term is coefficient-text followed by |index>.
    std::vector<std::pair<std::uint64_t, cplx>> terms;
    std::uint64_t max_index = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t bar = text.find('|', pos);
        if (bar == std::string::npos) throw ParseError("expected a ket term '|index>'");
        const cplx coeff = parse_coefficient(text.substr(pos, bar - pos));
        const std::size_t close = text.find('>', bar);
        if (close == std::string::npos) throw ParseError("unterminated ket");
        const std::string index_text = text.substr(bar + 1, close - bar - 1);
        if (index_text.empty() || !std::all_of(index_text.begin(), index_text.end(),
                                               [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ParseError("ket index must be a nonnegative integer");
        const std::uint64_t index = std::strtoull(index_text.c_str(), nullptr, 10);
        for (const auto& [seen, unused] : terms)
            if (seen == index) throw ParseError("duplicate basis index " + std::to_string(index));
        terms.emplace_back(index, coeff);
        max_index = std::max(max_index, index);
        pos = close + 1;
        if (pos < text.size() && text[pos] != '+' && text[pos] != '-')
            throw ParseError("terms must be joined by '+' or '-'");
    }
    if (terms.empty()) throw ParseError("state has no terms");

    const int n = directive_n > 0 ? directive_n : bits_needed(max_index);
    if (n > max_qubits)
        throw ParseError("qubit count exceeds the maximum " + std::to_string(max_qubits));
    if (max_index >= (std::uint64_t{1} << n))
        throw ParseError("basis index " + std::to_string(max_index) + " out of range for n=" +
                         std::to_string(n));
    std::vector<cplx> amps(std::uint64_t{1} << n, cplx{0.0});
    for (const auto& [index, coeff] : terms) amps[index] = coeff;
    return PureState(n, std::move(amps));
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

PureState parse_state(const std::string& text, int max_qubits) {
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty state expression");
    if (text[first] == '{') {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad state JSON: ") + e.what());
        }
        return state_from_json(doc, max_qubits);
    }
    return parse_ket(text, max_qubits);
}

PureState state_from_json(const json& doc, int max_qubits) {
    try {
        if (!doc.is_object() || !doc.contains("n") || !doc.contains("terms"))
            throw ParseError("state JSON needs 'n' and 'terms'");
        const int n = doc.at("n").get<int>();
        if (n < 1) throw ParseError("qubit count must be >= 1");
        if (n > max_qubits)
            throw ParseError("qubit count exceeds the maximum " + std::to_string(max_qubits));
        std::vector<cplx> amps(std::uint64_t{1} << n, cplx{0.0});
        std::int64_t previous = -1;
        for (const json& term : doc.at("terms")) {
            const auto index = term.at("index").get<std::int64_t>();
            if (index <= previous) throw ParseError("term indices must be strictly increasing");
            if (index < 0 || static_cast<std::uint64_t>(index) >= amps.size())
                throw ParseError("basis index " + std::to_string(index) + " out of range");
            previous = index;
            const double re = term.at("re").get<double>();
            const double im = term.at("im").get<double>();
            if (!std::isfinite(re) || !std::isfinite(im)) throw ParseError("non-finite amplitude");
            amps[static_cast<std::uint64_t>(index)] = cplx{re, im};
        }
        return PureState(n, std::move(amps));
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad state JSON: ") + e.what());
    }
}

json state_to_json(const PureState& state) {
    json terms = json::array();
    for (std::uint64_t k = 0; k < state.dim(); ++k) {
        const cplx a = state.amp(k);
        if (a == cplx{0.0}) continue;
        terms.push_back(json{{"index", k}, {"re", a.real()}, {"im", a.imag()}});
    }
    return json{{"n", state.num_qubits()}, {"terms", std::move(terms)}};
}

std::string state_to_ket(const PureState& state) {
    std::ostringstream os;
    os << "n=" << state.num_qubits() << "; ";
    bool first = true;
    for (std::uint64_t k = 0; k < state.dim(); ++k) {
        const cplx a = state.amp(k);
        if (a == cplx{0.0}) continue;
        if (a.imag() == 0.0) {
            const double re = a.real();
            if (first)
                os << format_double(re);
            else
                os << (re < 0.0 ? " - " : " + ") << format_double(std::abs(re));
        } else {
            if (!first) os << " + ";
            os << "(" << format_double(a.real()) << (a.imag() < 0.0 ? "-" : "+")
               << format_double(std::abs(a.imag())) << "i)";
        }
        os << "|" << k << ">";
        first = false;
    }
    if (first) os << "0|0>";  // zero state
    return os.str();
}

QubitPermutation parse_cycles(const std::string& text, int n) {
    if (strip_whitespace(text).empty()) throw ParseError("empty cycle expression");
    std::vector<std::vector<int>> cycles;
    std::string normalized;
    for (char c : text) normalized.push_back(c == ',' ? ' ' : c);

    std::size_t pos = 0;
    while (pos < normalized.size()) {
        while (pos < normalized.size() && std::isspace(static_cast<unsigned char>(normalized[pos]))) ++pos;
        if (pos >= normalized.size()) break;
        if (normalized[pos] != '(') throw ParseError("cycle must start with '('");
        const std::size_t close = normalized.find(')', pos);
        if (close == std::string::npos) throw ParseError("unterminated cycle");
        std::istringstream body(normalized.substr(pos + 1, close - pos - 1));
        std::vector<int> cycle;
        std::string tok;
        while (body >> tok) {
            if (!std::all_of(tok.begin(), tok.end(),
                             [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                throw ParseError("cycle elements must be positive integers");
            cycle.push_back(std::atoi(tok.c_str()));
        }
        if (!cycle.empty()) cycles.push_back(std::move(cycle));
        pos = close + 1;
    }
    try {
        return QubitPermutation::from_cycles(cycles, n);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

Mat2 mat2_from_json(const json& doc) {
    try {
        if (!doc.is_array() || doc.size() != 4) throw ParseError("matrix must be 4 [re,im] entries");
        Mat2 m;
        for (int k = 0; k < 4; ++k) {
            const json& entry = doc.at(static_cast<std::size_t>(k));
            if (!entry.is_array() || entry.size() != 2) throw ParseError("matrix entry must be [re,im]");
            m.e[static_cast<std::size_t>(k)] = cplx{entry.at(0).get<double>(), entry.at(1).get<double>()};
        }
        return m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad matrix JSON: ") + e.what());
    }
}

json mat2_to_json(const Mat2& m) {
    json out = json::array();
    for (cplx z : m.e) out.push_back(json::array({z.real(), z.imag()}));
    return out;
}

LocalOperatorChain chain_from_json(const json& doc) {
    try {
        if (!doc.is_object() || !doc.contains("ops")) throw ParseError("chain JSON needs 'ops'");
        std::vector<Mat2> ops;
        for (const json& op : doc.at("ops")) ops.push_back(mat2_from_json(op));
        if (ops.empty()) throw ParseError("chain has no operators");
        return LocalOperatorChain(std::move(ops));
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad chain JSON: ") + e.what());
    }
}

json chain_to_json(const LocalOperatorChain& chain) {
    json ops = json::array();
    for (const Mat2& m : chain.ops()) ops.push_back(mat2_to_json(m));
    return json{{"ops", std::move(ops)}};
}

Polynomial polynomial_from_json(const json& doc) {
    try {
        const int n = doc.at("n").get<int>();
        if (n < 1 || n > 62) throw ParseError("bad polynomial qubit count");
        std::vector<Monomial> terms;
        for (const json& m : doc.at("monomials")) {
            Monomial mono;
            mono.coeff = m.at("coeff").get<long long>();
            for (const json& f : m.at("factors")) {
                const auto idx = f.get<std::int64_t>();
                if (idx < 0 || idx >= (std::int64_t{1} << n))
                    throw ParseError("monomial factor out of range");
                mono.factors.push_back(static_cast<int>(idx));
            }
            terms.push_back(std::move(mono));
        }
        return canonicalized(n, std::move(terms));
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad polynomial JSON: ") + e.what());
    }
}

json polynomial_to_json(const Polynomial& p) {
    json monomials = json::array();
    for (const Monomial& m : p.monomials)
        monomials.push_back(json{{"coeff", m.coeff}, {"factors", m.factors}});
    return json{{"n", p.n}, {"monomials", std::move(monomials)}};
}

}  // namespace oddtangle
