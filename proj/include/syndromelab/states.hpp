#pragma once

#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "syndromelab/statevector.hpp"

#include <nlohmann/json.hpp>

namespace syndromelab {

/// State family spec: one ket string per complementary pair plus a global
/// sign. The pair-closure (each representative together with its bitwise
/// complement) carries uniform amplitude magnitude.
struct ComplementarySpec {
    int n = 1;  // kets have length 2n
    std::vector<std::string> representatives;
    int sign = +1;  // +1 or -1
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

enum class ParityClass { AllEven, AllOdd, Mixed };

inline std::string to_string(ParityClass p) {
    switch (p) {
        case ParityClass::AllEven: return "AllEven";
        case ParityClass::AllOdd: return "AllOdd";
        case ParityClass::Mixed: return "Mixed";
    }
    return "?";
}

inline bool is_ket_string(const std::string& k) {
    if (k.empty() || k.size() % 2 != 0) return false;
    for (char c : k) {
        if (c != '0' && c != '1') return false;
    }
    return true;
}

/// Bitwise complement: each bit summed with 1 modulo 2.
inline std::string complement_of(const std::string& ket) {
    if (!is_ket_string(ket)) {
        throw std::invalid_argument("complement_of: not a valid even-length ket string: \"" +
                                    ket + "\"");
    }
    std::string out = ket;
    for (char& c : out) c = (c == '0') ? '1' : '0';
    return out;
}

/// Basis index of a ket string, leftmost character = qubit 0 = MSB.
inline std::uint64_t ket_index(const std::string& ket) {
    std::uint64_t idx = 0;
    for (char c : ket) idx = (idx << 1) | static_cast<std::uint64_t>(c - '0');
    return idx;
}

inline ValidationReport validate_spec(const ComplementarySpec& spec) {
    ValidationReport report;
    if (spec.n < 1) {
        report.violations.push_back("n must be >= 1");
        return report;
    }
    if (spec.sign != 1 && spec.sign != -1) {
        report.violations.push_back("sign must be +1 or -1");
    }
    const std::size_t len = 2 * static_cast<std::size_t>(spec.n);
    if (spec.representatives.empty()) {
        report.violations.push_back("representative set is empty");
    }
    std::set<std::string> seen;
    for (const std::string& r : spec.representatives) {
        if (r.size() != len || !is_ket_string(r)) {
            report.violations.push_back("invalid ket string \"" + r + "\" (want " +
                                        std::to_string(len) + " characters over {0,1})");
            continue;
        }
        if (!seen.insert(r).second) {
            report.violations.push_back("duplicate representative \"" + r + "\"");
        }
    }
    for (const std::string& r : seen) {
        const std::string comp = complement_of(r);
        if (r != comp && seen.count(comp)) {
            // report each colliding pair once
            if (r < comp) {
                report.violations.push_back("representatives \"" + r + "\" and \"" + comp +
                                            "\" form a complementary pair; list one per pair");
            }
        }
    }
    if (report.ok() && spec.n <= 31) {
        const std::uint64_t total = std::uint64_t{1} << (2 * spec.n);
        if (2 * spec.representatives.size() >= total) {
            report.violations.push_back(
                "pair-closure covers every ket; the excluded set must be nonempty");
        }
    }
    return report;
}

inline void require_valid(const ComplementarySpec& spec) {
    const ValidationReport report = validate_spec(spec);
    if (!report.ok()) {
        std::string msg = "invalid spec:";
        for (const std::string& v : report.violations) msg += " " + v + ";";
        throw std::invalid_argument(msg);
    }
}

/// Uniform superposition over the pair-closure: +1/sqrt(2r) on each
/// representative, sign/sqrt(2r) on each complement.
inline StateVector build_state(const ComplementarySpec& spec) {
    require_valid(spec);
    const int m = 2 * spec.n;
    std::vector<Complex> amps(std::size_t{1} << m, Complex(0));
    const double mag = 1.0 / std::sqrt(2.0 * static_cast<double>(spec.representatives.size()));
    for (const std::string& r : spec.representatives) {
        amps[ket_index(r)] = Complex(mag);
        amps[ket_index(complement_of(r))] = Complex(spec.sign * mag);
    }
    return StateVector::from_amplitudes(m, std::move(amps));
}

/// C = |<s| sigma_y^{x m} |s*>| for an even number of qubits m.
inline double concurrence(const StateVector& s) {
    const int m = s.num_qubits();
    if (m % 2 != 0) {
        throw std::domain_error("concurrence: defined here for even qubit counts only");
    }
    // sigma_y^{x m}|b> = i^m (-1)^{ones(b)} |~b>
    const std::size_t all = s.dim() - 1;
    Complex acc(0);
    for (std::size_t b = 0; b < s.dim(); ++b) {
        const std::size_t bc = b ^ all;
        const int ones = std::popcount(bc);
        const double sign = (ones % 2 == 0) ? 1.0 : -1.0;
        acc += std::conj(s.amplitudes()[b]) * sign * std::conj(s.amplitudes()[bc]);
    }
    const double im_phase = (m % 4 == 0) ? 1.0 : -1.0;  // i^m for even m
    return std::abs(acc * im_phase);
}

/// Parity of the 1-count across the pair-closure. Complementing a 2n-bit ket
/// preserves 1-count parity, so representatives decide the class.
inline ParityClass parity_class(const ComplementarySpec& spec) {
    require_valid(spec);
    bool any_even = false, any_odd = false;
    for (const std::string& r : spec.representatives) {
        std::size_t ones = 0;
        for (char c : r) ones += (c == '1');
        (ones % 2 == 0 ? any_even : any_odd) = true;
    }
    if (any_even && any_odd) return ParityClass::Mixed;
    return any_even ? ParityClass::AllEven : ParityClass::AllOdd;
}

inline bool ancilla_is_entangling(const ComplementarySpec& spec) {
    return parity_class(spec) == ParityClass::Mixed;
}

/// Spec file schema: {"n": <int>, "representatives": ["<bits>", ...],
/// "sign": "+"|"-"}.
inline ComplementarySpec parse_spec_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ComplementarySpec spec;
    spec.n = j.at("n").get<int>();
    spec.representatives = j.at("representatives").get<std::vector<std::string>>();
    const std::string sign = j.value("sign", "+");
    if (sign == "+") {
        spec.sign = +1;
    } else if (sign == "-") {
        spec.sign = -1;
    } else {
        throw std::invalid_argument("spec sign must be \"+\" or \"-\", got \"" + sign + "\"");
    }
    return spec;
}

inline std::string spec_to_json(const ComplementarySpec& spec) {
    nlohmann::json j;
    j["n"] = spec.n;
    j["representatives"] = spec.representatives;
    j["sign"] = spec.sign > 0 ? "+" : "-";
    return j.dump(2);
}

/// Uniform random valid spec: a nonempty proper subset of pair
/// representatives. The canonical representative of a pair is the ket whose
/// leading bit is 0.
inline ComplementarySpec random_spec(int n, std::mt19937_64& rng, int sign = +1) {
    const std::uint64_t pairs = std::uint64_t{1} << (2 * n - 1);
    // pick a nonempty proper subset of the pair set
    std::vector<std::uint64_t> chosen;
    while (chosen.empty() || chosen.size() == pairs) {
        chosen.clear();
        for (std::uint64_t p = 0; p < pairs; ++p) {
            if (rng() & 1u) chosen.push_back(p);
        }
    }
    ComplementarySpec spec;
    spec.n = n;
    spec.sign = sign;
    for (std::uint64_t p : chosen) {
        std::string ket(2 * static_cast<std::size_t>(n), '0');
        for (int b = 0; b < 2 * n; ++b) {
            if ((p >> (2 * n - 1 - b)) & 1u) ket[static_cast<std::size_t>(b)] = '1';
        }
        spec.representatives.push_back(std::move(ket));
    }
    return spec;
}

}  // namespace syndromelab
