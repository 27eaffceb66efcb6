#pragma once

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "syndromelab/statevector.hpp"

namespace syndromelab {

enum class PrimitiveKind { RX, RY, RZ, U1, U3, X, Y, Z, H, I };

inline std::string to_string(PrimitiveKind k) {
    switch (k) {
        case PrimitiveKind::RX: return "RX";
        case PrimitiveKind::RY: return "RY";
        case PrimitiveKind::RZ: return "RZ";
        case PrimitiveKind::U1: return "U1";
        case PrimitiveKind::U3: return "U3";
        case PrimitiveKind::X: return "X";
        case PrimitiveKind::Y: return "Y";
        case PrimitiveKind::Z: return "Z";
        case PrimitiveKind::H: return "H";
        case PrimitiveKind::I: return "I";
    }
    return "?";
}

inline std::size_t param_arity(PrimitiveKind k) {
    switch (k) {
        case PrimitiveKind::RX:
        case PrimitiveKind::RY:
        case PrimitiveKind::RZ:
        case PrimitiveKind::U1: return 1;
        case PrimitiveKind::U3: return 3;
        default: return 0;
    }
}

struct ErrorPrimitive {
    PrimitiveKind kind = PrimitiveKind::I;
    std::vector<double> params;
};

/// Ordered error gate sequence on one target qubit; sequence[0] acts first.
struct ErrorSpec {
    std::vector<ErrorPrimitive> sequence;
    int target = 0;
    std::string label;
};

inline void validate_primitive(const ErrorPrimitive& p) {
    if (p.params.size() != param_arity(p.kind)) {
        throw std::invalid_argument(to_string(p.kind) + " takes " +
                                    std::to_string(param_arity(p.kind)) + " angle(s), got " +
                                    std::to_string(p.params.size()));
    }
    for (double a : p.params) {
        if (!std::isfinite(a)) throw std::invalid_argument("non-finite angle");
    }
}

/// Half-angle axis rotations: R_theta = cos(theta/2) I - i sin(theta/2) sigma;
/// U1(lambda) = diag(1, e^{i lambda}).
inline Gate1Q matrix_of(const ErrorPrimitive& p) {
    validate_primitive(p);
    using std::cos;
    using std::sin;
    const Complex mi(0, -1);
    switch (p.kind) {
        case PrimitiveKind::RX: {
            const double c = cos(p.params[0] / 2), s = sin(p.params[0] / 2);
            return {Complex(c), mi * s, mi * s, Complex(c)};
        }
        case PrimitiveKind::RY: {
            const double c = cos(p.params[0] / 2), s = sin(p.params[0] / 2);
            return {Complex(c), Complex(-s), Complex(s), Complex(c)};
        }
        case PrimitiveKind::RZ: {
            const double c = cos(p.params[0] / 2), s = sin(p.params[0] / 2);
            return {Complex(c, -s), 0, 0, Complex(c, s)};
        }
        case PrimitiveKind::U1:
            return {1, 0, 0, std::polar(1.0, p.params[0])};
        case PrimitiveKind::U3: {
            const double theta = p.params[0], phi = p.params[1], lambda = p.params[2];
            const double c = cos(theta / 2), s = sin(theta / 2);
            return {Complex(c), -std::polar(1.0, lambda) * s, std::polar(1.0, phi) * s,
                    std::polar(1.0, phi + lambda) * c};
        }
        case PrimitiveKind::X: return gates::pauli_x();
        case PrimitiveKind::Y: return gates::pauli_y();
        case PrimitiveKind::Z: return gates::pauli_z();
        case PrimitiveKind::H: return gates::hadamard();
        case PrimitiveKind::I: return gates::identity();
    }
    throw std::logic_error("matrix_of: unknown primitive");
}

/// Product of the sequence in application order (sequence[0] innermost).
inline Gate1Q compose(const ErrorSpec& spec) {
    if (spec.sequence.empty()) {
        throw std::invalid_argument("compose: empty error sequence");
    }
    Gate1Q acc = matrix_of(spec.sequence.front());
    for (std::size_t i = 1; i < spec.sequence.size(); ++i) {
        acc = matrix_of(spec.sequence[i]) * acc;
    }
    return acc;
}

/// Squared Pauli overlap w_P = |Tr(P^dagger g)/2|^2; sums to 1 for unitary g.
struct PauliWeights {
    double w_i = 0, w_x = 0, w_y = 0, w_z = 0;
};

inline PauliWeights pauli_weights(const Gate1Q& g) {
    if (!g.is_unitary()) {
        throw std::invalid_argument("pauli_weights: matrix is not unitary");
    }
    PauliWeights w;
    w.w_i = std::norm((g.u00 + g.u11) / 2.0);
    w.w_x = std::norm((g.u01 + g.u10) / 2.0);
    // Tr(Y^dagger g) = i g01 - i g10
    w.w_y = std::norm((Complex(0, 1) * g.u01 - Complex(0, 1) * g.u10) / 2.0);
    w.w_z = std::norm((g.u00 - g.u11) / 2.0);
    return w;
}

namespace detail {
inline ErrorPrimitive rot(PrimitiveKind k, double theta) { return {k, {theta}}; }
}  // namespace detail

/// The eight composite errors used for the arbitrary-error study. Composite
/// names like "X_pi/3 Y_pi/3" are applied left-to-right in time: the X
/// rotation first, then the Y rotation.
inline std::vector<ErrorSpec> named_error_suite(int target = 0) {
    const double pi = std::numbers::pi;
    using detail::rot;
    using K = PrimitiveKind;
    std::vector<ErrorSpec> suite;
    suite.push_back({{rot(K::RY, pi / 3)}, target, "Y_pi/3"});
    suite.push_back({{rot(K::RX, pi / 3)}, target, "X_pi/3"});
    suite.push_back({{rot(K::RX, pi / 3), rot(K::RY, pi / 3)}, target, "X_pi/3 Y_pi/3"});
    suite.push_back({{rot(K::RX, pi / 3), rot(K::RY, 2 * pi / 3)}, target, "X_pi/3 Y_2pi/3"});
    suite.push_back({{rot(K::RX, 2 * pi / 3), rot(K::RY, pi / 3)}, target, "X_2pi/3 Y_pi/3"});
    suite.push_back({{rot(K::RX, 2 * pi / 3), rot(K::RY, 2 * pi / 3)}, target, "X_2pi/3 Y_2pi/3"});
    suite.push_back({{rot(K::RX, pi / 2), rot(K::RY, pi / 2)}, target, "R"});
    suite.push_back({{ErrorPrimitive{K::H, {}}}, target, "H"});
    return suite;
}

/// Angle grammar: [+|-] [coefficient] ["pi"] ["/" divisor], or a plain
/// decimal. Examples: "pi", "2pi/3", "-10pi/15", "0.5", "-1.2".
inline double parse_angle(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw std::invalid_argument("empty angle");
    double sign = 1.0;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
        if (s[pos] == '-') sign = -1.0;
        ++pos;
    }
    std::size_t pi_pos = s.find("pi", pos);
    double value;
    if (pi_pos == std::string::npos) {
        std::size_t consumed = 0;
        value = std::stod(s.substr(pos), &consumed);
        if (pos + consumed != s.size()) {
            throw std::invalid_argument("bad angle \"" + text + "\"");
        }
    } else {
        double coeff = 1.0;
        if (pi_pos > pos) {
            std::size_t consumed = 0;
            coeff = std::stod(s.substr(pos, pi_pos - pos), &consumed);
            if (consumed != pi_pos - pos) {
                throw std::invalid_argument("bad angle \"" + text + "\"");
            }
        }
        value = coeff * std::numbers::pi;
        pos = pi_pos + 2;
        if (pos < s.size()) {
            if (s[pos] != '/') throw std::invalid_argument("bad angle \"" + text + "\"");
            std::size_t consumed = 0;
            const double div = std::stod(s.substr(pos + 1), &consumed);
            if (pos + 1 + consumed != s.size() || div == 0) {
                throw std::invalid_argument("bad angle \"" + text + "\"");
            }
            value /= div;
        }
    }
    return sign * value;
}

/// Error mini-language: comma-separated primitives. "X:pi/3" is an X-axis
/// rotation by pi/3; bare "X","Y","Z","H","I" are the named gates; "R" is
/// the composite X_pi/2 then Y_pi/2; "U1:<a>" and "U3:<a>:<b>:<c>" carry
/// explicit phases.
inline ErrorSpec parse_error_string(const std::string& text, int target = 0) {
    ErrorSpec spec;
    spec.target = target;
    spec.label = text;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token.empty()) throw std::invalid_argument("empty error token");
        std::vector<std::string> parts;
        std::stringstream tok(token);
        std::string part;
        while (std::getline(tok, part, ':')) parts.push_back(part);
        const std::string& head = parts[0];
        using K = PrimitiveKind;
        auto angles = [&](std::size_t want) {
            if (parts.size() != want + 1) {
                throw std::invalid_argument("token \"" + token + "\" wants " +
                                            std::to_string(want) + " angle(s)");
            }
            std::vector<double> a;
            for (std::size_t i = 1; i < parts.size(); ++i) a.push_back(parse_angle(parts[i]));
            return a;
        };
        if (head == "X" || head == "Y" || head == "Z") {
            const K named = head == "X" ? K::X : head == "Y" ? K::Y : K::Z;
            const K rotation = head == "X" ? K::RX : head == "Y" ? K::RY : K::RZ;
            if (parts.size() == 1) {
                spec.sequence.push_back({named, {}});
            } else {
                spec.sequence.push_back({rotation, angles(1)});
            }
        } else if (head == "H" || head == "I") {
            if (parts.size() != 1) throw std::invalid_argument(head + " takes no angle");
            spec.sequence.push_back({head == "H" ? K::H : K::I, {}});
        } else if (head == "R") {
            if (parts.size() != 1) throw std::invalid_argument("R takes no angle");
            spec.sequence.push_back(detail::rot(K::RX, std::numbers::pi / 2));
            spec.sequence.push_back(detail::rot(K::RY, std::numbers::pi / 2));
        } else if (head == "U1") {
            spec.sequence.push_back({K::U1, angles(1)});
        } else if (head == "U3") {
            spec.sequence.push_back({K::U3, angles(3)});
        } else {
            throw std::invalid_argument("unknown error token \"" + token + "\"");
        }
    }
    if (spec.sequence.empty()) {
        throw std::invalid_argument("error string \"" + text + "\" has no primitives");
    }
    return spec;
}

}  // namespace syndromelab
