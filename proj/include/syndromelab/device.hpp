#pragma once

#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "syndromelab/protocol.hpp"

namespace syndromelab {

struct QubitParams {
    double frequency_ghz = 0;
    double coherence_time_us = 0;
    double relaxation_time_us = 0;
    double gate_error_e3 = 0;    // x 10^-3
    double readout_error_e2 = 0; // x 10^-2
    // directed CNOT error entries, keyed by target qubit, x 10^-2
    std::vector<std::pair<int, double>> multiqubit_gate_errors;
};

struct DeviceModel {
    std::string name;
    std::vector<QubitParams> qubits;
    std::vector<std::pair<int, int>> coupling;  // directed control -> target

    bool has_edge(int control, int target) const {
        for (const auto& [c, t] : coupling) {
            if (c == control && t == target) return true;
        }
        return false;
    }
};

/// ibmqx5 (Rueschlikon): 16 qubits, 22 directed CNOT edges.
inline DeviceModel builtin_ibmqx5() {
    DeviceModel d;
    d.name = "ibmqx5";
    d.qubits = {
        {5.26, 42.60, 22.70, 2.37, 5.43, {}},
        {5.40, 39.40, 67.70, 2.81, 5.93, {{0, 5.01}, {2, 3.87}}},
        {5.28, 35.50, 50.00, 3.53, 8.61, {{3, 3.42}}},
        {5.08, 56.60, 88.30, 1.65, 4.18, {{4, 4.66}, {14, 4.78}}},
        {4.98, 28.00, 28.70, 1.89, 6.90, {}},
        {5.15, 38.50, 43.10, 1.62, 6.15, {{4, 4.37}}},
        {5.31, 53.81, 107.50, 1.54, 5.02, {{5, 3.19}, {7, 2.84}, {11, 2.51}}},
        {5.25, 37.50, 38.70, 1.77, 3.64, {{10, 60.59}}},
        {5.12, 42.40, 74.60, 1.12, 5.37, {{7, 3.63}}},
        {5.16, 39.80, 68.00, 1.68, 11.88, {{8, 10.80}, {10, 3.27}}},
        {5.04, 39.50, 66.80, 1.38, 8.74, {}},
        {5.11, 58.90, 96.80, 1.43, 4.47, {{10, 3.69}}},
        {4.95, 45.30, 49.90, 1.37, 11.90, {{5, 3.87}, {11, 3.94}, {13, 5.30}}},
        {5.09, 40.70, 41.40, 3.44, 3.75, {{4, 5.83}, {14, 5.34}}},
        {4.87, 31.20, 60.60, 2.55, 5.68, {}},
        {5.10, 29.00, 79.40, 2.84, 9.82, {{0, 3.86}, {2, 3.21}, {14, 3.40}}},
    };
    d.coupling = {{1, 0},  {1, 2},  {2, 3},   {3, 14},  {3, 4},   {5, 4},
                  {6, 11}, {6, 7},  {6, 5},   {8, 7},   {7, 10},  {9, 8},
                  {9, 10}, {11, 10}, {12, 13}, {12, 11}, {12, 5},  {13, 14},
                  {13, 4}, {15, 14}, {15, 2},  {15, 0}};
    return d;
}

/// Plain-text tabular form: one "qubit" line per qubit with the five scalar
/// parameters and the directed CNOT error list, then one "edge" line per
/// coupling edge.
inline std::string serialize_device(const DeviceModel& d) {
    std::ostringstream out;
    out << "device " << d.name << "\n";
    out << "# qubit <id> <freq_ghz> <coherence_us> <relaxation_us> <gate_err_e3> "
           "<readout_err_e2> [cx<target>=<err_e2> ...]\n";
    out << std::fixed << std::setprecision(2);
    for (std::size_t i = 0; i < d.qubits.size(); ++i) {
        const QubitParams& q = d.qubits[i];
        out << "qubit " << i << " " << q.frequency_ghz << " " << q.coherence_time_us << " "
            << q.relaxation_time_us << " " << q.gate_error_e3 << " " << q.readout_error_e2;
        for (const auto& [t, e] : q.multiqubit_gate_errors) out << " cx" << t << "=" << e;
        out << "\n";
    }
    for (const auto& [c, t] : d.coupling) out << "edge " << c << " " << t << "\n";
    return out.str();
}

inline DeviceModel parse_device(const std::string& text) {
    DeviceModel d;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string tag;
        row >> tag;
        if (tag == "device") {
            row >> d.name;
        } else if (tag == "qubit") {
            std::size_t id = 0;
            QubitParams q;
            row >> id >> q.frequency_ghz >> q.coherence_time_us >> q.relaxation_time_us >>
                q.gate_error_e3 >> q.readout_error_e2;
            std::string cx;
            while (row >> cx) {
                const std::size_t eq = cx.find('=');
                if (cx.rfind("cx", 0) != 0 || eq == std::string::npos) {
                    throw std::invalid_argument("bad cx entry \"" + cx + "\"");
                }
                q.multiqubit_gate_errors.emplace_back(std::stoi(cx.substr(2, eq - 2)),
                                                      std::stod(cx.substr(eq + 1)));
            }
            if (d.qubits.size() != id) {
                throw std::invalid_argument("qubit lines must be in order");
            }
            d.qubits.push_back(std::move(q));
        } else if (tag == "edge") {
            int c = 0, t = 0;
            row >> c >> t;
            d.coupling.emplace_back(c, t);
        } else {
            throw std::invalid_argument("unknown device line tag \"" + tag + "\"");
        }
    }
    return d;
}

enum class CnotLegality { Legal, Reversible, Illegal };

inline std::string to_string(CnotLegality s) {
    switch (s) {
        case CnotLegality::Legal: return "legal";
        case CnotLegality::Reversible: return "reversible";
        case CnotLegality::Illegal: return "illegal";
    }
    return "?";
}

struct LegalityEntry {
    int logical_control = 0, logical_target = 0;
    int physical_control = 0, physical_target = 0;
    CnotLegality status = CnotLegality::Illegal;
};

struct LegalityReport {
    std::vector<LegalityEntry> entries;
    bool all_legal() const {
        for (const LegalityEntry& e : entries) {
            if (e.status != CnotLegality::Legal) return false;
        }
        return true;
    }
};

inline CnotLegality edge_legality(const DeviceModel& d, int control, int target) {
    if (d.has_edge(control, target)) return CnotLegality::Legal;
    if (d.has_edge(target, control)) return CnotLegality::Reversible;
    return CnotLegality::Illegal;
}

/// Checks every CNOT of the circuit against the directed coupling graph
/// under the given logical -> physical layout. Reversible means the opposite
/// edge exists and the CNOT is fixable by Hadamard conjugation.
inline LegalityReport check_legality(const ProtocolCircuit& c, const DeviceModel& d,
                                     const std::map<int, int>& layout) {
    std::map<int, int> inverse;
    for (const auto& [logical, physical] : layout) {
        if (physical < 0 || physical >= static_cast<int>(d.qubits.size())) {
            throw std::invalid_argument("layout maps qubit " + std::to_string(logical) +
                                        " outside the device");
        }
        if (!inverse.emplace(physical, logical).second) {
            throw std::invalid_argument("layout collision on physical qubit " +
                                        std::to_string(physical));
        }
    }
    LegalityReport report;
    for (const CircuitOp& op : c.ops) {
        const auto* cx = std::get_if<CnotOp>(&op);
        if (!cx) continue;
        LegalityEntry e;
        e.logical_control = cx->control;
        e.logical_target = cx->target;
        e.physical_control = layout.at(cx->control);
        e.physical_target = layout.at(cx->target);
        e.status = edge_legality(d, e.physical_control, e.physical_target);
        report.entries.push_back(e);
    }
    return report;
}

struct QasmProgram {
    std::string text;
    int num_qubits = 0;
    int creg_size = 2;
};

namespace detail {

/// Deterministic angle text; exact spellings for the multiples of pi the
/// emitter produces, %.17g otherwise.
inline std::string qasm_angle(double a) {
    const double pi = std::numbers::pi;
    const struct {
        double value;
        const char* text;
    } specials[] = {{0.0, "0"},       {pi, "pi"},       {-pi, "-pi"},
                    {pi / 2, "pi/2"}, {-pi / 2, "-pi/2"}};
    for (const auto& s : specials) {
        if (a == s.value) return s.text;
    }
    std::ostringstream out;
    out << std::setprecision(17) << a;
    return out.str();
}

inline bool is_ghz_like(const ComplementarySpec& spec) {
    return spec.sign == +1 && spec.representatives.size() == 1 &&
           spec.representatives[0] == std::string(2 * static_cast<std::size_t>(spec.n), '0');
}

inline void emit_primitive(std::ostringstream& out, const ErrorPrimitive& p, int q) {
    const std::string target = "q[" + std::to_string(q) + "]";
    switch (p.kind) {
        case PrimitiveKind::RY:
            out << "u3(" << qasm_angle(p.params[0]) << ",0,0) " << target << ";\n";
            break;
        case PrimitiveKind::RX:
            out << "u3(" << qasm_angle(p.params[0]) << ",pi/2,-pi/2) " << target << ";\n";
            break;
        case PrimitiveKind::RZ:
        case PrimitiveKind::U1:
            out << "u1(" << qasm_angle(p.params[0]) << ") " << target << ";\n";
            break;
        case PrimitiveKind::U3:
            out << "u3(" << qasm_angle(p.params[0]) << "," << qasm_angle(p.params[1]) << ","
                << qasm_angle(p.params[2]) << ") " << target << ";\n";
            break;
        case PrimitiveKind::X: out << "x " << target << ";\n"; break;
        case PrimitiveKind::Y: out << "u3(pi,0,0) " << target << ";\n"; break;
        case PrimitiveKind::Z: out << "u1(pi) " << target << ";\n"; break;
        case PrimitiveKind::H: out << "h " << target << ";\n"; break;
        case PrimitiveKind::I: out << "u1(0) " << target << ";\n"; break;
    }
}

}  // namespace detail

/// OpenQASM 2.0 emission. GHZ-family specs get gate-based preparation
/// (h + cx chain); any other spec is carried as a commented amplitude
/// initialization block, since the protocol itself fixes only the circuit
/// after preparation.
inline QasmProgram emit_qasm(const ProtocolCircuit& c) {
    const int m = c.num_qubits();
    if (m > kMaxQubits) throw std::invalid_argument("emit_qasm: circuit too large");
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << m << "];\n";
    out << "creg c[2];\n";
    out << "// state preparation: " << 2 * c.n << "-qubit entangled state on q[0..."
        << 2 * c.n - 1 << "]\n";
    if (detail::is_ghz_like(c.spec)) {
        out << "h q[0];\n";
        for (int q = 1; q < 2 * c.n; ++q) out << "cx q[0],q[" << q << "];\n";
    } else {
        const StateVector data = build_state(c.spec);
        out << "// initialize amplitudes (no gate decomposition emitted):\n";
        for (const std::string& r : c.spec.representatives) {
            out << "//   |" << r << "> and " << (c.spec.sign > 0 ? "+" : "-") << "|"
                << complement_of(r) << ">  amplitude 1/sqrt(" << 2 * c.spec.representatives.size()
                << ")\n";
        }
        (void)data;
    }
    for (const CircuitOp& op : c.ops) {
        if (const auto* cx = std::get_if<CnotOp>(&op)) {
            out << "cx q[" << cx->control << "],q[" << cx->target << "];\n";
        } else if (const auto* h = std::get_if<HadamardOp>(&op)) {
            out << "h q[" << h->qubit << "];\n";
        } else {
            const auto& e = std::get<ErrorOp>(op);
            detail::emit_primitive(out, e.primitive, e.qubit);
        }
    }
    out << "measure q[" << c.syndrome_a() << "] -> c[0];\n";
    out << "measure q[" << c.syndrome_b() << "] -> c[1];\n";
    return {out.str(), m, 2};
}

}  // namespace syndromelab
