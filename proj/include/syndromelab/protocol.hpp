#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "syndromelab/errors.hpp"
#include "syndromelab/states.hpp"
#include "syndromelab/statevector.hpp"

namespace syndromelab {

struct CnotOp {
    int control, target;
};
struct HadamardOp {
    int qubit;
};
struct ErrorOp {
    ErrorPrimitive primitive;
    int qubit;
};
using CircuitOp = std::variant<CnotOp, HadamardOp, ErrorOp>;

/// Full detection circuit over 2n+3 qubits: data qubits 0..2n-1, appended
/// parity qubit 2n, syndrome_a = 2n+1 (bit-parity), syndrome_b = 2n+2
/// (phase-parity, Hadamard-framed).
struct ProtocolCircuit {
    int n = 1;
    ComplementarySpec spec;
    std::optional<ErrorSpec> error;
    std::vector<CircuitOp> ops;

    int num_qubits() const { return 2 * n + 3; }
    int appended_qubit() const { return 2 * n; }
    int syndrome_a() const { return 2 * n + 1; }
    int syndrome_b() const { return 2 * n + 2; }
};

enum class ErrorClass { NoError, BitFlip, PhaseFlip, Both };

inline std::string to_string(ErrorClass c) {
    switch (c) {
        case ErrorClass::NoError: return "NoError";
        case ErrorClass::BitFlip: return "BitFlip";
        case ErrorClass::PhaseFlip: return "PhaseFlip";
        case ErrorClass::Both: return "Both";
    }
    return "?";
}

struct SyndromeOutcome {
    int s_a = 0;  // first syndrome qubit
    int s_b = 0;  // second syndrome qubit, read after the final Hadamard
};

/// Outcome tables are indexed 2*s_a + s_b: {0,+}=0, {0,-}=1, {1,+}=2,
/// {1,-}=3 where +/- name the pre-Hadamard state of syndrome_b.
inline int outcome_index(SyndromeOutcome o) { return 2 * o.s_a + o.s_b; }

/// 00 -> NoError, 10 -> BitFlip, 01 -> PhaseFlip, 11 -> Both. A measured
/// no-error baseline (relevant for sign -1 specs, whose clean run lands on
/// {01}) shifts the mapping by XOR.
inline ErrorClass classify(SyndromeOutcome o, SyndromeOutcome baseline = {0, 0}) {
    const int a = o.s_a ^ baseline.s_a;
    const int b = o.s_b ^ baseline.s_b;
    if (a == 0 && b == 0) return ErrorClass::NoError;
    if (a == 1 && b == 0) return ErrorClass::BitFlip;
    if (a == 0 && b == 1) return ErrorClass::PhaseFlip;
    return ErrorClass::Both;
}

inline SyndromeOutcome outcome_from_index(int idx) { return {(idx >> 1) & 1, idx & 1}; }

inline ProtocolCircuit build_circuit(const ComplementarySpec& spec,
                                     const std::optional<ErrorSpec>& error = std::nullopt) {
    require_valid(spec);
    ProtocolCircuit c;
    c.n = spec.n;
    c.spec = spec;
    c.error = error;
    const int n2 = 2 * spec.n;
    if (error) {
        if (error->sequence.empty()) throw std::invalid_argument("error sequence is empty");
        if (error->target < 0 || error->target > n2) {
            throw std::out_of_range("error target must be a data qubit in [0, " +
                                    std::to_string(n2) + "]");
        }
    }
    // extension: entangle the parity qubit
    for (int q = 0; q < n2; ++q) c.ops.push_back(CnotOp{q, c.appended_qubit()});
    // error injection on the prepared (2n+1)-qubit state
    if (error) {
        for (const ErrorPrimitive& p : error->sequence) {
            validate_primitive(p);
            c.ops.push_back(ErrorOp{p, error->target});
        }
    }
    // bit-parity onto syndrome_a
    for (int q = 0; q <= n2; ++q) c.ops.push_back(CnotOp{q, c.syndrome_a()});
    // phase-parity via Hadamard-framed controls from syndrome_b
    c.ops.push_back(HadamardOp{c.syndrome_b()});
    for (int q = 0; q < n2; ++q) c.ops.push_back(CnotOp{c.syndrome_b(), q});
    c.ops.push_back(HadamardOp{c.syndrome_b()});
    return c;
}

/// Initial register: |psi_spec> on qubits 0..2n-1, |0> elsewhere.
inline StateVector initial_register(const ComplementarySpec& spec) {
    const StateVector data = build_state(spec);
    const int m = 2 * spec.n + 3;
    std::vector<Complex> amps(std::size_t{1} << m, Complex(0));
    for (std::size_t i = 0; i < data.dim(); ++i) {
        amps[i << 3] = data.amplitudes()[i];
    }
    return StateVector::from_amplitudes(m, std::move(amps));
}

inline void apply_ops(StateVector& s, const std::vector<CircuitOp>& ops) {
    for (const CircuitOp& op : ops) {
        if (const auto* cx = std::get_if<CnotOp>(&op)) {
            s.apply_cnot(cx->control, cx->target);
        } else if (const auto* h = std::get_if<HadamardOp>(&op)) {
            s.apply_1q(gates::hadamard(), h->qubit);
        } else {
            const auto& e = std::get<ErrorOp>(op);
            s.apply_1q(matrix_of(e.primitive), e.qubit);
        }
    }
}

inline StateVector run_circuit(const ProtocolCircuit& c) {
    StateVector s = initial_register(c.spec);
    apply_ops(s, c.ops);
    return s;
}

/// Exact marginal over (syndrome_a, syndrome_b), indexed 2*s_a + s_b.
inline std::array<double, 4> run_exact(const ComplementarySpec& spec,
                                       const std::optional<ErrorSpec>& error = std::nullopt) {
    const ProtocolCircuit c = build_circuit(spec, error);
    const StateVector s = run_circuit(c);
    const std::array<int, 2> qubits{c.syndrome_a(), c.syndrome_b()};
    const std::vector<double> probs = s.marginal_distribution(qubits);
    return {probs[0], probs[1], probs[2], probs[3]};
}

inline std::array<std::uint64_t, 4> run_shots(const ComplementarySpec& spec,
                                              const std::optional<ErrorSpec>& error,
                                              std::uint64_t shots, std::uint64_t seed) {
    const ProtocolCircuit c = build_circuit(spec, error);
    const StateVector s = run_circuit(c);
    const std::array<int, 2> qubits{c.syndrome_a(), c.syndrome_b()};
    const std::vector<std::uint64_t> counts = s.sample_counts(qubits, shots, seed);
    return {counts[0], counts[1], counts[2], counts[3]};
}

enum class SweepAxis { X, Y, Z };

inline std::string to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::X: return "X";
        case SweepAxis::Y: return "Y";
        case SweepAxis::Z: return "Z";
    }
    return "?";
}

enum class RunMode { Exact, Shots };

struct SweepRow {
    double theta = 0;
    std::array<double, 4> probs{};  // indexed 2*s_a + s_b
    ErrorClass mode_class = ErrorClass::NoError;
};

inline ErrorClass modal_class(const std::array<double, 4>& probs) {
    int best = 0;
    for (int i = 1; i < 4; ++i) {
        if (probs[i] > probs[best]) best = i;
    }
    return classify(outcome_from_index(best));
}

/// splitmix64 step; derives per-point sampling seeds from (master, index).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::vector<SweepRow> sweep(const ComplementarySpec& spec, SweepAxis axis,
                                   const std::vector<double>& thetas, int target,
                                   RunMode mode = RunMode::Exact, std::uint64_t shots = 8192,
                                   std::uint64_t seed = 0) {
    if (thetas.empty()) throw std::invalid_argument("sweep: empty theta grid");
    const PrimitiveKind kind = axis == SweepAxis::X   ? PrimitiveKind::RX
                               : axis == SweepAxis::Y ? PrimitiveKind::RY
                                                      : PrimitiveKind::RZ;
    std::vector<SweepRow> rows;
    rows.reserve(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        ErrorSpec err{{ErrorPrimitive{kind, {thetas[i]}}}, target, ""};
        SweepRow row;
        row.theta = thetas[i];
        if (mode == RunMode::Exact) {
            row.probs = run_exact(spec, err);
        } else {
            const auto counts = run_shots(spec, err, shots, derive_seed(seed, i));
            for (int k = 0; k < 4; ++k) {
                row.probs[k] = static_cast<double>(counts[k]) / static_cast<double>(shots);
            }
        }
        row.mode_class = modal_class(row.probs);
        rows.push_back(row);
    }
    return rows;
}

/// The 31-point grid k*pi/15, k in [-15, 15].
inline std::vector<double> default_theta_grid() {
    std::vector<double> grid;
    for (int k = -15; k <= 15; ++k) {
        grid.push_back(static_cast<double>(k) * std::numbers::pi / 15.0);
    }
    return grid;
}

}  // namespace syndromelab
