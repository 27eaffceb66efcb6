#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "syndromelab/device.hpp"

using namespace syndromelab;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

/// Structural lint: declarations before gates, measures last, whitelisted
/// gate set only.
void lint_qasm(const QasmProgram& program) {
    std::istringstream in(program.text);
    std::string line;
    bool seen_gate = false, seen_measure = false;
    int declarations = 0;
    const std::set<std::string> whitelist{"u1", "u3", "h", "x", "cx", "measure"};
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("//", 0) == 0) continue;
        if (line == "OPENQASM 2.0;" || line.rfind("include", 0) == 0 ||
            line.rfind("qreg", 0) == 0 || line.rfind("creg", 0) == 0) {
            ++declarations;
            CHECK_FALSE(seen_gate);
            continue;
        }
        std::string head = line.substr(0, line.find_first_of(" ("));
        CHECK(whitelist.count(head) == 1);
        if (head == "measure") {
            seen_measure = true;
        } else {
            CHECK_FALSE(seen_measure);  // measures come last
            seen_gate = true;
        }
    }
    CHECK(declarations == 4);
    CHECK(seen_measure);
}

}  // namespace

TEST_CASE("builtin_ibmqx5 parameters") {
    const DeviceModel d = builtin_ibmqx5();
    REQUIRE(d.qubits.size() == 16);
    CHECK(d.qubits[0].frequency_ghz == 5.26);
    CHECK(d.qubits[3].relaxation_time_us == 88.30);
    CHECK(d.qubits[6].coherence_time_us == 53.81);
    CHECK(d.qubits[9].readout_error_e2 == 11.88);
    CHECK(d.qubits[15].gate_error_e3 == 2.84);
    REQUIRE(d.qubits[12].multiqubit_gate_errors.size() == 3);
    CHECK(d.qubits[12].multiqubit_gate_errors[2] == std::pair<int, double>{13, 5.30});
}

TEST_CASE("builtin_ibmqx5 coupling graph") {
    const DeviceModel d = builtin_ibmqx5();
    CHECK(d.coupling.size() == 22);
    CHECK(d.has_edge(1, 0));
    CHECK(d.has_edge(1, 2));
    CHECK(d.has_edge(6, 11));
    CHECK(d.has_edge(15, 0));
    CHECK(d.has_edge(12, 13));
    CHECK_FALSE(d.has_edge(13, 12));
    CHECK_FALSE(d.has_edge(0, 7));
    for (const auto& [c, t] : d.coupling) {
        CHECK(c >= 0);
        CHECK(t >= 0);
        CHECK(c < 16);
        CHECK(t < 16);
        CHECK(c != t);
    }
}

TEST_CASE("device serialization round trip") {
    const DeviceModel d = builtin_ibmqx5();
    const DeviceModel parsed = parse_device(serialize_device(d));
    CHECK(parsed.name == d.name);
    REQUIRE(parsed.qubits.size() == d.qubits.size());
    for (std::size_t i = 0; i < d.qubits.size(); ++i) {
        CHECK(parsed.qubits[i].frequency_ghz == d.qubits[i].frequency_ghz);
        CHECK(parsed.qubits[i].coherence_time_us == d.qubits[i].coherence_time_us);
        CHECK(parsed.qubits[i].relaxation_time_us == d.qubits[i].relaxation_time_us);
        CHECK(parsed.qubits[i].gate_error_e3 == d.qubits[i].gate_error_e3);
        CHECK(parsed.qubits[i].readout_error_e2 == d.qubits[i].readout_error_e2);
        CHECK(parsed.qubits[i].multiqubit_gate_errors == d.qubits[i].multiqubit_gate_errors);
    }
    CHECK(parsed.coupling == d.coupling);
}

TEST_CASE("edge legality categories over all ordered pairs") {
    const DeviceModel d = builtin_ibmqx5();
    int legal = 0, reversible = 0, illegal = 0;
    for (int c = 0; c < 16; ++c) {
        for (int t = 0; t < 16; ++t) {
            if (c == t) continue;
            switch (edge_legality(d, c, t)) {
                case CnotLegality::Legal: ++legal; break;
                case CnotLegality::Reversible: ++reversible; break;
                case CnotLegality::Illegal: ++illegal; break;
            }
        }
    }
    CHECK(legal == 22);
    CHECK(reversible == 22);  // each directed edge is someone's reverse
    CHECK(legal + reversible + illegal == 16 * 15);
}

TEST_CASE("check_legality") {
    const DeviceModel d = builtin_ibmqx5();
    const ComplementarySpec bell{1, {"00"}, +1};
    const ProtocolCircuit c = build_circuit(bell);

    // layout chosen so the first CNOT (0 -> appended 2) rides edge Q2->Q3
    std::map<int, int> layout{{0, 2}, {1, 15}, {2, 3}, {3, 14}, {4, 13}};
    const LegalityReport report = check_legality(c, d, layout);
    REQUIRE(report.entries.size() == 7);
    CHECK(report.entries[0].physical_control == 2);
    CHECK(report.entries[0].physical_target == 3);
    CHECK(report.entries[0].status == CnotLegality::Legal);

    // Q0 -> Q1 only exists in reverse
    std::map<int, int> rev{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}};
    const LegalityReport r2 = check_legality(c, d, rev);
    CHECK(r2.entries[1].physical_control == 1);
    CHECK(r2.entries[1].physical_target == 2);
    CHECK(r2.entries[1].status == CnotLegality::Legal);
    CHECK(r2.entries[0].status == CnotLegality::Illegal);  // no edge between Q0 and Q2
    CHECK_FALSE(r2.all_legal());

    // first extension CNOT 0 -> 2 rides Q0 -> Q1, the reverse of Q1 -> Q0
    std::map<int, int> flipped{{0, 0}, {1, 6}, {2, 1}, {3, 2}, {4, 3}};
    const LegalityReport r3 = check_legality(c, d, flipped);
    CHECK(r3.entries[0].status == CnotLegality::Reversible);

    std::map<int, int> collide{{0, 2}, {1, 2}, {2, 3}, {3, 14}, {4, 13}};
    CHECK_THROWS_AS(check_legality(c, d, collide), std::invalid_argument);
    std::map<int, int> oob{{0, 2}, {1, 99}, {2, 3}, {3, 14}, {4, 13}};
    CHECK_THROWS_AS(check_legality(c, d, oob), std::invalid_argument);
}

TEST_CASE("emit_qasm structure and determinism") {
    const ComplementarySpec bell{1, {"00"}, +1};
    const ProtocolCircuit c = build_circuit(bell, parse_error_string("X:pi", 0));
    const QasmProgram p1 = emit_qasm(c);
    const QasmProgram p2 = emit_qasm(c);
    CHECK(p1.text == p2.text);
    CHECK(p1.num_qubits == 5);
    CHECK(p1.creg_size == 2);
    CHECK(p1.text.find("h q[0];") != std::string::npos);
    CHECK(p1.text.find("cx q[0],q[1];") != std::string::npos);
    CHECK(p1.text.find("measure q[3] -> c[0];") != std::string::npos);
    CHECK(p1.text.find("measure q[4] -> c[1];") != std::string::npos);
    lint_qasm(p1);
}

TEST_CASE("emit_qasm error gate encodings") {
    const ComplementarySpec bell{1, {"00"}, +1};
    const auto text_for = [&](const std::string& err) {
        return emit_qasm(build_circuit(bell, parse_error_string(err, 0))).text;
    };
    CHECK(text_for("Z:pi/2").find("u1(pi/2) q[0];") != std::string::npos);
    CHECK(text_for("Y:pi").find("u3(pi,0,0) q[0];") != std::string::npos);
    CHECK(text_for("X:pi").find("u3(pi,pi/2,-pi/2) q[0];") != std::string::npos);
    CHECK(text_for("X").find("x q[0];") != std::string::npos);
    CHECK(text_for("H").find("h q[0];") != std::string::npos);
    CHECK(text_for("U1:pi").find("u1(pi) q[0];") != std::string::npos);
}

TEST_CASE("emit_qasm golden files") {
    const std::string golden_dir = SYNDROMELAB_GOLDEN_DIR;
    {
        const ComplementarySpec bell{1, {"00"}, +1};
        const QasmProgram p = emit_qasm(build_circuit(bell, parse_error_string("X:pi", 0)));
        CHECK(p.text == read_file(golden_dir + "/bell_xpi.qasm"));
    }
    {
        const ComplementarySpec spec{2, {"0000", "1010", "0111"}, +1};
        const QasmProgram p = emit_qasm(build_circuit(spec, parse_error_string("Z:pi/3", 1)));
        CHECK(p.text == read_file(golden_dir + "/sixterm_zpi3.qasm"));
        lint_qasm(p);
    }
}

TEST_CASE("emit_qasm lints across n and error shapes") {
    std::mt19937_64 rng(53);
    for (int n = 1; n <= 6; ++n) {
        const ComplementarySpec ghz{n, {std::string(2 * static_cast<std::size_t>(n), '0')}, +1};
        lint_qasm(emit_qasm(build_circuit(ghz)));
        lint_qasm(emit_qasm(build_circuit(random_spec(n, rng), parse_error_string("R,H,U3:0.3:0.1:0.2", 0))));
    }
}
