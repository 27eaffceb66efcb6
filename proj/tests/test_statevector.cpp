#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "syndromelab/errors.hpp"
#include "syndromelab/statevector.hpp"

using namespace syndromelab;

namespace {

Gate1Q random_unitary(std::mt19937_64& rng) {
    auto angle = [&rng] { return uniform_unit(rng) * 2 * std::numbers::pi; };
    return matrix_of({PrimitiveKind::U3, {angle(), angle(), angle()}});
}

}  // namespace

TEST_CASE("zero_state") {
    StateVector s1(1);
    CHECK(s1.amplitude(0) == Complex(1));
    CHECK(s1.amplitude(1) == Complex(0));

    StateVector s2(2);
    const std::array<int, 2> both{0, 1};
    CHECK(s2.marginal_distribution(both)[0] == 1.0);

    StateVector s15(15);
    CHECK(s15.dim() == 32768);
    CHECK(s15.norm() == Catch::Approx(1.0).margin(1e-12));

    CHECK_THROWS_AS(StateVector(0), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(27), std::invalid_argument);
}

TEST_CASE("from_amplitudes normalizes") {
    auto s = StateVector::from_amplitudes(1, {Complex(1), Complex(1)});
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.amplitude(0) - Complex(r)) < 1e-15);
    CHECK(std::abs(s.amplitude(1) - Complex(r)) < 1e-15);

    auto bell = StateVector::from_amplitudes(2, {Complex(1), Complex(0), Complex(0), Complex(1)});
    CHECK(std::abs(bell.amplitude(0) - Complex(r)) < 1e-15);
    CHECK(std::abs(bell.amplitude(3) - Complex(r)) < 1e-15);

    CHECK_THROWS_AS(StateVector::from_amplitudes(2, {Complex(0), Complex(0), Complex(0), Complex(0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(StateVector::from_amplitudes(2, {Complex(1), Complex(0)}),
                    std::invalid_argument);
}

TEST_CASE("apply_1q basics") {
    StateVector s(1);
    s.apply_1q(gates::pauli_x(), 0);
    CHECK(std::abs(s.amplitude(1) - Complex(1)) < 1e-15);

    StateVector h(1);
    h.apply_1q(gates::hadamard(), 0);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(h.amplitude(0) - Complex(r)) < 1e-15);
    CHECK(std::abs(h.amplitude(1) - Complex(r)) < 1e-15);

    CHECK_THROWS_AS(h.apply_1q(gates::pauli_x(), 1), std::out_of_range);
    CHECK_THROWS_AS(h.apply_1q(Gate1Q{1, 1, 1, 1}, 0), std::invalid_argument);
}

TEST_CASE("Y rotation column matches the dense oracle") {
    // multiply the 2x2 rotation matrix by (1,0) via the oracle path
    const Gate1Q ry = matrix_of({PrimitiveKind::RY, {std::numbers::pi / 3}});
    const auto column = oracle::mat_vec(oracle::gate_matrix(ry), {Complex(1), Complex(0)});

    StateVector s(1);
    s.apply_1q(ry, 0);
    CHECK(std::abs(s.amplitude(0) - column[0]) < 1e-15);
    CHECK(std::abs(s.amplitude(1) - column[1]) < 1e-15);
    CHECK(std::abs(s.amplitude(0) - Complex(std::cos(std::numbers::pi / 6))) < 1e-15);
    CHECK(std::abs(s.amplitude(1) - Complex(std::sin(std::numbers::pi / 6))) < 1e-15);
}

TEST_CASE("apply_cnot") {
    StateVector s(2);
    s.apply_1q(gates::pauli_x(), 0);  // |10>
    s.apply_cnot(0, 1);
    CHECK(std::abs(s.amplitude(3) - Complex(1)) < 1e-15);  // |11>

    StateVector z(2);
    z.apply_cnot(0, 1);
    CHECK(std::abs(z.amplitude(0) - Complex(1)) < 1e-15);  // |00> unchanged

    // (|00> + |10>)/sqrt(2) -> Bell, checked against the projector-built matrix
    StateVector b(2);
    b.apply_1q(gates::hadamard(), 0);
    const auto expected = oracle::mat_vec(oracle::embed_cnot(0, 1, 2), b.amplitudes());
    b.apply_cnot(0, 1);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(b.amplitudes()[i] - expected[i]) < 1e-15);
    }

    CHECK_THROWS_AS(b.apply_cnot(1, 1), std::invalid_argument);
}

TEST_CASE("marginal_distribution") {
    StateVector s(2);
    const std::array<int, 2> both{0, 1};
    auto p = s.marginal_distribution(both);
    CHECK(p[0] == 1.0);

    StateVector bell(2);
    bell.apply_1q(gates::hadamard(), 0);
    bell.apply_cnot(0, 1);
    const std::array<int, 1> first{0};
    auto q = bell.marginal_distribution(first);
    CHECK(q[0] == Catch::Approx(0.5).margin(1e-12));
    CHECK(q[1] == Catch::Approx(0.5).margin(1e-12));

    const std::array<int, 2> dup{0, 0};
    CHECK_THROWS_AS(bell.marginal_distribution(dup), std::invalid_argument);
}

TEST_CASE("marginal over all qubits equals |amps|^2") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        StateVector s(4);
        for (int g = 0; g < 12; ++g) {
            s.apply_1q(random_unitary(rng), static_cast<int>(rng() % 4));
        }
        const std::array<int, 4> all{0, 1, 2, 3};
        auto p = s.marginal_distribution(all);
        for (std::size_t i = 0; i < s.dim(); ++i) {
            CHECK(p[i] == std::norm(s.amplitudes()[i]));
        }
        double sum = 0;
        for (double v : p) sum += v;
        CHECK(sum == Catch::Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("sample_counts") {
    StateVector s(2);  // deterministic |00>
    const std::array<int, 2> both{0, 1};
    auto counts = s.sample_counts(both, 8192, 7);
    CHECK(counts[0] == 8192);

    StateVector bell(2);
    bell.apply_1q(gates::hadamard(), 0);
    bell.apply_cnot(0, 1);
    const std::array<int, 1> first{0};
    auto c = bell.sample_counts(first, 8192, 42);
    CHECK(c[0] + c[1] == 8192);
    // binomial 6-sigma bound around 4096
    CHECK(std::llabs(static_cast<long long>(c[0]) - 4096) <= 300);

    auto c2 = bell.sample_counts(first, 8192, 42);
    CHECK(c == c2);
    CHECK_THROWS_AS(bell.sample_counts(first, 0, 1), std::invalid_argument);
}

TEST_CASE("inner_product") {
    StateVector bell(2);
    bell.apply_1q(gates::hadamard(), 0);
    bell.apply_cnot(0, 1);
    CHECK(std::abs(inner_product(bell, bell) - Complex(1)) < 1e-12);

    StateVector s00(2);
    StateVector s11(2);
    s11.apply_1q(gates::pauli_x(), 0);
    s11.apply_1q(gates::pauli_x(), 1);
    CHECK(std::abs(inner_product(s00, s11)) < 1e-15);

    // <Bell| sigma_y (x) sigma_y |Bell*> has magnitude 1
    auto rotated = oracle::sigma_y_all_conj(bell.amplitudes(), 2);
    Complex overlap(0);
    for (std::size_t i = 0; i < 4; ++i) overlap += std::conj(bell.amplitudes()[i]) * rotated[i];
    CHECK(std::abs(overlap) == Catch::Approx(1.0).margin(1e-12));

    CHECK_THROWS_AS(inner_product(bell, StateVector(3)), std::invalid_argument);
}

TEST_CASE("single_qubit_purity") {
    StateVector s(2);
    CHECK(s.single_qubit_purity(1) == Catch::Approx(1.0).margin(1e-15));

    StateVector bell(2);
    bell.apply_1q(gates::hadamard(), 0);
    bell.apply_cnot(0, 1);
    CHECK(bell.single_qubit_purity(0) == Catch::Approx(0.5).margin(1e-12));

    // GHZ-4 plus a parity qubit collecting all-even terms stays separable
    StateVector g(5);
    g.apply_1q(gates::hadamard(), 0);
    for (int q = 1; q < 4; ++q) g.apply_cnot(0, q);
    for (int q = 0; q < 4; ++q) g.apply_cnot(q, 4);
    CHECK(g.single_qubit_purity(4) == Catch::Approx(1.0).margin(1e-12));

    CHECK_THROWS_AS(g.single_qubit_purity(9), std::out_of_range);
}

TEST_CASE("norm preserved across long random gate sequences") {
    std::mt19937_64 rng(99);
    StateVector s(10);
    for (int g = 0; g < 10000; ++g) {
        if (rng() % 4 == 0) {
            int c = static_cast<int>(rng() % 10);
            int t = static_cast<int>(rng() % 10);
            if (c == t) t = (t + 1) % 10;
            s.apply_cnot(c, t);
        } else {
            s.apply_1q(random_unitary(rng), static_cast<int>(rng() % 10));
        }
    }
    CHECK(std::abs(s.norm() - 1.0) < 1e-10);
}

TEST_CASE("in-place kernels match the dense matrix oracle") {
    std::mt19937_64 rng(2024);
    for (int circuit = 0; circuit < 200; ++circuit) {
        const int m = 1 + static_cast<int>(rng() % 5);
        StateVector s(m);
        std::vector<Complex> ref(s.dim(), Complex(0));
        ref[0] = Complex(1);
        const int gate_count = static_cast<int>(rng() % 31);
        for (int g = 0; g < gate_count; ++g) {
            if (m >= 2 && rng() % 3 == 0) {
                int c = static_cast<int>(rng() % m);
                int t = static_cast<int>(rng() % m);
                if (c == t) t = (t + 1) % m;
                s.apply_cnot(c, t);
                ref = oracle::mat_vec(oracle::embed_cnot(c, t, m), ref);
            } else {
                const Gate1Q u = random_unitary(rng);
                const int q = static_cast<int>(rng() % m);
                s.apply_1q(u, q);
                ref = oracle::mat_vec(oracle::embed_1q(u, q, m), ref);
            }
        }
        for (std::size_t i = 0; i < s.dim(); ++i) {
            REQUIRE(std::abs(s.amplitudes()[i] - ref[i]) < 1e-12);
        }
    }
}

TEST_CASE("unitarity check tolerance") {
    Gate1Q almost = gates::identity();
    almost.u00 += 1e-6;
    CHECK_FALSE(almost.is_unitary());
    CHECK(gates::pauli_y().is_unitary());
    CHECK(gates::hadamard().is_unitary());
}
