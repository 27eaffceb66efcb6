#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace syndromelab {

using Complex = std::complex<double>;

inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kNormTol = 1e-10;
inline constexpr int kMaxQubits = 26;

/// 2x2 single-qubit gate matrix, row-major.
struct Gate1Q {
    Complex u00, u01, u10, u11;

    /// max-norm distance of U†U from the identity.
    double unitarity_defect() const {
        // rows of U† are conjugated columns of U
        Complex a = std::conj(u00) * u00 + std::conj(u10) * u10;
        Complex b = std::conj(u00) * u01 + std::conj(u10) * u11;
        Complex c = std::conj(u01) * u00 + std::conj(u11) * u10;
        Complex d = std::conj(u01) * u01 + std::conj(u11) * u11;
        return std::max({std::abs(a - 1.0), std::abs(b), std::abs(c), std::abs(d - 1.0)});
    }

    bool is_unitary(double tol = kUnitaryTol) const { return unitarity_defect() <= tol; }
};

inline Gate1Q operator*(const Gate1Q& a, const Gate1Q& b) {
    return {a.u00 * b.u00 + a.u01 * b.u10, a.u00 * b.u01 + a.u01 * b.u11,
            a.u10 * b.u00 + a.u11 * b.u10, a.u10 * b.u01 + a.u11 * b.u11};
}

namespace gates {
inline Gate1Q identity() { return {1, 0, 0, 1}; }
inline Gate1Q pauli_x() { return {0, 1, 1, 0}; }
inline Gate1Q pauli_y() { return {0, Complex(0, -1), Complex(0, 1), 0}; }
inline Gate1Q pauli_z() { return {1, 0, 0, -1}; }
inline Gate1Q hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s, s, -s};
}
}  // namespace gates

/// Deterministic uniform double in [0,1) from the top 53 bits of a 64-bit
/// draw. Kept separate from std::uniform_real_distribution so that sampled
/// counts are bit-identical across standard library implementations.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Dense statevector over m qubits. Qubit 0 is the leftmost character of a
/// ket string and the most significant bit of the amplitude index.
class StateVector {
  public:
    explicit StateVector(int num_qubits) : num_qubits_(num_qubits) {
        check_qubit_count(num_qubits);
        amps_.assign(std::size_t{1} << num_qubits, Complex(0));
        amps_[0] = Complex(1);
    }

    static StateVector from_amplitudes(int num_qubits, std::vector<Complex> amps) {
        check_qubit_count(num_qubits);
        if (amps.size() != (std::size_t{1} << num_qubits)) {
            throw std::invalid_argument("from_amplitudes: expected 2^" +
                                        std::to_string(num_qubits) + " amplitudes, got " +
                                        std::to_string(amps.size()));
        }
        double norm_sq = 0;
        for (const Complex& a : amps) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                throw std::invalid_argument("from_amplitudes: non-finite amplitude");
            }
            norm_sq += std::norm(a);
        }
        if (norm_sq <= 0) {
            throw std::invalid_argument("from_amplitudes: zero vector cannot be normalized");
        }
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (Complex& a : amps) a *= inv;
        StateVector s(num_qubits);
        s.amps_ = std::move(amps);
        return s;
    }

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<Complex>& amplitudes() const { return amps_; }

    Complex amplitude(std::size_t index) const { return amps_.at(index); }

    double norm() const {
        double norm_sq = 0;
        for (const Complex& a : amps_) norm_sq += std::norm(a);
        return std::sqrt(norm_sq);
    }

    /// Bit value of qubit q in basis index b (qubit 0 = MSB).
    int basis_bit(std::size_t index, int q) const {
        return static_cast<int>((index >> (num_qubits_ - 1 - q)) & 1u);
    }

    void apply_1q(const Gate1Q& g, int q) {
        check_qubit(q);
        if (!g.is_unitary()) {
            throw std::invalid_argument("apply_1q: gate is not unitary (defect " +
                                        std::to_string(g.unitarity_defect()) + ")");
        }
        const std::size_t stride = std::size_t{1} << (num_qubits_ - 1 - q);
        for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
            for (std::size_t off = 0; off < stride; ++off) {
                const std::size_t i0 = base + off;
                const std::size_t i1 = i0 + stride;
                const Complex a0 = amps_[i0];
                const Complex a1 = amps_[i1];
                amps_[i0] = g.u00 * a0 + g.u01 * a1;
                amps_[i1] = g.u10 * a0 + g.u11 * a1;
            }
        }
    }

    void apply_cnot(int control, int target) {
        check_qubit(control);
        check_qubit(target);
        if (control == target) {
            throw std::invalid_argument("apply_cnot: control and target coincide");
        }
        const std::size_t cmask = std::size_t{1} << (num_qubits_ - 1 - control);
        const std::size_t tmask = std::size_t{1} << (num_qubits_ - 1 - target);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & cmask) && !(i & tmask)) {
                std::swap(amps_[i], amps_[i | tmask]);
            }
        }
    }

    /// Probability table over the 2^k outcomes of the listed qubits; outcome
    /// bit j (MSB-first) is the value of qubits[j].
    std::vector<double> marginal_distribution(std::span<const int> qubits) const {
        if (qubits.size() > 16) {
            throw std::invalid_argument("marginal_distribution: more than 16 qubits requested");
        }
        for (std::size_t i = 0; i < qubits.size(); ++i) {
            check_qubit(qubits[i]);
            for (std::size_t j = i + 1; j < qubits.size(); ++j) {
                if (qubits[i] == qubits[j]) {
                    throw std::invalid_argument("marginal_distribution: duplicate qubit index");
                }
            }
        }
        const std::size_t k = qubits.size();
        std::vector<double> probs(std::size_t{1} << k, 0.0);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            const double p = std::norm(amps_[i]);
            if (p == 0.0) continue;
            std::size_t outcome = 0;
            for (std::size_t j = 0; j < k; ++j) {
                outcome |= static_cast<std::size_t>(basis_bit(i, qubits[j])) << (k - 1 - j);
            }
            probs[outcome] += p;
        }
        return probs;
    }

    /// Shot counts over the listed qubits, indexed like marginal_distribution.
    /// Inverse-CDF sampling with a seeded mt19937_64; same seed, same counts.
    std::vector<std::uint64_t> sample_counts(std::span<const int> qubits, std::uint64_t shots,
                                             std::uint64_t seed) const {
        if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");
        const std::vector<double> probs = marginal_distribution(qubits);
        std::vector<double> cdf(probs.size());
        double acc = 0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            cdf[i] = acc;
        }
        cdf.back() = 1.0;
        std::mt19937_64 rng(seed);
        std::vector<std::uint64_t> counts(probs.size(), 0);
        for (std::uint64_t s = 0; s < shots; ++s) {
            const double u = uniform_unit(rng);
            const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            counts[static_cast<std::size_t>(it - cdf.begin())] += 1;
        }
        return counts;
    }

    /// Tr(rho_q^2) of the one-qubit reduced density matrix.
    double single_qubit_purity(int q) const {
        check_qubit(q);
        const std::size_t mask = std::size_t{1} << (num_qubits_ - 1 - q);
        double r00 = 0, r11 = 0;
        Complex r01(0);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if (i & mask) {
                r11 += std::norm(amps_[i]);
            } else {
                r00 += std::norm(amps_[i]);
                r01 += amps_[i] * std::conj(amps_[i | mask]);
            }
        }
        return r00 * r00 + r11 * r11 + 2.0 * std::norm(r01);
    }

  private:
    static void check_qubit_count(int m) {
        if (m < 1 || m > kMaxQubits) {
            throw std::invalid_argument("qubit count " + std::to_string(m) +
                                        " outside [1, " + std::to_string(kMaxQubits) + "]");
        }
    }

    void check_qubit(int q) const {
        if (q < 0 || q >= num_qubits_) {
            throw std::out_of_range("qubit index " + std::to_string(q) + " outside [0, " +
                                    std::to_string(num_qubits_) + ")");
        }
    }

    int num_qubits_;
    std::vector<Complex> amps_;
};

/// <a|b> with conjugation on a.
inline Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("inner_product: qubit counts differ");
    }
    Complex acc(0);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    }
    return acc;
}

}  // namespace syndromelab
