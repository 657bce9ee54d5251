// Copyright 2026 The qcompare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Dense state vectors, operators and anti-linear maps for few-qubit
 * registers.
 *
 * Registers are tensor-factored; factor 0 is the most significant index in
 * the row-major computational-basis ordering.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qcompare/errors.hpp"
#include "qcompare/kernels.hpp"

namespace qcompare {

/// Norm tolerance for physical states.
inline constexpr double kNormTol = 1e-12;
/// Unitarity tolerance, max-entry norm of U^dagger U - I.
inline constexpr double kUnitaryTol = 1e-10;
/// |det| at or below this is singular.
inline constexpr double kSingularTol = 1e-9;
/// Collapsed states below this probability are reported absent.
inline constexpr double kAbsentProb = 1e-14;

using Dims = std::vector<std::size_t>;

std::size_t dims_product(std::span<const std::size_t> dims);

class Operator;

class StateVector {
  public:
    StateVector() = default;
    /// Single factor of dimension amplitudes.size().
    explicit StateVector(std::vector<cplx> amplitudes);
    StateVector(std::vector<cplx> amplitudes, Dims dims);

    static StateVector basis(std::size_t dim, std::size_t index);
    static StateVector zeros(Dims dims);

    std::span<const cplx> amplitudes() const noexcept { return amps_; }
    std::span<cplx> amplitudes() noexcept { return amps_; }
    const Dims &dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return amps_.size(); }

    const cplx &operator[](std::size_t i) const { return amps_[i]; }
    cplx &operator[](std::size_t i) { return amps_[i]; }

    double norm() const;
    /// Physical states have unit norm; anything else is an algebraic
    /// intermediate and is rejected by probability-producing operations.
    bool is_physical(double tol = kNormTol) const;
    /// Throws NormalizationError unless is_physical(tol).
    void require_physical(const char *what, double tol = kNormTol) const;
    /// Throws NormalizationError for the zero vector.
    StateVector normalized() const;
    StateVector conj() const;
    /// Same amplitudes, new factorization (product must match).
    StateVector reshaped(Dims dims) const;

    StateVector &operator+=(const StateVector &other);
    StateVector &operator-=(const StateVector &other);
    StateVector &operator*=(cplx scale);

  private:
    std::vector<cplx> amps_;
    Dims dims_;
};

StateVector operator+(StateVector a, const StateVector &b);
StateVector operator-(StateVector a, const StateVector &b);
StateVector operator*(cplx scale, StateVector a);

/// Kronecker product; dims are concatenated.
StateVector tensor(const StateVector &a, const StateVector &b);
/// <a|b>, conjugate-linear in a. Requires equal total dimension.
cplx inner(const StateVector &a, const StateVector &b);
/// Euclidean distance.
double distance(const StateVector &a, const StateVector &b);

/// Square dense complex matrix, row-major.
class Operator {
  public:
    Operator() = default;
    explicit Operator(std::size_t dim);
    Operator(std::size_t dim, std::vector<cplx> entries);

    static Operator identity(std::size_t dim);
    static Operator from_rows(const std::vector<std::vector<cplx>> &rows);
    /// |ket><bra|
    static Operator outer(const StateVector &ket, const StateVector &bra);

    std::size_t dim() const noexcept { return dim_; }
    cplx operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
    cplx &operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
    std::span<const cplx> row(std::size_t r) const { return {entries_.data() + r * dim_, dim_}; }
    std::span<const cplx> entries() const noexcept { return entries_; }

    Operator adjoint() const;
    Operator conj() const;
    cplx trace() const;
    /// LU with partial pivoting.
    cplx determinant() const;
    /// max |(U^dagger U - I)_ij|
    double unitarity_error() const;
    bool is_unitary(double tol = kUnitaryTol) const { return unitarity_error() <= tol; }
    double max_abs() const;
    std::vector<cplx> column(std::size_t c) const;

    Operator &operator+=(const Operator &other);
    Operator &operator-=(const Operator &other);
    Operator &operator*=(cplx scale);

  private:
    std::size_t dim_ = 0;
    std::vector<cplx> entries_;
};

Operator operator*(const Operator &a, const Operator &b);
Operator operator+(Operator a, const Operator &b);
Operator operator-(Operator a, const Operator &b);
Operator operator*(cplx scale, Operator a);
Operator kron(const Operator &a, const Operator &b);

/// exp(a) by scaling and squaring of a truncated Taylor series.
Operator expm(const Operator &a);

/// Lift `op`, acting on the listed factors (in that order), to the full
/// register described by `dims`.
Operator embed(const Operator &op, const Dims &dims, const std::vector<std::size_t> &factors);

/// Unitary that moves factor i of the input to position perm[i] of the output.
Operator permutation(const Dims &dims, const std::vector<std::size_t> &perm);

/// Matrix-vector product. Throws DimensionError on mismatch.
StateVector apply(const Operator &op, const StateVector &s);

namespace gates {
Operator pauli_x();
Operator pauli_z();
Operator hadamard();
/// Swaps two equal-dimension factors.
Operator swap(std::size_t dim);
} // namespace gates

/// v -> A conj(v), conjugation in the computational basis.
class AntiLinearMap {
  public:
    AntiLinearMap() = default;
    explicit AntiLinearMap(Operator linear_part) : linear_(std::move(linear_part)) {}

    /// A = [[0,-1],[1,0]]: a|0> + b|1>  ->  conj(a)|1> - conj(b)|0>.
    static AntiLinearMap orthogonal_complement();
    /// Pure conjugation.
    static AntiLinearMap conjugation(std::size_t dim);

    const Operator &linear_part() const noexcept { return linear_; }
    std::size_t dim() const noexcept { return linear_.dim(); }
    bool is_nonsingular(double tol = kSingularTol) const;
    bool is_antiunitary(double tol = kUnitaryTol) const { return linear_.is_unitary(tol); }

  private:
    Operator linear_;
};

/// Returns linear_part * conj(s). The result may be unnormalized.
StateVector apply_antilinear(const AntiLinearMap &k, const StateVector &s);

struct QubitMeasurement {
    double p0 = 0.0;
    double p1 = 0.0;
    std::optional<StateVector> collapsed0;
    std::optional<StateVector> collapsed1;
};

/// Unnormalized projection onto |value> of a dimension-2 factor; the
/// factor is kept in the result.
StateVector project_qubit(const StateVector &s, std::size_t factor, std::size_t value);

/// Projective measurement of a qubit factor. `s` must be physical.
QubitMeasurement measure_qubit(const StateVector &s, std::size_t factor);

/// Reduced density matrix on `keep` (kept factors stay in register order).
Operator partial_trace(const StateVector &s, const std::vector<std::size_t> &keep);

/// <psi| rho |psi>, real part.
double fidelity(const Operator &rho, const StateVector &psi);

} // namespace qcompare
