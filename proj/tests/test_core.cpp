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

#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcompare/core.hpp"
#include "qcompare/linalg.hpp"
#include "qcompare/random.hpp"

using namespace qcompare;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const cplx kI{0.0, 1.0};

StateVector ket(std::size_t dim, std::size_t i) { return StateVector::basis(dim, i); }

bool close(const StateVector &a, const StateVector &b, double tol = 1e-12) {
    return a.size() == b.size() && distance(a, b) <= tol;
}

// Independent qubit Haar sampler: cos(theta) uniform on [-1, 1], phase uniform.
StateVector bloch_sample(std::mt19937_64 &gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double cos_theta = 2.0 * u(gen) - 1.0;
    const double phase = 2.0 * std::numbers::pi * u(gen);
    const double c = std::sqrt((1.0 + cos_theta) / 2.0);
    const double s = std::sqrt((1.0 - cos_theta) / 2.0);
    return StateVector({c, s * std::exp(kI * phase)});
}

// Kolmogorov-Smirnov distance of a sample from Uniform(0, 1).
double ks_uniform(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        d = std::max({d, std::abs((i + 1) / n - xs[i]), std::abs(xs[i] - i / n)});
    }
    return d;
}

Eigen::MatrixXcd to_eigen(const Operator &op) {
    Eigen::MatrixXcd m(op.dim(), op.dim());
    for (std::size_t r = 0; r < op.dim(); ++r) {
        for (std::size_t c = 0; c < op.dim(); ++c) {
            m(r, c) = op(r, c);
        }
    }
    return m;
}

} // namespace

TEST_CASE("tensor") {
    const StateVector t = tensor(ket(2, 0), ket(2, 1));
    CHECK(close(t, StateVector({0.0, 1.0, 0.0, 0.0})));
    CHECK(t.dims() == Dims{2, 2});

    const StateVector plus({kInvSqrt2, kInvSqrt2});
    CHECK(close(tensor(plus, ket(2, 0)), StateVector({kInvSqrt2, 0.0, kInvSqrt2, 0.0})));

    const StateVector y({kInvSqrt2, kI * kInvSqrt2});
    CHECK(close(tensor(y, ket(2, 0)), StateVector({kInvSqrt2, 0.0, kI * kInvSqrt2, 0.0})));

    Rng rng(3);
    const StateVector a = 2.0 * haar_state(3, rng);
    const StateVector b = 0.5 * haar_state(2, rng);
    CHECK(tensor(a, b).norm() == doctest::Approx(a.norm() * b.norm()).epsilon(1e-14));
}

TEST_CASE("inner") {
    CHECK(std::abs(inner(ket(2, 0), ket(2, 0)) - 1.0) < 1e-15);
    CHECK(std::abs(inner(ket(2, 0), ket(2, 1))) < 1e-15);
    const StateVector y({kInvSqrt2, kI * kInvSqrt2});
    CHECK(std::abs(inner(y, ket(2, 1)) - (-kI * kInvSqrt2)) < 1e-15);
    CHECK_THROWS_AS(inner(ket(2, 0), ket(3, 0)), DimensionError);
}

TEST_CASE("apply") {
    Rng rng(5);
    const StateVector s = haar_state(2, rng);
    CHECK(close(apply(Operator::identity(2), s), s));
    CHECK(close(apply(gates::pauli_x(), ket(2, 0)), ket(2, 1)));
    CHECK(close(apply(gates::hadamard(), ket(2, 0)), StateVector({kInvSqrt2, kInvSqrt2})));
    CHECK_THROWS_AS(apply(Operator::identity(3), s), DimensionError);

    const Operator u = haar_unitary(8, rng);
    const StateVector v = haar_state(8, rng);
    CHECK(std::abs(apply(u, v).norm() - 1.0) < 1e-12);
}

TEST_CASE("apply_antilinear") {
    const AntiLinearMap orth = AntiLinearMap::orthogonal_complement();
    CHECK(close(apply_antilinear(orth, ket(2, 0)), ket(2, 1)));

    // a|0> + b|1>  ->  conj(a)|1> - conj(b)|0>
    const cplx a(0.6, 0.3), b(-0.2, 0.7);
    const StateVector s({a, b});
    CHECK(close(apply_antilinear(orth, s), StateVector({-std::conj(b), std::conj(a)})));

    const StateVector y({kInvSqrt2, kI * kInvSqrt2});
    const StateVector ky = apply_antilinear(orth, y);
    CHECK(close(ky, StateVector({kI * kInvSqrt2, kInvSqrt2})));
    CHECK(std::abs(inner(y, ky)) < 1e-15);

    const AntiLinearMap conj = AntiLinearMap::conjugation(2);
    CHECK(close(apply_antilinear(conj, StateVector({kI, 0.0})), StateVector({-kI, 0.0})));

    CHECK(orth.is_nonsingular());
    CHECK_FALSE(AntiLinearMap(Operator::from_rows({{1.0, 0.0}, {0.0, 0.0}})).is_nonsingular());
    CHECK_THROWS_AS(apply_antilinear(orth, ket(3, 0)), DimensionError);
}

TEST_CASE("anti-linearity law and conjugation involution") {
    Rng rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        Operator a(2);
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                a(r, c) = rng.complex_normal();
            }
        }
        const AntiLinearMap k(a);
        const cplx alpha = rng.complex_normal(), beta = rng.complex_normal();
        const StateVector x = haar_state(2, rng), y = haar_state(2, rng);
        const StateVector lhs = apply_antilinear(k, alpha * x + beta * y);
        const StateVector rhs =
            std::conj(alpha) * apply_antilinear(k, x) + std::conj(beta) * apply_antilinear(k, y);
        REQUIRE(distance(lhs, rhs) <= 1e-12);

        const AntiLinearMap c = AntiLinearMap::conjugation(2);
        REQUIRE(close(apply_antilinear(c, apply_antilinear(c, x)), x, 0.0));
    }
}

TEST_CASE("tensor and inner are compatible") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const StateVector a = haar_state(2, rng), b = haar_state(3, rng);
        const StateVector c = haar_state(2, rng), d = haar_state(3, rng);
        REQUIRE(std::abs(inner(tensor(a, b), tensor(c, d)) - inner(a, c) * inner(b, d)) <= 1e-12);
    }
}

TEST_CASE("measure_qubit") {
    Rng rng(17);
    const StateVector psi = haar_state(2, rng);
    auto m = measure_qubit(tensor(ket(2, 0), psi), 0);
    CHECK(m.p0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.collapsed0.has_value());
    CHECK_FALSE(m.collapsed1.has_value());

    m = measure_qubit(tensor(StateVector({kInvSqrt2, kInvSqrt2}), ket(2, 0)), 0);
    CHECK(m.p0 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(close(*m.collapsed1, tensor(ket(2, 1), ket(2, 0))));

    CHECK_THROWS_AS(measure_qubit(psi, 1), DimensionError);
    CHECK_THROWS_AS(measure_qubit(tensor(ket(3, 0), psi), 0), DimensionError);
    CHECK_THROWS_AS(measure_qubit(2.0 * psi, 0), NormalizationError);
}

TEST_CASE("measure_qubit probabilities match an index-sum recomputation") {
    Rng rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        const StateVector s = haar_state(12, rng).reshaped({2, 3, 2});
        for (std::size_t factor : {0u, 2u}) {
            const auto m = measure_qubit(s, factor);
            const std::size_t stride = factor == 0 ? 6 : 1;
            double p1 = 0.0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                if ((i / stride) % 2 == 1) {
                    p1 += std::norm(s[i]);
                }
            }
            REQUIRE(std::abs(m.p1 - p1) <= 1e-12);
            REQUIRE(std::abs(m.p0 + m.p1 - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("haar_state is normalized and deterministic per seed") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        REQUIRE(std::abs(haar_state(2, s).norm() - 1.0) < 1e-14);
    }
    CHECK(close(haar_state(4, 42), haar_state(4, 42), 0.0));
    CHECK_FALSE(close(haar_state(4, 42), haar_state(4, 43)));
}

TEST_CASE("haar_state overlap moment, against an independent Bloch sampler") {
    constexpr int kN = 100000;
    double mean = 0.0;
    for (int i = 0; i < kN; ++i) {
        mean += std::norm(inner(haar_state(2, derive_seed(1, 2 * i)), haar_state(2, derive_seed(1, 2 * i + 1))));
    }
    mean /= kN;

    std::mt19937_64 gen(99);
    double oracle = 0.0;
    for (int i = 0; i < kN; ++i) {
        oracle += std::norm(inner(bloch_sample(gen), bloch_sample(gen)));
    }
    oracle /= kN;

    // E|<a|b>|^2 = 1/d for Haar states.
    CHECK(std::abs(mean - 0.5) <= 0.01);
    CHECK(std::abs(oracle - 0.5) <= 0.01);
    CHECK(std::abs(mean - oracle) <= 0.01);
}

TEST_CASE("haar_state marginal |a0|^2 is uniform, also after a fixed unitary") {
    constexpr int kN = 100000;
    const Operator fixed = haar_unitary(2, 1234);
    std::vector<double> direct, rotated;
    Rng rng(21);
    for (int i = 0; i < kN; ++i) {
        const StateVector s = haar_state(2, rng);
        direct.push_back(std::norm(s[0]));
        rotated.push_back(std::norm(apply(fixed, s)[0]));
    }
    CHECK(ks_uniform(direct) < 0.01);
    CHECK(ks_uniform(rotated) < 0.01);
}

TEST_CASE("haar_unitary") {
    Rng rng(23);
    for (std::size_t dim : {1u, 2u, 3u, 8u, 16u}) {
        REQUIRE(haar_unitary(dim, rng).unitarity_error() <= 1e-10);
    }
    const StateVector out = apply(haar_unitary(2, 5), haar_state(2, 6));
    CHECK(std::abs(out.norm() - 1.0) < 1e-12);

    constexpr int kN = 100000;
    double mean = 0.0;
    for (int i = 0; i < kN; ++i) {
        mean += std::norm(haar_unitary(2, rng)(0, 0));
    }
    CHECK(std::abs(mean / kN - 0.5) <= 0.01);
}

TEST_CASE("partial_trace") {
    const Operator rho = partial_trace(tensor(ket(2, 0), ket(2, 1)), {0});
    CHECK(std::abs(rho(0, 0) - 1.0) < 1e-15);
    CHECK(rho.max_abs() == doctest::Approx(1.0));
    CHECK(std::abs(rho(1, 1)) < 1e-15);

    const StateVector bell = StateVector({kInvSqrt2, 0.0, 0.0, kInvSqrt2}, {2, 2});
    CHECK((partial_trace(bell, {0}) - 0.5 * Operator::identity(2)).max_abs() < 1e-15);

    CHECK_THROWS_AS(partial_trace(bell, {2}), DimensionError);
    CHECK_THROWS_AS(partial_trace(bell, {0, 0}), DimensionError);
    CHECK_THROWS_AS(partial_trace(2.0 * bell, {0}), NormalizationError);
}

TEST_CASE("partial_trace is Hermitian, unit trace and PSD") {
    Rng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        const StateVector s = haar_state(24, rng).reshaped({2, 3, 4});
        for (const std::vector<std::size_t> &keep :
             {std::vector<std::size_t>{0}, {1}, {2, 0}, {0, 1}, {0, 1, 2}}) {
            const Operator rho = partial_trace(s, keep);
            REQUIRE((rho - rho.adjoint()).max_abs() <= 1e-14);
            REQUIRE(std::abs(rho.trace() - 1.0) <= 1e-12);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(to_eigen(rho));
            REQUIRE(eig.eigenvalues().minCoeff() >= -1e-10);
        }
    }
}

TEST_CASE("expm") {
    const double theta = 0.7;
    const Operator u = expm(cplx(0.0, theta) * gates::pauli_x());
    const Operator expected = std::cos(theta) * Operator::identity(2) + cplx(0.0, std::sin(theta)) * gates::pauli_x();
    CHECK((u - expected).max_abs() < 1e-15);

    Rng rng(31);
    Operator h(16);
    for (std::size_t r = 0; r < 16; ++r) {
        h(r, r) = 5.0 * rng.normal();
        for (std::size_t c = r + 1; c < 16; ++c) {
            h(r, c) = 5.0 * rng.complex_normal();
            h(c, r) = std::conj(h(r, c));
        }
    }
    const Operator big = expm(cplx(0.0, 1.0) * h);
    CHECK(big.unitarity_error() < 1e-12);
    // Against Eigen's eigendecomposition route.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(to_eigen(h));
    const Eigen::VectorXcd phases = (eig.eigenvalues().cast<cplx>() * cplx(0.0, 1.0)).array().exp();
    const Eigen::MatrixXcd ref = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
    CHECK((to_eigen(big) - ref).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("determinant") {
    CHECK(std::abs(AntiLinearMap::orthogonal_complement().linear_part().determinant() - 1.0) < 1e-15);
    const Operator m = Operator::from_rows({{2.0, 1.0, 0.0}, {1.0, 3.0, 1.0}, {0.0, 1.0, 4.0}});
    CHECK(std::abs(m.determinant() - 18.0) < 1e-12);
    const Operator c = Operator::from_rows({{kI, 1.0}, {2.0, 3.0}});
    CHECK(std::abs(c.determinant() - (3.0 * kI - 2.0)) < 1e-15);
}

TEST_CASE("embed and permutation") {
    const Dims dims{2, 3, 2};
    const StateVector a = haar_state(2, 1), b = haar_state(3, 2), c = haar_state(2, 3);
    const StateVector abc = tensor(tensor(a, b), c);

    const Operator x_last = embed(gates::pauli_x(), dims, {2});
    CHECK(close(apply(x_last, abc), tensor(tensor(a, b), apply(gates::pauli_x(), c))));

    // Factor order in the embedding follows the list, not the register.
    const Operator cnot = Operator::from_rows(
        {{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}});
    const StateVector k1 = tensor(tensor(ket(2, 0), ket(3, 1)), ket(2, 1));
    const StateVector flipped = tensor(tensor(ket(2, 1), ket(3, 1)), ket(2, 1));
    CHECK(close(apply(embed(cnot, dims, {2, 0}), k1), flipped));

    const Operator perm = permutation(dims, {2, 1, 0});
    CHECK(close(apply(perm, abc), tensor(tensor(c, b), a)));
    CHECK(perm.unitarity_error() == 0.0);
    CHECK_THROWS_AS(permutation(dims, {0, 0, 1}), DimensionError);
    CHECK_THROWS_AS(embed(gates::pauli_x(), dims, {1}), DimensionError);
}

TEST_CASE("orthonormal completion") {
    Rng rng(37);
    const std::vector<StateVector> vs{haar_state(5, rng), haar_state(5, rng), haar_state(5, rng)};
    std::vector<StateVector> dependent = vs;
    dependent.push_back(vs[0] + 2.0 * vs[1]);
    const auto q = orthonormal_basis(dependent);
    CHECK(q.size() == 3);
    const auto full = complete_basis(q);
    CHECK(full.size() == 5);
    CHECK(from_columns(full).unitarity_error() < 1e-14);

    const std::vector<StateVector> outs{haar_state(5, rng)};
    const Operator u = isometry_completion({q[0]}, outs);
    CHECK(close(apply(u, q[0]), outs[0]));
    CHECK(u.unitarity_error() < 1e-13);
}

TEST_CASE("normalization flags") {
    const StateVector v({1.0, 1.0});
    CHECK_FALSE(v.is_physical());
    CHECK(v.normalized().is_physical());
    CHECK_THROWS_AS(StateVector({0.0, 0.0}).normalized(), NormalizationError);
    CHECK_THROWS_AS(StateVector({1.0, 0.0, 0.0}, {2, 2}), DimensionError);
}
