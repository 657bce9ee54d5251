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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qcompare/core.hpp"

namespace qcompare {

std::size_t dims_product(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

StateVector::StateVector(std::vector<cplx> amplitudes)
    : amps_(std::move(amplitudes)), dims_{amps_.size()} {}

StateVector::StateVector(std::vector<cplx> amplitudes, Dims dims)
    : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
    for (std::size_t d : dims_) {
        if (d == 0) {
            throw DimensionError("state factor dimensions must be positive");
        }
    }
    if (dims_product(dims_) != amps_.size()) {
        throw DimensionError("state dims product " + std::to_string(dims_product(dims_)) +
                             " does not match " + std::to_string(amps_.size()) + " amplitudes");
    }
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw DimensionError("basis index out of range");
    }
    std::vector<cplx> amps(dim);
    amps[index] = 1.0;
    return StateVector(std::move(amps));
}

StateVector StateVector::zeros(Dims dims) {
    std::vector<cplx> amps(dims_product(dims));
    return StateVector(std::move(amps), std::move(dims));
}

double StateVector::norm() const { return std::sqrt(kernels::norm2(amps_)); }

bool StateVector::is_physical(double tol) const {
    return !amps_.empty() && std::abs(norm() - 1.0) <= tol;
}

void StateVector::require_physical(const char *what, double tol) const {
    if (!is_physical(tol)) {
        throw NormalizationError(std::string(what) + ": state is not normalized (norm " +
                                 std::to_string(norm()) + ")");
    }
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) {
        throw NormalizationError("cannot normalize the zero vector");
    }
    StateVector out = *this;
    out *= 1.0 / n;
    return out;
}

StateVector StateVector::conj() const {
    StateVector out = *this;
    for (cplx &a : out.amps_) {
        a = std::conj(a);
    }
    return out;
}

StateVector StateVector::reshaped(Dims dims) const { return StateVector(amps_, std::move(dims)); }

StateVector &StateVector::operator+=(const StateVector &other) {
    if (other.size() != size()) {
        throw DimensionError("vector sum with mismatched dimensions");
    }
    kernels::axpy(1.0, other.amps_, amps_);
    return *this;
}

StateVector &StateVector::operator-=(const StateVector &other) {
    if (other.size() != size()) {
        throw DimensionError("vector difference with mismatched dimensions");
    }
    kernels::axpy(-1.0, other.amps_, amps_);
    return *this;
}

StateVector &StateVector::operator*=(cplx scale) {
    for (cplx &a : amps_) {
        a *= scale;
    }
    return *this;
}

StateVector operator+(StateVector a, const StateVector &b) { return a += b; }
StateVector operator-(StateVector a, const StateVector &b) { return a -= b; }
StateVector operator*(cplx scale, StateVector a) { return a *= scale; }

StateVector tensor(const StateVector &a, const StateVector &b) {
    std::vector<cplx> amps(a.size() * b.size());
    auto out = amps.begin();
    for (const cplx &x : a.amplitudes()) {
        out = std::transform(b.amplitudes().begin(), b.amplitudes().end(), out,
                             [x](const cplx &y) { return x * y; });
    }
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return StateVector(std::move(amps), std::move(dims));
}

cplx inner(const StateVector &a, const StateVector &b) {
    if (a.size() != b.size()) {
        throw DimensionError("inner product of " + std::to_string(a.size()) + "- and " +
                             std::to_string(b.size()) + "-dimensional vectors");
    }
    return kernels::cdot(a.amplitudes(), b.amplitudes());
}

double distance(const StateVector &a, const StateVector &b) { return (a - b).norm(); }

AntiLinearMap AntiLinearMap::orthogonal_complement() {
    return AntiLinearMap(Operator::from_rows({{0.0, -1.0}, {1.0, 0.0}}));
}

AntiLinearMap AntiLinearMap::conjugation(std::size_t dim) { return AntiLinearMap(Operator::identity(dim)); }

bool AntiLinearMap::is_nonsingular(double tol) const {
    return linear_.dim() > 0 && std::abs(linear_.determinant()) > tol;
}

StateVector apply_antilinear(const AntiLinearMap &k, const StateVector &s) {
    if (k.dim() != s.size()) {
        throw DimensionError("anti-linear map of dimension " + std::to_string(k.dim()) +
                             " applied to " + std::to_string(s.size()) + "-dimensional vector");
    }
    return apply(k.linear_part(), s.conj());
}

namespace {

void check_qubit_factor(const StateVector &s, std::size_t factor) {
    if (factor >= s.dims().size()) {
        throw DimensionError("factor index " + std::to_string(factor) + " out of range");
    }
    if (s.dims()[factor] != 2) {
        throw DimensionError("factor " + std::to_string(factor) + " is not a qubit");
    }
}

std::size_t stride_of(const Dims &dims, std::size_t factor) {
    return dims_product(std::span(dims).subspan(factor + 1));
}

} // namespace

StateVector project_qubit(const StateVector &s, std::size_t factor, std::size_t value) {
    check_qubit_factor(s, factor);
    const std::size_t stride = stride_of(s.dims(), factor);
    StateVector out = s;
    auto amps = out.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i / stride) % 2 != value) {
            amps[i] = 0.0;
        }
    }
    return out;
}

QubitMeasurement measure_qubit(const StateVector &s, std::size_t factor) {
    check_qubit_factor(s, factor);
    s.require_physical("measure_qubit");
    QubitMeasurement m;
    StateVector branch0 = project_qubit(s, factor, 0);
    StateVector branch1 = project_qubit(s, factor, 1);
    const double n0 = kernels::norm2(branch0.amplitudes());
    const double n1 = kernels::norm2(branch1.amplitudes());
    // Renormalize away the O(1e-16) drift so p0 + p1 = 1 holds tightly.
    const double total = n0 + n1;
    m.p0 = n0 / total;
    m.p1 = n1 / total;
    if (m.p0 > kAbsentProb) {
        m.collapsed0 = branch0.normalized();
    }
    if (m.p1 > kAbsentProb) {
        m.collapsed1 = branch1.normalized();
    }
    return m;
}

Operator partial_trace(const StateVector &s, const std::vector<std::size_t> &keep) {
    s.require_physical("partial_trace");
    const Dims &dims = s.dims();
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t f : keep) {
        if (f >= dims.size() || kept[f]) {
            throw DimensionError("invalid factor set for partial trace");
        }
        kept[f] = true;
    }
    Dims keep_dims, trace_dims;
    std::vector<std::size_t> keep_strides, trace_strides;
    for (std::size_t f = 0; f < dims.size(); ++f) {
        (kept[f] ? keep_dims : trace_dims).push_back(dims[f]);
        (kept[f] ? keep_strides : trace_strides).push_back(stride_of(dims, f));
    }
    const std::size_t nk = dims_product(keep_dims);
    const std::size_t nt = dims_product(trace_dims);

    // Full-register offset of each reduced index for the kept and traced parts.
    auto offsets = [](const Dims &d, const std::vector<std::size_t> &strides) {
        std::vector<std::size_t> out(dims_product(d));
        for (std::size_t idx = 0; idx < out.size(); ++idx) {
            std::size_t rem = idx, off = 0;
            for (std::size_t j = d.size(); j-- > 0;) {
                off += (rem % d[j]) * strides[j];
                rem /= d[j];
            }
            out[idx] = off;
        }
        return out;
    };
    const auto koff = offsets(keep_dims, keep_strides);
    const auto toff = offsets(trace_dims, trace_strides);

    Operator rho(nk);
    for (std::size_t r = 0; r < nk; ++r) {
        for (std::size_t c = 0; c < nk; ++c) {
            cplx acc = 0.0;
            for (std::size_t t = 0; t < nt; ++t) {
                acc += s[koff[r] + toff[t]] * std::conj(s[koff[c] + toff[t]]);
            }
            rho(r, c) = acc;
        }
    }
    return rho;
}

double fidelity(const Operator &rho, const StateVector &psi) {
    if (rho.dim() != psi.size()) {
        throw DimensionError("fidelity: dimension mismatch");
    }
    return inner(psi, apply(rho, psi)).real();
}

} // namespace qcompare
