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
#include <numbers>
#include <string>

#include "qcompare/core.hpp"

namespace qcompare {

Operator::Operator(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

Operator::Operator(std::size_t dim, std::vector<cplx> entries) : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw DimensionError("operator of dimension " + std::to_string(dim_) + " needs " +
                             std::to_string(dim_ * dim_) + " entries");
    }
}

Operator Operator::identity(std::size_t dim) {
    Operator op(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        op(i, i) = 1.0;
    }
    return op;
}

Operator Operator::from_rows(const std::vector<std::vector<cplx>> &rows) {
    Operator op(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) {
            throw DimensionError("operator rows must form a square matrix");
        }
        std::copy(rows[r].begin(), rows[r].end(), op.entries_.begin() + r * op.dim_);
    }
    return op;
}

Operator Operator::outer(const StateVector &ket, const StateVector &bra) {
    if (ket.size() != bra.size()) {
        throw DimensionError("outer product of mismatched vectors");
    }
    Operator op(ket.size());
    for (std::size_t r = 0; r < op.dim_; ++r) {
        for (std::size_t c = 0; c < op.dim_; ++c) {
            op(r, c) = ket[r] * std::conj(bra[c]);
        }
    }
    return op;
}

Operator Operator::adjoint() const {
    Operator out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

Operator Operator::conj() const {
    Operator out = *this;
    for (cplx &e : out.entries_) {
        e = std::conj(e);
    }
    return out;
}

cplx Operator::trace() const {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        acc += (*this)(i, i);
    }
    return acc;
}

cplx Operator::determinant() const {
    Operator lu = *this;
    cplx det = 1.0;
    for (std::size_t k = 0; k < dim_; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < dim_; ++r) {
            if (std::abs(lu(r, k)) > std::abs(lu(pivot, k))) {
                pivot = r;
            }
        }
        if (lu(pivot, k) == 0.0) {
            return 0.0;
        }
        if (pivot != k) {
            for (std::size_t c = 0; c < dim_; ++c) {
                std::swap(lu(k, c), lu(pivot, c));
            }
            det = -det;
        }
        det *= lu(k, k);
        for (std::size_t r = k + 1; r < dim_; ++r) {
            const cplx factor = lu(r, k) / lu(k, k);
            for (std::size_t c = k; c < dim_; ++c) {
                lu(r, c) -= factor * lu(k, c);
            }
        }
    }
    return det;
}

double Operator::unitarity_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        const auto ci = column(i);
        for (std::size_t j = i; j < dim_; ++j) {
            const auto cj = column(j);
            const cplx g = kernels::cdot(ci, cj) - (i == j ? 1.0 : 0.0);
            worst = std::max(worst, std::abs(g));
        }
    }
    return worst;
}

double Operator::max_abs() const {
    double worst = 0.0;
    for (const cplx &e : entries_) {
        worst = std::max(worst, std::abs(e));
    }
    return worst;
}

std::vector<cplx> Operator::column(std::size_t c) const {
    std::vector<cplx> out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        out[r] = (*this)(r, c);
    }
    return out;
}

Operator &Operator::operator+=(const Operator &other) {
    if (other.dim_ != dim_) {
        throw DimensionError("operator sum with mismatched dimensions");
    }
    kernels::axpy(1.0, other.entries_, entries_);
    return *this;
}

Operator &Operator::operator-=(const Operator &other) {
    if (other.dim_ != dim_) {
        throw DimensionError("operator difference with mismatched dimensions");
    }
    kernels::axpy(-1.0, other.entries_, entries_);
    return *this;
}

Operator &Operator::operator*=(cplx scale) {
    for (cplx &e : entries_) {
        e *= scale;
    }
    return *this;
}

Operator operator*(const Operator &a, const Operator &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("operator product with mismatched dimensions");
    }
    const std::size_t n = a.dim();
    std::vector<cplx> out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        std::span<cplx> row(out.data() + i * n, n);
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik != 0.0) {
                kernels::axpy(aik, b.row(k), row);
            }
        }
    }
    return Operator(n, std::move(out));
}

Operator operator+(Operator a, const Operator &b) { return a += b; }
Operator operator-(Operator a, const Operator &b) { return a -= b; }
Operator operator*(cplx scale, Operator a) { return a *= scale; }

Operator kron(const Operator &a, const Operator &b) {
    const std::size_t na = a.dim(), nb = b.dim();
    Operator out(na * nb);
    for (std::size_t ra = 0; ra < na; ++ra) {
        for (std::size_t ca = 0; ca < na; ++ca) {
            const cplx x = a(ra, ca);
            for (std::size_t rb = 0; rb < nb; ++rb) {
                for (std::size_t cb = 0; cb < nb; ++cb) {
                    out(ra * nb + rb, ca * nb + cb) = x * b(rb, cb);
                }
            }
        }
    }
    return out;
}

Operator expm(const Operator &a) {
    const std::size_t n = a.dim();
    double norm1 = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        double col = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            col += std::abs(a(r, c));
        }
        norm1 = std::max(norm1, col);
    }
    // Scale so that ||a / 2^s||_1 <= 1/2; degree 16 then leaves a truncation
    // error below 1e-19.
    int squarings = 0;
    if (norm1 > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    }
    const Operator scaled = std::ldexp(1.0, -squarings) * a;

    constexpr int kDegree = 16;
    Operator result = Operator::identity(n);
    Operator term = Operator::identity(n);
    for (int k = 1; k <= kDegree; ++k) {
        term = (1.0 / k) * (term * scaled);
        result += term;
    }
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return result;
}

namespace {

std::vector<std::size_t> digits_of(std::size_t index, const Dims &dims) {
    std::vector<std::size_t> digits(dims.size());
    for (std::size_t j = dims.size(); j-- > 0;) {
        digits[j] = index % dims[j];
        index /= dims[j];
    }
    return digits;
}

std::size_t index_of(const std::vector<std::size_t> &digits, const Dims &dims) {
    std::size_t index = 0;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        index = index * dims[j] + digits[j];
    }
    return index;
}

} // namespace

Operator embed(const Operator &op, const Dims &dims, const std::vector<std::size_t> &factors) {
    Dims sub_dims;
    std::vector<bool> acted(dims.size(), false);
    for (std::size_t f : factors) {
        if (f >= dims.size() || acted[f]) {
            throw DimensionError("invalid factor list for embedding");
        }
        acted[f] = true;
        sub_dims.push_back(dims[f]);
    }
    if (dims_product(sub_dims) != op.dim()) {
        throw DimensionError("operator dimension does not match the selected factors");
    }
    const std::size_t n = dims_product(dims);
    Operator out(n);
    std::vector<std::size_t> sub(factors.size());
    for (std::size_t col = 0; col < n; ++col) {
        const auto in_digits = digits_of(col, dims);
        for (std::size_t k = 0; k < factors.size(); ++k) {
            sub[k] = in_digits[factors[k]];
        }
        const std::size_t sub_col = index_of(sub, sub_dims);
        auto out_digits = in_digits;
        for (std::size_t sub_row = 0; sub_row < op.dim(); ++sub_row) {
            const cplx v = op(sub_row, sub_col);
            if (v == 0.0) {
                continue;
            }
            const auto row_digits = digits_of(sub_row, sub_dims);
            for (std::size_t k = 0; k < factors.size(); ++k) {
                out_digits[factors[k]] = row_digits[k];
            }
            out(index_of(out_digits, dims), col) = v;
        }
    }
    return out;
}

Operator permutation(const Dims &dims, const std::vector<std::size_t> &perm) {
    if (perm.size() != dims.size()) {
        throw DimensionError("permutation length does not match the register");
    }
    Dims out_dims(dims.size());
    std::vector<bool> seen(dims.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] >= dims.size() || seen[perm[i]]) {
            throw DimensionError("not a permutation");
        }
        seen[perm[i]] = true;
        out_dims[perm[i]] = dims[i];
    }
    const std::size_t n = dims_product(dims);
    Operator out(n);
    std::vector<std::size_t> out_digits(dims.size());
    for (std::size_t col = 0; col < n; ++col) {
        const auto in_digits = digits_of(col, dims);
        for (std::size_t i = 0; i < dims.size(); ++i) {
            out_digits[perm[i]] = in_digits[i];
        }
        out(index_of(out_digits, out_dims), col) = 1.0;
    }
    return out;
}

StateVector apply(const Operator &op, const StateVector &s) {
    if (op.dim() != s.size()) {
        throw DimensionError("operator of dimension " + std::to_string(op.dim()) + " applied to " +
                             std::to_string(s.size()) + "-dimensional vector");
    }
    std::vector<cplx> out(s.size());
    for (std::size_t r = 0; r < out.size(); ++r) {
        out[r] = kernels::udot(op.row(r), s.amplitudes());
    }
    return StateVector(std::move(out), s.dims());
}

namespace gates {

Operator pauli_x() { return Operator::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }

Operator pauli_z() { return Operator::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

Operator hadamard() {
    const double h = (1.0 / std::numbers::sqrt2);
    return Operator::from_rows({{h, h}, {h, -h}});
}

Operator swap(std::size_t dim) { return permutation({dim, dim}, {1, 0}); }

} // namespace gates

} // namespace qcompare
