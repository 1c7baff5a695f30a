/*
   Copyright 2026 The slabrte Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "slabrte/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace slabrte {

Matrix Matrix::identity(int n)
{
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

std::vector<double> Matrix::apply(std::span<const double> x) const
{
    if (static_cast<int>(x.size()) != n_) {
        throw std::invalid_argument("Matrix::apply: size mismatch");
    }
    std::vector<double> y(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) {
            s += (*this)(i, j) * x[j];
        }
        y[i] = s;
    }
    return y;
}

Matrix Matrix::transpose() const
{
    Matrix t(n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

Matrix Matrix::operator*(const Matrix& b) const
{
    if (b.n_ != n_) {
        throw std::invalid_argument("Matrix::operator*: size mismatch");
    }
    Matrix c(n_);
    for (int i = 0; i < n_; ++i) {
        for (int k = 0; k < n_; ++k) {
            const double aik = (*this)(i, k);
            for (int j = 0; j < n_; ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

double Matrix::norm() const
{
    double s = 0.0;
    for (double v : a_) {
        s += v * v;
    }
    return std::sqrt(s);
}

double Matrix::asymmetry() const
{
    double amax = 0.0;
    double dmax = 0.0;
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            amax = std::max(amax, std::abs((*this)(i, j)));
            dmax = std::max(dmax, std::abs((*this)(i, j) - (*this)(j, i)));
        }
    }
    return amax > 0.0 ? dmax / amax : 0.0;
}

LuFactorization::LuFactorization(Matrix a) : lu_(std::move(a))
{
    const int n = lu_.size();
    perm_.resize(n);
    std::iota(perm_.begin(), perm_.end(), 0);
    double amax = 0.0;
    for (double v : lu_.data()) {
        amax = std::max(amax, std::abs(v));
    }
    const double floor =
        n * std::numeric_limits<double>::epsilon() * amax;
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i) {
            if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) {
                p = i;
            }
        }
        if (!(std::abs(lu_(p, k)) > floor)) {
            throw SingularMatrixError(
                "LU: matrix is singular to working precision at column " +
                std::to_string(k));
        }
        if (p != k) {
            for (int j = 0; j < n; ++j) {
                std::swap(lu_(k, j), lu_(p, j));
            }
            std::swap(perm_[k], perm_[p]);
        }
        const double pivot = lu_(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double m = lu_(i, k) / pivot;
            lu_(i, k) = m;
            if (m == 0.0) {
                continue;
            }
            for (int j = k + 1; j < n; ++j) {
                lu_(i, j) -= m * lu_(k, j);
            }
        }
    }
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const
{
    const int n = lu_.size();
    if (static_cast<int>(b.size()) != n) {
        throw std::invalid_argument("LU::solve: size mismatch");
    }
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) {
        double s = b[perm_[i]];
        for (int j = 0; j < i; ++j) {
            s -= lu_(i, j) * x[j];
        }
        x[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int j = i + 1; j < n; ++j) {
            s -= lu_(i, j) * x[j];
        }
        x[i] = s / lu_(i, i);
    }
    return x;
}

SymmetricEigen jacobi_eigen(const Matrix& input, int max_sweeps)
{
    const int n = input.size();
    Matrix a(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(i, j) = 0.5 * (input(i, j) + input(j, i));
        }
    }
    Matrix v = Matrix::identity(n);

    const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
    const double eps = std::numeric_limits<double>::epsilon();

    auto off_norm = [&] {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                s += a(i, j) * a(i, j);
            }
        }
        return std::sqrt(2.0 * s);
    };

    bool converged = n <= 1;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        if (off_norm() <= eps * scale) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= eps * eps * scale) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                // Rotation zeroing a(p, q); t = tan(theta), smaller root.
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t =
                    std::copysign(1.0, theta) /
                    (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        converged = off_norm() <= eps * scale;
    }
    if (!converged) {
        throw ConvergenceError("jacobi_eigen: no convergence after " +
                               std::to_string(max_sweeps) + " sweeps");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i) < a(j, j); });
    SymmetricEigen out;
    out.values.resize(n);
    out.vectors = Matrix(n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (int i = 0; i < n; ++i) {
            out.vectors(i, k) = v(i, order[k]);
        }
    }
    return out;
}

} // namespace slabrte
