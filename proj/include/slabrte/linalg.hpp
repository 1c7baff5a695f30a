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

#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace slabrte {

/// An iterative method ran out of budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Elimination met a pivot that is zero to working precision.
class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Square row-major matrix.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int n, double fill = 0.0)
        : n_(n), a_(static_cast<std::size_t>(n) * n, fill)
    {
    }
    static Matrix identity(int n);

    int size() const { return n_; }
    double& operator()(int i, int j) { return a_[index(i, j)]; }
    double operator()(int i, int j) const { return a_[index(i, j)]; }
    std::span<const double> data() const { return a_; }

    std::vector<double> apply(std::span<const double> x) const;
    Matrix transpose() const;
    Matrix operator*(const Matrix& b) const;

    /// Frobenius norm.
    double norm() const;
    /// max |A - A^T| / max |A|; 0 for the zero matrix.
    double asymmetry() const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t index(int i, int j) const
    {
        return static_cast<std::size_t>(i) * n_ + j;
    }

    int n_ = 0;
    std::vector<double> a_;
};

/// LU factorization with partial (row) pivoting.
class LuFactorization {
public:
    /// Throws SingularMatrixError if a pivot falls below n * eps * max|A|.
    explicit LuFactorization(Matrix a);

    std::vector<double> solve(std::span<const double> b) const;

private:
    Matrix lu_;
    std::vector<int> perm_;
};

struct SymmetricEigen {
    std::vector<double> values; // ascending
    Matrix vectors;             // column k pairs with values[k]
};

/// Cyclic Jacobi rotations on a symmetric matrix (only the upper triangle
/// is read after symmetrizing). Throws ConvergenceError after max_sweeps.
SymmetricEigen jacobi_eigen(const Matrix& a, int max_sweeps = 100);

} // namespace slabrte
