#pragma once

#include <vector>

#include "nilherm/scalar.hpp"

namespace nilherm {

/// Dense matrix over the exact complex rationals. Sized for the tiny
/// dimensions of this problem domain (n <= 62 coframe elements, usually <= 6).
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), m_(static_cast<std::size_t>(rows) * cols) {}

    static CMatrix identity(int n) {
        CMatrix I(n, n);
        for (int i = 0; i < n; ++i) I.at(i, i) = ExactComplex::one();
        return I;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    ExactComplex& at(int i, int j) { return m_[static_cast<std::size_t>(i) * cols_ + j]; }
    const ExactComplex& at(int i, int j) const {
        return m_[static_cast<std::size_t>(i) * cols_ + j];
    }

    CMatrix transpose() const;
    CMatrix conjugate() const;
    CMatrix adjoint() const { return transpose().conjugate(); }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
    friend bool operator==(const CMatrix& a, const CMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.m_ == b.m_;
    }

    bool is_identity() const;
    bool is_lower_triangular() const;
    bool is_hermitian() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<ExactComplex> m_;
};

using CVector = std::vector<ExactComplex>;

/// Gauss-Jordan reduced row echelon form. Pivots are the first nonzero
/// entry scanning columns left to right, which makes the result (and every
/// kernel basis derived from it) deterministic.
CMatrix rref(CMatrix a, std::vector<int>* pivot_cols = nullptr);

/// Canonical kernel basis: one vector per free column, unit at the free
/// index, ordered by ascending free index.
std::vector<CVector> kernel_basis(const CMatrix& a);

int rank(const CMatrix& a);

/// Inverse of a square matrix; false if singular.
bool invert(const CMatrix& a, CMatrix& out);

ExactComplex determinant(CMatrix a);

/// Factorization A = M^T D conj(M) of a Hermitian matrix with M unit lower
/// triangular and D real diagonal. This is the LDL^H of the index-reversed
/// matrix; it exists (with positive D) exactly when A is positive definite,
/// and matches the triangular coframe change of a Gram-Schmidt run that
/// keeps the leading flag span{alpha^1..alpha^m} fixed.
struct ReverseLdl {
    bool positive_definite = false;
    CMatrix unit_lower;           // M
    std::vector<Rational> diag;   // D
};
ReverseLdl reverse_ldl(const CMatrix& hermitian);

}  // namespace nilherm
