#include "nilherm/linalg.hpp"

#include <stdexcept>

namespace nilherm {

CMatrix CMatrix::transpose() const {
    CMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

CMatrix CMatrix::conjugate() const {
    CMatrix c(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) c.at(i, j) = at(i, j).conj();
    return c;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("CMatrix: size mismatch in product");
    CMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) {
                if (b.at(k, j).is_zero()) continue;
                r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        }
    return r;
}

bool CMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (i == j && !(at(i, j) == ExactComplex::one())) return false;
            if (i != j && !at(i, j).is_zero()) return false;
        }
    return true;
}

bool CMatrix::is_lower_triangular() const {
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (!at(i, j).is_zero()) return false;
    return true;
}

bool CMatrix::is_hermitian() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            if (!(at(i, j) == at(j, i).conj())) return false;
    return true;
}

CMatrix rref(CMatrix a, std::vector<int>* pivot_cols) {
    if (pivot_cols) pivot_cols->clear();
    int row = 0;
    for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
        int piv = -1;
        for (int i = row; i < a.rows(); ++i)
            if (!a.at(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(row, j));
        ExactComplex inv = ExactComplex::one() / a.at(row, col);
        for (int j = col; j < a.cols(); ++j) a.at(row, j) = a.at(row, j) * inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == row || a.at(i, col).is_zero()) continue;
            ExactComplex f = a.at(i, col);
            for (int j = col; j < a.cols(); ++j) a.at(i, j) -= f * a.at(row, j);
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++row;
    }
    return a;
}

std::vector<CVector> kernel_basis(const CMatrix& a) {
    std::vector<int> pivots;
    CMatrix r = rref(a, &pivots);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int c : pivots) is_pivot[c] = true;

    std::vector<CVector> basis;
    for (int f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        CVector v(a.cols());
        v[f] = ExactComplex::one();
        for (std::size_t p = 0; p < pivots.size(); ++p) v[pivots[p]] = -r.at(static_cast<int>(p), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

int rank(const CMatrix& a) {
    std::vector<int> pivots;
    rref(a, &pivots);
    return static_cast<int>(pivots.size());
}

bool invert(const CMatrix& a, CMatrix& out) {
    if (a.rows() != a.cols()) return false;
    int n = a.rows();
    CMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = ExactComplex::one();
    }
    std::vector<int> pivots;
    CMatrix r = rref(aug, &pivots);
    if (static_cast<int>(pivots.size()) != n || pivots[n - 1] != n - 1) return false;
    out = CMatrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = r.at(i, n + j);
    return true;
}

ExactComplex determinant(CMatrix a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: non-square matrix");
    int n = a.rows();
    ExactComplex det = ExactComplex::one();
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!a.at(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) return ExactComplex::zero();
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
            det = -det;
        }
        det = det * a.at(col, col);
        ExactComplex inv = ExactComplex::one() / a.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (a.at(i, col).is_zero()) continue;
            ExactComplex f = a.at(i, col) * inv;
            for (int j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
        }
    }
    return det;
}

ReverseLdl reverse_ldl(const CMatrix& hermitian) {
    if (!hermitian.is_hermitian())
        throw std::invalid_argument("reverse_ldl: matrix is not Hermitian");
    int n = hermitian.rows();

    // standard LDL^H of the index-reversed matrix B_{ij} = A_{n-1-i, n-1-j}
    CMatrix B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B.at(i, j) = hermitian.at(n - 1 - i, n - 1 - j);

    CMatrix L = CMatrix::identity(n);
    std::vector<Rational> dB(n);
    ReverseLdl out;
    for (int j = 0; j < n; ++j) {
        ExactComplex djj = B.at(j, j);
        for (int m = 0; m < j; ++m)
            djj -= L.at(j, m) * L.at(j, m).conj() * ExactComplex(Rational(dB[m]));
        if (!djj.is_real()) throw std::logic_error("reverse_ldl: non-real pivot");
        dB[j] = djj.re;
        if (dB[j] <= 0) return out;  // not positive definite
        ExactComplex inv = ExactComplex::one() / djj;
        for (int i = j + 1; i < n; ++i) {
            ExactComplex lij = B.at(i, j);
            for (int m = 0; m < j; ++m)
                lij -= L.at(i, m) * L.at(j, m).conj() * ExactComplex(Rational(dB[m]));
            L.at(i, j) = lij * inv;
        }
    }

    // undo the reversal: M_{ij} = L_{n-1-j, n-1-i}
    out.positive_definite = true;
    out.unit_lower = CMatrix(n, n);
    out.diag.resize(n);
    for (int i = 0; i < n; ++i) {
        out.diag[i] = dB[n - 1 - i];
        for (int j = 0; j <= i; ++j) out.unit_lower.at(i, j) = L.at(n - 1 - j, n - 1 - i);
    }
    return out;
}

}  // namespace nilherm
