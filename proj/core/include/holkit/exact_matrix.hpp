#ifndef HOLKIT_EXACT_MATRIX_HPP
#define HOLKIT_EXACT_MATRIX_HPP

#include <cstddef>
#include <vector>

#include <holkit/scalar.hpp>

namespace holkit
{

// Dense row-major matrix over Q. Used wherever a rank or a solve must be
// exact: homology ranks, the rational Fredholm path, linear-system oracles.
class qmatrix
{
public:
    qmatrix() = default;
    qmatrix(std::size_t rows, std::size_t cols) : m_rows(rows), m_cols(cols), m_data(rows * cols) {}

    static qmatrix identity(std::size_t n);

    std::size_t rows() const noexcept
    {
        return m_rows;
    }
    std::size_t cols() const noexcept
    {
        return m_cols;
    }

    rational &operator()(std::size_t i, std::size_t j)
    {
        return m_data[i * m_cols + j];
    }
    const rational &operator()(std::size_t i, std::size_t j) const
    {
        return m_data[i * m_cols + j];
    }

    bool is_zero() const;

    qmatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;

    friend qmatrix operator*(const qmatrix &a, const qmatrix &b);
    friend qmatrix operator+(const qmatrix &a, const qmatrix &b);
    friend qmatrix operator-(const qmatrix &a, const qmatrix &b);
    friend bool operator==(const qmatrix &a, const qmatrix &b) = default;

private:
    std::size_t m_rows = 0;
    std::size_t m_cols = 0;
    std::vector<rational> m_data;
};

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(qmatrix &m);

std::size_t rank(qmatrix m);

// Unique solution of a x = b for square nonsingular a (b may have several
// columns). Throws numeric_error when a is singular.
qmatrix solve(qmatrix a, qmatrix b);

qmatrix inverse(const qmatrix &a);

} // namespace holkit

#endif
