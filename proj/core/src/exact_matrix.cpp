#include <holkit/error.hpp>
#include <holkit/exact_matrix.hpp>

#include <utility>

namespace holkit
{

qmatrix qmatrix::identity(std::size_t n)
{
    qmatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

bool qmatrix::is_zero() const
{
    for (const auto &x : m_data) {
        if (sgn(x) != 0) {
            return false;
        }
    }
    return true;
}

qmatrix qmatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const
{
    if (row0 + nrows > m_rows || col0 + ncols > m_cols) {
        throw dimension_error("block out of range");
    }
    qmatrix out(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i) {
        for (std::size_t j = 0; j < ncols; ++j) {
            out(i, j) = (*this)(row0 + i, col0 + j);
        }
    }
    return out;
}

qmatrix operator*(const qmatrix &a, const qmatrix &b)
{
    if (a.cols() != b.rows()) {
        throw dimension_error("matrix product shape mismatch");
    }
    qmatrix out(a.rows(), b.cols());
    rational t;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const rational &aik = a(i, k);
            if (sgn(aik) == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (sgn(b(k, j)) != 0) {
                    t = aik * b(k, j);
                    out(i, j) += t;
                }
            }
        }
    }
    return out;
}

qmatrix operator+(const qmatrix &a, const qmatrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw dimension_error("matrix sum shape mismatch");
    }
    qmatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) += b(i, j);
        }
    }
    return out;
}

qmatrix operator-(const qmatrix &a, const qmatrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw dimension_error("matrix difference shape mismatch");
    }
    qmatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) -= b(i, j);
        }
    }
    return out;
}

std::vector<std::size_t> row_reduce(qmatrix &m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    rational factor, t;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && sgn(m(sel, col)) == 0) {
            ++sel;
        }
        if (sel == m.rows()) {
            continue;
        }
        if (sel != row) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                std::swap(m(sel, j), m(row, j));
            }
        }
        const rational inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) {
            m(row, j) *= inv;
        }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || sgn(m(i, col)) == 0) {
                continue;
            }
            factor = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) {
                if (sgn(m(row, j)) != 0) {
                    t = factor * m(row, j);
                    m(i, j) -= t;
                }
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(qmatrix m)
{
    return row_reduce(m).size();
}

qmatrix solve(qmatrix a, qmatrix b)
{
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n) {
        throw dimension_error("solve expects a square system");
    }
    qmatrix aug(n, n + b.cols());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = std::move(a(i, j));
        }
        for (std::size_t j = 0; j < b.cols(); ++j) {
            aug(i, n + j) = std::move(b(i, j));
        }
    }
    const auto pivots = row_reduce(aug);
    if (pivots.size() < n || (n > 0 && pivots.back() >= n)) {
        throw numeric_error("singular system in exact solve");
    }
    return aug.block(0, n, n, b.cols());
}

qmatrix inverse(const qmatrix &a)
{
    return solve(a, qmatrix::identity(a.rows()));
}

} // namespace holkit
