#include "packlab/matrix.hpp"

#include <utility>

namespace packlab {

RationalMatrix to_rational(const IntegerMatrix& m) {
    RationalMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
    return out;
}

IntegerMatrix to_integer(const RationalMatrix& m) {
    IntegerMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!is_integer(m(i, j)))
                throw PreconditionError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                                        m(i, j).get_str() + " is not an integer");
            out(i, j) = m(i, j).get_num();
        }
    return out;
}

RationalMatrix circulant(const std::vector<Rational>& first_row) {
    std::size_t k = first_row.size();
    RationalMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m(i, j) = first_row[(j + k - i) % k];
    return m;
}

Rational determinant(const RationalMatrix& m) {
    if (!m.square()) throw DimensionError("determinant of a non-square matrix");
    std::size_t n = m.rows();
    RationalMatrix a = m;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a(r, c) == 0) continue;
            Rational f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
        }
    }
    return det;
}

Integer determinant(const IntegerMatrix& m) {
    if (!m.square()) throw DimensionError("determinant of a non-square matrix");
    // Bareiss fraction-free elimination
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntegerMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

RationalMatrix inverse(const RationalMatrix& m) {
    if (!m.square()) throw DimensionError("inverse of a non-square matrix");
    std::size_t n = m.rows();
    RationalMatrix a = m;
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) throw PreconditionError("matrix is singular");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        Rational piv = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) continue;
            Rational f = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

Inertia inertia(const RationalMatrix& m) {
    if (!m.symmetric()) throw PreconditionError("inertia: matrix is not symmetric");
    RationalMatrix a = m;
    std::size_t n = a.rows();
    Inertia out;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        // first remaining index with a nonzero diagonal entry
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && a(i, i) != 0) {
                p = i;
                break;
            }
        if (p == n) {
            // all remaining diagonal entries vanish: use an off-diagonal entry
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i) {
                if (done[i]) continue;
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!done[j] && a(i, j) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            }
            if (pi == n) break;
            // row/col pi += row/col pj gives diagonal 2 a(pi,pj) != 0
            for (std::size_t k = 0; k < n; ++k) a(pi, k) += a(pj, k);
            for (std::size_t k = 0; k < n; ++k) a(k, pi) += a(k, pj);
            p = pi;
        }
        Rational d = a(p, p);
        if (d > 0)
            ++out.positive;
        else
            ++out.negative;
        done[p] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a(i, p) == 0) continue;
            Rational f = a(i, p) / d;
            for (std::size_t j = 0; j < n; ++j) {
                if (done[j]) continue;
                a(i, j) -= f * a(p, j);
            }
            a(i, p) = 0;
        }
        for (std::size_t j = 0; j < n; ++j)
            if (!done[j]) a(p, j) = 0;
    }
    out.zero = n - out.positive - out.negative;
    return out;
}

bool positive_semidefinite(const RationalMatrix& m) {
    std::size_t n = m.rows();
    if (n > 24) throw PreconditionError("principal-minor test limited to size 24");
    for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1UL << i)) idx.push_back(i);
        if (determinant(m.submatrix(idx)) < 0) return false;
    }
    return true;
}

namespace {
template <class T>
std::string matrix_string(const Matrix<T>& m) {
    std::string out = "(";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += ", ";
        out += "(";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += m(i, j).get_str();
        }
        out += ")";
    }
    return out + ")";
}
}  // namespace

std::string to_string(const RationalMatrix& m) { return matrix_string(m); }
std::string to_string(const IntegerMatrix& m) { return matrix_string(m); }

}  // namespace packlab
