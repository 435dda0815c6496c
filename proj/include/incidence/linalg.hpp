#pragma once

// Fraction-free (Bareiss) elimination over exact scalars held in Eigen dense containers.
//
// The same routine serves two roles:
//   * rank / kernel over a field (Q, F_p, Q(i)); rows over Q are first scaled to integers
//     so every intermediate stays a minor of the integer matrix;
//   * determinants over an integral domain with exact division (Sylvester matrices
//     whose entries are univariate polynomials).

#include <Eigen/Core>

#include <optional>
#include <utility>
#include <vector>

#include "incidence/errors.hpp"
#include "incidence/scalar.hpp"

namespace incidence {

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
struct EchelonForm {
    Matrix<S> reduced;                 // upper echelon form, rows below rank are zero
    std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
    int swap_sign = 1;

    Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

namespace detail {

template <class S>
void check_single_field(const Matrix<S>& m)
{
    if constexpr (std::is_same_v<S, ModP>) {
        std::optional<std::uint64_t> p;
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                auto q = FieldTraits<ModP>::modulus(m(i, j));
                if (!q) continue;
                if (p && *p != *q)
                    throw FieldMismatch("matrix mixes F_" + std::to_string(*p) + " and F_" + std::to_string(*q));
                p = q;
            }
    }
}

// Clearing denominators row by row keeps Bareiss arithmetic inside Z.
inline void clear_denominators(Matrix<Rational>& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Integer lcm = 1;
        for (Eigen::Index j = 0; j < m.cols(); ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
        if (lcm == 1) continue;
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) *= lcm;
    }
}

template <class S>
void prepare_rows(Matrix<S>&)
{
}

template <>
inline void prepare_rows<Rational>(Matrix<Rational>& m)
{
    clear_denominators(m);
}

} // namespace detail

/// Fraction-free row echelon form. Works over any integral domain whose exact_div is exact
/// on the Bareiss quotients; for fields it is plain exact elimination.
template <class S>
EchelonForm<S> bareiss_echelon(Matrix<S> m)
{
    detail::prepare_rows(m);
    EchelonForm<S> out;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    S previous(1);
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && is_zero(m(p, c))) ++p;
        if (p == rows) continue;
        if (p != r) {
            m.row(p).swap(m.row(r));
            out.swap_sign = -out.swap_sign;
        }
        for (Eigen::Index i = r + 1; i < rows; ++i) {
            for (Eigen::Index j = c + 1; j < cols; ++j)
                m(i, j) = exact_div(S(m(r, c) * m(i, j) - m(i, c) * m(r, j)), previous);
            m(i, c) = S(0);
        }
        previous = m(r, c);
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

template <class S>
Eigen::Index rank(const Matrix<S>& m)
{
    detail::check_single_field(m);
    return bareiss_echelon(m).rank();
}

/// Basis of the right kernel {v : m v = 0}; one vector per free column, with a 1 in that
/// column and zeros in the other free columns.
template <class S>
std::vector<Vector<S>> kernel(const Matrix<S>& m)
{
    detail::check_single_field(m);
    const auto echelon = bareiss_echelon(m);
    const auto& e = echelon.reduced;
    const Eigen::Index cols = m.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (auto c : echelon.pivots) is_pivot[static_cast<std::size_t>(c)] = true;

    std::vector<Vector<S>> basis;
    for (Eigen::Index free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        Vector<S> v = Vector<S>::Constant(cols, S(0));
        v(free) = S(1);
        for (auto k = echelon.rank(); k-- > 0;) {
            const auto pc = echelon.pivots[static_cast<std::size_t>(k)];
            S acc(0);
            for (Eigen::Index j = pc + 1; j < cols; ++j)
                if (!is_zero(v(j)) && !is_zero(e(k, j))) acc += S(e(k, j) * v(j));
            v(pc) = S(-acc / e(k, pc));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Determinant over an integral domain with exact division.
template <class S>
S determinant(const Matrix<S>& m)
{
    if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
    if (m.rows() == 0) return S(1);
    detail::check_single_field(m);
    const auto echelon = bareiss_echelon(m);
    if (echelon.rank() < m.rows()) return S(0);
    const auto n = m.rows() - 1;
    S det = echelon.reduced(n, n);
    if (echelon.swap_sign < 0) det = S(-det);
    return det;
}

/// Matrix-vector product for exact scalars (kept explicit to avoid expression-template
/// interplay between Eigen and GMP).
template <class S>
Vector<S> multiply(const Matrix<S>& m, const Vector<S>& v)
{
    Vector<S> out = Vector<S>::Constant(m.rows(), S(0));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!is_zero(m(i, j)) && !is_zero(v(j))) out(i) += S(m(i, j) * v(j));
    return out;
}

template <class S>
bool is_zero_vector(const Vector<S>& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!is_zero(v(i))) return false;
    return true;
}

} // namespace incidence
