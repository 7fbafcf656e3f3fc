#include "superkoszul/linsolve.hpp"

namespace superkoszul {

std::optional<std::vector<Rational>> solve_linear(
    std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
    const size_t rows = A.size();
    if (b.size() != rows) throw Error("solve_linear: shape mismatch");
    const size_t cols = rows ? A[0].size() : 0;
    for (const auto& r : A)
        if (r.size() != cols) throw Error("solve_linear: ragged matrix");

    std::vector<int> pivot_col(rows, -1);
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t piv = rank;
        while (piv < rows && A[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[rank]);
        std::swap(b[piv], b[rank]);
        Rational inv = A[rank][c];
        for (size_t j = c; j < cols; ++j) A[rank][j] /= inv;
        b[rank] /= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || A[r][c] == 0) continue;
            Rational m = A[r][c];
            for (size_t j = c; j < cols; ++j) A[r][j] -= m * A[rank][j];
            b[r] -= m * b[rank];
        }
        pivot_col[rank] = static_cast<int>(c);
        ++rank;
    }
    for (size_t r = rank; r < rows; ++r)
        if (b[r] != 0) return std::nullopt;

    std::vector<Rational> x(cols, 0);
    for (size_t r = 0; r < rank; ++r) x[static_cast<size_t>(pivot_col[r])] = b[r];
    return x;
}

}  // namespace superkoszul
