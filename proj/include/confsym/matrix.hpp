// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#ifndef CONFSYM_MATRIX_HPP
#define CONFSYM_MATRIX_HPP

#include <optional>
#include <utility>
#include <vector>

#include "confsym/rational.hpp"

namespace confsym {

/// Dense matrix of exact rationals.
class Matrix {
public:
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * static_cast<size_t>(cols)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int i, int j) { return a_[static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j)]; }
    const Rational& at(int i, int j) const { return a_[static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j)]; }

    std::vector<Rational> apply(const std::vector<Rational>& x) const;

private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

/// Row-sparse linear system over the rationals. Rows hold (column, value)
/// pairs sorted by column; columns index the unknowns.
struct SparseSystem {
    int cols = 0;
    std::vector<std::vector<std::pair<int, Rational>>> rows;

    void add_row(std::vector<std::pair<int, Rational>> row) { rows.push_back(std::move(row)); }
};

enum class PivotOrder { Forward, Reverse };

/// Exact kernel basis by fraction-free integer elimination.
///
/// Pivot rule: leftmost column holding a nonzero, then the smallest row
/// index; rows are scaled to integers up front and stripped to primitive
/// content after each combination, so no rational arithmetic happens during
/// elimination. Basis vectors come out one per free column (ascending),
/// normalized to a primitive integer vector whose first nonzero entry is
/// positive. Deterministic throughout.
std::vector<std::vector<Rational>> exact_nullspace(const Matrix& m, PivotOrder order = PivotOrder::Forward);
std::vector<std::vector<Rational>> exact_nullspace(const SparseSystem& s, PivotOrder order = PivotOrder::Forward);

long exact_rank(const SparseSystem& s, PivotOrder order = PivotOrder::Forward);

/// One exact solution of A x = rhs (free unknowns pinned to zero), or
/// nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> exact_solve(const SparseSystem& a, const std::vector<Rational>& rhs);

/// Kernel dimension of the system reduced mod the prime 2^61 - 1. This is an
/// upper bound for the rational kernel dimension, so a result of zero proves
/// the exact kernel is trivial without running the exact elimination.
long nullity_mod_p(const SparseSystem& s);

}  // namespace confsym

#endif
