#pragma once

// Sparse exact linear algebra: rank, kernel dimension, homology dimension
// and an incremental column-echelon solver.
//
// rank() dispatches on size: matrices whose both dimensions are at most
// kDenseLimit go through a dense OpenMP-parallel elimination (Bareiss over
// the integers in characteristic 0, plain elimination mod p); larger ones use
// sparse elimination with Markowitz pivoting. rank_serial() is the dense
// single-threaded reference the tests compare against.

#include "twistres/scalar.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace twistres {

inline constexpr std::size_t kDenseLimit = 512;

class SparseMatrix {
public:
    struct Entry {
        std::size_t row;
        std::size_t col;
        Scalar value;
    };

    SparseMatrix(std::size_t rows, std::size_t cols, Field field);

    /// Accumulates into (row, col); entries summing to zero are dropped.
    void add(std::size_t row, std::size_t col, const Scalar& value);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    /// Canonical list of nonzero entries sorted by (row, col).
    std::vector<Entry> entries() const;
    std::size_t nonzeros() const;

    SparseMatrix transpose() const;
    SparseMatrix select_rows(const std::vector<std::size_t>& keep) const;
    SparseMatrix select_cols(const std::vector<std::size_t>& keep) const;
    SparseMatrix multiply(const SparseMatrix& rhs) const;
    bool is_zero() const { return nonzeros() == 0; }

    static SparseMatrix identity(std::size_t n, Field field);
    static SparseMatrix from_dense(const std::vector<std::vector<long>>& rows, Field field);

private:
    std::size_t rows_;
    std::size_t cols_;
    Field field_;
    std::map<std::pair<std::size_t, std::size_t>, Scalar> data_;
};

std::size_t rank(const SparseMatrix& m);
std::size_t rank_serial(const SparseMatrix& m);
std::size_t rank_dense(const SparseMatrix& m);
std::size_t rank_sparse(const SparseMatrix& m);

std::size_t kernel_dim(const SparseMatrix& m);

/// Homology at the middle spot of V --d_in--> W --d_out--> U.
/// Throws CompositionNonzero when d_out * d_in != 0.
std::size_t homology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out);

using SparseVector = std::map<std::size_t, Scalar>;

/// Incrementally reduces columns to echelon form while remembering how each
/// pivot was built from the inserted columns, so that later right-hand sides
/// can be expressed as combinations of the inserted columns.
class ColumnEchelon {
public:
    explicit ColumnEchelon(Field field) : field_(field) {}

    /// Inserts column number `id`; returns false if it was dependent.
    bool insert(std::size_t id, const SparseVector& column);

    /// Coefficients c with sum_id c[id] * column[id] == target, if solvable.
    std::optional<SparseVector> solve(const SparseVector& target) const;

    std::size_t rank() const { return pivots_.size(); }

private:
    struct Pivot {
        SparseVector vec;     // leading entry at the key row, normalized to 1
        SparseVector combo;   // vec == sum combo[id] * column[id]
    };
    void reduce(SparseVector& vec, SparseVector& combo) const;

    Field field_;
    std::map<std::size_t, Pivot> pivots_;  // keyed by leading (smallest) row
};

} // namespace twistres
