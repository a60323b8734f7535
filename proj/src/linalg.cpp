#include "twistres/linalg.hpp"

#include "twistres/errors.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace twistres {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field) {}

void SparseMatrix::add(std::size_t row, std::size_t col, const Scalar& value) {
    if (row >= rows_ || col >= cols_) throw std::out_of_range("SparseMatrix::add index out of range");
    if (value.is_zero()) return;
    auto key = std::make_pair(row, col);
    auto it = data_.find(key);
    if (it == data_.end()) {
        data_.emplace(key, value);
    } else {
        it->second += value;
        if (it->second.is_zero()) data_.erase(it);
    }
}

std::vector<SparseMatrix::Entry> SparseMatrix::entries() const {
    std::vector<Entry> out;
    out.reserve(data_.size());
    for (const auto& [key, v] : data_) out.push_back({key.first, key.second, v});
    return out;
}

std::size_t SparseMatrix::nonzeros() const { return data_.size(); }

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols_, rows_, field_);
    for (const auto& [key, v] : data_) t.data_.emplace(std::make_pair(key.second, key.first), v);
    return t;
}

SparseMatrix SparseMatrix::select_rows(const std::vector<std::size_t>& keep) const {
    std::vector<std::ptrdiff_t> map(rows_, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) map[keep[i]] = static_cast<std::ptrdiff_t>(i);
    SparseMatrix out(keep.size(), cols_, field_);
    for (const auto& [key, v] : data_)
        if (map[key.first] >= 0) out.data_.emplace(std::make_pair(std::size_t(map[key.first]), key.second), v);
    return out;
}

SparseMatrix SparseMatrix::select_cols(const std::vector<std::size_t>& keep) const {
    std::vector<std::ptrdiff_t> map(cols_, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) map[keep[i]] = static_cast<std::ptrdiff_t>(i);
    SparseMatrix out(rows_, keep.size(), field_);
    for (const auto& [key, v] : data_)
        if (map[key.second] >= 0) out.data_.emplace(std::make_pair(key.first, std::size_t(map[key.second])), v);
    return out;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw SpecMismatch("matrix dimensions do not compose");
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> rhs_rows(rhs.rows_);
    for (const auto& [key, v] : rhs.data_) rhs_rows[key.first].emplace_back(key.second, v);
    SparseMatrix out(rows_, rhs.cols_, field_);
    for (const auto& [key, v] : data_)
        for (const auto& [c, w] : rhs_rows[key.second]) out.add(key.first, c, v * w);
    return out;
}

SparseMatrix SparseMatrix::identity(std::size_t n, Field field) {
    SparseMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m.add(i, i, field.one());
    return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<long>>& rows, Field field) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    SparseMatrix m(rows.size(), cols, field);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m.add(i, j, field.from(rows[i][j]));
    return m;
}

namespace {

// Integer rows: each row of a rational matrix scaled by the lcm of its
// denominators. Rank is unchanged.
std::vector<std::vector<mpz_class>> integer_dense(const SparseMatrix& m) {
    std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols(), 0));
    std::vector<mpz_class> lcm(m.rows(), 1);
    auto entries = m.entries();
    for (const auto& e : entries) {
        mpq_class q = e.value.rational();
        mpz_lcm(lcm[e.row].get_mpz_t(), lcm[e.row].get_mpz_t(), q.get_den().get_mpz_t());
    }
    for (const auto& e : entries) {
        mpq_class q = e.value.rational();
        a[e.row][e.col] = q.get_num() * (lcm[e.row] / q.get_den());
    }
    return a;
}

std::size_t bareiss_rank(std::vector<std::vector<mpz_class>> a, std::size_t cols, bool parallel) {
    const std::size_t rows = a.size();
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && sgn(a[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        const auto& prow = a[r];
        const std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(r + 1);
        const std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
        for (std::ptrdiff_t i = lo; i < hi; ++i) {
            auto& row = a[i];
            mpz_class factor = row[c];
            mpz_class tmp;
            for (std::size_t j = c + 1; j < cols; ++j) {
                // row[j] = (p * row[j] - factor * prow[j]) / prev, exact.
                tmp = prow[c] * row[j];
                mpz_submul(tmp.get_mpz_t(), factor.get_mpz_t(), prow[j].get_mpz_t());
                mpz_divexact(row[j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            row[c] = 0;
        }
        prev = prow[c];
        ++r;
    }
    return r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) { return Scalar(a, static_cast<std::uint32_t>(p)).inverse().residue(); }

std::size_t modular_rank(const SparseMatrix& m, bool parallel) {
    const std::int64_t p = m.field().characteristic;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(cols, 0));
    for (const auto& e : m.entries()) a[e.row][e.col] = e.value.residue();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        const std::int64_t inv = inv_mod(a[r][c], p);
        const auto& prow = a[r];
        const std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(r + 1);
        const std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static) if (parallel)
        for (std::ptrdiff_t i = lo; i < hi; ++i) {
            auto& row = a[i];
            if (row[c] == 0) continue;
            const std::int64_t f = (row[c] * inv) % p;
            for (std::size_t j = c; j < cols; ++j) {
                if (prow[j] == 0) continue;
                row[j] = ((row[j] - f * prow[j]) % p + p) % p;
            }
        }
        ++r;
    }
    return r;
}

// Sparse elimination with Markowitz pivot choice: the active row with the
// fewest entries, and within it the column shared by the fewest rows.
template <class Ops>
std::size_t markowitz_rank(std::vector<std::vector<std::pair<std::size_t, typename Ops::Value>>> rows,
                           std::size_t cols, const Ops& ops) {
    using Row = std::vector<std::pair<std::size_t, typename Ops::Value>>;
    std::vector<std::set<std::size_t>> col_rows(cols);
    std::set<std::pair<std::size_t, std::size_t>> by_size;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].empty()) continue;
        by_size.emplace(rows[i].size(), i);
        for (const auto& [c, v] : rows[i]) col_rows[c].insert(i);
    }
    std::size_t rank = 0;
    while (!by_size.empty()) {
        const std::size_t pr = by_size.begin()->second;
        by_size.erase(by_size.begin());
        Row& prow = rows[pr];
        std::size_t pc = prow.front().first;
        std::size_t best = col_rows[pc].size();
        for (const auto& [c, v] : prow)
            if (col_rows[c].size() < best) {
                best = col_rows[c].size();
                pc = c;
            }
        for (const auto& [c, v] : prow) col_rows[c].erase(pr);
        ++rank;
        const auto pit = std::find_if(prow.begin(), prow.end(), [&](const auto& e) { return e.first == pc; });
        const typename Ops::Value pval = pit->second;
        const std::vector<std::size_t> targets(col_rows[pc].begin(), col_rows[pc].end());
        for (std::size_t t : targets) {
            Row& row = rows[t];
            by_size.erase({row.size(), t});
            for (const auto& [c, v] : row) col_rows[c].erase(t);
            const auto tit = std::find_if(row.begin(), row.end(), [&](const auto& e) { return e.first == pc; });
            row = ops.eliminate(row, tit->second, prow, pval);
            for (const auto& [c, v] : row) col_rows[c].insert(t);
            if (!row.empty()) by_size.emplace(row.size(), t);
        }
    }
    return rank;
}

struct ModOps {
    using Value = std::int64_t;
    std::int64_t p;
    std::vector<std::pair<std::size_t, Value>> eliminate(const std::vector<std::pair<std::size_t, Value>>& row,
                                                         Value rval,
                                                         const std::vector<std::pair<std::size_t, Value>>& prow,
                                                         Value pval) const {
        const std::int64_t f = (rval * inv_mod(pval, p)) % p;
        std::vector<std::pair<std::size_t, Value>> out;
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < prow.size()) {
            if (j == prow.size() || (i < row.size() && row[i].first < prow[j].first)) {
                out.push_back(row[i++]);
            } else if (i == row.size() || prow[j].first < row[i].first) {
                out.emplace_back(prow[j].first, ((p - f) * prow[j].second) % p);
                ++j;
            } else {
                std::int64_t v = ((row[i].second - f * prow[j].second) % p + p) % p;
                if (v != 0) out.emplace_back(row[i].first, v);
                ++i;
                ++j;
            }
        }
        return out;
    }
};

// Fraction-free: row <- pval * row - rval * prow, then divide by the content.
struct IntOps {
    using Value = mpz_class;
    std::vector<std::pair<std::size_t, Value>> eliminate(const std::vector<std::pair<std::size_t, Value>>& row,
                                                         const Value& rval,
                                                         const std::vector<std::pair<std::size_t, Value>>& prow,
                                                         const Value& pval) const {
        std::vector<std::pair<std::size_t, Value>> out;
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < prow.size()) {
            if (j == prow.size() || (i < row.size() && row[i].first < prow[j].first)) {
                out.emplace_back(row[i].first, pval * row[i].second);
                ++i;
            } else if (i == row.size() || prow[j].first < row[i].first) {
                out.emplace_back(prow[j].first, -rval * prow[j].second);
                ++j;
            } else {
                mpz_class v = pval * row[i].second - rval * prow[j].second;
                if (sgn(v) != 0) out.emplace_back(row[i].first, v);
                ++i;
                ++j;
            }
        }
        mpz_class g = 0;
        for (const auto& [c, v] : out) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g > 1)
            for (auto& [c, v] : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        return out;
    }
};

} // namespace

std::size_t rank_dense(const SparseMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if (m.field().characteristic == 0) return bareiss_rank(integer_dense(m), m.cols(), true);
    return modular_rank(m, true);
}

std::size_t rank_serial(const SparseMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if (m.field().characteristic == 0) return bareiss_rank(integer_dense(m), m.cols(), false);
    return modular_rank(m, false);
}

std::size_t rank_sparse(const SparseMatrix& m) {
    if (m.field().characteristic == 0) {
        auto dense_free = [&] {
            std::vector<std::vector<std::pair<std::size_t, mpz_class>>> rows(m.rows());
            std::vector<mpz_class> lcm(m.rows(), 1);
            auto entries = m.entries();
            for (const auto& e : entries) {
                mpq_class q = e.value.rational();
                mpz_lcm(lcm[e.row].get_mpz_t(), lcm[e.row].get_mpz_t(), q.get_den().get_mpz_t());
            }
            for (const auto& e : entries) {
                mpq_class q = e.value.rational();
                rows[e.row].emplace_back(e.col, q.get_num() * (lcm[e.row] / q.get_den()));
            }
            return rows;
        };
        return markowitz_rank(dense_free(), m.cols(), IntOps{});
    }
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> rows(m.rows());
    for (const auto& e : m.entries()) rows[e.row].emplace_back(e.col, e.value.residue());
    return markowitz_rank(std::move(rows), m.cols(), ModOps{m.field().characteristic});
}

std::size_t rank(const SparseMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0 || m.nonzeros() == 0) return 0;
    if (m.rows() <= kDenseLimit && m.cols() <= kDenseLimit) return rank_dense(m);
    return rank_sparse(m);
}

std::size_t kernel_dim(const SparseMatrix& m) { return m.cols() - rank(m); }

std::size_t homology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out) {
    if (d_in.rows() != d_out.cols()) throw SpecMismatch("d_in and d_out do not share a middle space");
    if (!d_out.multiply(d_in).is_zero()) throw CompositionNonzero("d_out * d_in is nonzero");
    return kernel_dim(d_out) - rank(d_in);
}

void ColumnEchelon::reduce(SparseVector& vec, SparseVector& combo) const {
    // Eliminate leading entries in increasing row order until the leading
    // row has no pivot.
    auto it = vec.begin();
    while (it != vec.end()) {
        auto pit = pivots_.find(it->first);
        if (pit == pivots_.end()) {
            ++it;
            continue;
        }
        const std::size_t row = it->first;
        const Scalar f = it->second;
        for (const auto& [r, v] : pit->second.vec) {
            auto& slot = vec.try_emplace(r, field_.zero()).first->second;
            slot -= f * v;
        }
        for (const auto& [id, v] : pit->second.combo) {
            auto& slot = combo.try_emplace(id, field_.zero()).first->second;
            slot -= f * v;
            if (slot.is_zero()) combo.erase(id);
        }
        for (auto z = vec.begin(); z != vec.end();) z = z->second.is_zero() ? vec.erase(z) : std::next(z);
        it = vec.upper_bound(row);
    }
}

bool ColumnEchelon::insert(std::size_t id, const SparseVector& column) {
    SparseVector vec;
    for (const auto& [r, v] : column)
        if (!v.is_zero()) vec.emplace(r, v);
    SparseVector combo{{id, field_.one()}};
    reduce(vec, combo);
    // Find first row without a pivot; reduce() leaves only such rows.
    if (vec.empty()) return false;
    const std::size_t lead = vec.begin()->first;
    const Scalar inv = vec.begin()->second.inverse();
    for (auto& [r, v] : vec) v *= inv;
    for (auto& [k, v] : combo) v *= inv;
    pivots_.emplace(lead, Pivot{std::move(vec), std::move(combo)});
    return true;
}

std::optional<SparseVector> ColumnEchelon::solve(const SparseVector& target) const {
    SparseVector vec;
    for (const auto& [r, v] : target)
        if (!v.is_zero()) vec.emplace(r, v);
    SparseVector combo;
    reduce(vec, combo);
    if (!vec.empty()) return std::nullopt;
    for (auto& [k, v] : combo) v = -v;
    return combo;
}

} // namespace twistres
