#pragma once
/**
 * exactlin.hpp — exact dense linear algebra over prime fields and the
 * rationals.
 *
 * Provides the row canonical form (reduced row echelon form with zero rows
 * kept in place at the bottom), canonical nullspace bases (free variables
 * set to unit vectors), incremental rank-profile accumulation, and a
 * deterministic JSON serialization.  All arithmetic is exact: either in
 * GF(p) for a runtime prime p, or in arbitrary-precision rationals.
 *
 * The GF(p) elimination keeps stored rows in canonical residue form and
 * accumulates eliminations lazily in wide integer buffers, reducing mod p
 * only once per row pass.  This keeps the inner loops free of divisions so
 * they auto-vectorize; the accumulator width is chosen from p and the rank
 * bound so that no overflow can occur.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

namespace opident {

using Rational = boost::multiprecision::cpp_rational;

/// Runtime prime field GF(p).  Elements are canonical residues in [0, p).
struct PrimeField {
    std::uint32_t p;

    explicit PrimeField(std::uint32_t prime = 101) : p(prime) {
        if (prime < 2) throw std::invalid_argument("prime must be >= 2");
    }

    std::uint32_t reduce(std::uint64_t t) const { return static_cast<std::uint32_t>(t % p); }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { std::uint32_t s = a + b; return s >= p ? s - p : s; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p - b; }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1 % p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return pow(a, p - 2);  // p prime
    }
    /// Canonical residue of a (possibly negative) integer.
    std::uint32_t from_int(long long v) const {
        long long m = v % static_cast<long long>(p);
        if (m < 0) m += p;
        return static_cast<std::uint32_t>(m);
    }
    /// Symmetric lift: representative in (-p/2, p/2].
    long long signed_lift(std::uint32_t a) const {
        return a * 2 > p ? static_cast<long long>(a) - static_cast<long long>(p)
                         : static_cast<long long>(a);
    }
};

// ---------------------------------------------------------------------------
// GF(p) dense matrices
// ---------------------------------------------------------------------------

class ModMatrix;
namespace detail {
template <class Acc>
void backsubstitute(std::vector<std::uint32_t>& a, std::size_t cols,
                    const std::vector<std::size_t>& pivot_cols, const PrimeField& F);
}

/// Dense matrix over GF(p), row-major, canonical residues.
class ModMatrix {
  public:
    ModMatrix() : field_(101), rows_(0), cols_(0) {}
    ModMatrix(std::size_t rows, std::size_t cols, PrimeField field = PrimeField(101))
        : field_(field), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static ModMatrix from_rows(const std::vector<std::vector<long long>>& rows,
                               PrimeField field = PrimeField(101)) {
        std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
        ModMatrix m(r, c, field);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const PrimeField& field() const { return field_; }

    std::uint32_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint32_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    std::uint32_t* row_ptr(std::size_t i) { return a_.data() + i * cols_; }
    const std::uint32_t* row_ptr(std::size_t i) const { return a_.data() + i * cols_; }

    bool operator==(const ModMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && field_.p == o.field_.p && a_ == o.a_;
    }
    bool operator!=(const ModMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](std::uint32_t v) { return v == 0; });
    }

    /// Horizontal concatenation [this | other].
    ModMatrix hcat(const ModMatrix& other) const {
        if (rows_ != other.rows_) throw std::invalid_argument("hcat: row mismatch");
        ModMatrix m(rows_, cols_ + other.cols_, field_);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::copy(row_ptr(i), row_ptr(i) + cols_, m.row_ptr(i));
            std::copy(other.row_ptr(i), other.row_ptr(i) + other.cols_, m.row_ptr(i) + cols_);
        }
        return m;
    }

    /// Vertical concatenation [this ; other].
    ModMatrix vcat(const ModMatrix& other) const {
        if (cols_ != other.cols_ && other.rows_ != 0) throw std::invalid_argument("vcat: col mismatch");
        ModMatrix m(rows_ + other.rows_, cols_, field_);
        m.a_ = a_;
        m.a_.insert(m.a_.end(), other.a_.begin(), other.a_.end());
        return m;
    }

    ModMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        ModMatrix m(nr, nc, field_);
        for (std::size_t i = 0; i < nr; ++i)
            std::copy(row_ptr(r0 + i) + c0, row_ptr(r0 + i) + c0 + nc, m.row_ptr(i));
        return m;
    }

    static ModMatrix identity(std::size_t n, PrimeField field = PrimeField(101)) {
        ModMatrix m(n, n, field);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    ModMatrix multiply(const ModMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("multiply: dim mismatch");
        ModMatrix m(rows_, o.cols_, field_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                std::uint64_t v = (*this)(i, k);
                if (!v) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    std::uint64_t t = m(i, j) + v * o(k, j);
                    m(i, j) = field_.reduce(t);
                }
            }
        return m;
    }

    std::size_t rank() const;
    ModMatrix rcf() const;
    std::vector<std::size_t> pivot_columns() const;
    ModMatrix nullspace_canonical() const;
    ModMatrix inverse() const;

  private:
    friend class RrefBuilder;
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<std::uint32_t> a_;
};

/**
 * Incremental reduced-row-echelon builder over GF(p).
 *
 * absorb() eliminates a row against the accumulated pivot rows (forward
 * only) and stores it if independent; the accumulated rows are kept in
 * canonical residue form with pivots normalized to 1 but are only fully
 * back-substituted by basis()/rcf_of().  Used both for one-shot row
 * canonical forms and for rank-profile extension scans.
 */
class RrefBuilder {
  public:
    explicit RrefBuilder(std::size_t cols, PrimeField field = PrimeField(101))
        : field_(field), cols_(cols) {}

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const PrimeField& field() const { return field_; }

    /// Returns true if the row was independent (rank increased).
    bool absorb(const std::uint32_t* row) {
        std::vector<std::uint64_t> buf(row, row + cols_);
        return absorb_buffer(buf);
    }
    bool absorb(const std::vector<std::uint32_t>& row) {
        if (row.size() != cols_) throw std::invalid_argument("absorb: width mismatch");
        return absorb(row.data());
    }
    bool absorb_signed(const std::vector<long long>& row) {
        if (row.size() != cols_) throw std::invalid_argument("absorb: width mismatch");
        std::vector<std::uint64_t> buf(cols_);
        for (std::size_t j = 0; j < cols_; ++j) buf[j] = field_.from_int(row[j]);
        return absorb_buffer(buf);
    }
    /// Absorbs every row of m; returns the number of independent rows found.
    std::size_t absorb_all(const ModMatrix& m) {
        std::size_t added = 0;
        for (std::size_t i = 0; i < m.rows(); ++i) added += absorb(m.row_ptr(i)) ? 1 : 0;
        return added;
    }

    /// Would this row increase the rank?  (No state change.)
    bool independent(const std::vector<std::uint32_t>& row) const {
        std::vector<std::uint64_t> buf(row.begin(), row.end());
        return !eliminate_only(buf);
    }

    /// Fully reduced canonical rows, sorted by pivot column (rank x cols).
    ModMatrix basis() const {
        ModMatrix m = echelon_sorted();
        std::vector<std::size_t> piv = sorted_pivots();
        detail_backsub(m, piv);
        return m;
    }

    const std::vector<std::size_t>& pivot_order() const { return pivots_; }
    std::vector<std::size_t> sorted_pivots() const {
        std::vector<std::size_t> piv = pivots_;
        std::sort(piv.begin(), piv.end());
        return piv;
    }

  private:
    friend class ModMatrix;

    // Eliminates buf against stored rows in place; returns true if buf ended zero.
    bool eliminate_only(std::vector<std::uint64_t>& buf) const {
        for (std::size_t j = 0; j < cols_; ++j) {
            std::uint32_t v = field_.reduce(buf[j]);
            buf[j] = v;
            if (!v) continue;
            auto it = pivot_row_.find(j);
            if (it == pivot_row_.end()) return false;  // independent at column j
            const std::uint32_t* r = rows_[it->second].data();
            std::uint64_t k = field_.p - v;
            for (std::size_t t = j; t < cols_; ++t) buf[t] += k * r[t];
        }
        return true;
    }

    bool absorb_buffer(std::vector<std::uint64_t>& buf) {
        for (std::size_t j = 0; j < cols_; ++j) {
            std::uint32_t v = field_.reduce(buf[j]);
            buf[j] = v;
            if (!v) continue;
            auto it = pivot_row_.find(j);
            if (it == pivot_row_.end()) {
                // New pivot at column j: normalize and store.
                std::vector<std::uint32_t> r(cols_, 0);
                std::uint32_t s = field_.inv(v);
                r[j] = 1;
                for (std::size_t t = j + 1; t < cols_; ++t)
                    r[t] = field_.mul(field_.reduce(buf[t]), s);
                pivot_row_.emplace(j, rows_.size());
                pivots_.push_back(j);
                rows_.push_back(std::move(r));
                return true;
            }
            const std::uint32_t* r = rows_[it->second].data();
            std::uint64_t k = field_.p - v;
            for (std::size_t t = j; t < cols_; ++t) buf[t] += k * r[t];
        }
        return false;
    }

    // Stored rows sorted by pivot column, no back substitution yet.
    ModMatrix echelon_sorted() const {
        std::vector<std::size_t> order(rows_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return pivots_[x] < pivots_[y]; });
        ModMatrix m(rows_.size(), cols_, field_);
        for (std::size_t i = 0; i < order.size(); ++i)
            std::copy(rows_[order[i]].begin(), rows_[order[i]].end(), m.row_ptr(i));
        return m;
    }

    // Back-substitution on an echelon matrix whose i-th row has pivot piv[i].
    void detail_backsub(ModMatrix& m, const std::vector<std::size_t>& piv) const;

    PrimeField field_;
    std::size_t cols_;
    std::vector<std::vector<std::uint32_t>> rows_;  // canonical residues, pivot = 1
    std::vector<std::size_t> pivots_;               // pivot column of rows_[i]
    std::map<std::size_t, std::size_t> pivot_row_;  // column -> index into rows_
};

namespace detail {
/// Accumulator-typed back substitution core.  Acc is wide enough that
/// rank * (p-1)^2 + (p-1) never overflows (checked by the caller).
template <class Acc>
void backsubstitute(std::vector<std::uint32_t>& a, std::size_t cols,
                    const std::vector<std::size_t>& pivots, const PrimeField& F) {
    std::size_t rank = pivots.size();
    if (rank == 0) return;
    std::vector<Acc> w(rank * cols);
    for (std::size_t i = 0; i < rank * cols; ++i) w[i] = a[i];
    for (std::size_t r = rank; r-- > 0;) {
        std::size_t pc = pivots[r];
        // Row r is canonical (it only receives eliminations after being used
        // as an eliminator, never before): reduce it now, then clear column
        // pc from all rows above.
        std::uint32_t* src = a.data() + r * cols;
        for (std::size_t t = 0; t < cols; ++t) src[t] = F.reduce(w[r * cols + t]);
        for (std::size_t i = 0; i < r; ++i) {
            Acc* dst = w.data() + i * cols;
            std::uint32_t v = F.reduce(dst[pc]);
            if (!v) { dst[pc] = 0; continue; }
            Acc k = F.p - v;
            for (std::size_t t = pc; t < cols; ++t) dst[t] += k * static_cast<Acc>(src[t]);
        }
    }
    for (std::size_t t = 0; t < cols; ++t) a[t] = F.reduce(w[t]);
}
}  // namespace detail

inline void RrefBuilder::detail_backsub(ModMatrix& m, const std::vector<std::size_t>& piv) const {
    // Choose the narrowest safe accumulator: a row above receives at most
    // rank eliminations, each adding at most (p-1)^2 per entry.
    std::uint64_t p1 = field_.p - 1;
    bool fits32 = (static_cast<std::uint64_t>(piv.size()) * p1 * p1 + p1) <
                  (std::uint64_t(1) << 32);
    if (fits32)
        detail::backsubstitute<std::uint32_t>(m.a_, cols_, piv, field_);
    else
        detail::backsubstitute<std::uint64_t>(m.a_, cols_, piv, field_);
}

inline std::size_t ModMatrix::rank() const {
    RrefBuilder b(cols_, field_);
    b.absorb_all(*this);
    return b.rank();
}

inline std::vector<std::size_t> ModMatrix::pivot_columns() const {
    RrefBuilder b(cols_, field_);
    b.absorb_all(*this);
    return b.sorted_pivots();
}

/// Row canonical form: reduced row echelon form, pivot rows first (sorted by
/// pivot column), zero rows kept at the bottom so the shape is preserved.
inline ModMatrix ModMatrix::rcf() const {
    RrefBuilder b(cols_, field_);
    b.absorb_all(*this);
    ModMatrix top = b.basis();
    ModMatrix out(rows_, cols_, field_);
    for (std::size_t i = 0; i < top.rows(); ++i)
        std::copy(top.row_ptr(i), top.row_ptr(i) + cols_, out.row_ptr(i));
    return out;
}

/**
 * Canonical nullspace basis: one row per free column (ascending), with the
 * free variable set to 1 and the pivot variables solved from the RCF.
 * nullspace_canonical([[1,1]]) over GF(101) is [[100, 1]].
 */
inline ModMatrix ModMatrix::nullspace_canonical() const {
    RrefBuilder b(cols_, field_);
    b.absorb_all(*this);
    ModMatrix R = b.basis();
    std::vector<std::size_t> piv = b.sorted_pivots();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : piv) is_pivot[c] = true;
    ModMatrix ns(cols_ - piv.size(), cols_, field_);
    std::size_t k = 0;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        ns(k, f) = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) ns(k, piv[r]) = field_.neg(R(r, f));
        ++k;
    }
    return ns;
}

inline ModMatrix ModMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse: not square");
    ModMatrix aug = hcat(identity(rows_, field_));
    ModMatrix r = aug.rcf();
    for (std::size_t i = 0; i < rows_; ++i)
        if (r(i, i) != 1) throw std::domain_error("inverse: singular matrix");
    return r.block(0, rows_, rows_, rows_);
}

// ---------------------------------------------------------------------------
// Rational dense matrices
// ---------------------------------------------------------------------------

/// Dense matrix over Q.  Same canonical-form conventions as ModMatrix; used
/// for independent cross-checks at small arity, so clarity over speed.
class RatMatrix {
  public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static RatMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
        std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
        RatMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    RatMatrix rcf() const {
        RatMatrix m = *this;
        std::size_t lead = 0;
        std::vector<std::size_t> piv;
        for (std::size_t c = 0; c < cols_ && lead < rows_; ++c) {
            std::size_t sel = lead;
            while (sel < rows_ && m(sel, c) == 0) ++sel;
            if (sel == rows_) continue;
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m(lead, j), m(sel, j));
            Rational inv = Rational(1) / m(lead, c);
            for (std::size_t j = c; j < cols_; ++j) m(lead, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == lead || m(i, c) == 0) continue;
                Rational k = m(i, c);
                for (std::size_t j = c; j < cols_; ++j) m(i, j) -= k * m(lead, j);
            }
            piv.push_back(c);
            ++lead;
        }
        return m;
    }

    std::size_t rank() const {
        RatMatrix r = rcf();
        std::size_t n = 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            bool nz = false;
            for (std::size_t j = 0; j < cols_; ++j)
                if (r(i, j) != 0) { nz = true; break; }
            n += nz ? 1 : 0;
        }
        return n;
    }

    std::vector<std::size_t> pivot_columns() const {
        RatMatrix r = rcf();
        std::vector<std::size_t> piv;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = piv.empty() ? 0 : piv.back() + 1; j < cols_; ++j)
                if (r(i, j) != 0) { piv.push_back(j); break; }
        return piv;
    }

    RatMatrix nullspace_canonical() const {
        RatMatrix R = rcf();
        std::vector<std::size_t> piv = pivot_columns();
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t c : piv) is_pivot[c] = true;
        RatMatrix ns(cols_ - piv.size(), cols_);
        std::size_t k = 0;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            ns(k, f) = 1;
            for (std::size_t r = 0; r < piv.size(); ++r) ns(k, piv[r]) = -R(r, f);
            ++k;
        }
        return ns;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

/// JSON form: {"schema":1, "field":"F<p>", "rows":r, "cols":c, "entries":[[...]]}.
inline nlohmann::json to_json(const ModMatrix& m) {
    nlohmann::json j;
    j["schema"] = 1;
    j["field"] = "F" + std::to_string(m.field().p);
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t jx = 0; jx < m.cols(); ++jx) row.push_back(m(i, jx));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

inline ModMatrix mod_matrix_from_json(const nlohmann::json& j) {
    std::string f = j.at("field").get<std::string>();
    if (f.empty() || f[0] != 'F') throw std::invalid_argument("not a prime-field matrix");
    PrimeField F(static_cast<std::uint32_t>(std::stoul(f.substr(1))));
    ModMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(), F);
    const auto& rows = j.at("entries");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t c = 0; c < m.cols(); ++c)
            m(i, c) = F.from_int(rows.at(i).at(c).get<long long>());
    return m;
}

/// JSON form over Q: entries are decimal strings "n" or "n/d" (never floats).
inline nlohmann::json to_json(const RatMatrix& m) {
    nlohmann::json j;
    j["schema"] = 1;
    j["field"] = "Q";
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t jx = 0; jx < m.cols(); ++jx) row.push_back(m(i, jx).str());
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

inline RatMatrix rat_matrix_from_json(const nlohmann::json& j) {
    if (j.at("field").get<std::string>() != "Q")
        throw std::invalid_argument("not a rational matrix");
    RatMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    const auto& rows = j.at("entries");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t c = 0; c < m.cols(); ++c)
            m(i, c) = Rational(rows.at(i).at(c).get<std::string>());
    return m;
}

}  // namespace opident
