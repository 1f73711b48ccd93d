/*
 * Symmetric-group representation machinery for splitting the expansion
 * maps into isotypic components.
 *
 * The multilinear identities of arity n form an S_n-module; for n >= 5 the
 * monomial matrices become unwieldy, so the kernel is analyzed one
 * partition at a time.  For each partition lambda of n we build the block
 * matrix
 *
 *     E_{n,lambda} = [ R_lambda(X_{i,j}) | I ]
 *
 * with one block row per domain skeleton and one block column per target
 * skeleton, where X_{i,j} is the group-algebra component of the expansion
 * of skeleton i on target skeleton j, and R_lambda is the irreducible
 * representation computed by Clifton's algorithm from standard Young
 * tableaux.  After row reduction, the rows whose pivots fall right of the
 * divider span the isotypic component of the kernel ("ALL"); the module
 * generated by skeleton symmetries plus the consequences of known
 * lower-arity identities gives the comparison matrix ("OLD").  Equality of
 * the two row canonical forms for every partition certifies that no new
 * identities exist in that arity.
 *
 * Conventions:
 *   - partitions are listed in decreasing lexicographic order;
 *   - standard tableaux are enumerated by placing 0..n-1 in row order;
 *   - a monomial's word is the permutation mapping position to variable,
 *     acting by composition on the left under relabeling.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opident/exactlin.hpp"
#include "opident/expand.hpp"
#include "opident/targetops.hpp"
#include "opident/treeops.hpp"

namespace opident {

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

/// Weakly decreasing positive parts summing to n.
using Partition = std::vector<int>;

/// All partitions of n in decreasing lexicographic order: [n] first,
/// [1,1,...,1] last.
inline std::vector<Partition> partitions(int n) {
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto&& self, int rest, int max_part) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

inline std::string partition_name(const Partition& lambda) {
    std::string s;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(lambda[i]);
    }
    return s;
}

/// Number of standard Young tableaux of the given shape (hook length
/// formula).
inline long long partition_dim(const Partition& lambda) {
    const int n = std::accumulate(lambda.begin(), lambda.end(), 0);
    std::vector<int> conj;  // conjugate partition
    for (int c = 0;; ++c) {
        int h = 0;
        for (int p : lambda)
            if (p > c) ++h;
        if (!h) break;
        conj.push_back(h);
    }
    // d = n! / prod(hooks); compute as an exact integer via repeated
    // cancellation (numbers stay small for n <= 12).
    long long num = 1, den = 1;
    for (int k = 2; k <= n; ++k) num *= k;
    for (std::size_t r = 0; r < lambda.size(); ++r)
        for (int c = 0; c < lambda[r]; ++c)
            den *= (lambda[r] - c) + (conj[static_cast<std::size_t>(c)] - static_cast<int>(r)) - 1;
    if (num % den != 0) throw std::logic_error("hook length formula did not divide");
    return num / den;
}

// ---------------------------------------------------------------------------
// Standard Young tableaux
// ---------------------------------------------------------------------------

/// A standard tableau of a given shape; entries are 0..n-1, increasing
/// along rows and down columns.
struct Tableau {
    Partition shape;
    std::vector<std::vector<int>> rows;  // rows[r][c] = entry
    std::vector<int> row_of;             // entry -> row index

    int n() const { return static_cast<int>(row_of.size()); }
};

/// All standard tableaux of the given shape, enumerated by placing the
/// entries 0..n-1 in ascending row order (a deterministic total order).
inline std::vector<Tableau> standard_tableaux(const Partition& shape) {
    const int n = std::accumulate(shape.begin(), shape.end(), 0);
    std::vector<Tableau> out;
    std::vector<int> fill(shape.size(), 0);
    Tableau t;
    t.shape = shape;
    t.rows.resize(shape.size());
    for (std::size_t r = 0; r < shape.size(); ++r)
        t.rows[r].assign(static_cast<std::size_t>(shape[r]), -1);
    t.row_of.assign(static_cast<std::size_t>(n), -1);
    auto rec = [&](auto&& self, int v) -> void {
        if (v == n) {
            out.push_back(t);
            return;
        }
        for (std::size_t r = 0; r < shape.size(); ++r) {
            if (fill[r] >= shape[r]) continue;
            if (r > 0 && fill[r - 1] <= fill[r]) continue;  // column would decrease
            t.rows[r][static_cast<std::size_t>(fill[r])] = v;
            t.row_of[static_cast<std::size_t>(v)] = static_cast<int>(r);
            ++fill[r];
            self(self, v + 1);
            --fill[r];
        }
    };
    rec(rec, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Clifton representation matrices
// ---------------------------------------------------------------------------

/// Element of the group algebra F S_n: a finite sum of permutations with
/// integer coefficients.  Words of monomials are used directly as
/// permutations (position -> variable).
using GroupPoly = std::map<Perm, long long>;

/**
 * Irreducible representation of S_n for one partition, over a prime field.
 * The Clifton matrix A(pi) has entries in {0, +1, -1}: entry (i,j) is zero
 * when two entries sharing a row of tableau T_i share a column of pi T_j,
 * and otherwise the sign of the column permutation of pi T_j that lifts
 * each entry to its row in T_i.  The representation matrix is
 * R(pi) = A(id)^{-1} A(pi); multiplicativity R(sigma tau) =
 * R(sigma) R(tau) holds for composition (sigma tau)(v) = sigma(tau(v)).
 */
class CliftonRep {
  public:
    CliftonRep(Partition lambda, const PrimeField& field)
        : lambda_(std::move(lambda)),
          field_(field),
          tabs_(standard_tableaux(lambda_)),
          d_(tabs_.size()) {
        if (partition_dim(lambda_) != static_cast<long long>(d_))
            throw std::logic_error("tableau count disagrees with the hook length formula");
        n_ = tabs_.empty() ? 0 : tabs_[0].n();
        ainv_ = invert(to_field(clifton_matrix(perm_identity(n_))));
    }

    const Partition& shape() const { return lambda_; }
    int dim() const { return static_cast<int>(d_); }
    int arity() const { return n_; }
    const PrimeField& field() const { return field_; }
    const std::vector<Tableau>& tableaux() const { return tabs_; }

    /// A(pi): row-major d x d with entries in {-1, 0, +1}.
    std::vector<int> clifton_matrix(const Perm& pi) const {
        std::vector<int> a(d_ * d_, 0);
        std::vector<int> col_rows;
        for (std::size_t j = 0; j < d_; ++j) {
            // pi T_j: the cell of T_j holding v holds pi[v]; entry v of T_j
            // targets row ti.row_of[pi[v]].
            for (std::size_t i = 0; i < d_; ++i) {
                const Tableau& tj = tabs_[j];
                const Tableau& ti = tabs_[i];
                int sign = 1;
                bool zero = false;
                const int ncols = lambda_.empty() ? 0 : lambda_[0];
                for (int c = 0; c < ncols && !zero; ++c) {
                    col_rows.clear();
                    for (std::size_t r = 0; r < lambda_.size(); ++r) {
                        if (lambda_[r] <= c) break;
                        const int v = tj.rows[r][static_cast<std::size_t>(c)];
                        const int image = pi[static_cast<std::size_t>(v)];
                        col_rows.push_back(ti.row_of[static_cast<std::size_t>(image)]);
                    }
                    // Collision: two entries of this column land in one row.
                    // Otherwise count inversions of the sort to target rows.
                    for (std::size_t x = 0; x < col_rows.size() && !zero; ++x)
                        for (std::size_t y = x + 1; y < col_rows.size(); ++y) {
                            if (col_rows[x] == col_rows[y]) {
                                zero = true;
                                break;
                            }
                            if (col_rows[x] > col_rows[y]) sign = -sign;
                        }
                }
                if (!zero) a[i * d_ + j] = sign;
            }
        }
        return a;
    }

    /// R(pi) = A(id)^{-1} A(pi): row-major d x d field elements.
    std::vector<std::uint32_t> rep(const Perm& pi) const {
        return mul(ainv_, to_field(clifton_matrix(pi)));
    }

    /// R of a group algebra element (coefficients reduced mod p).
    std::vector<std::uint32_t> rep(const GroupPoly& x) const {
        std::vector<std::uint64_t> acc(d_ * d_, 0);
        for (const auto& [pi, c] : x) {
            const std::uint32_t fc = field_.from_int(c);
            if (!fc) continue;
            const std::vector<std::uint32_t> r = rep(pi);
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += static_cast<std::uint64_t>(fc) * r[k];
        }
        std::vector<std::uint32_t> out(d_ * d_);
        for (std::size_t k = 0; k < acc.size(); ++k) out[k] = field_.reduce(acc[k]);
        return out;
    }

  private:
    std::vector<std::uint32_t> to_field(const std::vector<int>& a) const {
        std::vector<std::uint32_t> out(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) out[k] = field_.from_int(a[k]);
        return out;
    }

    std::vector<std::uint32_t> mul(const std::vector<std::uint32_t>& a,
                                   const std::vector<std::uint32_t>& b) const {
        std::vector<std::uint32_t> out(d_ * d_, 0);
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t k = 0; k < d_; ++k) {
                const std::uint64_t v = a[i * d_ + k];
                if (!v) continue;
                for (std::size_t j = 0; j < d_; ++j)
                    out[i * d_ + j] =
                        field_.reduce(out[i * d_ + j] + v * b[k * d_ + j]);
            }
        return out;
    }

    // Gauss-Jordan inverse of a d x d matrix over the field.
    std::vector<std::uint32_t> invert(std::vector<std::uint32_t> m) const {
        std::vector<std::uint32_t> inv(d_ * d_, 0);
        for (std::size_t i = 0; i < d_; ++i) inv[i * d_ + i] = 1;
        for (std::size_t c = 0; c < d_; ++c) {
            std::size_t p = c;
            while (p < d_ && !m[p * d_ + c]) ++p;
            if (p == d_) throw std::logic_error("Clifton matrix of the identity is singular");
            if (p != c)
                for (std::size_t j = 0; j < d_; ++j) {
                    std::swap(m[p * d_ + j], inv[c * d_ + j]);
                    std::swap(m[c * d_ + j], m[p * d_ + j]);
                    std::swap(inv[p * d_ + j], inv[c * d_ + j]);
                }
            const std::uint32_t s = field_.inv(m[c * d_ + c]);
            for (std::size_t j = 0; j < d_; ++j) {
                m[c * d_ + j] = field_.mul(m[c * d_ + j], s);
                inv[c * d_ + j] = field_.mul(inv[c * d_ + j], s);
            }
            for (std::size_t r = 0; r < d_; ++r) {
                if (r == c || !m[r * d_ + c]) continue;
                const std::uint64_t k = field_.p - m[r * d_ + c];
                for (std::size_t j = 0; j < d_; ++j) {
                    m[r * d_ + j] = field_.reduce(m[r * d_ + j] + k * m[c * d_ + j]);
                    inv[r * d_ + j] = field_.reduce(inv[r * d_ + j] + k * inv[c * d_ + j]);
                }
            }
        }
        return inv;
    }

    Partition lambda_;
    PrimeField field_;
    std::vector<Tableau> tabs_;
    std::size_t d_;
    int n_ = 0;
    std::vector<std::uint32_t> ainv_;
};

/// Memoizing wrapper: representation matrices for all permutations that
/// actually occur, computed once each.
class RepCache {
  public:
    explicit RepCache(const CliftonRep& rep) : rep_(rep) {}

    const std::vector<std::uint32_t>& of(const Perm& pi) {
        auto it = cache_.find(pi);
        if (it == cache_.end()) it = cache_.emplace(pi, rep_.rep(pi)).first;
        return it->second;
    }

    std::vector<std::uint32_t> of(const GroupPoly& x) {
        const std::size_t d = static_cast<std::size_t>(rep_.dim());
        std::vector<std::uint64_t> acc(d * d, 0);
        const PrimeField& F = rep_.field();
        for (const auto& [pi, c] : x) {
            const std::uint32_t fc = F.from_int(c);
            if (!fc) continue;
            const std::vector<std::uint32_t>& r = of(pi);
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += static_cast<std::uint64_t>(fc) * r[k];
        }
        std::vector<std::uint32_t> out(d * d);
        for (std::size_t k = 0; k < acc.size(); ++k) out[k] = F.reduce(acc[k]);
        return out;
    }

    const CliftonRep& rep() const { return rep_; }

  private:
    const CliftonRep& rep_;
    std::map<Perm, std::vector<std::uint32_t>> cache_;
};

// ---------------------------------------------------------------------------
// Consequence lifting to a common arity
// ---------------------------------------------------------------------------

/// Lifts every identity to arity n by iterated consequence expansion
/// (each step yields the 2k+3 liftings of an arity-k identity).
inline std::vector<Polynomial> lifted_to_arity(const std::vector<NamedIdentity>& ids, int n) {
    std::vector<Polynomial> out;
    for (const NamedIdentity& id : ids) {
        if (id.arity > n)
            throw std::invalid_argument("identity '" + id.name + "' exceeds the requested arity");
        std::vector<Polynomial> cur = {id.poly};
        for (int k = id.arity; k < n; ++k) {
            std::vector<Polynomial> next;
            next.reserve(cur.size() * static_cast<std::size_t>(2 * k + 3));
            for (const Polynomial& f : cur)
                for (Polynomial& g : consequences(f, k)) next.push_back(std::move(g));
            cur = std::move(next);
        }
        for (Polynomial& f : cur) out.push_back(std::move(f));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Isotypic analysis of an expansion map
// ---------------------------------------------------------------------------

struct IsotypicReport {
    Partition lambda;
    long long dim = 0;           // d_lambda
    std::size_t toprank = 0;     // pivots left of the block divider
    std::size_t allrank = 0;     // rows of the ALL matrix
    std::size_t symrank = 0;     // rank of the skeleton-symmetry rows alone
    std::size_t oldrank = 0;     // rank of symmetry + consequence rows
    bool all_equals_old = false; // RCF(ALL) identical to RCF(OLD)
};

/**
 * Per-partition analysis of one expansion map at one arity.  Construction
 * precomputes the group-algebra components of the expansion of every
 * domain skeleton and the symmetry involutions of the skeletons; analyze()
 * then assembles and reduces the block matrices for one partition.
 */
class IsotypicAnalyzer {
  public:
    IsotypicAnalyzer(Target target, int n, const PrimeField& field)
        : target_(target), n_(n), field_(field), expander_(target, n) {
        domain_ = bw_skeletons(n);
        targets_ = target_basis_skeletons(target, n, expander_.classes());
        for (std::size_t j = 0; j < targets_.size(); ++j)
            target_index_.emplace(targets_[j], static_cast<int>(j));

        comp_.resize(domain_.size());
        const Perm id = perm_identity(n);
        for (std::size_t i = 0; i < domain_.size(); ++i) {
            const Polynomial e = expander_.expand(Monomial{domain_[i], id});
            for (const auto& [m, c] : e.terms())
                comp_[i][target_index_.at(m.skel)][m.word] += c;
        }

        const OpAlphabet& alpha = OpAlphabet::bw();
        for (std::size_t i = 0; i < domain_.size(); ++i) {
            const std::size_t before = symmetries_.size();
            collect_symmetries(domain_[i], 0, static_cast<int>(i), alpha);
            if (static_cast<int>(symmetries_.size() - before) != symmetry_count(domain_[i]))
                throw std::logic_error("symmetry enumeration disagrees with symmetry_count");
        }
    }

    Target target() const { return target_; }
    int arity() const { return n_; }
    const std::vector<int>& domain_skeletons() const { return domain_; }
    const std::vector<int>& target_skeletons() const { return targets_; }
    std::size_t symmetry_total() const { return symmetries_.size(); }
    Expander& expander() { return expander_; }

    /// The ALL matrix for one partition: RCF rows spanning the isotypic
    /// component of the kernel, with the toprank recorded via the report.
    ModMatrix all_matrix(const CliftonRep& rep, IsotypicReport* report = nullptr) {
        RepCache cache(rep);
        const std::size_t d = static_cast<std::size_t>(rep.dim());
        const std::size_t b = domain_.size(), t = targets_.size();
        const std::size_t cols = (t + b) * d;
        RrefBuilder builder(cols, field_);
        std::vector<std::uint32_t> row(cols);
        for (std::size_t i = 0; i < b; ++i) {
            std::vector<std::pair<int, std::vector<std::uint32_t>>> blocks;
            for (const auto& [j, x] : comp_[i]) blocks.emplace_back(j, cache.of(x));
            for (std::size_t r = 0; r < d; ++r) {
                std::fill(row.begin(), row.end(), 0);
                for (const auto& [j, rx] : blocks)
                    std::copy(rx.begin() + static_cast<std::ptrdiff_t>(r * d),
                              rx.begin() + static_cast<std::ptrdiff_t>((r + 1) * d),
                              row.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(j) * d));
                row[(t + i) * d + r] = 1;
                builder.absorb(row);
            }
        }
        if (builder.rank() != b * d)
            throw std::logic_error("expansion block matrix lost rank");
        const std::vector<std::size_t> piv = builder.sorted_pivots();
        std::size_t top = 0;
        while (top < piv.size() && piv[top] < t * d) ++top;
        const std::size_t all = b * d - top;
        if (report) {
            report->lambda = rep.shape();
            report->dim = rep.dim();
            report->toprank = top;
            report->allrank = all;
        }
        ModMatrix full = builder.basis();
        ModMatrix out(all, b * d, field_);
        for (std::size_t r = 0; r < all; ++r)
            for (std::size_t c = 0; c < b * d; ++c) out(r, c) = full(top + r, t * d + c);
        return out;
    }

    /**
     * The OLD matrix for one partition: row canonical form of the skeleton
     * symmetries followed by the given consequence rows.  When `bound` is
     * nonzero, absorption stops once the rank reaches it (the row space of
     * identities can never exceed the ALL row space, so hitting the bound
     * pins the span; the caller still compares the two RCFs entry by
     * entry).  Each consequence is verified to expand to zero first.
     */
    ModMatrix old_matrix(const CliftonRep& rep, const std::vector<Polynomial>& consequences,
                         IsotypicReport* report = nullptr, std::size_t bound = 0) {
        RepCache cache(rep);
        const std::size_t d = static_cast<std::size_t>(rep.dim());
        const std::size_t b = domain_.size();
        RrefBuilder builder(b * d, field_);
        std::vector<std::uint32_t> row(b * d);
        GroupPoly sym;
        for (const auto& [i, sigma] : symmetries_) {
            sym.clear();
            sym[perm_identity(n_)] = 1;
            sym[sigma] -= 1;
            absorb_blocks(builder, {{i, cache.of(sym)}}, row, d);
        }
        const std::size_t symrank = builder.rank();
        for (const Polynomial& f : consequences) {
            if (bound && builder.rank() >= bound) break;
            if (!expander_.is_identity(f))
                throw std::invalid_argument("a claimed consequence does not expand to zero");
            std::map<int, GroupPoly> comps;
            for (const auto& [m, c] : f.terms()) {
                auto it = domain_index().find(m.skel);
                if (it == domain_index().end())
                    throw std::invalid_argument("consequence term uses a non-canonical skeleton");
                comps[it->second][m.word] += c;
            }
            std::vector<std::pair<int, std::vector<std::uint32_t>>> blocks;
            for (const auto& [j, x] : comps) blocks.emplace_back(j, cache.of(x));
            absorb_blocks(builder, blocks, row, d);
        }
        if (report) {
            report->symrank = symrank;
            report->oldrank = builder.rank();
        }
        return builder.basis();
    }

    /// Full analysis of one partition against the given consequence rows.
    IsotypicReport analyze(const Partition& lambda, const std::vector<Polynomial>& consequences) {
        CliftonRep rep(lambda, field_);
        IsotypicReport report;
        ModMatrix all = all_matrix(rep, &report);
        ModMatrix old = old_matrix(rep, consequences, &report, report.allrank);
        report.all_equals_old = matrices_equal(all, old);
        return report;
    }

    /// Sweep over every partition of n.
    std::vector<IsotypicReport> analyze_all(const std::vector<Polynomial>& consequences) {
        std::vector<IsotypicReport> out;
        for (const Partition& lambda : partitions(n_)) out.push_back(analyze(lambda, consequences));
        return out;
    }

    static bool matrices_equal(const ModMatrix& a, const ModMatrix& b) {
        if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (a(i, j) != b(i, j)) return false;
        return true;
    }

  private:
    const std::map<int, int>& domain_index() {
        if (domain_index_.empty())
            for (std::size_t i = 0; i < domain_.size(); ++i)
                domain_index_.emplace(domain_[i], static_cast<int>(i));
        return domain_index_;
    }

    void absorb_blocks(RrefBuilder& builder,
                       const std::vector<std::pair<int, std::vector<std::uint32_t>>>& blocks,
                       std::vector<std::uint32_t>& row, std::size_t d) {
        for (std::size_t r = 0; r < d; ++r) {
            std::fill(row.begin(), row.end(), 0);
            for (const auto& [j, rx] : blocks)
                std::copy(rx.begin() + static_cast<std::ptrdiff_t>(r * d),
                          rx.begin() + static_cast<std::ptrdiff_t>((r + 1) * d),
                          row.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(j) * d));
            builder.absorb(row);
        }
    }

    // Records one involution per commutative node whose child subtrees are
    // equal: the block swap of the argument positions under that node.
    void collect_symmetries(int s, int off, int skel_index, const OpAlphabet& alpha) {
        TreeArena& A = arena();
        if (A.is_leaf(s)) return;
        const int l = A.left(s), r = A.right(s);
        if (alpha.symmetric(A.op(s)) && l == r) {
            const int la = A.arity(l);
            Perm sigma = perm_identity(n_);
            for (int k = 0; k < la; ++k) {
                sigma[static_cast<std::size_t>(off + k)] = static_cast<std::uint8_t>(off + la + k);
                sigma[static_cast<std::size_t>(off + la + k)] = static_cast<std::uint8_t>(off + k);
            }
            symmetries_.emplace_back(skel_index, std::move(sigma));
        }
        collect_symmetries(l, off, skel_index, alpha);
        collect_symmetries(r, off + A.arity(l), skel_index, alpha);
    }

    Target target_;
    int n_;
    PrimeField field_;
    Expander expander_;
    std::vector<int> domain_;   // BW skeletons, basis order
    std::vector<int> targets_;  // target skeletons, basis order
    std::map<int, int> target_index_;
    std::map<int, int> domain_index_;
    std::vector<std::map<int, GroupPoly>> comp_;     // skeleton -> target block -> element
    std::vector<std::pair<int, Perm>> symmetries_;   // (skeleton index, involution)
};

}  // namespace opident
