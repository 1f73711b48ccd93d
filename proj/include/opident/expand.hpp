/**
 * Expansion maps and identity modules.
 *
 * The free two-operation operad has a commutative product (written `o`)
 * and a plain product (written `*`).  Both target families carry a
 * commutative "plus" product and a noncommutative "pair" product built
 * from their three operations:
 *
 *   triassociative:  F o G -> F _|_ G + G _|_ F,   F * G -> F -| G + G |- F
 *   tridendriform:   F o G -> F /\ G + G /\ F,     F * G -> F < G + G > F
 *
 * Expanding a multilinear two-operation monomial and rewriting every
 * target monomial to its normal form yields a linear map from the
 * two-operation multilinear space into the symmetrized target space.
 * The kernel of that map consists of the multilinear identities
 * satisfied by the two derived products in every target algebra.
 *
 * This header provides:
 *   - Expander: cached expansion of monomials/polynomials, dense
 *     expansion matrices, kernels with canonical integer-lifted bases;
 *   - consequence generation (the 2n+3 standard liftings to arity n+1);
 *   - ModuleSpan: incremental S_n-module spans over the multilinear
 *     basis, used for membership tests and rank staircases;
 *   - extraction of minimal S_n-module generator sets above a seed
 *     module;
 *   - named identity fixtures serialized as JSON.
 */
#pragma once

#include <opident/exactlin.hpp>
#include <opident/targetops.hpp>
#include <opident/treeops.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace opident {

// ---------------------------------------------------------------------------
// Basis indexing
// ---------------------------------------------------------------------------

/// An ordered monomial basis together with its position lookup.
struct BasisIndex {
    std::vector<Monomial> monomials;
    std::map<Monomial, int> position;

    static BasisIndex make(std::vector<Monomial> ms) {
        BasisIndex b;
        b.monomials = std::move(ms);
        for (std::size_t i = 0; i < b.monomials.size(); ++i)
            b.position.emplace(b.monomials[i], static_cast<int>(i));
        return b;
    }

    std::size_t size() const { return monomials.size(); }

    int at(const Monomial& m) const {
        auto it = position.find(m);
        if (it == position.end())
            throw std::invalid_argument("monomial is not a member of the basis");
        return it->second;
    }
};

/// Shared multilinear basis of the free two-operation operad in arity n.
inline std::shared_ptr<const BasisIndex> bw_basis_index(int n) {
    static std::map<int, std::shared_ptr<const BasisIndex>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        auto b = std::make_shared<BasisIndex>(BasisIndex::make(bw_multilinear_basis(n)));
        it = cache.emplace(n, std::move(b)).first;
    }
    return it->second;
}

/// Coefficient vector of a polynomial with respect to an ordered basis.
inline std::vector<long long> vectorize(const Polynomial& p, const BasisIndex& basis) {
    std::vector<long long> v(basis.size(), 0);
    for (const auto& [m, c] : p.terms()) v[static_cast<std::size_t>(basis.at(m))] = c;
    return v;
}

/// Rewrite every monomial of a two-operation polynomial to canonical form.
inline Polynomial bw_canonicalize(const Polynomial& p,
                                  const OpAlphabet& alpha = OpAlphabet::bw()) {
    Polynomial out;
    for (const auto& [m, c] : p.terms()) out.add(bw_normal_form(m, alpha), c);
    return out;
}

/// True if the monomial uses the given operation index anywhere.
inline bool monomial_uses_op(const Monomial& m, int op) {
    const std::vector<int> ops = inorder_ops(m.skel);
    return std::find(ops.begin(), ops.end(), op) != ops.end();
}

/// Delete every term whose monomial contains the given operation.
inline Polynomial drop_terms_using_op(const Polynomial& p, int op) {
    Polynomial out;
    for (const auto& [m, c] : p.terms())
        if (!monomial_uses_op(m, op)) out.add(m, c);
    return out;
}

// ---------------------------------------------------------------------------
// Expander
// ---------------------------------------------------------------------------

class Expander {
  public:
    /// Builds normal-form tables for the target up to the given arity.
    Expander(Target target, int max_arity)
        : target_(target), max_arity_(max_arity < 3 ? 3 : max_arity),
          classes_(max_arity < 3 ? 3 : max_arity) {}

    Target target() const { return target_; }
    int max_arity() const { return max_arity_; }
    const TriassClasses& classes() const { return classes_; }

    /// Symmetrized normal-form monomial basis of the target in arity n.
    const BasisIndex& target_basis(int n) {
        auto it = target_bases_.find(n);
        if (it == target_bases_.end())
            it = target_bases_
                     .emplace(n, BasisIndex::make(symmetrized_basis(target_, n, classes_)))
                     .first;
        return it->second;
    }

    /// Expansion of one multilinear monomial, normalized in the target.
    Polynomial expand(const Monomial& m) {
        const Polynomial& base = expand_skeleton(m.skel);
        return base.relabeled(m.word);
    }

    /// Linear extension of the expansion to polynomials.
    Polynomial expand(const Polynomial& p) {
        Polynomial out;
        for (const auto& [m, c] : p.terms()) out.add(expand(m), c);
        return out;
    }

    /// True if the polynomial expands to zero, i.e. is an identity
    /// satisfied by the derived products in every target algebra.
    bool is_identity(const Polynomial& p) { return expand(p).zero(); }

    /**
     * Dense expansion matrix in arity n: rows are indexed by the
     * symmetrized target basis, columns by the two-operation multilinear
     * basis; entry (i, j) is the coefficient of target monomial i in the
     * expansion of domain monomial j.
     */
    ModMatrix matrix(int n, const PrimeField& field) {
        check_arity(n);
        const BasisIndex& rows = target_basis(n);
        const BasisIndex& cols = *bw_basis_index(n);
        ModMatrix E(rows.size(), cols.size(), field);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            Polynomial p = expand(cols.monomials[j]);
            for (const auto& [m, c] : p.terms())
                E(static_cast<std::size_t>(rows.at(m)), j) = field.from_int(c);
        }
        return E;
    }

    /// Expansion matrix over the rationals (exact arithmetic).
    RatMatrix matrix_rational(int n) {
        check_arity(n);
        const BasisIndex& rows = target_basis(n);
        const BasisIndex& cols = *bw_basis_index(n);
        RatMatrix E(rows.size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            Polynomial p = expand(cols.monomials[j]);
            for (const auto& [m, c] : p.terms())
                E(static_cast<std::size_t>(rows.at(m)), j) = Rational(c);
        }
        return E;
    }

    struct Kernel {
        std::size_t rank = 0;
        std::size_t nullity = 0;
        /// Canonical nullspace basis as integer-lifted polynomials over
        /// the multilinear basis, in row-canonical order.
        std::vector<Polynomial> basis;
    };

    /// Kernel of the expansion map in arity n over the given prime field.
    Kernel kernel(int n, const PrimeField& field) {
        ModMatrix E = matrix(n, field);
        ModMatrix ns = E.nullspace_canonical();
        Kernel k;
        k.nullity = ns.rows();
        k.rank = E.cols() - k.nullity;
        const BasisIndex& cols = *bw_basis_index(n);
        for (std::size_t i = 0; i < ns.rows(); ++i) {
            Polynomial p;
            for (std::size_t j = 0; j < ns.cols(); ++j)
                if (ns(i, j)) p.add(cols.monomials[j], field.signed_lift(ns(i, j)));
            k.basis.push_back(std::move(p));
        }
        return k;
    }

  private:
    void check_arity(int n) const {
        if (n < 2) throw std::invalid_argument("expansion needs arity >= 2");
        if (n > 5)
            throw std::invalid_argument(
                "dense expansion matrices are supported up to arity 5; "
                "use the isotypic decomposition for arity 6");
        if (n > max_arity_)
            throw std::invalid_argument("Expander was built with a smaller maximum arity");
    }

    /// Expansion of the skeleton with identity word, cached.
    const Polynomial& expand_skeleton(int s) {
        auto it = cache_.find(s);
        if (it != cache_.end()) return it->second;
        TreeArena& A = arena();
        Polynomial out;
        if (A.is_leaf(s)) {
            out.add(Monomial{s, {0}}, 1);
        } else {
            const int n = A.arity(s);
            const int la = A.arity(A.left(s));
            Polynomial L = expand_skeleton(A.left(s));
            // Shift right-subtree variables so the two sides are disjoint.
            Perm shift(static_cast<std::size_t>(n - la));
            for (std::size_t i = 0; i < shift.size(); ++i)
                shift[i] = static_cast<std::uint8_t>(i + static_cast<std::size_t>(la));
            Polynomial R = expand_skeleton(A.right(s)).relabeled(shift);
            // Images of the two domain operations in the target alphabet:
            // pair (target op, operands swapped?).
            std::pair<int, bool> images[2];
            if (A.op(s) == 0) {
                const int plus = target_ == Target::triassociative ? 1 : 0;
                images[0] = {plus, false};
                images[1] = {plus, true};
            } else {
                if (target_ == Target::triassociative) {
                    images[0] = {0, false};  // left bar
                    images[1] = {2, true};   // right bar, operands swapped
                } else {
                    images[0] = {1, false};  // left leaning
                    images[1] = {2, true};   // right leaning, operands swapped
                }
            }
            for (const auto& [op, swapped] : images) {
                const Polynomial& P = swapped ? R : L;
                const Polynomial& Q = swapped ? L : R;
                for (const auto& [mp, cp] : P.terms()) {
                    for (const auto& [mq, cq] : Q.terms()) {
                        Monomial prod;
                        prod.skel = A.node(op, mp.skel, mq.skel);
                        prod.word = mp.word;
                        prod.word.insert(prod.word.end(), mq.word.begin(), mq.word.end());
                        out.add(target_normalize(target_, prod, classes_), cp * cq);
                    }
                }
            }
        }
        return cache_.emplace(s, std::move(out)).first->second;
    }

    Target target_;
    int max_arity_;
    TriassClasses classes_;
    std::map<int, Polynomial> cache_;
    std::map<int, BasisIndex> target_bases_;
};

// ---------------------------------------------------------------------------
// Consequences
// ---------------------------------------------------------------------------

/**
 * The 2n+3 standard liftings of an arity-n identity f(x_0,...,x_{n-1})
 * to arity n+1, each rewritten to the canonical multilinear basis:
 *
 *   f(..., x_i o x_n, ...)  for each i,   then  f o x_n,
 *   f(..., x_i * x_n, ...)  for each i,   then  f * x_n,  x_n * f.
 *
 * (x_n o f is omitted: it equals f o x_n because o is commutative.)
 */
inline std::vector<Polynomial> consequences(const Polynomial& f, int n) {
    TreeArena& A = arena();
    for (const auto& [m, c] : f.terms())
        if (static_cast<int>(m.word.size()) != n)
            throw std::invalid_argument("identity arity does not match n");

    auto substituted = [&](int var, int op) {
        Polynomial out;
        for (const auto& [m, c] : f.terms()) {
            int pos = -1;
            for (std::size_t i = 0; i < m.word.size(); ++i)
                if (m.word[i] == var) pos = static_cast<int>(i);
            Monomial s;
            s.skel = detail::replace_leaf(m.skel, pos, A.node(op, A.leaf(), A.leaf()));
            s.word = m.word;
            s.word.insert(s.word.begin() + pos + 1, static_cast<std::uint8_t>(n));
            out.add(bw_normal_form(s), c);
        }
        return out;
    };
    auto appended = [&](int op, bool new_var_left) {
        Polynomial out;
        for (const auto& [m, c] : f.terms()) {
            Monomial s;
            if (new_var_left) {
                s.skel = A.node(op, A.leaf(), m.skel);
                s.word.push_back(static_cast<std::uint8_t>(n));
                s.word.insert(s.word.end(), m.word.begin(), m.word.end());
            } else {
                s.skel = A.node(op, m.skel, A.leaf());
                s.word = m.word;
                s.word.push_back(static_cast<std::uint8_t>(n));
            }
            out.add(bw_normal_form(s), c);
        }
        return out;
    };

    std::vector<Polynomial> out;
    for (int i = 0; i < n; ++i) out.push_back(substituted(i, 0));
    out.push_back(appended(0, false));
    for (int i = 0; i < n; ++i) out.push_back(substituted(i, 1));
    out.push_back(appended(1, false));
    out.push_back(appended(1, true));
    return out;
}

// ---------------------------------------------------------------------------
// S_n-module spans
// ---------------------------------------------------------------------------

/// Incremental span of identity vectors, closed under relabeling when
/// grown with add_orbit.  Vectors live over the multilinear basis.
class ModuleSpan {
  public:
    ModuleSpan(std::shared_ptr<const BasisIndex> basis, int n, const PrimeField& field)
        : basis_(std::move(basis)), field_(field), builder_(basis_->size(), field),
          perms_(all_perms(n)) {}

    /// Convenience: span over the arity-n two-operation basis.
    ModuleSpan(int n, const PrimeField& field) : ModuleSpan(bw_basis_index(n), n, field) {}

    std::size_t rank() const { return builder_.rank(); }

    bool contains(const Polynomial& p) const {
        return !builder_.independent(to_row(p));
    }

    /// Absorb one vector; true if the rank grew.
    bool add(const Polynomial& p) { return builder_.absorb(to_row(p)); }

    /// Absorb the whole relabeling orbit; true if the rank grew.
    bool add_orbit(const Polynomial& p) {
        bool grew = false;
        for (const Perm& tau : perms_) grew |= builder_.absorb(to_row(p.relabeled(tau)));
        return grew;
    }

    const BasisIndex& basis() const { return *basis_; }

  private:
    /// Relabeled polynomials need renormalizing, so reduce every term to
    /// canonical form before the basis lookup.
    std::vector<std::uint32_t> to_row(const Polynomial& p) const {
        std::vector<std::uint32_t> row(basis_->size(), 0);
        for (const auto& [m, c] : p.terms()) {
            const auto j = static_cast<std::size_t>(basis_->at(bw_normal_form(m)));
            row[j] = field_.reduce(row[j] + field_.from_int(c));
        }
        return row;
    }

    std::shared_ptr<const BasisIndex> basis_;
    PrimeField field_;
    RrefBuilder builder_;
    std::vector<Perm> perms_;
};

/// Rank of the module generated by the relabeling orbits of the given
/// polynomials (optionally above seed polynomials, also taken as orbits).
inline std::size_t module_rank(const std::vector<Polynomial>& generators, int n,
                               const PrimeField& field,
                               const std::vector<Polynomial>& seeds = {}) {
    ModuleSpan span(n, field);
    for (const Polynomial& s : seeds) span.add_orbit(s);
    for (const Polynomial& g : generators) span.add_orbit(g);
    return span.rank();
}

/// True if two generator lists generate the same S_n-module (above the
/// common seed module).
inline bool module_equal(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b,
                         int n, const PrimeField& field,
                         const std::vector<Polynomial>& seeds = {}) {
    const std::size_t ra = module_rank(a, n, field, seeds);
    const std::size_t rb = module_rank(b, n, field, seeds);
    if (ra != rb) return false;
    std::vector<Polynomial> both = a;
    both.insert(both.end(), b.begin(), b.end());
    return module_rank(both, n, field, seeds) == ra;
}

// ---------------------------------------------------------------------------
// Generator extraction
// ---------------------------------------------------------------------------

struct GeneratorScan {
    /// Candidates kept by the greedy orbit scan, in scan order.
    std::vector<Polynomial> scanned;
    /// Module rank after absorbing each kept candidate's orbit.
    std::vector<std::size_t> ranks;
    /// Positions (into scanned) surviving the minimality pass.
    std::vector<std::size_t> kept_positions;
    /// The minimal generator set.
    std::vector<Polynomial> generators;
};

/**
 * Extract a minimal set of S_n-module generators for the span of the
 * candidates' orbits above the seed module.
 *
 * The greedy pass walks the candidates (optionally pre-sorted by
 * ascending term count, ties kept stable) and keeps each whose orbit
 * grows the span.  The minimality pass then removes, front to back,
 * any kept candidate whose omission leaves the final rank unchanged.
 */
inline GeneratorScan module_generators(const std::vector<Polynomial>& candidates,
                                       const std::vector<Polynomial>& seeds, int n,
                                       const PrimeField& field, bool sort_by_term_count) {
    std::vector<Polynomial> order = candidates;
    if (sort_by_term_count)
        std::stable_sort(order.begin(), order.end(),
                         [](const Polynomial& a, const Polynomial& b) {
                             return a.term_count() < b.term_count();
                         });

    GeneratorScan scan;
    {
        ModuleSpan span(n, field);
        for (const Polynomial& s : seeds) span.add_orbit(s);
        for (const Polynomial& f : order) {
            if (span.add_orbit(f)) {
                scan.scanned.push_back(f);
                scan.ranks.push_back(span.rank());
            }
        }
    }
    const std::size_t full = scan.ranks.empty() ? module_rank({}, n, field, seeds)
                                                : scan.ranks.back();

    std::vector<bool> removed(scan.scanned.size(), false);
    for (std::size_t i = 0; i < scan.scanned.size(); ++i) {
        ModuleSpan span(n, field);
        for (const Polynomial& s : seeds) span.add_orbit(s);
        for (std::size_t j = 0; j < scan.scanned.size(); ++j)
            if (j != i && !removed[j]) span.add_orbit(scan.scanned[j]);
        if (span.rank() == full) removed[i] = true;
    }
    for (std::size_t i = 0; i < scan.scanned.size(); ++i) {
        if (!removed[i]) {
            scan.kept_positions.push_back(i);
            scan.generators.push_back(scan.scanned[i]);
        }
    }
    return scan;
}

/**
 * One-by-one filter: walk the candidates in order and keep each vector
 * (not its orbit) that is independent of the seed module plus the
 * previously kept vectors.  The kept vectors represent a basis of the
 * quotient of the candidate span by the seed module.
 */
inline std::vector<Polynomial> quotient_basis_rows(const std::vector<Polynomial>& candidates,
                                                   const std::vector<Polynomial>& seeds, int n,
                                                   const PrimeField& field) {
    ModuleSpan span(n, field);
    for (const Polynomial& s : seeds) span.add_orbit(s);
    std::vector<Polynomial> kept;
    for (const Polynomial& f : candidates)
        if (span.add(f)) kept.push_back(f);
    return kept;
}

// ---------------------------------------------------------------------------
// Named identities and JSON fixtures
// ---------------------------------------------------------------------------

struct NamedIdentity {
    std::string name;
    int arity = 0;
    Polynomial poly;
};

/// Parse {"name", "arity", "terms": [{"c", "m"}...]} into a canonical
/// polynomial over the multilinear basis.
inline NamedIdentity identity_from_json(const nlohmann::json& j,
                                        const OpAlphabet& alpha = OpAlphabet::bw()) {
    NamedIdentity id;
    id.name = j.at("name").get<std::string>();
    id.arity = j.at("arity").get<int>();
    for (const auto& t : j.at("terms")) {
        const Monomial m = parse_monomial(t.at("m").get<std::string>(), alpha);
        if (static_cast<int>(m.word.size()) != id.arity)
            throw std::invalid_argument("identity '" + id.name + "': term arity mismatch");
        id.poly.add(bw_normal_form(m, alpha), t.at("c").get<long long>());
    }
    if (id.poly.zero())
        throw std::invalid_argument("identity '" + id.name + "' collapses to zero");
    return id;
}

inline nlohmann::json identity_to_json(const NamedIdentity& id, const Charset& cs,
                                       const OpAlphabet& alpha = OpAlphabet::bw()) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : id.poly.terms())
        terms.push_back({{"c", c}, {"m", render(m, alpha, cs)}});
    return {{"name", id.name}, {"arity", id.arity}, {"terms", terms}};
}

/// Load a JSON identity file: {"schema": 1, "identities": [...]}.
inline std::vector<NamedIdentity> load_identity_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open identity file: " + path);
    nlohmann::json j;
    in >> j;
    if (j.value("schema", 0) != 1)
        throw std::runtime_error("unsupported identity file schema in " + path);
    std::vector<NamedIdentity> out;
    for (const auto& e : j.at("identities")) out.push_back(identity_from_json(e));
    return out;
}

/// Root of the installed data directory (identity and presentation files).
inline std::string data_dir() {
#ifdef OPIDENT_DATA_DIR
    return OPIDENT_DATA_DIR;
#else
    return "data";
#endif
}

inline const NamedIdentity& find_identity(const std::vector<NamedIdentity>& ids,
                                          const std::string& name) {
    for (const NamedIdentity& id : ids)
        if (id.name == name) return id;
    throw std::invalid_argument("no identity named '" + name + "'");
}

}  // namespace opident
