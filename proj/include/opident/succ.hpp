#pragma once
/**
 * @file succ.hpp
 * @brief Triplicator and trisuccessor constructions on tree monomials.
 *
 * Both constructions split an identity in one commutative operation into
 * identities in a family of three operations 1, 2, 3.  For a nonempty
 * subset L of the arguments, every internal vertex v of a tree monomial is
 * labeled by the turn directions that the root-to-leaf paths of L take
 * at v:
 *
 *   {left} -> 1,   {right} -> 3,   {left, right} -> 2,   neither -> star.
 *
 * A star vertex is not constrained by L.  Under union semantics
 * (triplicator) each star ranges over the three operations independently,
 * producing one identity per assignment; under sum semantics
 * (trisuccessor) each star expands into the sum of the three replacements
 * inside a single identity.  The commutativity of the input operation
 * induces the symmetries  a 1 b == b 3 a  and  a 2 b == b 2 a,  which
 * eliminate operation 3 entirely; mapping 2 to the commutative operation
 * and 1 to the plain one then lands in the standard two-operation
 * alphabet, in canonical normal form.
 */

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opident/treeops.hpp"

namespace opident {

/// Internal-vertex label for "no path of L passes through this vertex".
constexpr int kStarLabel = 4;

// ---------------------------------------------------------------------------
// Path-turn labeling
// ---------------------------------------------------------------------------

/**
 * Labels each internal vertex of a single-operation tree monomial by the
 * path-turn rule over the argument subset L (variable indices).  The
 * returned monomial has the same shape and word; operation labels are
 * 1, 2, 3 or kStarLabel.
 *
 * Throws std::invalid_argument if L is empty, is not a subset of the
 * monomial's variables, or the monomial uses more than the one
 * (commutative) generating operation.
 */
inline Monomial label_vertices(const Monomial& m, const std::vector<int>& L) {
    TreeArena& A = arena();
    if (L.empty()) throw std::invalid_argument("argument subset must be nonempty");
    const std::set<int> want(L.begin(), L.end());
    const std::set<int> have(m.word.begin(), m.word.end());
    for (int x : want)
        if (!have.count(x))
            throw std::invalid_argument("argument subset is not a subset of the leaves");
    for (int op : inorder_ops(m.skel))
        if (op != 0)
            throw std::invalid_argument("labeling requires a single-operation tree monomial");

    struct Rec {
        TreeArena& A;
        const std::set<int>& want;
        const Perm& word;
        // Returns the labeled subtree and whether it contains a leaf of L.
        std::pair<int, bool> run(int s, int lo) {
            if (A.is_leaf(s)) return {s, want.count(word[lo]) != 0};
            auto [ls, lhit] = run(A.left(s), lo);
            auto [rs, rhit] = run(A.right(s), lo + A.arity(A.left(s)));
            const int label = lhit ? (rhit ? 2 : 1) : (rhit ? 3 : kStarLabel);
            return {A.node(label, ls, rs), lhit || rhit};
        }
    } rec{A, want, m.word};
    return {rec.run(m.skel, 0).first, m.word};
}

/// Rendering of a labeled tree monomial with infix digit operations and '*'
/// for star vertices, e.g. "((a1b)1d)2c".
inline std::string render_labeled(const Monomial& m) {
    TreeArena& A = arena();
    struct Rec {
        TreeArena& A;
        const Perm& word;
        std::string run(int s, int lo, bool outer) {
            if (A.is_leaf(s)) return var_name(word[lo]);
            const int op = A.op(s);
            const char sym = op == kStarLabel ? '*' : static_cast<char>('0' + op);
            std::string out = run(A.left(s), lo, false) + sym +
                              run(A.right(s), lo + A.arity(A.left(s)), false);
            return outer ? out : "(" + out + ")";
        }
    } rec{A, m.word};
    return rec.run(m.skel, 0, true);
}

namespace detail {

/// Number of star vertices in a labeled skeleton.
inline std::size_t count_stars(int s) {
    TreeArena& A = arena();
    if (A.is_leaf(s)) return 0;
    return (A.op(s) == kStarLabel ? 1 : 0) + count_stars(A.left(s)) +
           count_stars(A.right(s));
}

/// Replaces the star vertices (in-order) by choice[k], k = 0, 1, ...
inline int substitute_stars(int s, const std::vector<int>& choice, std::size_t& k) {
    TreeArena& A = arena();
    if (A.is_leaf(s)) return s;
    const int l = substitute_stars(A.left(s), choice, k);
    int op = A.op(s);
    if (op == kStarLabel) op = choice.at(k++);
    const int r = substitute_stars(A.right(s), choice, k);
    return A.node(op, l, r);
}

/// All assignments of operations 1, 2, 3 to the star vertices, in
/// lexicographic order of the assignment word.
inline std::vector<Monomial> star_assignments(const Monomial& labeled) {
    const std::size_t k = count_stars(labeled.skel);
    std::vector<Monomial> out;
    std::vector<int> choice(k, 1);
    for (;;) {
        std::size_t used = 0;
        out.push_back({substitute_stars(labeled.skel, choice, used), labeled.word});
        std::size_t j = k;
        while (j > 0 && choice[j - 1] == 3) choice[--j] = 1;
        if (j == 0) break;
        ++choice[j - 1];
    }
    return out;
}

/// Rewrites a star-free labeled monomial into the two-operation alphabet:
/// 3-vertices swap their operands and become 1; then 2 maps to the
/// commutative operation and 1 to the plain one; normal form at the end.
inline Monomial to_bw_monomial(const Monomial& m) {
    struct Rec {
        TreeArena& A;
        Monomial run(int s, const Perm& word, int lo) {
            if (A.is_leaf(s)) return {s, {word[lo]}};
            Monomial ml = run(A.left(s), word, lo);
            Monomial mr = run(A.right(s), word, lo + A.arity(A.left(s)));
            int op = A.op(s);
            if (op == 3) {
                std::swap(ml, mr);
                op = 1;
            }
            if (op != 1 && op != 2)
                throw std::logic_error("unexpected operation label in rewrite");
            Monomial out{A.node(op == 2 ? 0 : 1, ml.skel, mr.skel), ml.word};
            out.word.insert(out.word.end(), mr.word.begin(), mr.word.end());
            return out;
        }
    } rec{arena()};
    return bw_normal_form(rec.run(m.skel, m.word, 0));
}

/// Distinct variables of an identity's first term (multilinear, so shared
/// by all terms), ascending.
inline std::vector<int> identity_variables(const Polynomial& identity) {
    if (identity.zero()) throw std::invalid_argument("empty identity");
    const Perm& w = identity.terms().begin()->first.word;
    std::set<int> vars(w.begin(), w.end());
    return {vars.begin(), vars.end()};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Union semantics: the triplicator
// ---------------------------------------------------------------------------

/**
 * Applies the path-turn labeling to every term of the identity and
 * enumerates every assignment of operations 1, 2, 3 to the star vertices
 * across all terms (union semantics), one output identity per assignment.
 * Outputs are rewritten into the commutative/plain alphabet in normal form
 * and deduplicated preserving first appearance.
 */
inline std::vector<Polynomial> triplicate(const Polynomial& identity,
                                          const std::vector<int>& L) {
    std::vector<long long> coeff;
    std::vector<std::vector<Monomial>> options;
    for (const auto& [m, c] : identity.terms()) {
        coeff.push_back(c);
        options.push_back(detail::star_assignments(label_vertices(m, L)));
    }
    std::vector<Polynomial> out;
    std::set<Polynomial::Terms> seen;
    std::vector<std::size_t> idx(options.size(), 0);
    for (;;) {
        Polynomial p;
        for (std::size_t i = 0; i < options.size(); ++i)
            p.add(detail::to_bw_monomial(options[i][idx[i]]), coeff[i]);
        if (seen.insert(p.terms()).second) out.push_back(std::move(p));
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == options[j].size()) idx[j++] = 0;
        if (j == idx.size()) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sum semantics: the trisuccessor
// ---------------------------------------------------------------------------

/**
 * The labeled tree polynomial with each star expanded additively: every
 * term contributes one (coefficient, monomial) pair per assignment of its
 * own star vertices.  This is the intermediate tree polynomial before the
 * alphabet rewriting.
 */
inline std::vector<std::pair<long long, Monomial>> trisuccessor_terms(
    const Polynomial& identity, const std::vector<int>& L) {
    std::vector<std::pair<long long, Monomial>> out;
    for (const auto& [m, c] : identity.terms())
        for (const Monomial& t : detail::star_assignments(label_vertices(m, L)))
            out.emplace_back(c, t);
    return out;
}

/// Sum-semantics output rewritten into the commutative/plain alphabet.
inline Polynomial trisuccessor(const Polynomial& identity, const std::vector<int>& L) {
    Polynomial p;
    for (const auto& [c, t] : trisuccessor_terms(identity, L))
        p.add(detail::to_bw_monomial(t), c);
    return p;
}

// ---------------------------------------------------------------------------
// Full runs over all argument subsets
// ---------------------------------------------------------------------------

/// Union-semantics outputs over every nonempty subset of the identity's
/// arguments, deduplicated, subsets enumerated in binary counting order.
inline std::vector<Polynomial> triplicate_all(const Polynomial& identity) {
    const std::vector<int> vars = detail::identity_variables(identity);
    std::vector<Polynomial> out;
    std::set<Polynomial::Terms> seen;
    for (std::size_t mask = 1; mask < (std::size_t{1} << vars.size()); ++mask) {
        std::vector<int> L;
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (mask & (std::size_t{1} << i)) L.push_back(vars[i]);
        for (Polynomial& p : triplicate(identity, L))
            if (seen.insert(p.terms()).second) out.push_back(std::move(p));
    }
    return out;
}

/// Sum-semantics outputs over every nonempty subset of the identity's
/// arguments, deduplicated, subsets enumerated in binary counting order.
inline std::vector<Polynomial> trisuccessor_all(const Polynomial& identity) {
    const std::vector<int> vars = detail::identity_variables(identity);
    std::vector<Polynomial> out;
    std::set<Polynomial::Terms> seen;
    for (std::size_t mask = 1; mask < (std::size_t{1} << vars.size()); ++mask) {
        std::vector<int> L;
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (mask & (std::size_t{1} << i)) L.push_back(vars[i]);
        Polynomial p = trisuccessor(identity, L);
        if (seen.insert(p.terms()).second) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace opident
