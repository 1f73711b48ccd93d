#pragma once
/**
 * targetops.hpp — the two target algebras that multilinear identities are
 * expanded into.
 *
 * Triassociative target: the free algebra on ⊣, ⊥, ⊢ modulo the eleven
 * monomial relations (three associativities, the right-bar and left-bar
 * collapses, three inner compatibilities and the middle relation).  Every
 * relation identifies two skeletons with the same argument order, so the
 * arity-n monomials split into classes of skeletons; the classes are
 * computed by lifting the arity-3 relation pairs one arity at a time
 * (substitution into each argument plus multiplication by a fresh argument
 * on either side) and merging with a union-find.  There are 2^n − 1 classes
 * in arity n, and the class representatives (minimal in the skeleton order)
 * form the target basis.
 *
 * Tridendriform target: the free algebra on ∧, ≺, ≻ modulo the eleven
 * tridendriform relations, handled by a confluent rewriting system with
 * seven rules.  A skeleton is normal when no internal node pairs a left
 * child rooted by a forbidden operation with the node's own operation; the
 * normal skeletons (super-Catalan many) form the target basis.  All rules
 * preserve the left-to-right argument order, so normal forms are computed
 * on skeletons and the argument word is carried along unchanged.
 */

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "opident/treeops.hpp"

namespace opident {

enum class Target { triassociative, tridendriform };

inline const OpAlphabet& target_alphabet(Target t) {
    return t == Target::triassociative ? OpAlphabet::triass() : OpAlphabet::tridend();
}
inline std::string target_name(Target t) {
    return t == Target::triassociative ? "triassociative" : "tridendriform";
}
inline Target target_from_name(const std::string& s) {
    if (s == "triassociative" || s == "triass") return Target::triassociative;
    if (s == "tridendriform" || s == "tridend") return Target::tridendriform;
    throw std::invalid_argument("unknown target: " + s);
}

/// Polynomial in skeletons only (shared argument word).
using SkelPoly = std::map<int, long long>;

// ---------------------------------------------------------------------------
// Triassociative classes
// ---------------------------------------------------------------------------

namespace detail {
/// Replaces the leaf at position `pos` (left-to-right) by `sub`.
inline int replace_leaf(int s, int pos, int sub) {
    TreeArena& A = arena();
    if (A.is_leaf(s)) {
        if (pos != 0) throw std::out_of_range("leaf position");
        return sub;
    }
    int la = A.arity(A.left(s));
    if (pos < la) return A.node(A.op(s), replace_leaf(A.left(s), pos, sub), A.right(s));
    return A.node(A.op(s), A.left(s), replace_leaf(A.right(s), pos - la, sub));
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void merge(int x, int y) { parent[find(x)] = find(y); }
};
}  // namespace detail

/**
 * Skeleton classes of the triassociative target for arities 2..max_arity.
 * Relation pairs are lifted from arity 3: substituting x_i ↦ x_i ∗ x_{k+1}
 * into argument i of both sides (three operations, k arguments) and
 * appending a fresh argument on the right or left (three operations each)
 * turns an arity-k pair into 3k + 6 arity-(k+1) pairs.
 */
class TriassClasses {
  public:
    explicit TriassClasses(int max_arity) : max_arity_(max_arity) {
        if (max_arity < 2) throw std::invalid_argument("max_arity must be >= 2");
        const OpAlphabet& alpha = OpAlphabet::triass();
        per_arity_.resize(max_arity + 1);

        // Arity 2: three singleton classes, no relations.
        build_arity(2, {});

        std::vector<std::pair<int, int>> pairs = base_pairs();
        for (int n = 3; n <= max_arity; ++n) {
            build_arity(n, pairs);
            if (n < max_arity) pairs = lift_pairs(pairs, n, alpha);
        }
    }

    int max_arity() const { return max_arity_; }

    /// Class representatives (minimal skeletons), in skeleton order.
    const std::vector<int>& reps(int n) const { return at(n).reps; }
    /// All skeleton classes; members sorted by skeleton order.
    const std::vector<std::vector<int>>& classes(int n) const { return at(n).classes; }

    /// Representative of the class containing skeleton s.
    int rep_of(int s) const {
        TreeArena& A = arena();
        const auto& tbl = at(A.arity(s)).rep_by_skel;
        auto it = tbl.find(s);
        if (it == tbl.end()) throw std::invalid_argument("not a triassociative skeleton");
        return it->second;
    }

    /// Index of the class of s within reps(arity).
    int class_index(int s) const {
        TreeArena& A = arena();
        const auto& tbl = at(A.arity(s)).class_index_by_skel;
        return tbl.at(s);
    }

    Monomial normalize(const Monomial& m) const { return {rep_of(m.skel), m.word}; }

  private:
    struct PerArity {
        std::vector<int> reps;
        std::vector<std::vector<int>> classes;
        std::map<int, int> rep_by_skel;
        std::map<int, int> class_index_by_skel;
    };

    const PerArity& at(int n) const {
        if (n < 2 || n > max_arity_) throw std::out_of_range("arity out of range");
        return per_arity_[n];
    }

    static std::vector<std::pair<int, int>> base_pairs() {
        const OpAlphabet& a = OpAlphabet::triass();
        auto sk = [&](const char* text) { return parse_monomial(text, a).skel; };
        return {
            {sk("(a-|b)-|c"), sk("a-|(b-|c)")},    // ⊣ associativity
            {sk("a-|(b-|c)"), sk("a-|(b_|_c)")},   // right-bar collapse
            {sk("a-|(b-|c)"), sk("a-|(b|-c)")},    // right-bar collapse
            {sk("(a|-b)-|c"), sk("a|-(b-|c)")},    // inner (⊢,⊣)
            {sk("(a_|_b)-|c"), sk("a_|_(b-|c)")},  // inner (⊥,⊣)
            {sk("(a-|b)_|_c"), sk("a_|_(b|-c)")},  // middle relation
            {sk("(a|-b)_|_c"), sk("a|-(b_|_c)")},  // inner (⊢,⊥)
            {sk("(a_|_b)_|_c"), sk("a_|_(b_|_c)")},// ⊥ associativity
            {sk("(a-|b)|-c"), sk("a|-(b|-c)")},    // left-bar collapse
            {sk("(a_|_b)|-c"), sk("a|-(b|-c)")},   // left-bar collapse
            {sk("(a|-b)|-c"), sk("a|-(b|-c)")},    // ⊢ associativity
        };
    }

    static std::vector<std::pair<int, int>> lift_pairs(
        const std::vector<std::pair<int, int>>& pairs, int k, const OpAlphabet& alpha) {
        TreeArena& A = arena();
        std::vector<std::pair<int, int>> out;
        int x = A.leaf();
        for (auto [s, t] : pairs) {
            for (int pos = 0; pos < k; ++pos)
                for (std::size_t op = 0; op < alpha.ops.size(); ++op) {
                    int sub = A.node(static_cast<int>(op), x, x);
                    out.emplace_back(detail::replace_leaf(s, pos, sub),
                                     detail::replace_leaf(t, pos, sub));
                }
            for (std::size_t op = 0; op < alpha.ops.size(); ++op) {
                out.emplace_back(A.node(static_cast<int>(op), s, x),
                                 A.node(static_cast<int>(op), t, x));
                out.emplace_back(A.node(static_cast<int>(op), x, s),
                                 A.node(static_cast<int>(op), x, t));
            }
        }
        return out;
    }

    void build_arity(int n, const std::vector<std::pair<int, int>>& pairs) {
        std::vector<int> skels = bbb_skeletons(n, OpAlphabet::triass());
        std::map<int, int> index;
        for (std::size_t i = 0; i < skels.size(); ++i) index[skels[i]] = static_cast<int>(i);

        detail::UnionFind uf(skels.size());
        for (auto [s, t] : pairs) uf.merge(index.at(s), index.at(t));

        std::map<int, std::vector<int>> groups;  // root index -> members
        for (std::size_t i = 0; i < skels.size(); ++i)
            groups[uf.find(static_cast<int>(i))].push_back(skels[i]);

        PerArity& pa = per_arity_[n];
        for (auto& [root, members] : groups) {
            std::sort(members.begin(), members.end(),
                      [](int a, int b) { return skeleton_less(a, b); });
            pa.classes.push_back(members);
        }
        std::sort(pa.classes.begin(), pa.classes.end(),
                  [](const std::vector<int>& a, const std::vector<int>& b) {
                      return skeleton_less(a.front(), b.front());
                  });
        for (std::size_t ci = 0; ci < pa.classes.size(); ++ci) {
            int rep = pa.classes[ci].front();
            pa.reps.push_back(rep);
            for (int member : pa.classes[ci]) {
                pa.rep_by_skel[member] = rep;
                pa.class_index_by_skel[member] = static_cast<int>(ci);
            }
        }
    }

    int max_arity_;
    std::vector<PerArity> per_arity_;
};

// ---------------------------------------------------------------------------
// Tridendriform rewriting
// ---------------------------------------------------------------------------

namespace tridend_ops {
constexpr int wedge = 0;  // ∧
constexpr int prec = 1;   // ≺
constexpr int succ = 2;   // ≻
}  // namespace tridend_ops

/// May a node with operation `root` have a left child rooted by `left`?
inline bool tridend_pair_allowed(int left, int root) {
    using namespace tridend_ops;
    return root == succ && (left == wedge || left == prec);
}

/// Is the skeleton in normal form (no forbidden left-child pattern)?
inline bool tridend_normal(int s) {
    TreeArena& A = arena();
    if (A.is_leaf(s)) return true;
    int l = A.left(s);
    if (!A.is_leaf(l) && !tridend_pair_allowed(A.op(l), A.op(s))) return false;
    return tridend_normal(l) && tridend_normal(A.right(s));
}

/**
 * Rewriting engine with memoized skeleton normal forms.  Each of the seven
 * rules rewrites (A ∗ B) ∗' C, where ∗ is the operation of the left child
 * and ∗' the operation at the node, into a combination of right-leaning
 * trees in the same arguments; the argument order never changes.
 */
class TridendRewriter {
  public:
    const SkelPoly& normal_form(int s) {
        auto it = cache_.find(s);
        if (it != cache_.end()) return it->second;
        SkelPoly result = compute(s);
        return cache_.emplace(s, std::move(result)).first->second;
    }

    Polynomial normalize(const Monomial& m) {
        Polynomial out;
        for (const auto& [skel, c] : normal_form(m.skel)) out.add({skel, m.word}, c);
        return out;
    }

  private:
    SkelPoly compute(int s) {
        TreeArena& A = arena();
        if (A.is_leaf(s)) return {{s, 1}};
        SkelPoly l = normal_form(A.left(s));
        SkelPoly r = normal_form(A.right(s));
        SkelPoly out;
        for (const auto& [sl, cl] : l)
            for (const auto& [sr, cr] : r) {
                SkelPoly top = reduce_root(A.op(s), sl, sr);
                for (const auto& [t, ct] : top) {
                    auto [it, fresh] = out.emplace(t, cl * cr * ct);
                    if (!fresh && (it->second += cl * cr * ct) == 0) out.erase(it);
                }
            }
        return out;
    }

    // Normalizes node(op, l, r) whose children are already normal.
    SkelPoly reduce_root(int op, int l, int r) {
        using namespace tridend_ops;
        TreeArena& A = arena();
        if (A.is_leaf(l) || tridend_pair_allowed(A.op(l), op)) return {{A.node(op, l, r), 1}};
        int a = A.left(l), b = A.right(l), c = r;
        int lop = A.op(l);
        auto n = [&](int o, int x, int y) { return A.node(o, x, y); };
        std::vector<std::pair<int, long long>> terms;
        if (lop == prec && op == prec) {
            // (A≺B)≺C → A≺(B≻C) + A≺(B≺C) + A≺(B∧C)
            terms = {{n(prec, a, n(succ, b, c)), 1},
                     {n(prec, a, n(prec, b, c)), 1},
                     {n(prec, a, n(wedge, b, c)), 1}};
        } else if (lop == succ && op == prec) {
            // (A≻B)≺C → A≻(B≺C)
            terms = {{n(succ, a, n(prec, b, c)), 1}};
        } else if (lop == succ && op == succ) {
            // (A≻B)≻C → A≻(B≻C) − (A≺B)≻C − (A∧B)≻C
            terms = {{n(succ, a, n(succ, b, c)), 1},
                     {n(succ, n(prec, a, b), c), -1},
                     {n(succ, n(wedge, a, b), c), -1}};
        } else if (lop == succ && op == wedge) {
            // (A≻B)∧C → A≻(B∧C)
            terms = {{n(succ, a, n(wedge, b, c)), 1}};
        } else if (lop == prec && op == wedge) {
            // (A≺B)∧C → A∧(B≻C)
            terms = {{n(wedge, a, n(succ, b, c)), 1}};
        } else if (lop == wedge && op == prec) {
            // (A∧B)≺C → A∧(B≺C)
            terms = {{n(wedge, a, n(prec, b, c)), 1}};
        } else {  // lop == wedge && op == wedge
            // (A∧B)∧C → A∧(B∧C)
            terms = {{n(wedge, a, n(wedge, b, c)), 1}};
        }
        SkelPoly out;
        for (auto [t, ct] : terms) {
            const SkelPoly& nf = normal_form(t);
            for (const auto& [u, cu] : nf) {
                auto [it, fresh] = out.emplace(u, ct * cu);
                if (!fresh && (it->second += ct * cu) == 0) out.erase(it);
            }
        }
        return out;
    }

    std::map<int, SkelPoly> cache_;
};

inline TridendRewriter& tridend_rewriter() {
    static TridendRewriter r;
    return r;
}

/// Normal skeletons of the given arity, in tridendriform basis order
/// (association types reversed, then operation tuples).
inline std::vector<int> tridend_basis_skeletons(int n) {
    std::vector<int> out;
    for (int s : bbb_skeletons(n, OpAlphabet::tridend(), /*reverse_shapes=*/true))
        if (tridend_normal(s)) out.push_back(s);
    return out;
}

/// Super-Catalan (little Schröder) numbers s(1) = 1, s(2) = 3, s(3) = 11, ...
inline unsigned long long super_catalan(int n) {
    std::vector<unsigned long long> s(n + 1, 0);
    s[1] = 1;
    if (n >= 2) s[2] = 3;
    for (int m = 3; m <= n; ++m)
        s[m] = (3ull * (2 * m - 1) * s[m - 1] - (m - 2) * s[m - 2]) / (m + 1);
    return s[n];
}

// ---------------------------------------------------------------------------
// Target bases
// ---------------------------------------------------------------------------

/// Basis skeletons of the target in arity n, in target basis order.
inline std::vector<int> target_basis_skeletons(Target t, int n, const TriassClasses& tc) {
    if (t == Target::triassociative) return tc.reps(n);
    return tridend_basis_skeletons(n);
}

/// Full multilinear basis of the target: every basis skeleton with every
/// argument word, ordered (skeleton, word lexicographic).
inline std::vector<Monomial> symmetrized_basis(Target t, int n, const TriassClasses& tc) {
    std::vector<Monomial> out;
    for (int s : target_basis_skeletons(t, n, tc))
        for (const Perm& w : all_perms(n)) out.push_back({s, w});
    return out;
}

/// Normalizes a target monomial to a polynomial over basis skeletons.
inline Polynomial target_normalize(Target t, const Monomial& m, const TriassClasses& tc) {
    if (t == Target::triassociative) return Polynomial(tc.normalize(m));
    return tridend_rewriter().normalize(m);
}

}  // namespace opident
