#pragma once
/**
 * treeops.hpp — planar binary trees, operation alphabets, skeleton orders,
 * multilinear monomials and polynomials.
 *
 * A *skeleton* is a complete binary tree whose internal nodes carry
 * operation symbols from an alphabet; skeletons are hash-consed into a
 * global arena so equality is pointer (id) equality.  A *monomial* is a
 * skeleton plus a word assigning a variable to each leaf, left to right.
 *
 * The file provides:
 *   - association types (shapes) with the right-factor-first degree-lex
 *     order, and alphabet skeleton orders built on top of it;
 *   - the two-operation symmetric alphabet {∘ commutative, • plain} with
 *     its special skeleton order (commutative-rooted trees first, larger
 *     left arity first) and the canonical-form normal form that orients
 *     every commutative node;
 *   - canonical skeleton and multilinear-basis enumeration, per-skeleton
 *     symmetry counts and symmetry generators;
 *   - rendering and parsing of monomials (Unicode and ASCII operation
 *     glyphs), and integer-coefficient polynomials over monomials.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace opident {

// ---------------------------------------------------------------------------
// Alphabets
// ---------------------------------------------------------------------------

enum class OpSymmetry { none, commutative, anticommutative };

struct OpInfo {
    std::string unicode;  // display glyph
    std::string ascii;    // ASCII fallback glyph (also accepted by the parser)
    OpSymmetry sym;
};

struct OpAlphabet {
    std::string name;
    std::vector<OpInfo> ops;

    bool commutative(int op) const { return ops.at(op).sym == OpSymmetry::commutative; }
    bool anticommutative(int op) const { return ops.at(op).sym == OpSymmetry::anticommutative; }
    bool symmetric(int op) const { return commutative(op) || anticommutative(op); }

    /// Two-operation symmetric alphabet: x∘y commutative, x•y plain.
    static const OpAlphabet& bw() {
        static const OpAlphabet a{"bw",
                                  {{"∘", "o", OpSymmetry::commutative},
                                   {"•", "*", OpSymmetry::none}}};
        return a;
    }
    /// Triassociative operations, in basis order.
    static const OpAlphabet& triass() {
        static const OpAlphabet a{"triass",
                                  {{"⊣", "-|", OpSymmetry::none},
                                   {"⊥", "_|_", OpSymmetry::none},
                                   {"⊢", "|-", OpSymmetry::none}}};
        return a;
    }
    /// Tridendriform operations, in basis order.
    static const OpAlphabet& tridend() {
        static const OpAlphabet a{"tridend",
                                  {{"∧", "/\\", OpSymmetry::none},
                                   {"≺", "<", OpSymmetry::none},
                                   {"≻", ">", OpSymmetry::none}}};
        return a;
    }
};

// ---------------------------------------------------------------------------
// Hash-consed skeletons
// ---------------------------------------------------------------------------

/// Global arena of hash-consed binary trees.  Node 0 is the unique leaf.
/// Ids are only meaningful within a process; every externally visible
/// ordering is structural, never by id.
class TreeArena {
  public:
    static constexpr int kLeafOp = -1;

    TreeArena() { nodes_.push_back({kLeafOp, -1, -1, 1}); }

    int leaf() const { return 0; }
    bool is_leaf(int s) const { return s == 0; }

    int node(int op, int l, int r) {
        auto key = std::make_tuple(op, l, r);
        auto it = index_.find(key);
        if (it != index_.end()) return it->second;
        int id = static_cast<int>(nodes_.size());
        nodes_.push_back({op, l, r, nodes_[l].arity + nodes_[r].arity});
        index_.emplace(key, id);
        return id;
    }

    int op(int s) const { return nodes_[s].op; }
    int left(int s) const { return nodes_[s].left; }
    int right(int s) const { return nodes_[s].right; }
    int arity(int s) const { return nodes_[s].arity; }

  private:
    struct Node {
        int op, left, right, arity;
    };
    std::vector<Node> nodes_;
    std::map<std::tuple<int, int, int>, int> index_;
};

inline TreeArena& arena() {
    static TreeArena a;
    return a;
}

/// Shape (association type): the skeleton with all operation labels erased.
inline int shape_of(int s) {
    TreeArena& A = arena();
    if (A.is_leaf(s)) return s;
    return A.node(0, shape_of(A.left(s)), shape_of(A.right(s)));
}

/// Operation labels in infix (in-order) reading order.
inline void inorder_ops(int s, std::vector<int>& out) {
    TreeArena& A = arena();
    if (A.is_leaf(s)) return;
    inorder_ops(A.left(s), out);
    out.push_back(A.op(s));
    inorder_ops(A.right(s), out);
}
inline std::vector<int> inorder_ops(int s) {
    std::vector<int> out;
    inorder_ops(s, out);
    return out;
}

/**
 * Degree-lexicographic order on shapes comparing the right factor first:
 * smaller arity precedes; for equal arity, f = f1 f2 and g = g1 g2 are
 * compared by (f2 vs g2), then (f1 vs g1).  At arity 4 this lists
 * ((xx)x)x, (x(xx))x, (xx)(xx), x((xx)x), x(x(xx)).
 */
inline int shape_cmp(int a, int b) {
    TreeArena& A = arena();
    if (a == b) return 0;
    if (A.arity(a) != A.arity(b)) return A.arity(a) < A.arity(b) ? -1 : 1;
    // Same arity, not equal: neither is a leaf.
    if (int c = shape_cmp(A.right(a), A.right(b))) return c;
    return shape_cmp(A.left(a), A.left(b));
}
inline bool shape_less(int a, int b) { return shape_cmp(a, b) < 0; }

/// Skeleton order: association type first (forward or reversed shape order),
/// then infix operation tuple lexicographically by alphabet index.
inline bool skeleton_less(int a, int b, bool reverse_shapes = false) {
    int sa = shape_of(a), sb = shape_of(b);
    if (sa != sb) {
        int c = shape_cmp(sa, sb);
        return reverse_shapes ? c > 0 : c < 0;
    }
    return inorder_ops(a) < inorder_ops(b);
}

// ---------------------------------------------------------------------------
// The symmetric two-operation skeleton order and canonical forms
// ---------------------------------------------------------------------------

/**
 * Skeleton order ≪ for the two-operation symmetric alphabet: trees rooted
 * by an earlier alphabet operation come first; with equal root operations,
 * larger left arity first, then left subtrees, then right subtrees.
 */
inline bool bw_skeleton_less(int a, int b) {
    TreeArena& A = arena();
    if (a == b) return false;
    bool la = A.is_leaf(a), lb = A.is_leaf(b);
    if (la || lb) return A.arity(a) < A.arity(b);  // only across arities
    if (A.op(a) != A.op(b)) return A.op(a) < A.op(b);
    int fa = A.left(a), fb = A.left(b);
    if (A.arity(fa) != A.arity(fb)) return A.arity(fa) > A.arity(fb);
    if (fa != fb) return bw_skeleton_less(fa, fb);
    return bw_skeleton_less(A.right(a), A.right(b));
}

/// Is every symmetric node oriented canonically (left arity >= right arity,
/// and for equal arities the left subtree not after the right)?
inline bool bw_skeleton_canonical(int s, const OpAlphabet& alpha) {
    TreeArena& A = arena();
    if (A.is_leaf(s)) return true;
    int l = A.left(s), r = A.right(s);
    if (alpha.symmetric(A.op(s))) {
        if (A.arity(l) < A.arity(r)) return false;
        if (A.arity(l) == A.arity(r) && bw_skeleton_less(r, l)) return false;
    }
    return bw_skeleton_canonical(l, alpha) && bw_skeleton_canonical(r, alpha);
}

/// All canonical skeletons of the given arity over a (possibly symmetric)
/// alphabet, sorted by ≪.
inline std::vector<int> bw_skeletons(int n, const OpAlphabet& alpha = OpAlphabet::bw()) {
    TreeArena& A = arena();
    std::vector<std::vector<int>> table(n + 1);
    table[1] = {A.leaf()};
    for (int m = 2; m <= n; ++m) {
        std::vector<int> out;
        for (std::size_t op = 0; op < alpha.ops.size(); ++op)
            for (int k = 1; k < m; ++k) {
                if (alpha.symmetric(static_cast<int>(op)) && k < m - k)
                    continue;  // canonical orientation: left arity >= right
                for (int l : table[k])
                    for (int r : table[m - k]) {
                        if (alpha.symmetric(static_cast<int>(op)) && k == m - k &&
                            bw_skeleton_less(r, l))
                            continue;
                        out.push_back(A.node(static_cast<int>(op), l, r));
                    }
            }
        std::sort(out.begin(), out.end(), bw_skeleton_less);
        table[m] = std::move(out);
    }
    return table[n];
}

/// Number of symmetric nodes whose two child skeletons are equal.
inline int symmetry_count(int s, const OpAlphabet& alpha = OpAlphabet::bw()) {
    TreeArena& A = arena();
    if (A.is_leaf(s)) return 0;
    int c = symmetry_count(A.left(s), alpha) + symmetry_count(A.right(s), alpha);
    if (alpha.symmetric(A.op(s)) && A.left(s) == A.right(s)) ++c;
    return c;
}

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

using Perm = std::vector<std::uint8_t>;  // p[i] = image of i (0-based)

inline Perm perm_identity(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}
/// (p ∘ q)(i) = p(q(i)).
inline Perm perm_compose(const Perm& p, const Perm& q) {
    Perm r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
}
inline Perm perm_inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint8_t>(i);
    return r;
}
inline int perm_sign(const Perm& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
    return inv % 2 ? -1 : 1;
}
/// All permutations of n symbols in lexicographic order.
inline std::vector<Perm> all_perms(int n) {
    std::vector<Perm> out;
    Perm p = perm_identity(n);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// ---------------------------------------------------------------------------
// Monomials and polynomials
// ---------------------------------------------------------------------------

/// A multilinear monomial: skeleton plus the variable at each leaf position.
struct Monomial {
    int skel = 0;
    Perm word;  // word[leaf position] = variable index

    bool operator==(const Monomial& o) const { return skel == o.skel && word == o.word; }
    bool operator<(const Monomial& o) const {
        return std::tie(skel, word) < std::tie(o.skel, o.word);
    }
};

/// Relabeling action: variable i becomes tau(i).
inline Monomial relabel(const Monomial& m, const Perm& tau) {
    Monomial r = m;
    for (auto& v : r.word) v = tau[v];
    return r;
}

/// Integer-coefficient polynomial in multilinear monomials.
class Polynomial {
  public:
    using Terms = std::map<Monomial, long long>;

    Polynomial() = default;
    explicit Polynomial(const Monomial& m, long long c = 1) { add(m, c); }

    void add(const Monomial& m, long long c) {
        if (!c) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted && (it->second += c) == 0) terms_.erase(it);
    }
    void add(const Polynomial& p, long long c = 1) {
        for (const auto& [m, k] : p.terms_) add(m, k * c);
    }
    Polynomial scaled(long long c) const {
        Polynomial r;
        for (const auto& [m, k] : terms_) r.add(m, k * c);
        return r;
    }
    Polynomial relabeled(const Perm& tau) const {
        Polynomial r;
        for (const auto& [m, k] : terms_) r.add(relabel(m, tau), k);
        return r;
    }

    bool zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  private:
    Terms terms_;
};

/**
 * Canonical-form normal form over a symmetric alphabet: recursively orient
 * every symmetric node (larger arity left; for equal arities smaller
 * skeleton left, then smaller variable word left).  For anticommutative
 * operations each swap flips the sign; `sign` receives the product.
 */
inline Monomial bw_normal_form(const Monomial& m, int& sign,
                               const OpAlphabet& alpha = OpAlphabet::bw()) {
    TreeArena& A = arena();
    sign = 1;
    struct Rec {
        const OpAlphabet& alpha;
        TreeArena& A;
        int sign = 1;
        // Normalizes the subtree at skeleton s over word[lo, lo+arity).
        Monomial run(int s, const Perm& word, int lo) {
            if (A.is_leaf(s)) return {s, {word[lo]}};
            int l = A.left(s), r = A.right(s);
            Monomial ml = run(l, word, lo);
            Monomial mr = run(r, word, lo + A.arity(l));
            if (alpha.symmetric(A.op(s))) {
                bool swap = false;
                if (A.arity(ml.skel) != A.arity(mr.skel))
                    swap = A.arity(ml.skel) < A.arity(mr.skel);
                else if (ml.skel != mr.skel)
                    swap = bw_skeleton_less(mr.skel, ml.skel);
                else
                    swap = mr.word < ml.word;
                if (swap) {
                    std::swap(ml, mr);
                    if (alpha.anticommutative(A.op(s))) sign = -sign;
                }
            }
            Monomial out{A.node(A.op(s), ml.skel, mr.skel), ml.word};
            out.word.insert(out.word.end(), mr.word.begin(), mr.word.end());
            return out;
        }
    } rec{alpha, A};
    Monomial out = rec.run(m.skel, m.word, 0);
    sign = rec.sign;
    return out;
}
inline Monomial bw_normal_form(const Monomial& m, const OpAlphabet& alpha = OpAlphabet::bw()) {
    int sign = 1;
    Monomial r = bw_normal_form(m, sign, alpha);
    if (sign != 1) throw std::logic_error("sign change under commutative normal form");
    return r;
}

/// Is the monomial already in canonical form (and with sign +1)?
inline bool bw_monomial_canonical(const Monomial& m, const OpAlphabet& alpha = OpAlphabet::bw()) {
    int sign = 1;
    return bw_normal_form(m, sign, alpha) == m && sign == 1;
}

/**
 * Canonical multilinear basis: skeletons in ≪ order; within a skeleton the
 * canonical words in lexicographic order.  Its size is Σ_β n!/2^{s(β)} for
 * the two-operation symmetric alphabet.
 */
inline std::vector<Monomial> bw_multilinear_basis(int n,
                                                  const OpAlphabet& alpha = OpAlphabet::bw()) {
    std::vector<Monomial> out;
    std::vector<Perm> perms = all_perms(n);
    for (int s : bw_skeletons(n, alpha))
        for (const Perm& w : perms) {
            Monomial m{s, w};
            if (bw_monomial_canonical(m, alpha)) out.push_back(m);
        }
    return out;
}

/// Leaf positions covered by the subtree rooted at the node reached by
/// `path` (0 = go left, 1 = go right) from the root of s.
inline std::pair<int, int> leaf_span(int s, const std::vector<int>& path) {
    TreeArena& A = arena();
    int lo = 0;
    for (int step : path) {
        if (step == 0) {
            s = A.left(s);
        } else {
            lo += A.arity(A.left(s));
            s = A.right(s);
        }
    }
    return {lo, lo + A.arity(s)};
}

/**
 * Symmetry generators of arity-n canonical skeletons: one position
 * permutation per symmetric node with equal child skeletons, swapping the
 * two leaf blocks.  Returned as (index into bw_skeletons(n), permutation).
 */
inline std::vector<std::pair<int, Perm>> skeleton_symmetries(
    int n, const OpAlphabet& alpha = OpAlphabet::bw()) {
    TreeArena& A = arena();
    std::vector<std::pair<int, Perm>> out;
    std::vector<int> skels = bw_skeletons(n, alpha);
    for (std::size_t idx = 0; idx < skels.size(); ++idx) {
        struct Walk {
            TreeArena& A;
            const OpAlphabet& alpha;
            std::vector<std::pair<int, int>>& spans;  // (lo, block length)
            void run(int s, int lo) {
                if (A.is_leaf(s)) return;
                int l = A.left(s), r = A.right(s);
                if (alpha.symmetric(A.op(s)) && l == r) spans.emplace_back(lo, A.arity(l));
                run(l, lo);
                run(r, lo + A.arity(l));
            }
        };
        std::vector<std::pair<int, int>> spans;
        Walk{A, alpha, spans}.run(skels[idx], 0);
        for (auto [lo, k] : spans) {
            Perm rho = perm_identity(n);
            for (int i = 0; i < k; ++i) std::swap(rho[lo + i], rho[lo + k + i]);
            out.emplace_back(static_cast<int>(idx), rho);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Plain (non-symmetric) skeleton enumeration
// ---------------------------------------------------------------------------

/// All shapes of the given arity in shape order.
inline std::vector<int> all_shapes(int n) {
    TreeArena& A = arena();
    std::vector<std::vector<int>> table(n + 1);
    table[1] = {A.leaf()};
    for (int m = 2; m <= n; ++m) {
        std::vector<int> out;
        for (int k = 1; k < m; ++k)
            for (int l : table[k])
                for (int r : table[m - k]) out.push_back(A.node(0, l, r));
        std::sort(out.begin(), out.end(), shape_less);
        table[m] = std::move(out);
    }
    return table[n];
}

/**
 * All skeletons of the given arity over a plain alphabet:
 * |ops|^(n-1) * Catalan(n-1) trees, ordered by association type (forward or
 * reversed shape order) then infix operation tuple.
 */
inline std::vector<int> bbb_skeletons(int n, const OpAlphabet& alpha,
                                      bool reverse_shapes = false) {
    TreeArena& A = arena();
    std::vector<std::vector<int>> table(n + 1);
    table[1] = {A.leaf()};
    for (int m = 2; m <= n; ++m) {
        std::vector<int> out;
        for (int k = 1; k < m; ++k)
            for (int l : table[k])
                for (int r : table[m - k])
                    for (std::size_t op = 0; op < alpha.ops.size(); ++op)
                        out.push_back(A.node(static_cast<int>(op), l, r));
        table[m] = std::move(out);
    }
    std::vector<int> out = table[n];
    std::sort(out.begin(), out.end(),
              [&](int a, int b) { return skeleton_less(a, b, reverse_shapes); });
    return out;
}

// ---------------------------------------------------------------------------
// Counting helpers
// ---------------------------------------------------------------------------

/// Number of binary shapes: Catalan(n-1).
inline unsigned long long catalan_shapes(int n) {
    std::vector<unsigned long long> c(n, 0);
    c[0] = 1;
    for (int m = 1; m < n; ++m)
        for (int k = 0; k < m; ++k) c[m] += c[k] * c[m - 1 - k];
    return c[n - 1];
}

/// Number of shapes with one commutative operation (unordered binary trees).
inline unsigned long long wedderburn_etherington(int n) {
    std::vector<unsigned long long> w(n + 1, 0);
    w[1] = 1;
    for (int m = 2; m <= n; ++m) {
        unsigned long long total = 0;
        for (int k = 1; k < m - k; ++k) total += w[k] * w[m - k];
        if (m % 2 == 0) total += w[m / 2] * (w[m / 2] + 1) / 2;
        w[m] = total;
    }
    return w[n];
}

/// Dimension of the arity-n multilinear component over the symmetric
/// two-operation alphabet, by the per-skeleton symmetry count.
inline unsigned long long bw_dimension(int n) {
    unsigned long long fact = 1;
    for (int k = 2; k <= n; ++k) fact *= static_cast<unsigned long long>(k);
    unsigned long long total = 0;
    for (int s : bw_skeletons(n)) total += fact >> symmetry_count(s);
    return total;
}

// ---------------------------------------------------------------------------
// Rendering and parsing
// ---------------------------------------------------------------------------

enum class Charset { unicode, ascii };

inline std::string var_name(int i) {
    if (i < 0 || i > 25) throw std::out_of_range("variable index");
    return std::string(1, static_cast<char>('a' + i));
}

inline std::string render(const Monomial& m, const OpAlphabet& alpha,
                          Charset cs = Charset::unicode) {
    TreeArena& A = arena();
    struct Rec {
        TreeArena& A;
        const OpAlphabet& alpha;
        Charset cs;
        const Perm& word;
        std::string run(int s, int lo, bool outer) {
            if (A.is_leaf(s)) return var_name(word[lo]);
            const OpInfo& op = alpha.ops.at(A.op(s));
            std::string g = cs == Charset::unicode ? op.unicode : op.ascii;
            std::string body = run(A.left(s), lo, false) + g +
                               run(A.right(s), lo + A.arity(A.left(s)), false);
            return outer ? body : "(" + body + ")";
        }
    } rec{A, alpha, cs, m.word};
    return rec.run(m.skel, 0, true);
}

/// Renders a bare skeleton with every leaf shown as "x".
inline std::string render_skeleton(int s, const OpAlphabet& alpha,
                                   Charset cs = Charset::unicode) {
    TreeArena& A = arena();
    struct Rec {
        TreeArena& A;
        const OpAlphabet& alpha;
        Charset cs;
        std::string run(int s, bool outer) {
            if (A.is_leaf(s)) return "x";
            const OpInfo& op = alpha.ops.at(A.op(s));
            std::string g = cs == Charset::unicode ? op.unicode : op.ascii;
            std::string body = run(A.left(s), false) + g + run(A.right(s), false);
            return outer ? body : "(" + body + ")";
        }
    } rec{A, alpha, cs};
    return rec.run(s, true);
}

inline std::string render(const Polynomial& p, const OpAlphabet& alpha,
                          Charset cs = Charset::unicode) {
    if (p.zero()) return "0";
    std::vector<std::pair<Monomial, long long>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.first.skel != b.first.skel) return skeleton_less(a.first.skel, b.first.skel);
        return a.first.word < b.first.word;
    });
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms) {
        long long k = c;
        if (first) {
            if (k < 0) { out += "-"; k = -k; }
        } else {
            out += k < 0 ? " - " : " + ";
            if (k < 0) k = -k;
        }
        if (k != 1) out += std::to_string(k);
        out += render(m, alpha, cs);
        first = false;
    }
    return out;
}

/// Parses a fully parenthesized monomial such as "((a o b) o d) o c" or
/// "(a∘b)∘c".  Both Unicode and ASCII glyphs are accepted.
inline Monomial parse_monomial(const std::string& text, const OpAlphabet& alpha) {
    struct Parser {
        const std::string& s;
        const OpAlphabet& alpha;
        std::size_t pos = 0;

        void skip_ws() {
            while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
        }
        [[noreturn]] void fail(const std::string& what) {
            throw std::invalid_argument("parse error at offset " + std::to_string(pos) + ": " +
                                        what + " in \"" + s + "\"");
        }
        int match_op() {
            skip_ws();
            int best = -1;
            std::size_t best_len = 0;
            for (std::size_t i = 0; i < alpha.ops.size(); ++i)
                for (const std::string* g : {&alpha.ops[i].unicode, &alpha.ops[i].ascii})
                    if (g->size() > best_len && s.compare(pos, g->size(), *g) == 0) {
                        best = static_cast<int>(i);
                        best_len = g->size();
                    }
            if (best >= 0) pos += best_len;
            return best;
        }
        Monomial primary() {
            skip_ws();
            if (pos >= s.size()) fail("unexpected end");
            if (s[pos] == '(') {
                ++pos;
                Monomial m = expression();
                skip_ws();
                if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
                ++pos;
                return m;
            }
            if (s[pos] >= 'a' && s[pos] <= 'z') {
                Monomial m{arena().leaf(), {static_cast<std::uint8_t>(s[pos] - 'a')}};
                ++pos;
                return m;
            }
            fail("expected variable or '('");
        }
        Monomial expression() {
            Monomial l = primary();
            skip_ws();
            std::size_t save = pos;
            int op = match_op();
            if (op < 0) { pos = save; return l; }
            Monomial r = primary();
            Monomial m{arena().node(op, l.skel, r.skel), l.word};
            m.word.insert(m.word.end(), r.word.begin(), r.word.end());
            return m;
        }
    } p{text, alpha};
    Monomial m = p.expression();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    // Multilinearity check: each variable at most once.
    std::vector<bool> seen(26, false);
    for (auto v : m.word) {
        if (seen[v]) throw std::invalid_argument("repeated variable in \"" + text + "\"");
        seen[v] = true;
    }
    return m;
}

}  // namespace opident
