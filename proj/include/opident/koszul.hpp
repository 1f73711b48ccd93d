#pragma once
/**
 * Koszul dual presentations of binary quadratic operads by linear algebra.
 *
 * A presentation consists of an ordered list of binary operations (each
 * plain, commutative, or anticommutative), an ordered basis of the
 * multilinear arity-3 monomials, and an integer matrix whose rows are the
 * coefficient vectors of the defining relations.  The dual presentation is
 * computed from the nullspace of R' = R D, where D is the diagonal sign
 * matrix recording the association type of each basis monomial (and, for
 * symmetric operads, the sign of its argument permutation).  Relations of
 * the dual are returned in row canonical form, so dual presentations are
 * unique and can be compared entry for entry.
 *
 * Two recipes are exposed: the nonsymmetric one (all operations plain, one
 * monomial per association type and operation pair, D = +-1 by type) and
 * the symmetric extension (argument permutations included, commutative or
 * anticommutative operations folded into the basis, D scaled by the sign
 * of each monomial's argument permutation).  A commutative operation
 * dualizes to an anticommutative one and vice versa.
 */

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "opident/exactlin.hpp"
#include "opident/treeops.hpp"

namespace opident {

// ---------------------------------------------------------------------------
// Presentation types
// ---------------------------------------------------------------------------

inline std::string op_symmetry_name(OpSymmetry s) {
    switch (s) {
        case OpSymmetry::none: return "none";
        case OpSymmetry::commutative: return "commutative";
        case OpSymmetry::anticommutative: return "anticommutative";
    }
    throw std::logic_error("unreachable");
}

inline OpSymmetry op_symmetry_from_name(const std::string& s) {
    if (s == "none") return OpSymmetry::none;
    if (s == "commutative") return OpSymmetry::commutative;
    if (s == "anticommutative") return OpSymmetry::anticommutative;
    throw std::invalid_argument("unknown operation symmetry: " + s);
}

struct PresOp {
    std::string name;
    OpSymmetry symmetry = OpSymmetry::none;

    bool is_symmetric() const { return symmetry != OpSymmetry::none; }
};

/**
 * One multilinear arity-3 monomial over a presentation's operations.
 * type 1 is (x o1 y) o2 z and type 2 is x o1 (y o2 z); op1/op2 index the
 * operations as written left to right, and word lists the arguments as
 * written (0 = a, 1 = b, 2 = c).  Canonical monomials order the arguments
 * of a symmetric operation increasingly and never place a symmetric
 * operation outermost in type 2 (such monomials rewrite to type 1).
 */
struct PresMonomial {
    int type = 1;
    int op1 = 0, op2 = 0;
    Perm word;

    bool operator==(const PresMonomial& o) const {
        return type == o.type && op1 == o.op1 && op2 == o.op2 && word == o.word;
    }
    bool operator<(const PresMonomial& o) const {
        return std::tie(type, op1, op2, word) < std::tie(o.type, o.op1, o.op2, o.word);
    }
};

/// Infix rendering; operations named like "{,}" render as "{x,y}" and
/// provide their own grouping, so only infix operations parenthesize a
/// composite argument.
inline std::string render(const PresMonomial& m, const std::vector<PresOp>& ops) {
    const auto join = [&](const std::string& x, bool xc, int op, const std::string& y, bool yc) {
        const std::string& nm = ops[static_cast<std::size_t>(op)].name;
        if (nm.size() == 3 && nm[1] == ',') return nm.substr(0, 1) + x + "," + y + nm.substr(2);
        return (xc ? "(" + x + ")" : x) + nm + (yc ? "(" + y + ")" : y);
    };
    const auto var = [](std::uint8_t v) { return std::string(1, static_cast<char>('a' + v)); };
    const auto bracketed = [&](int op) {
        const std::string& nm = ops[static_cast<std::size_t>(op)].name;
        return nm.size() == 3 && nm[1] == ',';
    };
    if (m.type == 1) {
        const std::string inner = join(var(m.word[0]), false, m.op1, var(m.word[1]), false);
        return join(inner, !bracketed(m.op1), m.op2, var(m.word[2]), false);
    }
    const std::string inner = join(var(m.word[1]), false, m.op2, var(m.word[2]), false);
    return join(var(m.word[0]), false, m.op1, inner, !bracketed(m.op2));
}

/**
 * The ordered arity-3 basis: association type 1 before type 2, operation
 * pairs in lexicographic order within each type, argument words in
 * lexicographic order within each pair.  Symmetric operations keep only
 * the canonical argument orders, and type-2 monomials with a symmetric
 * outer operation are omitted (they rewrite to type 1).  Nonsymmetric
 * presentations use only the identity word abc.
 */
inline std::vector<PresMonomial> presentation_basis(const std::vector<PresOp>& ops,
                                                    bool symmetric) {
    const int k = static_cast<int>(ops.size());
    std::vector<Perm> words;
    if (symmetric) {
        Perm w = perm_identity(3);
        do words.push_back(w);
        while (std::next_permutation(w.begin(), w.end()));
    } else {
        words.push_back(perm_identity(3));
    }

    std::vector<PresMonomial> out;
    for (int type = 1; type <= 2; ++type)
        for (int o1 = 0; o1 < k; ++o1)
            for (int o2 = 0; o2 < k; ++o2) {
                if (type == 2 && ops[static_cast<std::size_t>(o1)].is_symmetric()) continue;
                const int inner = (type == 1) ? o1 : o2;
                for (const Perm& w : words) {
                    if (ops[static_cast<std::size_t>(inner)].is_symmetric()) {
                        const std::size_t lo = (type == 1) ? 0 : 1;
                        if (w[lo] > w[lo + 1]) continue;
                    }
                    out.push_back({type, o1, o2, w});
                }
            }
    return out;
}

/**
 * Canonicalize one written term: sort the arguments of symmetric
 * operations and rewrite x o1 (y o2 z) with o1 symmetric to
 * (y o2 z) o1 x.  Returns the canonical monomial and the sign picked up
 * from anticommutative swaps.
 */
inline std::pair<PresMonomial, int> normalize_pres_term(const std::vector<PresOp>& ops,
                                                        PresMonomial m) {
    int sign = 1;
    if (m.type == 2 && ops[static_cast<std::size_t>(m.op1)].is_symmetric()) {
        if (ops[static_cast<std::size_t>(m.op1)].symmetry == OpSymmetry::anticommutative)
            sign = -sign;
        m = PresMonomial{1, m.op2, m.op1, Perm{m.word[1], m.word[2], m.word[0]}};
    }
    const int inner = (m.type == 1) ? m.op1 : m.op2;
    if (ops[static_cast<std::size_t>(inner)].is_symmetric()) {
        const std::size_t lo = (m.type == 1) ? 0 : 1;
        if (m.word[lo] > m.word[lo + 1]) {
            std::swap(m.word[lo], m.word[lo + 1]);
            if (ops[static_cast<std::size_t>(inner)].symmetry == OpSymmetry::anticommutative)
                sign = -sign;
        }
    }
    return {m, sign};
}

struct QuadPresentation {
    std::string name;
    std::vector<PresOp> ops;
    bool symmetric = false;
    std::vector<PresMonomial> basis;
    RatMatrix relations;  // rows x |basis|
};

// ---------------------------------------------------------------------------
// Relation assembly
// ---------------------------------------------------------------------------

/// One written term of a relation: coefficient times a (possibly
/// non-canonical) monomial.
struct PresTerm {
    long long coeff = 1;
    PresMonomial monomial;
};

/**
 * Assemble relation rows from written terms.  Each relation contributes
 * one row (nonsymmetric case) or one row per argument permutation in
 * lexicographic order (symmetric case).  Terms are canonicalized against
 * the presentation basis.
 */
inline RatMatrix relation_rows(const std::vector<PresOp>& ops, bool symmetric,
                               const std::vector<PresMonomial>& basis,
                               const std::vector<std::vector<PresTerm>>& relations) {
    std::map<PresMonomial, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);

    std::vector<Perm> words;
    if (symmetric) {
        Perm w = perm_identity(3);
        do words.push_back(w);
        while (std::next_permutation(w.begin(), w.end()));
    } else {
        words.push_back(perm_identity(3));
    }

    RatMatrix out(relations.size() * words.size(), basis.size());
    std::size_t r = 0;
    for (const auto& rel : relations)
        for (const Perm& g : words) {
            for (const PresTerm& t : rel) {
                PresMonomial m = t.monomial;
                for (std::size_t i = 0; i < 3; ++i)
                    m.word[i] = g[t.monomial.word[i]];
                const auto [canon, sign] = normalize_pres_term(ops, m);
                const auto it = index.find(canon);
                if (it == index.end())
                    throw std::logic_error("relation term is not in the presentation basis");
                out(r, it->second) += Rational(t.coeff * sign);
            }
            ++r;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Koszul duality
// ---------------------------------------------------------------------------

/// Sign of the argument permutation of one basis monomial.
inline int word_sign(const Perm& w) {
    int inv = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (w[i] > w[j]) ++inv;
    return (inv % 2) ? -1 : 1;
}

inline OpSymmetry dual_symmetry(OpSymmetry s) {
    switch (s) {
        case OpSymmetry::none: return OpSymmetry::none;
        case OpSymmetry::commutative: return OpSymmetry::anticommutative;
        case OpSymmetry::anticommutative: return OpSymmetry::commutative;
    }
    throw std::logic_error("unreachable");
}

namespace detail {

/// Core of both recipes: R' = R D with D(i,i) = +-sgn(sigma_i) by
/// association type; the dual relations are RCF(nullspace(R')).
inline QuadPresentation dual_presentation(const QuadPresentation& p) {
    if (p.relations.cols() != p.basis.size())
        throw std::invalid_argument("presentation: relation columns do not match the basis");

    RatMatrix rd = p.relations;
    for (std::size_t j = 0; j < p.basis.size(); ++j) {
        const PresMonomial& m = p.basis[j];
        const int d = word_sign(m.word) * (m.type == 1 ? 1 : -1);
        if (d == -1)
            for (std::size_t i = 0; i < rd.rows(); ++i) rd(i, j) = -rd(i, j);
    }

    QuadPresentation dual;
    dual.name = p.name + " dual";
    for (const PresOp& op : p.ops) dual.ops.push_back({op.name + "'", dual_symmetry(op.symmetry)});
    dual.symmetric = p.symmetric;
    dual.basis = presentation_basis(dual.ops, dual.symmetric);
    if (dual.basis.size() != p.basis.size())
        throw std::logic_error("dual basis size changed");
    dual.relations = rd.nullspace_canonical().rcf();
    return dual;
}

}  // namespace detail

/// Nonsymmetric recipe (negate the type-2 block).  Requires all
/// operations plain and the basis split evenly by association type.
inline QuadPresentation dual_nonsymmetric(const QuadPresentation& p) {
    for (const PresOp& op : p.ops)
        if (op.is_symmetric())
            throw std::invalid_argument(
                "nonsymmetric recipe requires operations without symmetry");
    std::size_t type1 = 0;
    for (const PresMonomial& m : p.basis) type1 += (m.type == 1) ? 1 : 0;
    if (2 * type1 != p.basis.size())
        throw std::invalid_argument("uneven basis split between association types");
    return detail::dual_presentation(p);
}

/// Symmetric recipe (diagonal sign matrix from argument permutations).
inline QuadPresentation dual_symmetric(const QuadPresentation& p) {
    if (!p.symmetric)
        throw std::invalid_argument("symmetric recipe requires a symmetric presentation");
    return detail::dual_presentation(p);
}

/// Row-space equality over Q: identical nonzero rows in row canonical form.
inline bool rowspace_equal(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.cols()) return false;
    const RatMatrix ra = a.rcf(), rb = b.rcf();
    const std::size_t na = a.rank(), nb = b.rank();
    if (na != nb) return false;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (ra(i, j) != rb(i, j)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline nlohmann::json presentation_to_json(const QuadPresentation& p) {
    nlohmann::json ops = nlohmann::json::array();
    for (const PresOp& op : p.ops)
        ops.push_back({{"name", op.name}, {"symmetry", op_symmetry_name(op.symmetry)}});
    nlohmann::json basis = nlohmann::json::array();
    for (const PresMonomial& m : p.basis) basis.push_back(render(m, p.ops));
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < p.relations.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < p.relations.cols(); ++j) {
            const Rational& x = p.relations(i, j);
            if (boost::multiprecision::denominator(x) != 1)
                throw std::invalid_argument("presentation relations must be integral");
            row.push_back(static_cast<long long>(boost::multiprecision::numerator(x)));
        }
        rows.push_back(std::move(row));
    }
    return {{"schema", 1},
            {"name", p.name},
            {"symmetric", p.symmetric},
            {"ops", std::move(ops)},
            {"basis", std::move(basis)},
            {"relations", std::move(rows)}};
}

inline QuadPresentation presentation_from_json(const nlohmann::json& j) {
    if (j.value("schema", 0) != 1)
        throw std::runtime_error("unsupported presentation schema");
    QuadPresentation p;
    p.name = j.at("name").get<std::string>();
    p.symmetric = j.at("symmetric").get<bool>();
    for (const auto& o : j.at("ops"))
        p.ops.push_back({o.at("name").get<std::string>(),
                         op_symmetry_from_name(o.at("symmetry").get<std::string>())});
    p.basis = presentation_basis(p.ops, p.symmetric);
    const auto& basis = j.at("basis");
    if (basis.size() != p.basis.size())
        throw std::runtime_error("presentation basis size mismatch in " + p.name);
    for (std::size_t i = 0; i < p.basis.size(); ++i)
        if (basis.at(i).get<std::string>() != render(p.basis[i], p.ops))
            throw std::runtime_error("presentation basis order mismatch in " + p.name);
    const auto& rows = j.at("relations");
    p.relations = RatMatrix(rows.size(), p.basis.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows.at(i).size() != p.basis.size())
            throw std::runtime_error("presentation relation width mismatch in " + p.name);
        for (std::size_t c = 0; c < p.basis.size(); ++c)
            p.relations(i, c) = rows.at(i).at(c).get<long long>();
    }
    return p;
}

inline QuadPresentation load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open presentation file: " + path);
    nlohmann::json j;
    in >> j;
    return presentation_from_json(j);
}

}  // namespace opident
