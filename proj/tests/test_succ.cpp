// Unit tests for the triplicator and trisuccessor constructions.
//
// Frozen oracles: the path-turn labels of the linearized Jordan identity
// for L = {a,c} (one star vertex, in the fifth term; the third operation
// appears exactly in terms three and six), the eight-term trisuccessor
// tree polynomial for that subset, the three triplicator identities it
// produces, per-subset output counts, and module equality of the full
// runs with the Jordan-trialgebra and post-Jordan identity modules inside
// the arity-4 expansion kernels.

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "opident/expand.hpp"
#include "opident/succ.hpp"
#include "opident/symrep.hpp"

using namespace opident;

static const PrimeField& F101() {
    static PrimeField f(101);
    return f;
}

static const Polynomial& jordan() {
    static Polynomial p = find_identity(
        load_identity_file(data_dir() + "/identities/jordan_trialgebra.json"),
        "jordan-linearized").poly;
    return p;
}

static Expander& triass() {
    static Expander e(Target::triassociative, 4);
    return e;
}

static Expander& tridend() {
    static Expander e(Target::tridendriform, 4);
    return e;
}

/// The terms of the linearized Jordan identity in storage order:
/// ((ab)d)c, ((ac)d)b, ((bc)d)a, (ab)(cd), (ac)(bd), (ad)(bc).
static std::vector<Monomial> jordan_monomials() {
    std::vector<Monomial> out;
    for (const auto& [m, c] : jordan().terms()) out.push_back(m);
    return out;
}

static std::string bw_text(const Polynomial& p) { return render(p, OpAlphabet::bw()); }

TEST_CASE("path-turn labeling follows the four-case rule", "[succ]") {
    const std::vector<Monomial> ms = jordan_monomials();
    REQUIRE(ms.size() == 6);
    CHECK(bw_text(Polynomial(ms[0])) == "((a∘b)∘d)∘c");

    // Paths from the root to a single leaf turn left at every vertex of a
    // left comb, so every vertex gets operation 1.
    CHECK(render_labeled(label_vertices(ms[0], {0})) == "((a1b)1d)1c");

    // Both halves of (ab)(cd) are used by L = {a,c}: the root sees both
    // turn directions and gets 2; each half sees only a left turn.
    CHECK(render_labeled(label_vertices(ms[3], {0, 2})) == "(a1b)2(c1d)");

    // The full labeled identity for L = {a,c}: the only star vertex is in
    // the fifth term, and operation 3 appears exactly in terms 3 and 6.
    const std::vector<std::string> labeled = {
        "((a1b)1d)2c", "((a2c)1d)1b", "((b3c)1d)2a",
        "(a1b)2(c1d)", "(a2c)1(b*d)", "(a1d)2(b3c)"};
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(render_labeled(label_vertices(ms[i], {0, 2})) == labeled[i]);

    // When L is the full argument set, every vertex lies on some path.
    for (const Monomial& m : ms)
        CHECK(render_labeled(label_vertices(m, {0, 1, 2, 3})).find('*') ==
              std::string::npos);

    // Labeling commutes with relabeling the arguments.
    const Perm tau = {1, 0, 3, 2};
    for (const Monomial& m : ms)
        CHECK(label_vertices(relabel(m, tau), {1, 3}) ==
              relabel(label_vertices(m, {0, 2}), tau));
}

TEST_CASE("labeling rejects bad subsets and alphabets", "[succ]") {
    const Monomial m = jordan_monomials()[0];
    CHECK_THROWS_AS(label_vertices(m, {}), std::invalid_argument);
    CHECK_THROWS_AS(label_vertices(m, {7}), std::invalid_argument);

    // A monomial that already uses the plain (second) operation.
    TreeArena& A = arena();
    const Monomial mixed{A.node(1, 0, 0), {0, 1}};
    CHECK_THROWS_AS(label_vertices(mixed, {0}), std::invalid_argument);
}

TEST_CASE("single-leaf identity passes through unchanged", "[succ]") {
    const Polynomial x(Monomial{0, {0}});
    const auto trip = triplicate(x, {0});
    REQUIRE(trip.size() == 1);
    CHECK(trip[0] == x);
    CHECK(trisuccessor(x, {0}) == x);
}

TEST_CASE("trisuccessor of the Jordan identity for L = {a,c}", "[succ]") {
    // Sum semantics: the star in term 5 expands into three terms, giving
    // the eight-term tree polynomial.
    const auto terms = trisuccessor_terms(jordan(), {0, 2});
    REQUIRE(terms.size() == 8);
    std::size_t stars = 0;
    for (const auto& [c, t] : terms) {
        CHECK((c == 1 || c == -1));
        stars += detail::count_stars(t.skel);
    }
    CHECK(stars == 0);

    // After eliminating operation 3 and mapping 2 to the commutative and
    // 1 to the plain operation, all eight monomials stay distinct.
    const Polynomial p = trisuccessor(jordan(), {0, 2});
    CHECK(p.term_count() == 8);
    CHECK(bw_text(p) ==
          "((a∘c)•d)•b + ((a•b)•d)∘c + ((c•b)•d)∘a - (a∘c)•(b∘d) - (a∘c)•(b•d) "
          "- (a∘c)•(d•b) - (a•b)∘(c•d) - (a•d)∘(c•b)");
    CHECK(tridend().is_identity(p));
    for (const auto& [m, c] : p.terms()) CHECK(bw_monomial_canonical(m));
}

TEST_CASE("triplicator of the Jordan identity for L = {a,c}", "[succ]") {
    // Union semantics: the single star produces three identities, in the
    // order of the replacement operation 1, 2, 3.
    const auto trip = triplicate(jordan(), {0, 2});
    REQUIRE(trip.size() == 3);
    const std::string common =
        "((a∘c)•d)•b + ((a•b)•d)∘c + ((c•b)•d)∘a - ";
    const std::string tail = " - (a•b)∘(c•d) - (a•d)∘(c•b)";
    CHECK(bw_text(trip[0]) == common + "(a∘c)•(b•d)" + tail);
    CHECK(bw_text(trip[1]) == common + "(a∘c)•(b∘d)" + tail);
    CHECK(bw_text(trip[2]) == common + "(a∘c)•(d•b)" + tail);
    for (const Polynomial& p : trip) CHECK(triass().is_identity(p));
}

TEST_CASE("per-subset output counts", "[succ]") {
    // Subsets in binary counting order over (a, b, c, d); the table gives
    // the number of distinct triplicator identities and the number of
    // terms of the trisuccessor tree polynomial before rewriting.
    struct Row {
        unsigned mask;
        std::size_t trip, terms;
    };
    const std::vector<Row> table = {
        {1, 243, 20}, {2, 243, 20},  {3, 3, 8},   {4, 243, 20}, {5, 3, 8},
        {6, 3, 8},    {7, 1, 6},     {8, 729, 18}, {9, 9, 10},  {10, 9, 10},
        {11, 1, 6},   {12, 9, 10},   {13, 1, 6},  {14, 1, 6},   {15, 1, 6}};
    for (const Row& row : table) {
        std::vector<int> L;
        for (int i = 0; i < 4; ++i)
            if (row.mask & (1u << i)) L.push_back(i);
        INFO("mask " << row.mask);
        CHECK(triplicate(jordan(), L).size() == row.trip);
        CHECK(trisuccessor_terms(jordan(), L).size() == row.terms);
    }

    // With no star vertices the two semantics coincide.
    const auto trip = triplicate(jordan(), {0, 1, 2});
    REQUIRE(trip.size() == 1);
    CHECK(trip[0] == trisuccessor(jordan(), {0, 1, 2}));
}

TEST_CASE("all triplicator outputs are trialgebra identities", "[succ]") {
    const auto trip = triplicate_all(jordan());
    CHECK(trip.size() == 1499);
    for (const Polynomial& p : trip) {
        REQUIRE(triass().is_identity(p));
        for (const auto& [m, c] : p.terms()) REQUIRE(bw_monomial_canonical(m));
    }
}

TEST_CASE("triplicator generates the Jordan-trialgebra module", "[succ]") {
    const auto trip = triplicate_all(jordan());
    const auto nine = lifted_to_arity(
        load_identity_file(data_dir() + "/identities/jordan_trialgebra.json"), 4);
    CHECK(module_rank(trip, 4, F101()) == 240);
    CHECK(module_equal(trip, nine, 4, F101()));
    CHECK(module_equal(trip, trip, 4, F101()));
}

TEST_CASE("trisuccessor generates the post-Jordan module", "[succ]") {
    const auto tsu = trisuccessor_all(jordan());
    CHECK(tsu.size() == 15);
    for (const Polynomial& p : tsu) CHECK(tridend().is_identity(p));

    const auto pj = lifted_to_arity(
        load_identity_file(data_dir() + "/identities/post_jordan.json"), 4);
    CHECK(module_rank(tsu, 4, F101()) == 60);
    CHECK(module_equal(tsu, pj, 4, F101()));
}

TEST_CASE("seven representative subsets already span both modules", "[succ]") {
    // The identity is symmetric in a, b, c, so subsets related by that
    // symmetry contribute the same orbits.
    const std::vector<std::vector<int>> reps = {
        {0}, {3}, {0, 1}, {0, 3}, {0, 1, 2}, {0, 1, 3}, {0, 1, 2, 3}};
    std::vector<Polynomial> trip, tsu;
    for (const auto& L : reps) {
        for (Polynomial& p : triplicate(jordan(), L)) trip.push_back(std::move(p));
        tsu.push_back(trisuccessor(jordan(), L));
    }
    CHECK(module_rank(trip, 4, F101()) == 240);
    CHECK(module_rank(tsu, 4, F101()) == 60);
}
