// Unit tests for the target algebras: triassociative skeleton classes and
// tridendriform rewriting.  Frozen oracles: class counts 2^n - 1, the
// arity-3 class structure, super-Catalan normal-form counts, and
// hand-applied rewrite steps.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "opident/targetops.hpp"

using namespace opident;

static const TriassClasses& tc6() {
    static TriassClasses tc(6);
    return tc;
}

TEST_CASE("triassociative class counts are 2^n - 1", "[targetops]") {
    for (int n = 2; n <= 6; ++n)
        CHECK(tc6().reps(n).size() == (1u << n) - 1);
    CHECK(tc6().classes(4).size() == 15);
    std::size_t total = 0;
    for (const auto& cls : tc6().classes(4)) total += cls.size();
    CHECK(total == 135);
}

TEST_CASE("arity-3 triassociative classes", "[targetops]") {
    const OpAlphabet& a = OpAlphabet::triass();
    std::vector<std::size_t> sizes;
    for (const auto& cls : tc6().classes(3)) sizes.push_back(cls.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{2, 2, 2, 2, 2, 4, 4});

    std::vector<std::string> reps;
    for (int s : tc6().reps(3)) reps.push_back(render_skeleton(s, a));
    CHECK(reps == std::vector<std::string>{"(x⊣x)⊣x", "(x⊣x)⊥x", "(x⊣x)⊢x", "(x⊥x)⊣x",
                                           "(x⊥x)⊥x", "(x⊢x)⊣x", "(x⊢x)⊥x"});

    auto rep_of = [&](const char* text) {
        return tc6().rep_of(parse_monomial(text, a).skel);
    };
    // The ⊣-class: both bar collapses and the associativity.
    CHECK(rep_of("(a-|b)-|c") == rep_of("a-|(b-|c)"));
    CHECK(rep_of("(a-|b)-|c") == rep_of("a-|(b_|_c)"));
    CHECK(rep_of("(a-|b)-|c") == rep_of("a-|(b|-c)"));
    // The ⊢-class: left-bar collapses.
    CHECK(rep_of("(a|-b)|-c") == rep_of("(a-|b)|-c"));
    CHECK(rep_of("(a|-b)|-c") == rep_of("(a_|_b)|-c"));
    CHECK(rep_of("(a|-b)|-c") == rep_of("a|-(b|-c)"));
    // Middle relation.
    CHECK(rep_of("(a-|b)_|_c") == rep_of("a_|_(b|-c)"));
    // Distinct classes stay distinct.
    CHECK(rep_of("(a-|b)-|c") != rep_of("(a|-b)|-c"));
    CHECK(rep_of("(a_|_b)_|_c") != rep_of("(a-|b)_|_c"));
}

TEST_CASE("lifted consequences join higher-arity skeletons", "[targetops]") {
    const OpAlphabet& a = OpAlphabet::triass();
    auto rep_of = [&](const char* text) {
        return tc6().rep_of(parse_monomial(text, a).skel);
    };
    CHECK(rep_of("((a-|b)-|c)-|d") == rep_of("a-|(b-|(c-|d))"));
    CHECK(rep_of("((a-|b)-|c)-|d") == rep_of("(a-|b)-|(c|-d)"));
    CHECK(rep_of("((a|-b)|-c)|-d") == rep_of("a|-(b|-(c|-d))"));
    CHECK(rep_of("((a|-b)-|c)-|d") == rep_of("a|-((b-|c)-|d)"));
    CHECK(rep_of("(a_|_b)_|_(c_|_d)") == rep_of("a_|_(b_|_(c_|_d))"));
}

TEST_CASE("triassociative normalization keeps the argument word", "[targetops]") {
    const OpAlphabet& a = OpAlphabet::triass();
    Monomial m = parse_monomial("b-|(c_|_a)", a);
    Monomial n = tc6().normalize(m);
    CHECK(render(n, a) == "(b⊣c)⊣a");
}

TEST_CASE("tridendriform normal-form counts", "[targetops]") {
    const unsigned long long expect[] = {1, 3, 11, 45, 197, 903};
    for (int n = 1; n <= 6; ++n) {
        CHECK(tridend_basis_skeletons(n).size() == expect[n - 1]);
        CHECK(super_catalan(n) == expect[n - 1]);
    }
}

TEST_CASE("tridendriform rewrite steps", "[targetops]") {
    const OpAlphabet& a = OpAlphabet::tridend();
    auto nf = [&](const char* text) {
        return render(tridend_rewriter().normalize(parse_monomial(text, a)), a);
    };
    // One rule application each (results already normal).
    CHECK(nf("(a<b)<c") == "a≺(b∧c) + a≺(b≺c) + a≺(b≻c)");
    CHECK(nf("(a>b)<c") == "a≻(b≺c)");
    CHECK(nf("(a>b)>c") == "-(a∧b)≻c - (a≺b)≻c + a≻(b≻c)");
    CHECK(nf("(a>b)/\\c") == "a≻(b∧c)");
    CHECK(nf("(a<b)/\\c") == "a∧(b≻c)");
    CHECK(nf("(a/\\b)<c") == "a∧(b≺c)");
    CHECK(nf("(a/\\b)/\\c") == "a∧(b∧c)");
    // Allowed patterns stay put.
    CHECK(nf("(a/\\b)>c") == "(a∧b)≻c");
    CHECK(nf("(a<b)>c") == "(a≺b)≻c");
    CHECK(nf("a>(b>c)") == "a≻(b≻c)");
}

TEST_CASE("tridendriform normal forms are supported on normal skeletons", "[targetops]") {
    for (int n = 2; n <= 4; ++n) {
        for (int s : bbb_skeletons(n, OpAlphabet::tridend())) {
            const SkelPoly& nf = tridend_rewriter().normal_form(s);
            CHECK(!nf.empty());
            for (const auto& [t, c] : nf) {
                CHECK(tridend_normal(t));
                CHECK(c != 0);
            }
            if (tridend_normal(s)) {
                REQUIRE(nf.size() == 1);
                CHECK(nf.begin()->first == s);
                CHECK(nf.begin()->second == 1);
            }
        }
    }
}

TEST_CASE("symmetrized target bases", "[targetops]") {
    CHECK(symmetrized_basis(Target::triassociative, 3, tc6()).size() == 42);
    CHECK(symmetrized_basis(Target::triassociative, 4, tc6()).size() == 360);
    CHECK(symmetrized_basis(Target::tridendriform, 3, tc6()).size() == 66);
    CHECK(symmetrized_basis(Target::tridendriform, 4, tc6()).size() == 1080);

    // Leading rows of the arity-3 tridendriform basis, in order.
    std::vector<Monomial> basis = symmetrized_basis(Target::tridendriform, 3, tc6());
    std::vector<std::string> head;
    for (int i = 0; i < 12; ++i) head.push_back(render(basis[i], OpAlphabet::tridend()));
    CHECK(head == std::vector<std::string>{"a∧(b∧c)", "a∧(c∧b)", "b∧(a∧c)", "b∧(c∧a)",
                                           "c∧(a∧b)", "c∧(b∧a)", "a∧(b≺c)", "a∧(c≺b)",
                                           "b∧(a≺c)", "b∧(c≺a)", "c∧(a≺b)", "c∧(b≺a)"});
    // Final block: type-1 skeletons close the list (only (x∧x)≻x and
    // (x≺x)≻x are normal among them).
    CHECK(render(basis[65], OpAlphabet::tridend()) == "(c≺b)≻a");
}

TEST_CASE("the total tridendriform product is associative", "[targetops]") {
    TreeArena& A = arena();
    // The sum of the three operations splits associativity: compare normal
    // forms of (a∗b)∗c and a∗(b∗c) as skeleton polynomials.
    {
        SkelPoly lhs, rhs;
        for (int op1 = 0; op1 < 3; ++op1)
            for (int op2 = 0; op2 < 3; ++op2) {
                for (const auto& [t, c] : tridend_rewriter().normal_form(
                         A.node(op2, A.node(op1, 0, 0), 0)))
                    lhs[t] += c;
                for (const auto& [t, c] : tridend_rewriter().normal_form(
                         A.node(op2, 0, A.node(op1, 0, 0))))
                    rhs[t] += c;
            }
        for (auto it = lhs.begin(); it != lhs.end();) it = it->second ? ++it : lhs.erase(it);
        for (auto it = rhs.begin(); it != rhs.end();) it = it->second ? ++it : rhs.erase(it);
        CHECK(lhs == rhs);
    }
}
