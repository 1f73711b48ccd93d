// Unit tests for the expansion maps into the triassociative and
// tridendriform targets, and for the S_n-module machinery built on top of
// them (orbit spans, consequence liftings, greedy generator extraction).
//
// Frozen oracles: hand-expanded low-arity images, the full 66 x 27
// arity-3 tridendriform matrix (fixture file), rank/nullity pairs at
// arities 3 and 4, the 180 -> 184 -> 188 -> 200 staging of the known
// arity-4 module, the greedy rank staircase 204/216/222/234/240, and the
// generator families stored under data/identities/.

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <string>
#include <vector>

#include "opident/expand.hpp"

using namespace opident;

static PrimeField F101() { return PrimeField(101); }

static Expander& tri4() {
    static Expander e(Target::triassociative, 4);
    return e;
}

static Expander& dend4() {
    static Expander e(Target::tridendriform, 4);
    return e;
}

static const std::vector<NamedIdentity>& trialgebra_identities() {
    static auto ids = load_identity_file(data_dir() + "/identities/jordan_trialgebra.json");
    return ids;
}

static const std::vector<NamedIdentity>& post_jordan_identities() {
    static auto ids = load_identity_file(data_dir() + "/identities/post_jordan.json");
    return ids;
}

static const std::vector<NamedIdentity>& pre_jordan_identities() {
    static auto ids = load_identity_file(data_dir() + "/identities/pre_jordan.json");
    return ids;
}

static Polynomial bw_poly(const char* text) {
    return Polynomial(bw_normal_form(parse_monomial(text, OpAlphabet::bw())));
}

TEST_CASE("low-arity expansions match the defining formulas", "[expand]") {
    const OpAlphabet& ta = OpAlphabet::triass();
    const OpAlphabet& td = OpAlphabet::tridend();

    CHECK(render(tri4().expand(parse_monomial("a o b", OpAlphabet::bw())), ta) == "a⊥b + b⊥a");
    CHECK(render(tri4().expand(parse_monomial("a * b", OpAlphabet::bw())), ta) == "a⊣b + b⊢a");
    CHECK(render(dend4().expand(parse_monomial("a o b", OpAlphabet::bw())), td) == "a∧b + b∧a");
    CHECK(render(dend4().expand(parse_monomial("a * b", OpAlphabet::bw())), td) == "a≺b + b≻a");

    // One mixed arity-3 monomial in both targets, fully normalized.
    CHECK(render(tri4().expand(parse_monomial("(a o b) * c", OpAlphabet::bw())), ta) ==
          "(a⊥b)⊣c + (b⊥a)⊣c + (c⊢a)⊥b + (c⊢b)⊥a");
    CHECK(render(dend4().expand(parse_monomial("(a o b) * c", OpAlphabet::bw())), td) ==
          "a∧(b≺c) + b∧(a≺c) + c≻(a∧b) + c≻(b∧a)");

    // The arity-4 product of two plain pairs under a commutative product.
    CHECK(render(tri4().expand(parse_monomial("(a * b) o (c * d)", OpAlphabet::bw())), ta) ==
          "((a⊣b)⊣d)⊥c + ((c⊣d)⊣b)⊥a + ((a⊣b)⊥c)⊣d + ((c⊣d)⊥a)⊣b + ((b⊢a)⊣d)⊥c + "
          "((d⊢c)⊣b)⊥a + ((b⊢a)⊥c)⊣d + ((d⊢c)⊥a)⊣b");

    // Expansion is linear and respects relabeling.
    Polynomial p = bw_poly("(a o b) * c");
    p.add(bw_normal_form(parse_monomial("a o (b o c)", OpAlphabet::bw())), -2);
    Polynomial q = tri4().expand(p);
    Polynomial expected = tri4().expand(parse_monomial("(a o b) * c", OpAlphabet::bw()));
    Polynomial two = tri4().expand(parse_monomial("a o (b o c)", OpAlphabet::bw()));
    for (const auto& [m, c] : two.terms()) expected.add(m, -2 * c);
    CHECK(render(q, ta) == render(expected, ta));
}

TEST_CASE("basis indexing and operation filters", "[expand]") {
    const BasisIndex& b3 = *bw_basis_index(3);
    REQUIRE(b3.size() == 27);
    for (std::size_t i = 0; i < b3.size(); ++i)
        CHECK(b3.at(b3.monomials[i]) == static_cast<int>(i));
    CHECK_THROWS_AS(b3.at(parse_monomial("a o b", OpAlphabet::bw())), std::invalid_argument);

    const NamedIdentity& brb = find_identity(trialgebra_identities(), "black-right-bar");
    std::vector<long long> v = vectorize(brb.poly, b3);
    long long abs_sum = 0;
    for (long long x : v) abs_sum += (x < 0 ? -x : x);
    CHECK(abs_sum == 2);

    Monomial mixed = parse_monomial("(a o b) * c", OpAlphabet::bw());
    CHECK(monomial_uses_op(mixed, 0));
    CHECK(monomial_uses_op(mixed, 1));
    CHECK_FALSE(monomial_uses_op(parse_monomial("a o (b o c)", OpAlphabet::bw()), 1));

    Polynomial p = bw_poly("(a o b) * c");
    p.add(bw_normal_form(parse_monomial("a o (b o c)", OpAlphabet::bw())), 5);
    Polynomial kept = drop_terms_using_op(p, 1);
    REQUIRE(kept.term_count() == 1);
    CHECK(render(kept, OpAlphabet::bw()) == "5(b∘c)∘a");
}

TEST_CASE("triassociative arity-3 matrix: rank 21 and the two-term kernel", "[expand]") {
    PrimeField F = F101();
    ModMatrix E = tri4().matrix(3, F);
    REQUIRE(E.rows() == 42);
    REQUIRE(E.cols() == 27);
    CHECK(E.rank() == 21);

    Expander::Kernel K = tri4().kernel(3, F);
    CHECK(K.rank == 21);
    REQUIRE(K.nullity == 6);

    // The canonical kernel basis is exactly the six relabelings of the
    // two-term mixed identity.
    std::vector<std::string> rendered;
    for (const auto& p : K.basis) {
        CHECK(p.term_count() == 2);
        rendered.push_back(render(p, OpAlphabet::bw()));
    }
    CHECK(rendered == std::vector<std::string>{
                          "-a•(b∘c) + a•(b•c)", "-a•(b∘c) + a•(c•b)", "-b•(a∘c) + b•(a•c)",
                          "-b•(a∘c) + b•(c•a)", "-c•(a∘b) + c•(a•b)", "-c•(a∘b) + c•(b•a)"});

    // The kernel is the S_3-module generated by that single identity, and
    // right-commutativity lies inside it.
    const NamedIdentity& brb = find_identity(trialgebra_identities(), "black-right-bar");
    CHECK(module_equal(K.basis, {brb.poly}, 3, F));
    ModuleSpan span(3, F);
    span.add_orbit(brb.poly);
    CHECK(span.rank() == 6);
    CHECK(span.contains(find_identity(trialgebra_identities(), "right-commutativity").poly));
}

TEST_CASE("tridendriform arity-3 matrix matches the stored table entry-for-entry", "[expand]") {
    PrimeField F = F101();
    ModMatrix E = dend4().matrix(3, F);
    REQUIRE(E.rows() == 66);
    REQUIRE(E.cols() == 27);

    std::ifstream in(std::string(OPIDENT_FIXTURE_DIR) + "/expansion_tridend_arity3.txt");
    REQUIRE(in.good());
    std::size_t r = 0, c = 0;
    in >> r >> c;
    REQUIRE(r == E.rows());
    REQUIRE(c == E.cols());
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            long long v = 0;
            in >> v;
            if (E(i, j) != F.from_int(v)) ++mismatches;
        }
    CHECK(mismatches == 0);

    CHECK(E.rank() == 27);
    Expander::Kernel K = dend4().kernel(3, F);
    CHECK(K.rank == 27);
    CHECK(K.nullity == 0);
}

TEST_CASE("rational and modular ranks agree at arity 3", "[expand]") {
    PrimeField F = F101();
    CHECK(tri4().matrix_rational(3).rank() == tri4().matrix(3, F).rank());
    CHECK(dend4().matrix_rational(3).rank() == dend4().matrix(3, F).rank());
}

TEST_CASE("arity-4 expansion matrices: ranks and nullities", "[expand]") {
    PrimeField F = F101();
    ModMatrix Et = tri4().matrix(4, F);
    REQUIRE(Et.rows() == 360);
    REQUIRE(Et.cols() == 405);
    Expander::Kernel Kt = tri4().kernel(4, F);
    CHECK(Kt.rank == 165);
    CHECK(Kt.nullity == 240);

    ModMatrix Ed = dend4().matrix(4, F);
    REQUIRE(Ed.rows() == 1080);
    REQUIRE(Ed.cols() == 405);
    Expander::Kernel Kd = dend4().kernel(4, F);
    CHECK(Kd.rank == 345);
    CHECK(Kd.nullity == 60);
}

TEST_CASE("consequence liftings of an arity-3 identity", "[expand]") {
    const NamedIdentity& brb = find_identity(trialgebra_identities(), "black-right-bar");
    std::vector<Polynomial> cons = consequences(brb.poly, 3);
    REQUIRE(cons.size() == 9);  // 2n + 3 for n = 3.

    std::vector<std::string> rendered;
    for (const auto& p : cons) rendered.push_back(render(p, OpAlphabet::bw()));
    CHECK(rendered == std::vector<std::string>{
                          "(a∘d)•(b∘c) - (a∘d)•(b•c)", "a•((b∘d)∘c) - a•((b∘d)•c)",
                          "a•((c∘d)∘b) - a•(b•(c∘d))", "(a•(b∘c))∘d - (a•(b•c))∘d",
                          "(a•d)•(b∘c) - (a•d)•(b•c)", "a•((b•d)∘c) - a•((b•d)•c)",
                          "a•((c•d)∘b) - a•(b•(c•d))", "(a•(b∘c))•d - (a•(b•c))•d",
                          "d•(a•(b∘c)) - d•(a•(b•c))"});

    // Every lifting of an identity is again an identity.
    for (const auto& p : cons) CHECK(tri4().is_identity(p));

    // Arity mismatch is rejected.
    CHECK_THROWS_AS(consequences(brb.poly, 4), std::invalid_argument);
}

TEST_CASE("known arity-4 module builds up in stages 180 -> 184 -> 188 -> 200", "[expand]") {
    PrimeField F = F101();
    const auto& ids = trialgebra_identities();
    std::vector<Polynomial> cons = consequences(find_identity(ids, "black-right-bar").poly, 3);

    ModuleSpan span(4, F);
    for (const auto& p : cons) span.add_orbit(p);
    CHECK(span.rank() == 180);
    span.add_orbit(find_identity(ids, "jordan-linearized").poly);
    CHECK(span.rank() == 184);
    span.add_orbit(find_identity(ids, "quasi-jordan-linearized").poly);
    CHECK(span.rank() == 188);
    span.add_orbit(find_identity(ids, "quasi-jordan-second").poly);
    CHECK(span.rank() == 200);
}

static std::vector<Polynomial> known_arity4_seeds() {
    const auto& ids = trialgebra_identities();
    std::vector<Polynomial> seeds =
        consequences(find_identity(ids, "black-right-bar").poly, 3);
    seeds.push_back(find_identity(ids, "jordan-linearized").poly);
    seeds.push_back(find_identity(ids, "quasi-jordan-linearized").poly);
    seeds.push_back(find_identity(ids, "quasi-jordan-second").poly);
    return seeds;
}

TEST_CASE("quotient of the arity-4 kernel by the known module has 40 six-term rows",
          "[expand]") {
    PrimeField F = F101();
    Expander::Kernel K = tri4().kernel(4, F);
    std::vector<Polynomial> rows = quotient_basis_rows(K.basis, known_arity4_seeds(), 4, F);
    REQUIRE(rows.size() == 40);
    for (const auto& p : rows) CHECK(p.term_count() == 6);
}

TEST_CASE("greedy scan extracts four new arity-4 generators", "[expand]") {
    PrimeField F = F101();
    Expander::Kernel K = tri4().kernel(4, F);
    std::vector<Polynomial> seeds = known_arity4_seeds();

    GeneratorScan scan = module_generators(K.basis, seeds, 4, F, /*sort_by_term_count=*/false);
    CHECK(scan.ranks == std::vector<std::size_t>{204, 216, 222, 234, 240});
    CHECK(scan.kept_positions == std::vector<std::size_t>{0, 1, 3, 4});
    REQUIRE(scan.generators.size() == 4);
    for (const auto& g : scan.generators) CHECK(g.term_count() == 6);
    CHECK(render(scan.generators[0], OpAlphabet::bw()) ==
          "-((a∘b)•d)∘c - ((a∘c)•d)∘b - ((b∘c)•d)∘a + (a∘b)∘(c•d) + (a∘c)∘(b•d) + "
          "(b∘c)∘(a•d)");

    // Together with the known module they span the whole kernel, and the
    // span agrees with the four stored mixed-product identities.
    CHECK(module_rank(scan.generators, 4, F, seeds) == 240);
    std::vector<Polynomial> stored;
    const auto& ids = trialgebra_identities();
    for (const char* name : {"mixed-product-1", "mixed-product-2", "mixed-product-3",
                             "mixed-product-4"})
        stored.push_back(find_identity(ids, name).poly);
    for (const auto& p : stored) CHECK(tri4().is_identity(p));
    CHECK(module_equal(scan.generators, stored, 4, F, seeds));
}

TEST_CASE("tridendriform arity-4 kernel is generated by seven identities", "[expand]") {
    PrimeField F = F101();
    Expander::Kernel K = dend4().kernel(4, F);

    GeneratorScan scan = module_generators(K.basis, {}, 4, F, /*sort_by_term_count=*/true);
    CHECK(scan.scanned.size() == 8);
    CHECK(scan.ranks == std::vector<std::size_t>{3, 4, 8, 20, 38, 44, 48, 60});
    REQUIRE(scan.generators.size() == 7);
    std::vector<std::size_t> counts;
    for (const auto& g : scan.generators) counts.push_back(g.term_count());
    CHECK(counts == std::vector<std::size_t>{6, 6, 6, 8, 10, 18, 20});
    CHECK(module_rank(scan.generators, 4, F) == 60);

    // The stored post-Jordan family generates the same module.
    std::vector<Polynomial> stored;
    for (const auto& id : post_jordan_identities()) stored.push_back(id.poly);
    REQUIRE(stored.size() == 7);
    for (const auto& p : stored) CHECK(dend4().is_identity(p));
    CHECK(module_equal(scan.generators, stored, 4, F));

    // Exactly one generator uses only the commutative product, and it
    // generates the same module as the linearized Jordan identity.
    std::vector<Polynomial> pure;
    for (const auto& g : scan.generators) {
        bool uses_plain = false;
        for (const auto& [m, c] : g.terms())
            if (monomial_uses_op(m, 1)) uses_plain = true;
        if (!uses_plain) pure.push_back(g);
    }
    REQUIRE(pure.size() == 1);
    CHECK(pure[0].term_count() == 6);
    const Polynomial& jordan =
        find_identity(trialgebra_identities(), "jordan-linearized").poly;
    CHECK(module_equal({pure[0]}, {jordan}, 4, F));
}

TEST_CASE("deleting commutative terms leaves the two stored twelve-term identities",
          "[expand]") {
    PrimeField F = F101();
    Expander::Kernel K = dend4().kernel(4, F);
    GeneratorScan scan = module_generators(K.basis, {}, 4, F, /*sort_by_term_count=*/true);
    REQUIRE(scan.generators.size() == 7);

    std::vector<Polynomial> dropped;
    std::size_t vanished = 0;
    for (const auto& g : scan.generators) {
        Polynomial d = drop_terms_using_op(g, 0);
        if (d.zero())
            ++vanished;
        else
            dropped.push_back(d);
    }
    CHECK(vanished == 5);
    REQUIRE(dropped.size() == 2);
    CHECK(dropped[0].term_count() == 12);
    CHECK(dropped[1].term_count() == 12);

    std::vector<Polynomial> stored;
    for (const auto& id : pre_jordan_identities()) stored.push_back(id.poly);
    REQUIRE(stored.size() == 2);
    CHECK(module_rank(stored, 4, F) == 16);
    CHECK(module_equal(dropped, stored, 4, F));
}

TEST_CASE("the twelve-term identities hold only after deleting the idempotent part",
          "[expand]") {
    // They are not identities for the full three-operation expansion, but
    // become identities once every monomial containing the commutative
    // operation is removed from the image: the two-operation remainder
    // closes under the rewriting because no rule decreases the count of
    // the commutative operation.
    for (const auto& id : pre_jordan_identities()) {
        Polynomial e = dend4().expand(id.poly);
        CHECK_FALSE(e.zero());
        CHECK(drop_terms_using_op(e, 0).zero());
    }
}

TEST_CASE("stored identity families expand to zero in their targets", "[expand]") {
    for (const auto& id : trialgebra_identities()) {
        INFO(id.name);
        CHECK(id.arity >= 3);
        CHECK(tri4().is_identity(id.poly));
    }
    for (const auto& id : post_jordan_identities()) {
        INFO(id.name);
        CHECK(id.arity == 4);
        CHECK(dend4().is_identity(id.poly));
    }
}

TEST_CASE("identity JSON round-trip and lookup", "[expand]") {
    const auto& ids = trialgebra_identities();
    REQUIRE(ids.size() == 9);
    const NamedIdentity& brb = find_identity(ids, "black-right-bar");
    nlohmann::json j = identity_to_json(brb, Charset::ascii);
    NamedIdentity back = identity_from_json(j);
    CHECK(back.name == brb.name);
    CHECK(back.arity == brb.arity);
    CHECK(render(back.poly, OpAlphabet::bw()) == render(brb.poly, OpAlphabet::bw()));
    CHECK_THROWS_AS(find_identity(ids, "no-such-identity"), std::invalid_argument);
}

TEST_CASE("arity guards on the expansion matrices", "[expand]") {
    PrimeField F = F101();
    CHECK_THROWS_AS(tri4().matrix(1, F), std::invalid_argument);
    CHECK_THROWS_AS(tri4().matrix(5, F), std::invalid_argument);  // built with max arity 4
    Expander wide(Target::triassociative, 8);
    CHECK_THROWS_WITH(wide.matrix(6, F),
                      Catch::Matchers::ContainsSubstring("isotypic"));
}
