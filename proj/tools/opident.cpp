/**
 * opident — command-line driver for the identity-expansion toolkit.
 *
 * Subcommands
 *   enumerate     skeleton counts (and multilinear dimensions) per arity
 *   basis         one multilinear basis, monomial by monomial
 *   expand        expansion matrix of a target at one arity: shape, rank, nullity
 *   generators    minimal generator extraction from an expansion kernel
 *   isotypic      per-partition certification of the kernel against known families
 *   koszul-dual   Koszul dual of a quadratic presentation, with involution check
 *   triplicator   vertex-labeled triplication of the commutative Jordan identity
 *   trisuccessor  additive (sum-semantics) variant of the same construction
 *   verify        the full deterministic check battery for one target and arity budget
 *
 * Every run prints a report (text or JSON, selected by --format).  A check
 * line carries both the computed and the expected value; the process exits
 * 0 only when every check passes, 1 when some check fails, and 2 on usage
 * errors.  --output writes the machine-readable artifact of the run: an
 * identity file (generators, triplicator, trisuccessor), a matrix (expand),
 * a presentation (koszul-dual), or a copy of the report (all others).
 * Artifacts are written with ASCII operation glyphs so they can be loaded
 * back regardless of terminal encoding; --charset only affects the report.
 */

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "opident/exactlin.hpp"
#include "opident/expand.hpp"
#include "opident/koszul.hpp"
#include "opident/succ.hpp"
#include "opident/symrep.hpp"
#include "opident/targetops.hpp"
#include "opident/treeops.hpp"

namespace {

using namespace opident;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Reporting
// ---------------------------------------------------------------------------

/// Configuration mistake: reported on stderr, exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Accumulates the result of one run: a configuration echo, informational
 * values, listing items, and pass/fail checks.  Renders as plain text or
 * as a schema-1 JSON document; both are byte-deterministic functions of
 * the configuration.
 */
class Report {
  public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    void config(const std::string& key, ordered_json v) {
        config_.emplace_back(key, std::move(v));
    }
    void value(const std::string& name, ordered_json v) {
        entries_.push_back({Kind::value, name, std::move(v), {}, true});
    }
    void item(std::string text) {
        entries_.push_back({Kind::item, "", ordered_json(std::move(text)), {}, true});
    }
    void check(const std::string& name, ordered_json computed, ordered_json expected) {
        const bool ok = computed == expected;
        entries_.push_back({Kind::check, name, std::move(computed), std::move(expected), ok});
        passed_ = passed_ && ok;
    }
    void check_true(const std::string& name, bool ok) { check(name, ok, true); }

    bool all_passed() const { return passed_; }

    std::string text() const {
        std::ostringstream out;
        out << "opident " << command_ << "\n";
        for (const auto& [k, v] : config_) out << "  " << k << " = " << plain(v) << "\n";
        for (const Entry& e : entries_) {
            switch (e.kind) {
                case Kind::item:
                    out << "  " << e.computed.get<std::string>() << "\n";
                    break;
                case Kind::value:
                    out << "  " << e.name << " = " << plain(e.computed) << "\n";
                    break;
                case Kind::check:
                    out << (e.pass ? "  [ok] " : "  [FAIL] ") << e.name << ": "
                        << plain(e.computed) << " (expected " << plain(e.expected) << ")\n";
                    break;
            }
        }
        out << "result: " << (passed_ ? "pass" : "FAIL") << "\n";
        return out.str();
    }

    ordered_json json() const {
        ordered_json cfg = ordered_json::object();
        for (const auto& [k, v] : config_) cfg[k] = v;
        ordered_json values = ordered_json::object();
        ordered_json items = ordered_json::array();
        ordered_json checks = ordered_json::array();
        for (const Entry& e : entries_) {
            switch (e.kind) {
                case Kind::item:
                    items.push_back(e.computed);
                    break;
                case Kind::value:
                    values[e.name] = e.computed;
                    break;
                case Kind::check:
                    checks.push_back(ordered_json{{"name", e.name},
                                                  {"computed", e.computed},
                                                  {"expected", e.expected},
                                                  {"pass", e.pass}});
                    break;
            }
        }
        return ordered_json{{"schema", 1},     {"command", command_}, {"config", std::move(cfg)},
                            {"values", std::move(values)}, {"items", std::move(items)},
                            {"checks", std::move(checks)}, {"pass", passed_}};
    }

  private:
    enum class Kind { value, item, check };
    struct Entry {
        Kind kind;
        std::string name;
        ordered_json computed;
        ordered_json expected;
        bool pass;
    };

    static std::string plain(const ordered_json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
    }

    std::string command_;
    std::vector<std::pair<std::string, ordered_json>> config_;
    std::vector<Entry> entries_;
    bool passed_ = true;
};

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << body;
}

void write_json_artifact(const std::string& path, const nlohmann::json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

/// Prints the report and, for commands whose artifact is the report
/// itself, copies it to the --output path.  Returns the exit status.
int finish(const Report& rep, const std::string& format, const std::string& report_copy = "") {
    const std::string body = format == "json" ? rep.json().dump(2) + "\n" : rep.text();
    std::cout << body;
    if (!report_copy.empty()) write_text_file(report_copy, body);
    return rep.all_passed() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Shared options and validation
// ---------------------------------------------------------------------------

struct Options {
    std::string target = "triassociative";
    int arity = 4;
    long long prime = 101;
    std::string field = "modular";
    std::string format = "text";
    std::string charset = "unicode";
    std::string output;
    bool arity6 = false;
};

bool is_prime_number(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Target parse_target(const std::string& s) {
    try {
        return target_from_name(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

Charset parse_charset(const std::string& s) {
    if (s == "unicode") return Charset::unicode;
    if (s == "ascii") return Charset::ascii;
    throw UsageError("--charset must be 'unicode' or 'ascii'");
}

void validate_format(const std::string& s) {
    if (s != "text" && s != "json") throw UsageError("--format must be 'text' or 'json'");
}

void validate_field(const std::string& s) {
    if (s != "modular" && s != "rational") throw UsageError("--field must be 'modular' or 'rational'");
}

void validate_arity(const Options& o, int lo, int hi) {
    if (o.arity < lo || o.arity > hi)
        throw UsageError("--arity must be between " + std::to_string(lo) + " and " +
                         std::to_string(hi) + " for this command");
    if (o.arity >= 6 && !o.arity6) throw UsageError("arity 6 requires --enable-arity6");
}

void validate_prime(const Options& o) {
    if (o.field != "modular") return;
    if (!is_prime_number(o.prime)) throw UsageError("--prime must be a prime number");
    if (o.prime <= o.arity)
        throw UsageError("--prime must exceed the arity (got " + std::to_string(o.prime) +
                         " for arity " + std::to_string(o.arity) + ")");
}

PrimeField make_field(const Options& o) {
    validate_prime(o);
    return PrimeField(static_cast<std::uint32_t>(o.prime));
}

template <typename T>
std::string join(const std::vector<T>& xs) {
    std::ostringstream out;
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << xs[i];
    return out.str();
}

// ---------------------------------------------------------------------------
// Expected values
// ---------------------------------------------------------------------------

// Skeleton counts of the free two-operation symmetric alphabet, n = 1..9.
constexpr long long kSkeletonCount[] = {1, 2, 6, 25, 111, 540, 2736, 14396, 77649};
// Multilinear dimensions of the same operad, n = 1..6 (product of 6k-3).
constexpr long long kComponentDim[] = {1, 3, 27, 405, 8505, 229635};
// Skeleton counts of one commutative operation (Wedderburn-Etherington), n = 1..12.
constexpr long long kCommutativeCount[] = {1, 1, 1, 2, 3, 6, 11, 23, 46, 98, 207, 451};

std::vector<long long> catalan_numbers(int count) {
    std::vector<long long> c{1};
    for (int m = 1; m < count; ++m) c.push_back(c.back() * 2 * (2 * m - 1) / (m + 1));
    return c;
}

long long factorial(int n) {
    long long f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

/// Number of skeleton classes of the normalized target basis, where known.
const std::map<std::pair<int, int>, long long>& class_count_table() {
    static const std::map<std::pair<int, int>, long long> t = {
        {{0, 2}, 3},  {{0, 3}, 7},  {{0, 4}, 15},  {{0, 5}, 31},   {{0, 6}, 63},
        {{1, 2}, 3},  {{1, 3}, 11}, {{1, 4}, 45},  {{1, 5}, 197},  {{1, 6}, 903},
    };
    return t;
}

struct ExpandFacts {
    long long rows, cols, rank;
};

/// Verified shape and rank of the expansion map, where known.  The arity-6
/// rank is reachable only through the isotypic decomposition; the row count
/// listed for it is the symmetrized-domain dimension.
const ExpandFacts* expand_facts(Target t, int n) {
    static const std::map<std::pair<int, int>, ExpandFacts> table = {
        {{0, 3}, {42, 27, 21}},    {{0, 4}, {360, 405, 165}},   {{0, 5}, {3720, 8505, 1705}},
        {{0, 6}, {45360, 229635, 20790}},
        {{1, 3}, {66, 27, 27}},    {{1, 4}, {1080, 405, 345}},  {{1, 5}, {23640, 8505, 6115}},
        {{1, 6}, {650160, 229635, 136710}},
    };
    const auto it = table.find({static_cast<int>(t), n});
    return it == table.end() ? nullptr : &it->second;
}

std::string target_key(Target t) { return target_name(t); }

std::vector<NamedIdentity> defining_family(Target t) {
    const char* file = t == Target::triassociative ? "jordan_trialgebra" : "post_jordan";
    return load_identity_file(data_dir() + "/identities/" + file + ".json");
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

struct EnumerateOptions {
    std::string alphabet = "bw";
    int max = 0;  // 0: per-alphabet default
    bool dims = false;
    std::string format = "text";
    std::string output;
};

const OpAlphabet& single_op_alphabet(bool commutative) {
    static const OpAlphabet comm{"commutative", {{"∘", "o", OpSymmetry::commutative}}};
    static const OpAlphabet plain{"plain", {{"·", ".", OpSymmetry::none}}};
    return commutative ? comm : plain;
}

int run_enumerate(const EnumerateOptions& o) {
    validate_format(o.format);
    const std::string& a = o.alphabet;
    const bool is_bw = a == "bw";
    const bool is_comm = a == "commutative";
    const bool is_plain = a == "plain";
    const bool is_target = !is_bw && !is_comm && !is_plain;
    const Target t = is_target ? parse_target(a) : Target::triassociative;

    const int cap = is_bw ? 9 : is_target ? 6 : 12;
    const int max = o.max == 0 ? (is_bw ? 7 : cap) : o.max;
    if (max < 1 || max > cap)
        throw UsageError("--max must be between 1 and " + std::to_string(cap) + " for alphabet '" + a + "'");

    Report rep("enumerate");
    rep.config("alphabet", is_target ? target_key(t) : a);
    rep.config("max", max);

    std::vector<long long> counts;
    for (int n = 1; n <= max; ++n) {
        if (is_bw) {
            counts.push_back(static_cast<long long>(bw_skeletons(n).size()));
        } else if (is_comm || is_plain) {
            counts.push_back(static_cast<long long>(bw_skeletons(n, single_op_alphabet(is_comm)).size()));
        } else if (n == 1) {
            counts.push_back(1);
        } else if (t == Target::triassociative) {
            counts.push_back(static_cast<long long>(TriassClasses(n).reps(n).size()));
        } else {
            counts.push_back(static_cast<long long>(tridend_basis_skeletons(n).size()));
        }
    }
    rep.value("counts", join(counts));

    const std::vector<long long> catalan = catalan_numbers(max);
    for (int n = 1; n <= max; ++n) {
        const std::string name = "count-" + std::to_string(n);
        if (is_bw && n <= 9) {
            rep.check(name, counts[n - 1], kSkeletonCount[n - 1]);
        } else if (is_comm && n <= 12) {
            rep.check(name, counts[n - 1], kCommutativeCount[n - 1]);
        } else if (is_plain) {
            rep.check(name, counts[n - 1], catalan[n - 1]);
        } else if (is_target && n >= 2) {
            rep.check(name, counts[n - 1], class_count_table().at({static_cast<int>(t), n}));
        } else {
            rep.value(name, counts[n - 1]);
        }
    }

    if (o.dims) {
        std::vector<long long> dims;
        for (int n = 1; n <= max; ++n) {
            const std::string name = "dim-" + std::to_string(n);
            if (is_bw) {
                const long long d = static_cast<long long>(bw_dimension(n));
                dims.push_back(d);
                if (n <= 6)
                    rep.check(name, d, kComponentDim[n - 1]);
                else
                    rep.value(name, d);
            } else if (is_comm) {
                // Unordered full binary trees on n labeled leaves: (2n-3)!!.
                long long odd = 1;
                for (int k = 3; k <= 2 * n - 3; k += 2) odd *= k;
                long long d = 0;
                const OpAlphabet& alpha = single_op_alphabet(true);
                for (int s : bw_skeletons(n, alpha))
                    d += factorial(n) >> symmetry_count(s, alpha);
                dims.push_back(d);
                rep.check(name, d, odd);
            } else if (is_plain) {
                dims.push_back(counts[n - 1] * factorial(n));
                rep.check(name, dims.back(), catalan[n - 1] * factorial(n));
            } else {
                const long long d = counts[n - 1] * factorial(n);
                dims.push_back(d);
                if (n >= 2 && n <= 5) {
                    const std::size_t materialized =
                        symmetrized_basis(t, n, TriassClasses(n)).size();
                    rep.check(name, static_cast<long long>(materialized), d);
                } else {
                    rep.value(name, d);
                }
            }
        }
        rep.value("dims", join(dims));
    }

    return finish(rep, o.format, o.output);
}

// ---------------------------------------------------------------------------
// basis
// ---------------------------------------------------------------------------

struct BasisOptions {
    std::string alphabet = "bw";
    int arity = 3;
    std::string format = "text";
    std::string charset = "unicode";
    std::string output;
};

int run_basis(const BasisOptions& o) {
    validate_format(o.format);
    const Charset cs = parse_charset(o.charset);
    if (o.arity < 1 || o.arity > 5) throw UsageError("--arity must be between 1 and 5 for this command");

    Report rep("basis");
    std::vector<Monomial> mons;
    const OpAlphabet* alpha = nullptr;
    if (o.alphabet == "bw") {
        rep.config("alphabet", "bw");
        mons = bw_multilinear_basis(o.arity);
        alpha = &OpAlphabet::bw();
    } else {
        const Target t = parse_target(o.alphabet);
        rep.config("alphabet", target_key(t));
        if (o.arity < 2) throw UsageError("--arity must be at least 2 for a target alphabet");
        mons = symmetrized_basis(t, o.arity, TriassClasses(o.arity));
        alpha = &target_alphabet(t);
    }
    rep.config("arity", o.arity);

    if (o.alphabet == "bw" && o.arity <= 6) {
        rep.check("size", static_cast<long long>(mons.size()), kComponentDim[o.arity - 1]);
    } else if (o.alphabet != "bw" && o.arity >= 2) {
        const Target t = parse_target(o.alphabet);
        const long long reps = class_count_table().at({static_cast<int>(t), o.arity});
        rep.check("size", static_cast<long long>(mons.size()), reps * factorial(o.arity));
    } else {
        rep.value("size", static_cast<long long>(mons.size()));
    }

    for (const Monomial& m : mons) rep.item(render(m, *alpha, cs));
    return finish(rep, o.format, o.output);
}

// ---------------------------------------------------------------------------
// expand
// ---------------------------------------------------------------------------

void emit_expansion_checks(Report& rep, const std::string& pre, long long rows, long long cols,
                           long long rank, const ExpandFacts* facts) {
    if (facts) {
        rep.check(pre + "rows", rows, facts->rows);
        rep.check(pre + "cols", cols, facts->cols);
        rep.check(pre + "rank", rank, facts->rank);
        rep.check(pre + "nullity", cols - rank, facts->cols - facts->rank);
    } else {
        rep.value(pre + "rows", rows);
        rep.value(pre + "cols", cols);
        rep.value(pre + "rank", rank);
        rep.value(pre + "nullity", cols - rank);
    }
}

/// Computes the modular expansion matrix and reports shape/rank/nullity.
/// Returns the rank.
long long emit_expansion(Report& rep, const std::string& pre, Target t, int n,
                         const PrimeField& F, nlohmann::json* matrix_out = nullptr) {
    Expander ex(t, n);
    ModMatrix M = ex.matrix(n, F);
    const long long rank = static_cast<long long>(M.rank());
    emit_expansion_checks(rep, pre, static_cast<long long>(M.rows()),
                          static_cast<long long>(M.cols()), rank, expand_facts(t, n));
    if (matrix_out) *matrix_out = to_json(M);
    return rank;
}

int run_expand(const Options& o) {
    validate_format(o.format);
    validate_field(o.field);
    parse_charset(o.charset);
    const Target t = parse_target(o.target);
    validate_arity(o, 2, 5);
    if (o.field == "rational" && o.arity > 4)
        throw UsageError("--field rational supports arity at most 4");

    Report rep("expand");
    rep.config("target", target_key(t));
    rep.config("arity", o.arity);
    rep.config("field", o.field == "modular" ? "F" + std::to_string(o.prime) : "Q");

    nlohmann::json artifact;
    if (o.field == "modular") {
        const PrimeField F = make_field(o);
        emit_expansion(rep, "", t, o.arity, F, o.output.empty() ? nullptr : &artifact);
    } else {
        // Same layout as the modular matrix: one column per two-operation
        // basis monomial, one row per symmetrized target monomial.
        Expander ex(t, o.arity);
        const std::vector<Monomial> domain = bw_multilinear_basis(o.arity);
        const BasisIndex& image = ex.target_basis(o.arity);
        RatMatrix M(image.size(), domain.size());
        for (std::size_t j = 0; j < domain.size(); ++j) {
            const std::vector<long long> col = vectorize(ex.expand(domain[j]), image);
            for (std::size_t i = 0; i < col.size(); ++i)
                if (col[i] != 0) M(i, j) = col[i];
        }
        emit_expansion_checks(rep, "", static_cast<long long>(M.rows()),
                              static_cast<long long>(M.cols()),
                              static_cast<long long>(M.rank()), expand_facts(t, o.arity));
        if (!o.output.empty()) artifact = to_json(M);
    }

    if (!o.output.empty()) {
        artifact["target"] = target_key(t);
        artifact["arity"] = o.arity;
        write_json_artifact(o.output, artifact);
        rep.value("output", o.output);
    }
    return finish(rep, o.format);
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

/// Arity-3 kernel structure: one two-term generator for the triassociative
/// target (with the right-commutativity membership certificate), an empty
/// kernel for the tridendriform target.
void emit_arity3_structure(Report& rep, const std::string& pre, Target t, const PrimeField& F,
                           Charset cs, std::vector<NamedIdentity>* artifact) {
    Expander ex(t, 3);
    Expander::Kernel K = ex.kernel(3, F);
    if (t == Target::tridendriform) {
        rep.check(pre + "kernel-nullity", static_cast<long long>(K.nullity), 0);
        rep.check(pre + "generator-count", 0, 0);
        return;
    }
    rep.check(pre + "kernel-nullity", static_cast<long long>(K.nullity), 6);

    GeneratorScan scan = module_generators(K.basis, {}, 3, F, /*sort_by_term_count=*/true);
    rep.check(pre + "generator-count", static_cast<long long>(scan.generators.size()), 1);
    if (scan.generators.size() == 1) {
        rep.check(pre + "generator-terms", static_cast<long long>(scan.generators[0].term_count()), 2);
        rep.item(pre + "generator-1: " + render(scan.generators[0], OpAlphabet::bw(), cs));
    }

    const auto ids = defining_family(Target::triassociative);
    const Polynomial& brb = find_identity(ids, "black-right-bar").poly;
    const Polynomial& rc = find_identity(ids, "right-commutativity").poly;
    rep.check(pre + "generator-orbit-rank", static_cast<long long>(module_rank({brb}, 3, F)), 6);
    rep.check_true(pre + "matches-stored-generator",
                   !scan.generators.empty() && module_equal(scan.generators, {brb}, 3, F));
    rep.check_true(pre + "right-commutativity-in-module",
                   module_rank({brb, rc}, 3, F) == module_rank({brb}, 3, F));

    if (artifact)
        for (std::size_t i = 0; i < scan.generators.size(); ++i)
            artifact->push_back({"generator-" + std::to_string(i + 1), 3, scan.generators[i]});
}

/// Arity-4 generator extraction for the triassociative target: build the
/// known module in stages, quotient the kernel, scan for new generators,
/// and certify the result against the four stored mixed-product identities.
void emit_triass_generators(Report& rep, const std::string& pre, const PrimeField& F, Charset cs,
                            std::vector<NamedIdentity>* artifact) {
    const auto ids = defining_family(Target::triassociative);
    Expander ex(Target::triassociative, 4);

    std::vector<Polynomial> seeds = consequences(find_identity(ids, "black-right-bar").poly, 3);
    ModuleSpan span(4, F);
    for (const Polynomial& p : seeds) span.add_orbit(p);
    std::vector<std::size_t> stages{span.rank()};
    for (const char* name : {"jordan-linearized", "quasi-jordan-linearized", "quasi-jordan-second"}) {
        seeds.push_back(find_identity(ids, name).poly);
        span.add_orbit(seeds.back());
        stages.push_back(span.rank());
    }
    rep.check(pre + "known-module-stages", join(stages), "180 184 188 200");

    Expander::Kernel K = ex.kernel(4, F);
    rep.check(pre + "kernel-nullity", static_cast<long long>(K.nullity), 240);

    const std::vector<Polynomial> rows = quotient_basis_rows(K.basis, seeds, 4, F);
    rep.check(pre + "quotient-rows", static_cast<long long>(rows.size()), 40);
    bool six_term = !rows.empty();
    for (const Polynomial& p : rows) six_term = six_term && p.term_count() == 6;
    rep.check_true(pre + "quotient-rows-six-term", six_term);

    GeneratorScan scan = module_generators(K.basis, seeds, 4, F, /*sort_by_term_count=*/false);
    rep.check(pre + "scan-ranks", join(scan.ranks), "204 216 222 234 240");
    rep.check(pre + "generator-count", static_cast<long long>(scan.generators.size()), 4);
    rep.check(pre + "full-module-rank",
              static_cast<long long>(module_rank(scan.generators, 4, F, seeds)), 240);

    std::vector<Polynomial> stored;
    for (const char* name : {"mixed-product-1", "mixed-product-2", "mixed-product-3", "mixed-product-4"})
        stored.push_back(find_identity(ids, name).poly);
    bool stored_hold = true;
    for (const Polynomial& p : stored) stored_hold = stored_hold && ex.is_identity(p);
    rep.check_true(pre + "stored-mixed-products-hold", stored_hold);
    rep.check_true(pre + "matches-stored-mixed-products",
                   module_equal(scan.generators, stored, 4, F, seeds));

    for (std::size_t i = 0; i < scan.generators.size(); ++i) {
        rep.item(pre + "generator-" + std::to_string(i + 1) + ": " +
                 render(scan.generators[i], OpAlphabet::bw(), cs));
        if (artifact)
            artifact->push_back({"generator-" + std::to_string(i + 1), 4, scan.generators[i]});
    }
}

/// Arity-4 generator extraction for the tridendriform target: scan the
/// whole kernel, certify against the stored seven-identity family, and
/// check the two degenerations (pure-commutative generator, deletion of
/// commutative terms).
void emit_tridend_generators(Report& rep, const std::string& pre, const PrimeField& F, Charset cs,
                             std::vector<NamedIdentity>* artifact) {
    Expander ex(Target::tridendriform, 4);
    Expander::Kernel K = ex.kernel(4, F);
    rep.check(pre + "kernel-nullity", static_cast<long long>(K.nullity), 60);

    GeneratorScan scan = module_generators(K.basis, {}, 4, F, /*sort_by_term_count=*/true);
    rep.check(pre + "scan-candidates", static_cast<long long>(scan.scanned.size()), 8);
    rep.check(pre + "scan-ranks", join(scan.ranks), "3 4 8 20 38 44 48 60");
    rep.check(pre + "generator-count", static_cast<long long>(scan.generators.size()), 7);
    std::vector<std::size_t> counts;
    for (const Polynomial& g : scan.generators) counts.push_back(g.term_count());
    rep.check(pre + "generator-terms", join(counts), "6 6 6 8 10 18 20");
    rep.check(pre + "full-module-rank", static_cast<long long>(module_rank(scan.generators, 4, F)), 60);

    std::vector<Polynomial> stored;
    for (const NamedIdentity& id : defining_family(Target::tridendriform)) stored.push_back(id.poly);
    bool stored_hold = stored.size() == 7;
    for (const Polynomial& p : stored) stored_hold = stored_hold && ex.is_identity(p);
    rep.check_true(pre + "stored-family-holds", stored_hold);
    rep.check_true(pre + "matches-stored-family", module_equal(scan.generators, stored, 4, F));

    // Exactly one generator avoids the plain operation; it generates the
    // same module as the linearized commutative Jordan identity.
    std::vector<Polynomial> pure;
    for (const Polynomial& g : scan.generators) {
        bool plain = false;
        for (const auto& [m, c] : g.terms()) plain = plain || monomial_uses_op(m, 1);
        if (!plain) pure.push_back(g);
    }
    rep.check(pre + "pure-commutative-generators", static_cast<long long>(pure.size()), 1);
    const Polynomial jordan =
        find_identity(defining_family(Target::triassociative), "jordan-linearized").poly;
    rep.check_true(pre + "pure-generator-matches-jordan",
                   pure.size() == 1 && module_equal({pure[0]}, {jordan}, 4, F));

    // Deleting every commutative term kills five generators and leaves two
    // twelve-term identities generating the stored two-identity module.
    std::vector<Polynomial> dropped;
    std::size_t vanished = 0;
    for (const Polynomial& g : scan.generators) {
        Polynomial d = drop_terms_using_op(g, 0);
        if (d.zero())
            ++vanished;
        else
            dropped.push_back(d);
    }
    rep.check(pre + "deletion-vanishing", static_cast<long long>(vanished), 5);
    std::vector<std::size_t> dropped_counts;
    for (const Polynomial& d : dropped) dropped_counts.push_back(d.term_count());
    rep.check(pre + "deletion-terms", join(dropped_counts), "12 12");
    std::vector<Polynomial> pre_family;
    for (const NamedIdentity& id :
         load_identity_file(data_dir() + "/identities/pre_jordan.json"))
        pre_family.push_back(id.poly);
    rep.check(pre + "deletion-module-rank", static_cast<long long>(module_rank(pre_family, 4, F)), 16);
    rep.check_true(pre + "deletion-matches-stored-pair", module_equal(dropped, pre_family, 4, F));

    for (std::size_t i = 0; i < scan.generators.size(); ++i) {
        rep.item(pre + "generator-" + std::to_string(i + 1) + ": " +
                 render(scan.generators[i], OpAlphabet::bw(), cs));
        if (artifact)
            artifact->push_back({"generator-" + std::to_string(i + 1), 4, scan.generators[i]});
    }
}

nlohmann::json identity_file_json(const std::string& name, const std::vector<NamedIdentity>& ids) {
    nlohmann::json arr = nlohmann::json::array();
    for (const NamedIdentity& id : ids) arr.push_back(identity_to_json(id, Charset::ascii));
    return nlohmann::json{{"schema", 1}, {"name", name}, {"identities", arr}};
}

int run_generators(const Options& o) {
    validate_format(o.format);
    const Charset cs = parse_charset(o.charset);
    const Target t = parse_target(o.target);
    validate_arity(o, 3, 4);
    const PrimeField F = make_field(o);

    Report rep("generators");
    rep.config("target", target_key(t));
    rep.config("arity", o.arity);
    rep.config("field", "F" + std::to_string(o.prime));

    std::vector<NamedIdentity> artifact;
    if (o.arity == 3)
        emit_arity3_structure(rep, "", t, F, cs, &artifact);
    else if (t == Target::triassociative)
        emit_triass_generators(rep, "", F, cs, &artifact);
    else
        emit_tridend_generators(rep, "", F, cs, &artifact);

    if (!o.output.empty()) {
        write_json_artifact(o.output, identity_file_json(target_key(t) + "-arity-" +
                                                             std::to_string(o.arity) + "-generators",
                                                         artifact));
        rep.value("output", o.output);
    }
    return finish(rep, o.format);
}

// ---------------------------------------------------------------------------
// isotypic
// ---------------------------------------------------------------------------

/// Per-partition certification that the kernel of the expansion map equals
/// the module generated by the stored defining family.  Returns the rank
/// reconstructed from the isotypic data.
long long emit_isotypic(Report& rep, const std::string& pre, Target t, int n, const PrimeField& F) {
    const std::vector<Polynomial> lifted = lifted_to_arity(defining_family(t), n);
    rep.value(pre + "lifted-consequences", static_cast<long long>(lifted.size()));

    IsotypicAnalyzer analyzer(t, n, F);
    const std::vector<IsotypicReport> reports = analyzer.analyze_all(lifted);

    long long top = 0, all_minus_sym = 0;
    bool equal = true;
    for (const IsotypicReport& r : reports) {
        top += r.dim * static_cast<long long>(r.toprank);
        all_minus_sym += r.dim * static_cast<long long>(r.allrank - r.symrank);
        equal = equal && r.all_equals_old;
        std::ostringstream line;
        line << pre << "partition " << partition_name(r.lambda) << ": dim " << r.dim << ", top "
             << r.toprank << ", all " << r.allrank << ", sym " << r.symrank << ", old "
             << r.oldrank << ", all==old " << (r.all_equals_old ? "yes" : "NO");
        rep.item(line.str());
    }

    const ExpandFacts* facts = expand_facts(t, n);
    if (facts) {
        rep.check(pre + "rank-from-isotypic", top, facts->rank);
        rep.check(pre + "new-identity-dimension", all_minus_sym, facts->cols - facts->rank);
    } else {
        rep.value(pre + "rank-from-isotypic", top);
        rep.value(pre + "new-identity-dimension", all_minus_sym);
    }
    rep.check_true(pre + "all-partitions-certified", equal);
    rep.value(pre + "verdict", equal ? "no new identities" : "NEW IDENTITIES PRESENT");
    return top;
}

int run_isotypic(const Options& o) {
    validate_format(o.format);
    parse_charset(o.charset);
    const Target t = parse_target(o.target);
    validate_arity(o, 4, 6);
    const PrimeField F = make_field(o);

    Report rep("isotypic");
    rep.config("target", target_key(t));
    rep.config("arity", o.arity);
    rep.config("field", "F" + std::to_string(o.prime));
    emit_isotypic(rep, "", t, o.arity, F);
    return finish(rep, o.format, o.output);
}

// ---------------------------------------------------------------------------
// koszul-dual
// ---------------------------------------------------------------------------

const std::map<std::string, std::string>& dual_counterpart() {
    static const std::map<std::string, std::string> m = {
        {"Assoc", "assoc"},         {"DiAss", "dend"},      {"Dend", "diass"},
        {"TriAss", "tridend"},      {"TriDend", "triass"},  {"ComAss", "lie"},
        {"Lie", "comass"},          {"ComTriDend", "trilie"}, {"TriLie", "comtridend"},
        {"ComTriAss", "postlie"},   {"PostLie", "comtriass"},
    };
    return m;
}

QuadPresentation dual_of(const QuadPresentation& p) {
    return p.symmetric ? dual_symmetric(p) : dual_nonsymmetric(p);
}

std::string render_relation_row(const QuadPresentation& p, std::size_t i) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t j = 0; j < p.relations.cols(); ++j) {
        const std::string c = p.relations(i, j).str();
        if (c == "0") continue;
        const bool neg = c[0] == '-';
        const std::string mag = neg ? c.substr(1) : c;
        out << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        if (mag != "1") out << mag << "*";
        out << render(p.basis[j], p.ops);
        first = false;
    }
    return first ? "0" : out.str();
}

int run_koszul_dual(const std::string& pres, const std::string& format, const std::string& output) {
    validate_format(format);
    const bool is_path = pres.find('/') != std::string::npos ||
                         (pres.size() > 5 && pres.substr(pres.size() - 5) == ".json");
    const std::string path = is_path ? pres : data_dir() + "/presentations/" + pres + ".json";
    QuadPresentation p;
    try {
        p = load_presentation(path);
    } catch (const std::exception& e) {
        throw UsageError(std::string("cannot load presentation: ") + e.what());
    }

    Report rep("koszul-dual");
    rep.config("presentation", p.name);
    rep.config("symmetric", p.symmetric);

    rep.value("basis-size", static_cast<long long>(p.basis.size()));
    rep.value("relation-rank", static_cast<long long>(p.relations.rank()));

    const QuadPresentation d = dual_of(p);
    rep.value("dual-name", d.name);
    std::vector<std::string> ops;
    for (const PresOp& op : d.ops) ops.push_back(op.name + " (" + op_symmetry_name(op.symmetry) + ")");
    rep.value("dual-operations", join(ops));
    rep.value("dual-relation-rank", static_cast<long long>(d.relations.rank()));

    rep.check("rank-sum", static_cast<long long>(p.relations.rank() + d.relations.rank()),
              static_cast<long long>(p.basis.size()));
    rep.check_true("involution", dual_of(d).relations.rcf() == p.relations.rcf());

    const auto it = dual_counterpart().find(p.name);
    if (it != dual_counterpart().end()) {
        const QuadPresentation q =
            load_presentation(data_dir() + "/presentations/" + it->second + ".json");
        rep.check_true("matches-" + it->second, d.relations.rcf() == q.relations.rcf());
    }

    for (std::size_t i = 0; i < d.relations.rows(); ++i)
        rep.item("dual-relation-" + std::to_string(i + 1) + ": " + render_relation_row(d, i));

    if (!output.empty()) {
        write_json_artifact(output, presentation_to_json(d));
        rep.value("output", output);
    }
    return finish(rep, format);
}

// ---------------------------------------------------------------------------
// triplicator / trisuccessor
// ---------------------------------------------------------------------------

Polynomial jordan_seed() {
    return find_identity(defining_family(Target::triassociative), "jordan-linearized").poly;
}

std::vector<int> parse_subset(const std::string& s, int arity) {
    std::vector<int> L;
    for (char c : s) {
        if (c == ',' || c == ' ') continue;
        if (c < 'a' || c >= static_cast<char>('a' + arity))
            throw UsageError("--subset must use letters a.." + std::string(1, static_cast<char>('a' + arity - 1)));
        L.push_back(c - 'a');
    }
    std::sort(L.begin(), L.end());
    L.erase(std::unique(L.begin(), L.end()), L.end());
    if (L.empty()) throw UsageError("--subset must be a nonempty set of argument letters");
    return L;
}

std::string subset_letters(const std::vector<int>& L) {
    std::string s;
    for (int v : L) s.push_back(static_cast<char>('a' + v));
    return s;
}

/// Runs one of the two constructions over every nonempty argument subset,
/// deduplicates, and names each output after the subset that produced it.
template <typename Fn>
std::vector<NamedIdentity> subset_sweep(const Polynomial& identity, int arity, Fn produce) {
    std::vector<NamedIdentity> out;
    std::set<std::map<Monomial, long long>> seen;
    for (int mask = 1; mask < (1 << arity); ++mask) {
        std::vector<int> L;
        for (int v = 0; v < arity; ++v)
            if (mask & (1 << v)) L.push_back(v);
        const std::vector<Polynomial> produced = produce(identity, L);
        for (std::size_t k = 0; k < produced.size(); ++k) {
            if (!seen.insert(produced[k].terms()).second) continue;
            std::string name = "L-" + subset_letters(L);
            if (produced.size() > 1) name += "-" + std::to_string(k + 1);
            out.push_back({name, arity, produced[k]});
        }
    }
    return out;
}

int run_triplicator(const Options& o, const std::string& subset) {
    validate_format(o.format);
    const Charset cs = parse_charset(o.charset);
    const PrimeField F = make_field(o);
    const Polynomial jordan = jordan_seed();
    Expander ex(Target::triassociative, 4);

    Report rep("triplicator");
    rep.config("identity", "jordan-linearized");
    rep.config("field", "F" + std::to_string(o.prime));

    std::vector<NamedIdentity> outputs;
    if (!subset.empty()) {
        const std::vector<int> L = parse_subset(subset, 4);
        rep.config("subset", subset_letters(L));
        const std::vector<Polynomial> produced = triplicate(jordan, L);
        for (std::size_t k = 0; k < produced.size(); ++k)
            outputs.push_back({"L-" + subset_letters(L) + "-" + std::to_string(k + 1), 4, produced[k]});
        rep.value("outputs", static_cast<long long>(outputs.size()));
    } else {
        rep.config("subset", "all");
        outputs = subset_sweep(jordan, 4, [](const Polynomial& p, const std::vector<int>& L) {
            return triplicate(p, L);
        });
        rep.check("outputs", static_cast<long long>(outputs.size()), 1499);
    }

    bool all_hold = true;
    std::vector<Polynomial> polys;
    for (const NamedIdentity& id : outputs) {
        all_hold = all_hold && ex.is_identity(id.poly);
        polys.push_back(id.poly);
    }
    rep.check_true("outputs-are-identities", all_hold);

    if (subset.empty()) {
        rep.check("module-rank", static_cast<long long>(module_rank(polys, 4, F)), 240);
        rep.check_true("matches-trialgebra-module",
                       module_equal(polys, lifted_to_arity(defining_family(Target::triassociative), 4), 4, F));
    }

    for (const NamedIdentity& id : outputs)
        rep.item(id.name + ": " + render(id.poly, OpAlphabet::bw(), cs));

    if (!o.output.empty()) {
        write_json_artifact(o.output, identity_file_json("triplicator-outputs", outputs));
        rep.value("output", o.output);
    }
    return finish(rep, o.format);
}

int run_trisuccessor(const Options& o, const std::string& subset) {
    validate_format(o.format);
    const Charset cs = parse_charset(o.charset);
    const PrimeField F = make_field(o);
    const Polynomial jordan = jordan_seed();
    Expander ex(Target::tridendriform, 4);

    Report rep("trisuccessor");
    rep.config("identity", "jordan-linearized");
    rep.config("field", "F" + std::to_string(o.prime));

    std::vector<NamedIdentity> outputs;
    if (!subset.empty()) {
        const std::vector<int> L = parse_subset(subset, 4);
        rep.config("subset", subset_letters(L));
        rep.value("tree-terms-before-rewrite",
                  static_cast<long long>(trisuccessor_terms(jordan, L).size()));
        outputs.push_back({"L-" + subset_letters(L), 4, trisuccessor(jordan, L)});
    } else {
        rep.config("subset", "all");
        outputs = subset_sweep(jordan, 4, [](const Polynomial& p, const std::vector<int>& L) {
            return std::vector<Polynomial>{trisuccessor(p, L)};
        });
        rep.check("outputs", static_cast<long long>(outputs.size()), 15);
        rep.check("tree-terms-before-rewrite-ac",
                  static_cast<long long>(trisuccessor_terms(jordan, {0, 2}).size()), 8);
    }

    bool all_hold = true;
    std::vector<Polynomial> polys;
    for (const NamedIdentity& id : outputs) {
        all_hold = all_hold && ex.is_identity(id.poly);
        polys.push_back(id.poly);
    }
    rep.check_true("outputs-are-identities", all_hold);

    if (subset.empty()) {
        rep.check("module-rank", static_cast<long long>(module_rank(polys, 4, F)), 60);
        rep.check_true("matches-post-jordan-module",
                       module_equal(polys, lifted_to_arity(defining_family(Target::tridendriform), 4), 4, F));
    }

    for (const NamedIdentity& id : outputs)
        rep.item(id.name + ": " + render(id.poly, OpAlphabet::bw(), cs));

    if (!o.output.empty()) {
        write_json_artifact(o.output, identity_file_json("trisuccessor-outputs", outputs));
        rep.value("output", o.output);
    }
    return finish(rep, o.format);
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

void emit_enumeration_section(Report& rep, const std::string& pre) {
    std::vector<long long> counts;
    for (int n = 1; n <= 9; ++n) counts.push_back(static_cast<long long>(bw_skeletons(n).size()));
    rep.check(pre + "skeleton-counts", join(counts),
              join(std::vector<long long>(std::begin(kSkeletonCount), std::end(kSkeletonCount))));

    std::vector<long long> dims;
    for (int n = 1; n <= 6; ++n) dims.push_back(static_cast<long long>(bw_dimension(n)));
    rep.check(pre + "component-dims", join(dims),
              join(std::vector<long long>(std::begin(kComponentDim), std::end(kComponentDim))));

    const OpAlphabet& comm = single_op_alphabet(true);
    const OpAlphabet& plain = single_op_alphabet(false);
    std::vector<long long> we, cat;
    for (int n = 1; n <= 12; ++n) {
        we.push_back(static_cast<long long>(bw_skeletons(n, comm).size()));
        cat.push_back(static_cast<long long>(bw_skeletons(n, plain).size()));
    }
    rep.check(pre + "commutative-counts", join(we),
              join(std::vector<long long>(std::begin(kCommutativeCount), std::end(kCommutativeCount))));
    rep.check(pre + "plain-counts", join(cat), join(catalan_numbers(12)));
}

void emit_basis_section(Report& rep, const std::string& pre, Target t, int arity) {
    const int hi = std::min(arity, 6);
    for (int n = 2; n <= hi; ++n) {
        const long long reps =
            t == Target::triassociative
                ? static_cast<long long>(TriassClasses(n).reps(n).size())
                : static_cast<long long>(tridend_basis_skeletons(n).size());
        rep.check(pre + "classes-" + std::to_string(n), reps,
                  class_count_table().at({static_cast<int>(t), n}));
    }
    if (t == Target::triassociative && arity >= 3) {
        std::vector<std::size_t> sizes;
        for (const auto& cls : TriassClasses(3).classes(3)) sizes.push_back(cls.size());
        std::sort(sizes.begin(), sizes.end(), std::greater<>());
        rep.check(pre + "class-profile-3", join(sizes), "4 4 2 2 2 2 2");
    }
    for (int n = 3; n <= std::min(arity, 5); ++n) {
        const long long reps = class_count_table().at({static_cast<int>(t), n});
        rep.check(pre + "symmetrized-dim-" + std::to_string(n),
                  static_cast<long long>(symmetrized_basis(t, n, TriassClasses(n)).size()),
                  reps * factorial(n));
    }
}

int run_verify(const Options& o) {
    validate_format(o.format);
    const Charset cs = parse_charset(o.charset);
    if (o.field != "modular")
        throw UsageError("verify runs over a prime field; use --field modular");
    const bool both = o.target == "both";
    std::vector<Target> targets;
    if (both)
        targets = {Target::triassociative, Target::tridendriform};
    else
        targets = {parse_target(o.target)};
    validate_arity(o, 3, 6);
    const PrimeField F = make_field(o);

    Report rep("verify");
    rep.config("target", both ? "both" : target_key(targets[0]));
    rep.config("arity", o.arity);
    rep.config("field", "F" + std::to_string(o.prime));

    emit_enumeration_section(rep, "enumeration/");

    for (Target t : targets) {
        const std::string tp = target_key(t) + "/";
        emit_basis_section(rep, tp, t, o.arity);

        long long direct5 = -1;
        for (int n = 3; n <= std::min(o.arity, 5); ++n) {
            const long long rank =
                emit_expansion(rep, tp + "arity-" + std::to_string(n) + "/", t, n, F);
            if (n == 5) direct5 = rank;
        }

        emit_arity3_structure(rep, tp + "arity-3/", t, F, cs, nullptr);

        if (o.arity >= 4) {
            if (t == Target::triassociative)
                emit_triass_generators(rep, tp + "arity-4/", F, cs, nullptr);
            else
                emit_tridend_generators(rep, tp + "arity-4/", F, cs, nullptr);
        }

        if (o.arity >= 5) {
            const long long top = emit_isotypic(rep, tp + "arity-5/", t, 5, F);
            rep.check(tp + "arity-5/direct-rank-agreement", top, direct5);
        }
        if (o.arity >= 6) emit_isotypic(rep, tp + "arity-6/", t, 6, F);
    }

    // Triplicator and trisuccessor certificates live at arity 4.
    if (o.arity >= 4) {
        const Polynomial jordan = jordan_seed();
        if (both || targets[0] == Target::triassociative) {
            Expander ex(Target::triassociative, 4);
            const auto outs = subset_sweep(jordan, 4, [](const Polynomial& p, const std::vector<int>& L) {
                return triplicate(p, L);
            });
            rep.check("triplicator/outputs", static_cast<long long>(outs.size()), 1499);
            bool hold = true;
            std::vector<Polynomial> polys;
            for (const NamedIdentity& id : outs) {
                hold = hold && ex.is_identity(id.poly);
                polys.push_back(id.poly);
            }
            rep.check_true("triplicator/outputs-are-identities", hold);
            rep.check("triplicator/module-rank", static_cast<long long>(module_rank(polys, 4, F)), 240);
            rep.check_true("triplicator/matches-trialgebra-module",
                           module_equal(polys, lifted_to_arity(defining_family(Target::triassociative), 4), 4, F));
        }
        if (both || targets[0] == Target::tridendriform) {
            Expander ex(Target::tridendriform, 4);
            const auto outs = subset_sweep(jordan, 4, [](const Polynomial& p, const std::vector<int>& L) {
                return std::vector<Polynomial>{trisuccessor(p, L)};
            });
            rep.check("trisuccessor/outputs", static_cast<long long>(outs.size()), 15);
            rep.check("trisuccessor/tree-terms-before-rewrite-ac",
                      static_cast<long long>(trisuccessor_terms(jordan, {0, 2}).size()), 8);
            bool hold = true;
            std::vector<Polynomial> polys;
            for (const NamedIdentity& id : outs) {
                hold = hold && ex.is_identity(id.poly);
                polys.push_back(id.poly);
            }
            rep.check_true("trisuccessor/outputs-are-identities", hold);
            rep.check("trisuccessor/module-rank", static_cast<long long>(module_rank(polys, 4, F)), 60);
            rep.check_true("trisuccessor/matches-post-jordan-module",
                           module_equal(polys, lifted_to_arity(defining_family(Target::tridendriform), 4), 4, F));
        }
    }

    // Koszul catalog: every presentation dualizes onto its counterpart and
    // the double dual returns to the original row space.
    for (const auto& [name, counterpart] : dual_counterpart()) {
        std::string stem = name;
        std::transform(stem.begin(), stem.end(), stem.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        const QuadPresentation p = load_presentation(data_dir() + "/presentations/" + stem + ".json");
        const QuadPresentation d = dual_of(p);
        const QuadPresentation q = load_presentation(data_dir() + "/presentations/" + counterpart + ".json");
        rep.check_true("koszul/" + stem + "-dual-matches-" + counterpart,
                       d.relations.rcf() == q.relations.rcf());
        rep.check_true("koszul/" + stem + "-involution", dual_of(d).relations.rcf() == p.relations.rcf());
    }

    return finish(rep, o.format, o.output);
}

}  // namespace

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for expansion-map identities of "
                 "triassociative and tridendriform products"};
    app.require_subcommand(1);

    EnumerateOptions eo;
    Options xo, go, io, to, so, vo;
    BasisOptions bo;
    io.arity = 5;
    vo.target = "both";
    std::string kd_pres, kd_format = "text", kd_output;
    std::string trip_subset, tsu_subset;

    const auto add_common = [](CLI::App* cmd, Options& o, bool with_target, bool with_arity) {
        if (with_target)
            cmd->add_option("--target", o.target, "triassociative or tridendriform")
                ->capture_default_str();
        if (with_arity)
            cmd->add_option("--arity,-n", o.arity, "multilinear arity")->capture_default_str();
        cmd->add_option("--prime,-p", o.prime, "modulus for the modular field")
            ->envname("OPIDENT_PRIME")
            ->capture_default_str();
        cmd->add_option("--field", o.field, "modular or rational")->capture_default_str();
        cmd->add_option("--format", o.format, "text or json")->capture_default_str();
        cmd->add_option("--charset", o.charset, "unicode or ascii")->capture_default_str();
        cmd->add_option("--output,-o", o.output, "write the run artifact to this path");
        cmd->add_flag("--enable-arity6", o.arity6, "allow arity-6 computations");
    };

    CLI::App* c_enum = app.add_subcommand("enumerate", "skeleton counts and multilinear dimensions");
    c_enum->add_option("--alphabet", eo.alphabet, "bw, commutative, plain, triassociative, tridendriform")
        ->capture_default_str();
    c_enum->add_option("--max", eo.max, "largest arity to enumerate (per-alphabet default)");
    c_enum->add_flag("--dims", eo.dims, "also report multilinear dimensions");
    c_enum->add_option("--format", eo.format, "text or json")->capture_default_str();
    c_enum->add_option("--output,-o", eo.output, "write a copy of the report to this path");

    CLI::App* c_basis = app.add_subcommand("basis", "list one multilinear basis");
    c_basis->add_option("--alphabet", bo.alphabet, "bw, triassociative, or tridendriform")
        ->capture_default_str();
    c_basis->add_option("--arity,-n", bo.arity, "multilinear arity")->capture_default_str();
    c_basis->add_option("--format", bo.format, "text or json")->capture_default_str();
    c_basis->add_option("--charset", bo.charset, "unicode or ascii")->capture_default_str();
    c_basis->add_option("--output,-o", bo.output, "write a copy of the report to this path");

    CLI::App* c_expand = app.add_subcommand("expand", "expansion matrix: shape, rank, nullity");
    add_common(c_expand, xo, true, true);

    CLI::App* c_gen = app.add_subcommand("generators", "extract kernel generators and certify them");
    add_common(c_gen, go, true, true);

    CLI::App* c_iso = app.add_subcommand("isotypic", "per-partition kernel certification");
    add_common(c_iso, io, true, true);

    CLI::App* c_kd = app.add_subcommand("koszul-dual", "Koszul dual of a quadratic presentation");
    c_kd->add_option("presentation", kd_pres,
                     "catalog name (assoc, diass, dend, triass, tridend, comass, lie, "
                     "comtridend, trilie, comtriass, postlie) or a JSON file path")
        ->required();
    c_kd->add_option("--format", kd_format, "text or json")->capture_default_str();
    c_kd->add_option("--output,-o", kd_output, "write the dual presentation to this path");

    CLI::App* c_trip = app.add_subcommand("triplicator", "triplicate the linearized Jordan identity");
    add_common(c_trip, to, false, false);
    c_trip->add_option("--subset,-L", trip_subset, "argument subset, e.g. 'ac' (default: all subsets)");

    CLI::App* c_tsu = app.add_subcommand("trisuccessor", "trisuccessor of the linearized Jordan identity");
    add_common(c_tsu, so, false, false);
    c_tsu->add_option("--subset,-L", tsu_subset, "argument subset, e.g. 'ac' (default: all subsets)");

    CLI::App* c_verify = app.add_subcommand("verify", "full deterministic check battery");
    add_common(c_verify, vo, true, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (c_enum->parsed()) return run_enumerate(eo);
        if (c_basis->parsed()) return run_basis(bo);
        if (c_expand->parsed()) return run_expand(xo);
        if (c_gen->parsed()) return run_generators(go);
        if (c_iso->parsed()) return run_isotypic(io);
        if (c_kd->parsed()) return run_koszul_dual(kd_pres, kd_format, kd_output);
        if (c_trip->parsed()) return run_triplicator(to, trip_subset);
        if (c_tsu->parsed()) return run_trisuccessor(so, tsu_subset);
        if (c_verify->parsed()) return run_verify(vo);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
