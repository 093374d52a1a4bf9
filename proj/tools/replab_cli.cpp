// replab: exact computations in the representation theory of SL_n and Sp_2g,
// with the Johnson-homomorphism and weighted-partition machinery on top.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "replab/expr.hpp"
#include "replab/json_io.hpp"
#include "replab/paper_suite.hpp"

using namespace replab;

namespace {

// REPLAB_THREADS caps internal parallelism.  Every computation here is
// deterministic and currently runs on one thread, which respects any cap;
// the variable is still validated so misconfiguration fails loudly.
int thread_cap() {
    const char* env = std::getenv("REPLAB_THREADS");
    if (!env) return 1;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
        throw CLI::ValidationError("REPLAB_THREADS must be an integer >= 1");
    return static_cast<int>(v);
}

GroupFamily parse_group(const std::string& name, int rank) {
    if (name == "sp") return GroupFamily::sp(rank);
    if (name == "sl") return GroupFamily::sl(rank);
    throw CLI::ValidationError("--group must be sp or sl");
}

void print_decomposition_text(const Decomposition& dec, bool stable, bool check_dims) {
    std::printf("%s = %s\n", dec.group.str().c_str(), dec.str().c_str());
    std::printf("total_dim = %s%s\n", dec.total_dim().to_string().c_str(),
                stable ? " (stable)" : " (unstable range)");
    if (check_dims) {
        for (const auto& [p, m] : dec.terms)
            std::printf("  %s: mult %lld, dim %s\n", partition_str(p).c_str(), m,
                        weyl_dim(dec.group, p).to_string().c_str());
    }
}

int run(int argc, char** argv) {
    CLI::App app{"exact representation-theory computations for SL_n and Sp_2g"};
    app.require_subcommand(1);
    thread_cap();

    // decompose
    std::string group_name = "sp";
    int rank = 6;
    std::string expr_text;
    bool as_json = false, check_dims = false;
    auto* dec_cmd = app.add_subcommand("decompose", "decompose an expression into irreducibles");
    dec_cmd->add_option("--group", group_name, "sp or sl")->required();
    dec_cmd->add_option("--rank", rank, "g for sp, n for sl")->required();
    dec_cmd->add_option("expr", expr_text, "representation expression")->required();
    dec_cmd->add_flag("--json", as_json, "emit JSON");
    dec_cmd->add_flag("--check-dims", check_dims, "print per-term dimensions");

    // dim
    auto* dim_cmd = app.add_subcommand("dim", "dimension of an expression");
    dim_cmd->add_option("--group", group_name, "sp or sl")->required();
    dim_cmd->add_option("--rank", rank, "g for sp, n for sl")->required();
    dim_cmd->add_option("expr", expr_text, "representation expression")->required();
    dim_cmd->add_flag("--json", as_json, "emit JSON");

    // hom
    std::string expr2_text;
    auto* hom_cmd = app.add_subcommand("hom", "dimension of the equivariant hom space");
    hom_cmd->add_option("--group", group_name, "sp or sl")->required();
    hom_cmd->add_option("--rank", rank, "g for sp, n for sl")->required();
    hom_cmd->add_option("expr1", expr_text, "first expression")->required();
    hom_cmd->add_option("expr2", expr2_text, "second expression")->required();
    hom_cmd->add_flag("--json", as_json, "emit JSON");

    // branch
    auto* branch_cmd = app.add_subcommand("branch", "restrict V[...] from Sp_2g to Sp_2(g-1)");
    branch_cmd->add_option("--rank", rank, "g")->required();
    branch_cmd->add_option("expr", expr_text, "V[...] expression")->required();
    branch_cmd->add_flag("--json", as_json, "emit JSON");

    // johnson
    int genus = 6;
    std::string case_name = "boundary";
    int seed = 1, count = 100;
    auto* johnson_cmd = app.add_subcommand("johnson", "Johnson homomorphism computations");
    johnson_cmd->require_subcommand(1);
    auto* t1_cmd = johnson_cmd->add_subcommand("tau1-span", "span of the first Johnson image");
    t1_cmd->add_option("--g", genus, "genus")->required();
    t1_cmd->add_flag("--json", as_json, "emit JSON");
    auto* t2_cmd = johnson_cmd->add_subcommand("tau2-span", "span of the second Johnson image");
    t2_cmd->add_option("--g", genus, "genus")->required();
    t2_cmd->add_flag("--json", as_json, "emit JSON");
    auto* cup_cmd = johnson_cmd->add_subcommand("cup-image", "cup-product image decomposition");
    cup_cmd->add_option("--g", genus, "genus")->required();
    cup_cmd->add_option("--case", case_name, "boundary or closed")
        ->check(CLI::IsMember({"boundary", "closed"}));
    cup_cmd->add_flag("--json", as_json, "emit JSON");
    auto* bracket_cmd =
        johnson_cmd->add_subcommand("bracket-check", "randomized bracket-kernel checks");
    bracket_cmd->add_option("--seed", seed, "random seed");
    bracket_cmd->add_option("--count", count, "number of randomized values");
    bracket_cmd->add_flag("--json", as_json, "emit JSON");

    // certify
    int which = 1;
    auto* certify_cmd = app.add_subcommand("certify", "print a certifying multivector");
    certify_cmd->add_option("--which", which, "1 or 2")->check(CLI::IsMember({1, 2}))->required();
    certify_cmd->add_option("--g", genus, "genus")->required();
    certify_cmd->add_flag("--json", as_json, "emit JSON");

    // mm table
    int dmax = 6;
    auto* mm_cmd = app.add_subcommand("mm", "dimension-counting tables");
    mm_cmd->require_subcommand(1);
    auto* table_cmd = mm_cmd->add_subcommand("table", "the t_d / hom / weighted-partition table");
    table_cmd->add_option("--g", genus, "rank for the hom side (>= dmax)")->required();
    table_cmd->add_option("--dmax", dmax, "largest tensor degree");
    table_cmd->add_flag("--json", as_json, "emit JSON");

    // paper-suite
    app.add_subcommand("paper-suite", "run every acceptance criterion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    if (dec_cmd->parsed()) {
        GroupFamily group = parse_group(group_name, rank);
        RepExprPtr e = parse_rep_expr(expr_text);
        Decomposition dec = decompose(eval_rep_expr(e, group));
        bool stable = expr_is_stable(e, group);
        if (as_json)
            std::cout << decomposition_to_json(dec, stable).dump(2) << "\n";
        else
            print_decomposition_text(dec, stable, check_dims);
        return 0;
    }
    if (dim_cmd->parsed()) {
        GroupFamily group = parse_group(group_name, rank);
        RepExprPtr e = parse_rep_expr(expr_text);
        BigInt d = eval_rep_expr(e, group).dimension();
        if (as_json) {
            nlohmann::json j{{"schema", "replab/1"}, {"dim", d.to_string()}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::printf("%s\n", d.to_string().c_str());
        }
        return 0;
    }
    if (hom_cmd->parsed()) {
        GroupFamily group = parse_group(group_name, rank);
        BigInt h = hom_dim(eval_rep_expr(parse_rep_expr(expr_text), group),
                           eval_rep_expr(parse_rep_expr(expr2_text), group));
        if (as_json) {
            nlohmann::json j{{"schema", "replab/1"}, {"hom_dim", h.to_string()}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::printf("%s\n", h.to_string().c_str());
        }
        return 0;
    }
    if (branch_cmd->parsed()) {
        RepExprPtr e = parse_rep_expr(expr_text);
        if (e->kind != RepExpr::Kind::V)
            throw CLI::ValidationError("branch expects a V[...] expression");
        Decomposition dec = branch_sp(e->partition, rank);
        if (as_json)
            std::cout << decomposition_to_json(dec, true).dump(2) << "\n";
        else
            print_decomposition_text(dec, true, false);
        return 0;
    }
    if (t1_cmd->parsed() || t2_cmd->parsed()) {
        long long dim = t1_cmd->parsed() ? tau1_image_span(genus) : tau2_image_span(genus);
        if (as_json) {
            nlohmann::json j{{"schema", "replab/1"}, {"span_dim", dim}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::printf("{\"span_dim\": %lld}\n", dim);
        }
        return 0;
    }
    if (cup_cmd->parsed()) {
        const CupImage& ci = cup_image_full(genus);
        const Decomposition& dec = case_name == "closed" ? ci.closed_dec : ci.boundary_dec;
        long long span = case_name == "closed" ? ci.closed_dim : ci.boundary_dim;
        if (as_json) {
            nlohmann::json j = decomposition_to_json(dec, true);
            j["span_dim"] = span;
            std::cout << j.dump(2) << "\n";
        } else {
            print_decomposition_text(dec, true, false);
            std::printf("span_dim = %lld\n", span);
        }
        return 0;
    }
    if (bracket_cmd->parsed()) {
        std::mt19937 rng(static_cast<unsigned>(seed));
        int passed = 0;
        for (int trial = 0; trial < count; ++trial) {
            int g = 3 + trial % 4;
            auto gens = all_generators(g);
            SpMatrix m = SpMatrix::identity(g);
            std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
            for (int i = 0; i < 8; ++i) m = m * gens[pick(rng)].mat;
            int h = 1 + trial % (g - 1);
            std::vector<std::pair<MultiVector, MultiVector>> v;
            for (int i = 1; i <= h; ++i)
                v.push_back({apply_matrix(m, h_basis(g, SymplecticSpace::a(i)), false),
                             apply_matrix(m, h_basis(g, SymplecticSpace::b(i)), false)});
            bool ok;
            if (trial % 2 == 0) {
                GeneratorSpec bp = GeneratorSpec::bounding_pair(
                    g, apply_matrix(m, h_basis(g, SymplecticSpace::a(h + 1)), false), v);
                ok = check_bracket(tau1(bp));
            } else {
                ok = check_bracket(tau2_septwist(GeneratorSpec::sep_twist(g, v)));
            }
            if (ok) ++passed;
        }
        if (as_json) {
            nlohmann::json j{{"schema", "replab/1"}, {"checked", count}, {"passed", passed}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::printf("bracket vanishing held on %d/%d randomized values\n", passed, count);
        }
        return passed == count ? 0 : 1;
    }
    if (certify_cmd->parsed()) {
        MultiVector v = which == 1 ? certify1(genus) : certify2(genus);
        if (as_json)
            std::cout << multivector_to_json(v).dump(2) << "\n";
        else
            std::printf("%s\n", v.str().c_str());
        return 0;
    }
    if (table_cmd->parsed()) {
        std::vector<TableRow> rows;
        bool mismatch = false;
        std::string mismatch_msg;
        try {
            rows = comparison_table(genus, dmax);
        } catch (const TableMismatch& e) {
            mismatch = true;
            mismatch_msg = e.what();
            rows = comparison_table_rows(genus, dmax, cup_image_boundary(6));
        }
        if (as_json) {
            std::cout << table_to_json(rows).dump(2) << "\n";
        } else {
            std::printf("%3s %6s %8s %8s %10s\n", "d", "t_d", "hom", "sum", "kawazumi");
            for (const auto& r : rows)
                std::printf("%3d %6lld %8lld %8lld %10lld%s\n", r.d, r.t_d, r.hom, r.sum,
                            r.kawazumi, r.match() ? "" : "   <- MISMATCH");
        }
        if (mismatch) {
            std::fprintf(stderr, "table mismatch: %s\n", mismatch_msg.c_str());
            return 1;
        }
        return 0;
    }
    if (app.got_subcommand("paper-suite")) {
        bool all = true;
        for (const CriterionResult& r : run_paper_suite()) {
            std::printf("[%s] criterion %d: %s%s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                        r.name.c_str(), r.detail.empty() ? "" : " -- ", r.detail.c_str());
            all &= r.pass;
        }
        return all ? 0 : 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const SyntaxError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
