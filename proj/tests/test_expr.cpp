#include "doctest.h"

#include <random>

#include "replab/expr.hpp"
#include "replab/json_io.hpp"

using namespace replab;

namespace {

RepExprPtr random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> kind(0, depth <= 0 ? 2 : 6);
    auto node = std::make_shared<RepExpr>();
    switch (kind(rng)) {
        case 0:
            node->kind = RepExpr::Kind::H;
            break;
        case 1: {
            node->kind = RepExpr::Kind::V;
            std::uniform_int_distribution<int> len(0, 3);
            int parts = len(rng), prev = 4;
            for (int i = 0; i < parts; ++i) {
                std::uniform_int_distribution<int> part(1, prev);
                prev = part(rng);
                node->partition.push_back(prev);
            }
            break;
        }
        case 2:
            node->kind = RepExpr::Kind::Lie;
            node->arg = 1 + static_cast<int>(rng() % 5);
            break;
        case 3:
        case 4:
            node->kind = kind(rng) % 2 ? RepExpr::Kind::Wedge : RepExpr::Kind::Sym;
            node->arg = static_cast<int>(rng() % 4);
            node->a = random_expr(rng, depth - 1);
            break;
        case 5:
            node->kind = RepExpr::Kind::Tensor;
            node->a = random_expr(rng, depth - 1);
            node->b = random_expr(rng, depth - 1);
            break;
        case 6:
            node->kind = RepExpr::Kind::Quot;
            node->a = random_expr(rng, depth - 1);
            node->quot_name = quot_embed_names()[rng() % 3];
            break;
    }
    return node;
}

bool same_expr(const RepExprPtr& x, const RepExprPtr& y) { return x->str() == y->str(); }

}  // namespace

TEST_CASE("parsing the grammar") {
    RepExprPtr e = parse_rep_expr("wedge(2, wedge(3, H))");
    CHECK(e->str() == "wedge(2,wedge(3,H))");
    CHECK(e->kind == RepExpr::Kind::Wedge);
    CHECK(e->arg == 2);
    CHECK(e->a->kind == RepExpr::Kind::Wedge);
    CHECK(e->degree() == 6);

    RepExprPtr q = parse_rep_expr("quot(wedge(3,H), H-in-wedge3)");
    CHECK(q->kind == RepExpr::Kind::Quot);
    CHECK(q->quot_name == "H-in-wedge3");
    CHECK(q->str() == "quot(wedge(3,H),H-in-wedge3)");

    RepExprPtr v = parse_rep_expr(" V[ 2 , 1 ] ");
    CHECK(v->str() == "V[2,1]");
    CHECK(parse_rep_expr("V[]")->partition.empty());

    RepExprPtr t = parse_rep_expr("tensor(H, lie(3))");
    CHECK(t->str() == "tensor(H,lie(3))");
    CHECK(t->degree() == 4);
}

TEST_CASE("syntax errors carry the byte offset and expectations") {
    try {
        parse_rep_expr("wedge(2 H)");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.offset == 8);
        REQUIRE(!e.expected.empty());
        CHECK(e.expected[0] == "\",\"");
    }
    CHECK_THROWS_AS(parse_rep_expr("V[2,3]"), SyntaxError);   // not weakly decreasing
    CHECK_THROWS_AS(parse_rep_expr("quot(H, bogus)"), SyntaxError);
    CHECK_THROWS_AS(parse_rep_expr("wedge(2,H) junk"), SyntaxError);
    CHECK_THROWS_AS(parse_rep_expr("frob(1)"), SyntaxError);
    CHECK_THROWS_AS(parse_rep_expr(""), SyntaxError);
}

TEST_CASE("parse-print round trip") {
    std::mt19937 rng(99);
    for (int t = 0; t < 300; ++t) {
        RepExprPtr e = random_expr(rng, 3);
        CHECK(same_expr(e, parse_rep_expr(e->str())));
        // whitespace insensitivity
        std::string spaced;
        for (char c : e->str()) {
            spaced.push_back(c);
            if (c == ',' || c == '(') spaced.push_back(' ');
        }
        CHECK(same_expr(e, parse_rep_expr(spaced)));
    }
}

TEST_CASE("evaluation matches the character ring") {
    GroupFamily sp3 = GroupFamily::sp(3);
    CHECK(eval_rep_expr(parse_rep_expr("H"), sp3) == std_char(sp3));
    CHECK(eval_rep_expr(parse_rep_expr("wedge(2,H)"), sp3) == wedge_power(std_char(sp3), 2));
    CHECK(eval_rep_expr(parse_rep_expr("tensor(H,H)"), sp3) ==
          tensor(std_char(sp3), std_char(sp3)));
    CHECK(eval_rep_expr(parse_rep_expr("V[1,1]"), sp3) == freudenthal_char(sp3, {1, 1}));
    CHECK(eval_rep_expr(parse_rep_expr("lie(2)"), sp3) == lie_character(sp3, 2));

    // the quotient (wedge^3 H)/H evaluates to a genuine character
    FormalCharacter q = eval_rep_expr(parse_rep_expr("quot(wedge(3,H),H-in-wedge3)"), sp3);
    CHECK(q.genuine());
    CHECK(q.dimension().to_int64() == 20 - 6);

    // stability flag
    CHECK(expr_is_stable(parse_rep_expr("tensor(H,H)"), GroupFamily::sp(2)));
    CHECK_FALSE(expr_is_stable(parse_rep_expr("tensor(H,tensor(H,H))"), GroupFamily::sp(2)));
    CHECK_FALSE(expr_is_stable(parse_rep_expr("tensor(H,H)"), GroupFamily::sl(2)));
    CHECK(expr_is_stable(parse_rep_expr("tensor(H,H)"), GroupFamily::sl(3)));
}

TEST_CASE("json serialization") {
    GroupFamily sp6 = GroupFamily::sp(6);
    RepExprPtr e = parse_rep_expr("wedge(2,wedge(3,H))");
    Decomposition dec = decompose(eval_rep_expr(e, sp6));
    nlohmann::json j = decomposition_to_json(dec, expr_is_stable(e, sp6));
    CHECK(j["schema"] == "replab/1");
    CHECK(j["group"] == "Sp");
    CHECK(j["rank"] == 6);
    CHECK(j["stable"] == true);
    CHECK(j["terms"].size() == 7);
    CHECK(j["total_dim"] == "24090");
    // text and JSON report identical numbers
    BigInt total;
    for (const auto& term : j["terms"]) {
        Partition p = term["partition"].get<Partition>();
        long long m = term["mult"].get<long long>();
        CHECK(m == dec.mult(p));
        CHECK(term["dim"].get<std::string>() == weyl_dim(sp6, p).to_string());
    }

    MultiVector c1 = certify1(6);
    nlohmann::json mj = multivector_to_json(c1);
    CHECK(mj["shape"] == "wedge(4,H)");
    CHECK(mj["g"] == 6);
    REQUIRE(mj["entries"].size() == 1);
    CHECK(mj["entries"][0]["coeff"] == "-3");
    CHECK(mj["entries"][0]["index"] == std::vector<int>{0, 2, 4, 6});
}
