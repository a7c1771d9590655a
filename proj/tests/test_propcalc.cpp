#include <thread>

#include "doctest.h"
#include "oracles.hpp"
#include "propkoszul/enumerate.hpp"
#include "propkoszul/presets.hpp"
#include "propkoszul/propcalc.hpp"

using namespace propkoszul;

namespace {

LinComb single(const Presentation& p, const std::string& literal) {
  LinComb lc;
  add_term(lc, parse_graph_literal(literal, p.generators), 1, p.generators);
  return lc;
}

const char* kProduct = "a=product; in[1] -> a.in[1]; in[2] -> a.in[2]; a.out[1] -> out[1]";

}  // namespace

TEST_SUITE("propcalc") {
  TEST_CASE("classical operads: dims of the quotient agree with tree expansion") {
    struct Case {
      const char* preset;
      oracle::Flavor flavor;
    };
    for (auto [name, flavor] : {Case{"lie-operad", oracle::Flavor::Lie}, Case{"ass-operad", oracle::Flavor::Ass},
                                Case{"com-operad", oracle::Flavor::Com}}) {
      QuadraticProp p(load_preset(name));
      for (int n = 2; n <= 5; ++n) {
        INFO(name << " arity " << n);
        CHECK(p.quotient(1, n, n - 1).dim() == oracle::binary_operad_dim(n, flavor));
      }
    }
  }

  TEST_CASE("classical operads: closed-form dimensions") {
    QuadraticProp lie(load_preset("lie-operad")), ass(load_preset("ass-operad")), com(load_preset("com-operad"));
    const std::size_t lie_dims[] = {1, 1, 2, 6}, ass_dims[] = {1, 2, 6, 24};
    for (int n = 1; n <= 4; ++n) {
      CHECK(lie.quotient(1, n, n - 1).dim() == lie_dims[n - 1]);
      CHECK(ass.quotient(1, n, n - 1).dim() == ass_dims[n - 1]);
      CHECK(com.quotient(1, n, n - 1).dim() == 1);
    }
  }

  TEST_CASE("nilpotent algebra") {
    QuadraticProp p(load_preset("nilpotent-algebra"));
    const std::size_t want[] = {1, 1, 0, 0, 0};
    for (int w = 0; w <= 4; ++w) CHECK(p.quotient(1, 1, w).dim() == want[w]);
    TruncationParams trunc{4, 2};
    LinComb x = single(p.presentation(), "a=x; in[1] -> a.in[1]; a.out[1] -> out[1]");
    CHECK(compose_in_quotient(p, x, x, trunc).empty());
  }

  TEST_CASE("relation spaces") {
    struct Case {
      const char* preset;
      int m, n;
      std::size_t dim;
    };
    // Jacobi spans the sign representation of S3 inside the free (1,3)
    // slice; associativity spans a regular representation; commutative
    // associativity identifies all three trees.
    const Case cases[] = {{"lie-operad", 1, 3, 1},     {"ass-operad", 1, 3, 6}, {"com-operad", 1, 3, 2},
                          {"nilpotent-algebra", 1, 1, 1}, {"bilie", 1, 3, 1},    {"bilie", 3, 1, 1},
                          {"bilie", 2, 2, 1},         {"bilie0", 2, 2, 1},     {"bilie-nocompat", 2, 2, 0},
                          {"infbi", 1, 3, 6},         {"infbi", 3, 1, 6},      {"infbi", 2, 2, 4}};
    for (const auto& c : cases) {
      QuadraticProp p(load_preset(c.preset));
      INFO(c.preset << " (" << c.m << "," << c.n << ")");
      CHECK(p.relation_dim(c.m, c.n) == c.dim);
      // In weight 2 the ideal is R itself.
      const auto& q = p.quotient(c.m, c.n, 2);
      CHECK(q.ideal_dim() == c.dim);
      CHECK(q.dim() + c.dim == enumerate_connected(p.generators(), 2, c.m, c.n).size());
    }
  }

  TEST_CASE("projection onto the quotient") {
    QuadraticProp p(load_preset("bilie"));
    TruncationParams trunc;
    auto b = quotient_component(p, 2, 2, 2, trunc);
    REQUIRE(b.quotient_projection.has_value());
    CHECK(b.quotient_projection->rows() == b.dim());
    CHECK(b.quotient_projection->cols() == b.free_basis.size());
    CHECK(rank(*b.quotient_projection) == b.dim());
    // Relations map to zero.
    for (const auto& rel : p.relations().at({2, 2})) {
      SparseVec v;
      for (const auto& [code, c] : rel) {
        auto it = std::lower_bound(b.free_basis.begin(), b.free_basis.end(), code);
        REQUIRE(it != b.free_basis.end());
        v.emplace_back(static_cast<std::size_t>(it - b.free_basis.begin()), c);
      }
      CHECK(b.quotient_projection->apply(make_sparse(v)).empty());
    }
    CHECK_THROWS_AS(quotient_component(p, 2, 2, 4, trunc), std::out_of_range);
  }

  TEST_CASE("associativity and Jacobi hold in the quotient") {
    TruncationParams trunc;
    {
      QuadraticProp ass(load_preset("ass-operad"));
      LinComb mu = single(ass.presentation(), kProduct);
      // (x1 x2) x3 against x1 (x2 x3).
      LinComb left = compose_partial_in_quotient(ass, mu, 0, mu, 0, trunc);
      LinComb right = compose_partial_in_quotient(ass, mu, 1, mu, 0, trunc);
      CHECK_FALSE(left.empty());
      CHECK(left == right);
    }
    {
      QuadraticProp lie(load_preset("lie-operad"));
      LinComb b = single(lie.presentation(), "a=bracket; in[1] -> a.in[1]; in[2] -> a.in[2]; a.out[1] -> out[1]");
      // [[x1,x2],x3] + cyclic, written by relabeling the inputs of one tree.
      LinComb t = compose_partial_in_quotient(lie, b, 0, b, 0, trunc);
      LinComb sum;
      for (const auto& tau : {Permutation({0, 1, 2}), Permutation({1, 2, 0}), Permutation({2, 0, 1})})
        for (const auto& [code, c] : t) add_term(sum, relabel_legs(decode(code), Permutation::identity(1), tau), c,
                                                 lie.generators());
      CHECK_FALSE(t.empty());
      CHECK(reduce_in_quotient(lie, sum).empty());
    }
    {
      QuadraticProp com(load_preset("com-operad"));
      LinComb mu = single(com.presentation(), kProduct);
      LinComb a = compose_partial_in_quotient(com, mu, 0, mu, 0, trunc);
      LinComb b = compose_partial_in_quotient(com, mu, 1, mu, 0, trunc);
      CHECK(a == b);
    }
  }

  TEST_CASE("grafting and the unit strand") {
    Presentation p = load_preset("infbi");
    GeneratorTable gens = p.generators;
    Graph mu = parse_graph_literal(kProduct, gens);
    Graph delta = parse_graph_literal("a=coproduct; in[1] -> a.in[1]; a.out[1] -> out[1]; a.out[2] -> out[2]", gens);
    Graph id = unit_strand();
    CHECK(canonical_form(graft_partial(mu, 0, id, 0), gens).code == canonical_form(mu, gens).code);
    CHECK(canonical_form(graft_partial(id, 0, mu, 0), gens).code == canonical_form(mu, gens).code);
    // mu after delta is the genus-one loop; delta after mu is the (2,2) tree.
    Graph loop = graft(mu, delta);
    CHECK(loop.outputs == 1);
    CHECK(loop.inputs == 1);
    CHECK(is_connected(loop));
    Graph tree = graft(delta, mu);
    CHECK(tree.outputs == 2);
    CHECK(tree.inputs == 2);
    CHECK_THROWS_AS(graft(mu, mu), std::invalid_argument);
    CHECK_THROWS_AS(graft_partial(mu, 2, mu, 0), std::invalid_argument);

    // Partial grafting leg order: inputs a.in[<i], b.in, a.in[>i].
    Graph g = graft_partial(mu, 1, mu, 0);
    CHECK(g.inputs == 3);
    CHECK(g.vertices.size() == 2);
  }

  TEST_CASE("composition beyond the truncation is refused") {
    QuadraticProp p(load_preset("ass-operad"));
    TruncationParams trunc{1, 6};
    LinComb mu = single(p.presentation(), kProduct);
    CHECK_THROWS_AS(compose_partial_in_quotient(p, mu, 0, mu, 0, trunc), std::out_of_range);
  }

  TEST_CASE("composition product: two-level graphs") {
    const Generator com{"mu", 1, 2, Symmetry::Trivial, Symmetry::Trivial};
    const Generator ass{"mu", 1, 2, Symmetry::Trivial, Symmetry::Regular};
    std::vector<Generator> c{com}, a{ass};
    // One product on each level, one unit strand: the pair fed to the lower
    // product is the only choice.
    CHECK(composition_product(c, c, 1, 3, true).basis.size() == 3);
    CHECK(composition_product(a, a, 1, 3, true).basis.size() == 12);
    // A single product may sit on either level with strands elsewhere.
    CHECK(composition_product(c, c, 1, 2, true).basis.size() == 2);
    // Unit: I boxtimes Q = Q on connected graphs means level 2 made of strands.
    std::vector<Generator> none;
    CHECK(composition_product(none, c, 1, 2, true).basis.size() == 1);
    CHECK(composition_product(c, none, 1, 2, true).basis.size() == 1);
    // Disconnected graphs are kept when asked for.
    CHECK(composition_product(c, c, 2, 4, false).basis.size() > composition_product(c, c, 2, 4, true).basis.size());
  }

  TEST_CASE("invalid presentations are rejected") {
    Presentation p = load_preset("bilie");
    p.generators.push_back(p.generators.front());
    CHECK(validate_presentation(p).has_value());
    CHECK_THROWS_AS(QuadraticProp{p}, std::invalid_argument);
    Presentation q = load_preset("bilie");
    q.relations.front().terms.clear();
    CHECK(validate_presentation(q).has_value());
  }

  TEST_CASE("memoized slices are shared across threads") {
    QuadraticProp p(load_preset("bilie"));
    std::vector<std::thread> pool;
    std::vector<const QuotientSpace*> seen(4);
    for (int t = 0; t < 4; ++t) pool.emplace_back([&, t] { seen[t] = &p.quotient(2, 3, 3); });
    for (auto& th : pool) th.join();
    for (auto* s : seen) CHECK(s == seen.front());
  }
}
