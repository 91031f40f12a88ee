#include "doctest.h"

#include <random>

#include "coboundary/ncalg.hpp"

using namespace coboundary;

namespace {

struct Fixture {
  std::shared_ptr<GeneratorSet> owned = std::make_shared<GeneratorSet>();
  GenSetPtr gens;
  Fixture() {
    owned->add_family("a", 2, 0);
    owned->add_family("b", 2, 1);
    gens = owned;
  }
  NCPoly a(std::size_t i, std::size_t j) const { return NCPoly::generator(gens, gens->gen("a", i, j)); }
  NCPoly b(std::size_t i, std::size_t j) const { return NCPoly::generator(gens, gens->gen("b", i, j)); }
  NCPoly one() const { return NCPoly(gens, Scalar(1)); }
};

// q-plane style relations on family a, star-closed.
RelationSet sample_relations(const Fixture& f) {
  const Scalar q = Scalar::q();
  RelationSet rs;
  rs.name = "sample";
  rs.add(f.a(0, 0) * f.a(0, 1) - q * (f.a(0, 1) * f.a(0, 0)), "r1");
  rs.add(f.a(0, 0) * f.a(1, 1) - f.a(1, 1) * f.a(0, 0), "r2");
  rs.add(f.a(1, 0) * f.a(0, 1) - f.one(), "r3");
  rs.close_under_star();
  return rs;
}

}  // namespace

TEST_CASE("generator symbols and star") {
  Fixture f;
  CHECK(f.gens->size() == 16);
  const Gen g = f.gens->gen("a", 0, 1);
  CHECK(f.gens->symbol(g) == "a12");
  CHECK(f.gens->symbol(f.gens->star(g)) == "a*12");
  CHECK(f.gens->star(f.gens->star(g)) == g);
  CHECK(f.gens->parse_symbol("b*21") == f.gens->gen("b*", 1, 0));
}

TEST_CASE("cross-factor commutation") {
  Fixture f;
  CHECK(f.a(0, 0) * f.b(1, 1) == f.b(1, 1) * f.a(0, 0));
  CHECK(f.a(0, 0) * f.a(1, 1) != f.a(1, 1) * f.a(0, 0));
  const NCPoly p = f.b(0, 0) * f.a(0, 1) * f.b(1, 0) * f.a(1, 0);
  CHECK(p == f.a(0, 1) * f.a(1, 0) * f.b(0, 0) * f.b(1, 0));
}

TEST_CASE("star is an antihomomorphism within each factor") {
  Fixture f;
  const NCPoly x = Scalar::zeta(4) * f.a(0, 1) + f.b(1, 0);
  const NCPoly y = f.a(1, 1) * f.b(0, 0) + Scalar::q() * f.one();
  CHECK((x * y).star() == y.star() * x.star());
  CHECK((x * y).star().star() == x * y);
  CHECK((Scalar::zeta(4) * f.a(0, 0)).star() == Scalar::zeta(4, 3) * NCPoly::generator(f.gens, f.gens->gen("a*", 0, 0)));
}

TEST_CASE("matrix tensor square and composition") {
  Fixture f;
  const NCMatrix a = NCMatrix::generators(f.gens, "a");
  const NCMatrix sq = matrix_tensor_square(a);
  CHECK(sq.at(0 * 2 + 0, 0 * 2 + 1) == f.a(0, 0) * f.a(0, 1));
  CHECK(sq.at(1 * 2 + 0, 0 * 2 + 1) == f.a(1, 0) * f.a(0, 1));
  const NCMatrix id = NCMatrix::identity(2);
  const NCMatrix c = matrix_compose_factors({id, a, id});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(c.at(i, j) == a.at(i, j));
  const NCMatrix b = NCMatrix::generators(f.gens, "b");
  const NCMatrix ab = matrix_compose_factors({a, b});
  CHECK(ab.at(0, 0) == f.a(0, 0) * f.b(0, 0) + f.a(0, 1) * f.b(1, 0));
  CHECK_THROWS_AS(matrix_compose_factors({b, a}), AlgebraError);
  CHECK_THROWS_AS(matrix_compose_factors({a, a}), AlgebraError);
}

TEST_CASE("substitute") {
  Fixture f;
  const NCPoly p = f.a(0, 0) * f.a(1, 1) - Scalar::q() * f.one();
  std::map<Gen, NCPoly> id;
  CHECK(substitute(p, id) == p);
  std::map<Gen, NCPoly> swap{{f.gens->gen("a", 0, 0), f.a(1, 1)}, {f.gens->gen("a", 1, 1), f.a(0, 0)}};
  CHECK(substitute(p, swap) == f.a(1, 1) * f.a(0, 0) - Scalar::q() * f.one());
  std::map<Gen, NCPoly> bad{{f.gens->gen("a", 0, 0), f.a(0, 1)}, {f.gens->gen("a*", 0, 0), f.a(1, 0)}};
  CHECK_THROWS_AS(substitute(p, bad), AlgebraError);
  const NCPoly r = f.a(1, 0) * f.b(0, 1);
  CHECK(substitute(p + r, swap) == substitute(p, swap) + substitute(r, swap));
}

TEST_CASE("membership basics") {
  Fixture f;
  const RelationSet rs = sample_relations(f);
  for (const auto& r : rs.relations) {
    const auto res = reduce_mod_ideal(r, rs, 2);
    CHECK(res.is_zero);
    CHECK(replay_certificate(res.certificate, rs) == r);
  }
  CHECK_FALSE(reduce_mod_ideal(f.a(0, 0), rs, 3).is_zero);
  CHECK_THROWS_AS(reduce_mod_ideal(f.a(0, 0) * f.a(0, 0) * f.a(0, 0), rs, 2), DegreeOverflow);
  // a11 a12 a21 - q a12 a11 a21 = r1 * a21
  const NCPoly p = (f.a(0, 0) * f.a(0, 1) - Scalar::q() * (f.a(0, 1) * f.a(0, 0))) * f.a(1, 0);
  const auto res = reduce_mod_ideal(p, rs, 3);
  REQUIRE(res.is_zero);
  CHECK(replay_certificate(res.certificate, rs) == p);
}

TEST_CASE("membership with inhomogeneous relations and a free constant") {
  Fixture f;
  const RelationSet rs = sample_relations(f);
  // a21 a12 a11 = a11 modulo r3
  const NCPoly p = f.a(1, 0) * f.a(0, 1) * f.a(0, 0) - f.a(0, 0);
  const auto res = reduce_mod_ideal(p, rs, 3);
  REQUIRE(res.is_zero);
  CHECK(replay_certificate(res.certificate, rs) == p);

  MembershipOptions opts;
  opts.max_degree = 2;
  opts.free_constant = true;
  const auto with_const = reduce_mod_ideal(f.a(1, 0) * f.a(0, 1) + Scalar(5) * f.one(), rs, opts);
  REQUIRE(with_const.is_zero);
  bool found = false;
  for (const auto& t : with_const.certificate) {
    if (t.relation == kFreeConstant) {
      CHECK(t.coefficient == Scalar(6));
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("random ideal elements certify and replay, star symmetric") {
  Fixture f;
  const RelationSet rs = sample_relations(f);
  std::mt19937_64 rng(23);
  std::vector<NCPoly> letters;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      letters.push_back(f.a(i, j));
      letters.push_back(f.b(i, j));
    }
  for (int t = 0; t < 15; ++t) {
    NCPoly p(f.gens);
    for (int k = 0; k < 2; ++k) {
      const NCPoly& r = rs.relations[rng() % rs.size()];
      const NCPoly& l = letters[rng() % letters.size()];
      const NCPoly& m = letters[rng() % letters.size()];
      p += Scalar(static_cast<long>(rng() % 5) - 2) * (l * r * m);
    }
    const auto res = reduce_mod_ideal(p, rs, 4);
    CHECK(res.is_zero);
    CHECK(replay_certificate(res.certificate, rs) == p);
    CHECK(reduce_mod_ideal(p.star(), rs, 4).is_zero);
  }
  const NCPoly outside = f.a(0, 0) * f.a(1, 0);
  CHECK_FALSE(reduce_mod_ideal(outside, rs, 3).is_zero);
  CHECK_FALSE(reduce_mod_ideal(outside.star(), rs, 3).is_zero);
}

TEST_CASE("truncated span dimension is monotone") {
  auto owned = std::make_shared<GeneratorSet>();
  owned->add_family("x", 1, 0);
  owned->add_family("y", 1, 0);
  GenSetPtr gens = owned;
  const NCPoly x = NCPoly::generator(gens, gens->gen("x", 0, 0));
  const NCPoly y = NCPoly::generator(gens, gens->gen("y", 0, 0));
  RelationSet rs;
  rs.add(x * y - Scalar::q() * (y * x), "xy");
  rs.close_under_star();
  std::size_t prev = 0;
  for (std::size_t d = 2; d <= 4; ++d) {
    const std::size_t dim = truncated_span_dimension(rs, d);
    CHECK(dim >= prev);
    prev = dim;
  }
  CHECK(truncated_span_dimension(rs, 2) == 2);
  CHECK(span_dimension({x, y, x + y}) == 2);
}
