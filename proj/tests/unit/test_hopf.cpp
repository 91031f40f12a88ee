#include "doctest.h"

#include "coboundary/hopf.hpp"

using namespace coboundary;

namespace {

// Group algebra of Z_m written out as a JSON spec.
Json cyclic_spec(std::size_t m) {
  Json j = Json::object();
  j["name"] = "Z" + std::to_string(m);
  Json basis = Json::array(), mult = Json::array(), comult = Json::array(), antipode = Json::array();
  for (std::size_t a = 0; a < m; ++a) {
    basis.push_back("g" + std::to_string(a));
    for (std::size_t b = 0; b < m; ++b) mult.push_back({{"i", a}, {"j", b}, {"k", (a + b) % m}, {"coeff", 1}});
    comult.push_back({{"i", a}, {"j", a}, {"k", a}, {"coeff", 1}});
    antipode.push_back({{"i", a}, {"j", (m - a) % m}, {"coeff", 1}});
  }
  Json counit = Json::array();
  for (std::size_t a = 0; a < m; ++a) counit.push_back({{"i", a}, {"coeff", 1}});
  j["basis"] = basis;
  j["mult"] = mult;
  j["comult"] = comult;
  Json unit = Json::array();
  unit.push_back({{"i", 0}, {"coeff", 1}});
  j["unit"] = unit;
  j["counit"] = counit;
  j["antipode"] = antipode;
  return j;
}

RElement from_rows(std::initializer_list<std::initializer_list<Scalar>> rows) { return {Tensor::matrix(rows)}; }

// Product in H (x) H straight from the structure constants.
Tensor product2(const HopfData& h, const Tensor& x, const Tensor& y) {
  const std::size_t d = h.d;
  Tensor out = Tensor::zeros({d, d});
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      if (x.at(a, b).is_zero()) continue;
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t e = 0; e < d; ++e) {
          if (y.at(c, e).is_zero()) continue;
          for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
              out.at(k, l) += x.at(a, b) * y.at(c, e) * h.mult.at({a, c, k}) * h.mult.at({b, e, l});
        }
    }
  return out;
}

bool all_conditions(const HopfData& h, const RElement& r) {
  return check_intertwiner(h, r).passed() && check_cocycle(h, r).passed() && check_counit_R(h, r).passed() &&
         check_coassoc_tilde(h, r).passed() && check_psi_morphism(h, r).passed();
}

}  // namespace

TEST_CASE("catalog algebras satisfy the axioms") {
  for (const auto& name : hopf_catalog_names()) {
    const HopfData h = hopf_catalog(name);
    CHECK(h.name == name);
    CHECK_NOTHROW(validate_hopf(h));
  }
  CHECK(hopf_catalog("Sweedler").labels == std::vector<std::string>{"1", "g", "x", "gx"});
  CHECK_THROWS_AS(hopf_catalog("Z7"), UsageError);
}

TEST_CASE("hopf spec roundtrip") {
  for (const auto& name : hopf_catalog_names()) {
    const HopfData h = hopf_catalog(name);
    const HopfData back = load_hopf(hopf_to_json(h));
    CHECK(back.mult == h.mult);
    CHECK(back.comult == h.comult);
    CHECK(back.unit == h.unit);
    CHECK(back.counit == h.counit);
    CHECK(back.antipode == h.antipode);
    CHECK(hopf_to_json(back) == hopf_to_json(h));
  }
  const HopfData z4 = load_hopf(cyclic_spec(4));
  CHECK(z4.d == 4);
}

TEST_CASE("broken associativity names the triple") {
  Json spec = cyclic_spec(3);
  // g1 g1 = g0 instead of g2.
  for (auto& e : spec["mult"])
    if (e["i"] == 1 && e["j"] == 1) e["k"] = 0;
  try {
    load_hopf(spec);
    FAIL("expected HopfAxiomError");
  } catch (const HopfAxiomError& e) {
    CHECK(e.axiom() == "associativity");
    CHECK(e.basis() == std::vector<std::size_t>{1, 1, 2});
    CHECK(std::string(e.what()).find("g1, g1, g2") != std::string::npos);
  }
}

TEST_CASE("broken antipode is rejected") {
  Json spec = cyclic_spec(3);
  for (auto& e : spec["antipode"]) e["j"] = e["i"];
  CHECK_THROWS_AS(load_hopf(spec), HopfAxiomError);
  Json bad = cyclic_spec(2);
  bad.erase("comult");
  CHECK_THROWS_AS(load_hopf(bad), std::invalid_argument);
}

TEST_CASE("trivial R") {
  for (const auto& name : hopf_catalog_names()) {
    const HopfData h = hopf_catalog(name);
    const RElement one = RElement::identity(h);
    CHECK(delta_tilde(h, one) == h.comult);
    // Cocommutative only for group algebras.
    CHECK(check_cocycle(h, one).passed());
    CHECK(check_counit_R(h, one).passed());
    CHECK(check_intertwiner(h, one).passed() == (name != "Sweedler"));
  }
}

TEST_CASE("Sweedler with R = g (x) g fails the counit condition") {
  const HopfData h = hopf_catalog("Sweedler");
  RElement r{Tensor::zeros({4, 4})};
  r.coeffs.at(1, 1) = Scalar(1);
  CHECK_FALSE(check_counit_R(h, r).passed());
}

TEST_CASE("Z2 family") {
  const HopfData h = hopf_catalog("Z2");
  const auto fams = find_R(h, RAnsatz::full(h));
  REQUIRE(fams.size() == 1);
  const RFamily& f = fams[0];
  CHECK(f.kind == RFamily::Kind::affine);
  CHECK(f.directions.size() == 1);
  CHECK(f.contains(RElement::identity(h)));
  const Scalar half = Scalar::fraction(1, 2);
  const RElement tri = from_rows({{half, half}, {half, -half}});
  CHECK(f.contains(tri));
  CHECK(all_conditions(h, tri));
  // R21 R = 1 (x) 1 checked with the raw structure constants.
  CHECK(product2(h, transpose(tri.coeffs), tri.coeffs) == RElement::identity(h).coeffs);
  CHECK(check_unitarity(h, tri).subchecks[0]["detail"]["unitary"] == true);
  const RElement other = from_rows({{Scalar(2), Scalar(-1)}, {Scalar(-1), Scalar(1)}});
  CHECK(f.contains(other));
  CHECK(check_unitarity(h, other).subchecks[0]["detail"]["unitary"] == false);
  CHECK_FALSE(f.contains(from_rows({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}})));
  for (const auto& m : f.members()) CHECK(all_conditions(h, m));
}

TEST_CASE("Sweedler family") {
  const HopfData h = hopf_catalog("Sweedler");
  const auto fams = find_R(h, RAnsatz::full(h));
  REQUIRE_FALSE(fams.empty());
  for (const auto& f : fams)
    for (const auto& m : f.members()) {
      CHECK(all_conditions(h, m));
      const Tensor dt = delta_tilde(h, m);
      // Dt(1) = R.
      bool same = true;
      for (std::size_t k = 0; k < 16; ++k) same = same && dt[k] == m.coeffs[k];
      CHECK(same);
    }
}

TEST_CASE("non-intertwining R fails the twisted two-factor form") {
  const HopfData h = hopf_catalog("Sweedler");
  const RElement one = RElement::identity(h);
  REQUIRE_FALSE(check_intertwiner(h, one).passed());
  const CheckReport rep = check_psi_morphism(h, one);
  CHECK_FALSE(rep.passed());
  CHECK(rep.subchecks[2]["status"] == "fail");
}

TEST_CASE("small groups") {
  for (const char* name : {"Z3", "S3"}) {
    const HopfData h = hopf_catalog(name);
    const auto fams = find_R(h, RAnsatz::full(h));
    REQUIRE_FALSE(fams.empty());
    for (const auto& f : fams) {
      CHECK(f.contains(f.base));
      for (const auto& m : f.members()) CHECK(all_conditions(h, m));
    }
  }
}

TEST_CASE("too many free parameters is a usage error") {
  const HopfData z4 = load_hopf(cyclic_spec(4));
  CHECK_THROWS_AS(find_R(z4, RAnsatz::full(z4)), UsageError);
  // A one-point ansatz is always small enough.
  CHECK_NOTHROW(find_R(z4, RAnsatz::single(RElement::identity(z4))));
}

TEST_CASE("hopf chain") {
  for (const char* name : {"Z2", "Sweedler"}) CHECK(check_hopf_chain(hopf_catalog(name), 7).passed());
}
