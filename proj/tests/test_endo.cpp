#include "doctest.h"

#include "lielat/endo.hpp"

using namespace lielat;

namespace {

int weight_of(const GradedLattice& lat, const WeightEndo& endo,
              const std::string& label) {
  int i = lat.find_label(label);
  REQUIRE(i >= 0);
  return endo.weights[static_cast<size_t>(i)];
}

}  // namespace

TEST_CASE("conjugation weights match the published lists") {
  Ring z9 = RingSpec::parse("3^2");

  GradedLattice sl3 = GradedLattice::build(Family::sl, 3, z9);
  WeightEndo e1 = diag_weights(sl3, 1);
  CHECK(weight_of(sl3, e1, "e(1,3)") == -1);
  CHECK(weight_of(sl3, e1, "e(2,3)") == -1);
  CHECK(weight_of(sl3, e1, "e(3,1)") == 1);
  CHECK(weight_of(sl3, e1, "e(3,2)") == 1);
  CHECK(weight_of(sl3, e1, "e(1,2)") == 0);
  CHECK(weight_of(sl3, e1, "h(1)") == 0);

  GradedLattice sp4 = GradedLattice::build(Family::sp, 4, z9);
  WeightEndo e2 = diag_weights(sp4, 1);
  CHECK(weight_of(sp4, e2, "q(2,2)") == -2);  // root -2 eps_2
  CHECK(weight_of(sp4, e2, "n(2,2)") == 2);
  CHECK(weight_of(sp4, e2, "m(2,1)") == 1);
  CHECK(weight_of(sp4, e2, "m(1,2)") == -1);
  CHECK(weight_of(sp4, e2, "n(2,1)") == 1);
  CHECK(weight_of(sp4, e2, "q(1,2)") == -1);

  GradedLattice so3 = GradedLattice::build(Family::so_odd, 3, z9);
  WeightEndo e3 = diag_weights(so3, 1);
  CHECK(weight_of(so3, e3, "b(1)") == -1);
  CHECK(weight_of(so3, e3, "c(1)") == 1);

  GradedLattice so4 = GradedLattice::build(Family::so_even, 4, z9);
  WeightEndo e4 = diag_weights(so4, 1);
  CHECK(weight_of(so4, e4, "m(2,1)") == 1);
  CHECK(weight_of(so4, e4, "n(2,1)") == 1);
  CHECK(weight_of(so4, e4, "q(1,2)") == -1);
}

TEST_CASE("weight antisymmetry") {
  Ring z9 = RingSpec::parse("3^2");
  for (Family fam : {Family::sl, Family::sp, Family::so_even, Family::so_odd}) {
    int n = fam == Family::sl ? 4 : (fam == Family::so_odd ? 5 : 4);
    GradedLattice lat = GradedLattice::build(fam, n, z9);
    for (int k = 1; k <= 2; ++k) {
      WeightEndo endo = diag_weights(lat, k);
      for (int i = lat.rank(); i < lat.dim(); ++i) {
        int nr = lat.roots().negative_of(lat.root_index(i));
        for (int j = lat.rank(); j < lat.dim(); ++j)
          if (lat.root_index(j) == nr)
            CHECK(endo.weights[static_cast<size_t>(i)] ==
                  -endo.weights[static_cast<size_t>(j)]);
      }
    }
  }
}

TEST_CASE("domain exponents") {
  Ring z9 = RingSpec::parse("3^2");

  GradedLattice sl3 = GradedLattice::build(Family::sl, 3, z9);
  DomainLattice d1 = domain(diag_weights(sl3, 1));
  for (int i = 0; i < sl3.dim(); ++i) {
    int expect = (sl3.label(i) == "e(1,3)" || sl3.label(i) == "e(2,3)") ? 1 : 0;
    CHECK(d1.exponents[static_cast<size_t>(i)] == expect);
  }

  GradedLattice sp4 = GradedLattice::build(Family::sp, 4, z9);
  DomainLattice d2 = domain(diag_weights(sp4, 1));
  int ones = 0, twos = 0;
  for (int c : d2.exponents) {
    if (c == 1) ++ones;
    if (c == 2) ++twos;
  }
  CHECK(ones == 2);  // 2(l-1) labels at pi^k
  CHECK(twos == 1);  // one label at pi^{2k}

  // linearity in k
  DomainLattice d2k = domain(diag_weights(sp4, 2));
  for (int i = 0; i < sp4.dim(); ++i)
    CHECK(d2k.exponents[static_cast<size_t>(i)] ==
          2 * d2.exponents[static_cast<size_t>(i)]);
}

TEST_CASE("virtual endomorphism indices match the propositions") {
  // index = q^{F(n) k} with F = n-1 (sl), n (sp), n-2 (so)
  for (const char* spec : {"3^2", "5^2", "GR(3,2,2):1,0,1"}) {
    Ring ring = RingSpec::parse(spec);
    BigInt q(ring->q());
    for (int k = 1; k <= 3; ++k) {
      for (int ll = 1; ll <= 3; ++ll) {
        GradedLattice sl = GradedLattice::build(Family::sl, ll + 1, ring);
        CHECK(endo_index(diag_weights(sl, k)) ==
              big_pow(q, static_cast<std::uint64_t>(ll * k)));

        GradedLattice sp = GradedLattice::build(Family::sp, 2 * ll, ring);
        CHECK(endo_index(diag_weights(sp, k)) ==
              big_pow(q, static_cast<std::uint64_t>(2 * ll * k)));

        GradedLattice so_odd = GradedLattice::build(Family::so_odd, 2 * ll + 1, ring);
        CHECK(endo_index(diag_weights(so_odd, k)) ==
              big_pow(q, static_cast<std::uint64_t>((2 * ll - 1) * k)));

        if (ll >= 2) {
          GradedLattice so_even = GradedLattice::build(Family::so_even, 2 * ll, ring);
          CHECK(endo_index(diag_weights(so_even, k)) ==
                big_pow(q, static_cast<std::uint64_t>((2 * ll - 2) * k)));
        }
      }
    }
  }

  Ring z25 = RingSpec::parse("5^2");
  GradedLattice so3 = GradedLattice::build(Family::so_odd, 3, z25);
  CHECK(endo_index(diag_weights(so3, 2)) == 25);  // q^{(2l-1)k}, l = 1, k = 2
}

TEST_CASE("elementary divisors give the same index") {
  for (const char* spec : {"3^2", "GR(3,2,2):1,0,1", "Eis(3,2):3,0,1"}) {
    Ring ring = RingSpec::parse(spec);
    for (Family fam : {Family::sl, Family::sp, Family::so_even, Family::so_odd}) {
      int n = fam == Family::sl ? 3 : (fam == Family::so_odd ? 5 : 4);
      GradedLattice lat = GradedLattice::build(fam, n, ring);
      for (int k = 1; k <= 2; ++k) {
        WeightEndo endo = diag_weights(lat, k);
        CHECK(elementary_divisor_index(endo) == endo_index(endo));
      }
    }
  }
}

TEST_CASE("index does not depend on the precision of the ambient ring") {
  for (int m : {1, 2, 4}) {
    Ring ring = RingSpec::make(3, 1, 1, m);
    GradedLattice sp4 = GradedLattice::build(Family::sp, 4, ring);
    WeightEndo endo = diag_weights(sp4, 1);
    CHECK(endo_index(endo) == 81);
    CHECK(elementary_divisor_index(endo) == 81);
  }
}

TEST_CASE("smith normal form on a known example") {
  // diag divisors of [[2,4,4],[-6,6,12],[10,-4,-16]] are 2, 6, 12
  std::vector<std::vector<BigInt>> m = {
      {2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  auto d = smith_normal_form(m);
  REQUIRE(d.size() == 3);
  CHECK(d[0] == 2);
  CHECK(d[1] == 6);
  CHECK(d[2] == 12);
}

TEST_CASE("D_infinity keeps H and the nonnegative weights") {
  Ring z9 = RingSpec::parse("3^2");

  GradedLattice sl3 = GradedLattice::build(Family::sl, 3, z9);
  DInfinity di = d_infinity(diag_weights(sl3, 1));
  for (int i = 0; i < sl3.dim(); ++i) {
    bool dropped = sl3.label(i) == "e(1,3)" || sl3.label(i) == "e(2,3)";
    CHECK(di.kept_mask[static_cast<size_t>(i)] == !dropped);
  }

  GradedLattice so4 = GradedLattice::build(Family::so_even, 4, z9);
  DInfinity di4 = d_infinity(diag_weights(so4, 1));
  CHECK(so4.dim() - static_cast<int>(di4.kept.size()) == 2);  // 2(l-1)

  GradedLattice so3 = GradedLattice::build(Family::so_odd, 3, z9);
  DInfinity di3 = d_infinity(diag_weights(so3, 1));
  CHECK(so3.dim() - static_cast<int>(di3.kept.size()) == 1);
  CHECK(!di3.kept_mask[static_cast<size_t>(so3.find_label("b(1)"))]);

  // contains H and is bracket-closed under [H, -]
  for (Family fam : {Family::sl, Family::sp, Family::so_even, Family::so_odd}) {
    int n = fam == Family::sl ? 3 : (fam == Family::so_odd ? 5 : 4);
    GradedLattice lat = GradedLattice::build(fam, n, z9);
    DInfinity d = d_infinity(diag_weights(lat, 1));
    for (int i = 0; i < lat.rank(); ++i) CHECK(d.kept_mask[static_cast<size_t>(i)]);
    for (int h = 0; h < lat.rank(); ++h)
      for (int i : d.kept)
        for (const auto& [k, c] : lat.bracket_table(h, i)) {
          (void)c;
          CHECK(d.kept_mask[static_cast<size_t>(k)]);
        }
  }
}

TEST_CASE("kernel intersection ranks") {
  Ring z9 = RingSpec::parse("3^2");
  GradedLattice sl3 = GradedLattice::build(Family::sl, 3, z9);
  WeightEndo endo = diag_weights(sl3, 1);
  std::vector<std::vector<int>> escape_roots;
  for (int i : endo.complement) escape_roots.push_back(sl3.grade(i));
  CHECK(kernel_intersection_trivial(sl3, escape_roots));
  CHECK(!kernel_intersection_trivial(sl3, {{1, -1}}));

  GradedLattice sp4 = GradedLattice::build(Family::sp, 4, z9);
  WeightEndo endo_sp = diag_weights(sp4, 1);
  std::vector<std::vector<int>> sp_roots;
  for (int i : endo_sp.complement) sp_roots.push_back(sp4.grade(i));
  CHECK(kernel_intersection_trivial(sp4, sp_roots));
}

TEST_CASE("escape witnesses for the three proof cases") {
  Ring z3 = RingSpec::make(3, 1, 1, 1);
  GradedLattice sl3 = GradedLattice::build(Family::sl, 3, z3);
  WeightEndo endo = diag_weights(sl3, 1);
  Ring work = z3->with_precision(4);  // m + 2k + 2 with m = 0, k = 1

  // case 1: already outside D
  LatticeElem x1 = sl3.basis_elem(sl3.find_label("e(1,3)"), work);
  EscapeWitness w1 = escape_witness(x1, endo, 0);
  CHECK(w1.brackets.empty());
  CHECK(sl3.label(w1.escape_basis) == "e(1,3)");
  CHECK(w1.escape_valuation == 0);

  // case 2: Cartan element, one bracket; the separating root is the
  // lexicographically smallest, here sigma + eps_2
  LatticeElem x2 = sl3.basis_elem(sl3.find_label("h(1)"), work);
  EscapeWitness w2 = escape_witness(x2, endo, 0);
  REQUIRE(w2.brackets.size() == 1);
  CHECK(sl3.label(w2.brackets[0].first) == "e(2,3)");
  CHECK(w2.escape_valuation == 0);

  // case 3: a Psi root vector, two brackets through the Cartan part
  LatticeElem x3 = sl3.basis_elem(sl3.find_label("e(3,1)"), work);
  EscapeWitness w3 = escape_witness(x3, endo, 0);
  CHECK(w3.brackets.size() == 2);
  CHECK(sl3.label(w3.brackets[0].first) == "e(1,3)");
  CHECK(w3.escape_valuation == 0);

  // witness serialization carries labels and scales
  std::string json = w3.to_json(sl3);
  CHECK(json.find("e(1,3)") != std::string::npos);
  CHECK(json.find("escape_label") != std::string::npos);
}

TEST_CASE("escape error paths") {
  Ring z3 = RingSpec::make(3, 1, 1, 1);
  GradedLattice sl3 = GradedLattice::build(Family::sl, 3, z3);
  WeightEndo endo = diag_weights(sl3, 1);
  Ring work = z3->with_precision(4);

  CHECK_THROWS_AS(escape_witness(sl3.zero_elem(work), endo, 0),
                  std::domain_error);
  // coefficients not divisible by pi^a_scale
  LatticeElem x = sl3.basis_elem(sl3.find_label("e(1,2)"), work);
  CHECK_THROWS_AS(escape_witness(x, endo, 1), std::invalid_argument);
}

TEST_CASE("escape sweeps at small sizes") {
  for (std::uint64_t p : {3ull, 5ull}) {
    Ring ring = RingSpec::make(p, 1, 1, 1);
    GradedLattice sl2 = GradedLattice::build(Family::sl, 2, ring);
    for (int m : {0, 1}) {
      SweepResult r = exhaustive_escape_sweep(sl2, diag_weights(sl2, 1), m);
      INFO("p=", p, " m=", m, " failure: ", r.failure);
      CHECK(r.all_ok);
      std::uint64_t expect = 1;
      for (int i = 0; i < sl2.dim(); ++i) expect *= p;
      CHECK(r.tested == expect - 1);
    }
  }

  Ring z3 = RingSpec::make(3, 1, 1, 1);
  GradedLattice sl3 = GradedLattice::build(Family::sl, 3, z3);
  SweepResult r = exhaustive_escape_sweep(sl3, diag_weights(sl3, 1), 1);
  INFO(r.failure);
  CHECK(r.all_ok);
  CHECK(r.tested == 6560);  // 3^8 - 1

  // residue field larger than the prime field
  Ring f9 = RingSpec::parse("GR(3,1,2):1,0,1");
  GradedLattice sl2 = GradedLattice::build(Family::sl, 2, f9);
  SweepResult rg = exhaustive_escape_sweep(sl2, diag_weights(sl2, 1), 0);
  INFO(rg.failure);
  CHECK(rg.all_ok);
  CHECK(rg.tested == 728);  // 9^3 - 1

  // ramified base ring
  Ring eis = RingSpec::parse("Eis(3,4):3,0,1");
  GradedLattice sl2r = GradedLattice::build(Family::sl, 2, eis);
  SweepResult rr = exhaustive_escape_sweep(sl2r, diag_weights(sl2r, 1), 1);
  INFO(rr.failure);
  CHECK(rr.all_ok);
  CHECK(rr.tested == 26);  // 3^3 - 1
}
