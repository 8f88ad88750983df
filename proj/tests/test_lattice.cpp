#include "doctest.h"

#include "lielat/lattice.hpp"
#include "test_util.hpp"

using namespace lielat;

namespace {

Mat realize(const GradedLattice& lat, const LatticeElem& x) {
  const RingSpec* ring = x.ring().get();
  Mat acc(ring, lat.n(), lat.n());
  for (int i = 0; i < lat.dim(); ++i)
    acc = acc + lat.realization(i).over(ring) * x.coeff(i);
  return acc;
}

}  // namespace

TEST_CASE("family construction counts") {
  Ring z9 = RingSpec::parse("3^2");

  GradedLattice sl3 = GradedLattice::build(Family::sl, 3, z9);
  CHECK(sl3.rank() == 2);
  CHECK(sl3.dim() == 8);
  CHECK(sl3.roots().count() == 6);

  GradedLattice sp4 = GradedLattice::build(Family::sp, 4, z9);
  CHECK(sp4.dim() == 10);
  CHECK(sp4.roots().count() == 8);  // |C_2| = 2 l^2

  GradedLattice so3 = GradedLattice::build(Family::so_odd, 3, z9);
  CHECK(so3.dim() == 3);
  CHECK(so3.find_label("h(1)") == 0);
  CHECK(so3.find_label("c(1)") >= 0);
  CHECK(so3.find_label("b(1)") >= 0);

  GradedLattice so4 = GradedLattice::build(Family::so_even, 4, z9);
  CHECK(so4.dim() == 6);
  CHECK(so4.roots().count() == 4);  // |D_2| = 2 l^2 - 2 l

  CHECK_THROWS_AS(GradedLattice::build(Family::so_even, 2, z9),
                  std::invalid_argument);
  CHECK_THROWS_AS(GradedLattice::build(Family::sp, 3, z9), std::invalid_argument);
  CHECK_THROWS_AS(GradedLattice::build(Family::sl, 1, z9), std::invalid_argument);
}

TEST_CASE("basis size equals the analytic dimension with d = 1") {
  Ring z9 = RingSpec::parse("3^2");
  for (int n = 2; n <= 7; ++n) {
    CHECK(GradedLattice::build(Family::sl, n, z9).dim() == n * n - 1);
    if (n % 2 == 0)
      CHECK(GradedLattice::build(Family::sp, n, z9).dim() == (n * n + n) / 2);
    if (n % 2 == 0 && n >= 4)
      CHECK(GradedLattice::build(Family::so_even, n, z9).dim() == (n * n - n) / 2);
    if (n % 2 == 1 && n >= 3)
      CHECK(GradedLattice::build(Family::so_odd, n, z9).dim() == (n * n - n) / 2);
  }
}

TEST_CASE("realization matrices satisfy the defining equations") {
  Ring z9 = RingSpec::parse("3^2");
  for (int n = 2; n <= 6; ++n) {
    GradedLattice sl = GradedLattice::build(Family::sl, n, z9);
    for (int i = 0; i < sl.dim(); ++i)
      CHECK(sl.realization(i).over(z9.get()).trace().is_zero());
  }
  for (int n : {2, 4, 6}) {
    GradedLattice sp = GradedLattice::build(Family::sp, n, z9);
    for (int i = 0; i < sp.dim(); ++i)
      CHECK(in_form_algebra(sp.realization(i).over(z9.get()), FormKind::sympl));
  }
  for (int n : {4, 6}) {
    GradedLattice so = GradedLattice::build(Family::so_even, n, z9);
    for (int i = 0; i < so.dim(); ++i)
      CHECK(in_form_algebra(so.realization(i).over(z9.get()),
                            FormKind::so_split_even));
  }
  for (int n : {3, 5, 7}) {
    GradedLattice so = GradedLattice::build(Family::so_odd, n, z9);
    for (int i = 0; i < so.dim(); ++i)
      CHECK(in_form_algebra(so.realization(i).over(z9.get()),
                            FormKind::so_split_odd));
  }
}

TEST_CASE("brackets in sl_3") {
  Ring z9 = RingSpec::parse("3^2");
  GradedLattice sl3 = GradedLattice::build(Family::sl, 3, z9);
  int h1 = sl3.find_label("h(1)"), h2 = sl3.find_label("h(2)");
  int e12 = sl3.find_label("e(1,2)"), e21 = sl3.find_label("e(2,1)");

  LatticeElem x = sl3.basis_elem(h1, z9);
  LatticeElem y = sl3.basis_elem(e12, z9);
  CHECK(sl3.bracket(x, y) == y);  // (eps_1 - eps_2)(h_1) = 1

  LatticeElem lhs = sl3.bracket(sl3.basis_elem(e12, z9), sl3.basis_elem(e21, z9));
  LatticeElem want = sl3.basis_elem(h1, z9) - sl3.basis_elem(h2, z9);
  CHECK(lhs == want);

  CHECK(sl3.bracket(sl3.basis_elem(h1, z9), sl3.basis_elem(h2, z9)).is_zero());
}

TEST_CASE("bracket agrees with the matrix commutator") {
  Ring z9 = RingSpec::parse("3^2");
  testutil::Lcg rng;
  for (Family fam : {Family::sl, Family::sp, Family::so_even, Family::so_odd}) {
    int n = fam == Family::sl ? 3 : (fam == Family::so_odd ? 5 : 4);
    GradedLattice lat = GradedLattice::build(fam, n, z9);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<RingElem> xc, yc;
      for (int i = 0; i < lat.dim(); ++i) {
        xc.push_back(testutil::random_elem(z9, rng));
        yc.push_back(testutil::random_elem(z9, rng));
      }
      LatticeElem x = lat.elem(z9, xc), y = lat.elem(z9, yc);
      Mat mx = realize(lat, x), my = realize(lat, y);
      CHECK(realize(lat, lat.bracket(x, y)) == mx * my - my * mx);
    }
  }
}

TEST_CASE("projection") {
  Ring z9 = RingSpec::parse("3^2");
  GradedLattice sl3 = GradedLattice::build(Family::sl, 3, z9);
  int h1 = sl3.find_label("h(1)"), e12 = sl3.find_label("e(1,2)");
  LatticeElem x = sl3.basis_elem(h1, z9) + sl3.basis_elem(e12, z9);

  CHECK(sl3.project(x, {0, 0}) == sl3.basis_elem(h1, z9));
  CHECK(sl3.project(x, {1, -1}) == sl3.basis_elem(e12, z9));
  CHECK(sl3.project(x, {-1, 1}).is_zero());
  CHECK(sl3.project(x, {5, 5}).is_zero());  // not a root
}

TEST_CASE("structure axioms hold for every family, n up to 7") {
  Ring z9 = RingSpec::parse("3^2");
  for (int n = 2; n <= 7; ++n) {
    std::vector<Family> fams;
    fams.push_back(Family::sl);
    if (n % 2 == 0) fams.push_back(Family::sp);
    if (n % 2 == 0 && n >= 4) fams.push_back(Family::so_even);
    if (n % 2 == 1 && n >= 3) fams.push_back(Family::so_odd);
    for (Family fam : fams) {
      GradedLattice lat = GradedLattice::build(fam, n, z9);
      StructureReport report = lat.verify_structure();
      CHECK(report.properties.size() == 6);
      for (const auto& prop : report.properties) {
        INFO(family_name(fam), " n=", n, " property ", prop.id, ": ", prop.detail);
        CHECK(prop.pass);
      }
    }
  }
}

TEST_CASE("corrupted structure constant is caught with the offending pair") {
  Ring z9 = RingSpec::parse("3^2");
  GradedLattice sl3 = GradedLattice::build(Family::sl, 3, z9);
  int h1 = sl3.find_label("h(1)"), e12 = sl3.find_label("e(1,2)");
  GradedLattice bad = sl3.with_structure_constant(h1, e12, e12, 2);
  StructureReport report = bad.verify_structure();
  CHECK(!report.all_pass());
  bool prop4_failed = false;
  for (const auto& prop : report.properties)
    if (prop.id == 4 && !prop.pass) {
      prop4_failed = true;
      CHECK(prop.detail.find("h(1)") != std::string::npos);
      CHECK(prop.detail.find("e(1,2)") != std::string::npos);
    }
  CHECK(prop4_failed);
}

TEST_CASE("Jacobi identity on all basis triples") {
  Ring z9 = RingSpec::parse("3^2");
  for (Family fam : {Family::sl, Family::sp, Family::so_even, Family::so_odd}) {
    int n = fam == Family::sl ? 4 : (fam == Family::so_odd ? 5 : 4);
    CHECK(GradedLattice::build(fam, n, z9).check_jacobi());
  }
  CHECK(GradedLattice::build(Family::sl, 2, z9).check_jacobi());
}

TEST_CASE("powerful criterion") {
  Ring z9 = RingSpec::parse("3^2");
  GradedLattice sl3 = GradedLattice::build(Family::sl, 3, z9);
  CHECK(sl3.is_powerful(1, 1));   // m = theta e
  CHECK(!sl3.is_powerful(0, 1));  // [e(1,2), e(2,1)] is not in 3 sl_3
  CHECK(sl3.is_powerful(2, 1));

  // ramified: theta e = 2, so m = 1 is not enough but m = 2 is
  Ring eis = RingSpec::parse("Eis(3,4):3,0,1");
  GradedLattice sl3r = GradedLattice::build(Family::sl, 3, eis);
  CHECK(sl3r.is_powerful(2, 1));
  CHECK(!sl3r.is_powerful(1, 1));

  for (Family fam : {Family::sp, Family::so_even, Family::so_odd}) {
    int n = fam == Family::so_odd ? 5 : 4;
    GradedLattice lat = GradedLattice::build(fam, n, z9);
    CHECK(lat.is_powerful(1, 1));
  }
}

TEST_CASE("so_odd numbering starts at index 0") {
  Ring z9 = RingSpec::parse("3^2");
  GradedLattice so3 = GradedLattice::build(Family::so_odd, 3, z9);
  // b(1) has its row-0 entry in the middle block and -1 against column 0
  const IntMat& b1 = so3.realization(so3.find_label("b(1)"));
  CHECK(b1.at(0, 1) == 1);
  CHECK(b1.at(2, 0) == -1);
  const IntMat& c1 = so3.realization(so3.find_label("c(1)"));
  CHECK(c1.at(1, 0) == 1);
  CHECK(c1.at(0, 2) == -1);
}

TEST_CASE("lattice dump is valid JSON with the advertised fields") {
  Ring z9 = RingSpec::parse("3^2");
  GradedLattice sl3 = GradedLattice::build(Family::sl, 3, z9);
  std::string text = sl3.to_json();
  CHECK(text.find("\"family\"") != std::string::npos);
  CHECK(text.find("\"basis\"") != std::string::npos);
  CHECK(text.find("\"roots\"") != std::string::npos);
  CHECK(text.find("\"structure_constants\"") != std::string::npos);
  CHECK(text.find("e(1,2)") != std::string::npos);
}

TEST_CASE("elements at a different working precision") {
  Ring z9 = RingSpec::parse("3^2");
  GradedLattice sl3 = GradedLattice::build(Family::sl, 3, z9);
  Ring z243 = z9->with_precision(5);
  LatticeElem x = sl3.basis_elem(sl3.find_label("e(1,2)"), z243, 2);
  CHECK(x.valuation() == 2);
  LatticeElem y = sl3.basis_elem(sl3.find_label("e(2,1)"), z243, 1);
  LatticeElem z = sl3.bracket(x, y);
  CHECK(z.valuation() == 3);  // pi^2 * pi^1 * (h_1 - h_2)
}
