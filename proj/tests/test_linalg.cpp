#include "doctest.h"

#include <set>

#include "lielat/linalg.hpp"
#include "test_util.hpp"

using namespace lielat;
using testutil::Lcg;
using testutil::random_mat;

namespace {

// All matrices of O_n over a small ring by naive enumeration; only for
// very small n^2 * |R|.
std::vector<Mat> naive_orthogonal_group(const Ring& ring, int n) {
  auto elems = ring->elements();
  std::vector<Mat> out;
  Mat m(ring.get(), n, n);
  std::vector<size_t> idx(static_cast<size_t>(n * n), 0);
  while (true) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m.at(i, j) = elems[idx[static_cast<size_t>(i * n + j)]];
    if (is_member(m, GroupKind::O)) out.push_back(m);
    size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < elems.size()) break;
      idx[k] = 0;
    }
    if (k == idx.size()) break;
  }
  return out;
}

}  // namespace

TEST_CASE("basic matrix algebra") {
  Ring z9 = RingSpec::parse("3^2");
  Lcg rng;
  Mat m = random_mat(z9, rng, 3, 3);
  CHECK(Mat::identity(z9.get(), 3) * m == m);
  CHECK(m.transpose().transpose() == m);

  Mat a = random_mat(z9, rng, 3, 4), b = random_mat(z9, rng, 4, 2);
  CHECK((a * b).transpose() == b.transpose() * a.transpose());

  CHECK_THROWS_AS(b * a, std::invalid_argument);
  Ring z25 = RingSpec::parse("5^2");
  CHECK_THROWS_AS(m + random_mat(z25, rng, 3, 3), std::invalid_argument);
}

TEST_CASE("block assembly round-trips and builds the split form") {
  Ring z9 = RingSpec::parse("3^2");
  int l = 2;
  Mat zero(z9.get(), l, l), id = Mat::identity(z9.get(), l);
  Mat s = Mat::from_blocks({{zero, id}, {id, zero}});
  CHECK(s == gram_matrix(FormKind::orth_even, 4, z9.get()));

  Lcg rng;
  Mat a = random_mat(z9, rng, 2, 2), b = random_mat(z9, rng, 2, 3),
      c = random_mat(z9, rng, 1, 2), d = random_mat(z9, rng, 1, 3);
  Mat whole = Mat::from_blocks({{a, b}, {c, d}});
  CHECK(whole.block(0, 0, 2, 2) == a);
  CHECK(whole.block(0, 2, 2, 3) == b);
  CHECK(whole.block(2, 0, 1, 2) == c);
  CHECK(whole.block(2, 2, 1, 3) == d);
}

TEST_CASE("determinant") {
  Ring z9 = RingSpec::parse("3^2");
  CHECK(det(Mat::identity(z9.get(), 4)) == z9->one());
  // det(S) = (-1)^l for the even split form
  CHECK(det(gram_matrix(FormKind::orth_even, 4, z9.get())) == z9->one());
  CHECK(det(gram_matrix(FormKind::orth_even, 2, z9.get())) == z9->from_int(-1));
  CHECK(det(parse_mat(z9.get(), "2,0;0,5")) == z9->one());

  Lcg rng;
  for (Ring r : {z9, RingSpec::parse("GR(3,1,2):1,0,1"),
                 RingSpec::parse("Eis(3,3):3,0,1")}) {
    for (int trial = 0; trial < 25; ++trial) {
      Mat a = random_mat(r, rng, 4, 4), b = random_mat(r, rng, 4, 4);
      CHECK(det(a * b) == det(a) * det(b));
    }
  }

  Mat big(z9.get(), 9, 9);
  CHECK_THROWS_AS(det(big), std::invalid_argument);
}

TEST_CASE("inverse") {
  Ring z9 = RingSpec::parse("3^2");
  Lcg rng;
  int found = 0;
  while (found < 10) {
    Mat a = random_mat(z9, rng, 3, 3);
    if (!det(a).is_unit()) continue;
    ++found;
    CHECK(a * inverse(a) == Mat::identity(z9.get(), 3));
  }
}

TEST_CASE("membership predicates") {
  Ring z9 = RingSpec::parse("3^2");
  for (GroupKind g : {GroupKind::O, GroupKind::SO, GroupKind::SL})
    CHECK(is_member(Mat::identity(z9.get(), 3), g));
  CHECK(is_member(Mat::identity(z9.get(), 4), GroupKind::Sp));

  // antidiag(alpha^{-1}; alpha) lies in O_2 for every unit alpha
  for (const RingElem& alpha : z9->elements()) {
    if (!alpha.is_unit()) continue;
    Mat m(z9.get(), 2, 2);
    m.at(0, 1) = alpha.inverse();
    m.at(1, 0) = alpha;
    CHECK(is_member(m, GroupKind::O));
  }

  Ring z3 = RingSpec::parse("3^1");
  CHECK(!is_member(parse_mat(z3.get(), "2,0;0,1"), GroupKind::SL));
  CHECK(is_member(parse_mat(z3.get(), "2,0;0,2"), GroupKind::SL));
}

TEST_CASE("O_1 and O_2 classification by exhaustive enumeration") {
  // O_1(R) = {1, -1}
  for (Ring r : {RingSpec::parse("3^2"), RingSpec::parse("5^1")}) {
    auto o1 = naive_orthogonal_group(r, 1);
    CHECK(o1.size() == 2);
  }

  // O_2(R) = {diag(a, a^{-1})} union {antidiag(a^{-1}, a)}
  for (Ring r : {RingSpec::parse("3^2"), RingSpec::parse("GR(3,1,2):1,0,1"),
                 RingSpec::parse("3^3")}) {
    auto group = naive_orthogonal_group(r, 2);
    std::set<std::string> got;
    for (const Mat& m : group) got.insert(m.str());
    std::set<std::string> expect;
    for (const RingElem& a : r->elements()) {
      if (!a.is_unit()) continue;
      Mat d(r.get(), 2, 2), ad(r.get(), 2, 2);
      d.at(0, 0) = a;
      d.at(1, 1) = a.inverse();
      ad.at(0, 1) = a.inverse();
      ad.at(1, 0) = a;
      expect.insert(d.str());
      expect.insert(ad.str());
    }
    CHECK(got == expect);
    CHECK(got.size() == 2 * (r->size() - r->size() / r->q()));

    // dets are exactly {1, -1}, each with equal multiplicity
    size_t det_one = 0;
    for (const Mat& m : group) {
      RingElem d = det(m);
      CHECK((d == r->one() || d == -r->one()));
      if (d == r->one()) ++det_one;
    }
    CHECK(2 * det_one == group.size());

    // the stabilizer of e_1 in O_2 is trivial
    int stab = 0;
    for (const Mat& m : group)
      if (m.at(0, 0) == r->one() && m.at(1, 0).is_zero()) ++stab;
    CHECK(stab == 1);
  }
}

TEST_CASE("index of SO in O is 2 for O_3(F_3)") {
  Ring z3 = RingSpec::parse("3^1");
  auto group = naive_orthogonal_group(z3, 3);
  CHECK(group.size() == 48);
  size_t special = 0;
  for (const Mat& m : group) {
    RingElem d = det(m);
    CHECK((d == z3->one() || d == -z3->one()));
    if (d == z3->one()) ++special;
  }
  CHECK(special * 2 == group.size());
}

TEST_CASE("block membership certificates") {
  Ring z9 = RingSpec::parse("3^2");
  int l = 2;
  Lcg rng;

  // U + V with V = U^{-t}
  int built = 0;
  while (built < 5) {
    Mat u = random_mat(z9, rng, l, l);
    if (!det(u).is_unit()) continue;
    ++built;
    Mat v = inverse(u).transpose();
    Mat zero(z9.get(), l, l);
    auto check = block_membership(BlockParts::even(u, zero, zero, v));
    CHECK(check.ok);
  }

  // lower unitriangular with W + W^t = 0
  Mat w(z9.get(), l, l);
  w.at(0, 1) = z9->from_int(4);
  w.at(1, 0) = z9->from_int(-4);
  Mat id = Mat::identity(z9.get(), l), zero(z9.get(), l, l);
  CHECK(block_membership(BlockParts::even(id, zero, w, id)).ok);
  w.at(1, 0) = z9->from_int(1);
  CHECK(!block_membership(BlockParts::even(id, zero, w, id)).ok);

  // odd case with v != -w x^t gets flagged by name
  Mat x(z9.get(), 1, l), y(z9.get(), 1, l), u(z9.get(), l, 1), v(z9.get(), l, 1);
  x.at(0, 0) = z9->one();
  v.at(0, 0) = z9->one();  // should be -x^t = (-1, 0)
  Mat wmat(z9.get(), l, l);
  wmat.at(0, 0) = z9->from_int(-5);  // 2 w_00 = -x_0^2
  wmat.at(1, 0) = z9->from_int(2);
  wmat.at(0, 1) = z9->from_int(-2);
  auto bad = block_membership(
      BlockParts::odd(id, zero, wmat, id, u, v, x, y, z9->one()));
  CHECK(!bad.ok);
  bool named = false;
  for (const auto& eq : bad.failed)
    if (eq == "A^t v + C^t u + w x^t = 0") named = true;
  CHECK(named);
}

TEST_CASE("block membership agrees with assembled membership") {
  Ring z9 = RingSpec::parse("3^2");
  Lcg rng;
  int l = 2;
  for (int trial = 0; trial < 300; ++trial) {
    Mat a = random_mat(z9, rng, l, l), b = random_mat(z9, rng, l, l),
        c = random_mat(z9, rng, l, l), d = random_mat(z9, rng, l, l);
    BlockParts even = BlockParts::even(a, b, c, d);
    CHECK(block_membership(even).ok ==
          is_member(even.assemble(), GroupKind::O, FormKind::orth_even));

    BlockParts odd = BlockParts::odd(
        a, b, c, d, random_mat(z9, rng, l, 1), random_mat(z9, rng, l, 1),
        random_mat(z9, rng, 1, l), random_mat(z9, rng, 1, l),
        testutil::random_elem(z9, rng));
    CHECK(block_membership(odd).ok ==
          is_member(odd.assemble(), GroupKind::O, FormKind::orth_odd));
  }
  // seed known members so the accepting branch is exercised too
  Mat id = Mat::identity(z9.get(), l), zero(z9.get(), l, l);
  BlockParts trivial = BlockParts::even(id, zero, zero, id);
  CHECK(block_membership(trivial).ok);
  CHECK(is_member(trivial.assemble(), GroupKind::O, FormKind::orth_even));
}

TEST_CASE("complete_to_invertible") {
  Ring z9 = RingSpec::parse("3^2");
  Mat e1 = parse_mat(z9.get(), "1;0");
  CHECK(complete_to_invertible(e1) == Mat::identity(z9.get(), 2));

  Mat x = parse_mat(z9.get(), "0;1");
  Mat m = complete_to_invertible(x);
  CHECK(det(m).is_unit());
  CHECK(m.block(0, 0, 2, 1) == x);

  CHECK_THROWS_AS(complete_to_invertible(parse_mat(z9.get(), "3;0")),
                  std::domain_error);

  // exhaustive over Z/9 vectors of length 3
  for (const RingElem& a : z9->elements())
    for (const RingElem& b : z9->elements())
      for (const RingElem& c : z9->elements()) {
        Mat v = Mat::column(z9.get(), {a, b, c});
        if (!(a.is_unit() || b.is_unit() || c.is_unit())) {
          CHECK_THROWS_AS(complete_to_invertible(v), std::domain_error);
          continue;
        }
        Mat g = complete_to_invertible(v);
        CHECK(det(g).is_unit());
        CHECK(g.block(0, 0, 3, 1) == v);
      }
}

TEST_CASE("matrix literals parse and round-trip") {
  Ring z9 = RingSpec::parse("3^2");
  Mat m = parse_mat(z9.get(), "1,2;3,4");
  CHECK(m.at(1, 0) == z9->from_int(3));
  CHECK(parse_mat(z9.get(), m.str()) == m);

  Ring f9 = RingSpec::parse("GR(3,1,2):1,0,1");
  Mat g = parse_mat(f9.get(), "0:1,1;2,1:2");
  CHECK(g.at(0, 0) == f9->from_coords({0, 1}));
  CHECK(parse_mat(f9.get(), g.str()) == g);
}
