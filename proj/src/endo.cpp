#include "lielat/endo.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lielat {

WeightEndo diag_weights(const GradedLattice& lat, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  int n = lat.n(), l = lat.l();
  std::vector<int> a(static_cast<size_t>(n), 0);
  switch (lat.family()) {
    case Family::sl:
      a[static_cast<size_t>(n - 1)] = k;
      break;
    case Family::sp:
    case Family::so_even:
      a[static_cast<size_t>(l - 1)] = k;
      a[static_cast<size_t>(2 * l - 1)] = -k;
      break;
    case Family::so_odd:
      a[static_cast<size_t>(l)] = k;  // indices count from 0 here
      a[static_cast<size_t>(2 * l)] = -k;
      break;
  }

  WeightEndo endo;
  endo.lattice = &lat;
  endo.k = k;
  endo.a_exponents = a;
  endo.weights.assign(static_cast<size_t>(lat.dim()), 0);

  // conjugation by diag(pi^{a_0}, ...) scales entry (u, v) by pi^{a_u - a_v};
  // a basis vector must rescale as a whole
  for (int i = 0; i < lat.dim(); ++i) {
    const IntMat& mat = lat.realization(i);
    bool seen = false;
    int w = 0;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        if (mat.at(u, v) == 0) continue;
        int entry_w = a[static_cast<size_t>(u)] - a[static_cast<size_t>(v)];
        if (!seen) {
          w = entry_w;
          seen = true;
        } else if (entry_w != w) {
          throw std::logic_error(
              "conjugation does not scale " + lat.label(i) + " by a pi-power");
        }
      }
    if (!seen) throw std::logic_error("zero basis matrix");
    endo.weights[static_cast<size_t>(i)] = w;
  }

  // cross-check against the closed-form weight lists
  for (int i = 0; i < lat.dim(); ++i) {
    int expect;
    if (lat.root_index(i) < 0) {
      expect = 0;
    } else {
      const std::vector<int>& alpha = lat.grade(i);
      if (lat.family() == Family::sl) {
        int sum = std::accumulate(alpha.begin(), alpha.end(), 0);
        expect = -k * (sum / n);
      } else {
        expect = k * alpha[static_cast<size_t>(l - 1)];
      }
    }
    if (endo.weights[static_cast<size_t>(i)] != expect)
      throw std::logic_error("conjugation weight of " + lat.label(i) +
                             " differs from the published list");
  }

  for (int i = lat.rank(); i < lat.dim(); ++i) {
    if (endo.weights[static_cast<size_t>(i)] >= 0)
      endo.psi.push_back(i);
    else
      endo.complement.push_back(i);
  }
  return endo;
}

DomainLattice domain(const WeightEndo& endo) {
  const GradedLattice& lat = *endo.lattice;
  DomainLattice dom;
  dom.exponents.assign(static_cast<size_t>(lat.dim()), 0);
  for (int i = 0; i < lat.dim(); ++i) {
    int w = endo.weights[static_cast<size_t>(i)];
    dom.exponents[static_cast<size_t>(i)] = std::max(0, -w);
  }
  // every generator pi^{m + c} e must conjugate into pi^m L: entrywise,
  // c + a_u - a_v >= 0 on the support
  for (int i = 0; i < lat.dim(); ++i) {
    int c = dom.exponents[static_cast<size_t>(i)];
    const IntMat& mat = lat.realization(i);
    for (int u = 0; u < lat.n(); ++u)
      for (int v = 0; v < lat.n(); ++v)
        if (mat.at(u, v) != 0 &&
            c + endo.a_exponents[static_cast<size_t>(u)] -
                    endo.a_exponents[static_cast<size_t>(v)] < 0)
          throw std::logic_error("domain generator escapes the lattice");
  }
  return dom;
}

BigInt endo_index(const WeightEndo& endo) {
  return big_pow(BigInt(endo.lattice->ring()->q()), domain(endo).exponent_sum());
}

std::vector<BigInt> smith_normal_form(std::vector<std::vector<BigInt>> m) {
  size_t rows = m.size();
  size_t cols = rows == 0 ? 0 : m[0].size();
  std::vector<BigInt> divisors;
  size_t t = 0;
  while (t < rows && t < cols) {
    // locate a nonzero entry of minimal absolute value
    size_t pi = t, pj = t;
    bool found = false;
    BigInt best = 0;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j) {
        if (m[i][j] == 0) continue;
        BigInt a = abs(m[i][j]);
        if (!found || a < best) {
          best = a;
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    std::swap(m[t], m[pi]);
    for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        BigInt q = m[i][t] / m[t][t];
        for (size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {  // remainder became the smaller pivot
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        BigInt q = m[t][j] / m[t][t];
        for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][j]);
          clean = false;
        }
      }
    }
    divisors.push_back(abs(m[t][t]));
    ++t;
  }
  // divisibility chain d_1 | d_2 | ...
  for (size_t i = 0; i + 1 < divisors.size(); ++i)
    for (size_t j = i + 1; j < divisors.size(); ++j) {
      if (divisors[i] == 0) std::swap(divisors[i], divisors[j]);
      if (divisors[j] % divisors[i] != 0) {
        BigInt g = gcd(divisors[i], divisors[j]);
        divisors[j] = divisors[i] * divisors[j] / g;
        divisors[i] = g;
      }
    }
  return divisors;
}

BigInt elementary_divisor_index(const WeightEndo& endo) {
  const GradedLattice& lat = *endo.lattice;
  const RingSpec& ring = *lat.ring();
  int d = ring.deg();
  DomainLattice dom = domain(endo);

  auto pim = ring.pi_multiplication_matrix();
  std::vector<std::vector<BigInt>> pi_mat(static_cast<size_t>(d),
                                          std::vector<BigInt>(static_cast<size_t>(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      pi_mat[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          pim[static_cast<size_t>(i)][static_cast<size_t>(j)];

  auto mat_mul = [d](const std::vector<std::vector<BigInt>>& a,
                     const std::vector<std::vector<BigInt>>& b) {
    std::vector<std::vector<BigInt>> r(static_cast<size_t>(d),
                                       std::vector<BigInt>(static_cast<size_t>(d), 0));
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        if (a[static_cast<size_t>(i)][static_cast<size_t>(k)] == 0) continue;
        for (int j = 0; j < d; ++j)
          r[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
              a[static_cast<size_t>(i)][static_cast<size_t>(k)] *
              b[static_cast<size_t>(k)][static_cast<size_t>(j)];
      }
    return r;
  };

  size_t total = static_cast<size_t>(lat.dim() * d);
  std::vector<std::vector<BigInt>> transition(total, std::vector<BigInt>(total, 0));
  for (int b = 0; b < lat.dim(); ++b) {
    std::vector<std::vector<BigInt>> block(static_cast<size_t>(d),
                                           std::vector<BigInt>(static_cast<size_t>(d), 0));
    for (int i = 0; i < d; ++i) block[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (int c = 0; c < dom.exponents[static_cast<size_t>(b)]; ++c)
      block = mat_mul(block, pi_mat);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        transition[static_cast<size_t>(b * d + i)][static_cast<size_t>(b * d + j)] =
            block[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }

  std::vector<BigInt> divisors = smith_normal_form(std::move(transition));
  if (divisors.size() != total)
    throw std::logic_error("transition matrix is singular");
  // the Z_p-index only sees the p-part of each divisor
  BigInt p(ring.p());
  BigInt index = 1;
  for (BigInt dv : divisors) {
    while (dv != 0 && dv % p == 0) {
      index *= p;
      dv /= p;
    }
  }
  return index;
}

DInfinity d_infinity(const WeightEndo& endo) {
  const GradedLattice& lat = *endo.lattice;
  DInfinity result;
  result.kept_mask.assign(static_cast<size_t>(lat.dim()), false);
  for (int i = 0; i < lat.dim(); ++i) {
    bool keep = lat.root_index(i) < 0 || endo.weights[static_cast<size_t>(i)] >= 0;
    result.kept_mask[static_cast<size_t>(i)] = keep;
    if (keep) result.kept.push_back(i);
  }
  // explicit iterated intersection, D_1 = M and D_{j+1} = {x in D_j :
  // phi(x) in D_j}; the exponent on a negative-weight label must be j|w|
  std::vector<int> c(static_cast<size_t>(lat.dim()), 0);
  for (int i = 0; i < lat.dim(); ++i)
    c[static_cast<size_t>(i)] = std::max(0, -endo.weights[static_cast<size_t>(i)]);
  for (int j = 1; j <= 3; ++j) {
    for (int i = 0; i < lat.dim(); ++i) {
      size_t k = static_cast<size_t>(i);
      int w = endo.weights[k];
      if (j > 1) c[k] = std::max(c[k], c[k] - w);
      if (c[k] != j * std::max(0, -w))
        throw std::logic_error("iterated domain exponent mismatch at " +
                               lat.label(i));
    }
  }
  return result;
}

bool kernel_intersection_trivial(const GradedLattice& lat,
                                 const std::vector<std::vector<int>>& roots) {
  if (roots.empty())
    throw std::invalid_argument("need a nonempty set of roots");
  int c = lat.rank();
  std::vector<std::vector<long long>> rows;
  for (const auto& root : roots) {
    if (static_cast<int>(root.size()) != c)
      throw std::invalid_argument("root vector of wrong rank");
    rows.emplace_back(root.begin(), root.end());
  }
  // fraction-free elimination; entries stay tiny at these ranks
  int rank = 0;
  for (int col = 0; col < c && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[static_cast<size_t>(rank)], rows[static_cast<size_t>(pivot)]);
    long long pv = rows[static_cast<size_t>(rank)][static_cast<size_t>(col)];
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      long long x = rows[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (x == 0) continue;
      for (int t = 0; t < c; ++t)
        rows[static_cast<size_t>(r)][static_cast<size_t>(t)] =
            rows[static_cast<size_t>(r)][static_cast<size_t>(t)] * pv -
            rows[static_cast<size_t>(rank)][static_cast<size_t>(t)] * x;
    }
    ++rank;
  }
  return rank == c;
}

namespace {

// smallest root vector in lexicographic order among candidate basis indices
int lex_smallest(const GradedLattice& lat, const std::vector<int>& candidates) {
  int best = -1;
  for (int i : candidates) {
    if (best < 0 || lat.grade(i) < lat.grade(best)) best = i;
  }
  return best;
}

}  // namespace

EscapeWitness escape_witness(const LatticeElem& x, const WeightEndo& endo,
                             int a_scale) {
  const GradedLattice& lat = *endo.lattice;
  if (x.lattice() != &lat)
    throw std::invalid_argument("element does not belong to the endomorphism's lattice");
  if (a_scale < 0) throw std::invalid_argument("a_scale must be >= 0");
  std::vector<std::vector<int>> escape_roots;
  for (int i : endo.complement) escape_roots.push_back(lat.grade(i));
  if (!kernel_intersection_trivial(lat, escape_roots))
    throw std::domain_error("hypothesis violated: the escape roots do not "
                            "separate the Cartan part");
  int precision = x.ring()->m();
  for (int i = 0; i < lat.dim(); ++i)
    if (x.coeff(i).valuation() < a_scale)
      throw std::invalid_argument("element is not in aL at the given scale");
  if (x.valuation() >= precision)
    throw std::domain_error("precision exhausted: element is "
                            "indistinguishable from 0");

  EscapeWitness witness;
  LatticeElem cur = x;
  for (int step = 0; step <= 2; ++step) {
    // case 1: a coefficient outside D_infinity is already visible
    int escape = -1;
    for (int i : endo.complement)
      if (cur.coeff(i).valuation() < precision) {
        if (escape < 0 ||
            cur.coeff(i).valuation() < cur.coeff(escape).valuation())
          escape = i;
      }
    if (escape >= 0) {
      witness.escape_basis = escape;
      witness.escape_valuation = cur.coeff(escape).valuation();
      break;
    }
    if (step == 2) throw std::logic_error("escape did not terminate in two brackets");

    // case 2: Cartan component visible; bracket with a e_alpha for a
    // separating alpha in Phi - Psi
    bool has_h = false;
    for (int i = 0; i < lat.rank(); ++i)
      has_h = has_h || cur.coeff(i).valuation() < precision;
    if (has_h) {
      std::vector<int> usable;
      int best_val = precision;
      for (int i : endo.complement) {
        // alpha(h) = sum alpha_t * h-coefficient_t
        RingElem pairing = cur.ring()->zero();
        for (int t = 0; t < lat.rank(); ++t)
          pairing += cur.coeff(t) *
                     cur.ring()->from_int(lat.grade(i)[static_cast<size_t>(t)]);
        int val = pairing.valuation();
        if (val + a_scale >= precision) continue;
        if (val < best_val) {
          best_val = val;
          usable.assign(1, i);
        } else if (val == best_val) {
          usable.push_back(i);
        }
      }
      if (usable.empty())
        throw std::domain_error(
            "precision exhausted: no escape root separates the Cartan "
            "component at this precision");
      int alpha = lex_smallest(lat, usable);
      witness.brackets.emplace_back(alpha, a_scale);
      cur = lat.bracket(cur, lat.basis_elem(alpha, cur.ring(), a_scale));
      continue;
    }

    // case 3: only Psi components; pair one against its opposite root to
    // reach the Cartan part (the pairing is nonzero by the grading axioms)
    std::vector<int> candidates;
    for (int i : endo.psi)
      if (cur.coeff(i).valuation() < precision) candidates.push_back(i);
    if (candidates.empty())
      throw std::domain_error("precision exhausted: element is "
                              "indistinguishable from 0");
    int alpha = lex_smallest(lat, candidates);
    int neg_root = lat.roots().negative_of(lat.root_index(alpha));
    int neg_basis = -1;
    for (int i = lat.rank(); i < lat.dim(); ++i)
      if (lat.root_index(i) == neg_root) neg_basis = i;
    witness.brackets.emplace_back(neg_basis, a_scale);
    cur = lat.bracket(cur, lat.basis_elem(neg_basis, cur.ring(), a_scale));
  }

  // replay the witness from scratch before returning it
  LatticeElem replay = x;
  for (const auto& [b, scale] : witness.brackets)
    replay = lat.bracket(replay, lat.basis_elem(b, replay.ring(), scale));
  if (replay.coeff(witness.escape_basis).valuation() != witness.escape_valuation)
    throw std::logic_error("witness replay diverged");
  if (witness.escape_valuation >= precision)
    throw std::logic_error("witness does not escape at this precision");
  return witness;
}

std::string EscapeWitness::to_json(const GradedLattice& lat) const {
  nlohmann::json j;
  j["brackets"] = nlohmann::json::array();
  for (const auto& [b, scale] : brackets)
    j["brackets"].push_back(
        {{"bracket_with", lat.label(b)}, {"scale_exponent", scale}});
  j["escape_label"] = lat.label(escape_basis);
  j["coefficient_valuation"] = escape_valuation;
  return j.dump();
}

SweepResult exhaustive_escape_sweep(const GradedLattice& lat,
                                    const WeightEndo& endo, int m) {
  if (m < 0) throw std::invalid_argument("m must be >= 0");
  SweepResult result;
  int dim = lat.dim();
  std::uint64_t q = lat.ring()->q();
  int precision = m + 2 * endo.k + 2;
  Ring work = lat.ring()->with_precision(precision);
  RingElem pim = work->pi_pow(m);

  std::vector<std::uint64_t> u(static_cast<size_t>(dim), 0);
  std::vector<char> is_escape_coord(static_cast<size_t>(dim), 0);
  for (int i : endo.complement) is_escape_coord[static_cast<size_t>(i)] = 1;

  // a nonzero residue digit lifts to a coefficient of valuation exactly m,
  // which is already visible at the working precision; verify that once so
  // the per-element fast path below stands on an executed check
  std::vector<RingElem> lifts;
  for (std::uint64_t v = 0; v < q; ++v) {
    lifts.push_back(pim * work->residue_representative(v));
    if (v > 0 && (lifts.back().valuation() != m || m >= precision))
      throw std::logic_error("residue lift does not have valuation m");
  }

  std::uint64_t full_check_stride = 997;  // also replay a sample of fast cases
  while (true) {
    // next nonzero coset representative
    int t = 0;
    for (; t < dim; ++t) {
      size_t k = static_cast<size_t>(t);
      if (++u[k] < q) break;
      u[k] = 0;
    }
    if (t == dim) break;
    ++result.tested;

    // a coordinate on Phi - Psi is pi^m * unit: escape is immediate (the
    // empty witness), so only replay these on a sample
    bool fast = false;
    for (int i : endo.complement)
      if (u[static_cast<size_t>(i)] != 0) {
        fast = true;
        break;
      }
    if (fast && result.tested % full_check_stride != 0) continue;

    LatticeElem x = lat.zero_elem(work);
    for (int i = 0; i < dim; ++i)
      if (u[static_cast<size_t>(i)] != 0)
        x.set_coeff(i, lifts[u[static_cast<size_t>(i)]]);
    try {
      EscapeWitness w = escape_witness(x, endo, m);
      if (!is_escape_coord[static_cast<size_t>(w.escape_basis)]) {
        result.all_ok = false;
        result.failure = "witness escaped through a kept label " +
                         lat.label(w.escape_basis);
        return result;
      }
    } catch (const std::exception& err) {
      result.all_ok = false;
      std::ostringstream os;
      os << "no witness for coefficients (";
      for (int i = 0; i < dim; ++i) {
        if (i) os << ",";
        os << u[static_cast<size_t>(i)];
      }
      os << "): " << err.what();
      result.failure = os.str();
      return result;
    }
  }
  return result;
}

}  // namespace lielat
