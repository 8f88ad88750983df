#include "lielat/counting.hpp"

#include <algorithm>
#include <stdexcept>

namespace lielat {

std::string method_name(CountMethod m) {
  switch (m) {
    case CountMethod::formula: return "formula";
    case CountMethod::orbit_recursion: return "orbit";
    case CountMethod::brute_force: return "brute";
  }
  return "?";
}

std::string group_name(GroupKind g) {
  switch (g) {
    case GroupKind::O: return "O";
    case GroupKind::SO: return "SO";
    case GroupKind::SL: return "SL";
    case GroupKind::Sp: return "Sp";
  }
  return "?";
}

GroupKind parse_group(const std::string& name) {
  if (name == "O") return GroupKind::O;
  if (name == "SO") return GroupKind::SO;
  if (name == "SL") return GroupKind::SL;
  if (name == "Sp") return GroupKind::Sp;
  throw std::invalid_argument("unknown group: " + name);
}

namespace {

void check_group_shape(GroupKind group, int n, std::uint64_t q) {
  if (q < 3 || q % 2 == 0)
    throw std::invalid_argument("q must be an odd prime power >= 3");
  switch (group) {
    case GroupKind::O:
    case GroupKind::SO:
      if (n < 1) throw std::invalid_argument("orthogonal groups need n >= 1");
      break;
    case GroupKind::SL:
      if (n < 2) throw std::invalid_argument("SL needs n >= 2");
      break;
    case GroupKind::Sp:
      if (n < 2 || n % 2) throw std::invalid_argument("Sp needs even n >= 2");
      break;
  }
}

// q^{E} prod_{j in js} (1 - q^{-j}), evaluated as
// q^{E - sum js} prod (q^j - 1); E always dominates.
BigInt factored_product(std::uint64_t q, std::uint64_t e_exp,
                        const std::vector<std::uint64_t>& js) {
  std::uint64_t shift = 0;
  for (std::uint64_t j : js) shift += j;
  if (shift > e_exp) throw std::logic_error("product does not clear the q-power");
  BigInt result = big_pow(BigInt(q), e_exp - shift);
  for (std::uint64_t j : js) result *= big_pow(BigInt(q), j) - 1;
  return result;
}

}  // namespace

OrderResult formula_order(GroupKind group, int n, std::uint64_t q, int m) {
  check_group_shape(group, n, q);
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  std::uint64_t um = static_cast<std::uint64_t>(m);
  std::uint64_t ul = static_cast<std::uint64_t>(n) / 2;
  BigInt so;
  switch (group) {
    case GroupKind::SL: {
      std::uint64_t len = static_cast<std::uint64_t>(n) - 1;
      std::vector<std::uint64_t> js;
      for (std::uint64_t i = 1; i <= len; ++i) js.push_back(i + 1);
      BigInt value = factored_product(
          q, (static_cast<std::uint64_t>(n) * n - 1) * um, js);
      return {group, n, q, m, value, CountMethod::formula};
    }
    case GroupKind::Sp: {
      std::vector<std::uint64_t> js;
      for (std::uint64_t i = 1; i <= ul; ++i) js.push_back(2 * i);
      BigInt value = factored_product(q, (2 * ul * ul + ul) * um, js);
      return {group, n, q, m, value, CountMethod::formula};
    }
    case GroupKind::O:
    case GroupKind::SO:
      if (n % 2 == 1) {
        std::vector<std::uint64_t> js;
        for (std::uint64_t i = 1; i <= ul; ++i) js.push_back(2 * i);
        so = factored_product(q, (2 * ul * ul + ul) * um, js);
      } else {
        std::vector<std::uint64_t> js;
        js.push_back(ul);
        for (std::uint64_t i = 1; i + 1 <= ul; ++i) js.push_back(2 * i);
        so = factored_product(q, (2 * ul * ul - ul) * um, js);
      }
      return {group, n, q, m, group == GroupKind::SO ? so : 2 * so,
              CountMethod::formula};
  }
  throw std::logic_error("unreachable");
}

BigInt formula_Cn(int n, std::uint64_t q, int m) {
  if (n < 2) throw std::invalid_argument("C_n needs n >= 2");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  std::uint64_t shell =
      static_cast<std::uint64_t>(m - 1) * (static_cast<std::uint64_t>(n) - 1);
  BigInt base;
  if (n % 2 == 0) {
    std::uint64_t l = static_cast<std::uint64_t>(n) / 2;
    base = (big_pow(BigInt(q), l) - 1) * (big_pow(BigInt(q), l - 1) + 1);
  } else {
    base = big_pow(BigInt(q), static_cast<std::uint64_t>(n) - 1) - 1;
  }
  return base * big_pow(BigInt(q), shell);
}

BigInt recursion_cn(int n, std::uint64_t q) {
  if (n < 1) throw std::invalid_argument("c_n needs n >= 1");
  if (n == 1) return 1;
  if (n == 2) return 2 * BigInt(q) - 1;
  return recursion_cn(n - 2, q) * q +
         big_pow(BigInt(q), static_cast<std::uint64_t>(n) - 2) * (BigInt(q) - 1);
}

// ---- brute force ---------------------------------------------------------

namespace {

// Ring elements as dense indices with lookup tables; only viable for the
// small quotients brute force runs on.
struct RingTables {
  const RingSpec* ring;
  std::uint32_t size;
  std::vector<std::uint16_t> mul, add, sub;
  std::vector<char> unit;
  std::uint16_t zero, one;

  explicit RingTables(const Ring& r, std::uint64_t budget) : ring(r.get()) {
    if (r->size() > 4096 || r->size() * r->size() > budget)
      throw BudgetExceeded(r->size() * r->size(), budget);
    size = static_cast<std::uint32_t>(r->size());
    auto elems = r->elements(budget);
    mul.assign(static_cast<size_t>(size) * size, 0);
    add.assign(static_cast<size_t>(size) * size, 0);
    sub.assign(static_cast<size_t>(size) * size, 0);
    unit.assign(size, 0);
    for (std::uint32_t i = 0; i < size; ++i) {
      unit[i] = elems[i].is_unit();
      for (std::uint32_t j = 0; j < size; ++j) {
        mul[static_cast<size_t>(i) * size + j] = static_cast<std::uint16_t>(
            r->element_index(elems[i] * elems[j]));
        add[static_cast<size_t>(i) * size + j] = static_cast<std::uint16_t>(
            r->element_index(elems[i] + elems[j]));
        sub[static_cast<size_t>(i) * size + j] = static_cast<std::uint16_t>(
            r->element_index(elems[i] - elems[j]));
      }
    }
    zero = static_cast<std::uint16_t>(r->element_index(r->zero()));
    one = static_cast<std::uint16_t>(r->element_index(r->one()));
  }

  std::uint16_t mul_at(std::uint16_t a, std::uint16_t b) const {
    return mul[static_cast<size_t>(a) * size + b];
  }
  std::uint16_t add_at(std::uint16_t a, std::uint16_t b) const {
    return add[static_cast<size_t>(a) * size + b];
  }
  std::uint16_t sub_at(std::uint16_t a, std::uint16_t b) const {
    return sub[static_cast<size_t>(a) * size + b];
  }
};

struct BruteSearch {
  const Ring& ring;
  RingTables tables;
  GroupKind group;
  int n;
  std::uint64_t budget;
  std::uint64_t touched = 0;
  bool need_gram;
  bool need_det;
  std::vector<std::vector<std::uint16_t>> gram;  // Gram matrix as indices
  std::uint64_t candidate_count;
  // columns as index vectors, flattened candidate table and transforms
  std::vector<std::uint16_t> cand;     // candidate_count x n
  std::vector<std::uint16_t> s_cand;   // S * candidate, same layout
  std::vector<std::uint16_t> chosen;   // n x n, column-major partial matrix
  const std::function<void(const Mat&)>* emit;
  std::vector<RingElem> elems;

  BruteSearch(GroupKind g, int size, const Ring& r, std::uint64_t b)
      : ring(r), tables(r, b), group(g), n(size), budget(b) {
    need_gram = g == GroupKind::O || g == GroupKind::SO || g == GroupKind::Sp;
    need_det = g == GroupKind::SO || g == GroupKind::SL;
    elems = r->elements(b);
  }

  std::uint16_t dot_through_form(const std::uint16_t* u,
                                 const std::uint16_t* sv) const {
    std::uint16_t acc = tables.zero;
    for (int t = 0; t < n; ++t)
      acc = tables.add_at(acc, tables.mul_at(u[t], sv[t]));
    return acc;
  }

  void prepare_candidates() {
    // pessimistic lower bound on work: one pass over all column candidates
    double est = 1;
    for (int t = 0; t < n; ++t) est *= static_cast<double>(tables.size);
    if (est > static_cast<double>(budget))
      throw BudgetExceeded(static_cast<std::uint64_t>(est), budget);
    candidate_count = 1;
    for (int t = 0; t < n; ++t) candidate_count *= tables.size;

    if (need_gram) {
      // the transform table below is itself a full pass over the candidates
      touched += candidate_count;
      if (touched > budget) throw BudgetExceeded(touched, budget);
      Mat s = gram_matrix(
          group == GroupKind::Sp
              ? FormKind::sympl
              : (n % 2 == 0 ? FormKind::orth_even : FormKind::orth_odd),
          n, ring.get());
      gram.assign(static_cast<size_t>(n), std::vector<std::uint16_t>(static_cast<size_t>(n)));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          gram[static_cast<size_t>(i)][static_cast<size_t>(j)] =
              static_cast<std::uint16_t>(ring->element_index(s.at(i, j)));

      cand.assign(candidate_count * static_cast<size_t>(n), 0);
      s_cand.assign(candidate_count * static_cast<size_t>(n), 0);
      std::vector<std::uint16_t> v(static_cast<size_t>(n), 0);
      for (std::uint64_t idx = 0; idx < candidate_count; ++idx) {
        std::uint64_t rest = idx;
        for (int t = 0; t < n; ++t) {
          v[static_cast<size_t>(t)] = static_cast<std::uint16_t>(rest % tables.size);
          rest /= tables.size;
        }
        for (int t = 0; t < n; ++t) {
          cand[idx * static_cast<size_t>(n) + static_cast<size_t>(t)] =
              v[static_cast<size_t>(t)];
          std::uint16_t acc = tables.zero;
          for (int u = 0; u < n; ++u)
            acc = tables.add_at(
                acc, tables.mul_at(gram[static_cast<size_t>(t)][static_cast<size_t>(u)],
                                   v[static_cast<size_t>(u)]));
          s_cand[idx * static_cast<size_t>(n) + static_cast<size_t>(t)] = acc;
        }
      }
    }
    chosen.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  }

  std::uint16_t entry(int i, int j) const {
    return chosen[static_cast<size_t>(j * n + i)];
  }

  // table-driven determinant for the sizes where leaves are plentiful
  bool det_is_one() const {
    if (n == 1) return entry(0, 0) == tables.one;
    if (n == 2) {
      std::uint16_t d = tables.sub_at(
          tables.mul_at(entry(0, 0), entry(1, 1)),
          tables.mul_at(entry(0, 1), entry(1, 0)));
      return d == tables.one;
    }
    if (n == 3) {
      std::uint16_t acc = tables.zero;
      for (int j = 0; j < 3; ++j) {
        std::uint16_t minor = tables.sub_at(
            tables.mul_at(entry(1, (j + 1) % 3), entry(2, (j + 2) % 3)),
            tables.mul_at(entry(1, (j + 2) % 3), entry(2, (j + 1) % 3)));
        acc = tables.add_at(acc, tables.mul_at(entry(0, j), minor));
      }
      return acc == tables.one;
    }
    Mat m(ring.get(), n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        m.at(i, j) = elems[chosen[static_cast<size_t>(j * n + i)]];
    return det(m) == ring->one();
  }

  void emit_chosen() const {
    Mat m(ring.get(), n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        m.at(i, j) = elems[chosen[static_cast<size_t>(j * n + i)]];
    (*emit)(m);
  }

  void recurse(int level) {
    if (level == n) {
      if (need_det && !det_is_one()) return;
      emit_chosen();
      return;
    }
    for (std::uint64_t idx = 0; idx < candidate_count; ++idx) {
      if (++touched > budget) throw BudgetExceeded(touched, budget);
      const std::uint16_t* col = &cand[idx * static_cast<size_t>(n)];
      const std::uint16_t* scol = &s_cand[idx * static_cast<size_t>(n)];
      bool ok = true;
      for (int t = 0; t <= level && ok; ++t) {
        const std::uint16_t* prev =
            t == level ? col : &chosen[static_cast<size_t>(t * n)];
        ok = dot_through_form(prev, scol) ==
             gram[static_cast<size_t>(t)][static_cast<size_t>(level)];
      }
      if (!ok) continue;
      std::copy(col, col + n, chosen.begin() + static_cast<size_t>(level * n));
      recurse(level + 1);
    }
  }

  // SL: plain odometer over all matrices, det check at the leaves
  void enumerate_all() {
    std::vector<std::uint64_t> idx(static_cast<size_t>(n), 0);
    while (true) {
      if (++touched > budget) throw BudgetExceeded(touched, budget);
      for (int j = 0; j < n; ++j) {
        std::uint64_t rest = idx[static_cast<size_t>(j)];
        for (int i = 0; i < n; ++i) {
          chosen[static_cast<size_t>(j * n + i)] =
              static_cast<std::uint16_t>(rest % tables.size);
          rest /= tables.size;
        }
      }
      if (det_is_one()) emit_chosen();
      int t = 0;
      for (; t < n; ++t) {
        if (++idx[static_cast<size_t>(t)] < candidate_count) break;
        idx[static_cast<size_t>(t)] = 0;
      }
      if (t == n) break;
    }
  }

  void run(const std::function<void(const Mat&)>& fn) {
    emit = &fn;
    prepare_candidates();
    if (group == GroupKind::SL) {
      // volume is candidate_count^n; refuse hopeless searches up front
      double est = 1;
      for (int t = 0; t < n; ++t) est *= static_cast<double>(candidate_count);
      if (est > static_cast<double>(budget))
        throw BudgetExceeded(static_cast<std::uint64_t>(est), budget);
      enumerate_all();
    } else {
      recurse(0);
    }
  }
};

}  // namespace

void brute_enumerate(GroupKind group, int n, const Ring& ring,
                     const std::function<void(const Mat&)>& fn,
                     std::uint64_t budget) {
  check_group_shape(group, n, ring->q());
  BruteSearch search(group, n, ring, budget);
  search.run(fn);
}

OrderResult brute_count(GroupKind group, int n, const Ring& ring,
                        std::uint64_t budget) {
  BigInt count = 0;
  brute_enumerate(group, n, ring, [&](const Mat&) { ++count; }, budget);
  return {group, n, ring->q(), ring->m(), count, CountMethod::brute_force};
}

BigInt brute_count_Cn(int n, const Ring& ring, std::uint64_t budget) {
  if (n < 2) throw std::invalid_argument("C_n needs n >= 2");
  RingTables tables(ring, budget);
  double est = 1;
  for (int t = 0; t < n; ++t) est *= static_cast<double>(tables.size);
  if (est > static_cast<double>(budget))
    throw BudgetExceeded(static_cast<std::uint64_t>(est), budget);

  Mat s = gram_matrix(n % 2 == 0 ? FormKind::orth_even : FormKind::orth_odd, n,
                      ring.get());
  std::vector<std::vector<std::uint16_t>> gram(
      static_cast<size_t>(n), std::vector<std::uint16_t>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          static_cast<std::uint16_t>(ring->element_index(s.at(i, j)));

  BigInt count = 0;
  std::vector<std::uint16_t> v(static_cast<size_t>(n), 0);
  while (true) {
    bool unimodular = false;
    for (int t = 0; t < n; ++t) unimodular = unimodular || tables.unit[v[static_cast<size_t>(t)]];
    if (unimodular) {
      std::uint16_t acc = tables.zero;
      for (int i = 0; i < n; ++i) {
        std::uint16_t row = tables.zero;
        for (int j = 0; j < n; ++j)
          row = tables.add_at(
              row, tables.mul_at(gram[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                 v[static_cast<size_t>(j)]));
        acc = tables.add_at(acc, tables.mul_at(v[static_cast<size_t>(i)], row));
      }
      if (acc == tables.zero) ++count;
    }
    int t = 0;
    for (; t < n; ++t) {
      if (++v[static_cast<size_t>(t)] < tables.size) break;
      v[static_cast<size_t>(t)] = 0;
    }
    if (t == n) break;
  }
  return count;
}

OrderResult orbit_count(GroupKind group, int n, const Ring& ring,
                        CnSource cn_source, std::uint64_t budget) {
  if (group != GroupKind::O && group != GroupKind::SO)
    throw std::invalid_argument("orbit counting applies to O and SO only");
  if (n < 1) throw std::invalid_argument("orbit counting needs n >= 1");
  std::uint64_t q = ring->q();
  int m = ring->m();
  BigInt order = n % 2 == 0 ? 1 : 2;  // |O_0| = 1, |O_1| = 2
  BigInt qm_value = big_pow(BigInt(q), static_cast<std::uint64_t>(m));
  for (int j = n % 2 == 0 ? 2 : 3; j <= n; j += 2) {
    BigInt cn = cn_source == CnSource::formula ? formula_Cn(j, q, m)
                                               : brute_count_Cn(j, ring, budget);
    // |T_j| = |O_{j-2}| * (q^m)^{j-2}
    order = cn * order * big_pow(qm_value, static_cast<std::uint64_t>(j) - 2);
  }
  if (group == GroupKind::SO) {
    order /= 2;  // index 2, every congruence class splits evenly
  }
  return {group, n, q, m, order, CountMethod::orbit_recursion};
}

// ---- orthogonal completions -------------------------------------------

IsotropicVector certify_isotropic(const Mat& x) {
  if (x.cols() != 1 || x.rows() < 2)
    throw std::invalid_argument("expected a column vector of size >= 2");
  int n = x.rows();
  int l = n / 2;
  const RingSpec* ring = x.ring();
  Mat s = gram_matrix(n % 2 == 0 ? FormKind::orth_even : FormKind::orth_odd, n, ring);
  if (!(x.transpose() * s * x).is_zero())
    throw std::domain_error("vector is not isotropic");
  bool unimodular = false;
  for (int i = 0; i < n; ++i) unimodular = unimodular || x.at(i, 0).is_unit();
  if (!unimodular) throw std::domain_error("vector is not unimodular");
  // a unit always exists among the first 2l entries: for odd n the
  // isotropy relation pushes x_n^2 into the ideal of the first half
  int pivot = -1;
  for (int i = 0; i < 2 * l; ++i)
    if (x.at(i, 0).is_unit()) {
      pivot = i;
      break;
    }
  if (pivot < 0)
    throw std::logic_error("no unit among the paired coordinates");
  return {x, pivot, pivot >= l};
}

Mat complete_to_orthogonal(const Mat& x) {
  IsotropicVector cert = certify_isotropic(x);
  int n = x.rows();
  int l = n / 2;
  const RingSpec* ring = x.ring();
  Mat s = gram_matrix(n % 2 == 0 ? FormKind::orth_even : FormKind::orth_odd, n, ring);

  Mat m(ring, n, n);
  if (cert.flipped) {
    // unit sits in the lower block: complete S x and flip back
    Mat a = complete_to_orthogonal(s * x);
    m = s * a;
  } else {
    Mat upper = x.block(0, 0, l, 1);
    Mat lower = x.block(l, 0, l, 1);
    Mat u = complete_to_invertible(upper);
    Mat y = u.transpose() * lower;
    Mat w(ring, l, l);
    w.at(0, 0) = y.at(0, 0);
    for (int i = 1; i < l; ++i) {
      w.at(i, 0) = y.at(i, 0);
      w.at(0, i) = -y.at(i, 0);
    }
    Mat ut_inv = inverse(u).transpose();
    Mat zero_l(ring, l, l);
    Mat id_l = Mat::identity(ring, l);
    if (n % 2 == 0) {
      m = Mat::from_blocks({{u, zero_l}, {zero_l, ut_inv}}) *
          Mat::from_blocks({{id_l, zero_l}, {w, id_l}});
    } else {
      RingElem xn = x.at(n - 1, 0);
      Mat zero_col(ring, l, 1), zero_row(ring, 1, l);
      Mat one_cell = Mat::identity(ring, 1);
      Mat corner(ring, 1, 1);
      corner.at(0, 0) = ring->one();
      Mat v_col(ring, l, 1);
      v_col.at(0, 0) = -xn;
      Mat x_row(ring, 1, l);
      x_row.at(0, 0) = xn;
      Mat diag = Mat::from_blocks(
          {{u, zero_l, zero_col}, {zero_l, ut_inv, zero_col},
           {zero_row, zero_row, one_cell}});
      Mat tri = Mat::from_blocks(
          {{id_l, zero_l, zero_col}, {w, id_l, v_col}, {x_row, zero_row, corner}});
      m = diag * tri;
    }
  }

  // replay both postconditions
  if (!(m.block(0, 0, n, 1) == x))
    throw std::logic_error("completion does not send e_1 to x");
  if (!(m.transpose() * s * m == s))
    throw std::logic_error("completion is not orthogonal");
  return m;
}

Mat stabilizer_element(int n, const Ring& ring, const StabilizerParams& params) {
  if (n < 2) throw std::invalid_argument("stabilizer needs n >= 2");
  bool odd = n % 2 == 1;
  int l = n / 2;
  if (static_cast<int>(params.x.size()) != l - 1 ||
      static_cast<int>(params.y.size()) != l - 1)
    throw std::invalid_argument("x, y must have length l - 1");
  if (odd != params.nu.has_value())
    throw std::invalid_argument("nu is present exactly for odd sizes");
  if (params.inner.rows() != n - 2 || params.inner.cols() != n - 2)
    throw std::invalid_argument("inner matrix must have size n - 2");

  const RingSpec* r = ring.get();
  RingElem half = r->from_int(2).inverse();
  RingElem nu = odd ? *params.nu : r->zero();

  // inner blocks over coordinates (2..l | l+2..2l | 2l+1), 1-based
  int il = l - 1;
  Mat a = params.inner.block(0, 0, il, il), b = params.inner.block(0, il, il, il);
  Mat c = params.inner.block(il, 0, il, il), d = params.inner.block(il, il, il, il);
  Mat xr = Mat::column(r, params.x);  // stored as columns
  Mat yr = Mat::column(r, params.y);

  Mat u(r, il, 1), v(r, il, 1), e(r, 1, il), f(r, 1, il);
  RingElem gamma = r->one();
  if (odd) {
    u = params.inner.block(0, 2 * il, il, 1);
    v = params.inner.block(il, 2 * il, il, 1);
    e = params.inner.block(2 * il, 0, 1, il);
    f = params.inner.block(2 * il, il, 1, il);
    gamma = params.inner.at(2 * il, 2 * il);
  }

  // the remaining entries are forced
  Mat arow = -(yr.transpose() * a) - xr.transpose() * c - e * nu;
  Mat brow = -(yr.transpose() * b) - xr.transpose() * d - f * nu;
  RingElem lambda =
      -((yr.transpose() * xr).at(0, 0) + (xr.transpose() * yr).at(0, 0) + nu * nu) *
      half;
  RingElem alpha = -(yr.transpose() * u).at(0, 0) - (xr.transpose() * v).at(0, 0) -
                   gamma * nu;

  Mat m = Mat::identity(r, n);
  // first row: 1 | a | lambda | b | alpha
  for (int t = 0; t < il; ++t) {
    m.at(0, 1 + t) = arow.at(0, t);
    m.at(0, l + 1 + t) = brow.at(0, t);
  }
  m.at(0, l) = lambda;
  if (odd) m.at(0, n - 1) = alpha;
  // row block 2..l: A | x | B | u
  for (int i = 0; i < il; ++i) {
    for (int t = 0; t < il; ++t) {
      m.at(1 + i, 1 + t) = a.at(i, t);
      m.at(1 + i, l + 1 + t) = b.at(i, t);
    }
    m.at(1 + i, l) = xr.at(i, 0);
    if (odd) m.at(1 + i, n - 1) = u.at(i, 0);
  }
  // row l+1 stays e_{l+1}^t (mu = 1, c = d = 0, beta = 0)
  // row block l+2..2l: C | y | D | v
  for (int i = 0; i < il; ++i) {
    for (int t = 0; t < il; ++t) {
      m.at(l + 1 + i, 1 + t) = c.at(i, t);
      m.at(l + 1 + i, l + 1 + t) = d.at(i, t);
    }
    m.at(l + 1 + i, l) = yr.at(i, 0);
    if (odd) m.at(l + 1 + i, n - 1) = v.at(i, 0);
  }
  if (odd) {
    // last row: 0 | e | nu | f | gamma
    m.at(n - 1, n - 1) = gamma;
    for (int t = 0; t < il; ++t) {
      m.at(n - 1, 1 + t) = e.at(0, t);
      m.at(n - 1, l + 1 + t) = f.at(0, t);
    }
    m.at(n - 1, l) = nu;
  }

  if (!is_member(m, GroupKind::O))
    throw std::logic_error("assembled stabilizer element is not orthogonal");
  for (int i = 0; i < n; ++i)
    if (!(m.at(i, 0) == (i == 0 ? r->one() : r->zero())))
      throw std::logic_error("assembled element does not fix e_1");
  return m;
}

}  // namespace lielat
