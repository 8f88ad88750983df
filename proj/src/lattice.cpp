#include "lielat/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lielat {

std::string family_name(Family f) {
  switch (f) {
    case Family::sl: return "sl";
    case Family::sp: return "sp";
    case Family::so_even: return "so_even";
    case Family::so_odd: return "so_odd";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "sl") return Family::sl;
  if (name == "sp") return Family::sp;
  if (name == "so_even") return Family::so_even;
  if (name == "so_odd") return Family::so_odd;
  throw std::invalid_argument("unknown family: " + name);
}

int index_exponent_factor(Family f, int n) {
  switch (f) {
    case Family::sl: return n - 1;
    case Family::sp: return n;
    case Family::so_even:
    case Family::so_odd: return n - 2;
  }
  return 0;
}

IntMat IntMat::commutator(const IntMat& o) const {
  IntMat r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      long long x = at(i, k), y = o.at(i, k);
      if (x == 0 && y == 0) continue;
      for (int j = 0; j < n; ++j)
        r.at(i, j) += x * o.at(k, j) - y * at(k, j);
    }
  return r;
}

Mat IntMat::over(const RingSpec* ring) const {
  Mat m(ring, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (at(i, j) != 0) m.at(i, j) = ring->from_int(at(i, j));
  return m;
}

RootSystem::RootSystem(char tag, int rank, std::vector<std::vector<int>> roots)
    : tag_(tag), rank_(rank), roots_(std::move(roots)) {
  size_t expect = 0;
  size_t n = static_cast<size_t>(rank);
  switch (tag) {
    case 'A': expect = (n + 1) * (n + 1) - (n + 1); break;  // rank = n - 1
    case 'B': expect = 2 * n * n; break;
    case 'C': expect = 2 * n * n; break;
    case 'D': expect = 2 * n * n - 2 * n; break;
    default: throw std::invalid_argument("unknown root system tag");
  }
  if (roots_.size() != expect)
    throw std::logic_error("root count does not match the family");
  for (size_t i = 0; i < roots_.size(); ++i) {
    if (static_cast<int>(roots_[i].size()) != rank)
      throw std::logic_error("root vector of wrong rank");
    bool zero = true;
    for (int x : roots_[i]) zero = zero && x == 0;
    if (zero) throw std::logic_error("zero vector listed as root");
    std::vector<int> neg = roots_[i];
    for (int& x : neg) x = -x;
    if (index_of(neg) < 0) throw std::logic_error("root set is not symmetric");
  }
}

int RootSystem::index_of(const std::vector<int>& v) const {
  for (size_t i = 0; i < roots_.size(); ++i)
    if (roots_[i] == v) return static_cast<int>(i);
  return -1;
}

int RootSystem::negative_of(int i) const {
  std::vector<int> neg = roots_[static_cast<size_t>(i)];
  for (int& x : neg) x = -x;
  return index_of(neg);
}

// ---- LatticeElem ---------------------------------------------------------

bool LatticeElem::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

int LatticeElem::valuation() const {
  int best = ring_->m();
  for (const auto& x : c_) best = std::min(best, x.valuation());
  return best;
}

LatticeElem LatticeElem::operator+(const LatticeElem& o) const {
  if (lat_ != o.lat_ || ring_.get() != o.ring_.get())
    throw std::invalid_argument("lattice element mismatch");
  LatticeElem r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

LatticeElem LatticeElem::operator-(const LatticeElem& o) const {
  if (lat_ != o.lat_ || ring_.get() != o.ring_.get())
    throw std::invalid_argument("lattice element mismatch");
  LatticeElem r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

LatticeElem LatticeElem::scaled(const RingElem& s) const {
  LatticeElem r = *this;
  for (auto& x : r.c_) x = x * s;
  return r;
}

bool LatticeElem::operator==(const LatticeElem& o) const {
  return lat_ == o.lat_ && ring_.get() == o.ring_.get() && c_ == o.c_;
}

// ---- construction ----------------------------------------------------------

GradedLattice::GradedLattice(Family family, int n, Ring ring, RootSystem roots)
    : family_(family), n_(n), ring_(std::move(ring)), roots_(std::move(roots)) {
  rank_ = roots_.rank();
  switch (family) {
    case Family::sl: l_ = n - 1; break;
    case Family::sp:
    case Family::so_even: l_ = n / 2; break;
    case Family::so_odd: l_ = (n - 1) / 2; break;
  }
}

void GradedLattice::push_h(std::string label, IntMat mat) {
  BasisVec b;
  b.label = std::move(label);
  b.root = -1;
  b.grade.assign(static_cast<size_t>(rank_), 0);
  b.mat = std::move(mat);
  basis_.push_back(std::move(b));
}

void GradedLattice::push_root(std::string label, int root_index, IntMat mat) {
  BasisVec b;
  b.label = std::move(label);
  b.root = root_index;
  b.grade = roots_.root(root_index);
  b.mat = std::move(mat);
  basis_.push_back(std::move(b));
}

namespace {

std::string sub2(const char* name, int i, int j) {
  std::ostringstream os;
  os << name << "(" << i << "," << j << ")";
  return os.str();
}

std::string sub1(const char* name, int i) {
  std::ostringstream os;
  os << name << "(" << i << ")";
  return os.str();
}

std::vector<int> unit_vec(int rank, int i, int sign) {
  std::vector<int> v(static_cast<size_t>(rank), 0);
  v[static_cast<size_t>(i - 1)] = sign;
  return v;
}

std::vector<int> diff_vec(int rank, int i, int j) {
  std::vector<int> v(static_cast<size_t>(rank), 0);
  v[static_cast<size_t>(i - 1)] += 1;
  v[static_cast<size_t>(j - 1)] -= 1;
  return v;
}

std::vector<int> sum_vec(int rank, int i, int j, int sign) {
  std::vector<int> v(static_cast<size_t>(rank), 0);
  v[static_cast<size_t>(i - 1)] += sign;
  v[static_cast<size_t>(j - 1)] += sign;
  return v;
}

}  // namespace

GradedLattice GradedLattice::build(Family family, int n, Ring ring) {
  switch (family) {
    case Family::sl:
      if (n < 2) throw std::invalid_argument("sl needs n >= 2");
      break;
    case Family::sp:
      if (n < 2 || n % 2) throw std::invalid_argument("sp needs even n >= 2");
      break;
    case Family::so_even:
      if (n < 4 || n % 2)
        throw std::invalid_argument("so_even needs even n >= 4 (l >= 2)");
      break;
    case Family::so_odd:
      if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("so_odd needs odd n >= 3");
      break;
  }

  if (family == Family::sl) {
    int rank = n - 1;
    std::vector<std::vector<int>> roots;
    // e(i,j) listing order below must match this root order
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        if (i < n && j < n) {
          roots.push_back(diff_vec(rank, i, j));
        } else if (j == n) {
          std::vector<int> v(static_cast<size_t>(rank), 1);  // sigma + eps_i
          v[static_cast<size_t>(i - 1)] += 1;
          roots.push_back(std::move(v));
        } else {  // i == n
          std::vector<int> v(static_cast<size_t>(rank), -1);
          v[static_cast<size_t>(j - 1)] -= 1;
          roots.push_back(std::move(v));
        }
      }
    GradedLattice lat(family, n, std::move(ring),
                      RootSystem('A', rank, std::move(roots)));
    for (int i = 1; i < n; ++i) {
      IntMat h(n);
      h.at(i - 1, i - 1) = 1;
      h.at(n - 1, n - 1) = -1;
      lat.push_h(sub1("h", i), std::move(h));
    }
    int r = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        IntMat e(n);
        e.at(i - 1, j - 1) = 1;
        lat.push_root(sub2("e", i, j), r++, std::move(e));
      }
    lat.finalize();
    return lat;
  }

  int l = family == Family::so_odd ? (n - 1) / 2 : n / 2;
  int rank = l;
  std::vector<std::vector<int>> roots;
  std::vector<std::pair<std::string, IntMat>> vecs;

  // offsets of the two l-blocks inside the matrix
  int top = family == Family::so_odd ? 1 : 0;
  int bot = top + l;

  auto m_mat = [&](int i, int j) {
    IntMat m(n);
    m.at(top + i - 1, top + j - 1) = 1;
    m.at(bot + j - 1, bot + i - 1) = -1;
    return m;
  };

  // m(i,j), i != j: roots eps_i - eps_j
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j) {
      if (i == j) continue;
      roots.push_back(diff_vec(rank, i, j));
      vecs.emplace_back(sub2("m", i, j), m_mat(i, j));
    }

  if (family == Family::sp) {
    // n(j,i) for i <= j: eps_i + eps_j; q(i,j) for i <= j: -(eps_i + eps_j)
    for (int i = 1; i <= l; ++i)
      for (int j = i; j <= l; ++j) {
        IntMat nm(n);
        if (i == j) {
          nm.at(top + i - 1, bot + i - 1) = 1;
        } else {
          nm.at(top + j - 1, bot + i - 1) = 1;
          nm.at(top + i - 1, bot + j - 1) = 1;
        }
        roots.push_back(sum_vec(rank, i, j, +1));
        vecs.emplace_back(sub2("n", j, i), std::move(nm));
      }
    for (int i = 1; i <= l; ++i)
      for (int j = i; j <= l; ++j) {
        IntMat qm(n);
        if (i == j) {
          qm.at(bot + i - 1, top + i - 1) = 1;
        } else {
          qm.at(bot + i - 1, top + j - 1) = 1;
          qm.at(bot + j - 1, top + i - 1) = 1;
        }
        roots.push_back(sum_vec(rank, i, j, -1));
        vecs.emplace_back(sub2("q", i, j), std::move(qm));
      }
  } else {
    // so: n(j,i) for i < j spans L_{eps_i + eps_j}; q(i,j) for i < j
    for (int i = 1; i <= l; ++i)
      for (int j = i + 1; j <= l; ++j) {
        IntMat nm(n);  // n_{ji} with entries e_{ji} - e_{ij} in the top-right
        nm.at(top + j - 1, bot + i - 1) = 1;
        nm.at(top + i - 1, bot + j - 1) = -1;
        roots.push_back(sum_vec(rank, i, j, +1));
        vecs.emplace_back(sub2("n", j, i), std::move(nm));
      }
    for (int i = 1; i <= l; ++i)
      for (int j = i + 1; j <= l; ++j) {
        IntMat qm(n);
        qm.at(bot + i - 1, top + j - 1) = 1;
        qm.at(bot + j - 1, top + i - 1) = -1;
        roots.push_back(sum_vec(rank, i, j, -1));
        vecs.emplace_back(sub2("q", i, j), std::move(qm));
      }
  }

  if (family == Family::so_odd) {
    // c_i spans L_{eps_i}, b_j spans L_{-eps_j}
    for (int i = 1; i <= l; ++i) {
      IntMat cm(n);
      cm.at(top + i - 1, 0) = 1;
      cm.at(0, bot + i - 1) = -1;
      roots.push_back(unit_vec(rank, i, +1));
      vecs.emplace_back(sub1("c", i), std::move(cm));
    }
    for (int j = 1; j <= l; ++j) {
      IntMat bm(n);
      bm.at(0, top + j - 1) = 1;
      bm.at(bot + j - 1, 0) = -1;
      roots.push_back(unit_vec(rank, j, -1));
      vecs.emplace_back(sub1("b", j), std::move(bm));
    }
  }

  char tag = family == Family::sp ? 'C' : (family == Family::so_even ? 'D' : 'B');
  GradedLattice lat(family, n, std::move(ring),
                    RootSystem(tag, rank, std::move(roots)));
  for (int i = 1; i <= l; ++i) lat.push_h(sub1("h", i), m_mat(i, i));
  for (size_t r = 0; r < vecs.size(); ++r)
    lat.push_root(std::move(vecs[r].first), static_cast<int>(r),
                  std::move(vecs[r].second));
  lat.finalize();
  return lat;
}

void GradedLattice::finalize() {
  int dim = this->dim();
  int nn = n_ * n_;
  // pivot positions: matrix entries touched by exactly one basis vector
  std::vector<int> touch(static_cast<size_t>(nn), 0);
  for (const auto& b : basis_)
    for (int t = 0; t < nn; ++t)
      if (b.mat.a[static_cast<size_t>(t)] != 0) ++touch[static_cast<size_t>(t)];
  for (auto& b : basis_) {
    for (int t = 0; t < nn; ++t) {
      long long v = b.mat.a[static_cast<size_t>(t)];
      if (v != 0 && touch[static_cast<size_t>(t)] == 1) {
        if (v != 1 && v != -1)
          throw std::logic_error("pivot entry is not a unit");
        b.pivot_pos = t;
        b.pivot_sign = v;
        break;
      }
    }
    if (b.pivot_pos < 0)
      throw std::logic_error("no unique pivot entry for " + b.label);
  }

  table_.assign(static_cast<size_t>(dim * dim), {});
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      IntMat comm = basis_[static_cast<size_t>(i)].mat.commutator(
          basis_[static_cast<size_t>(j)].mat);
      std::vector<long long> coeffs = expand_in_basis(comm);
      auto& entry = table_[static_cast<size_t>(i * dim + j)];
      for (int k = 0; k < dim; ++k)
        if (coeffs[static_cast<size_t>(k)] != 0)
          entry.emplace_back(k, coeffs[static_cast<size_t>(k)]);
    }
}

std::vector<long long> GradedLattice::expand_in_basis(const IntMat& x) const {
  std::vector<long long> coeffs(basis_.size(), 0);
  for (size_t k = 0; k < basis_.size(); ++k) {
    const auto& b = basis_[k];
    coeffs[k] = b.pivot_sign * x.a[static_cast<size_t>(b.pivot_pos)];
  }
  IntMat recon(n_);
  for (size_t k = 0; k < basis_.size(); ++k) {
    if (coeffs[k] == 0) continue;
    for (int t = 0; t < n_ * n_; ++t)
      recon.a[static_cast<size_t>(t)] +=
          coeffs[k] * basis_[k].mat.a[static_cast<size_t>(t)];
  }
  if (!(recon == x))
    throw std::logic_error("matrix is not in the lattice span");
  return coeffs;
}

int GradedLattice::find_label(const std::string& label) const {
  for (size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].label == label) return static_cast<int>(i);
  return -1;
}

const std::vector<std::pair<int, long long>>& GradedLattice::bracket_table(
    int i, int j) const {
  return table_[static_cast<size_t>(i * dim() + j)];
}

// ---- elements ----------------------------------------------------------

LatticeElem GradedLattice::zero_elem(Ring ring) const {
  LatticeElem e;
  e.lat_ = this;
  e.ring_ = std::move(ring);
  e.c_.assign(basis_.size(), e.ring_->zero());
  return e;
}

LatticeElem GradedLattice::basis_elem(int i, Ring ring, int pi_scale) const {
  LatticeElem e = zero_elem(std::move(ring));
  e.set_coeff(i, e.ring()->pi_pow(pi_scale));
  return e;
}

LatticeElem GradedLattice::elem(Ring ring, const std::vector<RingElem>& coeffs) const {
  if (coeffs.size() != basis_.size())
    throw std::invalid_argument("coefficient count does not match basis size");
  LatticeElem e = zero_elem(std::move(ring));
  for (size_t i = 0; i < coeffs.size(); ++i) e.c_[i] = coeffs[i];
  return e;
}

LatticeElem GradedLattice::bracket(const LatticeElem& x, const LatticeElem& y) const {
  if (x.lattice() != this || y.lattice() != this)
    throw std::invalid_argument("elements of a different lattice");
  if (x.ring().get() != y.ring().get())
    throw std::invalid_argument("elements at different precision");
  LatticeElem r = zero_elem(x.ring());
  int dim = this->dim();
  for (int i = 0; i < dim; ++i) {
    const RingElem& xi = x.coeff(i);
    if (xi.is_zero()) continue;
    for (int j = 0; j < dim; ++j) {
      const RingElem& yj = y.coeff(j);
      if (yj.is_zero()) continue;
      const auto& terms = table_[static_cast<size_t>(i * dim + j)];
      if (terms.empty()) continue;
      RingElem prod = xi * yj;
      for (const auto& [k, c] : terms)
        r.c_[static_cast<size_t>(k)] += prod * r.ring()->from_int(c);
    }
  }
  return r;
}

LatticeElem GradedLattice::project(const LatticeElem& x,
                                   const std::vector<int>& gamma) const {
  if (static_cast<int>(gamma.size()) != rank_)
    throw std::invalid_argument("grade vector has wrong rank");
  LatticeElem r = zero_elem(x.ring());
  bool zero_grade = true;
  for (int g : gamma) zero_grade = zero_grade && g == 0;
  if (zero_grade) {
    for (int i = 0; i < rank_; ++i) r.c_[static_cast<size_t>(i)] = x.coeff(i);
    return r;
  }
  int ri = roots_.index_of(gamma);
  if (ri < 0) return r;
  for (int i = 0; i < dim(); ++i)
    if (root_index(i) == ri) r.c_[static_cast<size_t>(i)] = x.coeff(i);
  return r;
}

// ---- verification ----------------------------------------------------------

StructureReport GradedLattice::verify_structure() const {
  StructureReport report;
  int dim = this->dim();
  auto add = [&](int id, const std::string& name, bool pass,
                 const std::string& detail) {
    report.properties.push_back({id, name, pass, detail});
  };

  // (1) structure constants are integers: recompute every commutator in the
  // matrix realization and confirm it expands integrally over the basis
  {
    bool pass = true;
    std::string detail;
    for (int i = 0; i < dim && pass; ++i)
      for (int j = 0; j < dim && pass; ++j) {
        try {
          IntMat comm = basis_[static_cast<size_t>(i)].mat.commutator(
              basis_[static_cast<size_t>(j)].mat);
          std::vector<long long> coeffs = expand_in_basis(comm);
          for (int k = 0; k < dim; ++k) {
            long long expect = 0;
            for (const auto& [kk, c] : bracket_table(i, j))
              if (kk == k) expect = c;
            if (coeffs[static_cast<size_t>(k)] != expect) {
              pass = false;
              detail = "[" + label(i) + ", " + label(j) + "] table mismatch";
              break;
            }
          }
        } catch (const std::logic_error& err) {
          pass = false;
          detail = "[" + label(i) + ", " + label(j) + "]: " + err.what();
        }
      }
    add(1, "integer structure constants", pass, detail);
  }

  // (2) [h_i, h_j] = 0
  {
    bool pass = true;
    std::string detail;
    for (int i = 0; i < rank_ && pass; ++i)
      for (int j = 0; j < rank_ && pass; ++j)
        if (!bracket_table(i, j).empty()) {
          pass = false;
          detail = "[" + label(i) + ", " + label(j) + "] != 0";
        }
    add(2, "Cartan part is abelian", pass, detail);
  }

  // (3) [L_a, L_b] lies in L_{a+b}
  {
    bool pass = true;
    std::string detail;
    for (int i = rank_; i < dim && pass; ++i)
      for (int j = rank_; j < dim && pass; ++j) {
        std::vector<int> sum = grade(i);
        for (int t = 0; t < rank_; ++t)
          sum[static_cast<size_t>(t)] += grade(j)[static_cast<size_t>(t)];
        bool sum_zero = true;
        for (int v : sum) sum_zero = sum_zero && v == 0;
        int target = roots_.index_of(sum);
        for (const auto& [k, c] : bracket_table(i, j)) {
          (void)c;
          bool ok;
          if (sum_zero)
            ok = root_index(k) < 0;
          else if (target >= 0)
            ok = root_index(k) == target;
          else
            ok = false;
          if (!ok) {
            pass = false;
            detail = "[" + label(i) + ", " + label(j) + "] leaves L_{a+b}";
            break;
          }
        }
      }
    add(3, "brackets respect the grading", pass, detail);
  }

  // (4) [h, e_a] = a(h) e_a
  {
    bool pass = true;
    std::string detail;
    for (int i = 0; i < rank_ && pass; ++i)
      for (int j = rank_; j < dim && pass; ++j) {
        long long want = grade(j)[static_cast<size_t>(i)];
        const auto& terms = bracket_table(i, j);
        bool ok = want == 0 ? terms.empty()
                            : (terms.size() == 1 && terms[0].first == j &&
                               terms[0].second == want);
        if (!ok) {
          pass = false;
          detail = "[" + label(i) + ", " + label(j) + "] != a(h) e_a";
        }
      }
    add(4, "Cartan action is by the root value", pass, detail);
  }

  // (5) [e_a, e_{-a}] != 0
  {
    bool pass = true;
    std::string detail;
    for (int i = rank_; i < dim && pass; ++i) {
      int nr = roots_.negative_of(root_index(i));
      for (int j = rank_; j < dim; ++j)
        if (root_index(j) == nr && bracket_table(i, j).empty()) {
          pass = false;
          detail = "[" + label(i) + ", " + label(j) + "] = 0";
        }
    }
    add(5, "opposite root spaces pair nontrivially", pass, detail);
  }

  // (6) projection identity pi_g([x,y]) = [pi_{g-b}(x), y] for y in L_b,
  // checked for basis x, y = e_b, and g in {0} union Phi union {grade(x)+b}
  {
    bool pass = true;
    std::string detail;
    std::vector<std::vector<int>> gammas;
    gammas.emplace_back(static_cast<size_t>(rank_), 0);
    for (const auto& r : roots_.all()) gammas.push_back(r);
    for (int i = 0; i < dim && pass; ++i)
      for (int j = rank_; j < dim && pass; ++j) {
        const std::vector<int>& beta = grade(j);
        std::vector<std::vector<int>> cand = gammas;
        std::vector<int> sum = grade(i);
        for (int t = 0; t < rank_; ++t)
          sum[static_cast<size_t>(t)] += beta[static_cast<size_t>(t)];
        cand.push_back(sum);
        for (const auto& g : cand) {
          bool g_zero = std::all_of(g.begin(), g.end(), [](int v) { return v == 0; });
          // lhs: component of [x, y] at grade g
          std::vector<long long> lhs(static_cast<size_t>(dim), 0);
          for (const auto& [k, c] : bracket_table(i, j))
            if ((root_index(k) < 0 && g_zero) ||
                (root_index(k) >= 0 && grade(k) == g))
              lhs[static_cast<size_t>(k)] = c;
          // rhs: [pi_{g-b}(x), y]
          std::vector<int> gb = g;
          for (int t = 0; t < rank_; ++t)
            gb[static_cast<size_t>(t)] -= beta[static_cast<size_t>(t)];
          bool gb_zero = std::all_of(gb.begin(), gb.end(), [](int v) { return v == 0; });
          bool x_matches = (root_index(i) < 0 && gb_zero) ||
                           (root_index(i) >= 0 && grade(i) == gb);
          std::vector<long long> rhs(static_cast<size_t>(dim), 0);
          if (x_matches)
            for (const auto& [k, c] : bracket_table(i, j))
              rhs[static_cast<size_t>(k)] = c;
          if (lhs != rhs) {
            pass = false;
            detail = "x = " + label(i) + ", y = " + label(j);
            break;
          }
        }
      }
    add(6, "projection identity", pass, detail);
  }

  return report;
}

bool GradedLattice::check_jacobi() const {
  int dim = this->dim();
  auto bracket_coeffs = [&](const std::vector<long long>& x, int j) {
    std::vector<long long> r(static_cast<size_t>(dim), 0);
    for (int i = 0; i < dim; ++i) {
      if (x[static_cast<size_t>(i)] == 0) continue;
      for (const auto& [k, c] : bracket_table(i, j))
        r[static_cast<size_t>(k)] += x[static_cast<size_t>(i)] * c;
    }
    return r;
  };
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      std::vector<long long> ab(static_cast<size_t>(dim), 0);
      for (const auto& [k, c] : bracket_table(a, b)) ab[static_cast<size_t>(k)] = c;
      for (int c3 = 0; c3 < dim; ++c3) {
        std::vector<long long> bc(static_cast<size_t>(dim), 0);
        for (const auto& [k, c] : bracket_table(b, c3)) bc[static_cast<size_t>(k)] = c;
        std::vector<long long> ca(static_cast<size_t>(dim), 0);
        for (const auto& [k, c] : bracket_table(c3, a)) ca[static_cast<size_t>(k)] = c;
        // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
        std::vector<long long> t1 = bracket_coeffs(ab, c3);
        std::vector<long long> t2 = bracket_coeffs(bc, a);
        std::vector<long long> t3 = bracket_coeffs(ca, b);
        for (int k = 0; k < dim; ++k) {
          long long s = t1[static_cast<size_t>(k)] + t2[static_cast<size_t>(k)] +
                        t3[static_cast<size_t>(k)];
          if (s != 0) return false;
        }
      }
    }
  return true;
}

bool GradedLattice::is_powerful(int m, int theta) const {
  if (m < 0) throw std::invalid_argument("m must be >= 0");
  if (theta < 1) throw std::invalid_argument("theta must be >= 1");
  // [pi^m b_i, pi^m b_j] = pi^{2m} sum c b_k needs val >= theta*e + m on
  // every coefficient, i.e. m + e * v_p(c) >= theta * e
  int e = ring_->e();
  std::uint64_t p = ring_->p();
  for (const auto& entry : table_)
    for (const auto& [k, c] : entry) {
      (void)k;
      long long cc = c < 0 ? -c : c;
      int vp = 0;
      while (cc % static_cast<long long>(p) == 0) {
        cc /= static_cast<long long>(p);
        ++vp;
      }
      if (m + e * vp < theta * e) return false;
    }
  return true;
}

GradedLattice GradedLattice::with_structure_constant(int i, int j, int k,
                                                     long long c) const {
  GradedLattice copy = *this;
  auto& entry = copy.table_[static_cast<size_t>(i * dim() + j)];
  for (auto& [kk, cc] : entry)
    if (kk == k) {
      cc = c;
      return copy;
    }
  entry.emplace_back(k, c);
  return copy;
}

std::string GradedLattice::to_json() const {
  nlohmann::json j;
  j["family"] = family_name(family_);
  j["n"] = n_;
  j["rank"] = rank_;
  j["ring"] = ring_->describe();
  j["basis"] = nlohmann::json::array();
  for (const auto& b : basis_) j["basis"].push_back(b.label);
  j["roots"] = nlohmann::json::array();
  for (const auto& r : roots_.all()) j["roots"].push_back(r);
  auto sc = nlohmann::json::array();
  for (int i = 0; i < dim(); ++i)
    for (int jj = 0; jj < dim(); ++jj)
      for (const auto& [k, c] : bracket_table(i, jj))
        sc.push_back({i, jj, k, c});
  j["structure_constants"] = std::move(sc);
  return j.dump(2);
}

}  // namespace lielat
