#include "lielat/linalg.hpp"

#include <bit>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace lielat {

Mat::Mat(const RingSpec* ring, int rows, int cols)
    : ring_(ring), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix size");
  a_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), ring->zero());
}

Mat Mat::identity(const RingSpec* ring, int n) {
  Mat m(ring, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = ring->one();
  return m;
}

Mat Mat::from_rows(const RingSpec* ring,
                   const std::vector<std::vector<long long>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Mat m(ring, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != c)
      throw std::invalid_argument("ragged rows");
    for (int j = 0; j < c; ++j)
      m.at(i, j) = ring->from_int(rows[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  }
  return m;
}

Mat Mat::column(const RingSpec* ring, const std::vector<RingElem>& entries) {
  Mat m(ring, static_cast<int>(entries.size()), 1);
  for (size_t i = 0; i < entries.size(); ++i) m.at(static_cast<int>(i), 0) = entries[i];
  return m;
}

Mat Mat::from_blocks(const std::vector<std::vector<Mat>>& blocks) {
  if (blocks.empty() || blocks[0].empty())
    throw std::invalid_argument("empty block matrix");
  const RingSpec* ring = blocks[0][0].ring();
  int total_rows = 0, total_cols = 0;
  for (const auto& row : blocks) total_rows += row[0].rows();
  for (const auto& b : blocks[0]) total_cols += b.cols();
  Mat m(ring, total_rows, total_cols);
  int r0 = 0;
  for (const auto& row : blocks) {
    int c0 = 0;
    int h = row[0].rows();
    for (const auto& b : row) {
      if (b.rows() != h) throw std::invalid_argument("block height mismatch");
      for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m.at(r0 + i, c0 + j) = b.at(i, j);
      c0 += b.cols();
    }
    if (c0 != total_cols) throw std::invalid_argument("block width mismatch");
    r0 += h;
  }
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || ring_ != o.ring_)
    throw std::invalid_argument("matrix shape or ring mismatch");
  Mat m(ring_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || ring_ != o.ring_)
    throw std::invalid_argument("matrix shape or ring mismatch");
  Mat m(ring_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
  return m;
}

Mat Mat::operator-() const {
  Mat m(ring_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = -a_[i];
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_ || ring_ != o.ring_)
    throw std::invalid_argument("matrix shape or ring mismatch");
  Mat m(ring_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const RingElem& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j)
        m.at(i, j) += aik * o.at(k, j);
    }
  return m;
}

Mat Mat::operator*(const RingElem& s) const {
  Mat m(ring_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
  return m;
}

bool Mat::operator==(const Mat& o) const {
  return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Mat Mat::transpose() const {
  Mat m(ring_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Mat Mat::block(int row0, int col0, int nrows, int ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_)
    throw std::invalid_argument("block out of range");
  Mat m(ring_, nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) m.at(i, j) = at(row0 + i, col0 + j);
  return m;
}

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

RingElem Mat::trace() const {
  RingElem t = ring_->zero();
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
  return t;
}

std::string Mat::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    if (i) os << ";";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ",";
      os << at(i, j).str();
    }
  }
  return os.str();
}

Mat parse_mat(const RingSpec* ring, const std::string& text) {
  std::vector<std::vector<RingElem>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<RingElem> entries;
    std::stringstream rs(row);
    std::string cell;
    while (std::getline(rs, cell, ',')) entries.push_back(ring->parse_elem(cell));
    rows.push_back(std::move(entries));
  }
  if (rows.empty()) throw std::invalid_argument("empty matrix literal");
  Mat m(ring, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw std::invalid_argument("ragged matrix literal");
    for (size_t j = 0; j < rows[i].size(); ++j)
      m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return m;
}

RingElem det(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  int n = m.rows();
  if (n > 8) throw std::invalid_argument("det supported only up to size 8");
  const RingSpec* ring = m.ring();
  if (n == 0) return ring->one();
  // dp[S] = det of the top |S| rows restricted to column set S
  std::vector<RingElem> dp(static_cast<size_t>(1) << n, ring->zero());
  dp[0] = ring->one();
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    int k = std::popcount(s) - 1;
    RingElem acc = ring->zero();
    bool positive = (k % 2 == 0);  // cofactor sign (-1)^{row + position}
    for (int j = 0; j < n; ++j) {
      if (!(s & (1u << j))) continue;
      RingElem term = m.at(k, j) * dp[s ^ (1u << j)];
      acc = positive ? acc + term : acc - term;
      positive = !positive;
    }
    dp[s] = acc;
  }
  return dp[(static_cast<size_t>(1) << n) - 1];
}

Mat inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  int n = m.rows();
  const RingSpec* ring = m.ring();
  RingElem dinv = det(m).inverse();  // throws on non-unit
  Mat adj(ring, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat minor(ring, n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor.at(rr, cc) = m.at(r, c);
          ++cc;
        }
        ++rr;
      }
      RingElem cof = det(minor);
      if ((i + j) % 2) cof = -cof;
      adj.at(j, i) = cof;
    }
  return adj * dinv;
}

Mat gram_matrix(FormKind kind, int n, const RingSpec* ring) {
  Mat s(ring, n, n);
  RingElem one = ring->one();
  switch (kind) {
    case FormKind::orth_even:
    case FormKind::so_split_even: {
      if (n % 2 != 0) throw std::invalid_argument("even form needs even size");
      int l = n / 2;
      for (int i = 0; i < l; ++i) {
        s.at(i, l + i) = one;
        s.at(l + i, i) = one;
      }
      break;
    }
    case FormKind::orth_odd: {
      if (n % 2 != 1) throw std::invalid_argument("odd form needs odd size");
      int l = n / 2;
      for (int i = 0; i < l; ++i) {
        s.at(i, l + i) = one;
        s.at(l + i, i) = one;
      }
      s.at(n - 1, n - 1) = one;
      break;
    }
    case FormKind::so_split_odd: {
      if (n % 2 != 1) throw std::invalid_argument("odd form needs odd size");
      int l = n / 2;
      s.at(0, 0) = one;
      for (int i = 0; i < l; ++i) {
        s.at(1 + i, 1 + l + i) = one;
        s.at(1 + l + i, 1 + i) = one;
      }
      break;
    }
    case FormKind::sympl: {
      if (n % 2 != 0) throw std::invalid_argument("symplectic form needs even size");
      int l = n / 2;
      for (int i = 0; i < l; ++i) {
        s.at(i, l + i) = one;
        s.at(l + i, i) = -one;
      }
      break;
    }
  }
  return s;
}

bool is_member(const Mat& m, GroupKind group, std::optional<FormKind> form) {
  if (m.rows() != m.cols()) throw std::invalid_argument("membership needs a square matrix");
  int n = m.rows();
  const RingSpec* ring = m.ring();
  switch (group) {
    case GroupKind::SL:
      return det(m) == ring->one();
    case GroupKind::Sp: {
      Mat s = gram_matrix(form.value_or(FormKind::sympl), n, ring);
      return m.transpose() * s * m == s;
    }
    case GroupKind::O:
    case GroupKind::SO: {
      FormKind kind =
          form.value_or(n % 2 == 0 ? FormKind::orth_even : FormKind::orth_odd);
      Mat s = gram_matrix(kind, n, ring);
      if (m.transpose() * s * m != s) return false;
      return group == GroupKind::O || det(m) == ring->one();
    }
  }
  return false;
}

bool in_form_algebra(const Mat& x, FormKind kind) {
  Mat s = gram_matrix(kind, x.rows(), x.ring());
  return (s * x + x.transpose() * s).is_zero();
}

BlockParts BlockParts::even(Mat A, Mat B, Mat C, Mat D) {
  BlockParts p;
  p.A = std::move(A);
  p.B = std::move(B);
  p.C = std::move(C);
  p.D = std::move(D);
  int l = p.A.rows();
  for (const Mat* b : {&p.A, &p.B, &p.C, &p.D})
    if (b->rows() != l || b->cols() != l)
      throw std::invalid_argument("blocks must be square of equal size");
  return p;
}

BlockParts BlockParts::odd(Mat A, Mat B, Mat C, Mat D, Mat u, Mat v, Mat x,
                           Mat y, RingElem omega) {
  BlockParts p = even(std::move(A), std::move(B), std::move(C), std::move(D));
  int l = p.A.rows();
  if (u.rows() != l || u.cols() != 1 || v.rows() != l || v.cols() != 1)
    throw std::invalid_argument("u, v must be l x 1");
  if (x.rows() != 1 || x.cols() != l || y.rows() != 1 || y.cols() != l)
    throw std::invalid_argument("x, y must be 1 x l");
  p.u = std::move(u);
  p.v = std::move(v);
  p.x = std::move(x);
  p.y = std::move(y);
  p.omega = std::move(omega);
  return p;
}

Mat BlockParts::assemble() const {
  if (!is_odd()) return Mat::from_blocks({{A, B}, {C, D}});
  const RingSpec* ring = A.ring();
  Mat w(ring, 1, 1);
  w.at(0, 0) = *omega;
  return Mat::from_blocks({{A, B, *u}, {C, D, *v}, {*x, *y, w}});
}

BlockCheck block_membership(const BlockParts& p) {
  const RingSpec* ring = p.A.ring();
  int l = p.A.rows();
  BlockCheck result{true, {}};
  auto require = [&](bool ok, const std::string& name) {
    if (!ok) {
      result.ok = false;
      result.failed.push_back(name);
    }
  };
  Mat At = p.A.transpose(), Bt = p.B.transpose(), Ct = p.C.transpose(),
      Dt = p.D.transpose();
  Mat id = Mat::identity(ring, l);
  if (!p.is_odd()) {
    require((At * p.C + Ct * p.A).is_zero(), "A^t C + C^t A = 0");
    require(At * p.D + Ct * p.B == id, "A^t D + C^t B = Id");
    require((Bt * p.D + Dt * p.B).is_zero(), "B^t D + D^t B = 0");
    return result;
  }
  const Mat &u = *p.u, &v = *p.v, &x = *p.x, &y = *p.y;
  Mat xt = x.transpose(), yt = y.transpose();
  const RingElem& w = *p.omega;
  require((At * p.C + Ct * p.A + xt * x).is_zero(), "A^t C + C^t A + x^t x = 0");
  require(At * p.D + Ct * p.B + xt * y == id, "A^t D + C^t B + x^t y = Id");
  require((Bt * p.D + Dt * p.B + yt * y).is_zero(), "B^t D + D^t B + y^t y = 0");
  require((At * v + Ct * u + xt * w).is_zero(), "A^t v + C^t u + w x^t = 0");
  require((Bt * v + Dt * u + yt * w).is_zero(), "B^t v + D^t u + w y^t = 0");
  Mat scalar = u.transpose() * v + v.transpose() * u;
  require(scalar.at(0, 0) + w * w == ring->one(), "u^t v + v^t u + w^2 = 1");
  return result;
}

Mat complete_to_invertible(const Mat& x) {
  if (x.cols() != 1) throw std::invalid_argument("expected a column vector");
  int n = x.rows();
  const RingSpec* ring = x.ring();
  int pivot = -1;
  for (int i = 0; i < n; ++i)
    if (x.at(i, 0).is_unit()) {
      pivot = i;
      break;
    }
  if (pivot < 0)
    throw std::domain_error("no unit entry: vector does not generate R^n");
  // identity with first column x; when the unit is not on top, the column
  // that lost its pivot is redirected to e_1
  Mat m = Mat::identity(ring, n);
  for (int i = 0; i < n; ++i) m.at(i, 0) = x.at(i, 0);
  if (pivot != 0) {
    m.at(pivot, pivot) = ring->zero();
    m.at(0, pivot) = ring->one();
  }
  assert(det(m).is_unit());
  return m;
}

}  // namespace lielat
