#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lielat/ring.hpp"

namespace lielat {

/// Dense exact matrix over a RingElem carrier. Vectors are n x 1 matrices.
class Mat {
public:
  Mat() : ring_(nullptr), rows_(0), cols_(0) {}
  Mat(const RingSpec* ring, int rows, int cols);

  static Mat identity(const RingSpec* ring, int n);
  static Mat from_rows(const RingSpec* ring,
                       const std::vector<std::vector<long long>>& rows);
  static Mat column(const RingSpec* ring, const std::vector<RingElem>& entries);
  // Assembles a block matrix; blocks in one row must agree in height,
  // blocks in one column in width. Disassembly round-trips via block().
  static Mat from_blocks(const std::vector<std::vector<Mat>>& blocks);

  const RingSpec* ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  RingElem& at(int i, int j) { return a_[static_cast<size_t>(i * cols_ + j)]; }
  const RingElem& at(int i, int j) const {
    return a_[static_cast<size_t>(i * cols_ + j)];
  }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat operator*(const RingElem& s) const;
  Mat operator-() const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const;
  Mat block(int row0, int col0, int nrows, int ncols) const;
  bool is_zero() const;

  RingElem trace() const;

  std::string str() const;  // semicolon-separated rows, comma-separated entries

private:
  const RingSpec* ring_;
  int rows_, cols_;
  std::vector<RingElem> a_;
};

Mat parse_mat(const RingSpec* ring, const std::string& text);

// Cofactor-expansion determinant (no division; rings have zero divisors).
// Sizes are capped at 8, which covers everything in scope.
RingElem det(const Mat& m);

// Inverse via adjugate; requires det to be a unit.
Mat inverse(const Mat& m);

enum class FormKind { orth_even, orth_odd, sympl, so_split_even, so_split_odd };
enum class GroupKind { O, SO, SL, Sp };

// The Gram matrix of the split form: S = [0 I; I 0] (even), its odd
// extension by a trailing 1, the symplectic s = [0 I; -I 0], or the
// odd split form with the 1 in the leading corner.
Mat gram_matrix(FormKind kind, int n, const RingSpec* ring);

// Group membership: O means M^t S M = S, SO adds det = 1, SL means
// det = 1, Sp means M^t s M = s. When no form is given, O/SO use the
// split form matching the parity of n and Sp uses the symplectic form.
bool is_member(const Mat& m, GroupKind group,
               std::optional<FormKind> form = std::nullopt);

// Lie-algebra side of the same forms: s x + x^t s = 0.
bool in_form_algebra(const Mat& x, FormKind kind);

/// Block description of a candidate orthogonal matrix: [A B; C D] for
/// even size, [A B u; C D v; x y w] for odd size.
struct BlockParts {
  Mat A, B, C, D;
  std::optional<Mat> u, v;  // l x 1
  std::optional<Mat> x, y;  // 1 x l
  std::optional<RingElem> omega;

  static BlockParts even(Mat A, Mat B, Mat C, Mat D);
  static BlockParts odd(Mat A, Mat B, Mat C, Mat D, Mat u, Mat v, Mat x, Mat y,
                        RingElem omega);
  bool is_odd() const { return omega.has_value(); }
  Mat assemble() const;
};

struct BlockCheck {
  bool ok;
  std::vector<std::string> failed;  // names of violated equations
};

// Evaluates the block equation system for membership in O_n and reports
// which equations fail. Agrees with is_member on the assembled matrix.
BlockCheck block_membership(const BlockParts& parts);

// Returns an invertible M with M e_1 = x. Requires some entry of x to be
// a unit (over a local ring this is equivalent to (x) = R); picks the
// lowest-index unit and swaps it into the pivot position.
Mat complete_to_invertible(const Mat& x);

}  // namespace lielat
