#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lielat/linalg.hpp"
#include "lielat/ring.hpp"

namespace lielat {

enum class Family { sl, sp, so_even, so_odd };

std::string family_name(Family f);
Family parse_family(const std::string& name);

// n - 1 for sl, n for sp, n - 2 for so: the factor F(n) in the
// self-similarity index q^{F(n)k}.
int index_exponent_factor(Family f, int n);

/// Small dense integer matrix; the exact realization of basis vectors.
struct IntMat {
  int n = 0;
  std::vector<long long> a;

  explicit IntMat(int size = 0) : n(size), a(static_cast<size_t>(size * size), 0) {}
  long long& at(int i, int j) { return a[static_cast<size_t>(i * n + j)]; }
  long long at(int i, int j) const { return a[static_cast<size_t>(i * n + j)]; }

  IntMat commutator(const IntMat& o) const;
  bool operator==(const IntMat& o) const { return n == o.n && a == o.a; }

  Mat over(const RingSpec* ring) const;
};

/// Root system in epsilon-coordinates on the dual of the Cartan part.
class RootSystem {
public:
  RootSystem(char tag, int rank, std::vector<std::vector<int>> roots);

  char tag() const { return tag_; }
  int rank() const { return rank_; }
  int count() const { return static_cast<int>(roots_.size()); }
  const std::vector<int>& root(int i) const { return roots_[static_cast<size_t>(i)]; }
  const std::vector<std::vector<int>>& all() const { return roots_; }

  // index of a vector in the root list, or -1
  int index_of(const std::vector<int>& v) const;
  int negative_of(int i) const;  // index of -root(i)

private:
  char tag_;
  int rank_;
  std::vector<std::vector<int>> roots_;
};

class GradedLattice;

/// Element of a graded lattice: a coefficient vector over the basis, with
/// entries in a quotient ring at the caller's working precision.
class LatticeElem {
public:
  const GradedLattice* lattice() const { return lat_; }
  const Ring& ring() const { return ring_; }

  const RingElem& coeff(int i) const { return c_[static_cast<size_t>(i)]; }
  void set_coeff(int i, const RingElem& v) { c_[static_cast<size_t>(i)] = v; }

  bool is_zero() const;
  // minimal coefficient valuation (ring precision when zero)
  int valuation() const;

  LatticeElem operator+(const LatticeElem& o) const;
  LatticeElem operator-(const LatticeElem& o) const;
  LatticeElem scaled(const RingElem& s) const;
  bool operator==(const LatticeElem& o) const;

private:
  friend class GradedLattice;
  const GradedLattice* lat_ = nullptr;
  Ring ring_;
  std::vector<RingElem> c_;
};

struct PropertyResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;  // counterexample description on failure
};

struct StructureReport {
  std::vector<PropertyResult> properties;
  bool all_pass() const {
    for (const auto& p : properties)
      if (!p.pass) return false;
    return true;
  }
};

/**
 * A root-graded Lie lattice L = H + sum of L_alpha with the basis
 * (h_1..h_c; e_alpha) realized by explicit trace-zero / form-compatible
 * matrices, one family per classical type:
 *
 *   sl       n >= 2          traceless matrices, root system A_{n-1}
 *   sp       n = 2l          symplectic matrices, C_l
 *   so_even  n = 2l >= 4     split orthogonal, D_l
 *   so_odd   n = 2l + 1      split orthogonal (indices from 0), B_l
 *
 * Brackets are computed in the matrix realization once at build time and
 * re-expanded over the basis; the resulting integer structure-constant
 * table drives all element brackets. Instances are immutable after build
 * and safe to share across threads.
 */
class GradedLattice {
public:
  static GradedLattice build(Family family, int n, Ring ring);

  Family family() const { return family_; }
  int n() const { return n_; }
  int l() const { return l_; }
  int rank() const { return rank_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const Ring& ring() const { return ring_; }
  const RootSystem& roots() const { return roots_; }

  const std::string& label(int i) const { return basis_[static_cast<size_t>(i)].label; }
  int find_label(const std::string& label) const;
  // -1 for Cartan basis vectors, else the root index
  int root_index(int i) const { return basis_[static_cast<size_t>(i)].root; }
  // grade of basis vector i: its root, or the zero vector on H
  const std::vector<int>& grade(int i) const { return basis_[static_cast<size_t>(i)].grade; }
  const IntMat& realization(int i) const { return basis_[static_cast<size_t>(i)].mat; }

  // [basis_i, basis_j] as a sparse list of (basis index, integer coefficient)
  const std::vector<std::pair<int, long long>>& bracket_table(int i, int j) const;

  LatticeElem zero_elem(Ring ring) const;
  // coefficient * basis_i, coefficient given as pi^scale * unit_lift
  LatticeElem basis_elem(int i, Ring ring, int pi_scale = 0) const;
  LatticeElem elem(Ring ring, const std::vector<RingElem>& coeffs) const;

  LatticeElem bracket(const LatticeElem& x, const LatticeElem& y) const;
  LatticeElem project(const LatticeElem& x, const std::vector<int>& gamma) const;

  // Exhaustively checks the six grading axioms over the basis (axiom 6 on
  // a generating set of pairs); failures carry a counterexample.
  StructureReport verify_structure() const;

  // Jacobi identity on all basis triples, over the integers.
  bool check_jacobi() const;

  // True iff [pi^m L, pi^m L] is contained in p^theta (pi^m L), decided
  // coefficientwise from exact valuations. Always true for m >= theta*e.
  bool is_powerful(int m, int theta) const;

  // Copy with one structure constant replaced (fault injection hook).
  GradedLattice with_structure_constant(int i, int j, int k, long long c) const;

  std::string to_json() const;

private:
  GradedLattice(Family family, int n, Ring ring, RootSystem roots);

  struct BasisVec {
    std::string label;
    int root;  // -1 on H
    std::vector<int> grade;
    IntMat mat;
    int pivot_pos = -1;  // flat index where only this vector is nonzero
    long long pivot_sign = 1;
  };

  void push_h(std::string label, IntMat mat);
  void push_root(std::string label, int root_index, IntMat mat);
  void finalize();  // pivots + structure constants
  std::vector<long long> expand_in_basis(const IntMat& x) const;

  Family family_;
  int n_, l_, rank_;
  Ring ring_;
  RootSystem roots_;
  std::vector<BasisVec> basis_;
  // flattened dim x dim table of sparse brackets
  std::vector<std::vector<std::pair<int, long long>>> table_;
};

}  // namespace lielat
