#pragma once

#include <string>
#include <vector>

#include "lielat/common.hpp"
#include "lielat/lattice.hpp"
#include "lielat/ring.hpp"

namespace lielat {

/// Arithmetic of the base field: degree d = e f, residue size q = p^f.
struct FieldParams {
  std::uint64_t p;
  int e;
  int f;
  int d;
  std::uint64_t q;

  static FieldParams make(std::uint64_t p, int e, int f);
  static FieldParams from_ring(const RingSpec& ring);
  int theta() const { return p >= 3 ? 1 : 2; }
};

enum class IndexLevel { full_group, congruence_group, lattice };

std::string level_name(IndexLevel level);
IndexLevel parse_level(const std::string& name);

/// One self-similarity index query: which family, at which rank, for the
/// full group, a principal congruence subgroup, or the Lie lattice.
struct IndexQuery {
  Family family;
  int l;
  int k = 1;
  int m = 1;
  IndexLevel level = IndexLevel::full_group;

  int n() const;
};

struct Violation {
  std::string constraint;
  BigInt lhs, rhs;
  // short rendering like "8 > 3"
  std::string render() const;
};

class PreconditionError : public std::domain_error {
public:
  explicit PreconditionError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

private:
  std::vector<Violation> violations_;
};

// Every violated hypothesis with both sides evaluated. Group-level
// queries carry the dimension bound and m >= e; lattice-level queries
// have no dimension bound and only need m >= 0.
std::vector<Violation> check_preconditions(const IndexQuery& query,
                                           const FieldParams& params);

// Self-similarity index: the full-group value is the closed product
// q^{F(n)k + dim*m} prod(1 - q^{-j}); congruence subgroups and lattices
// get q^{F(n)k}. Exact integer, evaluated in factored form. Throws
// PreconditionError when check_preconditions is nonempty.
BigInt ss_index(const IndexQuery& query, const FieldParams& params);

// Upper bound on the minimal self-similarity index: the k = 1 instance
// (with m = e for the full group).
BigInt min_index_bound(const IndexQuery& query, const FieldParams& params);

// Analytic dimension over Q_p: (n^2-1)d, (n^2+n)d/2, (n^2-n)d/2.
int dims(Family family, int n, int d);

}  // namespace lielat
