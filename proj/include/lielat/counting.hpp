#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lielat/common.hpp"
#include "lielat/linalg.hpp"

namespace lielat {

enum class CountMethod { formula, orbit_recursion, brute_force };

std::string method_name(CountMethod m);
std::string group_name(GroupKind g);
GroupKind parse_group(const std::string& name);

struct OrderResult {
  GroupKind group;
  int n;
  std::uint64_t q;
  int m;
  BigInt value;
  CountMethod method;
};

// Exact order of the group over R/P^m in factored integer form
// q^{E} prod (q^{j} - 1); never touches rationals. O = 2 * SO throughout.
OrderResult formula_order(GroupKind group, int n, std::uint64_t q, int m);

// |C_n(R/P^m)|: unimodular isotropic vectors for the split form.
BigInt formula_Cn(int n, std::uint64_t q, int m);

// c_n over the residue field by the two-step recursion
// c_n = c_{n-2} q + q^{n-2}(q - 1), c_1 = 1, c_2 = 2q - 1.
BigInt recursion_cn(int n, std::uint64_t q);

// Column-by-column depth-first enumeration of the full group, pruned by
// the partial Gram constraints (SL has none and enumerates everything).
// The callback sees each member once. Throws BudgetExceeded.
void brute_enumerate(GroupKind group, int n, const Ring& ring,
                     const std::function<void(const Mat&)>& fn,
                     std::uint64_t budget = kDefaultBudget);

OrderResult brute_count(GroupKind group, int n, const Ring& ring,
                        std::uint64_t budget = kDefaultBudget);

// Isotropic unimodular vectors by direct enumeration.
BigInt brute_count_Cn(int n, const Ring& ring,
                      std::uint64_t budget = kDefaultBudget);

enum class CnSource { formula, brute };

// |O_n| = |C_n| * |O_{n-2}| * (q^m)^{n-2} with |O_1| = 2, |O_0| = 1;
// SO is half of O. Only O and SO are supported here.
OrderResult orbit_count(GroupKind group, int n, const Ring& ring,
                        CnSource cn_source = CnSource::formula,
                        std::uint64_t budget = kDefaultBudget);

/// Certificate that x is in the orbit of e_1: unimodular, isotropic, and
/// where its pivot unit sits (after the S-flip when it sits in the lower
/// half).
struct IsotropicVector {
  Mat x;
  int unit_index;  // lowest unit among the first 2l entries
  bool flipped;    // completion goes through Sx
};

IsotropicVector certify_isotropic(const Mat& x);

// M in O_n with M e_1 = x, assembled from an invertible completion U, the
// correction y = U^t (lower half), and the unitriangular factor with
// W e_1 = y; postconditions are checked before returning.
Mat complete_to_orthogonal(const Mat& x);

/// Free parameters of a stabilizer element of e_1: x, y over R^{l-1}, nu
/// (odd sizes only), and an inner O_{n-2} matrix.
struct StabilizerParams {
  std::vector<RingElem> x, y;
  std::optional<RingElem> nu;
  Mat inner;
};

// The unique element of T_{e_1} with the given free parameters; the
// parameterization is injective and onto.
Mat stabilizer_element(int n, const Ring& ring, const StabilizerParams& params);

}  // namespace lielat
