#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lielat/common.hpp"
#include "lielat/lattice.hpp"

namespace lielat {

/**
 * A diagonal-conjugation virtual endomorphism x -> a x a^{-1}, encoded by
 * its pi-exponent weight on each basis vector: conjugation scales e_alpha
 * by pi^{w(alpha)} and fixes H. All bookkeeping is on exponents; nothing
 * here ever divides by pi.
 */
struct WeightEndo {
  const GradedLattice* lattice;
  int k;
  std::vector<int> a_exponents;    // pi-exponent of each diagonal entry of a
  std::vector<int> weights;        // per basis index; 0 on H
  std::vector<int> psi;            // basis indices of roots with w >= 0
  std::vector<int> complement;     // basis indices of roots with w < 0
};

// Weights of the family's diagonal a (last entry pi^k for sl; entries
// pi^{+-k} at positions l and 2l otherwise), computed by conjugating each
// basis matrix and checked against the family's closed-form weight list.
WeightEndo diag_weights(const GradedLattice& lat, int k);

/// M = L n phi^{-1}(L), described by one pi-exponent per basis vector.
struct DomainLattice {
  std::vector<int> exponents;  // max(0, -w); 0 on H and Psi
  std::uint64_t exponent_sum() const {
    std::uint64_t s = 0;
    for (int c : exponents) s += static_cast<std::uint64_t>(c);
    return s;
  }
};

DomainLattice domain(const WeightEndo& endo);

// [L : M] = q^{sum of domain exponents}.
BigInt endo_index(const WeightEndo& endo);

// Independent computation of the same index: the exact integer transition
// matrix between Z_p-bases of M and L (block per basis vector, each block
// a power of the multiplication-by-pi matrix), reduced to Smith normal
// form; the index is the product of the p-parts of the divisors.
BigInt elementary_divisor_index(const WeightEndo& endo);

// Smith normal form divisors of an integer matrix (exact, cpp_int).
std::vector<BigInt> smith_normal_form(std::vector<std::vector<BigInt>> m);

/// H + span{e_alpha : w(alpha) >= 0}, the intersection of all iterated
/// domains. Construction verifies that the explicitly intersected D_j has
/// exponent j*|w| on every negative-weight label for j = 1..3.
struct DInfinity {
  std::vector<int> kept;        // basis indices
  std::vector<bool> kept_mask;  // per basis index
};

DInfinity d_infinity(const WeightEndo& endo);

// True iff the root vectors (rows, as functionals on H via the dual
// basis) have full rank over the fraction field.
bool kernel_intersection_trivial(const GradedLattice& lat,
                                 const std::vector<std::vector<int>>& roots);

/// Replayable escape certificate: bracketing x with the listed scaled
/// basis vectors produces an element with a detectable coefficient
/// outside D_infinity.
struct EscapeWitness {
  std::vector<std::pair<int, int>> brackets;  // (basis index, scale exponent)
  int escape_basis;
  int escape_valuation;

  std::string to_json(const GradedLattice& lat) const;
};

// Constructive escape from D_infinity for nonzero x in aL with a = pi^{a_scale}:
// at most two bracket multiplications with elements of aL, chosen casewise
// (already outside D; Cartan component separated by some root; or paired
// down to the Cartan first). The witness is replayed before returning.
// Throws std::domain_error when x is indistinguishable from 0 at the
// working precision or the kernel-intersection hypothesis fails.
EscapeWitness escape_witness(const LatticeElem& x, const WeightEndo& endo,
                             int a_scale);

struct SweepResult {
  std::uint64_t tested = 0;
  bool all_ok = true;
  std::string failure;
};

// Runs escape_witness over every nonzero coset representative of
// (pi^m L)/(pi^{m+1} L), at working precision m + 2k + 2.
SweepResult exhaustive_escape_sweep(const GradedLattice& lat,
                                    const WeightEndo& endo, int m);

}  // namespace lielat
