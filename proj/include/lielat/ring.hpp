#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "lielat/common.hpp"

namespace lielat {

class RingSpec;
using Ring = std::shared_ptr<const RingSpec>;

// Coordinates per element; enough for every extension degree used here.
inline constexpr int kMaxDeg = 8;

/**
 * An element of a finite quotient R/P^m, stored as a coordinate vector
 * over a fixed integral basis with per-coordinate moduli. Canonical form
 * is maintained by every operation, so equality is coordinate equality.
 *
 * Elements are immutable values and cheap to copy; they keep a non-owning
 * pointer to their RingSpec, which must outlive them.
 */
class RingElem {
public:
  RingElem() : ring_(nullptr), c_{} {}

  const RingSpec& ring() const { return *ring_; }
  const RingSpec* ring_ptr() const { return ring_; }

  std::uint64_t coord(int i) const { return c_[static_cast<size_t>(i)]; }

  bool is_zero() const;
  bool is_unit() const { return valuation() == 0; }

  // pi-adic valuation truncated at the ring precision m; val(0) = m.
  int valuation() const;

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator*(const RingElem& o) const;
  RingElem operator-() const;
  RingElem& operator+=(const RingElem& o) { return *this = *this + o; }
  RingElem& operator-=(const RingElem& o) { return *this = *this - o; }
  RingElem& operator*=(const RingElem& o) { return *this = *this * o; }

  bool operator==(const RingElem& o) const {
    return ring_ == o.ring_ && c_ == o.c_;
  }
  bool operator!=(const RingElem& o) const { return !(*this == o); }

  // Multiplicative inverse; throws std::domain_error on non-units.
  RingElem inverse() const;

  RingElem pow(std::uint64_t n) const;

  std::string str() const;

  // Total order on canonical coordinates, for sorting/dedup in tests.
  bool operator<(const RingElem& o) const { return c_ < o.c_; }

private:
  friend class RingSpec;
  const RingSpec* ring_;
  std::array<std::uint64_t, kMaxDeg> c_;
};

/**
 * A finite quotient R/P^m of the ring of integers of a p-adic field,
 * with exact canonical-form arithmetic. Three families are supported:
 *
 *   e = f = 1      Z/p^m
 *   f > 1, e = 1   Galois ring (Z/p^m)[x]/(g), g irreducible mod p
 *   e > 1, f = 1   Z_p[pi]/(E), E Eisenstein, coordinates over {pi^i}
 *
 * Mixed e, f > 1 is rejected. The residue field has q = p^f elements and
 * the quotient has q^m elements. pi is not a zero divisor up to the
 * precision: val(pi*x) = min(val(x) + 1, m) for all x.
 *
 * Specs are immutable after construction and shared by reference; all
 * element operations are pure, so values are safe to use concurrently.
 */
class RingSpec {
public:
  // defining_data: for f > 1 a monic degree-f polynomial (constant term
  // first) irreducible mod p; for e > 1 a monic degree-e Eisenstein
  // polynomial. Ignored when e = f = 1.
  static Ring make(std::uint64_t p, int e, int f, int m,
                   std::vector<long long> defining_data = {});

  // "p^m", "GR(p,m,f):c0,c1,...", "Eis(p,m):c0,c1,..." (constant first).
  static Ring parse(const std::string& text);

  std::uint64_t p() const { return p_; }
  int e() const { return e_; }
  int f() const { return f_; }
  int m() const { return m_; }
  std::uint64_t q() const { return q_; }  // residue field size p^f

  // Total number of elements, q^m.
  std::uint64_t size() const { return size_; }
  std::uint64_t unit_count() const { return size_ - size_ / q_; }

  int deg() const { return deg_; }
  std::uint64_t coord_modulus(int i) const { return mod_[static_cast<size_t>(i)]; }

  int theta() const { return p_ >= 3 ? 1 : 2; }
  // floor(e/(p-1)) + 1; exposed as a derived constant, nothing here
  // consumes it.
  int epsilon() const { return static_cast<int>(e_ / (p_ - 1)) + 1; }

  const std::vector<long long>& defining_data() const { return defining_; }

  // Same field data at a different precision.
  Ring with_precision(int new_m) const;

  RingElem zero() const;
  RingElem one() const;
  RingElem uniformizer() const;
  RingElem from_int(long long v) const;
  RingElem from_coords(const std::vector<long long>& coords) const;
  // pi^k as an element (zero when k >= m).
  RingElem pi_pow(int k) const;

  // All q^m elements, each once, in a fixed deterministic order.
  std::vector<RingElem> elements(std::uint64_t budget = kDefaultBudget) const;
  void for_each_element(const std::function<void(const RingElem&)>& fn,
                        std::uint64_t budget = kDefaultBudget) const;

  // Position of an element in the enumeration order, and its inverse.
  std::uint64_t element_index(const RingElem& a) const;
  RingElem element_at(std::uint64_t index) const;

  // The r-th representative of R/P (r < q); nonzero r give units.
  RingElem residue_representative(std::uint64_t r) const;

  // Integer d x d matrix of multiplication by pi on the integral basis,
  // exact over Z (companion-style for Eisenstein data). Used by callers
  // that need Z_p-module bookkeeping without truncation.
  std::vector<std::vector<long long>> pi_multiplication_matrix() const;

  std::string describe() const;
  std::string format(const RingElem& a) const;
  // Accepts a plain integer or colon-separated coordinates.
  RingElem parse_elem(const std::string& text) const;

  // -- element arithmetic backends -----------------------------------
  RingElem add(const RingElem& a, const RingElem& b) const;
  RingElem sub(const RingElem& a, const RingElem& b) const;
  RingElem mul(const RingElem& a, const RingElem& b) const;
  RingElem neg(const RingElem& a) const;
  int valuation(const RingElem& a) const;

  RingSpec(const RingSpec&) = delete;
  RingSpec& operator=(const RingSpec&) = delete;

private:
  RingSpec() = default;

  enum class Family { prime_power, unramified, ramified };
  Family family_ = Family::prime_power;

  std::uint64_t p_ = 0;
  int e_ = 1, f_ = 1, m_ = 1;
  std::uint64_t q_ = 0;
  std::uint64_t size_ = 0;
  int deg_ = 1;
  std::array<std::uint64_t, kMaxDeg> mod_{};
  std::vector<long long> defining_;          // as given, reduced
  std::array<std::uint64_t, kMaxDeg> redc_;  // reduced defining coeffs
  int mu0_ = 1;  // precision of coordinate 0 (working modulus exponent)

  void check_same_ring(const RingElem& a, const RingElem& b) const;
};

// Exhaustive search for solutions of a^2 = 1; asserts the result is
// exactly {1, -1} before returning it.
std::vector<RingElem> square_roots_of_one(const Ring& ring,
                                          std::uint64_t budget = kDefaultBudget);

}  // namespace lielat
