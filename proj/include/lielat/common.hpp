#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace lielat {

using BigInt = boost::multiprecision::cpp_int;

// Default cap on elements touched by any exhaustive search.
inline constexpr std::uint64_t kDefaultBudget = 100'000'000ULL;

// Thrown when an enumeration would exceed its budget; carries the bound
// the search would need to complete.
class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(std::uint64_t needed, std::uint64_t budget)
      : std::runtime_error("enumeration budget exceeded: need about " +
                           std::to_string(needed) + " elements, budget is " +
                           std::to_string(budget)),
        needed_(needed), budget_(budget) {}
  std::uint64_t needed() const { return needed_; }
  std::uint64_t budget() const { return budget_; }

private:
  std::uint64_t needed_;
  std::uint64_t budget_;
};

inline BigInt big_pow(const BigInt& base, std::uint64_t exp) {
  BigInt r = 1, b = base;
  while (exp) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

}  // namespace lielat
