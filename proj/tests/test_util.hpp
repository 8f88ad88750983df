#pragma once

#include <cstdint>

#include "lielat/linalg.hpp"
#include "lielat/ring.hpp"

namespace lielat::testutil {

// Small deterministic generator so failures reproduce exactly.
struct Lcg {
  std::uint64_t state = 0x243f6a8885a308d3ULL;
  std::uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 33;
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

inline RingElem random_elem(const Ring& ring, Lcg& rng) {
  return ring->element_at(rng.below(ring->size()));
}

inline Mat random_mat(const Ring& ring, Lcg& rng, int rows, int cols) {
  Mat m(ring.get(), rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = random_elem(ring, rng);
  return m;
}

}  // namespace lielat::testutil
