#pragma once
// Brute-force reference computations shared by the unit tests.

#include <algorithm>
#include <numeric>
#include <vector>

#include "framedrep/ring.hpp"

namespace oracle {

// Permutation-sum determinant; independent of the Bareiss code path.
inline framedrep::LaurentPoly2 leibniz_det(const framedrep::PolyMatrix& m) {
  const std::size_t dim = m.rows();
  std::vector<std::size_t> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  framedrep::LaurentPoly2 det;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = a + 1; b < dim; ++b) inversions += perm[a] > perm[b];
    framedrep::LaurentPoly2 term(inversions % 2 ? -1 : 1);
    for (std::size_t k = 0; k < dim && !term.is_zero(); ++k) term *= m(k, perm[k]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace oracle
