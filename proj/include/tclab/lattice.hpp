#pragma once

// Short-vector tools on positive definite quadratic forms. Floating point is
// used only to steer the search; callers verify every candidate exactly.

#include "tclab/linalg.hpp"

#include <functional>
#include <vector>

namespace tclab {

using RealMatrix = std::vector<std::vector<long double>>;

/// Gram matrix of the rows of `basis` for the form `gram`: B G B^T.
RealMatrix gram_of(const IntMatrix& basis, const RealMatrix& gram);

/// LLL reduction of the standard basis with respect to `gram`. Returns the
/// unimodular T such that the rows of T are the reduced vectors.
IntMatrix lll(const RealMatrix& gram, long double delta = 0.99L);

/// Visits every nonzero integer vector x with x G x^T <= bound (both x and -x).
/// The visitor returns false to stop the enumeration early.
void fincke_pohst(const RealMatrix& gram, long double bound,
                  const std::function<bool(const std::vector<long long>&, long double)>& visit);

}  // namespace tclab
