#include "tclab/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace tclab {

RealMatrix gram_of(const IntMatrix& basis, const RealMatrix& gram) {
  const std::size_t k = basis.rows(), n = basis.cols();
  std::vector<std::vector<long double>> b(k, std::vector<long double>(n));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i][j] = basis(i, j).get_d();
  RealMatrix bg(k, std::vector<long double>(n, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) bg[i][j] += b[i][l] * gram[l][j];
  RealMatrix out(k, std::vector<long double>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < n; ++l) out[i][j] += bg[i][l] * b[j][l];
  return out;
}

IntMatrix lll(const RealMatrix& gram, long double delta) {
  const std::size_t n = gram.size();
  IntMatrix T = IntMatrix::identity(n);
  RealMatrix g = gram;
  auto gso = [&](RealMatrix& mu, std::vector<long double>& bstar) {
    mu.assign(n, std::vector<long double>(n, 0));
    bstar.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        long double s = g[i][j];
        for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * bstar[k];
        mu[i][j] = s / bstar[j];
      }
      long double s = g[i][i];
      for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * bstar[k];
      bstar[i] = s;
    }
  };
  // row_i -= c row_j, applied to T and to the Gram matrix
  auto reduce = [&](std::size_t i, std::size_t j, long long c) {
    T.add_row_multiple(i, j, Int(static_cast<long>(-c)));
    for (std::size_t k = 0; k < n; ++k) g[i][k] -= c * g[j][k];
    for (std::size_t k = 0; k < n; ++k) g[k][i] -= c * g[k][j];
  };
  auto swap = [&](std::size_t i, std::size_t j) {
    T.swap_rows(i, j);
    std::swap(g[i], g[j]);
    for (std::size_t k = 0; k < n; ++k) std::swap(g[k][i], g[k][j]);
  };
  RealMatrix mu;
  std::vector<long double> bstar;
  std::size_t k = 1;
  int guard = 0;
  while (k < n) {
    if (++guard > 100000) throw std::runtime_error("lll: no convergence");
    gso(mu, bstar);
    for (std::size_t j = k; j-- > 0;) {
      long long c = std::llround(mu[k][j]);
      if (c != 0) {
        reduce(k, j, c);
        gso(mu, bstar);
      }
    }
    if (bstar[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
      ++k;
    } else {
      swap(k, k - 1);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return T;
}

void fincke_pohst(const RealMatrix& gram, long double bound,
                  const std::function<bool(const std::vector<long long>&, long double)>& visit) {
  const std::size_t n = gram.size();
  if (n == 0) return;
  // q(x) = sum_i Q[i][i] (x_i + sum_{j>i} Q[i][j] x_j)^2
  RealMatrix Q = gram;
  for (std::size_t i = 0; i < n; ++i) {
    if (Q[i][i] <= 0) throw std::domain_error("fincke_pohst: form is not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      Q[j][i] = Q[i][j];
      Q[i][j] /= Q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) Q[k][l] -= Q[k][i] * Q[i][l];
  }
  const long double eps = 1e-9L * std::max(1.0L, bound);
  std::vector<long long> x(n, 0), upper(n, 0);
  std::vector<long double> T(n, 0), U(n, 0);
  // iterative enumeration from the last coordinate down
  std::size_t i = n - 1;
  T[i] = bound;
  U[i] = 0;
  auto init = [&](std::size_t idx) {
    long double z = std::sqrt(std::max(0.0L, (T[idx] + eps) / Q[idx][idx]));
    upper[idx] = static_cast<long long>(std::floor(z - U[idx]));
    x[idx] = static_cast<long long>(std::ceil(-z - U[idx])) - 1;
  };
  init(i);
  for (;;) {
    ++x[i];
    if (x[i] > upper[i]) {
      if (i == n - 1) return;
      ++i;
      continue;
    }
    if (i > 0) {
      long double d = x[i] + U[i];
      T[i - 1] = T[i] - Q[i][i] * d * d;
      --i;
      long double s = 0;
      for (std::size_t j = i + 1; j < n; ++j) s += Q[i][j] * x[j];
      U[i] = s;
      init(i);
      continue;
    }
    bool nonzero = false;
    for (auto v : x)
      if (v != 0) {
        nonzero = true;
        break;
      }
    if (!nonzero) continue;
    long double d = x[0] + U[0];
    long double value = bound - (T[0] - Q[0][0] * d * d);
    if (!visit(x, value)) return;
  }
}

}  // namespace tclab
