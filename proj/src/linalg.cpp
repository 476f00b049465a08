#include "tclab/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tclab {

// ---------------------------------------------------------------- IntMatrix

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Int> IntMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

void IntMatrix::append_row(const std::vector<Int>& r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw std::invalid_argument("IntMatrix::append_row: wrong length");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  IntMatrix out(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = (*this)(i, cols[k]);
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Int& s = (*this)(src, j);
    if (s != 0) (*this)(dst, j) += k * s;
  }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Int& s = (*this)(i, src);
    if (s != 0) (*this)(i, dst) += k * s;
  }
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("IntMatrix product: shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

std::vector<Int> operator*(const std::vector<Int>& row, const IntMatrix& m) {
  if (row.size() != m.rows()) throw std::invalid_argument("vector-matrix product: shape mismatch");
  std::vector<Int> out(m.cols());
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += row[k] * m(k, j);
  }
  return out;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// --------------------------------------------------------------- FinAbGroup

FinAbGroup::FinAbGroup(const std::vector<Int>& cyclic_orders) {
  const std::size_t k = cyclic_orders.size();
  IntMatrix d(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    if (cyclic_orders[i] < 1) throw std::invalid_argument("FinAbGroup: cyclic orders must be >= 1");
    d(i, i) = cyclic_orders[i];
  }
  *this = smith_form(d).torsion;
}

Int FinAbGroup::order() const {
  Int n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

std::size_t FinAbGroup::p_rank(const Int& p) const {
  return static_cast<std::size_t>(std::count_if(factors_.begin(), factors_.end(), [&](const Int& d) {
    return mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()) != 0;
  }));
}

FinAbGroup FinAbGroup::p_part(const Int& p) const {
  FinAbGroup g;
  for (const auto& d : factors_) {
    int v = valuation(d, p);
    if (v > 0) g.factors_.push_back(pow(p, static_cast<unsigned long>(v)));
  }
  return g;
}

std::string FinAbGroup::to_string() const {
  if (factors_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += " x ";
    s += "Z/" + factors_[i].get_str();
  }
  return s;
}

std::size_t p_rank(const FinAbGroup& g, const Int& p) { return g.p_rank(p); }

// ---------------------------------------------------------------- Smith form

namespace {

// Quotient rounded to nearest, keeping remainders small.
Int round_div(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * abs(r) > abs(b)) q += (b > 0 ? 1 : -1) * (r > 0 ? 1 : -1);
  return q;
}

}  // namespace

SmithForm smith_form(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  IntMatrix a = m;
  IntMatrix U = IntMatrix::identity(r);
  IntMatrix V = IntMatrix::identity(c);
  IntMatrix Vi = IntMatrix::identity(c);

  auto swap_r = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    U.swap_rows(i, j);
  };
  auto swap_c = [&](std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    V.swap_cols(i, j);
    Vi.swap_rows(i, j);
  };
  // col[dst] += k col[src]
  auto add_c = [&](std::size_t dst, std::size_t src, const Int& k) {
    a.add_col_multiple(dst, src, k);
    V.add_col_multiple(dst, src, k);
    Vi.add_row_multiple(src, dst, -k);
  };
  auto add_r = [&](std::size_t dst, std::size_t src, const Int& k) {
    a.add_row_multiple(dst, src, k);
    U.add_row_multiple(dst, src, k);
  };

  const std::size_t n = std::min(r, c);
  std::size_t t = 0;
  for (; t < n; ++t) {
    // smallest nonzero pivot in the trailing block
    std::size_t bi = r, bj = c;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (a(i, j) != 0 && (bi == r || abs(a(i, j)) < abs(a(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi == r) break;
    swap_r(t, bi);
    swap_c(t, bj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a(i, t) == 0) continue;
        add_r(i, t, -round_div(a(i, t), a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a(t, j) == 0) continue;
        add_c(j, t, -round_div(a(t, j), a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // bring the smallest remaining entry of row/column t to the pivot
        std::size_t si = t, sj = t;
        for (std::size_t i = t + 1; i < r; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < abs(a(si, sj))) {
            si = i;
            sj = t;
          }
        for (std::size_t j = t + 1; j < c; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < abs(a(si, sj))) {
            si = t;
            sj = j;
          }
        swap_r(t, si);
        swap_c(t, sj);
        continue;
      }
      // divisibility of the trailing block by the pivot
      bool divisible = true;
      for (std::size_t i = t + 1; i < r && divisible; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            add_r(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < c; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < r; ++j) U(t, j) = -U(t, j);
    }
  }

  SmithForm out;
  out.diagonal.resize(n);
  std::vector<Int> factors;
  for (std::size_t i = 0; i < n; ++i) {
    out.diagonal[i] = a(i, i);
    if (a(i, i) > 1) factors.push_back(a(i, i));
  }
  out.free_rank = c - t;
  out.U = std::move(U);
  out.V = std::move(V);
  out.V_inv = std::move(Vi);
  out.torsion = FinAbGroup::from_invariant_factors(std::move(factors));
  return out;
}

FinAbGroup FinAbGroup::from_invariant_factors(std::vector<Int> chain) {
  FinAbGroup g;
  for (auto& d : chain) {
    if (d < 1) throw std::invalid_argument("FinAbGroup: invariant factors must be >= 1");
    if (d == 1) continue;
    if (!g.factors_.empty() && !mpz_divisible_p(d.get_mpz_t(), g.factors_.back().get_mpz_t()))
      throw std::invalid_argument("FinAbGroup: not a divisibility chain");
    g.factors_.push_back(std::move(d));
  }
  return g;
}

FinAbGroup cokernel(const IntMatrix& relations) {
  SmithForm s = smith_form(relations);
  if (s.free_rank != 0) throw std::domain_error("cokernel: group is infinite");
  return s.torsion;
}

// ------------------------------------------------------------ Hermite form

HermiteForm hermite_form(const IntMatrix& m, bool with_transform) {
  const std::size_t r = m.rows(), c = m.cols();
  HermiteForm out;
  out.H = m;
  if (with_transform) out.T = IntMatrix::identity(r);
  IntMatrix& a = out.H;
  IntMatrix& T = out.T;
  auto add_r = [&](std::size_t dst, std::size_t src, const Int& k) {
    a.add_row_multiple(dst, src, k);
    if (with_transform) T.add_row_multiple(dst, src, k);
  };
  auto swap_r = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    if (with_transform) T.swap_rows(i, j);
  };

  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    for (;;) {
      std::size_t best = r;
      for (std::size_t i = row; i < r; ++i)
        if (a(i, col) != 0 && (best == r || abs(a(i, col)) < abs(a(best, col)))) best = i;
      if (best == r) break;
      swap_r(row, best);
      bool clean = true;
      for (std::size_t i = row + 1; i < r; ++i) {
        if (a(i, col) == 0) continue;
        add_r(i, row, -round_div(a(i, col), a(row, col)));
        if (a(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(row, col) == 0) continue;
    if (a(row, col) < 0) {
      for (std::size_t j = 0; j < c; ++j) a(row, j) = -a(row, j);
      if (with_transform)
        for (std::size_t j = 0; j < r; ++j) T(row, j) = -T(row, j);
    }
    for (std::size_t i = 0; i < row; ++i) {
      if (a(i, col) == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, col).get_mpz_t(), a(row, col).get_mpz_t());
      add_r(i, row, -q);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  return out;
}

IntMatrix left_kernel(const IntMatrix& m) {
  HermiteForm h = hermite_form(m, true);
  IntMatrix k(0, m.rows());
  for (std::size_t i = h.rank(); i < m.rows(); ++i) k.append_row(h.T.row(i));
  if (k.rows() > 1) {
    // tidy the basis; the row lattice is unchanged
    HermiteForm kh = hermite_form(k, false);
    IntMatrix tidy(0, m.rows());
    for (std::size_t i = 0; i < kh.rank(); ++i) tidy.append_row(kh.H.row(i));
    return tidy;
  }
  return k;
}

std::optional<std::vector<Int>> solve_left(const IntMatrix& m, const std::vector<Int>& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("solve_left: length mismatch");
  HermiteForm h = hermite_form(m, true);
  std::vector<Int> residual = v;
  std::vector<Int> y(m.rows());
  for (std::size_t k = 0; k < h.rank(); ++k) {
    std::size_t pc = h.pivot_cols[k];
    // entries left of the pivot must already vanish
    for (std::size_t j = (k == 0 ? 0 : h.pivot_cols[k - 1] + 1); j < pc; ++j)
      if (residual[j] != 0) return std::nullopt;
    if (!mpz_divisible_p(residual[pc].get_mpz_t(), h.H(k, pc).get_mpz_t())) return std::nullopt;
    Int q = residual[pc] / h.H(k, pc);
    y[k] = q;
    for (std::size_t j = pc; j < m.cols(); ++j) residual[j] -= q * h.H(k, j);
  }
  for (const auto& x : residual)
    if (x != 0) return std::nullopt;
  return y * h.T;
}

IntMatrix preimage_lattice(const IntMatrix& phi, const IntMatrix& small) {
  const std::size_t a = phi.rows(), b = phi.cols();
  if (small.cols() != b) throw std::invalid_argument("preimage_lattice: shape mismatch");
  // L = {x : x*phi in rowspace(small)} = projection of the left kernel of [phi; small]
  IntMatrix stacked(0, b);
  for (std::size_t i = 0; i < a; ++i) stacked.append_row(phi.row(i));
  for (std::size_t i = 0; i < small.rows(); ++i) stacked.append_row(small.row(i));
  IntMatrix k = left_kernel(stacked);
  IntMatrix proj(0, a);
  for (std::size_t i = 0; i < k.rows(); ++i) {
    std::vector<Int> r(a);
    for (std::size_t j = 0; j < a; ++j) r[j] = k(i, j);
    proj.append_row(r);
  }
  HermiteForm lh = hermite_form(proj, false);
  IntMatrix basis(0, a);
  for (std::size_t i = 0; i < lh.rank(); ++i) basis.append_row(lh.H.row(i));
  return basis;
}

FinAbGroup induced_kernel(const IntMatrix& big, const IntMatrix& phi, const IntMatrix& small) {
  if (big.cols() != phi.rows()) throw std::invalid_argument("induced_kernel: shape mismatch");
  IntMatrix basis = preimage_lattice(phi, small);
  // express the rows of `big` in the basis of L
  IntMatrix coords(0, basis.rows());
  for (std::size_t i = 0; i < big.rows(); ++i) {
    auto x = solve_left(basis, big.row(i));
    if (!x) throw std::logic_error("induced_kernel: map is not well defined");
    coords.append_row(*x);
  }
  if (basis.rows() == 0) return {};
  if (coords.rows() == 0) coords = IntMatrix(0, basis.rows());
  SmithForm s = smith_form(coords);
  if (s.free_rank != 0) throw std::domain_error("induced_kernel: kernel is infinite");
  return s.torsion;
}

// ----------------------------------------------------------------- FpMatrix

namespace {

std::uint64_t reduce_signed(long long v, std::uint64_t p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += static_cast<long long>(p);
  return static_cast<std::uint64_t>(r);
}

}  // namespace

FpMatrix FpMatrix::identity(std::size_t n, std::uint64_t p) {
  FpMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1 % p;
  return m;
}

FpMatrix FpMatrix::from_int(const IntMatrix& m, std::uint64_t p) {
  FpMatrix out(m.rows(), m.cols(), p);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.data_[i * m.cols() + j] = mod_u64(m(i, j), p);
  return out;
}

FpMatrix FpMatrix::from_rows(const std::vector<std::vector<long long>>& rows, std::uint64_t p) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  FpMatrix out(rows.size(), cols, p);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("FpMatrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) out.set(i, j, rows[i][j]);
  }
  return out;
}

void FpMatrix::set(std::size_t i, std::size_t j, long long v) { data_[i * cols_ + j] = reduce_signed(v, p_); }

std::vector<std::uint64_t> FpMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

void FpMatrix::append_row(const std::vector<std::uint64_t>& r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw std::invalid_argument("FpMatrix::append_row: wrong length");
  for (auto x : r) data_.push_back(x % p_);
  ++rows_;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(cols_, rows_, p_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

bool FpMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (data_[i * cols_ + j] != (i == j ? 1 % p_ : 0)) return false;
  return true;
}

bool FpMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint64_t x) { return x == 0; });
}

FpMatrix FpMatrix::rref(std::vector<std::size_t>* pivots) const {
  FpMatrix a = *this;
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t sel = rows_;
    for (std::size_t i = row; i < rows_; ++i)
      if (a.data_[i * cols_ + col] != 0) {
        sel = i;
        break;
      }
    if (sel == rows_) continue;
    if (sel != row)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(a.data_[sel * cols_ + j], a.data_[row * cols_ + j]);
    std::uint64_t inv = invmod(a.data_[row * cols_ + col], p_);
    for (std::size_t j = 0; j < cols_; ++j) a.data_[row * cols_ + j] = mulmod(a.data_[row * cols_ + j], inv, p_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row) continue;
      std::uint64_t f = a.data_[i * cols_ + col];
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        std::uint64_t sub = mulmod(f, a.data_[row * cols_ + j], p_);
        std::uint64_t& x = a.data_[i * cols_ + j];
        x = (x + p_ - sub) % p_;
      }
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots) *pivots = std::move(piv);
  return a;
}

std::size_t FpMatrix::rank() const {
  std::vector<std::size_t> piv;
  rref(&piv);
  return piv.size();
}

std::optional<FpMatrix> FpMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  if (n == 0) return *this;
  FpMatrix aug(n, 2 * n, p_);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.data_[i * 2 * n + j] = data_[i * n + j];
    aug.data_[i * 2 * n + n + i] = 1 % p_;
  }
  std::vector<std::size_t> piv;
  FpMatrix r = aug.rref(&piv);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  FpMatrix inv(n, n, p_);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.data_[i * n + j] = r.data_[i * 2 * n + n + j];
  return inv;
}

std::string FpMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << data_[i * cols_ + j];
    os << "]";
  }
  os << "]";
  return os.str();
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  if (a.cols() != b.rows() || a.modulus() != b.modulus())
    throw std::invalid_argument("FpMatrix product: shape or modulus mismatch");
  const std::uint64_t p = a.modulus();
  FpMatrix c(a.rows(), b.cols(), p);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::uint64_t s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s = (s + mulmod(a(i, k), b(k, j), p)) % p;
      c.set(i, j, static_cast<long long>(s));
    }
  return c;
}

FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.modulus() != b.modulus())
    throw std::invalid_argument("FpMatrix sum: shape or modulus mismatch");
  FpMatrix c(a.rows(), a.cols(), a.modulus());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      c.set(i, j, static_cast<long long>((a(i, j) + b(i, j)) % a.modulus()));
  return c;
}

FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) { return a + scale(b, a.modulus() - 1); }

FpMatrix scale(const FpMatrix& a, std::uint64_t k) {
  FpMatrix c(a.rows(), a.cols(), a.modulus());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      c.set(i, j, static_cast<long long>(mulmod(a(i, j), k % a.modulus(), a.modulus())));
  return c;
}

FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b) {
  if (a.modulus() != b.modulus()) throw std::invalid_argument("kronecker: modulus mismatch");
  const std::uint64_t p = a.modulus();
  FpMatrix c(a.rows() * b.rows(), a.cols() * b.cols(), p);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c.set(i * b.rows() + k, j * b.cols() + l, static_cast<long long>(mulmod(a(i, j), b(k, l), p)));
  return c;
}

FpMatrix vstack(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols() || a.modulus() != b.modulus()) throw std::invalid_argument("vstack: shape mismatch");
  FpMatrix c = a;
  for (std::size_t i = 0; i < b.rows(); ++i) c.append_row(b.row(i));
  return c;
}

FpMatrix fp_kernel(const FpMatrix& m) {
  std::vector<std::size_t> piv;
  FpMatrix r = m.rref(&piv);
  const std::uint64_t p = m.modulus();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  FpMatrix k(0, m.cols(), p);
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint64_t> v(m.cols(), 0);
    v[f] = 1 % p;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = (p - r(i, f)) % p;
    k.append_row(v);
  }
  return k;
}

FpMatrix fp_left_kernel(const FpMatrix& m) { return fp_kernel(m.transpose()); }

std::optional<std::vector<std::uint64_t>> fp_solve_left(const FpMatrix& m, const std::vector<std::uint64_t>& v) {
  // x * m = v  <=>  m^T x^T = v^T; solve via rref of [m^T | v]
  const std::uint64_t p = m.modulus();
  FpMatrix mt = m.transpose();
  FpMatrix aug(mt.rows(), mt.cols() + 1, p);
  for (std::size_t i = 0; i < mt.rows(); ++i) {
    for (std::size_t j = 0; j < mt.cols(); ++j) aug.set(i, j, static_cast<long long>(mt(i, j)));
    aug.set(i, mt.cols(), static_cast<long long>(v[i] % p));
  }
  std::vector<std::size_t> piv;
  FpMatrix r = aug.rref(&piv);
  if (!piv.empty() && piv.back() == mt.cols()) return std::nullopt;
  std::vector<std::uint64_t> x(mt.cols(), 0);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = r(i, mt.cols());
  return x;
}

QuotientSpace::QuotientSpace(const FpMatrix& w, std::size_t ambient_dim) : ambient(ambient_dim), p(w.modulus()) {
  if (w.rows() > 0 && w.cols() != ambient_dim) throw std::invalid_argument("QuotientSpace: dimension mismatch");
  reduced = w.rows() > 0 ? w.rref(&pivots) : FpMatrix(0, ambient_dim, p);
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t j = 0; j < ambient_dim; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
}

std::vector<std::uint64_t> QuotientSpace::reduce(std::vector<std::uint64_t> v) const {
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    std::uint64_t f = v[pivots[i]] % p;
    if (f == 0) continue;
    for (std::size_t j = 0; j < ambient; ++j) v[j] = (v[j] + p - mulmod(f, reduced(i, j), p)) % p;
  }
  std::vector<std::uint64_t> out(free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) out[k] = v[free_cols[k]] % p;
  return out;
}

FpMatrix QuotientSpace::induced(const FpMatrix& a) const {
  FpMatrix out(0, dim(), p);
  for (std::size_t k = 0; k < free_cols.size(); ++k) out.append_row(reduce(a.row(free_cols[k])));
  if (dim() == 0) return FpMatrix(0, 0, p);
  return out;
}

// ---------------------------------------------------------------- RatMatrix

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::optional<RatMatrix> RatMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  RatMatrix a = *this;
  RatMatrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = n;
    for (std::size_t i = col; i < n; ++i)
      if (a(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel == n) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(sel, j), a(col, j));
      std::swap(inv(sel, j), inv(col, j));
    }
    Rat f = 1 / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= f;
      inv(col, j) *= f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      Rat g = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= g * a(col, j);
        inv(i, j) -= g * inv(col, j);
      }
    }
  }
  return inv;
}

Rat RatMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("RatMatrix::determinant: not square");
  const std::size_t n = rows_;
  RatMatrix a = *this;
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = n;
    for (std::size_t i = col; i < n; ++i)
      if (a(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel == n) return 0;
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(sel, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col) == 0) continue;
      Rat g = a(i, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= g * a(col, j);
    }
  }
  return det;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("RatMatrix product: shape mismatch");
  RatMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

std::vector<Rat> operator*(const std::vector<Rat>& row, const RatMatrix& m) {
  if (row.size() != m.rows()) throw std::invalid_argument("vector-matrix product: shape mismatch");
  std::vector<Rat> out(m.cols());
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += row[k] * m(k, j);
  }
  return out;
}

}  // namespace tclab
