#pragma once

// Exact linear algebra over Z, Q and F_p.
//
// Convention throughout: a relation matrix has one row per relation and one
// column per generator, so the group it presents is Z^cols / rowspace.

#include "tclab/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tclab {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Int> row(std::size_t i) const;
  void append_row(const std::vector<Int>& r);
  IntMatrix transpose() const;
  IntMatrix select_columns(const std::vector<std::size_t>& cols) const;
  bool is_zero() const;
  bool operator==(const IntMatrix& o) const = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& k);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
std::vector<Int> operator*(const std::vector<Int>& row, const IntMatrix& m);

/// Determinant of a square matrix by fraction-free (Bareiss) elimination.
Int determinant(const IntMatrix& m);

/// Finite abelian group in invariant-factor form d_1 | d_2 | ... | d_k, all d_i >= 2.
class FinAbGroup {
 public:
  FinAbGroup() = default;
  /// Accepts any list of cyclic orders (>= 1) and normalizes it to invariant factors.
  explicit FinAbGroup(const std::vector<Int>& cyclic_orders);
  /// Takes an invariant-factor chain as is (factors equal to 1 are dropped); throws if it is not a chain.
  static FinAbGroup from_invariant_factors(std::vector<Int> chain);

  const std::vector<Int>& invariant_factors() const { return factors_; }
  bool is_trivial() const { return factors_.empty(); }
  Int order() const;
  /// Number of invariant factors divisible by p, i.e. dim_{F_p} G / pG.
  std::size_t p_rank(const Int& p) const;
  /// The p-primary part.
  FinAbGroup p_part(const Int& p) const;
  /// "0", "Z/3", "Z/2 x Z/2", ...
  std::string to_string() const;

  bool operator==(const FinAbGroup& o) const = default;

 private:
  std::vector<Int> factors_;
};

std::size_t p_rank(const FinAbGroup& g, const Int& p);

/// Smith normal form: U * m * V = D with U, V unimodular and V_inv = V^{-1}.
struct SmithForm {
  std::vector<Int> diagonal;  // length min(rows, cols), divisibility chain, nonnegative
  IntMatrix U;
  IntMatrix V;
  IntMatrix V_inv;
  FinAbGroup torsion;         // cokernel torsion (Z^cols / rowspace(m))
  std::size_t free_rank = 0;  // cols - rank
};

SmithForm smith_form(const IntMatrix& m);

/// Cokernel of a relation matrix; throws if it is infinite.
FinAbGroup cokernel(const IntMatrix& relations);

/// Row Hermite normal form H = T * m (T unimodular). Nonzero rows of H come first,
/// pivots are positive and entries above pivots are reduced into [0, pivot).
struct HermiteForm {
  IntMatrix H;
  IntMatrix T;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

HermiteForm hermite_form(const IntMatrix& m, bool with_transform = true);

/// Basis (as rows) of {x : x * m = 0}.
IntMatrix left_kernel(const IntMatrix& m);

/// Some integer x with x * m = v, if one exists.
std::optional<std::vector<Int>> solve_left(const IntMatrix& m, const std::vector<Int>& v);

/// Basis (rows) of {x : x * phi in rowspace(small)}.
IntMatrix preimage_lattice(const IntMatrix& phi, const IntMatrix& small);

/// Kernel of the map Z^a/rowspace(big) -> Z^b/rowspace(small) induced by x -> x * phi.
/// The map must be well defined (rowspace(big) * phi inside rowspace(small)).
FinAbGroup induced_kernel(const IntMatrix& big, const IntMatrix& phi, const IntMatrix& small);

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols, std::uint64_t p)
      : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

  static FpMatrix identity(std::size_t n, std::uint64_t p);
  static FpMatrix from_int(const IntMatrix& m, std::uint64_t p);
  static FpMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::uint64_t p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t modulus() const { return p_; }
  std::uint64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, long long v);
  std::vector<std::uint64_t> row(std::size_t i) const;
  void append_row(const std::vector<std::uint64_t>& r);

  FpMatrix transpose() const;
  bool is_identity() const;
  bool is_zero() const;
  bool operator==(const FpMatrix& o) const = default;

  /// Reduced row echelon form; `pivots` receives pivot columns.
  FpMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  std::size_t rank() const;
  std::optional<FpMatrix> inverse() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> data_;
};

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
FpMatrix operator+(const FpMatrix& a, const FpMatrix& b);
FpMatrix operator-(const FpMatrix& a, const FpMatrix& b);
FpMatrix scale(const FpMatrix& a, std::uint64_t k);
FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b);
/// Rows stacked vertically; column counts must agree.
FpMatrix vstack(const FpMatrix& a, const FpMatrix& b);

/// Basis (as rows) of the right kernel {v : m * v = 0}; size cols - rank.
FpMatrix fp_kernel(const FpMatrix& m);
/// Basis (as rows) of {x : x * m = 0}.
FpMatrix fp_left_kernel(const FpMatrix& m);
/// Some x with x * m = v, if solvable.
std::optional<std::vector<std::uint64_t>> fp_solve_left(const FpMatrix& m, const std::vector<std::uint64_t>& v);

/// Action on F_p^n / W for an action x -> x * a that preserves W (given by spanning rows).
/// The quotient basis is the images of the standard vectors at non-pivot columns of rref(W).
struct QuotientSpace {
  FpMatrix reduced;                    // rref of W
  std::vector<std::size_t> pivots;     // pivot columns of W
  std::vector<std::size_t> free_cols;  // basis of the quotient
  std::size_t ambient = 0;
  std::uint64_t p = 2;

  QuotientSpace(const FpMatrix& w, std::size_t ambient_dim);
  std::size_t dim() const { return free_cols.size(); }
  /// Coordinates of v + W in the quotient basis.
  std::vector<std::uint64_t> reduce(std::vector<std::uint64_t> v) const;
  /// Matrix of the induced action (row convention).
  FpMatrix induced(const FpMatrix& a) const;
};

/// Rational matrices, only used for small change-of-basis computations.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::optional<RatMatrix> inverse() const;
  Rat determinant() const;
  bool operator==(const RatMatrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
std::vector<Rat> operator*(const std::vector<Rat>& row, const RatMatrix& m);

}  // namespace tclab
