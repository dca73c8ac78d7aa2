#ifndef TWISTRACK_INTMAT_HPP
#define TWISTRACK_INTMAT_HPP

#include <cstdint>
#include <vector>

#include "twistrack/errors.hpp"
#include "twistrack/field.hpp"

namespace twr {

// Dense integer matrices, row-major, int64 entries with overflow-checked
// arithmetic. Sizes here are tiny (<= 12 or so); clarity over speed.
struct IMat {
  int rows = 0, cols = 0;
  std::vector<i64> a;

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
  i64& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  i64 at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
  static IMat identity(int n);
};

IMat imat_mul(const IMat& x, const IMat& y);
std::vector<i64> imat_apply_row(const std::vector<i64>& v, const IMat& m);  // v * m

// Smith normal form: U * A * V = D with U, V unimodular and D diagonal with
// d1 | d2 | ... (nonnegative). Returns D in-place; U, V, V^-1 optional outs.
void smith_normal_form(IMat& a, IMat* u = nullptr, IMat* v = nullptr, IMat* vinv = nullptr);

// Basis (as rows) of the lattice {y : y * A = 0}.
IMat integer_kernel(const IMat& a);

// Hermite-style row reduction producing a basis of the row span. When track
// is given it receives T with basis = T * input (rows of T index basis rows).
IMat row_lattice_basis(const IMat& a, IMat* track = nullptr);

}  // namespace twr

#endif
