// Preconditioned conjugate gradient with deterministic (compensated, fixed
// order) reductions. Two flavors: scalar cell unknowns and face-vector
// unknowns. The operator must be symmetric positive (semi-)definite; `diag`
// holds its diagonal for Jacobi preconditioning (empty -> identity).
//
// The initial guess is honored and an already-converged guess exits after
// zero iterations without touching x — steady states must pass through the
// implicit solves bit-exactly.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

#include "errors.hpp"
#include "fields.hpp"
#include "grid.hpp"

namespace penmhd {

struct CgResult {
  int iters = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

namespace cgdetail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b, int) {
  return kdot(a, b);
}
inline double dot(const VecField& a, const VecField& b, int dim) { return vec_dot(a, b, dim); }

inline void axpy(std::vector<double>& y, double al, const std::vector<double>& x, int) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += al * x[i];
}
inline void axpy(VecField& y, double al, const VecField& x, int dim) { vec_axpy(y, al, x, dim); }

inline void xpay(std::vector<double>& y, double al, const std::vector<double>& x, int) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + al * y[i];
}
inline void xpay(VecField& y, double al, const VecField& x, int dim) {
  for (int d = 0; d < dim; ++d)
    for (std::size_t i = 0; i < y[d].size(); ++i) y[d][i] = x[d][i] + al * y[d][i];
}

inline void jacobi(std::vector<double>& z, const std::vector<double>& r,
                   const std::vector<double>& diag, int) {
  if (diag.empty()) {
    z = r;
    return;
  }
  for (std::size_t i = 0; i < r.size(); ++i) z[i] = r[i] / diag[i];
}
inline void jacobi(VecField& z, const VecField& r, const VecField& diag, int dim) {
  for (int d = 0; d < dim; ++d) {
    if (diag[d].empty()) {
      z[d] = r[d];
      continue;
    }
    for (std::size_t i = 0; i < r[d].size(); ++i) z[d][i] = r[d][i] / diag[d][i];
  }
}

} // namespace cgdetail

// Solves A x = b to ||r||_2 <= tol * ||b||_2. apply(out, in) evaluates A.
template <class Vec, class Apply>
CgResult pcg(int dim, Apply&& apply, const Vec& b, Vec& x, const Vec& diag, double tol,
             int maxit, const char* what) {
  using namespace cgdetail;
  CgResult res;
  const double bnorm2 = dot(b, b, dim);
  if (bnorm2 == 0.0) {
    res.converged = true; // consistent only with x in the null space; callers pass x = 0
    return res;
  }
  const double target2 = tol * tol * bnorm2;

  Vec r = b, Ax = b;
  apply(Ax, x);
  axpy(r, -1.0, Ax, dim); // r = b - A x0
  double rr = dot(r, r, dim);
  if (rr <= target2) {
    res.converged = true;
    res.rel_residual = std::sqrt(rr / bnorm2);
    return res;
  }

  Vec z = b;
  jacobi(z, r, diag, dim);
  Vec p = z;
  double rz = dot(r, z, dim);
  Vec Ap = b;

  for (int it = 1; it <= maxit; ++it) {
    apply(Ap, p);
    const double pAp = dot(p, Ap, dim);
    if (!(pAp > 0.0))
      throw numeric_error(std::string(what) + ": operator lost positive-definiteness in CG");
    const double alpha = rz / pAp;
    axpy(x, alpha, p, dim);
    axpy(r, -alpha, Ap, dim);
    rr = dot(r, r, dim);
    if (rr <= target2) {
      res.iters = it;
      res.converged = true;
      res.rel_residual = std::sqrt(rr / bnorm2);
      return res;
    }
    jacobi(z, r, diag, dim);
    const double rz_new = dot(r, z, dim);
    xpay(p, rz_new / rz, z, dim); // p = z + beta p
    rz = rz_new;
  }
  res.iters = maxit;
  res.rel_residual = std::sqrt(rr / bnorm2);
  throw numeric_error(std::string(what) + ": CG failed to converge in " + std::to_string(maxit) +
                      " iterations (relative residual " + std::to_string(res.rel_residual) + ")");
}

} // namespace penmhd
