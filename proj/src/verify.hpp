// Operator verification suite: exact structural identities (div o curl = 0,
// curl o grad = 0, the three adjointness pairs) probed on random fields, the
// second-order truncation orders on analytic trigonometric fields, and the
// Gaffney ratio over random band-limited fields. Backs the verify-operators
// command and the acceptance harness.
#pragma once

#include "diagnostics.hpp"
#include "grid.hpp"

namespace penmhd {

struct OperatorReport {
  int dim = 2;
  int identity_fields = 0;       // random fields probed per identity
  double div_curl_max = 0.0;     // all identity numbers are relative maxima
  double curl_grad_max = 0.0;
  double adj_grad_div_max = 0.0;
  double adj_curl_max = 0.0;
  double adj_stress_max = 0.0;
  int trunc_n = 0;               // truncation oracle runs at trunc_n and 2*trunc_n (2-D)
  double trunc_order_grad = 0.0; // observed orders, expected ~2
  double trunc_order_div = 0.0;
  double trunc_order_curl = 0.0;
  GaffneyStats gaffney;
  double identity_worst() const;
};

OperatorReport verify_operator_suite(int dim, int n_identity, int identity_fields, int trunc_n,
                                     int gaffney_fields, unsigned seed);

} // namespace penmhd
