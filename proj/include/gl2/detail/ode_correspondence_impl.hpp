#pragma once

// Template definitions for gl2_structures.hpp; not meant for direct inclusion.

#include "gl2/errors.hpp"

namespace gl2::structures {

template <class S>
JetExponent F3Jet<S>::parse_key(const std::string& key) {
  JetExponent e{};
  for (char ch : key) {
    switch (ch) {
      case 'y': ++e[kY]; break;
      case '0': ++e[kX0]; break;
      case '1': ++e[kX1]; break;
      case '2': ++e[kX2]; break;
      case '3': ++e[kX3]; break;
      default:
        throw UsageError("F3Jet: bad partial key '" + key + "' (letters y, 0, 1, 2, 3)");
    }
  }
  return e;
}

template <class S>
OdeCorrespondence<S> ode_correspondence(const F3Jet<S>& jet) {
  if (jet.order < 3)
    throw UsageError("ode_correspondence: F must be known through order 3, got order " +
                     std::to_string(jet.order));
  constexpr int cap = 3;
  using P = TruncPoly<5, S>;

  // Taylor coefficients are partials divided by the exponent factorials.
  P F(cap);
  for (const auto& [e, v] : jet.partials) {
    int degree = 0;
    long factorial = 1;
    for (int k : e) {
      degree += k;
      for (int m = 2; m <= k; ++m) factorial *= m;
    }
    if (degree > cap) throw UsageError("ode_correspondence: partial beyond order 3 supplied");
    F.set(e, v / S(factorial));
  }

  const P x1 = P::coordinate(cap, kX1, jet.point[1]);
  const P x2 = P::coordinate(cap, kX2, jet.point[2]);
  const P x3 = P::coordinate(cap, kX3, jet.point[3]);
  // Total derivative X_F = d_y + x1 d_0 + x2 d_1 + x3 d_2 + F d_3.
  auto X = [&](const P& g) {
    return g.derivative(kY) + x1 * g.derivative(kX0) + x2 * g.derivative(kX1) +
           x3 * g.derivative(kX2) + F * g.derivative(kX3);
  };

  const P F1 = F.derivative(kX1);
  const P F2 = F.derivative(kX2);
  const P F3 = F.derivative(kX3);
  const P XF3 = X(F3);
  const P XXF3 = X(XF3);
  const P K = S(-1) * F2 + (S(3) / S(2)) * XF3 - (S(3) / S(8)) * (F3 * F3);
  const P XK = X(K);
  const P XF2 = X(F2);

  const S f1 = F1[0], f2 = F2[0], f3 = F3[0];
  const S xf3 = XF3[0], xxf3 = XXF3[0], k = K[0], xk = XK[0], xf2 = XF2[0];

  OdeCorrespondence<S> out;
  const S alpha = f3;
  const S beta = (S(7) / S(20)) * f2 - (S(3) / S(20)) * xf3 + (S(9) / S(40)) * f3 * f3;
  const S gamma = f2 + (S(7) / S(10)) * k;
  const S delta = f1 - (S(3) / S(10)) * xk - xf2 + (S(21) / S(40)) * k * f3 -
                  (S(27) / S(16)) * xf3 * f3 - (S(3) / S(4)) * f2 * f3 + (S(3) / S(4)) * xxf3 +
                  (S(27) / S(64)) * f3 * f3 * f3;
  out.raw = {alpha, beta, gamma, delta};
  // Linear change (x0, x1, x2, x3) -> (x3, 2 x2, 2 x1, 4/3 x0) brings the
  // framing to normal form.
  out.rescaled = {alpha / S(2), (S(4) / S(3)) * beta, S(2) * gamma, (S(4) / S(3)) * delta};
  out.abcd = h_parameters_from_alpha(out.rescaled[0], out.rescaled[1], out.rescaled[2],
                                     out.rescaled[3]);
  return out;
}

}  // namespace gl2::structures
