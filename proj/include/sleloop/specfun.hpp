// Copyright 2026 The sleloop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Closed-form distribution of the conformal radius of SLE(8/3) boundary
// bubbles encircling i, together with the modular-form, spectral and
// asymptotic expressions that surround it.
//
// Naming: the bubble measure of {r >= q} is called the radius "CDF" below;
// it is the upper tail of the conformal radius r, i.e. 1 - F_r(q).

#include <cstddef>

namespace sleloop::specfun {

/// Stopping rule shared by every infinite product and series in this module.
/// Products stop once the remaining factors can change the partial product
/// by at most abs_tol; series stop at the first term below abs_tol.
struct TruncationPolicy {
  double abs_tol = 1e-16;
  int max_terms = 200;

  void validate() const;
};

/// Nome q in the open interval (0, 1). Implicit so call sites can pass a
/// double; construction throws DomainError outside the interval.
class Nome {
 public:
  Nome(double q);  // NOLINT(google-explicit-constructor)
  double value() const { return q_; }

 private:
  double q_;
};

/// prod_{n>=1} (1 - x^n)^power for x in [0, 1).
double euler_product(double x, int power, const TruncationPolicy& pol = {});

/// Bub(r >= q) = prod_{n>=1} (1 - q^{2n/3})^3.
double radius_cdf_product(Nome q, const TruncationPolicy& pol = {});

/// Bub(r >= q) = sum_{n>=0} (-1)^n (2n+1) q^{n(n+1)/3}.
double radius_cdf_series(Nome q, const TruncationPolicy& pol = {});

/// Dedekind eta at the purely imaginary argument s = i t, nome e^{-2 pi t}.
double dedekind_eta(double t, const TruncationPolicy& pol = {});

/// q^{-1/8} eta(s)^3 with q = e^{2 pi i s}; equals Bub(r >= q^{3/2}).
double radius_cdf_eta(Nome q, const TruncationPolicy& pol = {});

/// Bub(r >= e^{-a}) evaluated after the modular inversion s -> -1/s:
///   e^{a/12} (3 pi / a)^{3/2} e^{-3 pi^2/(4a)} prod (1 - e^{-6 pi^2 n / a})^3.
/// Converges fastest for small a, where the direct product needs many terms.
double radius_cdf_modular(double a, const TruncationPolicy& pol = {});

/// P(tau_pi > t) for the conditioned angle process started at 0, by the
/// eigenfunction series sum_{n>=1} (-1)^{n-1} (2n+1) e^{-t n(n+1)/2}.
double survival_tau(double t, const TruncationPolicy& pol = {});

/// Same quantity via the triple-product form 1 - prod (1 - e^{-n t})^3.
double survival_tau_product(double t, const TruncationPolicy& pol = {});

/// Jacobi polynomial P_n^{(1,-1)}(x) by three-term recurrence.
double jacobi_p(int n, double x);

/// Eigenfunction p_n(theta) = P_n^{(1,-1)}(cos theta) of the generator of
/// the conditioned angle process, and its adjoint partner
/// p_n^*(theta) = p_n(theta) * 2 sin^3(theta/2) / cos(theta/2).
double eigenfunction(int n, double theta);
double adjoint_eigenfunction(int n, double theta);

/// Squared norm (2n+2)/(2n^2+n) of p_n against p_n^*; n >= 1.
double eigen_norm(int n);

struct TransitionDensity {
  double value = 0.0;       // max(raw, 0)
  double raw = 0.0;         // truncated eigenfunction sum
  bool negative = false;    // raw < -abs_tol: truncation too short for this t
  bool converged = true;    // false if max_terms ran out first
  int terms = 0;
};

/// Density p_t(theta, theta') of the conditioned angle process (absorbed at
/// pi), per radian of theta'. Angles are accepted on the closed interval
/// [0, pi]; theta = 0 uses p_n(0) = n + 1 exactly.
TransitionDensity transition_density(double t, double theta, double theta_p,
                                     const TruncationPolicy& pol = {});

/// 3 q^{2/3}; small-q asymptotic of Bub(r <= q). Defined on (0, 1].
double asymptotic_small_mass(double q);

/// (3 pi / a)^{3/2} exp(-3 pi^2 / (4a)); small-a asymptotic of Bub(r >= e^{-a}).
double asymptotic_small_a_tail(double a);

struct BubBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Koebe-quarter sandwich for Bub(loop stays in U_a): upper = CDF(e^{-a});
/// lower = CDF(4 e^{-a}) when e^{-a} < 1/4 and 0 otherwise.
BubBounds bub_bounds(double a, const TruncationPolicy& pol = {});

}  // namespace sleloop::specfun
