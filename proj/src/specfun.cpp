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

#include "sleloop/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sleloop/errors.hpp"

namespace sleloop::specfun {
namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

void TruncationPolicy::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
  if (max_terms < 1) throw DomainError("max_terms must be at least 1");
}

Nome::Nome(double q) : q_(q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("nome must lie in (0, 1), got " + std::to_string(q));
  }
}

double euler_product(double x, int power, const TruncationPolicy& pol) {
  pol.validate();
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("euler_product needs x in [0, 1)");
  if (x == 0.0) return 1.0;
  // After n factors the log of the remaining tail is bounded by
  // power * x^{n+1} / (1 - x)^2, so partial * that bounds the absolute error.
  const double tail_scale = power / ((1.0 - x) * (1.0 - x));
  double partial = 1.0;
  double xn = 1.0;
  for (int n = 1; n <= pol.max_terms; ++n) {
    xn *= x;
    partial *= std::pow(1.0 - xn, power);
    if (partial < pol.abs_tol) return partial;
    if (partial * tail_scale * xn * x <= pol.abs_tol) return partial;
  }
  throw CutoffError("euler_product: max_terms exhausted at x = " +
                    std::to_string(x));
}

double radius_cdf_product(Nome q, const TruncationPolicy& pol) {
  return euler_product(std::pow(q.value(), 2.0 / 3.0), 3, pol);
}

double radius_cdf_series(Nome q, const TruncationPolicy& pol) {
  pol.validate();
  const double lq = std::log(q.value()) / 3.0;
  double sum = 1.0;
  for (int n = 1; n <= pol.max_terms; ++n) {
    const double mag = (2.0 * n + 1.0) * std::exp(lq * n * (n + 1.0));
    // terms rise then fall; the first sub-tolerance term is past the peak
    if (mag < pol.abs_tol) return sum;
    sum += (n % 2 ? -mag : mag);
  }
  throw CutoffError("radius_cdf_series: max_terms exhausted");
}

double dedekind_eta(double t, const TruncationPolicy& pol) {
  require_positive(t, "eta argument t");
  const double x = std::exp(-2.0 * kPi * t);
  return std::exp(-2.0 * kPi * t / 24.0) * euler_product(x, 1, pol);
}

double radius_cdf_eta(Nome q, const TruncationPolicy& pol) {
  const double t = -std::log(q.value()) / (2.0 * kPi);
  const double eta = dedekind_eta(t, pol);
  return std::pow(q.value(), -0.125) * eta * eta * eta;
}

double radius_cdf_modular(double a, const TruncationPolicy& pol) {
  require_positive(a, "modulus a");
  const double x = std::exp(-6.0 * kPi * kPi / a);
  return std::exp(a / 12.0) * asymptotic_small_a_tail(a) *
         euler_product(x, 3, pol);
}

double survival_tau(double t, const TruncationPolicy& pol) {
  require_positive(t, "time t");
  pol.validate();
  double sum = 0.0;
  for (int n = 1; n <= pol.max_terms; ++n) {
    const double mag = (2.0 * n + 1.0) * std::exp(-0.5 * t * n * (n + 1.0));
    if (mag < pol.abs_tol) return sum;
    sum += (n % 2 ? mag : -mag);
  }
  throw CutoffError("survival_tau: max_terms exhausted");
}

double survival_tau_product(double t, const TruncationPolicy& pol) {
  require_positive(t, "time t");
  return 1.0 - euler_product(std::exp(-t), 3, pol);
}

double jacobi_p(int n, double x) {
  if (n < 0) throw DomainError("jacobi_p: negative degree");
  if (!(std::fabs(x) <= 1.0)) throw DomainError("jacobi_p: |x| > 1");
  if (n == 0) return 1.0;
  // Standard three-term recurrence with alpha + beta = 0 and
  // alpha^2 - beta^2 = 0, after dividing through by 4n.
  double pm = 1.0;
  double p = 1.0 + x;
  for (int k = 2; k <= n; ++k) {
    const double next =
        ((2.0 * k - 1.0) * (k - 1.0) * x * p - k * (k - 2.0) * pm) /
        (k * (k - 1.0));
    pm = p;
    p = next;
  }
  return p;
}

double eigenfunction(int n, double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) throw DomainError("angle outside [0, pi]");
  if (theta == 0.0) return n + 1.0;
  return jacobi_p(n, std::cos(theta));
}

double adjoint_eigenfunction(int n, double theta) {
  const double p = eigenfunction(n, theta);
  const double c = std::cos(0.5 * theta);
  if (theta == kPi || c <= 0.0) {
    // p_n has a simple zero in (1 + cos theta) for n >= 1
    return n == 0 ? HUGE_VAL : 0.0;
  }
  const double s = std::sin(0.5 * theta);
  return p * 2.0 * s * s * s / c;
}

double eigen_norm(int n) {
  if (n < 1) throw DomainError("eigen_norm: n must be >= 1");
  return (2.0 * n + 2.0) / (2.0 * n * n + n);
}

TransitionDensity transition_density(double t, double theta, double theta_p,
                                     const TruncationPolicy& pol) {
  require_positive(t, "time t");
  pol.validate();
  for (double ang : {theta, theta_p}) {
    if (!(ang >= 0.0 && ang <= kPi)) throw DomainError("angle outside [0, pi]");
  }
  TransitionDensity out;
  const double c = std::cos(0.5 * theta_p);
  const double s = std::sin(0.5 * theta_p);
  const double weight = c > 0.0 ? 2.0 * s * s * s / c : 0.0;
  const double x = std::cos(theta);
  const double xp = std::cos(theta_p);
  // |p_n| <= n + 1 on [-1, 1]; past the peak of n^3 e^{-t n^2 / 2} the
  // bound is monotone, so it is a valid stopping certificate there.
  const double n_peak = std::sqrt(3.0 / t) + 1.0;
  double sum = 0.0;
  int n = 1;
  // p_k(theta), p_k(theta_p) carried by the same recurrence as jacobi_p
  double a_prev = 1.0, a_cur = theta == 0.0 ? 2.0 : 1.0 + x;
  double b_prev = 1.0, b_cur = 1.0 + xp;
  out.converged = false;
  for (; n <= pol.max_terms; ++n) {
    if (n >= 2) {
      const double k = n;
      const double d = k * (k - 1.0);
      const double an = theta == 0.0
                            ? k + 1.0
                            : ((2 * k - 1) * (k - 1) * x * a_cur - k * (k - 2) * a_prev) / d;
      const double bn =
          ((2 * k - 1) * (k - 1) * xp * b_cur - k * (k - 2) * b_prev) / d;
      a_prev = a_cur;
      a_cur = an;
      b_prev = b_cur;
      b_cur = bn;
    }
    const double decay = std::exp(-0.5 * t * n * (n + 1.0));
    const double coef = decay / eigen_norm(n);
    sum += coef * a_cur * b_cur * weight;
    const double bound = coef * (n + 1.0) * (n + 1.0) * weight;
    if (n > n_peak && bound < pol.abs_tol) {
      out.converged = true;
      break;
    }
  }
  out.terms = std::min(n, pol.max_terms);
  out.raw = sum;
  out.negative = sum < -pol.abs_tol;
  out.value = sum > 0.0 ? sum : 0.0;
  return out;
}

double asymptotic_small_mass(double q) {
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("q must lie in (0, 1]");
  return 3.0 * std::pow(q, 2.0 / 3.0);
}

double asymptotic_small_a_tail(double a) {
  require_positive(a, "modulus a");
  return std::pow(3.0 * kPi / a, 1.5) * std::exp(-0.75 * kPi * kPi / a);
}

BubBounds bub_bounds(double a, const TruncationPolicy& pol) {
  require_positive(a, "modulus a");
  BubBounds b;
  const double q = std::exp(-a);
  b.upper = q > 0.0 ? radius_cdf_product(q, pol) : 1.0;
  if (4.0 * q < 1.0) {
    b.lower = q > 0.0 ? radius_cdf_product(4.0 * q, pol) : 1.0;
  }
  return b;
}

}  // namespace sleloop::specfun
