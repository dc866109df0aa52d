#pragma once

// Dislocation measures on the mass simplex, exposed through the integral
// functionals the limit theory consumes: the rare-split reference form
// integral(g) = int g(s) (1 - s_1) nu(ds), the Laplace exponent
// phi(lambda) = int sum_i (1 - s_i^lambda) s_i nu(ds), and the projected
// measure mu with int g dmu = int sum_i s_i (1 - s_i) g(s_i) nu(ds).

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mbt/rng.hpp"

namespace mbt {

struct MassPartition {
  std::vector<double> s;  // non-increasing, non-negative, sum <= 1
  explicit MassPartition(std::vector<double> v);
  double sum() const;
};

class DislocationMeasure {
 public:
  virtual ~DislocationMeasure() = default;
  virtual std::string name() const = 0;

  // int g(s) (1 - s_1) nu(ds)
  virtual double integral(
      const std::function<double(std::span<const double>)>& g) const = 0;
  // int sum_i (1 - s_i^lambda) s_i nu(ds)
  virtual double phi(double lambda) const = 0;
  // int sum_i s_i (1 - s_i) g(s_i) nu(ds)
  virtual double mu_integral(const std::function<double(double)>& g) const = 0;
};

using MeasurePtr = std::shared_ptr<const DislocationMeasure>;

// Binary measure nu(s_1 in dx) = density(x) dx on [1/2, 1], s = (x, 1-x).
// Integrals run two independent quadrature rules (tanh-sinh and
// Gauss-Kronrod) and report failure if they disagree beyond tolerance.
MeasurePtr binary_density_measure(std::string name,
                                  std::function<double(double)> density,
                                  double rel_tol = 1e-6);

// nu_Br: sqrt(2/pi) x^{-3/2} (1-x)^{-3/2} dx on (1/2, 1).
MeasurePtr nu_br();
// nu_Ford,alpha: [alpha (x(1-x))^{-alpha-1} + (2-4 alpha)(x(1-x))^{-alpha}]
//                / Gamma(1-alpha) dx on (1/2, 1); alpha in (0,1).
MeasurePtr nu_ford(double alpha);
// Binary-case density of nu_Ford at s_1 = x (for pointwise checks).
double nu_ford_density(double alpha, double x);
double nu_br_density(double x);

// nu_k on the k-simplex {sum s_i = 1, s_1 >= ... >= s_k}:
//   (k-1)! / (k Gamma(1/k)^{k-1}) prod_i s_i^{-(1-1/k)} sum_i 1/(1-s_i).
// k = 2 reduces to a binary density; k = 3 integrates by nested
// quadrature; larger k is not supported.
MeasurePtr nu_k(uint64_t k);
double nu_k_density(uint64_t k, std::span<const double> s);

// Stable dislocation measure via Monte Carlo: int f dnu = C_alpha *
// E[T_1 f(Xi_i / T_1)], Xi the decreasing gap lengths between atoms of a
// Poisson measure with intensity (alpha Gamma(1-1/alpha))^{-1}
// r^{-1-1/alpha} dr and T_1 the largest atom. Atoms below eps are not
// simulated; the interval below the smallest simulated atom is kept as
// one fragment so mass partitions stay conservative. Experimental.
MeasurePtr nu_stable(double alpha, uint64_t n_samples, uint64_t seed = 9001,
                     double eps_fraction = 1e-4);

// Draws one mass partition from the stable-measure simulation kernel
// (the normalized gap sequence, without the T_1 biasing).
MassPartition stable_gap_partition(double alpha, double eps, Rng& rng);

}  // namespace mbt
