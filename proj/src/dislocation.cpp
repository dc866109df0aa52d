#include "mbt/dislocation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace mbt {

MassPartition::MassPartition(std::vector<double> v) : s(std::move(v)) {
  double acc = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0) throw std::invalid_argument("mass partition: negative entry");
    if (i > 0 && s[i] > s[i - 1] + 1e-15)
      throw std::invalid_argument("mass partition: not non-increasing");
    acc += s[i];
  }
  if (acc > 1.0 + 1e-12)
    throw std::invalid_argument("mass partition: sum exceeds 1");
}

double MassPartition::sum() const {
  double acc = 0;
  for (double x : s) acc += x;
  return acc;
}

namespace {

// Integrates F over (1/2, 1) with an integrable algebraic singularity
// allowed at 1, by two independent rules: tanh-sinh on the raw interval
// and adaptive Gauss-Kronrod after the substitution x = 1 - u^4 (which
// flattens (1-x)^{-a} for a < 1).
double dual_integrate(const std::function<double(double)>& F, double rel_tol,
                      const std::string& what) {
  boost::math::quadrature::tanh_sinh<double> ts;
  double v1 = ts.integrate(F, 0.5, 1.0);
  auto sub = [&](double u) { return F(1.0 - u * u * u * u) * 4.0 * u * u * u; };
  double err = 0;
  double v2 = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      sub, 0.0, std::pow(0.5, 0.25), 12, 1e-10, &err);
  if (!std::isfinite(v1) || !std::isfinite(v2))
    throw std::runtime_error("quadrature diverged for " + what);
  double scale = std::max({std::abs(v1), std::abs(v2), 1e-30});
  if (std::abs(v1 - v2) / scale > rel_tol)
    throw std::runtime_error("quadrature rules disagree for " + what + ": " +
                             std::to_string(v1) + " vs " + std::to_string(v2));
  return 0.5 * (v1 + v2);
}

class BinaryDensityMeasure final : public DislocationMeasure {
 public:
  BinaryDensityMeasure(std::string name, std::function<double(double)> density,
                       double rel_tol)
      : name_(std::move(name)), h_(std::move(density)), rel_tol_(rel_tol) {}

  std::string name() const override { return name_; }

  double integral(const std::function<double(std::span<const double>)>& g)
      const override {
    return dual_integrate(
        [&](double x) {
          double y = 1.0 - x;
          if (y <= 0.0 || x <= 0.0) return 0.0;
          double s[2] = {x, y};
          return g(std::span<const double>(s, 2)) * y * h_(x);
        },
        rel_tol_, name_ + ".integral");
  }

  double phi(double lambda) const override {
    if (lambda == 0.0) return 0.0;
    return dual_integrate(
        [&](double x) {
          double y = 1.0 - x;
          if (y <= 0.0 || x <= 0.0) return 0.0;
          double a = (1.0 - std::pow(x, lambda)) * x;
          double b = (1.0 - std::pow(y, lambda)) * y;
          return (a + b) * h_(x);
        },
        rel_tol_, name_ + ".phi");
  }

  double mu_integral(const std::function<double(double)>& g) const override {
    return dual_integrate(
        [&](double x) {
          double y = 1.0 - x;
          if (y <= 0.0 || x <= 0.0) return 0.0;
          return x * y * (g(x) + g(y)) * h_(x);
        },
        rel_tol_, name_ + ".mu");
  }

 private:
  std::string name_;
  std::function<double(double)> h_;
  double rel_tol_;
};

// nu_3 on the 2-simplex via nested tanh-sinh over the unordered simplex
// divided by 3!.
class TernaryMeasure final : public DislocationMeasure {
 public:
  std::string name() const override { return "nu_k:k=3"; }

  double integral(const std::function<double(std::span<const double>)>& g)
      const override {
    return simplex([&](std::span<const double> s) {
      return (1.0 - s[0]) * g(s);
    });
  }

  double phi(double lambda) const override {
    if (lambda == 0.0) return 0.0;
    return simplex([&](std::span<const double> s) {
      double acc = 0;
      for (double x : s)
        if (x > 0) acc += (1.0 - std::pow(x, lambda)) * x;
      return acc;
    });
  }

  double mu_integral(const std::function<double(double)>& g) const override {
    return simplex([&](std::span<const double> s) {
      double acc = 0;
      for (double x : s) acc += x * (1.0 - x) * g(x);
      return acc;
    });
  }

 private:
  // int_{s1>=s2>=s3} G(s) nu_3(ds) = (1/6) int_{simplex} G(sort(s)) D(s).
  double simplex(const std::function<double(std::span<const double>)>& G) const {
    boost::math::quadrature::tanh_sinh<double> outer(10), inner(10);
    auto f_outer = [&](double u) {
      if (u <= 0.0 || u >= 1.0) return 0.0;
      auto f_inner = [&](double v) {
        double w = 1.0 - u - v;
        if (v <= 0.0 || w <= 0.0) return 0.0;
        double s[3] = {u, v, w};
        std::sort(s, s + 3, std::greater<double>());
        double d = nu_k_density(3, std::span<const double>(s, 3));
        return G(std::span<const double>(s, 3)) * d;
      };
      return inner.integrate(f_inner, 0.0, 1.0 - u);
    };
    double v = outer.integrate(f_outer, 0.0, 1.0) / 6.0;
    if (!std::isfinite(v))
      throw std::runtime_error("quadrature diverged for nu_k:k=3");
    return v;
  }
};

std::pair<MassPartition, double> stable_gap_draw(double alpha, double eps,
                                                 Rng& rng) {
  // Atoms above eps of the Poisson measure with intensity
  // (alpha Gamma(1-1/alpha))^{-1} r^{-1-1/alpha} dr: Poisson count with
  // mean eps^{-1/alpha} / Gamma(1-1/alpha), Pareto positions. Gaps
  // between successive atoms tile (0, T1]; the region below the
  // smallest simulated atom is kept as a single fragment so mass
  // partitions stay conservative.
  const double mean_count =
      std::pow(eps, -1.0 / alpha) / std::tgamma(1.0 - 1.0 / alpha);
  uint64_t count = 0;
  double acc = 0;
  while (true) {
    acc += -std::log(rng.next_double_pos());
    if (acc > mean_count) break;
    ++count;
  }
  if (count == 0) return {MassPartition(std::vector<double>{1.0}), eps};
  std::vector<double> atoms(count);
  for (auto& a : atoms) a = eps * std::pow(rng.next_double_pos(), -alpha);
  std::sort(atoms.begin(), atoms.end(), std::greater<double>());
  const double t1 = atoms.front();
  std::vector<double> gaps;
  gaps.reserve(count);
  for (size_t i = 0; i + 1 < atoms.size(); ++i)
    gaps.push_back(atoms[i] - atoms[i + 1]);
  gaps.push_back(atoms.back());
  for (auto& g : gaps) g /= t1;
  std::sort(gaps.begin(), gaps.end(), std::greater<double>());
  return {MassPartition(std::move(gaps)), t1};
}

class StableMeasure final : public DislocationMeasure {
 public:
  StableMeasure(double alpha, uint64_t n_samples, uint64_t seed, double eps)
      : alpha_(alpha) {
    if (!(alpha > 1.0 && alpha < 2.0))
      throw std::invalid_argument("nu_stable: alpha in (1,2)");
    c_alpha_ = alpha * (alpha - 1.0) * std::tgamma(1.0 - 1.0 / alpha) /
               std::tgamma(2.0 - alpha);
    Rng rng(seed);
    draws_.reserve(n_samples);
    for (uint64_t i = 0; i < n_samples; ++i) {
      auto [part, t1] = stable_gap_draw(alpha, eps, rng);
      draws_.push_back(Draw{std::move(part), t1});
    }
  }

  std::string name() const override {
    return "nu_stable:alpha=" + std::to_string(alpha_);
  }

  double integral(const std::function<double(std::span<const double>)>& g)
      const override {
    return average([&](const MassPartition& m, double t1) {
      return t1 * (1.0 - m.s[0]) * g(std::span<const double>(m.s));
    });
  }

  double phi(double lambda) const override {
    if (lambda == 0.0) return 0.0;
    return average([&](const MassPartition& m, double t1) {
      double acc = 0;
      for (double x : m.s)
        if (x > 0) acc += (1.0 - std::pow(x, lambda)) * x;
      return t1 * acc;
    });
  }

  double mu_integral(const std::function<double(double)>& g) const override {
    return average([&](const MassPartition& m, double t1) {
      double acc = 0;
      for (double x : m.s) acc += x * (1.0 - x) * g(x);
      return t1 * acc;
    });
  }

 private:
  double average(
      const std::function<double(const MassPartition&, double)>& f) const {
    double acc = 0;
    for (const auto& d : draws_) acc += f(d.partition, d.t1);
    return c_alpha_ * acc / static_cast<double>(draws_.size());
  }

  struct Draw {
    MassPartition partition;
    double t1;
  };
  // Stored draws keep (gaps / T1, T1).
  std::vector<Draw> draws_;
  double alpha_;
  double c_alpha_;
};

}  // namespace

MassPartition stable_gap_partition(double alpha, double eps, Rng& rng) {
  return stable_gap_draw(alpha, eps, rng).first;
}
MeasurePtr binary_density_measure(std::string name,
                                  std::function<double(double)> density,
                                  double rel_tol) {
  return std::make_shared<BinaryDensityMeasure>(std::move(name),
                                                std::move(density), rel_tol);
}

double nu_br_density(double x) {
  return std::sqrt(2.0) /
         (std::sqrt(M_PI) * std::pow(x, 1.5) * std::pow(1.0 - x, 1.5));
}

MeasurePtr nu_br() {
  return binary_density_measure("nu_Br", [](double x) { return nu_br_density(x); });
}

double nu_ford_density(double alpha, double x) {
  double xy = x * (1.0 - x);
  return (alpha * std::pow(xy, -alpha - 1.0) +
          (2.0 - 4.0 * alpha) * std::pow(xy, -alpha)) /
         std::tgamma(1.0 - alpha);
}

MeasurePtr nu_ford(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("nu_ford: alpha in (0,1)");
  return binary_density_measure(
      "nu_Ford:alpha=" + std::to_string(alpha),
      [alpha](double x) { return nu_ford_density(alpha, x); });
}

double nu_k_density(uint64_t k, std::span<const double> s) {
  if (s.size() != k) throw std::invalid_argument("nu_k_density: need k masses");
  double lg = std::lgamma(static_cast<double>(k)) -
              std::log(static_cast<double>(k)) -
              (static_cast<double>(k) - 1.0) *
                  std::lgamma(1.0 / static_cast<double>(k));
  double rate = 0;
  for (double x : s) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    lg += -(1.0 - 1.0 / static_cast<double>(k)) * std::log(x);
    rate += 1.0 / (1.0 - x);
  }
  return std::exp(lg) * rate;
}

MeasurePtr nu_k(uint64_t k) {
  if (k == 2) {
    // Reduces to a binary density: prod s_i^{-1/2} * (1/s1 + 1/s2)
    //   / (2 Gamma(1/2)) = (x(1-x))^{-3/2} / (2 sqrt(pi)).
    return binary_density_measure("nu_k:k=2", [](double x) {
      double s[2] = {x, 1.0 - x};
      return nu_k_density(2, std::span<const double>(s, 2));
    });
  }
  if (k == 3) return std::make_shared<TernaryMeasure>();
  throw std::invalid_argument("nu_k: only k = 2, 3 supported by quadrature");
}

MeasurePtr nu_stable(double alpha, uint64_t n_samples, uint64_t seed,
                     double eps_fraction) {
  return std::make_shared<StableMeasure>(alpha, n_samples, seed, eps_fraction);
}

}  // namespace mbt
