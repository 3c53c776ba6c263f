#pragma once

#include <cmath>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "poroperm/errors.hpp"

namespace poroperm {

/// theta = 1 - (1 - theta0) exp(-div_u). Values <= 0 are degenerate and are
/// returned unchanged for the caller to flag.
template <typename Scalar>
Scalar porosity_from_dilatation(Scalar div_u, Scalar theta0) {
  using std::exp;
  return Scalar(1) - (Scalar(1) - theta0) * exp(-div_u);
}

template <typename Derived>
auto porosity_from_dilatation(const Eigen::ArrayBase<Derived>& div_u, typename Derived::Scalar theta0) {
  using Scalar = typename Derived::Scalar;
  return (Scalar(1) - (Scalar(1) - theta0) * (-div_u).exp()).eval();
}

/// Inverse of porosity_from_dilatation; theta must be < 1.
template <typename Scalar>
Scalar dilatation_from_porosity(Scalar theta, Scalar theta0) {
  using std::log;
  if (!(theta < Scalar(1))) throw DomainError("porosity must be below 1");
  return log((Scalar(1) - theta0) / (Scalar(1) - theta));
}

/// Kozeny-Carman: kappa = d_s^2 / 180 * theta^3 / (1 - theta)^2.
/// theta >= 1 throws; theta < 0 yields 0 and sets *degenerate.
template <typename Scalar>
Scalar kozeny_carman(Scalar theta, Scalar d_s, bool* degenerate = nullptr) {
  if (!(theta < Scalar(1))) throw DomainError("kozeny_carman: porosity must be below 1");
  if (theta < Scalar(0)) {
    if (degenerate) *degenerate = true;
    return Scalar(0);
  }
  const Scalar one_minus = Scalar(1) - theta;
  return d_s * d_s / Scalar(180) * theta * theta * theta / (one_minus * one_minus);
}

template <typename Derived>
auto kozeny_carman(const Eigen::ArrayBase<Derived>& theta, typename Derived::Scalar d_s) {
  using Scalar = typename Derived::Scalar;
  return theta.unaryExpr([d_s](Scalar t) { return kozeny_carman(t, d_s); }).eval();
}

/// Linear above the threshold porosity theta_hat, zero below:
/// kappa = kappa0 (theta - theta_hat) / (theta0 - theta_hat).
template <typename Scalar>
Scalar network_inspired(Scalar theta, Scalar theta0, Scalar theta_hat, Scalar kappa0) {
  if (!(theta_hat >= Scalar(0) && theta_hat < theta0))
    throw ParameterError("network_inspired: need 0 <= theta_hat < theta0");
  if (theta < theta_hat) return Scalar(0);
  return kappa0 * (theta - theta_hat) / (theta0 - theta_hat);
}

template <typename Derived>
auto network_inspired(const Eigen::ArrayBase<Derived>& theta, typename Derived::Scalar theta0,
                      typename Derived::Scalar theta_hat, typename Derived::Scalar kappa0) {
  using Scalar = typename Derived::Scalar;
  if (!(theta_hat >= Scalar(0) && theta_hat < theta0))
    throw ParameterError("network_inspired: need 0 <= theta_hat < theta0");
  return (kappa0 * (theta - theta_hat).max(Scalar(0)) / (theta0 - theta_hat)).eval();
}

struct KozenyCarman {
  double d_s = 2.0e-4;
};

struct NetworkInspired {
  double p_c = 0.0;
  double theta0 = 0.4;
  double kappa0 = 0.0;
  double theta_hat() const noexcept { return p_c * theta0; }
};

/// Closed-form kappa(theta) closure.
class PermeabilityRelation {
 public:
  static PermeabilityRelation kozeny_carman(double d_s);
  /// kappa0 comes from Kozeny-Carman at theta0 with grain size d_s.
  static PermeabilityRelation network_inspired(double p_c, double theta0, double d_s);

  const std::variant<KozenyCarman, NetworkInspired>& variant() const noexcept { return v_; }
  bool is_network_inspired() const noexcept { return std::holds_alternative<NetworkInspired>(v_); }

  /// kappa(theta); theta <= 0 gives 0 and sets *degenerate.
  double operator()(double theta, bool* degenerate = nullptr) const;
  /// kappa at the reference porosity theta0.
  double reference(double theta0) const;
  std::string describe() const;

 private:
  explicit PermeabilityRelation(std::variant<KozenyCarman, NetworkInspired> v) : v_(v) {}
  std::variant<KozenyCarman, NetworkInspired> v_;
};

struct CurvePoint {
  double theta_norm;
  double kappa_norm;
};

/// Samples (theta / theta0, kappa / kappa(theta0)) on a grid within (0, theta0].
std::vector<CurvePoint> export_curve(const PermeabilityRelation& relation, double theta0,
                                     std::span<const double> theta_grid);

void write_curve_csv(std::ostream& os, std::span<const CurvePoint> curve);

}  // namespace poroperm
