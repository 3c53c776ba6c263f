#include "poroperm/relations.hpp"

#include <limits>
#include <ostream>
#include <sstream>

namespace poroperm {

PermeabilityRelation PermeabilityRelation::kozeny_carman(double d_s) {
  if (!(d_s > 0.0)) throw ParameterError("kozeny_carman: grain size must be positive");
  return PermeabilityRelation(KozenyCarman{d_s});
}

PermeabilityRelation PermeabilityRelation::network_inspired(double p_c, double theta0, double d_s) {
  if (!(p_c >= 0.0 && p_c < 1.0)) throw ParameterError("network_inspired: p_c must lie in [0, 1)");
  if (!(theta0 > 0.0 && theta0 < 1.0)) throw ParameterError("network_inspired: theta0 must lie in (0, 1)");
  if (!(d_s > 0.0)) throw ParameterError("network_inspired: grain size must be positive");
  return PermeabilityRelation(NetworkInspired{p_c, theta0, poroperm::kozeny_carman(theta0, d_s)});
}

double PermeabilityRelation::operator()(double theta, bool* degenerate) const {
  if (theta <= 0.0) {
    if (degenerate && theta < 0.0) *degenerate = true;
    return 0.0;
  }
  if (const auto* kc = std::get_if<KozenyCarman>(&v_)) return poroperm::kozeny_carman(theta, kc->d_s, degenerate);
  const auto& ni = std::get<NetworkInspired>(v_);
  return poroperm::network_inspired(theta, ni.theta0, ni.theta_hat(), ni.kappa0);
}

double PermeabilityRelation::reference(double theta0) const {
  if (const auto* ni = std::get_if<NetworkInspired>(&v_)) return ni->kappa0;
  return (*this)(theta0);
}

std::string PermeabilityRelation::describe() const {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  if (const auto* kc = std::get_if<KozenyCarman>(&v_)) {
    os << "relation=kozeny-carman d_s=" << kc->d_s;
  } else {
    const auto& ni = std::get<NetworkInspired>(v_);
    os << "relation=network-inspired p_c=" << ni.p_c << " theta0=" << ni.theta0 << " kappa0=" << ni.kappa0;
  }
  return os.str();
}

std::vector<CurvePoint> export_curve(const PermeabilityRelation& relation, double theta0,
                                     std::span<const double> theta_grid) {
  const double kappa_ref = relation.reference(theta0);
  std::vector<CurvePoint> out;
  out.reserve(theta_grid.size());
  for (double theta : theta_grid) {
    if (!(theta > 0.0 && theta <= theta0)) throw ParameterError("export_curve: grid must lie within (0, theta0]");
    out.push_back({theta / theta0, relation(theta) / kappa_ref});
  }
  return out;
}

void write_curve_csv(std::ostream& os, std::span<const CurvePoint> curve) {
  os << "theta_norm,kappa_norm\n";
  const auto old = os.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& p : curve) os << p.theta_norm << ',' << p.kappa_norm << '\n';
  os.precision(old);
}

}  // namespace poroperm
