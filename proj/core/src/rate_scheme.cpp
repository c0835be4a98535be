#include "fou/rate_scheme.hpp"

#include <cmath>
#include <string>

#include "fou/errors.hpp"

namespace fou {

SchemeKind parse_scheme_kind(std::string_view name) {
  if (name == "scheme_A" || name == "A" || name == "a") return SchemeKind::kA;
  if (name == "scheme_B" || name == "B" || name == "b") return SchemeKind::kB;
  if (name == "custom") return SchemeKind::kCustom;
  throw DomainError("unknown rate scheme '" + std::string(name) + "' (expected scheme_A or scheme_B)");
}

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kA: return "scheme_A";
    case SchemeKind::kB: return "scheme_B";
    case SchemeKind::kCustom: return "custom";
  }
  return "custom";
}

RateScheme::RateScheme(SchemeKind kind, double alpha0, double mu0, double hurst, MatrixFn phi, Mat2 phi_bar)
    : kind_(kind), alpha0_(alpha0), mu0_(mu0), hurst_(hurst), phi_(std::move(phi)), phi_bar_(phi_bar) {
  if (!(alpha0 > 0.0)) throw DomainError("RateScheme: alpha0 must be positive");
  if (!phi_) throw DomainError("RateScheme: phi must be callable");
}

Mat2 RateScheme::phi(double horizon) const {
  if (!(horizon > 0.0)) throw DomainError("RateScheme: horizon must be positive");
  return phi_(horizon);
}

Mat2 RateScheme::s_matrix(double horizon) const {
  const double slow = std::pow(horizon, 1.0 - hurst_);
  return {std::sqrt(horizon), mu0_ * slow, 0.0, -slow};
}

Mat2 RateScheme::psi(double horizon) const {
  const Mat2 jacobian{1.0, 0.0, mu0_, alpha0_};
  return inverse(jacobian) * phi(horizon);
}

RateScheme make_rate_scheme(SchemeKind kind, double alpha0, double mu0, double hurst) {
  const double h = hurst;
  switch (kind) {
    case SchemeKind::kA:
      return RateScheme(kind, alpha0, mu0, hurst, [mu0, h](double t) {
        const double fast = 1.0 / std::sqrt(t);
        return Mat2{fast, 0.0, mu0 * fast, -std::pow(t, h - 1.0)};
      }, Mat2::identity());
    case SchemeKind::kB:
      if (mu0 == 0.0) throw DomainError("scheme_B divides by mu0; mu0 must be nonzero");
      return RateScheme(kind, alpha0, mu0, hurst, [mu0, h](double t) {
        const double fast = 1.0 / std::sqrt(t);
        return Mat2{std::pow(t, h - 1.0) / mu0, fast, 0.0, mu0 * fast};
      }, Mat2{0.0, 1.0, 1.0, 0.0});
    case SchemeKind::kCustom:
      break;
  }
  throw DomainError("make_rate_scheme: custom schemes are built with the RateScheme constructor");
}

RateSchemeCheck check_rate_scheme(const RateScheme& scheme, const std::vector<double>& horizons) {
  RateSchemeCheck check;
  check.horizons = horizons;
  check.det_phi_bar = scheme.phi_bar().det();
  bool ok = check.det_phi_bar != 0.0 && !horizons.empty();
  for (const double t : horizons) {
    check.det_phi.push_back(scheme.phi(t).det());
    check.distance.push_back(max_abs_diff(scheme.phi_tilde(t), scheme.phi_bar()));
    ok = ok && check.det_phi.back() != 0.0 && std::isfinite(check.distance.back());
  }
  for (std::size_t i = 1; i < check.distance.size(); ++i) {
    ok = ok && check.distance[i] <= check.distance[i - 1] + 1e-12;
  }
  check.passed = ok;
  return check;
}

FisherInfo fisher_info(const RateScheme& scheme, double sigma, const HurstConstant& constants) {
  if (!(sigma > 0.0)) throw DomainError("fisher_info: sigma must be positive");
  const Mat2& bar = scheme.phi_bar();
  if (bar.det() == 0.0) throw DomainError("fisher_info: phi_bar is singular");
  const Mat2 centre = Mat2::diag(1.0 / (2.0 * scheme.alpha0()), 1.0 / (sigma * sigma * constants.lambda));
  FisherInfo info;
  info.matrix = bar.transpose() * centre * bar;
  const Mat2 bar_inv = inverse(bar);
  const Mat2 centre_inv = Mat2::diag(2.0 * scheme.alpha0(), sigma * sigma * constants.lambda);
  info.inverse = bar_inv * centre_inv * bar_inv.transpose();
  return info;
}

}  // namespace fou
