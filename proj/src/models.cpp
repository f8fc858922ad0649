#include "degmlmc/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "degmlmc/quadrature.hpp"

namespace degmlmc {

void TwoPhaseParams::validate() const {
  if (!(nu > 0.0)) throw std::invalid_argument("TwoPhaseParams: nu must be positive");
  if (!(eps_reg > 0.0 && eps_reg < 1e-3))
    throw std::invalid_argument("TwoPhaseParams: eps_reg must lie in (0, 1e-3)");
  if (!std::isfinite(q) || !std::isfinite(k_bar) || !(k_bar > 0.0))
    throw std::invalid_argument("TwoPhaseParams: q and k_bar must be finite, k_bar > 0");
}

PermeabilityPair exponent_permeability(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("exponent_permeability: p must be positive");
  PermeabilityPair perm;
  perm.lambda_w = [p](double s) { return std::pow(std::abs(s), p); };
  perm.lambda_o = [p](double s) { return std::pow(std::abs(1.0 - s), p); };
  perm.dlambda_w = [p](double s) {
    if (s == 0.0) return 0.0;
    return std::copysign(p * std::pow(std::abs(s), p - 1.0), s);
  };
  perm.dlambda_o = [p](double s) {
    const double r = 1.0 - s;
    if (r == 0.0) return 0.0;
    return -std::copysign(p * std::pow(std::abs(r), p - 1.0), r);
  };
  std::ostringstream os;
  os.precision(17);
  os << "exponent p=" << p;
  perm.label = os.str();
  return perm;
}

PermeabilityPair residual_permeability(double sw, double so) {
  if (!(sw >= 0.0 && sw < so && so <= 1.0))
    throw std::invalid_argument("residual_permeability: need 0 <= s_w* < s_o* <= 1");
  const double norm_w = (1.0 - sw) * (1.0 - sw);
  PermeabilityPair perm;
  perm.lambda_w = [sw, norm_w](double s) { return s > sw ? (s - sw) * (s - sw) / norm_w : 0.0; };
  perm.lambda_o = [so](double s) {
    const double r = 1.0 - s / so;
    return s <= so ? r * r : 0.0;
  };
  perm.dlambda_w = [sw, norm_w](double s) { return s > sw ? 2.0 * (s - sw) / norm_w : 0.0; };
  perm.dlambda_o = [so](double s) { return s <= so ? -2.0 * (1.0 - s / so) / so : 0.0; };
  std::ostringstream os;
  os.precision(17);
  os << "residual s_w=" << sw << " s_o=" << so;
  perm.label = os.str();
  return perm;
}

double capillary_pressure(double s) {
  if (!(s > 0.0 && s <= 1.0))
    throw std::domain_error("capillary_pressure: saturation must lie in (0, 1]");
  return -std::pow(std::pow(s, -4.0 / 3.0) - 1.0, 0.25);
}

double capillary_pressure_derivative(double s) {
  if (!(s > 0.0 && s < 1.0))
    throw std::domain_error("capillary_pressure_derivative: saturation must lie in (0, 1)");
  return std::pow(s, -7.0 / 3.0) * std::pow(std::pow(s, -4.0 / 3.0) - 1.0, -0.75) / 3.0;
}

double diffusion_coefficient(double s, const PermeabilityPair& perm,
                             const TwoPhaseParams& params) {
  if (!(s > 0.0 && s < 1.0)) return 0.0;
  const double sc = std::clamp(s, params.eps_reg, 1.0 - params.eps_reg);
  const double lw = perm.lambda_w(sc);
  const double lo = perm.lambda_o(sc);
  const double total = lw + lo;
  if (total <= 0.0) return 0.0;
  const double a = params.nu * params.k_bar * (lw * lo / total) * capillary_pressure_derivative(sc);
  return std::max(a, 0.0);
}

double fractional_flow(double s, const PermeabilityPair& perm, const TwoPhaseParams& params) {
  double lw = perm.lambda_w(s);
  double lo = perm.lambda_o(s);
  if (lw + lo <= 0.0) {
    // Both phases immobile: take the value just to the left.
    const double left = s - 1e-7;
    lw = perm.lambda_w(left);
    lo = perm.lambda_o(left);
    if (lw + lo <= 0.0) return 0.0;
  }
  return params.q * lw / (lw + lo);
}

double fractional_flow_derivative(double s, const PermeabilityPair& perm,
                                  const TwoPhaseParams& params) {
  if (!perm.dlambda_w || !perm.dlambda_o) {
    constexpr double h = 1e-7;
    return (fractional_flow(s + h, perm, params) - fractional_flow(s - h, perm, params)) / (2 * h);
  }
  const double lw = perm.lambda_w(s);
  const double lo = perm.lambda_o(s);
  const double total = lw + lo;
  if (total <= 0.0) return 0.0;
  return params.q * (perm.dlambda_w(s) * lo - lw * perm.dlambda_o(s)) / (total * total);
}

FluxModel build_flux_model(const PermeabilityPair& perm, const TwoPhaseParams& params,
                           double m_minus, double m_plus) {
  params.validate();
  if (!(m_plus > m_minus)) throw std::invalid_argument("build_flux_model: need m_minus < m_plus");
  ScalarFunction a = [perm, params](double s) { return diffusion_coefficient(s, perm, params); };
  // a vanishes on (-inf, 0], so A(m_minus) = int_0^m_minus a is zero for m_minus <= 0.
  const double A_lo = m_minus > 0.0 ? integrate_adaptive(a, 0.0, m_minus, 1e-10) : 0.0;
  auto table = std::make_shared<const MonotoneTable>(
      tabulate_primitive(a, m_minus, m_plus, A_lo, kTableNodes, 1e-10));

  std::ostringstream desc;
  desc.precision(17);
  desc << "perm=" << perm.label << " q=" << params.q << " k_bar=" << params.k_bar
       << " nu=" << params.nu << " eps_reg=" << params.eps_reg;
  return FluxModel::from_functions(
      [perm, params](double s) { return fractional_flow(s, perm, params); },
      [perm, params](double s) { return fractional_flow_derivative(s, perm, params); },
      [table](double s) { return table->value(s); }, a, m_minus, m_plus, desc.str());
}

std::string to_string(InitialDataKind kind) {
  return kind == InitialDataKind::riemann_u02 ? "riemann_u02" : "sine";
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::random_exponent: return "random_exponent";
    case ModelKind::random_residual: return "random_residual";
    case ModelKind::deterministic: return "deterministic";
  }
  return "unknown";
}

InitialDataKind parse_initial_data_kind(const std::string& name) {
  if (name == "riemann_u02") return InitialDataKind::riemann_u02;
  if (name == "sine") return InitialDataKind::sine;
  throw std::invalid_argument("unknown initial data '" + name + "' (expected riemann_u02|sine)");
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "random_exponent") return ModelKind::random_exponent;
  if (name == "random_residual") return ModelKind::random_residual;
  if (name == "deterministic") return ModelKind::deterministic;
  throw std::invalid_argument("unknown model '" + name +
                              "' (expected random_exponent|random_residual|deterministic)");
}

InitialData initial_data(InitialDataKind kind) {
  if (kind == InitialDataKind::riemann_u02) {
    return InitialData{[](double x) {
                         // One period of the periodically extended step data.
                         double y = std::fmod(x, 2.0);
                         if (y < 0.0) y += 2.0;
                         return (y >= 0.1 && y < 1.0) ? 0.8 : 0.1;
                       },
                       0.0, 2.0, {0.1, 1.0}, "riemann_u02"};
  }
  return InitialData{[](double x) { return std::sin(4.0 * std::numbers::pi * x); }, 0.0, 0.5, {},
                     "sine"};
}

std::pair<double, double> initial_data_range(InitialDataKind kind) {
  return kind == InitialDataKind::riemann_u02 ? std::pair{0.1, 0.8} : std::pair{-1.0, 1.0};
}

void RandomDataModel::validate() const {
  params.validate();
  if (!(p_min < p_max && p_min > 0.0)) throw std::invalid_argument("RandomDataModel: bad p range");
  if (!(sw_min < sw_max && so_min < so_max && sw_min >= 0.0 && so_max <= 1.0 && sw_max < so_min))
    throw std::invalid_argument("RandomDataModel: bad residual saturation ranges");
  if (!(deterministic_p > 0.0)) throw std::invalid_argument("RandomDataModel: bad p");
}

std::size_t RandomDataModel::parameter_dimension() const {
  switch (kind) {
    case ModelKind::random_exponent: return 1;
    case ModelKind::random_residual: return 2;
    case ModelKind::deterministic: return 0;
  }
  return 0;
}

std::vector<std::pair<double, double>> RandomDataModel::parameter_box() const {
  switch (kind) {
    case ModelKind::random_exponent: return {{p_min, p_max}};
    case ModelKind::random_residual: return {{sw_min, sw_max}, {so_min, so_max}};
    case ModelKind::deterministic: return {};
  }
  return {};
}

std::string RandomDataModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "model=" << to_string(kind) << " initial_data=" << to_string(initial)
     << " nu=" << params.nu << " q=" << params.q << " k_bar=" << params.k_bar
     << " eps_reg=" << params.eps_reg;
  switch (kind) {
    case ModelKind::random_exponent: os << " p~U(" << p_min << "," << p_max << ")"; break;
    case ModelKind::random_residual:
      os << " s_w~U(" << sw_min << "," << sw_max << ") s_o~U(" << so_min << "," << so_max << ")";
      break;
    case ModelKind::deterministic: os << " p=" << deterministic_p; break;
  }
  return os.str();
}

DataSample build_sample(const RandomDataModel& model, std::span<const double> parameters) {
  if (parameters.size() != model.parameter_dimension())
    throw std::invalid_argument("build_sample: expected " +
                                std::to_string(model.parameter_dimension()) + " parameters");
  PermeabilityPair perm;
  switch (model.kind) {
    case ModelKind::random_exponent: perm = exponent_permeability(parameters[0]); break;
    case ModelKind::random_residual:
      perm = residual_permeability(parameters[0], parameters[1]);
      break;
    case ModelKind::deterministic: perm = exponent_permeability(model.deterministic_p); break;
  }
  const auto [lo, hi] = initial_data_range(model.initial);
  return DataSample{initial_data(model.initial), build_flux_model(perm, model.params, lo, hi),
                    std::vector<double>(parameters.begin(), parameters.end())};
}

std::vector<double> draw_parameters(const RandomDataModel& model, SeedStream& stream) {
  std::vector<double> params;
  for (const auto& [lo, hi] : model.parameter_box()) params.push_back(uniform(stream, lo, hi));
  return params;
}

DataSample draw_sample(const RandomDataModel& model, SeedStream& stream) {
  return build_sample(model, draw_parameters(model, stream));
}

}  // namespace degmlmc
