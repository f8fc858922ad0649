#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "degmlmc/flux.hpp"
#include "degmlmc/grid.hpp"
#include "degmlmc/sampling.hpp"

namespace degmlmc {

struct TwoPhaseParams {
  double q = 1.0;        // total flow rate
  double k_bar = 1.0;    // rock permeability
  double nu = 0.01;      // capillary scaling
  double eps_reg = 1e-9; // clamp for evaluating p_c' near 0 and 1

  void validate() const;
};

/// Water and oil mobilities. Derivatives are optional; when empty,
/// fractional_flow_derivative falls back to central differences.
struct PermeabilityPair {
  ScalarFunction lambda_w;
  ScalarFunction lambda_o;
  ScalarFunction dlambda_w;
  ScalarFunction dlambda_o;
  std::string label;
};

/// lambda_w = |s|^p, lambda_o = |1 - s|^p.
PermeabilityPair exponent_permeability(double p);
/// Quadratic mobilities with residual saturations s_w* < s_o*.
PermeabilityPair residual_permeability(double s_w_star, double s_o_star);

/// p_c(s) = -(s^(-4/3) - 1)^(1/4) for s in (0, 1].
double capillary_pressure(double s);
/// p_c'(s) = (1/3) s^(-7/3) (s^(-4/3) - 1)^(-3/4) for s in (0, 1).
double capillary_pressure_derivative(double s);

/// a(s) = nu K lambda_w lambda_o / (lambda_w + lambda_o) p_c'(s) on
/// [eps, 1 - eps], clamped inside the bands, zero outside (0, 1).
double diffusion_coefficient(double s, const PermeabilityPair& perm, const TwoPhaseParams& params);

/// f(s) = q lambda_w / (lambda_w + lambda_o).
double fractional_flow(double s, const PermeabilityPair& perm, const TwoPhaseParams& params);
double fractional_flow_derivative(double s, const PermeabilityPair& perm,
                                  const TwoPhaseParams& params);

/// Flux model on [m_minus, m_plus]: f = fractional flow, A = tabulated
/// primitive int_0^s a, dA = a. Throws QuadratureFailure on table failure.
FluxModel build_flux_model(const PermeabilityPair& perm, const TwoPhaseParams& params,
                           double m_minus, double m_plus);

enum class InitialDataKind { riemann_u02, sine };
enum class ModelKind { random_exponent, random_residual, deterministic };

std::string to_string(InitialDataKind kind);
std::string to_string(ModelKind kind);
InitialDataKind parse_initial_data_kind(const std::string& name);
ModelKind parse_model_kind(const std::string& name);

/// riemann_u02: 0.1 on [0,0.1) and [1,2), 0.8 on [0.1,1), domain [0,2].
/// sine: sin(4 pi x) on [0, 0.5].
InitialData initial_data(InitialDataKind kind);
/// Range of the initial data, used as the admissible state interval.
std::pair<double, double> initial_data_range(InitialDataKind kind);

struct RandomDataModel {
  ModelKind kind = ModelKind::random_exponent;
  TwoPhaseParams params;
  InitialDataKind initial = InitialDataKind::riemann_u02;
  double p_min = 1.5;
  double p_max = 2.5;
  double sw_min = 0.05;
  double sw_max = 0.35;
  double so_min = 0.6;
  double so_max = 0.95;
  double deterministic_p = 2.0;

  void validate() const;
  /// Number of random parameters (0, 1 or 2).
  std::size_t parameter_dimension() const;
  /// Uniform parameter box, one (min, max) pair per dimension.
  std::vector<std::pair<double, double>> parameter_box() const;
  /// key=value provenance line.
  std::string describe() const;
};

struct DataSample {
  InitialData u0;
  FluxModel flux;
  std::vector<double> parameters;  // drawn p, or (s_w*, s_o*)
};

/// Builds the sample for explicit parameter values (empty for deterministic).
DataSample build_sample(const RandomDataModel& model, std::span<const double> parameters);

/// Draws one value per parameter_box() entry, in box order.
std::vector<double> draw_parameters(const RandomDataModel& model, SeedStream& stream);

/// Draws the random parameters from the stream and builds the sample.
/// Identical stream state gives a bit-identical sample.
DataSample draw_sample(const RandomDataModel& model, SeedStream& stream);

}  // namespace degmlmc
