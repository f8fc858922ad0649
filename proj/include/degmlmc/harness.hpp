#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "degmlmc/mlmc.hpp"

namespace degmlmc {

enum class ReferenceKind { quadrature, mlmc };

struct ExperimentConfig {
  RandomDataModel model;
  SchemeConfig scheme;
  // hierarchy
  double dx0 = 0.125;
  int K = 1;
  int L_max = 3;
  std::size_t m_base = 8;
  // run
  double T = 0.3;
  std::size_t N = 5;
  std::uint64_t seed = 12345;
  ReferenceKind reference = ReferenceKind::quadrature;
  std::size_t reference_nodes = 32;  // per parameter dimension
  int reference_extra_levels = 2;    // quadrature reference on dx_{L_max} / 2^(K * extra)
  int L_ref = 8;                     // mlmc reference level
  std::uint64_t reference_seed = 777;
  std::size_t workers = 1;
  bool timing = true;
  double dx = 1.0 / 64;   // single-level resolution for "solve" and "mc"
  std::size_t M = 64;     // sample count for "mc"
  std::string output_dir = ".";

  void validate() const;
};

/// RE = sqrt(mean_k RE_k^2), RE_k = 100 ||U_ref - U_k||_l1 / ||U_ref||_l1 on
/// the reference grid after prolongation. Rejects a zero reference.
double relative_error(const SolutionField& reference, std::span<const SolutionField> runs);

/// Gauss-Legendre tensor quadrature of E[u(T)] over the uniform parameter
/// box, one deterministic solve per node (a single solve for the
/// deterministic model).
SolutionField quadrature_reference(const RandomDataModel& model, const GridSpec& grid,
                                   const SchemeConfig& cfg, double T, std::size_t n_nodes,
                                   std::size_t workers = 1);

struct ErrorRow {
  int L;
  double re;
  double dx;
  double runtime_s;     // mean wall seconds per estimator run
  double cell_updates;  // mean cell updates per estimator run
  double bv;
  double linf;
};

struct ErrorReport {
  std::vector<ErrorRow> rows;
  double rate_dx = 0.0;          // slope of log RE vs log dx_L
  double rate_wall = 0.0;        // slope of log RE vs log runtime (NaN when untimed)
  double rate_cell_updates = 0.0;  // slope of log RE vs log cell updates
};

/// Domain and hierarchy of an experiment for a given finest level.
LevelHierarchy make_hierarchy(const ExperimentConfig& cfg, int L);

/// Reference field according to cfg.reference.
SolutionField make_reference(const ExperimentConfig& cfg);

/// RE, run time, BV and L-infinity of the MLMC estimate for L = 0..L_max with
/// N replicates each (seed mix_seed(seed, L, k)). Rates by least squares.
/// When `csv` is given the table is written to it (rows flushed as they
/// complete in level order).
ErrorReport convergence_study(const ExperimentConfig& cfg, std::ostream* csv = nullptr);

/// CSV "L,RE,dx_L,runtime_s,bv,linf" plus a trailing "rate" row.
void write_error_table_header(std::ostream& os);
void write_error_row(std::ostream& os, const ErrorRow& row, bool timing);
void write_error_rate_row(std::ostream& os, const ErrorReport& report, bool timing);

/// Outcome of the discrete stability/contraction checks for one run.
struct InvariantReport {
  bool l1_stable = true;
  bool max_principle = true;
  bool bv_diminishing = true;
  bool lipschitz_in_time = true;
  bool l1_contraction = true;
  double worst_l1_excess = 0.0;
  double worst_range_excess = 0.0;
  double worst_bv_excess = 0.0;
  double worst_lipschitz_excess = 0.0;
  double worst_contraction_excess = 0.0;

  bool all() const {
    return l1_stable && max_principle && bv_diminishing && lipschitz_in_time && l1_contraction;
  }
};

/// Runs u0 and v0 with the same flux to time T and checks L1 non-increase,
/// the cellwise max principle, BV diminishing, the L1-Lipschitz bound
/// between consecutive time levels and L1 contraction between the runs.
InvariantReport check_scheme_invariants(const InitialData& u0, const InitialData& v0,
                                        const FluxModel& model, const GridSpec& grid,
                                        const SchemeConfig& cfg, double T, double tol);

}  // namespace degmlmc
