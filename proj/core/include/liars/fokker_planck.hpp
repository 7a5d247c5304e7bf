#pragma once

#include <span>
#include <variant>
#include <vector>

#include "liars/control_curve.hpp"
#include "liars/model.hpp"

namespace liars {

struct LiarField {
  double scaled_penalty = 0.1;
  double mass = 0.5;
  double time = 1.0;
  double goal = 0.0;
};

struct UniformInit {};
// Sum of exp(-sharpness (c - x)^2) bumps.
struct GaussianMixtureInit {
  std::vector<double> centres;
  double sharpness = 100.0;
};
using InitialDensity = std::variant<UniformInit, GaussianMixtureInit>;

struct FpConfig {
  Kernel kernel = Constant{1.0};
  std::vector<LiarField> liars;
  double truth_time = 1.0;
  double noise_scale = 0.1;
  Diffusion diffusion = Diffusion::one_minus_x_sq;
  int cells = 501;
  double dt = 0.0;  // 0 picks the largest step allowed by the stability rule
  double horizon = 1.0;
  InitialDensity init = UniformInit{};
  int snapshot_every = 0;  // 0 keeps only the initial and final density
  int curve_refine = 7;
  double curve_tol = 1e-8;
};

struct DensityGrid {
  std::vector<double> u;
  Interval range{};

  int cells() const { return static_cast<int>(u.size()); }
  double dx() const { return range.width() / static_cast<double>(u.size()); }
  double centre(int i) const { return range.lo + (i + 0.5) * dx(); }
  double face(int i) const { return range.lo + i * dx(); }
};

struct Moments {
  double mass = 0.0;
  double mean = 0.0;
  double second_moment = 0.0;
};

Moments density_moments(const DensityGrid& g);

// Spatial operator of the finite-volume scheme with everything that does not
// depend on the density precomputed.
class FvOperator {
 public:
  explicit FvOperator(const FpConfig& cfg);

  // Largest step satisfying both the configured stability rule and positivity.
  double stable_dt() const { return stable_dt_; }
  bool admissible(double dt) const;

  void rate(std::span<const double> u, std::span<double> out) const;

  const std::vector<ControlCurve>& curves() const { return curves_; }
  double diffusion_coefficient() const { return diff_; }

 private:
  struct Row {
    int first = 0;
    std::vector<double> w;
  };

  int cells_ = 0;
  double dx_ = 0.0;
  double inv_truth_ = 1.0;
  double diff_ = 0.0;
  double stable_dt_ = 0.0;
  double rule_dt_ = 0.0;
  enum class Conv { constant, self_dependent, banded } conv_ = Conv::constant;
  double strength_ = 1.0;
  std::vector<Row> rows_;           // banded interaction weights per interior face
  std::vector<double> face_x_;      // all L + 1 faces
  std::vector<double> liar_drift_;  // summed liar velocity at faces
  std::vector<double> spread_;      // D^2 at cell centres
  std::vector<ControlCurve> curves_;
  mutable std::vector<double> flux_;
};

DensityGrid initial_density(const FpConfig& cfg);

DensityGrid fv_step(const DensityGrid& g, const FvOperator& op, double dt);

struct FpSample {
  double t = 0.0;
  double mass = 0.0;
  double mean = 0.0;
  double lyapunov = 0.0;
};

struct FpResult {
  double dt = 0.0;
  double target = 0.0;  // long-time mean the Lyapunov function measures against
  std::vector<double> snapshot_times;
  std::vector<DensityGrid> snapshots;
  std::vector<FpSample> series;  // every step
  double min_value = 0.0;
  double max_mass_error = 0.0;
  std::vector<ControlCurve> curves;
};

FpResult fv_solve(const FpConfig& cfg);

}  // namespace liars
