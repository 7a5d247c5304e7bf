#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace liars {

struct Interval {
  double lo = -1.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  bool contains(double v) const { return v >= lo && v <= hi; }
};

double project(double v, Interval range = {});

// Interaction kernels P(x, y): weight with which an agent at x listens to y.
struct Constant {
  double value = 1.0;
};

// P(x, y) = 1 - x^2, independent of the partner.
struct SelfDependent {};

struct HardBounded {
  double radius = 0.2;
};

enum class Blend { cubic, quintic };

struct SmoothedBounded {
  double inner = 0.1;
  double outer = 0.2;
  Blend blend = Blend::quintic;
};

using Kernel = std::variant<Constant, SelfDependent, HardBounded, SmoothedBounded>;

void validate(const Kernel& k);
std::string describe(const Kernel& k);

// True when P(x, y) does not depend on y, which makes every implicit
// control equation linear in the lie.
bool partner_independent(const Kernel& k);

double eval_kernel(const Kernel& k, double x, double y);

// d/dy of P(x, y)(y - x). Throws NotDifferentiable for HardBounded.
double eval_influence_dy(const Kernel& k, double x, double y);
double eval_influence_dyy(const Kernel& k, double x, double y);

// Smoothed profile as a function of distance, with its first two derivatives.
double smoothed_profile(const SmoothedBounded& k, double dist);
double smoothed_profile_d1(const SmoothedBounded& k, double dist);
double smoothed_profile_d2(const SmoothedBounded& k, double dist);

enum class Diffusion { zero, one_minus_x_sq };

double eval_diffusion(Diffusion d, double x);
std::string describe(Diffusion d);

// Truth-teller opinions plus the liar's goal. The liar is agent number N,
// so agents() counts it.
struct OpinionState {
  std::vector<double> x;
  double goal = 0.0;
  double t = 0.0;

  int agents() const { return static_cast<int>(x.size()) + 1; }
};

// sum_j P(x_i, x_j)(x_j - x_i) over truth-tellers.
std::vector<double> peer_pull(std::span<const double> x, const Kernel& k);

std::vector<double> hk_drift(const OpinionState& s, const Kernel& k, std::span<const double> lies);

}  // namespace liars
