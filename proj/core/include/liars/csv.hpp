#pragma once

#include <iosfwd>
#include <string>

#include "liars/control_curve.hpp"
#include "liars/fokker_planck.hpp"
#include "liars/kinetic.hpp"
#include "liars/micro.hpp"
#include "liars/nmpc.hpp"

namespace liars::csv {

inline constexpr int schema_version = 1;

// Shortest round-trip decimal form; identical bits give identical text.
std::string number(double v);

void trajectory(std::ostream& os, const Trajectory& tr);
void heatmap(std::ostream& os, const LieMagnitudeMatrix& m);
void moments(std::ostream& os, const McResult& r);
void histogram(std::ostream& os, const McResult& r);
void density(std::ostream& os, const FpResult& r);
void fp_series(std::ostream& os, const FpResult& r, int every = 1);
void curve(std::ostream& os, const ControlCurve& c);

}  // namespace liars::csv
