#pragma once

#include <ostream>
#include <vector>

#include "diagorbit/flows/diagonal.hpp"

namespace diagorbit {

struct TrajectorySample {
  BigReal t;
  BigReal systole;
  LatticeBasis reduced;
  bool recurrence = false;  // systole >= rho
};

// Samples exp(t v) x at t = t_max * i / steps for i = 0..steps (a single sample when
// t_max = 0). InvalidInput unless steps >= 1 and rho > 0.
std::vector<TrajectorySample> trajectory(const LatticeBasis& x, const TracelessDiag& v, const BigReal& t_max,
                                         long steps, const BigReal& rho);

// Header t,systole,recurrence_flag,b11,b12,...; entries at full precision.
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& samples);

}  // namespace diagorbit
