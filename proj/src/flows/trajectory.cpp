#include "diagorbit/flows/trajectory.hpp"

#include "diagorbit/error.hpp"
#include "diagorbit/lattice/lattice_json.hpp"
#include "diagorbit/util/parallel.hpp"

namespace diagorbit {

std::vector<TrajectorySample> trajectory(const LatticeBasis& x, const TracelessDiag& v, const BigReal& t_max,
                                         long steps, const BigReal& rho) {
  if (steps < 1) throw Error(ErrorCode::kInvalidInput, "steps must be >= 1");
  if (rho.sign() <= 0) throw Error(ErrorCode::kInvalidInput, "recurrence threshold must be positive");
  if (v.dim() != x.dim()) throw Error(ErrorCode::kDimensionMismatch, "flow direction dimension");
  const int prec = x.precision();
  const std::size_t count = t_max.is_zero() ? 1 : static_cast<std::size_t>(steps) + 1;
  std::vector<TrajectorySample> out(count);
  parallel_for(count, [&](std::size_t i) {
    PrecisionScope scope(prec);
    BigReal t = count == 1 ? BigReal::zero(prec) : t_max.with_precision(prec) * static_cast<long>(i) / steps;
    LatticeBasis y = apply_diag(v.scaled(t), x);
    TrajectorySample s;
    s.t = t;
    s.systole = shortest_vector(y).systole();
    s.reduced = reduce(y).basis;
    s.recurrence = s.systole >= rho;
    out[i] = std::move(s);
  });
  return out;
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& samples) {
  if (samples.empty()) return;
  const std::size_t d = samples.front().reduced.dim();
  out << "t,systole,recurrence_flag";
  for (std::size_t i = 1; i <= d; ++i)
    for (std::size_t j = 1; j <= d; ++j) out << ",b" << i << j;
  out << "\n";
  for (const auto& s : samples) {
    out << decimal_string(s.t) << ',' << decimal_string(s.systole) << ',' << (s.recurrence ? 1 : 0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) out << ',' << decimal_string(s.reduced.matrix()(i, j));
    out << "\n";
  }
}

}  // namespace diagorbit
