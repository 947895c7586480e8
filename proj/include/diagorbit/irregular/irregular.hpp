#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diagorbit/arith/algebraic.hpp"
#include "diagorbit/lattice/lattice.hpp"

namespace diagorbit {

// Column-shear lattice x_v (basis h_v = (1 0; v I)) and row-shear lattice z_v
// (basis g_v = (1 v^t; 0 I)), with exact provenance; d = v.size() + 1.
LatticeBasis make_xv(const std::vector<ExactReal>& v, int prec = default_precision());
LatticeBasis make_zv(const std::vector<ExactReal>& v, int prec = default_precision());

// beta = (p1 alpha + p2) / q with q > 0 and gcd(p1, p2, q) = 1.
struct RationalRelation {
  Integer p1;
  Integer p2;
  Integer q;
  bool operator==(const RationalRelation& o) const { return p1 == o.p1 && p2 == o.p2 && q == o.q; }
};

struct RelationPair {
  std::optional<RationalRelation> forward;  // beta over alpha
  std::optional<RationalRelation> reverse;  // alpha over beta
  bool exact = false;                       // decided by linear algebra in a number field
};

// Exact for rational and algebraic inputs that share a field (after moving one into the
// other's field); integer-relation search with a residual check otherwise. Relations with
// q > q_max are dropped.
RelationPair rational_relation(const ExactReal& alpha, const ExactReal& beta, const Integer& q_max,
                               int prec = default_precision());

struct MMembershipVerdict {
  bool member = false;
  int family = 1;
  Integer q;
  Integer l1;
  Integer l2;
  BigReal residual;  // largest distance of a normalized coordinate to (1/q)Z, or the axis defect
  bool in_s_form = false;
};

// Membership in M^(1)_q (family 1, third coordinate) or M^(2)_q (family 2, second
// coordinate), up to the action of A. x should be presented by a reduced basis; the
// residues are read from it with the axis vector substituted for one column.
// ToleranceAmbiguous when tol/10 < residual < 10 tol.
MMembershipVerdict m_membership(const LatticeBasis& x, const Integer& q, int family, double tol = 1e-8);

struct DirichletPair {
  Integer k;
  Integer m;
  BigReal value;  // |k theta + m|
  BigReal window;  // T
};

// Largest convergent denominator k <= T with m = -p; |k theta + m| <= 1/T.
DirichletPair dirichlet_pair(const ExactReal& theta, const BigReal& T, int prec = default_precision());

struct ShortyWitness {
  std::vector<Integer> n;       // (q k, q m, p1 m - p2 k)
  std::vector<BigReal> image;   // diag(e^{-t-s}, e^s, e^t) h_v n
  BigReal length;               // Euclidean
  BigReal sup_norm;
  BigReal bound;                // max(|p1|, q) e^{-min(s,t)/2}
  DirichletPair pair;
};

// BoundViolated when the sup norm of the image exceeds the bound.
ShortyWitness shorty_witness(const std::vector<ExactReal>& v, const RationalRelation& rel, const BigReal& t,
                             const BigReal& s, int prec = default_precision());

// Upper-left 2x2 block of an S-form basis (third column (0,0,1)); NotInSOrbit otherwise.
LatticeBasis project_pi(const LatticeBasis& x);

struct Recurrence {
  BigReal t;
  BigReal systole;
  std::string verdict;  // "member", "not_member" or "ambiguous"
  Integer l1;
  Integer l2;
  BigReal residual;
};

struct OffRayCell {
  BigReal t;
  BigReal s;
  BigReal systole;
  BigReal witness_length;
  BigReal bound;
  bool holds = false;  // witness sup norm <= bound and systole <= witness length
};

struct OmegaReport {
  std::vector<ExactReal> v;
  RationalRelation relation;  // forward for family 1, reverse for family 2
  int family = 1;
  double rho = 0.1;
  double tol = 1e-8;
  BigReal t_max;
  std::vector<Recurrence> recurrences;
  std::optional<BigReal> residual_min;
  std::optional<BigReal> residual_max;
  std::vector<OffRayCell> offray_grid;
};

struct OmegaOptions {
  double rho = 0.1;
  double tol = 1e-8;
  double step = 0.05;        // trajectory sampling step before refinement
  int grid_points = 5;       // off-ray grid is grid_points^2 cells over [0, t_max]^2
  Integer q_max = 1000;
};

// Flow a^(i)(t) x_v for t in [0, t_max]; recurrences are local maxima of the systole with
// systole >= rho, each tested for membership. PreconditionViolated when alpha or beta is
// rational or no relation with q <= q_max exists.
OmegaReport omega_experiment(const std::vector<ExactReal>& v, int family, const BigReal& t_max,
                             const OmegaOptions& opt = {}, int prec = default_precision());

nlohmann::json omega_report_json(const OmegaReport& r);

// Flow direction of a^(i): log diag(-1, 1, 0) or log diag(-1, 0, 1).
std::vector<BigReal> family_direction(int family, int prec);

}  // namespace diagorbit
