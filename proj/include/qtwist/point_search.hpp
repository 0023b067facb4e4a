#ifndef QTWIST_POINT_SEARCH_HPP_
#define QTWIST_POINT_SEARCH_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qtwist/curve.hpp"
#include "qtwist/heights.hpp"

namespace qtwist {

struct SearchWindow {
  Int x_min;
  Int x_max;
};

// x_min = -M D, where no integral point can lie below.
SearchWindow default_window(const TwistDescriptor& tw, const Int& x_max);

struct EnumerationConfig {
  Int max_window = Int(200000000);  // cap on x_max - x_min + 1
  std::size_t chunk = 1 << 16;
};

struct EnumerationResult {
  std::vector<Point> points;  // sorted by (x, y)
  Int x_min;
  Int x_max;
  // True when x_min <= -M D, so nothing exists below the window.
  bool complete_below = false;
  // Points with x > x_max are never claimed.
  bool complete_above = false;
};

// Integral points of y^2 = x^3 + a x + b with x in [x_min, x_max].
EnumerationResult enumerate_curve(const Curve& c, const SearchWindow& window,
                                  const EnumerationConfig& cfg = {});
EnumerationResult enumerate_integral(const TwistDescriptor& tw, const SearchWindow& window,
                                     const EnumerationConfig& cfg = {});

enum class Provenance { kIngested, kHeuristic };
const char* provenance_name(Provenance p);

struct GeneratorSet {
  Curve curve;  // the curve carrying the generators (E_D for twists)
  Int D = 1;
  int rank = 0;
  std::vector<Point> gens;
  TorsionInfo torsion;
  Eigen::MatrixXd gram;
  Provenance provenance = Provenance::kIngested;
  double tol = 1e-10;
};

struct GeneratorConfig {
  double tol = 1e-10;
  // Reject a set whose normalised Gram determinant falls below this.
  double independence = 1e-6;
};

Eigen::MatrixXd gram_matrix(const Curve& c, const std::vector<Point>& gens, double tol);
double normalized_gram_det(const Eigen::MatrixXd& gram);

// Validates points (kOffCurvePoint), non-torsion and independence (kDependentGenerators).
GeneratorSet make_generator_set(const Curve& c, const Int& D, std::vector<Point> gens,
                                Provenance prov, const GeneratorConfig& cfg = {});

// JSON: {"A","B","D","rank","gens":[["p/q","p/q"],...],"torsion":[...]}; gens on E_D.
GeneratorSet ingest_generators_text(const std::string& json_text, const GeneratorConfig& cfg = {});
GeneratorSet ingest_generators_file(const std::string& path, const GeneratorConfig& cfg = {});

struct HeuristicConfig {
  Int x_bound = Int(20000);  // integral x up to this bound
  int max_denominator_root = 6;  // x = u / w^2 with w up to this
  int max_rank = 8;
  // Known points (e.g. from enumeration) added to the candidate pool.
  std::vector<Point> extra_candidates;
  GeneratorConfig gens;
};

// Greedy independent set among small points, then saturated by integer row
// reduction against every candidate found. No completeness claim.
GeneratorSet find_generators_heuristic(const TwistDescriptor& tw, const HeuristicConfig& cfg = {});

}  // namespace qtwist

#endif  // QTWIST_POINT_SEARCH_HPP_
