#ifndef QTWIST_MW_GEOMETRY_HPP_
#define QTWIST_MW_GEOMETRY_HPP_

#include <string>
#include <vector>

#include "qtwist/json_io.hpp"
#include "qtwist/point_search.hpp"

namespace qtwist {

// Throws kTorsionArgument when either point is torsion.
double pairing(const Curve& c, const Point& p, const Point& q, double tol);

struct CosAngle {
  double via_sum = 0;   // (h(P+Q) - h(P) - h(Q)) / (2 sqrt(h(P) h(Q)))
  double via_diff = 0;  // (h(P) + h(Q) - h(P-Q)) / (2 sqrt(h(P) h(Q)))
  double value = 0;     // via_sum clamped to [-1, 1]
  double pairing = 0;
};

CosAngle cos_angle(const Curve& c, const Point& p, const Point& q, double tol);

struct Decomposition {
  std::vector<Int> coeffs;  // P = sum coeffs[i] G_i + torsion
  Point torsion;
  double gram_distance = 0;
};

struct CosetConfig {
  double max_gram_distance = 0.25;
};

// Throws kNotInSpan when rounding fails or the residual is not torsion.
Decomposition decompose(const Point& p, const GeneratorSet& gs, const CosetConfig& cfg = {});

struct CosetKey {
  std::vector<long> residues;  // coeffs mod m, in [0, m)
  Point torsion_rep;           // least element of the class in T/mT

  bool operator==(const CosetKey& o) const {
    return residues == o.residues && torsion_rep == o.torsion_rep;
  }
  bool operator<(const CosetKey& o) const;
  std::string to_string() const;
};

CosetKey coset_key(const Point& p, const GeneratorSet& gs, int m, const CosetConfig& cfg = {});

// |E/mE| = m^r |T/mT| for the group described by gs.
Int coset_count(const GeneratorSet& gs, int m);

// exp of the Kabatiansky-Levenshtein exponent at sin(theta) plus 0.001; 0 < cos < 1.
double kl_base(double cos_theta);
// 1 - 1/cos for cos < 0.
double obtuse_bound(double cos_theta);
// Medium-small band angle bound for 2 <= n <= 20.
double ms_angle_bound(int n);

struct TableRow {
  int n = 0;
  double cos_theta = 0;
  double e_theta = 0;
};

std::vector<TableRow> appendix_table();
std::string appendix_table_csv();

// Exact checks of 110 <= 1.1^50, 1050 <= 1.01^700 and 3 * 1.33 <= 4.
struct BandingChecks {
  bool ml_bands = false;       // 110 <= 1.1^50
  bool large_bands = false;    // 1050 <= 1.01^700
  bool rank_assembly = false;  // 3 * 1.33 <= 4
  bool all() const { return ml_bands && large_bands && rank_assembly; }
};
BandingChecks banding_constants_ok();

struct AngleRecord {
  Point P;
  Point Q;
  double cos_val = 0;
  double pairing = 0;
  double bound_used = 0;
  bool pass = false;
  std::string group;  // coset key or band label
};

struct GapAuditConfig {
  double tol = 1e-10;
  CosetConfig coset;
};

struct GapAudit {
  std::vector<AngleRecord> records;  // sorted by (group, pair index)
  std::vector<Point> skipped;        // points whose coset key could not be certified
  int points_in_regime = 0;
};

// Pairs are grouped per regime: equal coset mod 4 (Small), one band with y > 0
// (MediumSmall, MediumLarge), equal coset mod 3 and a band relative to the
// coset's least point with x >= M D (Large).
GapAudit gap_audit(const std::vector<Point>& points, const GeneratorSet& gs,
                   const TwistDescriptor& tw, HeightClass regime, const GapAuditConfig& cfg = {});

Json angle_record_to_json(const TwistDescriptor& tw, const AngleRecord& r);

}  // namespace qtwist

#endif  // QTWIST_MW_GEOMETRY_HPP_
