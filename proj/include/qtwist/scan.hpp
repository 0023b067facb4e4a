#ifndef QTWIST_SCAN_HPP_
#define QTWIST_SCAN_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qtwist/curve.hpp"
#include "qtwist/json_io.hpp"

namespace qtwist {

struct ScanConfig {
  Int A = -1;
  Int B = 0;
  long d_min = 2;
  long d_max = 50;
  Int x_max = Int(1000000);
  double tol = 1e-8;
  std::uint64_t seed = 1;
  // Generator files <gens_dir>/D<d>.json take precedence over the heuristic search.
  std::string gens_dir;
  bool heuristic = true;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Throws kUsage when d_min < 2, d_min > d_max or x_max < M d_max.
void validate_scan_config(const ScanConfig& cfg);

struct ClassGap {
  int points = 0;    // points in the regime
  int pairs = 0;     // audited pairs
  int passed = 0;
  int skipped = 0;   // no certified coset key
  std::vector<Json> failures;  // audited rows
};

struct ScanRow {
  long D = 0;
  std::optional<int> rank;
  std::string rank_source;     // ingested | heuristic | none
  std::string torsion;
  int integral_count = 0;
  int class_counts[4] = {0, 0, 0, 0};
  int boundary_flags = 0;
  ClassGap gaps[4];
  std::optional<double> min_excess;  // min over non-torsion points of hhat - log(D)/4
  std::optional<double> four_pow_rank;
  bool count_exceeds_4r = false;
  std::vector<Point> points;
  std::string error;
};

using RowCallback = std::function<void(const ScanRow&)>;

// One row per squarefree D in [d_min, d_max], sorted by D. Rows go to on_row as
// they finish, in completion order.
std::vector<ScanRow> scan(const ScanConfig& cfg, const RowCallback& on_row = {});

ScanRow scan_one(const ScanConfig& cfg, long D);

Json scan_to_json(const ScanConfig& cfg, const std::vector<ScanRow>& rows);
std::string scan_to_csv(const std::vector<ScanRow>& rows);

}  // namespace qtwist

#endif  // QTWIST_SCAN_HPP_
