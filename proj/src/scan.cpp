#include "qtwist/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <thread>

#include "qtwist/errors.hpp"
#include "qtwist/heights.hpp"
#include "qtwist/mw_geometry.hpp"
#include "qtwist/point_search.hpp"

namespace qtwist {

namespace {

const HeightClass kClasses[4] = {HeightClass::kSmall, HeightClass::kMediumSmall,
                                 HeightClass::kMediumLarge, HeightClass::kLarge};

std::optional<GeneratorSet> load_generators(const ScanConfig& cfg, const TwistDescriptor& tw,
                                            const std::vector<Point>& found, std::string& source) {
  GeneratorConfig gc;
  gc.tol = std::min(cfg.tol, 1e-10);
  if (!cfg.gens_dir.empty()) {
    std::filesystem::path p =
        std::filesystem::path(cfg.gens_dir) / ("D" + tw.D.get_str() + ".json");
    if (std::filesystem::exists(p)) {
      GeneratorSet gs = ingest_generators_file(p.string(), gc);
      if (!same_curve(gs.curve, tw.twisted))
        throw Error(ErrorCode::kIoError, p.string() + " describes a different curve");
      source = "ingested";
      return gs;
    }
  }
  if (cfg.heuristic) {
    HeuristicConfig hc;
    hc.gens = gc;
    hc.extra_candidates = found;
    source = "heuristic";
    return find_generators_heuristic(tw, hc);
  }
  source = "none";
  return std::nullopt;
}

}  // namespace

void validate_scan_config(const ScanConfig& cfg) {
  if (cfg.d_min < 2) throw Error(ErrorCode::kUsage, "d_min must be at least 2");
  if (cfg.d_min > cfg.d_max) throw Error(ErrorCode::kUsage, "d_min exceeds d_max");
  Curve base = make_curve(cfg.A, cfg.B);
  if (cfg.x_max < base.m_const * cfg.d_max)
    throw Error(ErrorCode::kUsage, "x_max must be at least M * d_max");
  if (!(cfg.tol > 0)) throw Error(ErrorCode::kUsage, "tol must be positive");
}

ScanRow scan_one(const ScanConfig& cfg, long D) {
  ScanRow row;
  row.D = D;
  try {
    TwistDescriptor tw = normalize_twist(make_curve(cfg.A, cfg.B), Int(D));
    const Curve& c = tw.twisted;
    TorsionInfo tor = torsion_subgroup(c);
    row.torsion = tor.tag_name();
    EnumerationResult en = enumerate_integral(tw, default_window(tw, cfg.x_max));
    row.points = en.points;
    row.integral_count = static_cast<int>(en.points.size());

    double logd = std::log(static_cast<double>(D));
    for (const Point& p : en.points) {
      if (tor.contains(p)) {
        ++row.class_counts[0];
        continue;
      }
      HeightValue h = canonical_height_doubling(c, p, cfg.tol);
      Classification cl = classify_value(h.value, h.precision, tw.D);
      ++row.class_counts[static_cast<int>(cl.tag)];
      row.boundary_flags += cl.boundary;
      double excess = h.value - logd / 4;
      if (!row.min_excess || excess < *row.min_excess) row.min_excess = excess;
    }

    std::optional<GeneratorSet> gs = load_generators(cfg, tw, en.points, row.rank_source);
    if (gs) {
      row.rank = gs->rank;
      row.four_pow_rank = std::pow(4.0, gs->rank);
      row.count_exceeds_4r = row.integral_count > *row.four_pow_rank;
      GapAuditConfig gc;
      gc.tol = std::min(cfg.tol, 1e-10);
      for (int k = 0; k < 4; ++k) {
        if (row.class_counts[k] == 0) continue;
        GapAudit ga = gap_audit(en.points, *gs, tw, kClasses[k], gc);
        ClassGap& g = row.gaps[k];
        g.points = ga.points_in_regime;
        g.skipped = static_cast<int>(ga.skipped.size());
        for (const AngleRecord& r : ga.records) {
          ++g.pairs;
          if (r.pass) {
            ++g.passed;
          } else {
            g.failures.push_back(angle_record_to_json(tw, r));
          }
        }
      }
    }
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<ScanRow> scan(const ScanConfig& cfg, const RowCallback& on_row) {
  validate_scan_config(cfg);
  std::vector<long> ds;
  for (long d = cfg.d_min; d <= cfg.d_max; ++d)
    if (is_squarefree(Int(d))) ds.push_back(d);
  std::vector<ScanRow> rows(ds.size());
  unsigned nthreads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(std::max<std::size_t>(1, ds.size())));
  std::atomic<std::size_t> next{0};
  std::mutex out_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= ds.size()) return;
      rows[i] = scan_one(cfg, ds[i]);
      if (on_row) {
        std::lock_guard<std::mutex> lock(out_mu);
        on_row(rows[i]);
      }
    }
  };
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

namespace {

double pass_rate(int pairs, int passed) { return pairs ? static_cast<double>(passed) / pairs : 1.0; }

}  // namespace

Json scan_to_json(const ScanConfig& cfg, const std::vector<ScanRow>& rows) {
  Json j;
  j["config"] = {{"A", cfg.A.get_str()},        {"B", cfg.B.get_str()},
                 {"d_min", cfg.d_min},          {"d_max", cfg.d_max},
                 {"x_max", cfg.x_max.get_str()}, {"tol", cfg.tol},
                 {"seed", cfg.seed},            {"gens_dir", cfg.gens_dir},
                 {"heuristic", cfg.heuristic}};
  Json arr = Json::array();
  for (const ScanRow& r : rows) {
    Json o;
    o["D"] = r.D;
    o["rank"] = r.rank ? Json(*r.rank) : Json(nullptr);
    o["rank_source"] = r.rank_source;
    o["torsion"] = r.torsion;
    o["integral_count"] = r.integral_count;
    Json cc, gaps;
    for (int k = 0; k < 4; ++k) {
      const char* name = height_class_name(kClasses[k]);
      cc[name] = r.class_counts[k];
      const ClassGap& g = r.gaps[k];
      gaps[name] = {{"points", g.points},
                    {"pairs", g.pairs},
                    {"passed", g.passed},
                    {"skipped", g.skipped},
                    {"pass_rate", pass_rate(g.pairs, g.passed)},
                    {"audited_failures", g.failures}};
    }
    o["class_counts"] = cc;
    o["boundary_flags"] = r.boundary_flags;
    o["gap_audits"] = gaps;
    o["min_hhat_minus_quarter_logD"] = r.min_excess ? Json(*r.min_excess) : Json(nullptr);
    o["four_pow_rank"] = r.four_pow_rank ? Json(*r.four_pow_rank) : Json(nullptr);
    o["count_exceeds_4r"] = r.count_exceeds_4r;
    Json pts = Json::array();
    for (const Point& p : r.points) pts.push_back(point_pair(p));
    o["points"] = pts;
    o["error"] = r.error.empty() ? Json(nullptr) : Json(r.error);
    arr.push_back(o);
  }
  j["rows"] = arr;
  return j;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::string s =
      "D,rank,torsion,integral_count,small,medium_small,medium_large,large,boundary_flags,"
      "gap_pairs,gap_passed,gap_pass_rate,min_hhat_minus_quarter_logD,four_pow_rank,"
      "count_exceeds_4r,error\n";
  for (const ScanRow& r : rows) {
    int pairs = 0, passed = 0;
    for (const ClassGap& g : r.gaps) {
      pairs += g.pairs;
      passed += g.passed;
    }
    s += std::to_string(r.D) + ",";
    s += (r.rank ? std::to_string(*r.rank) : "") + ",";
    s += r.torsion + ",";
    s += std::to_string(r.integral_count);
    for (int k = 0; k < 4; ++k) s += "," + std::to_string(r.class_counts[k]);
    s += "," + std::to_string(r.boundary_flags);
    s += "," + std::to_string(pairs) + "," + std::to_string(passed) + ",";
    s += fixed(pass_rate(pairs, passed), 10) + ",";
    s += (r.min_excess ? fixed(*r.min_excess, 10) : "") + ",";
    s += (r.four_pow_rank ? fixed(*r.four_pow_rank, 10) : "") + ",";
    s += std::string(r.count_exceeds_4r ? "true" : "false") + ",";
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    s += err + "\n";
  }
  return s;
}

}  // namespace qtwist
