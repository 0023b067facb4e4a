#include "qtwist/mw_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "qtwist/errors.hpp"

namespace qtwist {

namespace bmp = boost::multiprecision;

namespace {

void require_free(const Curve& c, const Point& p) {
  if (p.inf || torsion_order(c, p) > 0)
    throw Error(ErrorCode::kTorsionArgument, point_to_string(p) + " is torsion");
}

}  // namespace

double pairing(const Curve& c, const Point& p, const Point& q, double tol) {
  require_free(c, p);
  require_free(c, q);
  return height_pairing(c, p, q, tol);
}

CosAngle cos_angle(const Curve& c, const Point& p, const Point& q, double tol) {
  require_free(c, p);
  require_free(c, q);
  double hp = canonical_height_doubling(c, p, tol).value;
  double hq = canonical_height_doubling(c, q, tol).value;
  double hs = canonical_height_doubling(c, add(c, p, q), tol).value;
  double hd = canonical_height_doubling(c, sub(c, p, q), tol).value;
  double den = 2 * std::sqrt(hp * hq);
  CosAngle out;
  out.via_sum = (hs - hp - hq) / den;
  out.via_diff = (hp + hq - hd) / den;
  out.pairing = (hs - hp - hq) / 2;
  out.value = std::clamp(out.via_sum, -1.0, 1.0);
  return out;
}

Decomposition decompose(const Point& p, const GeneratorSet& gs, const CosetConfig& cfg) {
  const Curve& c = gs.curve;
  require_on_curve(c, p);
  const int r = gs.rank;
  Decomposition d;
  d.coeffs.assign(r, Int(0));
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(r);
  if (r > 0 && !(p.inf || torsion_order(c, p) > 0)) {
    Eigen::VectorXd rhs(r);
    for (int i = 0; i < r; ++i) rhs(i) = height_pairing(c, p, gs.gens[i], gs.tol);
    coef = gs.gram.ldlt().solve(rhs);
  }
  Eigen::VectorXd rounded(r);
  for (int i = 0; i < r; ++i) {
    rounded(i) = std::round(coef(i));
    d.coeffs[i] = Int(static_cast<long>(rounded(i)));
  }
  Eigen::VectorXd diff = coef - rounded;
  d.gram_distance = r > 0 ? std::sqrt(std::max(0.0, diff.dot(gs.gram * diff))) : 0.0;
  if (d.gram_distance > cfg.max_gram_distance)
    throw Error(ErrorCode::kNotInSpan, point_to_string(p) + " is not near the generator lattice");
  Point rest = p;
  for (int i = 0; i < r; ++i)
    if (d.coeffs[i] != 0) rest = sub(c, rest, mul(c, d.coeffs[i], gs.gens[i]));
  if (!gs.torsion.contains(rest))
    throw Error(ErrorCode::kNotInSpan, point_to_string(p) + " leaves a non-torsion residual");
  d.torsion = rest;
  return d;
}

bool CosetKey::operator<(const CosetKey& o) const {
  if (residues != o.residues) return residues < o.residues;
  return point_less(torsion_rep, o.torsion_rep);
}

std::string CosetKey::to_string() const {
  std::ostringstream ss;
  ss << "(";
  for (std::size_t i = 0; i < residues.size(); ++i) ss << (i ? "," : "") << residues[i];
  ss << ";" << point_to_string(torsion_rep) << ")";
  return ss.str();
}

namespace {

std::vector<Point> multiples_of_torsion(const GeneratorSet& gs, int m) {
  std::vector<Point> mt;
  for (const Point& t : gs.torsion.points) {
    Point v = mul(gs.curve, Int(m), t);
    if (std::find(mt.begin(), mt.end(), v) == mt.end()) mt.push_back(v);
  }
  return mt;
}

}  // namespace

CosetKey coset_key(const Point& p, const GeneratorSet& gs, int m, const CosetConfig& cfg) {
  if (m < 1) throw Error(ErrorCode::kDomainError, "coset modulus must be positive");
  Decomposition d = decompose(p, gs, cfg);
  CosetKey key;
  for (const Int& n : d.coeffs) key.residues.push_back(static_cast<long>(mpz_fdiv_ui(n.get_mpz_t(), m)));
  Point best = d.torsion;
  bool first = true;
  for (const Point& s : multiples_of_torsion(gs, m)) {
    Point cand = add(gs.curve, d.torsion, s);
    if (first || point_less(cand, best)) best = cand;
    first = false;
  }
  key.torsion_rep = best;
  return key;
}

Int coset_count(const GeneratorSet& gs, int m) {
  Int mr = 1;
  for (int i = 0; i < gs.rank; ++i) mr *= m;
  std::size_t t = gs.torsion.points.size();
  std::size_t mt = multiples_of_torsion(gs, m).size();
  return mr * static_cast<long>(t / mt);
}

double kl_base(double cos_theta) {
  if (!(cos_theta > 0 && cos_theta < 1))
    throw Error(ErrorCode::kDomainError, "kl_base needs 0 < cos < 1");
  Real c(cos_theta);
  Real s = bmp::sqrt(1 - c * c);
  Real t1 = (1 + s) / (2 * s);
  Real t2 = (1 - s) / (2 * s);
  Real e = t1 * bmp::log(t1) - t2 * bmp::log(t2) + Real("0.001");
  return static_cast<double>(bmp::exp(e));
}

double obtuse_bound(double cos_theta) {
  if (!(cos_theta < 0)) throw Error(ErrorCode::kDomainError, "obtuse_bound needs cos < 0");
  return 1 - 1 / cos_theta;
}

double ms_angle_bound(int n) {
  if (n < 2 || n > 20) throw Error(ErrorCode::kDomainError, "ms_angle_bound needs 2 <= n <= 20");
  double a = (n + 1.6) / (2 * std::sqrt(static_cast<double>(n) * n - 0.25));
  double b = 1 - (n - 1.6) / (2 * (n + 0.5));
  return std::max(a, b);
}

std::vector<TableRow> appendix_table() {
  std::vector<TableRow> rows;
  for (int n = 2; n <= 20; ++n) {
    double c = ms_angle_bound(n);
    rows.push_back({n, c, kl_base(c)});
  }
  return rows;
}

std::string appendix_table_csv() {
  std::string out = "n,cos_theta,E_theta\n";
  for (const TableRow& r : appendix_table())
    out += std::to_string(r.n) + "," + fixed(r.cos_theta, 10) + "," + fixed(r.e_theta, 10) + "\n";
  return out;
}

BandingChecks banding_constants_ok() {
  Int p11, p10, p101, p100;
  mpz_ui_pow_ui(p11.get_mpz_t(), 11, 50);
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, 50);
  mpz_ui_pow_ui(p101.get_mpz_t(), 101, 700);
  mpz_ui_pow_ui(p100.get_mpz_t(), 100, 700);
  BandingChecks b;
  b.ml_bands = 110 * p10 <= p11;
  b.large_bands = 1050 * p100 <= p101;
  b.rank_assembly = Rat(3) * Rat(133, 100) <= Rat(4);
  return b;
}

namespace {

struct Entry {
  Point p;
  double h = 0;
  std::string group;
  int index = 0;
};

void audit_pairs(const Curve& c, std::vector<Entry>& entries, double bound, bool distinct_x,
                 double tol, std::vector<AngleRecord>& out) {
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.group != b.group) return a.group < b.group;
    return a.index < b.index;
  });
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size() && entries[j].group == entries[i].group; ++j) {
      const Point& p = entries[i].p;
      const Point& q = entries[j].p;
      if (p == q || (distinct_x && p.x == q.x)) continue;
      CosAngle ca = cos_angle(c, p, q, tol);
      AngleRecord rec;
      rec.P = p;
      rec.Q = q;
      rec.cos_val = ca.value;
      rec.pairing = ca.pairing;
      rec.bound_used = bound;
      rec.pass = ca.value <= bound;
      rec.group = entries[i].group;
      out.push_back(rec);
    }
}

}  // namespace

GapAudit gap_audit(const std::vector<Point>& points, const GeneratorSet& gs,
                   const TwistDescriptor& tw, HeightClass regime, const GapAuditConfig& cfg) {
  const Curve& c = gs.curve;
  const double logd = static_cast<double>(log_abs(tw.D));
  GapAudit audit;
  std::vector<Entry> in_regime;
  int idx = 0;
  for (const Point& p : points) {
    ++idx;
    if (p.inf || torsion_order(c, p) > 0) continue;
    HeightValue h = canonical_height_doubling(c, p, cfg.tol);
    if (classify_value(h.value, h.precision, tw.D).tag != regime) continue;
    in_regime.push_back({p, h.value, "", idx});
  }
  audit.points_in_regime = static_cast<int>(in_regime.size());

  std::vector<Entry> grouped;
  switch (regime) {
    case HeightClass::kSmall: {
      for (Entry e : in_regime) {
        try {
          e.group = "coset4" + coset_key(e.p, gs, 4, cfg.coset).to_string();
          grouped.push_back(e);
        } catch (const Error& err) {
          if (err.code() != ErrorCode::kNotInSpan) throw;
          audit.skipped.push_back(e.p);
        }
      }
      audit_pairs(c, grouped, -1.0 / 6, false, cfg.tol, audit.records);
      break;
    }
    case HeightClass::kMediumSmall: {
      for (int n = 2; n <= 20; ++n) {
        std::vector<Entry> band;
        for (Entry e : in_regime) {
          if (e.p.y <= 0) continue;
          if (e.h >= (n - 0.5) * logd && e.h <= (n + 0.5) * logd) {
            e.group = "ms" + std::to_string(n);
            band.push_back(e);
          }
        }
        audit_pairs(c, band, ms_angle_bound(n), false, cfg.tol, audit.records);
      }
      break;
    }
    case HeightClass::kMediumLarge: {
      for (int n = 1; n <= 50; ++n) {
        double lo = 20 * std::pow(1.1, n - 1) * logd, hi = 20 * std::pow(1.1, n) * logd;
        std::vector<Entry> band;
        for (Entry e : in_regime) {
          if (e.p.y <= 0 || e.h < lo || e.h > hi) continue;
          e.group = "ml" + std::to_string(n);
          band.push_back(e);
        }
        audit_pairs(c, band, 0.63, true, cfg.tol, audit.records);
      }
      break;
    }
    case HeightClass::kLarge: {
      // Coset representative R: least height among audited points with x >= M D.
      Rat md(tw.base.m_const * tw.D);
      std::map<CosetKey, std::vector<Entry>> cosets;
      for (const Entry& e : in_regime) {
        try {
          cosets[coset_key(e.p, gs, 3, cfg.coset)].push_back(e);
        } catch (const Error& err) {
          if (err.code() != ErrorCode::kNotInSpan) throw;
          audit.skipped.push_back(e.p);
        }
      }
      for (auto& [key, members] : cosets) {
        const Entry* rep = nullptr;
        for (const Entry& e : members)
          if (e.p.x >= md && (rep == nullptr || e.h < rep->h)) rep = &e;
        if (rep == nullptr) continue;
        const double hr = rep->h;
        for (int n = 1; n <= 700; ++n) {
          double lo = std::pow(1.01, n - 1) * hr, hi = std::pow(1.01, n) * hr;
          std::vector<Entry> band;
          for (Entry e : members) {
            if (e.p.y <= 0 || e.h < lo || e.h > hi || e.h > 1050 * hr) continue;
            e.group = "L" + key.to_string() + "#" + std::to_string(n);
            band.push_back(e);
          }
          audit_pairs(c, band, 0.504, true, cfg.tol, audit.records);
        }
      }
      break;
    }
  }
  return audit;
}

Json angle_record_to_json(const TwistDescriptor& tw, const AngleRecord& r) {
  Json j;
  j["P"] = point_pair(r.P);
  j["Q"] = point_pair(r.Q);
  j["D"] = tw.D.get_str();
  j["group"] = r.group;
  j["cos"] = r.cos_val;
  j["pairing"] = r.pairing;
  j["bound"] = r.bound_used;
  j["pass"] = r.pass;
  return j;
}

}  // namespace qtwist
