#include "qtwist/point_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qtwist/errors.hpp"
#include "qtwist/json_io.hpp"
#include "qtwist/simd.hpp"

namespace qtwist {

SearchWindow default_window(const TwistDescriptor& tw, const Int& x_max) {
  return {-tw.base.m_const * tw.D, x_max};
}

namespace {

const std::uint32_t kSieveModuli[] = {64, 63, 55, 61, 59, 53, 47, 37};

simd::SieveSpec build_sieve(const Curve& c) {
  simd::SieveSpec spec;
  for (std::uint32_t m : kSieveModuli) {
    std::vector<bool> square(m, false);
    for (std::uint32_t t = 0; t < m; ++t) square[(t * t) % m] = true;
    std::uint64_t am = mpz_fdiv_ui(c.A.get_mpz_t(), m);
    std::uint64_t bm = mpz_fdiv_ui(c.B.get_mpz_t(), m);
    std::uint64_t mask = 0;
    for (std::uint64_t r = 0; r < m; ++r) {
      std::uint64_t v = (r * r % m * r + am * r + bm) % m;
      if (square[v]) mask |= std::uint64_t{1} << r;
    }
    spec.mod[spec.count++] = {m, mask};
  }
  return spec;
}

std::int64_t to_i64(const Int& v) {
  if (!mpz_fits_slong_p(v.get_mpz_t()) || abs(v) > Int("4000000000000000000"))
    throw Error(ErrorCode::kDomainError, "window endpoint out of range: " + v.get_str());
  return mpz_get_si(v.get_mpz_t());
}

}  // namespace

EnumerationResult enumerate_curve(const Curve& c, const SearchWindow& window,
                                  const EnumerationConfig& cfg) {
  if (window.x_min > window.x_max)
    throw Error(ErrorCode::kDomainError, "empty window [" + window.x_min.get_str() + ", " +
                                             window.x_max.get_str() + "]");
  Int size = window.x_max - window.x_min + 1;
  if (size > cfg.max_window)
    throw Error(ErrorCode::kBudgetExceeded, "window of " + size.get_str() + " exceeds cap " +
                                                cfg.max_window.get_str());
  const std::int64_t lo = to_i64(window.x_min);
  const std::int64_t hi = to_i64(window.x_max);
  simd::SieveSpec spec = build_sieve(c);

  EnumerationResult res;
  res.x_min = window.x_min;
  res.x_max = window.x_max;
  res.complete_below = window.x_min <= -c.m_const;
  std::vector<std::uint8_t> flags(cfg.chunk);
  Int x, v, y;
  for (std::int64_t start = lo; start <= hi;) {
    std::size_t n = static_cast<std::size_t>(
        std::min<std::int64_t>(static_cast<std::int64_t>(cfg.chunk) - 1, hi - start) + 1);
    simd::sieve_flags(spec, start, n, flags.data());
    for (std::size_t i = 0; i < n; ++i) {
      if (!flags[i]) continue;
      mpz_set_si(x.get_mpz_t(), start + static_cast<std::int64_t>(i));
      v = x * x * x + c.A * x + c.B;
      if (v < 0 || !is_perfect_square(v)) continue;
      y = isqrt(v);
      if (y == 0) {
        res.points.push_back(Point::affine(Rat(x), Rat(0)));
      } else {
        res.points.push_back(Point::affine(Rat(x), Rat(-y)));
        res.points.push_back(Point::affine(Rat(x), Rat(y)));
      }
    }
    if (hi - start < static_cast<std::int64_t>(n)) break;
    start += static_cast<std::int64_t>(n);
  }
  return res;
}

EnumerationResult enumerate_integral(const TwistDescriptor& tw, const SearchWindow& window,
                                     const EnumerationConfig& cfg) {
  return enumerate_curve(tw.twisted, window, cfg);
}

const char* provenance_name(Provenance p) {
  return p == Provenance::kIngested ? "ingested" : "heuristic";
}

Eigen::MatrixXd gram_matrix(const Curve& c, const std::vector<Point>& gens, double tol) {
  const int r = static_cast<int>(gens.size());
  Eigen::MatrixXd g(r, r);
  std::vector<double> h(r);
  for (int i = 0; i < r; ++i) h[i] = canonical_height_doubling(c, gens[i], tol).value;
  for (int i = 0; i < r; ++i) {
    g(i, i) = h[i];
    for (int j = i + 1; j < r; ++j) {
      double hs = canonical_height_doubling(c, add(c, gens[i], gens[j]), tol).value;
      g(i, j) = g(j, i) = (hs - h[i] - h[j]) / 2;
    }
  }
  return g;
}

double normalized_gram_det(const Eigen::MatrixXd& gram) {
  if (gram.rows() == 0) return 1;
  Eigen::VectorXd d = gram.diagonal();
  for (int i = 0; i < d.size(); ++i)
    if (!(d(i) > 0)) return 0;
  Eigen::VectorXd s = d.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd corr = s.asDiagonal() * gram * s.asDiagonal();
  return corr.determinant();
}

GeneratorSet make_generator_set(const Curve& c, const Int& D, std::vector<Point> gens,
                                Provenance prov, const GeneratorConfig& cfg) {
  GeneratorSet gs;
  gs.curve = c;
  gs.D = D;
  gs.provenance = prov;
  gs.tol = cfg.tol;
  gs.torsion = torsion_subgroup(c);
  for (const Point& p : gens) {
    require_on_curve(c, p);
    if (p.inf || torsion_order(c, p) > 0)
      throw Error(ErrorCode::kDependentGenerators, "torsion generator " + point_to_string(p));
  }
  gs.gens = std::move(gens);
  gs.rank = static_cast<int>(gs.gens.size());
  gs.gram = gram_matrix(c, gs.gens, cfg.tol);
  double nd = normalized_gram_det(gs.gram);
  if (gs.rank > 0 && nd <= cfg.independence)
    throw Error(ErrorCode::kDependentGenerators,
                "normalised Gram determinant " + std::to_string(nd));
  return gs;
}

GeneratorSet ingest_generators_text(const std::string& json_text, const GeneratorConfig& cfg) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kIoError, std::string("generator file: ") + e.what());
  }
  try {
    Curve base = make_curve(json_int(j.at("A")), json_int(j.at("B")));
    Int D = j.contains("D") ? json_int(j["D"]) : Int(1);
    TwistDescriptor tw = normalize_twist(base, D);
    std::vector<Point> gens;
    for (const auto& g : j.at("gens")) gens.push_back(point_from_pair(g));
    if (j.contains("rank") && json_int(j["rank"]) != static_cast<long>(gens.size()))
      throw Error(ErrorCode::kIoError, "rank does not match the number of generators");
    GeneratorSet gs = make_generator_set(tw.twisted, tw.D, gens, Provenance::kIngested, cfg);
    if (j.contains("torsion")) {
      for (const auto& t : j["torsion"]) {
        Point tp = point_from_pair(t);
        require_on_curve(tw.twisted, tp);
        if (!gs.torsion.contains(tp))
          throw Error(ErrorCode::kIoError, "listed torsion point " + point_to_string(tp) +
                                               " is not torsion");
      }
    }
    return gs;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIoError, std::string("generator file: ") + e.what());
  }
}

GeneratorSet ingest_generators_file(const std::string& path, const GeneratorConfig& cfg) {
  return ingest_generators_text(read_text_file(path), cfg);
}

namespace {

struct Row {
  std::vector<Int> v;
  Point pt;
};

// Replaces the rows by an echelon basis of their integer span, carrying the
// matching points along. Zero rows are dropped.
std::vector<Row> integer_echelon(const Curve& c, std::vector<Row> rows, int cols) {
  std::vector<Row> basis;
  for (int j = 0; j < cols; ++j) {
    for (;;) {
      int piv = -1;
      for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        if (rows[i].v[j] != 0 && (piv < 0 || abs(rows[i].v[j]) < abs(rows[piv].v[j]))) piv = i;
      if (piv < 0) break;
      bool reduced = true;
      for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        if (i == piv || rows[i].v[j] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i].v[j].get_mpz_t(), rows[piv].v[j].get_mpz_t());
        for (int k = 0; k < cols; ++k) rows[i].v[k] -= q * rows[piv].v[k];
        rows[i].pt = sub(c, rows[i].pt, mul(c, q, rows[piv].pt));
        if (rows[i].v[j] != 0) reduced = false;
      }
      if (reduced) {
        basis.push_back(rows[piv]);
        rows.erase(rows.begin() + piv);
        break;
      }
    }
  }
  return basis;
}

}  // namespace

GeneratorSet find_generators_heuristic(const TwistDescriptor& tw, const HeuristicConfig& cfg) {
  const Curve& c = tw.twisted;
  const double tol = cfg.gens.tol;
  std::vector<Point> cand;
  for (int w = 1; w <= cfg.max_denominator_root; ++w) {
    Int w2 = Int(w) * w, w4 = w2 * w2, w6 = w4 * w2;
    Curve scaled = make_curve(c.A * w4, c.B * w6);
    SearchWindow win{-scaled.m_const, cfg.x_bound * w2};
    for (const Point& p : enumerate_curve(scaled, win).points) {
      if (p.y <= 0) continue;
      Int u = p.x.get_num();
      Int g;
      mpz_gcd_ui(g.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(w));
      if (g != 1) continue;
      Point q = Point::affine(Rat(u, w2), Rat(p.y.get_num(), w2 * w));
      q.x.canonicalize();
      q.y.canonicalize();
      if (torsion_order(c, q) == 0) cand.push_back(q);
    }
  }
  for (const Point& p : cfg.extra_candidates) {
    require_on_curve(c, p);
    if (p.inf || torsion_order(c, p) != 0) continue;
    Point q = p.y < 0 ? neg(p) : p;
    if (std::find(cand.begin(), cand.end(), q) == cand.end()) cand.push_back(q);
  }
  std::vector<std::pair<double, Point>> ranked;
  for (const Point& p : cand) ranked.push_back({canonical_height_doubling(c, p, tol).value, p});
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return point_less(a.second, b.second);
  });

  std::vector<Point> basis;
  for (const auto& [h, p] : ranked) {
    if (static_cast<int>(basis.size()) >= cfg.max_rank) break;
    std::vector<Point> trial = basis;
    trial.push_back(p);
    if (normalized_gram_det(gram_matrix(c, trial, tol)) > cfg.gens.independence) basis = trial;
  }

  // Saturate: any candidate with non-integral coordinates enlarges the lattice.
  for (const auto& [h, p] : ranked) {
    const int r = static_cast<int>(basis.size());
    if (r == 0) break;
    Eigen::MatrixXd g = gram_matrix(c, basis, tol);
    Eigen::VectorXd rhs(r);
    for (int i = 0; i < r; ++i) rhs(i) = height_pairing(c, p, basis[i], tol);
    Eigen::VectorXd coef = g.ldlt().solve(rhs);
    bool integral = true;
    for (int i = 0; i < r; ++i)
      if (std::fabs(coef(i) - std::round(coef(i))) > 1e-4) integral = false;
    if (integral) continue;
    int den = 0;
    for (int k = 2; k <= 24 && den == 0; ++k) {
      bool ok = true;
      for (int i = 0; i < r; ++i)
        if (std::fabs(k * coef(i) - std::round(k * coef(i))) > 1e-4 * k) ok = false;
      if (ok) den = k;
    }
    if (den == 0) continue;
    std::vector<Row> rows;
    for (int i = 0; i < r; ++i) {
      Row row{std::vector<Int>(r, Int(0)), basis[i]};
      row.v[i] = den;
      rows.push_back(row);
    }
    Row extra{std::vector<Int>(r), p};
    for (int i = 0; i < r; ++i) extra.v[i] = Int(static_cast<long>(std::lround(den * coef(i))));
    rows.push_back(extra);
    std::vector<Row> ech = integer_echelon(c, rows, r);
    std::vector<Point> nb;
    for (const Row& row : ech) nb.push_back(row.pt);
    if (static_cast<int>(nb.size()) == r) basis = nb;
  }
  // Sorted by height for stable output.
  std::vector<std::pair<double, Point>> fin;
  for (const Point& p : basis) fin.push_back({canonical_height_doubling(c, p, tol).value, p});
  std::sort(fin.begin(), fin.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return point_less(a.second, b.second);
  });
  basis.clear();
  for (auto& f : fin) basis.push_back(f.second);
  return make_generator_set(c, tw.D, basis, Provenance::kHeuristic, cfg.gens);
}

}  // namespace qtwist
