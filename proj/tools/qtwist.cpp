// Command-line front end.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "qtwist/errors.hpp"
#include "qtwist/heights.hpp"
#include "qtwist/json_io.hpp"
#include "qtwist/lemma_lab.hpp"
#include "qtwist/mw_geometry.hpp"
#include "qtwist/point_search.hpp"
#include "qtwist/scan.hpp"

using namespace qtwist;

namespace {

struct Globals {
  double tol = 1e-8;
  std::uint64_t seed = 1;
  bool json = false;
  bool csv = false;
  std::string out;
};

struct CurveArgs {
  std::string A = "-1";
  std::string B = "0";
  std::string D = "1";
};

void add_curve_opts(CLI::App* app, CurveArgs& c) {
  app->add_option("--A", c.A, "coefficient A of the base curve")->capture_default_str();
  app->add_option("--B", c.B, "coefficient B of the base curve")->capture_default_str();
  app->add_option("--D", c.D, "twist parameter")->capture_default_str();
}

TwistDescriptor twist_of(const CurveArgs& c) {
  return normalize_twist(make_curve(parse_int(c.A), parse_int(c.B)), parse_int(c.D));
}

Point parse_point(const std::string& s) {
  if (s == "inf") return Point::infinity();
  auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::kUsage, "point must be x,y");
  return Point::affine(parse_rat(s.substr(0, comma)), parse_rat(s.substr(comma + 1)));
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    write_text_file(g.out, text);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json points_json(const TwistDescriptor& tw, const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const Point& p : pts) a.push_back(point_to_json(tw.base, tw.D, p));
  return a;
}

GeneratorSet generators_for(const TwistDescriptor& tw, const std::string& file, double tol) {
  GeneratorConfig gc;
  gc.tol = std::min(tol, 1e-10);
  if (!file.empty()) {
    GeneratorSet gs = ingest_generators_file(file, gc);
    if (!same_curve(gs.curve, tw.twisted))
      throw Error(ErrorCode::kUsage, "generator file describes a different curve");
    return gs;
  }
  HeuristicConfig hc;
  hc.gens = gc;
  return find_generators_heuristic(tw, hc);
}

Json generators_json(const TwistDescriptor& tw, const GeneratorSet& gs) {
  Json j;
  j["curve"] = curve_to_json(tw.base, tw.D);
  j["rank"] = gs.rank;
  j["provenance"] = provenance_name(gs.provenance);
  j["gens"] = points_json(tw, gs.gens);
  j["torsion"] = points_json(tw, gs.torsion.points);
  j["torsion_tag"] = gs.torsion.tag_name();
  Json gram = Json::array();
  for (int i = 0; i < gs.gram.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < gs.gram.cols(); ++k) row.push_back(gs.gram(i, k));
    gram.push_back(row);
  }
  j["gram"] = gram;
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"qtwist: integral points on quadratic twists"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "height tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  auto* fj = app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--csv", g.csv, "CSV output")->excludes(fj);
  app.add_option("--out", g.out, "write output to this file");
  // Global flags are accepted after the subcommand too.
  app.fallthrough();

  auto* table = app.add_subcommand("table", "spherical-code table for n = 2..20");

  CurveArgs info_c;
  auto* info = app.add_subcommand("curve-info", "invariants, torsion and M of E_D");
  add_curve_opts(info, info_c);

  CurveArgs en_c;
  std::string en_xmax = "1000000", en_xmin;
  auto* en = app.add_subcommand("enumerate", "integral points of E_D in a window");
  add_curve_opts(en, en_c);
  en->add_option("--x-max", en_xmax)->capture_default_str();
  en->add_option("--x-min", en_xmin, "defaults to -M D");

  CurveArgs cl_c;
  std::string cl_point;
  auto* cl = app.add_subcommand("classify", "canonical height and class of a point on E_D");
  add_curve_opts(cl, cl_c);
  cl->add_option("--point", cl_point, "x,y on E_D")->required();

  auto* gens = app.add_subcommand("gens", "generator sets");
  gens->require_subcommand(1);
  std::string ingest_file;
  auto* ingest = gens->add_subcommand("ingest", "validate a generator file");
  ingest->add_option("file", ingest_file)->required();
  CurveArgs gs_c;
  auto* search = gens->add_subcommand("search", "heuristic small-point search");
  add_curve_opts(search, gs_c);

  CurveArgs an_c;
  std::string an_xmax = "1000000", an_gens;
  auto* angles = app.add_subcommand("angles", "pairwise angle audits per height class");
  add_curve_opts(angles, an_c);
  angles->add_option("--x-max", an_xmax)->capture_default_str();
  angles->add_option("--gens", an_gens, "generator file; heuristic search otherwise");

  std::string lemma;
  long trials = 10000;
  auto* verify = app.add_subcommand("verify", "run one lemma check");
  verify->add_option("lemma", lemma)->required()->check(CLI::IsMember(lemma_ids()));
  verify->add_option("--trials", trials)->capture_default_str();

  ScanConfig sc;
  std::string sc_a = "-1", sc_b = "0", sc_xmax = "1000000";
  bool no_heuristic = false;
  auto* scan_cmd = app.add_subcommand("scan", "twist-family scan");
  scan_cmd->add_option("--A", sc_a)->capture_default_str();
  scan_cmd->add_option("--B", sc_b)->capture_default_str();
  scan_cmd->add_option("--d-min", sc.d_min)->capture_default_str();
  scan_cmd->add_option("--d-max", sc.d_max)->capture_default_str();
  scan_cmd->add_option("--x-max", sc_xmax)->capture_default_str();
  scan_cmd->add_option("--gens-dir", sc.gens_dir, "directory of D<d>.json generator files");
  scan_cmd->add_flag("--no-heuristic", no_heuristic);
  scan_cmd->add_option("--threads", sc.threads)->capture_default_str();

  long rc_d = 9;
  double rc_eps = 0.75;
  auto* roth = app.add_subcommand("roth-count", "approximation count bound");
  roth->add_option("--d", rc_d)->capture_default_str();
  roth->add_option("--eps", rc_eps)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (table->parsed()) {
    if (g.json) {
      Json a = Json::array();
      for (const TableRow& r : appendix_table())
        a.push_back({{"n", r.n}, {"cos_theta", fixed(r.cos_theta, 10)}, {"E_theta", fixed(r.e_theta, 10)}});
      emit(g, dump(a));
    } else {
      emit(g, appendix_table_csv());
    }
    return 0;
  }

  if (info->parsed()) {
    TwistDescriptor tw = twist_of(info_c);
    TorsionInfo tor = torsion_subgroup(tw.twisted);
    Json j = curve_to_json(tw.base, tw.D);
    j["negated_base"] = tw.negated;
    j["M"] = tw.base.m_const.get_str();
    j["MD"] = Int(tw.base.m_const * tw.D).get_str();
    j["torsion_tag"] = tor.tag_name();
    j["torsion"] = points_json(tw, tor.points);
    HeightDiffBounds hb = height_diff_bounds(tw.twisted);
    j["height_diff_bounds"] = {{"c1", hb.c1}, {"c2", hb.c2}};
    emit(g, dump(j));
    return 0;
  }

  if (en->parsed()) {
    TwistDescriptor tw = twist_of(en_c);
    SearchWindow w = default_window(tw, parse_int(en_xmax));
    if (!en_xmin.empty()) w.x_min = parse_int(en_xmin);
    EnumerationResult r = enumerate_integral(tw, w);
    if (g.csv) {
      std::string s = "x,y\n";
      for (const Point& p : r.points) s += rat_to_string(p.x) + "," + rat_to_string(p.y) + "\n";
      emit(g, s);
    } else {
      Json j;
      j["curve"] = curve_to_json(tw.base, tw.D);
      j["x_min"] = r.x_min.get_str();
      j["x_max"] = r.x_max.get_str();
      j["complete_below"] = r.complete_below;
      j["complete_above"] = r.complete_above;
      j["points"] = points_json(tw, r.points);
      emit(g, dump(j));
    }
    return 0;
  }

  if (cl->parsed()) {
    TwistDescriptor tw = twist_of(cl_c);
    Point p = parse_point(cl_point);
    require_on_curve(tw.twisted, p);
    Classification c = classify(tw, p, g.tol);
    HeightValue h = canonical_height_doubling(tw.twisted, p, g.tol);
    SmallXReport sx = small_x_check(tw, p, g.tol);
    Json j;
    j["point"] = point_to_json(tw.base, tw.D, p);
    j["hhat"] = height_to_json(h);
    j["class"] = height_class_name(c.tag);
    j["boundary"] = c.boundary;
    j["x_le_MD"] = sx.x_le_md;
    j["small_x_implication_held"] = sx.implication_held;
    emit(g, dump(j));
    return 0;
  }

  if (ingest->parsed()) {
    GeneratorConfig gc;
    gc.tol = std::min(g.tol, 1e-10);
    GeneratorSet gs = ingest_generators_file(ingest_file, gc);
    TwistDescriptor tw = normalize_twist(make_curve(gs.curve.A / (gs.D * gs.D),
                                                    gs.curve.B / (gs.D * gs.D * gs.D)),
                                         gs.D);
    emit(g, dump(generators_json(tw, gs)));
    return 0;
  }

  if (search->parsed()) {
    TwistDescriptor tw = twist_of(gs_c);
    emit(g, dump(generators_json(tw, generators_for(tw, "", g.tol))));
    return 0;
  }

  if (angles->parsed()) {
    TwistDescriptor tw = twist_of(an_c);
    GeneratorSet gs = generators_for(tw, an_gens, g.tol);
    EnumerationResult r = enumerate_integral(tw, default_window(tw, parse_int(an_xmax)));
    GapAuditConfig gc;
    gc.tol = std::min(g.tol, 1e-10);
    Json j;
    j["curve"] = curve_to_json(tw.base, tw.D);
    j["rank"] = gs.rank;
    bool all_pass = true;
    for (HeightClass hc : {HeightClass::kSmall, HeightClass::kMediumSmall,
                           HeightClass::kMediumLarge, HeightClass::kLarge}) {
      GapAudit ga = gap_audit(r.points, gs, tw, hc, gc);
      Json recs = Json::array();
      for (const AngleRecord& rec : ga.records) {
        recs.push_back(angle_record_to_json(tw, rec));
        all_pass = all_pass && rec.pass;
      }
      j[height_class_name(hc)] = {{"points", ga.points_in_regime},
                                  {"skipped", points_json(tw, ga.skipped)},
                                  {"records", recs}};
    }
    j["all_pass"] = all_pass;
    emit(g, dump(j));
    return 0;
  }

  if (verify->parsed()) {
    LabConfig lc;
    lc.trials = trials;
    lc.seed = g.seed;
    VerificationReport rep = run_lemma(lemma, lc);
    emit(g, dump(report_to_json(rep)));
    return rep.status == ReportStatus::kFail ? 1 : 0;
  }

  if (scan_cmd->parsed()) {
    sc.A = parse_int(sc_a);
    sc.B = parse_int(sc_b);
    sc.x_max = parse_int(sc_xmax);
    sc.tol = g.tol;
    sc.seed = g.seed;
    sc.heuristic = !no_heuristic;
    std::vector<ScanRow> rows = scan(sc, [](const ScanRow& r) {
      std::fprintf(stderr, "D=%ld points=%d%s\n", r.D, r.integral_count,
                   r.error.empty() ? "" : (" error: " + r.error).c_str());
    });
    emit(g, g.csv ? scan_to_csv(rows) : dump(scan_to_json(sc, rows)));
    return 0;
  }

  if (roth->parsed()) {
    double v = roth_count(rc_d, rc_eps);
    if (g.json) {
      emit(g, dump(Json{{"d", rc_d}, {"eps", rc_eps}, {"value", v}}));
    } else {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.10e\n", v);
      emit(g, buf);
    }
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    switch (e.code()) {
      case ErrorCode::kUsage:
      case ErrorCode::kDomainError:
      case ErrorCode::kSingularCurve:
      case ErrorCode::kNotSquarefree:
      case ErrorCode::kZeroTwist:
      case ErrorCode::kOffCurvePoint:
      case ErrorCode::kIoError:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
