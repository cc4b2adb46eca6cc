#include "scenario.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <thread>

#include "corad/expr.hpp"
#include "corad/geometry.hpp"
#include "corad/polyalg.hpp"
#include "corad/residues.hpp"
#include "corad/transforms.hpp"

namespace corad::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
  throw Error(Errc::invalid_input, "config field '" + where + "': " + what);
}

Cx parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    config_error(where, "expected [re, im]");
  return Cx(j[0].get<double>(), j[1].get<double>());
}

CxVec parse_point(const json& j, const std::string& where, size_t len) {
  if (!j.is_array() || j.size() != len)
    config_error(where, "expected " + std::to_string(len) + " coordinates");
  CxVec p(len);
  for (size_t k = 0; k < len; ++k)
    p[k] = parse_complex(j[k], where + "[" + std::to_string(k) + "]");
  return p;
}

HomPoly parse_hompoly(const json& j, int ambient_n, const std::string& where) {
  if (!j.is_array() || j.empty()) config_error(where, "expected a term list");
  std::vector<std::pair<MultiIndex, Cx>> terms;
  for (size_t t = 0; t < j.size(); ++t) {
    const json& term = j[t];
    std::string tw = where + "[" + std::to_string(t) + "]";
    if (!term.is_array() || term.size() != 2)
      config_error(tw, "expected [[e0,...,en],[re,im]]");
    const json& exps = term[0];
    if (!exps.is_array() || static_cast<int>(exps.size()) != ambient_n + 1)
      config_error(tw, "exponent list must have n+1 entries");
    MultiIndex idx{std::vector<int>(ambient_n + 1, 0)};
    for (int v = 0; v <= ambient_n; ++v) {
      if (!exps[v].is_number_integer() || exps[v].get<int>() < 0)
        config_error(tw, "exponents must be non-negative integers");
      idx.exponents[v] = exps[v].get<int>();
    }
    terms.emplace_back(idx, parse_complex(term[1], tw));
  }
  return HomPoly(ambient_n, std::move(terms));  // degree validated here
}

Polynomial parse_local_poly(const json& j, int nvars, const std::string& where) {
  Polynomial p(nvars);
  if (!j.is_array()) config_error(where, "expected a term list");
  for (size_t t = 0; t < j.size(); ++t) {
    const json& term = j[t];
    std::string tw = where + "[" + std::to_string(t) + "]";
    if (!term.is_array() || term.size() != 2)
      config_error(tw, "expected [[exponents],[re,im]]");
    const json& exps = term[0];
    if (!exps.is_array() || static_cast<int>(exps.size()) != nvars)
      config_error(tw, "exponent list length mismatch");
    MultiIndex idx{std::vector<int>(nvars, 0)};
    for (int v = 0; v < nvars; ++v) idx.exponents[v] = exps[v].get<int>();
    p.add_term(idx, parse_complex(term[1], tw));
  }
  return p;
}

struct Scenario {
  std::string name;
  BallComplementDomain domain;
  double delta = 0.1;
  std::optional<VarietySpec> variety;
  std::optional<ResidualForm> form;
  std::string functional_kind;  // point_mass | boundary_residue | martineau
  CxVec point_mass_u;
  Expr martineau_g;
  double martineau_nu = 0.2;
  std::vector<CxVec> test_points;
  double identity_tol = 1e-8;
  double pde_tol = 1e-6;
  AdmissibleSchedule schedule;
  int cycle_nodes = 256;
  int martineau_grid = 48;
  double verify_radius = 0.12;
  bool expect_zero = false;
  std::vector<Expr> pairing_numerators;
  std::vector<std::string> pairing_sources;
  struct LocalBasis {
    std::string label;
    std::vector<Polynomial> denominators;
    Polynomial numerator;
  };
  std::vector<LocalBasis> residue_bases;
};

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open scenario file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::invalid_input, std::string("scenario parse error: ") + e.what());
  }

  Scenario sc;
  sc.name = j.value("name", std::filesystem::path(path).stem().string());

  if (!j.contains("domain")) config_error("domain", "missing");
  const json& jd = j["domain"];
  if (jd.value("kind", "") != std::string("ball_complement"))
    config_error("domain.kind", "only 'ball_complement' is supported");
  sc.domain.n = 2;
  sc.domain.radius = jd.value("radius", 1.0);
  if (!(sc.domain.radius > 0)) config_error("domain.radius", "must be positive");
  sc.delta = jd.value("delta", 0.1);
  if (!(sc.delta >= 0)) config_error("domain.delta", "must be non-negative");

  if (j.contains("variety")) {
    const json& jv = j["variety"];
    VarietySpec v;
    v.n = sc.domain.n;
    if (!jv.contains("generators") || !jv["generators"].is_array() ||
        jv["generators"].empty())
      config_error("variety.generators", "need at least one polynomial");
    for (size_t g = 0; g < jv["generators"].size(); ++g)
      v.generators.push_back(parse_hompoly(
          jv["generators"][g], v.n,
          "variety.generators[" + std::to_string(g) + "]"));
    if (!jv.contains("weight")) config_error("variety.weight", "missing");
    v.weight = jv["weight"].get<int>();
    if (jv.contains("param")) {
      const json& jp = jv["param"];
      if (jp.value("kind", "") != std::string("monomial_curve"))
        config_error("variety.param.kind", "only 'monomial_curve' is supported");
      MonomialCurve curve;
      for (const json& p : jp["powers"]) curve.powers.push_back(p.get<int>());
      curve.s_bound = jp.value("s_bound", 1e6);
      if (curve.powers.empty() || curve.powers[0] != 0)
        config_error("variety.param.powers", "first power must be 0");
      v.param = curve;
    }
    v.validate();
    sc.variety = std::move(v);
  }

  if (j.contains("form")) {
    const json& jf = j["form"];
    int weight = sc.variety ? sc.variety->weight : 0;
    if (jf.contains("leray")) {
      Expr e = Expr::parse(jf["leray"].get<std::string>());
      sc.form = ResidualForm::from_leray(
          [e](Cx s) {
            EvalContext ctx;
            ctx.s = s;
            return e.eval(ctx);
          },
          weight);
      // Admissibility at infinity: J must decay at least like 1/s^2 so the
      // density extends to the curve's point at infinity inside D.
      auto decay = [&](double radius) {
        double worst = 0.0;
        for (double ang : {0.4, 2.0, 3.7, 5.2}) {
          EvalContext ctx;
          ctx.s = radius * Cx(std::cos(ang), std::sin(ang));
          worst = std::max(worst, std::abs(e.eval(ctx)) * radius * radius);
        }
        return worst;
      };
      double d1 = decay(1e3), d2 = decay(1e6);
      if (!(d2 <= 10.0 * d1 + 1e-9))
        config_error("form.leray", "density does not decay like 1/s^2 at infinity");
    } else if (jf.contains("affine_numerator")) {
      Expr e = Expr::parse(jf["affine_numerator"].get<std::string>());
      sc.form = ResidualForm::from_affine(
          [e](std::span<const Cx> u) {
            EvalContext ctx;
            ctx.u.assign(u.begin(), u.end());
            return e.eval(ctx);
          },
          weight);
    } else {
      config_error("form", "need 'leray' or 'affine_numerator'");
    }
  }

  sc.functional_kind = "boundary_residue";
  if (j.contains("functional")) {
    const json& jf = j["functional"];
    sc.functional_kind = jf.value("kind", "boundary_residue");
    if (sc.functional_kind == "point_mass") {
      if (!jf.contains("u")) config_error("functional.u", "missing");
      sc.point_mass_u = parse_point(jf["u"], "functional.u", sc.domain.n);
    } else if (sc.functional_kind == "martineau") {
      if (!jf.contains("g")) config_error("functional.g", "missing");
      sc.martineau_g = Expr::parse(jf["g"].get<std::string>());
      sc.martineau_nu = jf.value("nu", 0.2);
    } else if (sc.functional_kind != "boundary_residue") {
      config_error("functional.kind", "unknown functional");
    }
  }

  if (j.contains("test_points")) {
    const json& jp = j["test_points"];
    for (size_t k = 0; k < jp.size(); ++k) {
      CxVec xi = parse_point(jp[k], "test_points[" + std::to_string(k) + "]",
                             sc.domain.n + 1);
      if (!dual_contains(sc.domain, xi))
        config_error("test_points[" + std::to_string(k) + "]",
                     "point lies outside the dual domain");
      sc.test_points.push_back(std::move(xi));
    }
  }

  if (j.contains("tolerances")) {
    sc.identity_tol = j["tolerances"].value("identity", sc.identity_tol);
    sc.pde_tol = j["tolerances"].value("pde", sc.pde_tol);
    if (!(sc.identity_tol > 0) || !(sc.pde_tol > 0))
      config_error("tolerances", "must be positive");
  }
  if (j.contains("schedule")) {
    const json& js = j["schedule"];
    sc.schedule.base = js.value("base", sc.schedule.base);
    sc.schedule.kappa = js.value("kappa", sc.schedule.kappa);
    sc.schedule.halvings = js.value("halvings", sc.schedule.halvings);
    sc.schedule.tolerance = js.value("tolerance", sc.schedule.tolerance);
    sc.schedule.validate();
  }
  if (j.contains("quadrature")) {
    sc.cycle_nodes = j["quadrature"].value("cycle_nodes", sc.cycle_nodes);
    sc.martineau_grid = j["quadrature"].value("martineau_grid", sc.martineau_grid);
    sc.verify_radius = j["quadrature"].value("verify_radius", sc.verify_radius);
  }
  sc.expect_zero = j.value("expect_zero", false);

  if (j.contains("pairing_numerators")) {
    for (const json& e : j["pairing_numerators"]) {
      sc.pairing_sources.push_back(e.get<std::string>());
      sc.pairing_numerators.push_back(Expr::parse(e.get<std::string>()));
    }
  }

  if (j.contains("residue_bases")) {
    const json& jb = j["residue_bases"];
    for (size_t b = 0; b < jb.size(); ++b) {
      std::string where = "residue_bases[" + std::to_string(b) + "]";
      Scenario::LocalBasis basis;
      basis.label = jb[b].value("label", "basis" + std::to_string(b));
      const json& dens = jb[b]["denominators"];
      int nvars = static_cast<int>(dens.size());
      for (size_t d = 0; d < dens.size(); ++d)
        basis.denominators.push_back(parse_local_poly(
            dens[d], nvars, where + ".denominators[" + std::to_string(d) + "]"));
      basis.numerator =
          parse_local_poly(jb[b]["numerator"], nvars, where + ".numerator");
      sc.residue_bases.push_back(std::move(basis));
    }
  }
  return sc;
}

// ---------------------------------------------------------------------------
// Row computation
// ---------------------------------------------------------------------------

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json num(double v) { return json(v); }

struct Row {
  std::vector<json> cells;
  bool failed = false;
};

std::vector<std::string> transform_columns(int n, int residual_count) {
  std::vector<std::string> cols;
  for (int j = 0; j <= n; ++j) {
    cols.push_back("xi_re" + std::to_string(j));
    cols.push_back("xi_im" + std::to_string(j));
  }
  for (int j = 0; j <= n; ++j) {
    cols.push_back("f_re" + std::to_string(j));
    cols.push_back("f_im" + std::to_string(j));
  }
  for (int k = 0; k < residual_count; ++k)
    cols.push_back("pde_residual" + std::to_string(k));
  cols.push_back("euler_contraction");
  cols.push_back("status");
  return cols;
}

Row transform_row(const CxVec& xi, const CxVec& f,
                  const std::vector<double>& residuals, Cx euler,
                  RowStatus status, bool failed) {
  Row row;
  for (const Cx& c : xi) {
    row.cells.push_back(num(c.real()));
    row.cells.push_back(num(c.imag()));
  }
  for (const Cx& c : f) {
    row.cells.push_back(num(c.real()));
    row.cells.push_back(num(c.imag()));
  }
  for (double r : residuals) row.cells.push_back(num(r));
  row.cells.push_back(num(std::abs(euler)));
  row.cells.push_back(json(to_string(status)));
  row.failed = failed;
  return row;
}

// Runs fn(i) over a bounded pool; results land in index order.
void parallel_rows(size_t count, const std::function<void(size_t)>& fn) {
  unsigned workers = std::min<unsigned>(
      {std::max(1u, std::thread::hardware_concurrency()), 8u,
       static_cast<unsigned>(count == 0 ? 1 : count)});
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  for (std::thread& t : pool) t.join();
}

json run_metadata(const Scenario& sc, const RunOptions& opt) {
  json meta;
  meta["scenario"] = sc.name;
  meta["subcommand"] = opt.subcommand;
  meta["schedule"] = {{"base", sc.schedule.base},
                     {"kappa", sc.schedule.kappa},
                     {"halvings", sc.schedule.halvings},
                     {"tolerance", sc.schedule.tolerance}};
  meta["cycle_nodes"] = sc.cycle_nodes;
  meta["martineau_grid"] = sc.martineau_grid;
  meta["identity_tol"] = sc.identity_tol;
  meta["pde_tol"] = sc.pde_tol;
  return meta;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

ResultTable run_residue(const Scenario& sc, bool& any_failed) {
  ResultTable table;
  table.columns = {"item", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
                   "discrepancy", "status"};

  auto add_row = [&](const std::string& item, Cx lhs, Cx rhs, double tol,
                     RowStatus status) {
    double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    double disc = std::abs(lhs - rhs) / scale;
    any_failed = any_failed || disc > tol || status != RowStatus::ok;
    table.rows.push_back({json(item), num(lhs.real()), num(lhs.imag()),
                          num(rhs.real()), num(rhs.imag()), num(disc),
                          json(to_string(status))});
  };

  // Local bases: exact series residue against schedule-certified tubes.
  for (const auto& basis : sc.residue_bases) {
    CxVec center(basis.denominators.size(), Cx{});
    Cx lhs = grothendieck_residue(basis.denominators, basis.numerator, center);
    LocalTube tube{basis.denominators, basis.numerator, center, 1.0};
    TubeResult quad = tube_integral(tube, sc.schedule);
    add_row(basis.label, lhs, quad.value, sc.identity_tol * 100.0, quad.status);
  }

  // Pairing numerators on the fixture variety: mu^phi(h) and the ideal
  // annihilation row mu^phi(h * P) for each generator.
  if (sc.variety && sc.form && sc.variety->param) {
    Cycle cycle =
        boundary_cycle(sc.domain, *sc.variety->param, sc.delta, sc.cycle_nodes);
    for (size_t i = 0; i < sc.pairing_numerators.size(); ++i) {
      const Expr& e = sc.pairing_numerators[i];
      auto h = [&](std::span<const Cx> z) {
        EvalContext ctx;
        ctx.u.resize(z.size() - 1);
        for (size_t k = 1; k < z.size(); ++k) ctx.u[k - 1] = z[k] / z[0];
        return e.eval(ctx);
      };
      Cx mu = residue_pairing(*sc.variety, *sc.form, h, cycle);
      table.rows.push_back({json("pairing:" + sc.pairing_sources[i]),
                            num(mu.real()), num(mu.imag()), num(0.0), num(0.0),
                            num(0.0), json("ok")});
      for (size_t gidx = 0; gidx < sc.variety->generators.size(); ++gidx) {
        const HomPoly& gen = sc.variety->generators[gidx];
        auto hp = [&](std::span<const Cx> z) { return h(z) * gen(z); };
        Cx zero = residue_pairing(*sc.variety, *sc.form, hp, cycle);
        add_row("ideal:" + sc.pairing_sources[i] + "*P" + std::to_string(gidx),
                zero, Cx{}, sc.identity_tol, RowStatus::ok);
      }
    }
  }
  return table;
}

ResultTable run_transform(const Scenario& sc, const RunOptions& opt,
                          bool& any_failed) {
  const int n = sc.domain.n;
  ResultTable table;

  const bool is_verify = opt.subcommand == "verify";
  const bool is_invert = opt.subcommand == "invert";
  const bool is_radon = opt.subcommand == "radon";

  int residual_count = 0;
  if (is_verify) {
    if (!sc.variety) config_error("variety", "verify needs a variety");
    residual_count = static_cast<int>(sc.variety->generators.size());
  } else if (is_invert) {
    residual_count = 1;  // the inversion roundtrip residual
  }
  table.columns = transform_columns(n, residual_count);

  std::optional<CurveTransform> curve;
  if ((is_radon || is_verify ||
       (opt.subcommand == "fantappie" &&
        sc.functional_kind == "boundary_residue"))) {
    if (!sc.variety || !sc.form)
      config_error("variety/form", "this subcommand needs both blocks");
    TransformSettings settings;
    settings.cycle_resolution = sc.cycle_nodes;
    curve.emplace(sc.domain, *sc.variety, *sc.form, sc.delta, settings);
  }

  std::optional<PointMassFunctional> point_mass;
  std::optional<MartineauFunctional> martineau;
  std::vector<Expr> dg_parts;
  if (opt.subcommand == "fantappie" || is_invert) {
    if (sc.functional_kind == "point_mass") {
      point_mass.emplace(sc.domain, sc.point_mass_u);
    } else if (sc.functional_kind == "martineau") {
      Expr g = sc.martineau_g;
      Expr d2 = g.d_xi(0).d_xi(0);
      auto gf = [g](std::span<const Cx> xi) {
        EvalContext ctx;
        ctx.xi.assign(xi.begin(), xi.end());
        return g.eval(ctx);
      };
      auto d2f = [d2](std::span<const Cx> xi) {
        EvalContext ctx;
        ctx.xi.assign(xi.begin(), xi.end());
        return d2.eval(ctx);
      };
      martineau.emplace(gf, d2f, sc.domain, sc.martineau_nu, sc.martineau_grid);
      for (int j = 0; j <= n; ++j) dg_parts.push_back(g.d_xi(j));
    }
  }
  if (is_invert && !martineau)
    config_error("functional", "invert needs a martineau functional");

  std::vector<Row> rows(sc.test_points.size());
  auto compute = [&](size_t i) {
    const CxVec& xi = sc.test_points[i];
    CxVec f(n + 1, Cx{});
    std::vector<double> residuals(residual_count, 0.0);
    RowStatus status = RowStatus::ok;
    bool failed = false;
    try {
      if (is_radon) {
        auto ev = curve->radon(xi);
        status = ev.status;
        f = ev.form.components;
        if (status == RowStatus::ok) {
          double euler = std::abs(ev.form.euler_contraction());
          failed = euler > sc.identity_tol;
          if (sc.expect_zero)
            failed = failed || norm2(f) > sc.identity_tol;
        }
      } else if (opt.subcommand == "fantappie") {
        if (point_mass) {
          Covector1Form form = point_mass->fantappie(xi);
          f = form.components;
          failed = std::abs(form.euler_contraction() - 1.0) > sc.identity_tol;
        } else if (martineau) {
          auto r = martineau->fantappie(xi);
          status = r.status;
          f = r.form.components;
        } else {
          auto ev = curve->fantappie(xi);
          status = ev.status;
          f = ev.form.components;
          if (status == RowStatus::ok)
            failed = std::abs(ev.form.euler_contraction()) > sc.identity_tol;
        }
      } else if (is_invert) {
        auto r = martineau->fantappie(xi);
        status = r.status;
        f = r.form.components;
        double worst = 0.0;
        EvalContext ctx;
        ctx.xi.assign(xi.begin(), xi.end());
        for (int j = 0; j <= n; ++j) {
          Cx expect = dg_parts[j].eval(ctx);
          worst = std::max(worst, std::abs(f[j] - expect) /
                                      std::max(1.0, std::abs(expect)));
        }
        residuals[0] = worst;
        failed = status == RowStatus::ok && worst > sc.pde_tol;
      } else if (is_verify) {
        auto ev = curve->radon(xi);
        status = ev.status;
        f = ev.form.components;
        if (status == RowStatus::ok &&
            curve->potential_status(xi) == RowStatus::ok) {
          auto g = [&](std::span<const Cx> p) { return curve->potential(p); };
          SystemResidual sys = verify_system_at(
              g, sc.variety->generators, xi, sc.domain, sc.verify_radius);
          status = sys.status;
          if (sys.status == RowStatus::ok) {
            for (int k = 0; k < residual_count; ++k)
              residuals[k] = std::abs(sys.residuals[k]) / sys.scales[k];
            failed = sys.relative > sc.pde_tol;
          }
        } else if (status == RowStatus::ok) {
          status = RowStatus::skipped_near_incidence;
        }
      }
      Cx euler{};
      for (int j = 0; j <= n; ++j) euler += xi[j] * f[j];
      rows[i] = transform_row(xi, f, residuals, euler, status, failed);
    } catch (const Error&) {
      rows[i] = transform_row(xi, CxVec(n + 1, Cx{}),
                              std::vector<double>(residual_count, 0.0), Cx{},
                              RowStatus::skipped_near_incidence, false);
    }
  };
  parallel_rows(sc.test_points.size(), compute);

  for (Row& r : rows) {
    any_failed = any_failed || r.failed;
    table.rows.push_back(std::move(r.cells));
  }
  return table;
}

}  // namespace

std::vector<std::string> emit_report(const ResultTable& table,
                                     const std::vector<std::string>& formats,
                                     const std::string& out_dir,
                                     const std::string& name) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  std::vector<std::string> written;

  for (const std::string& fmt : formats) {
    fs::path path = fs::path(out_dir) / (name + "." + fmt);
    if (fmt == "csv") {
      std::ofstream out(path);
      if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
      for (size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
      out << "\n";
      for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
          if (c) out << ",";
          if (row[c].is_number())
            out << format17(row[c].get<double>());
          else
            out << row[c].get<std::string>();
        }
        out << "\n";
      }
      if (!out) throw Error(Errc::io_error, "write failed: " + path.string());
    } else if (fmt == "json") {
      json doc;
      doc["metadata"] = table.metadata;
      doc["columns"] = table.columns;
      doc["rows"] = table.rows;
      std::ofstream out(path);
      if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
      out << doc.dump(2) << "\n";
      if (!out) throw Error(Errc::io_error, "write failed: " + path.string());
    } else {
      throw Error(Errc::invalid_input, "unknown report format: " + fmt);
    }
    written.push_back(path.string());
  }
  return written;
}

RunOutcome run_scenario(const RunOptions& options) {
  RunOutcome outcome;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Scenario sc = load_scenario(options.scenario_path);
    if (options.tol) {
      sc.identity_tol = *options.tol;
      sc.pde_tol = *options.tol;
    }
    if (options.kappa) {
      sc.schedule.kappa = *options.kappa;
      sc.schedule.validate();
    }
    if (options.grid) sc.martineau_grid = *options.grid;

    bool any_failed = false;
    if (options.subcommand == "residue") {
      outcome.table = run_residue(sc, any_failed);
    } else if (options.subcommand == "radon" ||
               options.subcommand == "fantappie" ||
               options.subcommand == "invert" ||
               options.subcommand == "verify") {
      outcome.table = run_transform(sc, options, any_failed);
    } else {
      throw Error(Errc::invalid_input,
                  "unknown subcommand: " + options.subcommand);
    }
    outcome.table.metadata = run_metadata(sc, options);
    outcome.table.metadata["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (outcome.table.rows.empty())
      std::fprintf(stderr, "warning: scenario '%s' produced an empty table\n",
                   sc.name.c_str());
    outcome.written_files =
        emit_report(outcome.table, options.formats, options.out_dir, sc.name);
    outcome.exit_code = any_failed ? 1 : 0;
  } catch (const Error& e) {
    outcome.exit_code = e.code() == Errc::io_error ? 3 : 2;
    outcome.diagnostic = e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = 2;
    outcome.diagnostic = e.what();
  }
  return outcome;
}

}  // namespace corad::cli
