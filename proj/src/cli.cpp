#include "crl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "crl/general_solver.hpp"
#include "crl/hook_solver.hpp"
#include "crl/realrank.hpp"

namespace crl::cli {

namespace {

std::string root_label(const ProjectivePoint& p) {
  if (p.t() == 0.0) return "inf";
  return fmt(p.affine_value());
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string pass(bool ok) { return ok ? "PASS" : "FAIL"; }

Partition solve_partition(const RationalForm& h, const RunConfig& config) {
  const int n = h.degree();
  if (config.hook && config.partition) {
    throw Error(ErrorKind::ParseError, "give either --partition or --hook, not both");
  }
  if (config.hook) {
    if (*config.hook < 1 || *config.hook > n) {
      throw Error(ErrorKind::OutOfRange, "--hook needs 1 <= a <= " + std::to_string(n));
    }
    return Partition::hook(n, *config.hook);
  }
  if (config.partition) return Partition::parse(*config.partition);
  throw Error(ErrorKind::ParseError, "solve needs --partition or --hook");
}

Json rational_json(const RationalForm& f) {
  Json out = Json::array();
  for (const auto& c : f.coeffs()) out.push_back(c.get_str());
  return out;
}

}  // namespace

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Report cmd_degrees(const Partition& lambda) {
  Report r;
  const int n = lambda.size();
  r.json["partition"] = to_json(lambda);
  r.json["n"] = n;
  r.json["codimension"] = n - lambda.length();
  r.json["hilbert_degree"] = hilbert_degree(lambda);
  Table t{"degrees of " + lambda.to_string(), {"quantity", "value"}, {}};
  t.rows.push_back({"degree", std::to_string(hilbert_degree(lambda))});

  Json dual;
  const bool hyper = lambda.multiplicity(1) == 0;
  dual["hypersurface"] = hyper;
  if (hyper) {
    dual["degree"] = oeding_dual_degree(lambda);
    t.rows.push_back({"dual degree", std::to_string(oeding_dual_degree(lambda))});
  } else {
    t.rows.push_back({"dual degree", "not a hypersurface"});
  }
  std::vector<std::string> labels;
  Json hooks = Json::array();
  for (const auto& h : dual_hooks(lambda)) {
    labels.push_back(h.label());
    hooks.push_back(h.label());
  }
  dual["join_of_hooks"] = hooks;
  r.json["dual"] = dual;
  t.rows.push_back({"dual = join of hooks", "{" + join(labels, ", ") + "}"});

  Json ed;
  std::optional<EdDegrees> degs;
  std::string source = "unknown";
  std::optional<std::vector<std::int64_t>> multidegree;
  if (lambda.is_hook() && lambda.largest() >= 2) {
    degs = ed_degrees_hook(n, lambda.largest());
    source = "hook formula";
  }
  if (n <= 7 && lambda.largest() >= 2) {
    const auto& row = table1_lookup(lambda);
    multidegree = row.multidegree;
    if (!degs) {
      degs = row.ed;
      source = "census table";
    }
  }
  if (degs) {
    ed["special"] = degs->special;
    ed["generic"] = degs->generic;
    t.rows.push_back({"ED degree (special, generic)",
                      "(" + std::to_string(degs->special) + ", " + std::to_string(degs->generic) + ")"});
  } else {
    ed["special"] = nullptr;
    ed["generic"] = nullptr;
    t.rows.push_back({"ED degree (special, generic)", "unknown"});
  }
  ed["source"] = source;
  r.json["ed"] = ed;
  if (multidegree) {
    r.json["polar_classes"] = *multidegree;
    std::vector<std::string> cells;
    for (auto v : *multidegree) cells.push_back(std::to_string(v));
    t.rows.push_back({"polar classes", join(cells, ",")});
  } else if (lambda.is_hook() && lambda.largest() >= 2) {
    const auto [lo, hi] = polar_classes_hook(n, lambda.largest());
    r.json["polar_classes"] = {{"index", {lambda.largest() - 1, lambda.largest()}}, {"values", {lo, hi}}};
    t.rows.push_back({"polar classes (a-1, a)", std::to_string(lo) + ", " + std::to_string(hi)});
  } else {
    r.json["polar_classes"] = nullptr;
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report cmd_solve(const RationalForm& hq, const RunConfig& config) {
  const BinaryForm h = hq.cast<double>();
  const Partition lambda = solve_partition(hq, config);
  if (lambda.size() != h.degree()) {
    throw Error(ErrorKind::DegreeMismatch, "partition of " + std::to_string(lambda.size()) + " for a form of degree " +
                                               std::to_string(h.degree()));
  }
  Report r;
  r.json["h"] = to_json(h);
  r.json["partition"] = to_json(lambda);
  std::vector<CriticalDecomposition> sols;
  const bool hook = lambda.is_hook() && lambda.largest() >= 2;
  if (hook) {
    HookTolerances tol;
    if (config.tol) tol.factor = *config.tol;
    sols = solve_hook(h, lambda.largest(), tol);
    r.json["solver"] = "hook";
  } else {
    GeneralOptions opts;
    opts.starts = config.starts;
    opts.seed = config.seed;
    opts.threads = config.threads;
    if (config.tol) opts.conormal_tol = *config.tol;
    GeneralStats stats;
    sols = solve_general(h, lambda, opts, &stats);
    r.json["solver"] = "general";
    r.json["starts"] = config.starts;
    r.json["seed"] = config.seed;
    r.json["stats"] = {{"converged", stats.converged}, {"vanishing", stats.vanishing}, {"merged", stats.merged},
                       {"duplicates", stats.duplicates}, {"rejected", stats.rejected}};
  }
  if (sols.empty()) throw Error(ErrorKind::NoCriticalPointFound, "no real critical point");

  std::size_t best_primal = 0, best_dual = 0;
  for (std::size_t i = 1; i < sols.size(); ++i) {
    if (sols[i].dist_sq_primal < sols[best_primal].dist_sq_primal) best_primal = i;
    if (sols[i].dist_sq_dual < sols[best_dual].dist_sq_dual) best_dual = i;
  }
  r.json["primal_optimum"] = best_primal;
  r.json["dual_optimum"] = best_dual;
  Json arr = Json::array();
  Table t{"critical points for " + lambda.to_string(),
          {"#", "roots", "f[x^n]", "|h-f|^2", "|h-g|^2", "primal", "dual", "residual", "note"},
          {}};
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const auto& d = sols[i];
    arr.push_back(to_json(d));
    std::vector<std::string> roots;
    for (const auto& p : d.roots) roots.push_back(root_label(p));
    const double res =
        std::max({d.residuals.reconstruction, d.residuals.orthogonality, d.residuals.pythagoras, d.residuals.kernel});
    std::string note;
    if (i == best_primal) note = "primal optimum";
    if (i == best_dual) note += std::string(note.empty() ? "" : ", ") + "dual optimum";
    t.rows.push_back({std::to_string(i + 1), join(roots, " "), fmt(d.f.coeffs().back()), fmt(d.dist_sq_primal),
                      fmt(d.dist_sq_dual), std::string(to_string(d.class_primal)),
                      std::string(to_string(d.class_dual)), fmt(res), note});
  }
  r.json["decompositions"] = arr;
  r.tables.push_back(std::move(t));
  r.notes.push_back("|h|^2 = " + fmt(bombieri_norm_sq(h)) + "; roots are affine s/t (inf for (1:0)); f[x^n] is the leading coefficient of f");
  r.notes.push_back("f = " + to_string(sols[best_primal].f));
  r.notes.push_back("g = " + to_string(sols[best_primal].g));
  return r;
}

Report cmd_realrank(const RationalForm& h, const RunConfig& config) {
  Report r;
  Table t{"real rank of degree " + std::to_string(h.degree()) + " form", {"quantity", "value"}, {}};
  RealRankOptions opts;
  if (config.tol) opts.boundary_tol = *config.tol;
  try {
    // a tolerance asks for the float test; otherwise the input is exact
    const RealRankReport rep =
        config.tol ? generic_real_rank_test(h.cast<double>(), opts) : generic_real_rank_test(h, opts);
    r.json = to_json(rep);
    t.rows.push_back({"generic rank", std::to_string(rep.generic_rank)});
    t.rows.push_back({"verdict", std::string(to_string(rep.verdict))});
    if (rep.boundary_component) {
      std::string c(to_string(*rep.boundary_component));
      if (!rep.component_in_boundary) c += " (not part of the real rank boundary)";
      t.rows.push_back({"boundary component", c});
    }
    for (const auto& q : rep.apolar_forms) t.rows.push_back({"apolar form", to_string(q)});
    if (rep.n % 2 == 1) {
      t.rows.push_back({"disc(q), normalised", fmt(rep.discriminant)});
      t.rows.push_back({"real roots of q", std::to_string(rep.real_roots)});
    } else {
      t.rows.push_back({"pencil discriminant", to_string(*rep.pencil_discriminant)});
      for (const auto& s : rep.samples) {
        t.rows.push_back({"sample at angle " + fmt(s.angle),
                          std::to_string(s.real_roots) + " real roots" + (s.real_rooted ? ", real-rooted" : "")});
      }
      for (const auto& tr : rep.transitions) {
        t.rows.push_back({"D root (" + fmt(tr.point.s()) + ":" + fmt(tr.point.t()) + ")",
                          std::string(tr.all_real ? "all real" : "complex roots") + ", pattern " +
                              (tr.structure ? tr.structure->to_string() : "?")});
      }
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SubgenericRank) throw;
    const int rank = hankel_rank(h.cast<double>());
    r.json["n"] = h.degree();
    r.json["generic_rank"] = h.degree() / 2 + 1;
    r.json["verdict"] = "SUBGENERIC";
    r.json["border_rank"] = rank;
    t.rows.push_back({"generic rank", std::to_string(h.degree() / 2 + 1)});
    t.rows.push_back({"verdict", "SUBGENERIC"});
    t.rows.push_back({"border rank (catalecticant rank)", std::to_string(rank)});
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report cmd_verify_table(std::optional<int> n) {
  if (n && (*n < 2 || *n > 7)) throw Error(ErrorKind::OutOfTable, "the census covers 2 <= n <= 7");
  Report r;
  Table t{"census formula audit", {"partition", "cell", "table", "computed", "result"}, {}};
  Json cells = Json::array();
  auto add = [&](const Partition& lambda, const std::string& cell, const std::string& want, const std::string& got) {
    const bool ok = want == got;
    r.all_pass = r.all_pass && ok;
    t.rows.push_back({lambda.to_string(), cell, want, got, pass(ok)});
    cells.push_back({{"partition", to_json(lambda)}, {"cell", cell}, {"table", want}, {"computed", got},
                     {"pass", ok}});
  };
  auto seq = [](const std::vector<Partition>& ps) {
    std::vector<std::string> l;
    for (const auto& p : ps) l.push_back(p.label());
    return join(l, " ");
  };
  int rows = 0;
  for (const auto& row : table1()) {
    const Partition& lambda = row.lambda;
    if (n && lambda.size() != *n) continue;
    ++rows;
    const auto& md = row.multidegree;
    const auto first = std::find_if(md.begin(), md.end(), [](std::int64_t v) { return v != 0; });
    add(lambda, "degree = leftmost polar class", first == md.end() ? "none" : std::to_string(*first),
        std::to_string(hilbert_degree(lambda)));
    if (lambda.multiplicity(1) == 0) {
      add(lambda, "dual degree = rightmost polar class", std::to_string(md.back()),
          std::to_string(oeding_dual_degree(lambda)));
    }
    add(lambda, "generic ED = sum of polar classes", std::to_string(row.ed.generic),
        std::to_string(std::accumulate(md.begin(), md.end(), std::int64_t{0})));
    add(lambda, "hooks", seq(row.hooks), seq(dual_hooks(lambda)));
    if (lambda.is_hook()) {
      const EdDegrees ed = ed_degrees_hook(lambda.size(), lambda.largest());
      add(lambda, "hook ED (special, generic)",
          std::to_string(row.ed.special) + "," + std::to_string(row.ed.generic),
          std::to_string(ed.special) + "," + std::to_string(ed.generic));
    }
  }
  const auto failed = std::count_if(t.rows.begin(), t.rows.end(), [](const auto& row) { return row[4] != "PASS"; });
  r.json["rows"] = rows;
  r.json["cells"] = cells;
  r.json["all_pass"] = r.all_pass;
  r.notes.push_back(std::to_string(t.rows.size()) + " cells over " + std::to_string(rows) + " rows, " +
                    std::to_string(failed) + " failed");
  r.tables.push_back(std::move(t));
  return r;
}

Report cmd_lop(const RationalForm& h, int k) {
  const RationalForm out = apply_L(k, h);
  Report r;
  r.json["k"] = k;
  r.json["n"] = h.degree();
  r.json["exact"] = rational_json(out);
  r.json["coeffs"] = to_json(out.cast<double>());
  Table t{"L^(" + std::to_string(k) + ")(h)", {"i", "monomial", "coefficient"}, {}};
  const int n = out.degree();
  for (int i = 0; i <= n; ++i) {
    t.rows.push_back({std::to_string(i), "x^" + std::to_string(i) + " y^" + std::to_string(n - i),
                      out[i].get_str()});
  }
  r.notes.push_back("L^(" + std::to_string(k) + ")(h) = " + to_string(out.cast<double>(), 12));
  r.tables.push_back(std::move(t));
  return r;
}

std::string render(const Report& report, Format format) {
  std::ostringstream os;
  if (format == Format::Json) return dump(report.json);
  for (std::size_t ti = 0; ti < report.tables.size(); ++ti) {
    const Table& t = report.tables[ti];
    if (ti) os << "\n";
    if (format == Format::Csv) {
      std::vector<std::string> h;
      for (const auto& c : t.header) h.push_back(csv_cell(c));
      os << join(h, ",") << "\n";
      for (const auto& row : t.rows) {
        std::vector<std::string> cells;
        for (const auto& c : row) cells.push_back(csv_cell(c));
        os << join(cells, ",") << "\n";
      }
      continue;
    }
    std::vector<std::size_t> w(t.header.size(), 0);
    for (std::size_t i = 0; i < t.header.size(); ++i) w[i] = t.header[i].size();
    for (const auto& row : t.rows)
      for (std::size_t i = 0; i < row.size() && i < w.size(); ++i) w[i] = std::max(w[i], row[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        std::string c = cells[i];
        if (i + 1 < cells.size()) c.resize(w[i], ' ');
        s += (i ? "  " : "") + c;
      }
      while (!s.empty() && s.back() == ' ') s.pop_back();
      return s + "\n";
    };
    os << t.title << "\n" << line(t.header);
    std::size_t total = 0;
    for (auto x : w) total += x;
    os << std::string(total + 2 * (w.empty() ? 0 : w.size() - 1), '-') << "\n";
    for (const auto& row : t.rows) os << line(row);
  }
  if (format == Format::Table)
    for (const auto& n : report.notes) os << n << "\n";
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nearest binary forms with prescribed root multiplicities, and real rank tests"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string basis = "monomial";
  std::string format = "table";
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}, {"table", Format::Table}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->transform(CLI::IsMember({"json", "csv", "table"}));
  };
  auto with_form = [&](CLI::App* sub) {
    sub->add_option("--coeffs", cfg.coeffs, "Comma-separated coefficients, ascending in x")->required();
    sub->add_option("--basis", basis, "Coefficient basis: monomial (x^i y^(n-i)) or scaled (C(n,i) x^i y^(n-i))")
        ->transform(CLI::IsMember({"monomial", "scaled"}));
  };

  CLI::App* deg = app.add_subcommand("degrees", "Degrees, dual degree and ED degrees of a multiple root locus");
  std::string deg_partition;
  deg->add_option("lambda", deg_partition, "Partition, e.g. 3,2");
  deg->add_option("--partition", cfg.partition, "Partition, e.g. 3,2");
  common(deg);

  CLI::App* solve = app.add_subcommand("solve", "Critical points of the distance to a multiple root locus");
  with_form(solve);
  solve->add_option("--partition", cfg.partition, "Partition of n");
  solve->add_option("--hook", cfg.hook, "Hook {1^(n-a), a} given by a");
  solve->add_option("--starts", cfg.starts, "Random starts (general solver)")->check(CLI::PositiveNumber);
  solve->add_option("--seed", cfg.seed, "Seed (general solver)");
  solve->add_option("--threads", cfg.threads, "Worker threads (general solver)")->check(CLI::PositiveNumber);
  solve->add_option("--tol", cfg.tol, "Conormal check tolerance")->check(CLI::PositiveNumber);
  common(solve);

  CLI::App* rr = app.add_subcommand("realrank", "Does the real rank equal the generic complex rank?");
  with_form(rr);
  rr->add_option("--tol", cfg.tol, "Run in floating point with this boundary tolerance on the normalised discriminant (odd n); default is exact")
      ->check(CLI::PositiveNumber);
  common(rr);

  CLI::App* vt = app.add_subcommand("verify-table", "Re-derive the formula cells of the census for n <= 7");
  vt->add_option("n", cfg.n, "Degree 2..7 (default: all)");
  common(vt);

  CLI::App* lop = app.add_subcommand("lop", "Apply the operator L^(k) exactly");
  with_form(lop);
  lop->add_option("--k", cfg.k, "Order k")->required();
  common(lop);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  cfg.format = formats.at(format);
  cfg.scaled = basis == "scaled";

  try {
    Report report;
    if (deg->parsed()) {
      if (!deg_partition.empty() && cfg.partition) {
        throw Error(ErrorKind::ParseError, "partition given twice");
      }
      const std::string text = deg_partition.empty() ? cfg.partition.value_or("") : deg_partition;
      if (text.empty()) throw Error(ErrorKind::ParseError, "degrees needs a partition");
      cfg.command = "degrees";
      report = cmd_degrees(Partition::parse(text));
    } else if (solve->parsed()) {
      cfg.command = "solve";
      report = cmd_solve(parse_form(cfg.coeffs, cfg.scaled), cfg);
    } else if (rr->parsed()) {
      cfg.command = "realrank";
      report = cmd_realrank(parse_form(cfg.coeffs, cfg.scaled), cfg);
    } else if (vt->parsed()) {
      cfg.command = "verify-table";
      report = cmd_verify_table(cfg.n);
    } else {
      cfg.command = "lop";
      report = cmd_lop(parse_form(cfg.coeffs, cfg.scaled), cfg.k);
    }
    out << render(report, cfg.format);
    return report.all_pass ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace crl::cli
