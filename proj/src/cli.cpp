#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>

#include <CLI11.hpp>

#include "pkc/cli.hpp"
#include "pkc/euclid2k.hpp"
#include "pkc/linf.hpp"
#include "pkc/lpk.hpp"
#include "pkc/oracle.hpp"

namespace pkc::cli {

using Json = nlohmann::ordered_json;

namespace {

const char* metric_name(Metric m) { return m == Metric::l2 ? "l2" : "linf"; }

Json point_json(Point p) { return {{"x", p.x}, {"y", p.y}}; }

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

Euclid2kConfig euclid_config(const RunConfig& cfg) {
  Euclid2kConfig e;
  e.directions = cfg.directions;
  e.line_points = cfg.line_points;
  e.grid = cfg.grid;
  e.eps = cfg.eps;
  e.policy = cfg.parallel ? ExecPolicy::parallel : ExecPolicy::serial;
  return e;
}

Json config_echo(const RunConfig& cfg) {
  return {{"seed", cfg.seed},
          {"eps", cfg.eps},
          {"search", cfg.randomized ? "randomized" : "deterministic"},
          {"parallel", cfg.parallel},
          {"directions", cfg.directions},
          {"linePoints", cfg.line_points},
          {"grid", cfg.grid}};
}

bool covers(Metric m, Point c, Point p, double size, double tol) {
  if (m == Metric::l2) return dist(c, p) <= size + tol;
  return std::abs(c.x - p.x) <= 0.5 * size + tol && std::abs(c.y - p.y) <= 0.5 * size + tol;
}

// Witness points may sit on a square edge pushed out by eps, so allow twice that.
double coverage_tol(double size, double eps) { return 2 * std::max(eps, 1e-12) * std::max(1.0, size); }

std::vector<int> outliers_of(Metric m, const std::vector<Point>& P, const std::vector<Point>& centers, double size,
                             double eps) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(P.size()); ++i)
    if (std::none_of(centers.begin(), centers.end(), [&](Point c) { return covers(m, c, P[i], size, coverage_tol(size, eps)); }))
      out.push_back(i);
  return out;
}

// Exhaustive (1,k)-center: the optimal disk is the enclosing circle of one
// point, a pair or a triple, so its center is among these candidates.
std::pair<double, Point> brute_one_center(const std::vector<Point>& P, int k) {
  const OracleCaps caps;
  if (static_cast<int>(P.size()) > caps.two_center_n || k > caps.two_center_k)
    throw CapExceeded("bruteforce l2 p=1 over caps");
  std::vector<Point> cand(P.begin(), P.end());
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = i + 1; j < P.size(); ++j) {
      cand.push_back(diametral_circle(P[i], P[j]).center);
      for (std::size_t l = j + 1; l < P.size(); ++l) {
        try {
          cand.push_back(circumcircle(P[i], P[j], P[l]).center);
        } catch (const CollinearInput&) {
        }
      }
    }
  std::pair<double, Point> best{kInfinity, {}};
  const int need = static_cast<int>(P.size()) - k;
  for (Point c : cand) {
    std::vector<double> d;
    for (Point p : P) d.push_back(dist(c, p));
    std::nth_element(d.begin(), d.begin() + (need - 1), d.end());
    if (d[need - 1] < best.first) best = {d[need - 1], c};
  }
  return best;
}

struct Answer {
  double size = 0.0;
  std::vector<Point> centers;
  Json stats = Json::object();
};

Answer solve_main(const RunConfig& cfg, const std::vector<Point>& P) {
  Answer a;
  if (cfg.metric == Metric::linf) {
    StabStats st;
    const LinfSolution s = optimize_linf(P, cfg.p, cfg.k, cfg.eps, &st);
    a.size = s.side;
    for (const Square& q : s.squares) a.centers.push_back(q.center);
    a.stats = {{"decisionNodes", st.nodes}, {"memoHits", st.memo_hits}, {"caliperAnchors", st.caliper_anchors}};
  } else if (cfg.p == 1) {
    EnumerationStats st;
    const Circle c = one_center_with_outliers(P, cfg.k, &st);
    a.size = c.radius;
    a.centers = {c.center};
    a.stats = {{"lpNodes", st.nodes}};
  } else {
    SolveStats st;
    const TwoCenter t = solve_two_center_outliers(P, cfg.k, cfg.randomized ? SearchMode::randomized : SearchMode::deterministic,
                                                  cfg.seed, euclid_config(cfg), &st);
    a.size = t.radius;
    a.centers = {t.c1, t.c2};
    a.stats = {{"decisionCalls", st.decision_calls},
               {"lines", st.lines},
               {"linesAfterPruning", st.lines_after_pruning},
               {"cellsEvaluated", st.cells_evaluated},
               {"matrixSearches", st.matrix_searches}};
  }
  return a;
}

Answer solve_brute(const RunConfig& cfg, const std::vector<Point>& P) {
  Answer a;
  if (cfg.metric == Metric::l2 && cfg.p == 1) {
    const auto [r, c] = brute_one_center(P, cfg.k);
    a.size = r;
    a.centers = {c};
    return a;
  }
  const OracleResult o = cfg.metric == Metric::l2 ? oracle_two_center(P, cfg.k) : oracle_linf(P, cfg.p, cfg.k);
  a.size = o.optimum;
  if (!o.witnesses.empty()) a.centers = o.witnesses.front();
  return a;
}

bool under_caps(const RunConfig& cfg, std::size_t n) {
  const OracleCaps caps;
  if (cfg.metric == Metric::l2) return static_cast<int>(n) <= caps.two_center_n && cfg.k <= caps.two_center_k;
  return static_cast<int>(n) <= caps.linf_n && cfg.p <= caps.linf_p && cfg.k <= caps.linf_k;
}

Json header(const char* command, const RunConfig& cfg, std::size_t n, const char* algo) {
  return {{"schemaVersion", 1}, {"command", command}, {"metric", metric_name(cfg.metric)}, {"p", cfg.p},
          {"k", cfg.k},         {"n", n},             {"algo", algo}};
}

void put_placement(Json& doc, const RunConfig& cfg, const std::vector<Point>& P, double size,
                   const std::vector<Point>& centers) {
  doc["optimum"] = size;
  doc[cfg.metric == Metric::l2 ? "radius" : "side"] = size;
  doc["centers"] = Json::array();
  for (Point c : centers) doc["centers"].push_back(point_json(c));
  doc["outliers"] = outliers_of(cfg.metric, P, centers, size, cfg.eps);
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.p < 1) throw ConfigError("p must be at least 1");
  if (cfg.metric == Metric::l2 && cfg.p > 2) throw ConfigError("l2 supports p <= 2");
  if (cfg.metric == Metric::linf && cfg.p > 5) throw ConfigError("linf supports p <= 5");
  if (cfg.k < 0) throw ConfigError("k must be non-negative");
  if (!(cfg.eps >= 0)) throw ConfigError("eps must be non-negative");
  if (cfg.directions < 1 || cfg.line_points < 1 || cfg.grid < 1) throw ConfigError("directions, lines and grid must be positive");
}

Json solve(const RunConfig& cfg, const std::vector<Point>& P) {
  validate(cfg);
  if (P.empty()) throw IoError("input has no points");
  const double t0 = now_ms();
  const bool brute = cfg.algo == Algo::bruteforce;
  Json doc = header("solve", cfg, P.size(), brute ? "bruteforce" : "paper");
  Answer a;
  if (cfg.k >= static_cast<int>(P.size())) {
    a.size = 0.0;
  } else {
    a = brute ? solve_brute(cfg, P) : solve_main(cfg, P);
  }
  put_placement(doc, cfg, P, a.size, a.centers);
  if (cfg.verify) {
    Json v;
    if (!brute && under_caps(cfg, P.size()) && cfg.k < static_cast<int>(P.size())) {
      const double o = solve_brute(cfg, P).size;
      v = {{"oracle", o}, {"match", std::abs(o - a.size) <= coverage_tol(o, cfg.eps)}};
    } else {
      v = {{"skipped", brute ? "already bruteforce" : "over oracle caps"}};
    }
    std::string why;
    v["coverage"] = verify_document(doc, P, &why);
    doc["verification"] = v;
  }
  a.stats["wallTimeMs"] = now_ms() - t0;
  doc["stats"] = a.stats;
  doc["config"] = config_echo(cfg);
  return doc;
}

Json decide(const RunConfig& cfg, const std::vector<Point>& P) {
  validate(cfg);
  if (P.empty()) throw IoError("input has no points");
  const std::optional<double> size = cfg.metric == Metric::l2 ? cfg.radius : cfg.side;
  if (!size) throw ConfigError(cfg.metric == Metric::l2 ? "decide needs --radius" : "decide needs --side");
  if (*size < 0) throw ConfigError("size must be non-negative");
  const double t0 = now_ms();
  const bool brute = cfg.algo == Algo::bruteforce;
  Json doc = header("decide", cfg, P.size(), brute ? "bruteforce" : "paper");
  doc[cfg.metric == Metric::l2 ? "radius" : "side"] = *size;
  bool verdict = false;
  std::vector<Point> witness;
  double witness_size = *size;
  Json stats = Json::object();
  if (cfg.k >= static_cast<int>(P.size())) {
    verdict = true;
  } else if (brute) {
    verdict = cfg.metric == Metric::l2
                  ? (cfg.p == 1 ? brute_one_center(P, cfg.k).first <= *size + cfg.eps * std::max(1.0, *size) : oracle_two_center_decide(P, cfg.k, *size))
                  : oracle_linf_decide(P, cfg.p, cfg.k, *size);
  } else if (cfg.metric == Metric::linf) {
    std::vector<Square> sq;
    for (Point p : P) sq.push_back({p, *size});
    StabStats st;
    const StabResult r = stab_decision(sq, cfg.p, cfg.k, cfg.eps, &st);
    verdict = r.feasible;
    witness = r.points;
    stats = {{"decisionNodes", st.nodes}, {"memoHits", st.memo_hits}};
  } else {
    // The radius decision is monotone, so it reduces to the exact optimum;
    // the optimal placement is a witness at any larger radius.
    const Answer a = solve_main(cfg, P);
    // The one-center radius is a circumradius here but a distance in the
    // brute force, so the two can differ in the last bits.
    verdict = a.size <= *size + (cfg.p == 1 ? cfg.eps * std::max(1.0, *size) : 0.0);
    witness = a.centers;
    witness_size = a.size;
    stats = a.stats;
  }
  doc["verdict"] = verdict;
  if (verdict && !witness.empty()) {
    doc["centers"] = Json::array();
    for (Point c : witness) doc["centers"].push_back(point_json(c));
    doc["outliers"] = outliers_of(cfg.metric, P, witness, witness_size, cfg.eps);
  }
  stats["wallTimeMs"] = now_ms() - t0;
  doc["stats"] = stats;
  doc["config"] = config_echo(cfg);
  return doc;
}

bool verify_document(const nlohmann::json& doc, const std::vector<Point>& P, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  try {
    if (doc.at("schemaVersion").get<int>() != 1) return fail("unknown schemaVersion");
    const Metric m = doc.at("metric").get<std::string>() == "linf" ? Metric::linf : Metric::l2;
    const int k = doc.at("k").get<int>(), p = doc.at("p").get<int>();
    if (doc.contains("n") && doc.at("n").get<std::size_t>() != P.size()) return fail("point count differs");
    if (doc.contains("verdict") && !doc.at("verdict").get<bool>()) return true;  // nothing to certify
    if (k >= static_cast<int>(P.size())) return true;
    if (!doc.contains("centers")) return fail("no centers");
    const double size = doc.contains("optimum") ? doc.at("optimum").get<double>()
                                                : doc.at(m == Metric::l2 ? "radius" : "side").get<double>();
    std::vector<Point> centers;
    for (const auto& c : doc.at("centers")) centers.push_back({c.at("x").get<double>(), c.at("y").get<double>()});
    if (static_cast<int>(centers.size()) > p) return fail("more than p centers");
    double eps = kDefaultEps;
    if (doc.contains("config")) eps = doc.at("config").value("eps", kDefaultEps);
    const std::vector<int> miss = outliers_of(m, P, centers, size, eps);
    if (static_cast<int>(miss.size()) > k) return fail(std::to_string(miss.size()) + " points uncovered, budget " + std::to_string(k));
    if (doc.contains("outliers")) {
      const auto listed = doc.at("outliers").get<std::vector<int>>();
      for (int i : miss)
        if (!std::binary_search(listed.begin(), listed.end(), i)) return fail("uncovered point " + std::to_string(i) + " not listed");
    }
  } catch (const nlohmann::json::exception& e) {
    return fail(std::string("malformed document: ") + e.what());
  }
  return true;
}

InputData generate(Distribution dist, int n, int k, int clusters, std::uint64_t seed) {
  InputData d;
  if (dist == Distribution::figure2) {
    d.disks = component_lower_bound_family(k);
    return d;
  }
  if (n < 1) throw ConfigError("n must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (dist == Distribution::uniform) {
    for (int i = 0; i < n; ++i) {
      const double x = 10 * u(rng);
      const double y = 10 * u(rng);
      d.points.push_back({x, y});
    }
    return d;
  }
  if (clusters < 1) throw ConfigError("clusters must be at least 1");
  // Unit-radius clusters spaced 10 apart along a line.
  for (int i = 0; i < n; ++i) {
    const int c = i % clusters;
    const double a = 2 * std::numbers::pi * u(rng);
    const double r = std::sqrt(u(rng));
    d.points.push_back({10.0 * c + r * std::cos(a), r * std::sin(a)});
  }
  return d;
}

namespace {

Json bench_suite(const std::string& suite, std::uint64_t seed, bool parallel) {
  const std::vector<int> ns = suite == "quick" ? std::vector<int>{6, 8, 10} : std::vector<int>{6, 8, 12, 16, 20};
  Json rows = Json::array();
  Euclid2kConfig cfg;
  cfg.policy = parallel ? ExecPolicy::parallel : ExecPolicy::serial;
  for (int k : {0, 1})
    for (int n : ns) {
      std::mt19937_64 rng(seed + 1000 * k + n);
      std::uniform_real_distribution<double> u(0.0, 10.0);
      std::vector<Point> P;
      for (int i = 0; i < n; ++i) {
        const double x = u(rng);
        const double y = u(rng);
        P.push_back({x, y});
      }
      SolveStats st;
      const double t0 = now_ms();
      optimize_well_separated(P, k, cfg, &st);
      const double ws = now_ms() - t0;
      rows.push_back({{"n", n},
                      {"k", k},
                      {"wallTimeMs", ws},
                      {"decisionCalls", st.decision_calls},
                      {"lines", st.lines_after_pruning},
                      {"decisionCallsPerLine", st.lines_after_pruning ? double(st.decision_calls) / st.lines_after_pruning : 0.0}});
    }
  return {{"schemaVersion", 1}, {"command", "bench"}, {"suite", suite}, {"parallel", parallel}, {"rows", rows}};
}

void emit(const Json& doc, const std::string& output, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (output.empty()) {
    out << text;
  } else {
    write_text(output, text);
  }
}

std::vector<Point> result_centers(const nlohmann::json& doc) {
  std::vector<Point> c;
  if (doc.contains("centers"))
    for (const auto& e : doc.at("centers")) c.push_back({e.at("x").get<double>(), e.at("y").get<double>()});
  return c;
}

void render_to(const std::string& path, const std::vector<Point>& P, const std::vector<Disk>& disks, const Json& doc,
               const LevelArrangement* arr, std::vector<UnitDiskCurve> curves) {
  RenderSpec spec;
  spec.points = P;
  spec.disks = disks;
  spec.arrangement = arr;
  spec.curves = std::move(curves);
  if (!doc.is_null() && doc.contains("centers")) {
    const bool l2 = doc.value("metric", "l2") == "l2";
    const double size = doc.contains("optimum") ? doc.at("optimum").get<double>() : doc.value(l2 ? "radius" : "side", 0.0);
    for (Point c : result_centers(doc)) {
      if (l2) {
        spec.disks.push_back({c, size});
      } else {
        spec.squares.push_back({c, size});
      }
    }
  }
  write_text(path, render_svg(spec));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"pkcenter: geometric (p,k)-center solver"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("PKCENTER_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "invalid PKCENTER_SEED\n";
      return kBadConfig;
    }
  }
  const std::map<std::string, Metric> metrics{{"l2", Metric::l2}, {"linf", Metric::linf}};
  const std::map<std::string, Algo> algos{{"auto", Algo::automatic}, {"paper", Algo::paper}, {"bruteforce", Algo::bruteforce}};
  const std::map<std::string, Distribution> dists{
      {"uniform", Distribution::uniform}, {"clusters", Distribution::clusters}, {"figure2", Distribution::figure2}};
  std::string search = "randomized", dist_name = "uniform", suite = "default", result_path;
  int n = 20, clusters = 2;
  std::optional<int> arr_k;

  app.add_option("--metric", cfg.metric, "l2 or linf")->transform(CLI::CheckedTransformer(metrics, CLI::ignore_case));
  app.add_option("--p", cfg.p, "number of disks or squares");
  app.add_option("--k", cfg.k, "outlier budget");
  app.add_option("--radius", cfg.radius, "radius for decide (l2)");
  app.add_option("--side", cfg.side, "side for decide (linf)");
  app.add_option("--input", cfg.input, "CSV or JSON points file");
  app.add_option("--output", cfg.output, "output file (stdout if absent)");
  app.add_option("--render", cfg.render, "also write an SVG here");
  app.add_option("--algo", cfg.algo, "auto, paper or bruteforce")->transform(CLI::CheckedTransformer(algos, CLI::ignore_case));
  app.add_option("--seed", cfg.seed, "seed (default $PKCENTER_SEED or 1)");
  app.add_flag("--verify", cfg.verify, "cross-check against the oracle when under its caps");
  app.add_option("--eps", cfg.eps, "geometric tolerance");
  app.add_option("--search", search, "deterministic or randomized matrix search")
      ->check(CLI::IsMember({"deterministic", "randomized"}));
  app.add_flag("--parallel", cfg.parallel, "use the OpenMP kernels");
  app.add_option("--directions", cfg.directions, "separator directions h");
  app.add_option("--lines", cfg.line_points, "lines per direction interval m");
  app.add_option("--grid", cfg.grid, "intersector grid size");

  auto* solve_cmd = app.add_subcommand("solve", "compute an optimal (p,k)-center");
  auto* decide_cmd = app.add_subcommand("decide", "decide feasibility at a given radius or side");
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("--dist", dist_name, "uniform, clusters or figure2")->check(CLI::IsMember({"uniform", "clusters", "figure2"}));
  gen_cmd->add_option("--n", n, "point count");
  gen_cmd->add_option("--clusters", clusters, "cluster count");
  auto* render_cmd = app.add_subcommand("render", "draw points, disks and a result as SVG");
  render_cmd->add_option("--result", result_path, "result document to overlay");
  render_cmd->add_option("--level", arr_k, "draw the level <= K arrangement of the input disks");
  auto* bench_cmd = app.add_subcommand("bench", "timing series for the separator-line solver");
  bench_cmd->add_option("--suite", suite, "quick or default")->check(CLI::IsMember({"quick", "default"}));
  auto* verify_cmd = app.add_subcommand("verify", "re-check a result document against its input");
  verify_cmd->add_option("--result", result_path, "result document")->required();
  for (CLI::App* sub : {solve_cmd, decide_cmd, gen_cmd, render_cmd, bench_cmd, verify_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadConfig;
  }
  cfg.randomized = search == "randomized";

  try {
    auto points = [&]() {
      if (cfg.input.empty()) throw ConfigError("--input is required");
      return read_input(cfg.input).points;
    };
    if (*solve_cmd || *decide_cmd) {
      const auto P = points();
      const Json doc = *solve_cmd ? solve(cfg, P) : decide(cfg, P);
      emit(doc, cfg.output, out);
      if (!cfg.render.empty()) render_to(cfg.render, P, {}, doc, nullptr, {});
      if (doc.contains("verification")) {
        const auto& v = doc.at("verification");
        if (!v.value("coverage", true) || !v.value("match", true)) {
          err << "verification failed\n";
          return kVerifyFailed;
        }
      }
    } else if (*gen_cmd) {
      if (dist_name == "figure2" && cfg.k < 0) throw ConfigError("k must be non-negative");
      const InputData d = generate(dists.at(dist_name), n, cfg.k, clusters, cfg.seed);
      if (cfg.output.ends_with(".csv")) {
        write_text(cfg.output, input_to_csv(d));
      } else {
        emit(input_to_json(d), cfg.output, out);
      }
    } else if (*render_cmd) {
      if (cfg.input.empty()) throw ConfigError("--input is required");
      if (cfg.output.empty()) throw ConfigError("render needs --output");
      const InputData d = read_input(cfg.input);
      Json doc;
      if (!result_path.empty()) {
        std::ifstream in(result_path);
        if (!in) throw IoError("cannot read " + result_path);
        try {
          doc = Json::parse(in);
        } catch (const nlohmann::json::exception& e) {
          throw IoError(std::string("bad result document: ") + e.what());
        }
      }
      std::optional<LevelArrangement> arr;
      std::vector<UnitDiskCurve> curves;
      if (arr_k) {
        if (*arr_k < 0) throw ConfigError("level must be non-negative");
        arr = build_level_arrangement(d.disks, *arr_k, cfg.eps);
        curves = cover_by_curves(*arr);
      }
      render_to(cfg.output, d.points, d.disks, doc, arr ? &*arr : nullptr, std::move(curves));
    } else if (*bench_cmd) {
      emit(bench_suite(suite, cfg.seed, cfg.parallel), cfg.output, out);
    } else if (*verify_cmd) {
      const auto P = points();
      std::ifstream in(result_path);
      if (!in) throw IoError("cannot read " + result_path);
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad result document: ") + e.what());
      }
      std::string why;
      const bool ok = verify_document(doc, P, &why);
      out << (ok ? "ok" : "FAILED: " + why) << '\n';
      return ok ? kOk : kVerifyFailed;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const CapExceeded& e) {
    err << "error: oracle cap exceeded: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  }
  return kOk;
}

}  // namespace pkc::cli
