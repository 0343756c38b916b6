#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "blb/bounds.hpp"
#include "blb/io.hpp"
#include "blb/lieb_oracle.hpp"
#include "blb/visual.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitHypothesis = 2;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

struct MachineBlock {
  std::vector<std::pair<std::string, std::string>> kv;
  void add(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
  void add(const std::string& k, double v) { kv.emplace_back(k, num(v)); }
  void print() const {
    std::printf("---\n");
    for (const auto& [k, v] : kv) std::printf("%s=%s\n", k.c_str(), v.c_str());
  }
};

std::vector<double> resolve_alphas(const blb::DatumDocument& doc,
                                   const std::vector<double>& cli_alphas) {
  const int n = doc.datum.size();
  if (!cli_alphas.empty()) {
    if (static_cast<int>(cli_alphas.size()) == 1) {
      return std::vector<double>(n, cli_alphas[0]);
    }
    if (static_cast<int>(cli_alphas.size()) == n) return cli_alphas;
    throw blb::InvalidInput("--alpha expects one value or one per map");
  }
  if (doc.alphas) return *doc.alphas;
  throw blb::InvalidInput("alphas required (flag --alpha or datum file)");
}

int cmd_analyze(const std::string& datum_path) {
  const blb::DatumDocument doc = blb::read_datum_file(datum_path);
  const blb::Datum& d = doc.datum;
  auto [critical, defect] = blb::is_globally_critical(d);

  std::printf("datum            %s\n", datum_path.c_str());
  std::printf("ambient_dim      %d\n", d.ambient_dim());
  std::printf("maps             %d\n", d.size());
  for (int j = 0; j < d.size(); ++j) {
    std::printf("  map %d: %dx%d  q=%s  sigma =", j, d.map(j).rows(), d.map(j).cols(),
                num(d.weight(j)).c_str());
    for (int i = 0; i < d.map(j).svd().sigma.size(); ++i) {
      std::printf(" %s", num(d.map(j).svd().sigma(i)).c_str());
    }
    std::printf("\n");
  }
  std::printf("criticality      %s (defect %s)\n", critical ? "yes" : "no",
              num(defect).c_str());
  const double acuity = blb::total_acuity(d);
  const double entropy = blb::exponential_entropy(d);
  std::printf("acuity           %s\n", num(acuity).c_str());
  std::printf("entropy          %s\n", num(entropy).c_str());

  MachineBlock mb;
  mb.add("ambient_dim", std::to_string(d.ambient_dim()));
  mb.add("maps", std::to_string(d.size()));
  mb.add("criticality_defect", defect);
  mb.add("acuity", acuity);
  mb.add("entropy", entropy);

  bool surjective = true;
  try {
    auto [proj, distortion] = blb::projector_reduction(d);
    std::printf("distortion       %s\n", num(distortion).c_str());
    mb.add("distortion", distortion);
  } catch (const blb::NotSurjective&) {
    surjective = false;
    std::printf("distortion       n/a (not surjective)\n");
    mb.add("distortion", "nan");
  }
  (void)surjective;

  auto [beta_min, witness] = blb::beta_min_estimate(d);
  std::printf("beta_min         %s (witness dim %d)\n", num(beta_min).c_str(),
              witness.dim());
  mb.add("beta_min", beta_min);
  mb.add("beta_min_witness_dim", std::to_string(witness.dim()));
  mb.print();
  return kExitOk;
}

int emit_bound(const blb::BoundReport& report) {
  std::printf("kind             %s\n", blb::to_string(report.kind));
  for (const auto& h : report.hypotheses) {
    std::printf("hypothesis       %-32s %s  (%s)\n", h.name.c_str(),
                h.passed ? "PASS" : "FAIL", h.detail.c_str());
  }
  std::printf("value            %s\n", report.finite ? num(report.value).c_str() : "inf");

  MachineBlock mb;
  mb.add("kind", blb::to_string(report.kind));
  for (const auto& [k, v] : report.inputs_echo) mb.add("input_" + k, v);
  for (const auto& h : report.hypotheses) {
    std::string key = "hypothesis_" + h.name;
    for (char& c : key) {
      if (c == ' ' || c == '(' || c == ')') c = '_';
    }
    mb.add(key, h.passed ? "pass" : "fail");
  }
  mb.add("finite", report.finite ? "true" : "false");
  mb.add("value", report.finite ? num(report.value) : std::string("inf"));
  mb.print();
  return report.finite ? kExitOk : kExitHypothesis;
}

int cmd_bound(const std::string& datum_path, const std::string& kind,
              const std::vector<double>& cli_alphas, double beta, double t_value,
              const std::string& frame_path, bool force_unknown) {
  const blb::DatumDocument doc = blb::read_datum_file(datum_path);
  const blb::Datum& d = doc.datum;

  auto witness = [&]() -> blb::Subspace {
    if (!frame_path.empty()) return blb::read_frame_file(frame_path);
    return blb::Subspace::full(d.ambient_dim());
  };

  if (kind == "upper") {
    const std::vector<double> alphas = resolve_alphas(doc, cli_alphas);
    const auto verdict = blb::check_perceptivity(d, alphas, 0.0);
    return emit_bound(blb::upper_bound_global(d, alphas, verdict, force_unknown));
  }
  if (kind == "upper-variant") {
    const std::vector<double> alphas = resolve_alphas(doc, cli_alphas);
    auto [proj, distortion] = blb::projector_reduction(d);
    (void)distortion;
    const auto verdict = blb::check_perceptivity(proj, alphas, 0.0);
    return emit_bound(blb::upper_bound_variant(d, alphas, verdict, force_unknown));
  }
  if (kind == "lower") {
    const std::vector<double> alphas = resolve_alphas(doc, cli_alphas);
    return emit_bound(blb::lower_bound_global(d, alphas[0], witness()));
  }
  if (kind == "upper-localized") {
    const std::vector<double> alphas = resolve_alphas(doc, cli_alphas);
    if (!doc.regs || !doc.loc) {
      throw blb::InvalidInput("upper-localized needs regs and loc in the datum file");
    }
    const double b = beta >= 0.0 ? beta : doc.beta.value_or(0.0);
    blb::LocalizedRegularizedDatum lrd(d, *doc.regs, *doc.loc);
    const auto verdict = blb::check_perceptivity(d, alphas, b);
    return emit_bound(blb::upper_bound_localized(lrd, alphas, b, verdict, force_unknown));
  }
  if (kind == "lower-localized") {
    const std::vector<double> alphas = resolve_alphas(doc, cli_alphas);
    return emit_bound(blb::lower_bound_localized(d, t_value, alphas[0], witness()));
  }
  throw blb::InvalidInput("unknown --kind " + kind);
}

int cmd_oracle(const std::string& datum_path, int t_exp, int eps_exp,
               std::uint64_t seed, int restarts, int max_iter) {
  const blb::DatumDocument doc = blb::read_datum_file(datum_path);

  blb::Schedule schedule;
  for (int k = 0; k <= t_exp; ++k) schedule.t_values.push_back(std::pow(10.0, k));
  for (int k = 0; k <= eps_exp; ++k) schedule.epsilon_values.push_back(std::pow(10.0, -k));

  blb::OracleOptions opts;
  opts.seed = seed;
  opts.restarts = restarts;
  opts.max_iter = max_iter;

  const blb::BlLimitResult result = blb::bl_limit(doc.datum, schedule, opts);
  std::printf("%-12s %-12s %-18s %s\n", "t", "eps", "value", "converged");
  bool all_converged = true;
  for (const auto& e : result.trace) {
    std::printf("%-12s %-12s %-18s %s\n", num(e.t).c_str(), num(e.epsilon).c_str(),
                num(e.value).c_str(), e.converged ? "yes" : "no");
    all_converged = all_converged && e.converged;
  }
  std::printf("estimate         %s\n", num(result.estimate).c_str());
  std::printf("extrapolated     %s\n", num(result.extrapolated).c_str());
  if (!all_converged) std::printf("warning          some schedule points did not converge\n");

  MachineBlock mb;
  mb.add("estimate", result.estimate);
  mb.add("extrapolated", result.extrapolated);
  mb.add("converged", all_converged ? "true" : "false");
  mb.print();
  return kExitOk;
}

int cmd_visual(const std::string& datum_path, const std::string& cloud_path,
               std::vector<double> deltas, const std::vector<double>& cli_alphas,
               double beta, bool force_unknown) {
  const blb::DatumDocument doc = blb::read_datum_file(datum_path);
  const blb::PointCloud cloud = blb::read_cloud_file(cloud_path);
  if (cloud.points.empty()) {
    std::fprintf(stderr, "error: empty cloud\n");
    return kExitHypothesis;
  }
  if (!doc.datum.all_orthogonal_projectors()) {
    std::fprintf(stderr, "error: datum must consist of orthogonal projectors\n");
    return kExitHypothesis;
  }
  const std::vector<double> alphas = resolve_alphas(doc, cli_alphas);
  const double b = beta >= 0.0 ? beta : doc.beta.value_or(0.0);
  if (deltas.empty()) deltas = {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};

  const auto verdict = blb::check_perceptivity(doc.datum, alphas, b);

  std::printf("delta\tlhs\trhs\tratio\n");
  std::vector<double> lhs_over_prod;
  MachineBlock mb;
  for (size_t i = 0; i < deltas.size(); ++i) {
    const blb::VisualReport r = blb::visual_check(doc.datum, cloud, deltas[i], alphas, b,
                                                  verdict, force_unknown);
    std::printf("%s\t%s\t%s\t%s\n", num(deltas[i]).c_str(), num(r.lhs).c_str(),
                num(r.rhs).c_str(), num(r.ratio).c_str());
    // slope diagnostic against the projected-covering product alone
    lhs_over_prod.push_back(r.ratio * std::pow(deltas[i], -b));
    mb.add("ratio_" + std::to_string(i), r.ratio);
  }
  double slope = 0.0;
  if (deltas.size() >= 2) {
    slope = blb::fitted_log_slope(deltas, lhs_over_prod);
    std::printf("fitted_beta_slope\t%s\n", num(slope).c_str());
  }
  mb.add("perceptivity", blb::to_string(verdict.status));
  mb.add("fitted_beta_slope", slope);
  mb.print();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
  if (const char* threads = std::getenv("BLB_THREADS")) {
    const int n = std::atoi(threads);
    if (n > 0) omp_set_num_threads(n);
  }
#endif

  CLI::App app{"Effective bounds for Brascamp-Lieb constants"};
  app.require_subcommand(1);

  std::string datum_path, cloud_path, frame_path, kind = "upper";
  std::vector<double> alphas, deltas;
  double beta = -1.0, t_value = 1.0;
  bool force_unknown = false;
  int t_exp = 6, eps_exp = 6, restarts = 2, max_iter = 400;
  std::uint64_t seed = 1;

  auto* analyze = app.add_subcommand("analyze", "Summarize a datum file");
  analyze->add_option("datum", datum_path, "datum JSON file")->required();

  auto* bound = app.add_subcommand("bound", "Evaluate a bound");
  bound->add_option("datum", datum_path, "datum JSON file")->required();
  bound->add_option("--kind", kind,
                    "upper|upper-variant|lower|upper-localized|lower-localized");
  bound->add_option("--alpha", alphas, "alpha (one value, or one per map)");
  bound->add_option("--beta", beta, "beta for localized kinds");
  bound->add_option("--t", t_value, "truncation scale for lower-localized");
  bound->add_option("--w", frame_path, "witness subspace frame file");
  bound->add_flag("--force-unknown", force_unknown,
                  "accept an UNKNOWN perceptivity verdict");

  auto* oracle = app.add_subcommand("oracle", "Gaussian oracle along a limit schedule");
  oracle->add_option("datum", datum_path, "datum JSON file")->required();
  oracle->add_option("--t-exp", t_exp, "largest power of 10 for t");
  oracle->add_option("--eps-exp", eps_exp, "largest negative power of 10 for eps");
  oracle->add_option("--seed", seed, "restart seed");
  oracle->add_option("--restarts", restarts, "random restarts");
  oracle->add_option("--max-iter", max_iter, "iteration cap per point");

  auto* visual = app.add_subcommand("visual", "Covering-number inequality on a cloud");
  visual->add_option("datum", datum_path, "projector datum JSON file")->required();
  visual->add_option("cloud", cloud_path, "point cloud text file")->required();
  visual->add_option("--delta-sweep", deltas, "delta values");
  visual->add_option("--alpha", alphas, "alpha (one value, or one per map)");
  visual->add_option("--beta", beta, "beta exponent");
  visual->add_flag("--force-unknown", force_unknown,
                   "proceed without a certified perceptivity verdict");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return cmd_analyze(datum_path);
    if (*bound) {
      return cmd_bound(datum_path, kind, alphas, beta, t_value, frame_path,
                       force_unknown);
    }
    if (*oracle) return cmd_oracle(datum_path, t_exp, eps_exp, seed, restarts, max_iter);
    if (*visual) {
      return cmd_visual(datum_path, cloud_path, deltas, alphas, beta, force_unknown);
    }
  } catch (const blb::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitUsage;
  } catch (const blb::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitHypothesis;
  }
  return kExitUsage;
}
