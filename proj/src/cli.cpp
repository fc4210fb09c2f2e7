#include "bostat/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "bostat/analysis.hpp"
#include "bostat/montecarlo.hpp"
#include "bostat/orlicz.hpp"
#include "bostat/processes.hpp"
#include "bostat/rng.hpp"
#include "bostat/statistics.hpp"

namespace bostat {

using nlohmann::json;

const char* tool_version() { return "0.1.0"; }

namespace {

// ------------------------------------------------------------- formatting

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return json(v).dump();  // shortest representation that round-trips
}

std::string cell_to_csv(const json& cell) {
  if (cell.is_null()) return "";
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_number_float()) return fmt_double(cell.get<double>());
  return cell.dump();
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

// Writes the table with a manifest header; the manifest never contains
// timing so reruns with equal parameters produce byte-identical files.
void emit_table(const json& manifest, const Table& table,
                const std::string& out_path, const std::string& format) {
  const std::string digest = fnv1a64_hex(manifest.dump());
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
  }
  std::ostream& os = out_path.empty() ? std::cout : file;

  if (format == "json") {
    json doc;
    doc["digest"] = digest;
    doc["manifest"] = manifest;
    doc["columns"] = table.columns;
    doc["rows"] = table.rows;
    os << doc.dump(2) << "\n";
    return;
  }
  json header;
  header["digest"] = digest;
  header["manifest"] = manifest;
  os << "# " << header.dump() << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i];
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << cell_to_csv(row[i]);
    os << "\n";
  }
}

// --------------------------------------------------------------- parsing

double parse_double_token(const std::string& token, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw CLI::ValidationError(what, "not a number: '" + token + "'");
  }
}

Modulus parse_rho(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--rho", "expected mu,nu but got '" + text + "'");
  Modulus rho;
  rho.mu = parse_double_token(text.substr(0, comma), "--rho");
  rho.nu = parse_double_token(text.substr(comma + 1), "--rho");
  return rho;
}

LagGrid parse_lags(const std::string& text) {
  if (text == "all") return LagGrid::all();
  if (text == "dyadic") return LagGrid::dyadic();
  std::vector<std::size_t> lags;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const double v = parse_double_token(token, "--lags");
    if (v < 1.0 || v != std::floor(v))
      throw CLI::ValidationError("--lags", "lag must be a positive integer: '" +
                                               token + "'");
    lags.push_back(static_cast<std::size_t>(v));
  }
  if (lags.empty())
    throw CLI::ValidationError("--lags", "empty lag list");
  return LagGrid::explicit_lags(std::move(lags));
}

std::vector<int> parse_signs(const std::string& text, double l) {
  const auto count =
      static_cast<std::size_t>(std::llround(1.0 / (2.0 * l))) + 1;
  std::vector<int> signs;
  if (text == "random") return signs;  // drawn per replicate
  if (text == "alternating") {
    signs.resize(count);
    for (std::size_t i = 0; i < count; ++i) signs[i] = i % 2 == 0 ? 1 : -1;
    return signs;
  }
  for (const char c : text) {
    if (c == '+') signs.push_back(1);
    else if (c == '-') signs.push_back(-1);
    else
      throw CLI::ValidationError("--signal",
                                 std::string("bad sign character: '") + c + "'");
  }
  return signs;
}

SignalSpec parse_signal(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string pair;
    while (std::getline(ss, pair, ',')) {
      const auto eq = pair.find('=');
      if (eq == std::string::npos)
        throw CLI::ValidationError("--signal", "expected key=value: '" + pair + "'");
      kv[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
  }
  const auto take = [&kv](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  const auto take_double = [&](const char* key, double fallback) {
    const auto v = take(key);
    return v ? parse_double_token(*v, "--signal") : fallback;
  };

  SignalSpec spec;
  if (kind == "zero") {
    spec = ZeroSignal{};
  } else if (kind == "flip") {
    FlipSignal s;
    s.l = take_double("l", s.l);
    s.delta = take_double("delta", 1.0);
    const auto signs = take("signs");
    s.signs = parse_signs(signs.value_or("random"), s.l);
    spec = s;
  } else if (kind == "doppler") {
    spec = DopplerSignal{take_double("delta", 1.0)};
  } else if (kind == "sine") {
    SineSignal s;
    s.delta = take_double("delta", 1.0);
    s.l = take_double("l", 0.25);
    spec = s;
  } else if (kind == "bump") {
    BumpSignal s;
    s.a = take_double("a", 0.25);
    s.b = take_double("b", 0.5);
    s.delta = take_double("delta", 1.0);
    spec = s;
  } else {
    throw CLI::ValidationError("--signal", "unknown signal kind: '" + kind + "'");
  }
  if (!kv.empty())
    throw CLI::ValidationError("--signal",
                               "unknown key: '" + kv.begin()->first + "'");
  return spec;
}

std::string signs_to_string(const std::vector<int>& signs) {
  if (signs.empty()) return "random";
  std::string out;
  for (const int s : signs) out += s > 0 ? '+' : '-';
  return out;
}

std::string signal_to_string(const SignalSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ZeroSignal>) {
          return "zero";
        } else if constexpr (std::is_same_v<T, FlipSignal>) {
          return "flip:l=" + fmt_double(s.l) + ",delta=" + fmt_double(s.delta) +
                 ",signs=" + signs_to_string(s.signs);
        } else if constexpr (std::is_same_v<T, DopplerSignal>) {
          return "doppler:delta=" + fmt_double(s.delta);
        } else if constexpr (std::is_same_v<T, SineSignal>) {
          return "sine:l=" + fmt_double(s.l) + ",delta=" + fmt_double(s.delta);
        } else {
          return "bump:a=" + fmt_double(s.a) + ",b=" + fmt_double(s.b) +
                 ",delta=" + fmt_double(s.delta);
        }
      },
      spec);
}

// --------------------------------------------------------- shared options

struct CommonOpts {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  // Long-form help only; the short -h would shadow data options such as --h.
  cmd->set_help_flag("--help", "Print help and exit");
  cmd->add_option("--seed", opts.seed, "Base RNG seed");
  cmd->add_option("--threads", opts.threads, "Worker thread bound");
  cmd->add_option("--out", opts.out, "Output file (default stdout)");
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

json base_manifest(const char* subcommand, const CommonOpts& opts) {
  json m;
  m["subcommand"] = subcommand;
  m["version"] = tool_version();
  m["seed"] = opts.seed;
  m["threads"] = opts.threads;
  m["format"] = opts.format;
  return m;
}

// Simulation-model options shared by simulate / power / roc.
struct SimOpts {
  CommonOpts common;
  std::string model = "white-noise";
  std::size_t mesh = 4096;
  double n_drift = -1.0;  // resolved to mesh when negative
  std::size_t n_obs = 1024;
  std::string noise = "gaussian";
  std::string signal = "zero";
  std::vector<std::string> stats{"bo"};
  std::string rho;   // empty = per-statistic default
  std::string lags;  // empty = per-statistic default
  double bo_scale = 1.0;
  std::size_t replicates = 1000;
  bool auto_delta = false;
};

void add_sim_options(CLI::App* cmd, SimOpts& opts) {
  add_common(cmd, opts.common);
  cmd->add_option("--model", opts.model, "Data model")
      ->check(CLI::IsMember({"white-noise", "regression"}));
  cmd->add_option("--mesh", opts.mesh, "White-noise grid cells N");
  cmd->add_option("--n-drift", opts.n_drift,
                  "Drift amplitude n (default: mesh)");
  cmd->add_option("--n", opts.n_obs, "Regression sample size");
  cmd->add_option("--noise", opts.noise, "Regression noise family")
      ->check(CLI::IsMember({"gaussian", "rademacher"}));
  cmd->add_option("--signal", opts.signal,
                  "Signal spec kind:key=value,... "
                  "(zero|flip|doppler|sine|bump)");
  cmd->add_option("--stat", opts.stats, "Statistics to evaluate")
      ->delimiter(',');
  cmd->add_option("--rho", opts.rho, "Weight exponents mu,nu");
  cmd->add_option("--lags", opts.lags, "Lag grid: all|dyadic|m1,m2,...");
  cmd->add_option("--bo-scale", opts.bo_scale,
                  "Extra scale factor on the bo statistic");
  cmd->add_option("-B,--reps,--B", opts.replicates, "Replicates per batch");
  cmd->add_flag("--auto-delta", opts.auto_delta,
                "Set delta from n*delta^2*l = |log2 l|^(1/4)");
}

double signal_scale_l(const SignalSpec& spec) {
  if (const auto* flip = std::get_if<FlipSignal>(&spec)) return flip->l;
  if (const auto* sine = std::get_if<SineSignal>(&spec)) return sine->l;
  throw CLI::ValidationError(
      "--auto-delta", "needs a flip or sine signal (no scale l otherwise)");
}

void apply_auto_delta(SignalSpec& spec, double n) {
  const double delta = coupled_delta(signal_scale_l(spec), n);
  if (auto* flip = std::get_if<FlipSignal>(&spec)) flip->delta = delta;
  if (auto* sine = std::get_if<SineSignal>(&spec)) sine->delta = delta;
}

McConfig build_config(const SimOpts& opts) {
  McConfig config;
  config.replicates = opts.replicates;
  config.model = opts.model == "regression" ? ModelKind::Regression
                                            : ModelKind::WhiteNoise;
  config.mesh = opts.mesh;
  config.n_drift =
      opts.n_drift < 0.0 ? static_cast<double>(opts.mesh) : opts.n_drift;
  config.n_obs = opts.n_obs;
  config.noise = opts.noise == "rademacher" ? NoiseFamily::Rademacher
                                            : NoiseFamily::Gaussian;
  config.signal = parse_signal(opts.signal);
  if (opts.auto_delta) {
    const double n = config.model == ModelKind::WhiteNoise
                         ? config.n_drift
                         : static_cast<double>(config.n_obs);
    apply_auto_delta(config.signal, n);
  }
  for (const std::string& name : opts.stats) {
    StatisticSpec stat;
    stat.name = name;
    if (name != "bo" && name != "km" && name != "ds" && name != "cp-holder" &&
        name != "cp-orlicz")
      throw CLI::ValidationError("--stat", "unknown statistic: '" + name + "'");
    if (!opts.rho.empty() && name != "ds") stat.rho = parse_rho(opts.rho);
    if (!opts.lags.empty()) stat.lags = parse_lags(opts.lags);
    if (name == "bo") stat.scale = opts.bo_scale;
    config.statistics.push_back(std::move(stat));
  }
  if (config.statistics.empty())
    throw CLI::ValidationError("--stat", "empty statistic list");
  config.seed = opts.common.seed;
  config.threads = opts.common.threads;
  return config;
}

json sim_manifest(const char* subcommand, const SimOpts& opts,
                  const McConfig& config) {
  json m = base_manifest(subcommand, opts.common);
  m["model"] = opts.model;
  m["mesh"] = config.mesh;
  m["n_drift"] = config.n_drift;
  m["n_obs"] = config.n_obs;
  m["noise"] = opts.noise;
  m["signal"] = signal_to_string(config.signal);
  m["stats"] = opts.stats;
  m["rho"] = opts.rho.empty() ? "default" : opts.rho;
  m["lags"] = opts.lags.empty() ? "default" : opts.lags;
  m["bo_scale"] = opts.bo_scale;
  m["replicates"] = config.replicates;
  return m;
}

std::vector<double> parse_alpha_list(const std::vector<double>& alphas) {
  for (const double a : alphas)
    if (!(a > 0.0) || a > 1.0)
      throw CLI::ValidationError("--alpha", "levels must lie in (0,1]");
  return alphas;
}

// ------------------------------------------------------------ subcommands

int cmd_norm(const CommonOpts& common, const std::string& dist, int dim,
             std::size_t count) {
  if (dist != "gaussian")
    throw CLI::ValidationError("--dist", "unknown distribution: '" + dist + "'");
  Rng rng(RngSpec{common.seed, 0});
  std::vector<double> mags(count);
  for (double& v : mags) {
    if (dim == 1) {
      v = std::fabs(rng.next_gaussian());
    } else {
      const double g1 = rng.next_gaussian();
      const double g2 = rng.next_gaussian();
      v = std::sqrt(g1 * g1 + g2 * g2);
    }
  }
  const double estimate = empirical_orlicz_norm(
      {mags, 1.0 / static_cast<double>(count)}, psi2());
  // K with E exp(|Z|^2/K^2) = 2 for a standard dim-d Gaussian.
  const double oracle =
      std::sqrt(2.0 / (1.0 - std::pow(2.0, -2.0 / static_cast<double>(dim))));

  json manifest = base_manifest("norm", common);
  manifest["dist"] = dist;
  manifest["dim"] = dim;
  manifest["count"] = count;
  Table table;
  table.columns = {"dist", "dim", "count", "estimate", "oracle"};
  table.rows.push_back({dist, dim, count, estimate, oracle});
  emit_table(manifest, table, common.out, common.format);
  return 0;
}

int cmd_limit(const CommonOpts& common, std::size_t grid, std::size_t reps,
              const std::string& lags_text) {
  const LagGrid lags = parse_lags(lags_text);
  std::vector<RatioTable> tables(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const SampledPath path = sample_brownian(grid, 1, RngSpec{common.seed, r});
    tables[r] = modulus_ratio_table(path, lags, r);
  }
  json manifest = base_manifest("limit", common);
  manifest["grid"] = grid;
  manifest["reps"] = reps;
  manifest["lags"] = lags_text;
  Table table;
  table.columns = {"replicate", "lag", "h", "modulus", "ratio"};
  for (const RatioTable& t : tables)
    for (const RatioRow& row : t.rows)
      table.rows.push_back({t.replicate, row.lag, row.h, row.modulus, row.ratio});
  emit_table(manifest, table, common.out, common.format);
  return 0;
}

int cmd_ratefit(const CommonOpts& common, std::size_t grid, std::size_t reps,
                const std::string& lags_text, double h_min, double h_max) {
  const LagGrid lags = parse_lags(lags_text);
  std::vector<RatioTable> tables(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const SampledPath path = sample_brownian(grid, 1, RngSpec{common.seed, r});
    tables[r] = modulus_ratio_table(path, lags, r);
  }
  std::vector<double> h_grid;
  for (const std::size_t m : lags.resolve(grid)) {
    const double h = static_cast<double>(m) / static_cast<double>(grid);
    if (h >= h_min && h <= h_max) h_grid.push_back(h);
  }
  const RateFit fit = deviation_rate_fit(tables, h_grid);

  json manifest = base_manifest("ratefit", common);
  manifest["grid"] = grid;
  manifest["reps"] = reps;
  manifest["lags"] = lags_text;
  manifest["h_min"] = h_min;
  manifest["h_max"] = h_max;
  Table table;
  table.columns = {"grid",  "reps",            "h_min",     "h_max",
                   "slope", "replicates_used", "degenerate"};
  table.rows.push_back({grid, reps, h_min, h_max, fit.slope,
                        fit.replicates_used, fit.degenerate});
  emit_table(manifest, table, common.out, common.format);
  return 0;
}

int cmd_tailbound(const CommonOpts& common, const std::vector<double>& hs,
                  double r, std::size_t reps, std::size_t mesh,
                  const std::vector<double>& ps, double kappa, double h0) {
  Table table;
  table.columns = {"h",         "r",        "reps",      "mesh",
                   "estimate",  "exceed",   "std_error", "bound_min_p",
                   "dominated"};
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double h = hs[i];
    const TailEstimate est =
        tail_probability_mc(h, r, reps, mesh,
                            RngSpec{common.seed, i * reps}, common.threads);
    double bound = 1.0;
    for (const double p : ps)
      bound = std::min(bound, modulus_tail_bound(p, r, h, h0, kappa));
    const bool dominated =
        bound >= 1.0 || est.estimate + 3.0 * est.std_error() <= bound;
    table.rows.push_back({h, r, reps, mesh, est.estimate, est.exceed_count,
                          est.std_error(), bound, dominated});
  }
  json manifest = base_manifest("tailbound", common);
  manifest["h"] = hs;
  manifest["r"] = r;
  manifest["reps"] = reps;
  manifest["mesh"] = mesh;
  manifest["p"] = ps;
  manifest["kappa"] = kappa;
  manifest["h0"] = h0;
  emit_table(manifest, table, common.out, common.format);
  return 0;
}

int cmd_shrinkcheck(const CommonOpts& common, const std::vector<double>& ps,
                    const std::vector<double>& k2s) {
  Table table;
  table.columns = {"p", "k2", "integral", "bound", "exact_p1", "ok"};
  bool all_ok = true;
  for (const double p : ps)
    for (const double k2 : k2s) {
      const ShrinkCheck check = shrink_bound_check(k2, p);
      all_ok = all_ok && check.ok;
      table.rows.push_back({p, k2, check.integral, check.bound,
                            std::isnan(check.exact_p1) ? json()
                                                       : json(check.exact_p1),
                            check.ok});
    }
  json manifest = base_manifest("shrinkcheck", common);
  manifest["p"] = ps;
  manifest["k2"] = k2s;
  emit_table(manifest, table, common.out, common.format);
  return all_ok ? 0 : 1;
}

int cmd_lowerbound(const CommonOpts& common, double delta, double h, double m,
                   double psi_p, const std::string& rho_text) {
  const Modulus rho = parse_rho(rho_text);
  const double bound =
      seminorm_lower_bound(delta, h, m, YoungFunction::exponential(psi_p), rho);
  const bool specialized_applies =
      psi_p == 2.0 && rho.mu == 0.5 && rho.nu == 0.0;
  json manifest = base_manifest("lowerbound", common);
  manifest["delta"] = delta;
  manifest["h"] = h;
  manifest["m"] = m;
  manifest["psi_p"] = psi_p;
  manifest["rho"] = rho_text;
  Table table;
  table.columns = {"delta", "h", "m", "psi_p", "mu", "nu", "bound",
                   "bound_specialized"};
  table.rows.push_back(
      {delta, h, m, psi_p, rho.mu, rho.nu, bound,
       specialized_applies ? json(seminorm_lower_bound_psi2_sqrth(delta, h, m))
                           : json()});
  emit_table(manifest, table, common.out, common.format);
  return 0;
}

int cmd_simulate(const SimOpts& opts, std::uint64_t stream_offset) {
  McConfig config = build_config(opts);
  config.stream_offset = stream_offset;
  const auto dists = run_batch(config);

  json manifest = sim_manifest("simulate", opts, config);
  manifest["stream_offset"] = stream_offset;
  Table table;
  table.columns = {"statistic", "rank", "value"};
  for (const auto& dist : dists)
    for (std::size_t i = 0; i < dist.values.size(); ++i)
      table.rows.push_back({dist.name, i, dist.values[i]});
  emit_table(manifest, table, opts.common.out, opts.common.format);
  return 0;
}

int cmd_power(const SimOpts& opts, const std::vector<double>& alphas) {
  McConfig alt_config = build_config(opts);
  alt_config.stream_offset = alt_config.replicates;  // disjoint from the null
  McConfig null_config = alt_config;
  null_config.signal = ZeroSignal{};
  null_config.stream_offset = 0;

  const auto null_dists = run_batch(null_config);
  const auto alt_dists = run_batch(alt_config);
  const auto levels = parse_alpha_list(alphas);

  json manifest = sim_manifest("power", opts, alt_config);
  manifest["alpha"] = levels;
  Table table;
  table.columns = {"statistic", "alpha", "power", "median_null", "median_alt"};
  for (std::size_t s = 0; s < alt_dists.size(); ++s) {
    const RocCurve curve = roc_curve(null_dists[s], alt_dists[s], levels);
    for (std::size_t i = 0; i < levels.size(); ++i)
      table.rows.push_back({alt_dists[s].name, curve.alpha[i], curve.power[i],
                            null_dists[s].median(), alt_dists[s].median()});
  }
  emit_table(manifest, table, opts.common.out, opts.common.format);
  return 0;
}

int cmd_roc(const SimOpts& opts, std::size_t alpha_count) {
  if (alpha_count == 0)
    throw CLI::ValidationError("--alpha-count", "must be >= 1");
  McConfig alt_config = build_config(opts);
  alt_config.stream_offset = alt_config.replicates;
  McConfig null_config = alt_config;
  null_config.signal = ZeroSignal{};
  null_config.stream_offset = 0;

  const auto null_dists = run_batch(null_config);
  const auto alt_dists = run_batch(alt_config);
  std::vector<double> levels(alpha_count);
  for (std::size_t i = 0; i < alpha_count; ++i)
    levels[i] = static_cast<double>(i + 1) / static_cast<double>(alpha_count);

  json manifest = sim_manifest("roc", opts, alt_config);
  manifest["alpha_count"] = alpha_count;
  Table table;
  table.columns = {"statistic", "alpha", "power"};
  for (std::size_t s = 0; s < alt_dists.size(); ++s) {
    const RocCurve curve = roc_curve(null_dists[s], alt_dists[s], levels);
    for (std::size_t i = 0; i < levels.size(); ++i)
      table.rows.push_back({alt_dists[s].name, curve.alpha[i], curve.power[i]});
  }
  emit_table(manifest, table, opts.common.out, opts.common.format);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Multiscale Besov-Orlicz and scan statistics toolkit"};
  app.set_help_flag("--help", "Print help and exit");
  app.require_subcommand(1);
  int exit_code = 0;
  const auto start = std::chrono::steady_clock::now();

  // norm
  CommonOpts norm_common;
  std::string norm_dist = "gaussian";
  int norm_dim = 1;
  std::size_t norm_count = 1000000;
  auto* norm = app.add_subcommand("norm", "Empirical Orlicz norm vs oracle");
  add_common(norm, norm_common);
  norm->add_option("--dist", norm_dist, "Magnitude distribution");
  norm->add_option("--dim", norm_dim, "Gaussian dimension")
      ->check(CLI::IsMember({1, 2}));
  norm->add_option("--count", norm_count, "Sample size");
  norm->callback([&] { exit_code = cmd_norm(norm_common, norm_dist, norm_dim,
                                            norm_count); });

  // limit
  CommonOpts limit_common;
  std::size_t limit_grid = 1 << 14, limit_reps = 20;
  std::string limit_lags = "dyadic";
  auto* limit = app.add_subcommand("limit", "Modulus-to-sqrt(h) ratio tables");
  add_common(limit, limit_common);
  limit->add_option("--grid", limit_grid, "Brownian grid cells N");
  limit->add_option("--reps,-B,--B", limit_reps, "Replicates");
  limit->add_option("--lags", limit_lags, "Lag grid: all|dyadic|m1,m2,...");
  limit->callback([&] {
    exit_code = cmd_limit(limit_common, limit_grid, limit_reps, limit_lags);
  });

  // ratefit
  CommonOpts rate_common;
  std::size_t rate_grid = 1 << 14, rate_reps = 20;
  std::string rate_lags = "dyadic";
  double rate_h_min = 0.0, rate_h_max = 1.0;
  auto* ratefit =
      app.add_subcommand("ratefit", "Deviation-rate exponent fit");
  add_common(ratefit, rate_common);
  ratefit->add_option("--grid", rate_grid, "Brownian grid cells N");
  ratefit->add_option("--reps,-B,--B", rate_reps, "Replicates");
  ratefit->add_option("--lags", rate_lags, "Lag grid");
  ratefit->add_option("--h-min", rate_h_min, "Smallest h in the fit");
  ratefit->add_option("--h-max", rate_h_max, "Largest h in the fit");
  ratefit->callback([&] {
    exit_code = cmd_ratefit(rate_common, rate_grid, rate_reps, rate_lags,
                            rate_h_min, rate_h_max);
  });

  // tailbound
  CommonOpts tail_common;
  std::vector<double> tail_h{1.0 / 1024.0};
  double tail_r = 0.5, tail_kappa = 1.0, tail_h0 = 0.0;
  std::size_t tail_reps = 500, tail_mesh = 1 << 16;
  std::vector<double> tail_p{1.05, 1.1, 1.15, 1.2, 1.25, 1.3};
  auto* tailbound =
      app.add_subcommand("tailbound", "Tail probability vs closed bound");
  add_common(tailbound, tail_common);
  tailbound->add_option("--h", tail_h, "Lags h")->delimiter(',');
  tailbound->add_option("--r", tail_r, "Relative exceedance r");
  tailbound->add_option("--reps,-B,--B", tail_reps, "Replicates per h");
  tailbound->add_option("--mesh", tail_mesh, "Brownian grid cells N");
  tailbound->add_option("--p", tail_p, "Exponent grid for the bound")
      ->delimiter(',');
  tailbound->add_option("--kappa", tail_kappa, "Bound parameter kappa");
  tailbound->add_option("--h0", tail_h0, "Bound parameter h0");
  tailbound->callback([&] {
    exit_code = cmd_tailbound(tail_common, tail_h, tail_r, tail_reps,
                              tail_mesh, tail_p, tail_kappa, tail_h0);
  });

  // shrinkcheck
  CommonOpts shrink_common;
  std::vector<double> shrink_p{1.0, 1.5, 2.0};
  std::vector<double> shrink_k2{3.0, 5.0, 8.0, 16.0};
  auto* shrinkcheck =
      app.add_subcommand("shrinkcheck", "Integral bound verification");
  add_common(shrinkcheck, shrink_common);
  shrinkcheck->add_option("--p", shrink_p, "Young exponents")->delimiter(',');
  shrinkcheck->add_option("--k2", shrink_k2, "K^2 grid")->delimiter(',');
  shrinkcheck->callback(
      [&] { exit_code = cmd_shrinkcheck(shrink_common, shrink_p, shrink_k2); });

  // lowerbound
  CommonOpts lower_common;
  double lower_delta = 1.0, lower_h = 0.25, lower_m = 2.0, lower_psi_p = 2.0;
  std::string lower_rho = "0.5,0";
  auto* lowerbound =
      app.add_subcommand("lowerbound", "Seminorm lower-bound formulas");
  add_common(lowerbound, lower_common);
  lowerbound->add_option("--delta", lower_delta, "Signal amplitude");
  lowerbound->add_option("--h", lower_h, "Interval width");
  lowerbound->add_option("--m", lower_m, "Interval count");
  lowerbound->add_option("--psi-p", lower_psi_p, "Exponential Young exponent");
  lowerbound->add_option("--rho", lower_rho, "Weight exponents mu,nu");
  lowerbound->callback([&] {
    exit_code = cmd_lowerbound(lower_common, lower_delta, lower_h, lower_m,
                               lower_psi_p, lower_rho);
  });

  // simulate / power / roc
  SimOpts sim_opts;
  std::uint64_t sim_stream_offset = 0;
  auto* simulate =
      app.add_subcommand("simulate", "Draw one batch of statistic values");
  add_sim_options(simulate, sim_opts);
  simulate->add_option("--stream-offset", sim_stream_offset,
                       "First replicate stream index");
  simulate->callback(
      [&] { exit_code = cmd_simulate(sim_opts, sim_stream_offset); });

  SimOpts power_opts;
  std::vector<double> power_alpha{0.05, 0.1};
  auto* power =
      app.add_subcommand("power", "Power at fixed levels (null + alternative)");
  add_sim_options(power, power_opts);
  power->add_option("--alpha", power_alpha, "Significance levels")
      ->delimiter(',');
  power->callback([&] { exit_code = cmd_power(power_opts, power_alpha); });

  SimOpts roc_opts;
  std::size_t roc_alpha_count = 100;
  auto* roc = app.add_subcommand("roc", "Full ROC curve");
  add_sim_options(roc, roc_opts);
  roc->add_option("--alpha-count", roc_alpha_count, "Uniform level count");
  roc->callback([&] { exit_code = cmd_roc(roc_opts, roc_alpha_count); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  const auto elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  std::fprintf(stderr, "duration_s=%.3f\n", elapsed);
  return exit_code;
}

}  // namespace bostat
