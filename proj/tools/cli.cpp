// Copyright 2026 The distval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "distval/distval.hpp"

namespace distval::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string sigma;
  std::optional<double> eps_bias;
  std::optional<double> eps_upsilon;
  std::string out;
  std::string format = "json";
  std::size_t threads = 0;

  std::string vendor_a;
  std::string vendor_b;
  std::optional<double> huber_gap;
  bool assume_zero_gap = false;

  std::string experiment;
  std::optional<std::size_t> n;
  std::optional<std::size_t> trials;
  bool timing = false;

  std::vector<double> distances;
  std::size_t grid_resolution = 0;
};

// Rows of strings for CSV output of non-numeric reports.
struct TextTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void write_text_table(const TextTable& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    os << (i ? "," : "") << t.columns[i];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

TextTable to_text(const ReportTable& t) {
  TextTable out{t.name, t.columns, {}};
  for (const auto& row : t.rows) {
    std::vector<std::string> r;
    for (double v : row) r.push_back(format_number(v));
    out.rows.push_back(std::move(r));
  }
  return out;
}

double parse_sigma(const std::string& text) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw InputError("--sigma expects a positive number or 'auto', got '" + text + "'");
}

class Runner {
 public:
  Runner(const Options& opts, std::ostream& out, std::ostream& err)
      : opts_(opts), out_(out), err_(err) {}

  int value();
  int compare_pair();
  int rank();
  int experiment();
  int verify_game();

 private:
  void load_config();
  std::uint64_t require_seed(const std::string& why) const;
  std::vector<Dataset> load_vendors();
  KernelConfig resolve_kernel(const std::vector<Dataset>& datasets,
                              const Reference* ref);
  Reference resolve_reference(const std::vector<Dataset>& datasets);
  PolicyParams resolve_policy();
  void emit(json report, const std::vector<TextTable>& tables);
  fs::path resolve_path(const std::string& p) const;

  const Options& opts_;
  std::ostream& out_;
  std::ostream& err_;
  json config_ = json::object();
  fs::path base_dir_ = ".";
  json resolved_ = json::object();
};

void Runner::load_config() {
  if (opts_.config_path.empty()) return;
  std::ifstream in(opts_.config_path);
  if (!in) throw InputError("cannot open config '" + opts_.config_path + "'");
  try {
    config_ = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("config '" + opts_.config_path + "': " + e.what());
  }
  if (!config_.is_object()) {
    throw InputError("config '" + opts_.config_path + "' must be a JSON object");
  }
  base_dir_ = fs::path(opts_.config_path).parent_path();
  if (base_dir_.empty()) base_dir_ = ".";
}

fs::path Runner::resolve_path(const std::string& p) const {
  const fs::path path(p);
  return path.is_absolute() ? path : base_dir_ / path;
}

std::uint64_t Runner::require_seed(const std::string& why) const {
  if (!opts_.seed) throw InputError("--seed is required: " + why);
  return *opts_.seed;
}

std::vector<Dataset> Runner::load_vendors() {
  load_config();
  if (!config_.contains("vendors")) {
    throw InputError("config needs a \"vendors\" list of {id, path}");
  }
  VendorManifest m;
  for (const auto& v : config_.at("vendors")) {
    m.entries.push_back({v.at("id").get<std::string>(),
                         resolve_path(v.at("path").get<std::string>()).string()});
  }
  m.dim = config_.value("dim", std::size_t{0});
  m.header = config_.value("header", false);
  if (config_.contains("ground_truth")) {
    m.ground_truth_path =
        resolve_path(config_.at("ground_truth").get<std::string>()).string();
  }
  auto datasets = ingest(m);
  json vendors = json::array();
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    vendors.push_back({{"id", m.entries[i].id},
                       {"path", m.entries[i].path},
                       {"size", datasets[i].size()}});
  }
  resolved_["vendors"] = vendors;
  resolved_["dim"] = datasets.front().dim();
  resolved_["header"] = m.header;
  return datasets;
}

Reference Runner::resolve_reference(const std::vector<Dataset>& datasets) {
  const json ref_cfg = config_.value("reference", json::object());
  std::string kind = config_.contains("ground_truth") ? "ground_truth" : "uniform";
  kind = ref_cfg.value("kind", kind);
  json resolved = {{"kind", kind}};
  Reference ref = [&] {
    if (kind == "ground_truth") {
      if (!config_.contains("ground_truth")) {
        throw InputError("reference kind ground_truth needs a \"ground_truth\" file");
      }
      const auto path = resolve_path(config_.at("ground_truth").get<std::string>());
      resolved["path"] = path.string();
      return Reference::ground_truth(
          read_csv_file(path.string(), "ground_truth", config_.value("header", false),
                        datasets.front().dim()));
    }
    if (kind == "uniform") {
      const auto seed = require_seed("the uniform reference subsamples vendors");
      return build_uniform_reference(datasets, seed);
    }
    if (kind == "mixture") {
      const auto seed = require_seed("the mixture reference is sampled");
      MixtureWeights w = ref_cfg.contains("weights")
                             ? MixtureWeights{ref_cfg.at("weights").get<std::vector<double>>()}
                             : MixtureWeights::uniform(datasets.size());
      std::size_t m_min = datasets.front().size();
      for (const auto& d : datasets) m_min = std::min(m_min, d.size());
      const auto total = ref_cfg.value("total", datasets.size() * m_min);
      resolved["weights"] = w.weights;
      resolved["total"] = total;
      return build_mixture_reference(datasets, w, total, seed);
    }
    throw InputError("unknown reference kind '" + kind +
                     "' (expected ground_truth, uniform or mixture)");
  }();
  resolved["size"] = ref.data.size();
  resolved_["reference"] = resolved;
  return ref;
}

KernelConfig Runner::resolve_kernel(const std::vector<Dataset>& datasets,
                                    const Reference* ref) {
  const json k = config_.value("kernel", json::object());
  std::string sigma = opts_.sigma;
  if (sigma.empty() && k.contains("sigma")) {
    sigma = k.at("sigma").is_string() ? k.at("sigma").get<std::string>()
                                      : format_number(k.at("sigma").get<double>());
  }
  if (sigma.empty()) sigma = "1";
  KernelConfig cfg;
  if (sigma == "auto") {
    const auto seed = require_seed("--sigma auto subsamples the pooled data");
    const std::size_t cap = k.value("median_cap", kDefaultMedianCap);
    std::vector<double> pooled;
    for (const auto& d : datasets) pooled.insert(pooled.end(), d.flat().begin(), d.flat().end());
    if (ref) pooled.insert(pooled.end(), ref->data.flat().begin(), ref->data.flat().end());
    cfg = KernelConfig::rbf(median_heuristic(
        Dataset("pooled", datasets.front().dim(), std::move(pooled)), cap, seed));
    resolved_["kernel"] = {{"family", "rbf"}, {"sigma", cfg.sigma},
                           {"sigma_source", "median_heuristic"}, {"median_cap", cap}};
  } else {
    cfg = KernelConfig::rbf(parse_sigma(sigma));
    resolved_["kernel"] = {{"family", "rbf"}, {"sigma", cfg.sigma}};
  }
  return cfg;
}

PolicyParams Runner::resolve_policy() {
  const json p = config_.value("policy", json::object());
  PolicyParams params;
  params.eps_bias = opts_.eps_bias.value_or(p.value("eps_bias", 0.1));
  params.eps_upsilon = opts_.eps_upsilon.value_or(p.value("eps_upsilon", 0.0));
  params.k_bound = 1.0;
  params.validate();
  resolved_["policy"] = {{"eps_bias", params.eps_bias},
                         {"eps_upsilon", params.eps_upsilon},
                         {"k_bound", params.k_bound}};
  return params;
}

void Runner::emit(json report, const std::vector<TextTable>& tables) {
  err_ << "resolved config: " << resolved_.dump() << '\n';
  if (opts_.format == "csv") {
    if (opts_.out.empty()) {
      for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i) out_ << '\n';
        write_text_table(tables[i], out_);
      }
      return;
    }
    // One file per table inside the --out directory.
    fs::create_directories(opts_.out);
    for (const auto& t : tables) {
      const fs::path path = fs::path(opts_.out) / (t.name + ".csv");
      std::ofstream f(path);
      if (!f) throw InputError("cannot write '" + path.string() + "'");
      write_text_table(t, f);
    }
    std::ofstream f(fs::path(opts_.out) / "config.json");
    f << resolved_.dump(2) << '\n';
    return;
  }
  report["config"] = resolved_;
  const std::string text = report.dump(2) + "\n";
  if (opts_.out.empty()) {
    out_ << text;
    return;
  }
  const fs::path path(opts_.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + opts_.out + "'");
  f << text;
}

const Dataset& find_vendor(const std::vector<Dataset>& datasets, const std::string& id) {
  for (const auto& d : datasets) {
    if (d.id() == id) return d;
  }
  throw InputError("no vendor with id '" + id + "'");
}

int Runner::value() {
  const auto datasets = load_vendors();
  const Reference ref = resolve_reference(datasets);
  const KernelConfig kernel = resolve_kernel(datasets, &ref);
  json values = json::array();
  TextTable table{"values", {"vendor", "value"}, {}};
  const double ref_self = gram_sum_self(kernel, ref.data);
  for (const auto& d : datasets) {
    const double v = 0.0 - mmd_biased_with_self_sum(kernel, d, ref.data, ref_self);
    values.push_back({{"id", d.id()}, {"value", v}});
    table.rows.push_back({d.id(), format_number(v)});
  }
  emit({{"command", "value"},
        {"values", values},
        {"value_range", {-std::sqrt(2.0 * kernel.k_bound), 0.0}},
        {"version", kVersion}},
       {table});
  return kExitOk;
}

int Runner::rank() {
  const auto datasets = load_vendors();
  const Reference ref = resolve_reference(datasets);
  const KernelConfig kernel = resolve_kernel(datasets, &ref);
  json ranking = json::array();
  TextTable table{"ranking", {"rank", "vendor", "value"}, {}};
  std::size_t pos = 1;
  for (const auto& [id, v] : rank_vendors(kernel, datasets, ref)) {
    ranking.push_back({{"rank", pos}, {"id", id}, {"value", v}});
    table.rows.push_back({std::to_string(pos), id, format_number(v)});
    ++pos;
  }
  emit({{"command", "rank"}, {"ranking", ranking}, {"version", kVersion}}, {table});
  return kExitOk;
}

int Runner::compare_pair() {
  const auto datasets = load_vendors();
  const json c = config_.value("compare", json::object());
  const std::string a = !opts_.vendor_a.empty() ? opts_.vendor_a : c.value("a", std::string());
  const std::string b = !opts_.vendor_b.empty() ? opts_.vendor_b : c.value("b", std::string());
  if (a.empty() || b.empty()) {
    throw InputError("compare needs two vendor ids (--a/--b or config compare.a/b)");
  }
  const Reference ref = resolve_reference(datasets);
  const KernelConfig kernel = resolve_kernel(datasets, &ref);
  const PolicyParams policy = resolve_policy();
  CompareOptions copts;
  if (opts_.huber_gap) {
    copts.huber_gap = opts_.huber_gap;
  } else if (c.contains("huber_gap") && !c.at("huber_gap").is_null()) {
    copts.huber_gap = c.at("huber_gap").get<double>();
  }
  copts.assume_zero_gap = opts_.assume_zero_gap || c.value("assume_zero_gap", false);
  resolved_["compare"] = {{"a", a},
                          {"b", b},
                          {"huber_gap", copts.huber_gap ? json(*copts.huber_gap) : json()},
                          {"assume_zero_gap", copts.assume_zero_gap}};

  const DecisionReport r =
      compare(kernel, policy, find_vendor(datasets, a), find_vendor(datasets, b), ref, copts);
  const json decision = {{"margin", r.margin},
                         {"observed_gap", r.observed_gap},
                         {"delta", r.delta},
                         {"confidence", r.confidence},
                         {"verdict", std::string(to_string(r.verdict))},
                         {"extra_term", r.extra_term},
                         {"bound_unavailable", r.bound_unavailable},
                         {"value", r.value},
                         {"value_prime", r.value_prime},
                         {"reference_kind", r.reference_kind}};
  TextTable table{"decision", {"field", "value"}, {}};
  for (const auto& [key, v] : decision.items()) {
    table.rows.push_back({key, v.is_string() ? v.get<std::string>() : v.dump()});
  }
  emit({{"command", "compare"}, {"a", a}, {"b", b}, {"decision", decision},
        {"version", kVersion}},
       {table});
  return kExitOk;
}

int Runner::experiment() {
  load_config();
  json e = config_.value("experiment", json::object());
  if (!opts_.experiment.empty()) e["name"] = opts_.experiment;
  if (!e.contains("name")) throw InputError("experiment needs a name (--name or config)");
  if (opts_.n) e["n"] = *opts_.n;
  if (opts_.trials) e["trials"] = *opts_.trials;
  if (!opts_.sigma.empty()) {
    if (opts_.sigma == "auto") {
      throw InputError("--sigma auto is not available for synthetic experiments");
    }
    e["kernel"]["sigma"] = parse_sigma(opts_.sigma);
  }
  if (opts_.timing) e["timing"] = true;
  e["seed"] = require_seed("experiments are stochastic");
  ExperimentConfig cfg = ExperimentConfig::from_json(e);
  if (opts_.eps_bias || opts_.eps_upsilon) {
    if (cfg.name != ExperimentName::kPolicySoundness) {
      throw InputError("--eps-bias/--eps-upsilon apply to policy_soundness only");
    }
    if (opts_.eps_bias) cfg.extra["eps_bias"] = *opts_.eps_bias;
    if (opts_.eps_upsilon) cfg.extra["eps_upsilon"] = *opts_.eps_upsilon;
  }
  const ExperimentReport report = run_experiment(cfg);
  resolved_["experiment"] = report.config;
  std::vector<TextTable> tables;
  for (const auto& t : report.tables) tables.push_back(to_text(t));
  TextTable agg{"aggregates", {"table", "statistic", "group", "mean", "stderr", "count"}, {}};
  for (const auto& a : report.aggregates) {
    agg.rows.push_back({a.table, a.statistic, a.group, format_number(a.mean),
                        format_number(a.stderr_), std::to_string(a.count)});
  }
  tables.push_back(std::move(agg));
  json j = to_json(report);
  j["command"] = "experiment";
  emit(std::move(j), tables);
  return kExitOk;
}

int Runner::verify_game() {
  load_config();
  const json g = config_.value("game", json::object());
  std::vector<double> d = opts_.distances;
  if (d.empty() && g.contains("distances")) d = g.at("distances").get<std::vector<double>>();
  if (d.empty()) throw InputError("verify-game needs --distances or config game.distances");
  const std::size_t grid = opts_.grid_resolution ? opts_.grid_resolution
                                                 : g.value("grid_resolution", std::size_t{0});
  GameVerification v;
  if (d.size() > GameInstance::kMaxPlayers) {
    const auto seed = require_seed("games with more than 7 players are spot-checked");
    const std::size_t samples = g.value("samples", std::size_t{1000});
    resolved_["game"] = {{"distances", d}, {"samples", samples}};
    v = verify_minmax_sampled(d, samples, seed);
  } else {
    resolved_["game"] = {{"distances", d}, {"grid_resolution", grid}};
    v = verify_minmax(build_game(d), grid);
  }
  const json report = {{"command", "verify-game"},
                       {"n", v.n},
                       {"distances", v.distances},
                       {"z", v.z},
                       {"z_prime", v.z_prime},
                       {"expected", v.expected},
                       {"column_spread", v.column_spread},
                       {"best_pure_value", v.best_pure_value},
                       {"best_grid_value", v.best_grid_value},
                       {"grid_points", v.grid_points},
                       {"sampled", v.sampled},
                       {"certified", v.certified},
                       {"violations", v.violations},
                       {"version", kVersion}};
  TextTable table{"game",
                  {"n", "z", "z_prime", "expected", "column_spread", "best_pure",
                   "best_grid", "certified"},
                  {{std::to_string(v.n), format_number(v.z), format_number(v.z_prime),
                    format_number(v.expected), format_number(v.column_spread),
                    format_number(v.best_pure_value), format_number(v.best_grid_value),
                    v.certified ? "1" : "0"}}};
  emit(report, {table});
  if (!v.certified) {
    for (const auto& msg : v.violations) err_ << "violation: " << msg << '\n';
    return kExitPropertyViolation;
  }
  return kExitOk;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Seed for every random choice");
  cmd->add_option("--out", o.out, "Output file (json) or directory (csv)");
  cmd->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--threads", o.threads, "Worker threads (default: DISTVAL_THREADS or all cores)");
}

void add_kernel(CLI::App* cmd, Options& o) {
  cmd->add_option("--sigma", o.sigma, "RBF bandwidth, or 'auto' for the median heuristic");
}

void add_policy(CLI::App* cmd, Options& o) {
  cmd->add_option("--eps-bias", o.eps_bias, "Bias requirement")->check(CLI::NonNegativeNumber);
  cmd->add_option("--eps-upsilon", o.eps_upsilon, "Decision margin")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Distribution-level data valuation with MMD"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* value = app.add_subcommand("value", "Value every vendor against the reference");
  add_common(value, o);
  add_kernel(value, o);

  auto* cmp = app.add_subcommand("compare", "Decide whether vendor a is more valuable than b");
  add_common(cmp, o);
  add_kernel(cmp, o);
  add_policy(cmp, o);
  cmp->add_option("--a", o.vendor_a, "First vendor id");
  cmp->add_option("--b", o.vendor_b, "Second vendor id");
  cmp->add_option("--huber-gap", o.huber_gap, "Known eps_w * d(Q_w, P*)")
      ->check(CLI::NonNegativeNumber);
  cmp->add_flag("--assume-zero-gap", o.assume_zero_gap,
                "Allow a verdict with a mixture reference and unknown gap");

  auto* rank = app.add_subcommand("rank", "Rank vendors by value");
  add_common(rank, o);
  add_kernel(rank, o);

  auto* exp = app.add_subcommand("experiment", "Run a seeded synthetic experiment");
  add_common(exp, o);
  add_kernel(exp, o);
  add_policy(exp, o);
  exp->add_option("--name", o.experiment,
                  "correlation, convergence, policy_soundness, incentive or game_verify");
  exp->add_option("--n", o.n, "Number of vendors");
  exp->add_option("--trials", o.trials, "Number of trials");
  exp->add_flag("--timing", o.timing, "Record wall-clock time");

  auto* game = app.add_subcommand("verify-game", "Certify the uniform strategy of the vendor game");
  add_common(game, o);
  game->add_option("--distances", o.distances, "Vendor distances d_i")->delimiter(',');
  game->add_option("--grid", o.grid_resolution, "Simplex grid resolution (0 = automatic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  set_num_threads(o.threads);
  Runner runner(o, out, err);
  try {
    if (value->parsed()) return runner.value();
    if (cmp->parsed()) return runner.compare_pair();
    if (rank->parsed()) return runner.rank();
    if (exp->parsed()) return runner.experiment();
    if (game->parsed()) return runner.verify_game();
  } catch (const PropertyViolation& e) {
    err << "property violation: " << e.what() << '\n';
    return kExitPropertyViolation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: config: " << e.what() << '\n';
    return kExitInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace distval::cli
