#include "egan/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "egan/errors.hpp"

namespace egan {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

scalar_t parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const scalar_t v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad real value '" + value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad integer value '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad unsigned value '" + value + "'");
  }
}

std::vector<Mutation> parse_mutations(const std::string& value) {
  std::vector<Mutation> out;
  std::istringstream ss(value);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(mutation_from_string(tok));
  }
  if (out.empty()) throw ConfigError("train.mutations: empty mutation list");
  return out;
}

std::string fmt_real(scalar_t v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "run.seed") cfg.seed = parse_u64(key, value);
  else if (key == "run.iterations") cfg.iterations = parse_long(key, value);
  else if (key == "run.out") cfg.out_dir = value;
  else if (key == "run.checkpoint_every") cfg.checkpoint_every = parse_long(key, value);
  else if (key == "train.alpha") cfg.alpha = parse_real(key, value);
  else if (key == "train.beta1") cfg.beta1 = parse_real(key, value);
  else if (key == "train.beta2") cfg.beta2 = parse_real(key, value);
  else if (key == "train.n_d") cfg.n_d = static_cast<int>(parse_long(key, value));
  else if (key == "train.n_p") cfg.n_p = static_cast<int>(parse_long(key, value));
  else if (key == "train.m") cfg.m = static_cast<int>(parse_long(key, value));
  else if (key == "train.gamma") cfg.gamma = parse_real(key, value);
  else if (key == "train.mutations") cfg.mutations = parse_mutations(value);
  else if (key == "data.dataset") cfg.dataset = value;
  else if (key == "data.file") cfg.data_file = value;
  else if (key == "data.sigma") cfg.data_sigma = parse_real(key, value);
  else if (key == "data.scale") cfg.data_scale = parse_real(key, value);
  else if (key == "net.z_dim") cfg.z_dim = static_cast<int>(parse_long(key, value));
  else if (key == "net.width") cfg.width = static_cast<int>(parse_long(key, value));
  else if (key == "net.depth") cfg.depth = static_cast<int>(parse_long(key, value));
  else if (key == "eval.samples") cfg.eval_samples = parse_long(key, value);
  else if (key == "eval.k_sigma") cfg.k_sigma = parse_real(key, value);
  else if (key == "eval.kde_bandwidth") cfg.kde_bandwidth = parse_real(key, value);
  else if (key == "eval.kde_extent") cfg.kde_extent = parse_real(key, value);
  else if (key == "eval.kde_resolution") cfg.kde_resolution = parse_long(key, value);
  else if (key == "eval.hist_window") cfg.hist_window = parse_long(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  RunConfig cfg;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    apply_kv(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::vector<std::pair<std::string, std::string>> config_snapshot(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("run.seed", std::to_string(cfg.seed));
  kv.emplace_back("run.iterations", std::to_string(cfg.iterations));
  kv.emplace_back("run.out", cfg.out_dir);
  kv.emplace_back("run.checkpoint_every", std::to_string(cfg.checkpoint_every));
  kv.emplace_back("train.alpha", fmt_real(cfg.alpha));
  kv.emplace_back("train.beta1", fmt_real(cfg.beta1));
  kv.emplace_back("train.beta2", fmt_real(cfg.beta2));
  kv.emplace_back("train.n_d", std::to_string(cfg.n_d));
  kv.emplace_back("train.n_p", std::to_string(cfg.n_p));
  kv.emplace_back("train.m", std::to_string(cfg.m));
  kv.emplace_back("train.gamma", fmt_real(cfg.gamma));
  std::string muts;
  for (Mutation t : cfg.mutations) {
    if (!muts.empty()) muts += ",";
    muts += std::string(to_string(t));
  }
  kv.emplace_back("train.mutations", muts);
  kv.emplace_back("data.dataset", cfg.dataset);
  kv.emplace_back("data.file", cfg.data_file);
  if (cfg.data_sigma) kv.emplace_back("data.sigma", fmt_real(*cfg.data_sigma));
  if (cfg.data_scale) kv.emplace_back("data.scale", fmt_real(*cfg.data_scale));
  kv.emplace_back("net.z_dim", std::to_string(cfg.z_dim));
  kv.emplace_back("net.width", std::to_string(cfg.width));
  kv.emplace_back("net.depth", std::to_string(cfg.depth));
  kv.emplace_back("eval.samples", std::to_string(cfg.eval_samples));
  kv.emplace_back("eval.k_sigma", fmt_real(cfg.k_sigma));
  kv.emplace_back("eval.kde_bandwidth", fmt_real(resolved_kde_bandwidth(cfg)));
  kv.emplace_back("eval.kde_extent", fmt_real(cfg.kde_extent));
  kv.emplace_back("eval.kde_resolution", std::to_string(cfg.kde_resolution));
  kv.emplace_back("eval.hist_window", std::to_string(resolved_hist_window(cfg)));
  std::sort(kv.begin(), kv.end());
  return kv;
}

void validate(const RunConfig& cfg) {
  if (cfg.dataset != "ring8" && cfg.dataset != "grid25" && cfg.dataset != "file")
    throw ConfigError("data.dataset must be ring8, grid25 or file");
  if (cfg.dataset == "file" && cfg.data_file.empty())
    throw ConfigError("data.dataset=file requires data.file");
  if (cfg.z_dim < 1) throw ConfigError("net.z_dim must be >= 1");
  if (cfg.width < 1) throw ConfigError("net.width must be >= 1");
  if (cfg.depth < 1) throw ConfigError("net.depth must be >= 1");
  if (cfg.eval_samples < 1) throw ConfigError("eval.samples must be >= 1");
  if (cfg.k_sigma <= 0) throw ConfigError("eval.k_sigma must be positive");
  if (cfg.kde_extent <= 0) throw ConfigError("eval.kde_extent must be positive");
  if (cfg.kde_resolution < 1) throw ConfigError("eval.kde_resolution must be >= 1");
  if (cfg.data_sigma && *cfg.data_sigma <= 0) throw ConfigError("data.sigma must be positive");
  if (cfg.data_scale && *cfg.data_scale <= 0) throw ConfigError("data.scale must be positive");
  if (cfg.hist_window < 0) throw ConfigError("eval.hist_window must be >= 0");
  validate(to_training_config(cfg));  // shares the training invariants
}

TrainingConfig to_training_config(const RunConfig& cfg) {
  TrainingConfig tc;
  tc.alpha = cfg.alpha;
  tc.beta1 = cfg.beta1;
  tc.beta2 = cfg.beta2;
  tc.n_d = cfg.n_d;
  tc.n_p = cfg.n_p;
  tc.m = cfg.m;
  tc.gamma = cfg.gamma;
  tc.iterations = cfg.iterations;
  tc.seed = cfg.seed;
  tc.mutations = cfg.mutations;
  tc.checkpoint_every = cfg.checkpoint_every;
  tc.gen_spec = generator_spec(cfg.z_dim, cfg.width, cfg.depth, 2);
  tc.disc_spec = discriminator_spec(2, cfg.width, cfg.depth);
  return tc;
}

std::optional<GaussianMixture> reference_mixture(const RunConfig& cfg) {
  if (cfg.dataset == "ring8")
    return ring8(cfg.data_scale.value_or(2.0), cfg.data_sigma.value_or(0.02));
  if (cfg.dataset == "grid25")
    return grid25(cfg.data_scale.value_or(4.0), cfg.data_sigma.value_or(0.05));
  return std::nullopt;
}

DataSampler make_sampler(const RunConfig& cfg) {
  if (const auto gm = reference_mixture(cfg)) return DataSampler::from_mixture(*gm);
  return DataSampler::from_file(cfg.data_file);
}

scalar_t resolved_kde_bandwidth(const RunConfig& cfg) {
  if (cfg.kde_bandwidth) return *cfg.kde_bandwidth;
  return cfg.dataset == "grid25" ? 0.15 : 0.1;
}

long resolved_hist_window(const RunConfig& cfg) {
  if (cfg.hist_window > 0) return cfg.hist_window;
  return std::max<long>(1, cfg.iterations / 50);
}

}  // namespace egan
