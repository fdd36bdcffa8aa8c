// Copyright 2026 The SmoothGNN Authors.
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

#include "smoothgnn/config.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "smoothgnn/csv.hpp"
#include "smoothgnn/error.hpp"

namespace smoothgnn {
namespace {

struct Ctx {
  std::string source;
  long line = 0;

  [[noreturn]] void fail(const std::string& what) const {
    raise(ErrorCode::kParseError, source + ":" + std::to_string(line) + ": " + what);
  }
};

double to_double(const std::string& v, const Ctx& c) { return csv::parse_double(v, c.source, c.line); }
Index to_index(const std::string& v, const Ctx& c) { return csv::parse_int(v, c.source, c.line); }

std::uint64_t to_u64(const std::string& v, const Ctx& c) {
  const long long x = csv::parse_int(v, c.source, c.line);
  if (x < 0) c.fail("expected a nonnegative integer");
  return static_cast<std::uint64_t>(x);
}

bool to_bool(const std::string& v, const Ctx& c) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  c.fail("expected true or false, got '" + v + "'");
}

std::string from_bool(bool b) { return b ? "true" : "false"; }

template <typename E>
struct EnumName {
  E value;
  const char* name;
};

constexpr EnumName<PropagationMethod> kMethods[] = {{PropagationMethod::kRSoftGraphAIN, "rsoftgraphain"},
                                                    {PropagationMethod::kSGC, "sgc"},
                                                    {PropagationMethod::kPairnorm, "pairnorm"}};
constexpr EnumName<Activation> kActivations[] = {{Activation::kIdentity, "identity"}, {Activation::kRelu, "relu"}};
constexpr EnumName<OperatorMode> kOperators[] = {{OperatorMode::kSymmetric, "symmetric"},
                                                 {OperatorMode::kRandomWalk, "random_walk"}};
constexpr EnumName<AuxGraphMode> kAuxModes[] = {{AuxGraphMode::kInputGraph, "input_graph"},
                                                {AuxGraphMode::kFeatureKnn, "feature_knn"},
                                                {AuxGraphMode::kEmbeddingKnn, "embedding_knn"}};
constexpr EnumName<ExperimentMode> kModes[] = {{ExperimentMode::kSupervised, "supervised"},
                                               {ExperimentMode::kCurriculum, "curriculum"}};

template <typename E, std::size_t N>
E to_enum(const EnumName<E> (&table)[N], const std::string& v, const Ctx& c) {
  for (const auto& e : table)
    if (v == e.name) return e.value;
  std::string options;
  for (const auto& e : table) options += std::string(options.empty() ? "" : "|") + e.name;
  c.fail("expected one of " + options + ", got '" + v + "'");
}

template <typename E, std::size_t N>
std::string from_enum(const EnumName<E> (&table)[N], E value) {
  for (const auto& e : table)
    if (e.value == value) return e.name;
  return "?";
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size(); ++i) out += (i ? "," : "") + std::to_string(seeds[i]);
  return out;
}

struct Key {
  const char* name;
  const char* help;
  std::function<void(ExperimentConfig&, const std::string&, const Ctx&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
  bool placement = false;  // excluded from the config hash
};

// The filter params are immutable; rebuild them from the current values.
void set_filter(ExperimentConfig& cfg, double a, double b, Index d0, double eps) {
  cfg.propagation.filter = SpectralFilterParams(a, b, d0, eps);
}

#define DOUBLE_KEY(NAME, HELP, FIELD)                                                           \
  Key{NAME, HELP, [](ExperimentConfig& c, const std::string& v, const Ctx& x) { c.FIELD = to_double(v, x); }, \
      [](const ExperimentConfig& c) { return csv::format_double(c.FIELD); }}
#define INDEX_KEY(NAME, HELP, FIELD)                                                            \
  Key{NAME, HELP, [](ExperimentConfig& c, const std::string& v, const Ctx& x) { c.FIELD = to_index(v, x); }, \
      [](const ExperimentConfig& c) { return std::to_string(c.FIELD); }}
#define U64_KEY(NAME, HELP, FIELD)                                                              \
  Key{NAME, HELP, [](ExperimentConfig& c, const std::string& v, const Ctx& x) { c.FIELD = to_u64(v, x); }, \
      [](const ExperimentConfig& c) { return std::to_string(c.FIELD); }}
#define BOOL_KEY(NAME, HELP, FIELD)                                                             \
  Key{NAME, HELP, [](ExperimentConfig& c, const std::string& v, const Ctx& x) { c.FIELD = to_bool(v, x); }, \
      [](const ExperimentConfig& c) { return from_bool(c.FIELD); }}
#define ENUM_KEY(NAME, HELP, TABLE, FIELD)                                                      \
  Key{NAME, HELP,                                                                               \
      [](ExperimentConfig& c, const std::string& v, const Ctx& x) { c.FIELD = to_enum(TABLE, v, x); }, \
      [](const ExperimentConfig& c) { return from_enum(TABLE, c.FIELD); }}

const std::vector<Key>& keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    k.push_back({"dataset.path", "dataset directory (empty: synthetic data)",
                 [](ExperimentConfig& c, const std::string& v, const Ctx&) { c.dataset_path = v; },
                 [](const ExperimentConfig& c) { return c.dataset_path; }});
    k.push_back(INDEX_KEY("synthetic.clusters", "number of Gaussian clusters", synthetic.clusters));
    k.push_back(INDEX_KEY("synthetic.centers_dim", "feature dimension of the centers", synthetic.centers_dim));
    k.push_back(INDEX_KEY("synthetic.nodes_per_cluster", "nodes per cluster", synthetic.nodes_per_cluster));
    k.push_back(DOUBLE_KEY("synthetic.intra_p", "same-cluster edge probability", synthetic.intra_p));
    k.push_back(DOUBLE_KEY("synthetic.inter_p", "cross-cluster edge probability", synthetic.inter_p));
    k.push_back(DOUBLE_KEY("synthetic.center_spread", "std of the cluster centers", synthetic.center_spread));
    k.push_back(DOUBLE_KEY("synthetic.feature_noise_sigma", "std of points around centers",
                           synthetic.feature_noise_sigma));
    k.push_back(DOUBLE_KEY("synthetic.train_frac", "per-class train fraction", synthetic.train_frac));
    k.push_back(DOUBLE_KEY("synthetic.val_frac", "per-class validation fraction", synthetic.val_frac));
    k.push_back(U64_KEY("synthetic.seed", "base seed; each run adds its own seed", synthetic.seed));

    k.push_back(ENUM_KEY("propagation.method", "rsoftgraphain|sgc|pairnorm", kMethods, propagation.method));
    k.push_back(DOUBLE_KEY("propagation.alpha", "aggregation weight (renormalized)", propagation.alpha));
    k.push_back(DOUBLE_KEY("propagation.beta", "residual weight (renormalized)", propagation.beta));
    k.push_back(DOUBLE_KEY("propagation.gamma", "initial-connection weight (renormalized)", propagation.gamma));
    k.push_back(INDEX_KEY("propagation.width", "hidden width d", propagation.width));
    k.push_back({"propagation.a", "soft filter blend a in [0,1]",
                 [](ExperimentConfig& c, const std::string& v, const Ctx& x) {
                   const auto& f = c.propagation.filter;
                   set_filter(c, to_double(v, x), f.b(), f.d0(), f.eps_rank());
                 },
                 [](const ExperimentConfig& c) { return csv::format_double(c.propagation.filter.a()); }});
    k.push_back({"propagation.b", "soft filter exponent b in [0,1]",
                 [](ExperimentConfig& c, const std::string& v, const Ctx& x) {
                   const auto& f = c.propagation.filter;
                   set_filter(c, f.a(), to_double(v, x), f.d0(), f.eps_rank());
                 },
                 [](const ExperimentConfig& c) { return csv::format_double(c.propagation.filter.b()); }});
    k.push_back({"propagation.d0", "number of whitened channels, 1..d",
                 [](ExperimentConfig& c, const std::string& v, const Ctx& x) {
                   const auto& f = c.propagation.filter;
                   set_filter(c, f.a(), f.b(), to_index(v, x), f.eps_rank());
                 },
                 [](const ExperimentConfig& c) { return std::to_string(c.propagation.filter.d0()); }});
    k.push_back({"propagation.eps_rank", "relative eigenvalue cutoff",
                 [](ExperimentConfig& c, const std::string& v, const Ctx& x) {
                   const auto& f = c.propagation.filter;
                   set_filter(c, f.a(), f.b(), f.d0(), to_double(v, x));
                 },
                 [](const ExperimentConfig& c) { return csv::format_double(c.propagation.filter.eps_rank()); }});
    k.push_back(DOUBLE_KEY("propagation.p", "fuzzy residual decay", propagation.p));
    k.push_back(DOUBLE_KEY("propagation.q", "fuzzy initial decay", propagation.q));
    k.push_back(BOOL_KEY("propagation.fuzzy", "accumulate fuzzy links", propagation.fuzzy));
    k.push_back(INDEX_KEY("propagation.layers", "layer count L", propagation.layers));
    k.push_back(ENUM_KEY("propagation.activation", "identity|relu", kActivations, propagation.activation));
    k.push_back(ENUM_KEY("propagation.operator", "symmetric|random_walk", kOperators, propagation.operator_mode));
    k.push_back(BOOL_KEY("propagation.parametric", "fixed seeded layer weights", propagation.parametric));
    k.push_back(U64_KEY("propagation.weight_seed", "seed of the layer weights", propagation.weight_seed));
    k.push_back(DOUBLE_KEY("propagation.pairnorm_scale", "Pairnorm scale C", propagation.pairnorm_scale));

    k.push_back(INDEX_KEY("curriculum.n_t", "smoothing depth n_T", curriculum.n_t));
    k.push_back(INDEX_KEY("curriculum.knn_k", "neighbours per node in KNN aux graphs", curriculum.knn_k));
    k.push_back(DOUBLE_KEY("curriculum.gamma_prime", "aux edge weight exponent", curriculum.gamma_prime));
    k.push_back(DOUBLE_KEY("curriculum.mask_ratio", "fraction of pseudo-labels filtered", curriculum.mask_ratio));
    k.push_back(ENUM_KEY("curriculum.aux_mode", "input_graph|feature_knn|embedding_knn", kAuxModes,
                         curriculum.aux_mode));
    k.push_back(INDEX_KEY("curriculum.pacing_epochs", "epochs per smoothing task", curriculum.pacing_epochs));
    k.push_back(BOOL_KEY("curriculum.reset_on_finetune", "restart lr decay for fine-tuning",
                         curriculum.reset_on_finetune));

    k.push_back(DOUBLE_KEY("train.lr", "gradient-descent step size", train.lr));
    k.push_back(INDEX_KEY("train.epochs", "supervised / fine-tune epochs", train.epochs));
    k.push_back(DOUBLE_KEY("train.weight_decay", "L2 coefficient", train.weight_decay));
    k.push_back(INDEX_KEY("train.lr_decay_epoch", "halve lr from this epoch (0: never)", train.lr_decay_epoch));

    k.push_back(ENUM_KEY("experiment.mode", "supervised|curriculum", kModes, mode));
    k.push_back(BOOL_KEY("experiment.noisy_features", "replace features with N(0,1) noise", noisy_features));
    k.push_back({"experiment.seeds", "comma-separated run seeds",
                 [](ExperimentConfig& c, const std::string& v, const Ctx& x) {
                   c.seeds.clear();
                   for (const auto& s : csv::split(v)) c.seeds.push_back(to_u64(s, x));
                 },
                 [](const ExperimentConfig& c) { return join_seeds(c.seeds); }, true});
    k.push_back({"experiment.output_dir", "directory for result files",
                 [](ExperimentConfig& c, const std::string& v, const Ctx&) { c.output_dir = v; },
                 [](const ExperimentConfig& c) { return c.output_dir; }, true});
    k.push_back({"experiment.threads", "worker threads across seeds",
                 [](ExperimentConfig& c, const std::string& v, const Ctx& x) { c.threads = to_index(v, x); },
                 [](const ExperimentConfig& c) { return std::to_string(c.threads); }, true});
    k.push_back(BOOL_KEY("experiment.deterministic", "write wall_ms = 0", deterministic));
    k.push_back(BOOL_KEY("experiment.spectral_diagnostics", "dense subspace distance per layer",
                         spectral_diagnostics));
    k.push_back({"experiment.export_snapshots", "write smoothed label snapshots",
                 [](ExperimentConfig& c, const std::string& v, const Ctx& x) { c.export_snapshots = to_bool(v, x); },
                 [](const ExperimentConfig& c) { return from_bool(c.export_snapshots); }, true});
    return k;
  }();
  return table;
}

#undef DOUBLE_KEY
#undef INDEX_KEY
#undef U64_KEY
#undef BOOL_KEY
#undef ENUM_KEY

ExperimentConfig parse_lines(const std::string& text, const std::string& source, bool synthetic_only) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  Ctx ctx{source, 0};
  while (std::getline(in, raw)) {
    ++ctx.line;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = csv::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) ctx.fail("expected 'key = value'");
    const std::string key(csv::trim(line.substr(0, eq)));
    const std::string value(csv::trim(line.substr(eq + 1)));
    const Key* match = nullptr;
    for (const auto& k : keys())
      if (key == k.name) match = &k;
    if (!match || (synthetic_only && key.rfind("synthetic.", 0) != 0)) {
      raise(ErrorCode::kInvalidConfig, source + ":" + std::to_string(ctx.line) + ": unknown key '" + key + "'");
    }
    if (!seen.insert(key).second) {
      raise(ErrorCode::kInvalidConfig, source + ":" + std::to_string(ctx.line) + ": key '" + key + "' repeated");
    }
    try {
      match->set(cfg, value, ctx);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParseError) throw;
      raise(e.code(), source + ":" + std::to_string(ctx.line) + ": " + e.what());
    }
  }
  return cfg;
}

std::string render(const ExperimentConfig& cfg, bool include_placement) {
  std::string out;
  for (const auto& k : keys()) {
    if (k.placement && !include_placement) continue;
    out += std::string(k.name) + " = " + k.get(cfg) + "\n";
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  PropagationConfig prop = propagation;
  prop.validate();
  train.validate();
  if (dataset_path.empty()) synthetic.validate();
  if (seeds.empty()) raise(ErrorCode::kInvalidConfig, "at least one seed is required");
  if (threads < 1) raise(ErrorCode::kInvalidConfig, "threads must be at least 1");
  if (curriculum.n_t < 0 || curriculum.pacing_epochs < 0) {
    raise(ErrorCode::kInvalidConfig, "curriculum depth and pacing must be nonnegative");
  }
  if (curriculum.knn_k < 1) raise(ErrorCode::kInvalidConfig, "curriculum.knn_k must be at least 1");
  if (!(curriculum.gamma_prime > 0.0)) raise(ErrorCode::kInvalidConfig, "curriculum.gamma_prime must be positive");
  if (!(curriculum.mask_ratio >= 0.0 && curriculum.mask_ratio <= 1.0)) {
    raise(ErrorCode::kInvalidConfig, "curriculum.mask_ratio must lie in [0, 1]");
  }
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  ExperimentConfig cfg = parse_lines(text, source, false);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

SyntheticSpec parse_synthetic_spec(const std::string& text, const std::string& source) {
  ExperimentConfig cfg = parse_lines(text, source, true);
  cfg.synthetic.validate();
  return cfg.synthetic;
}

std::string config_to_text(const ExperimentConfig& cfg) { return render(cfg, true); }

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : render(cfg, false)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_key_reference() {
  std::string out;
  const ExperimentConfig defaults;
  for (const auto& k : keys()) {
    out += std::string(k.name) + "  (default: " + k.get(defaults) + ")  " + k.help + "\n";
  }
  return out;
}

}  // namespace smoothgnn
