#include "dfrc/config_io.hpp"

#include <fstream>

#include <json.hpp>

namespace dfrc {

namespace {

using nlohmann::json;

ReliabilityMask mask_from_json(const json& j) {
  std::string kind = j.value("kind", "per_entry");
  const json& values = j.at("values");
  if (kind == "per_antenna") {
    RVector v(values.size());
    for (size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i].get<double>();
    return ReliabilityMask::per_antenna(v);
  }
  if (kind != "per_entry")
    throw std::invalid_argument("mask kind must be per_entry or per_antenna");
  const size_t rows = values.size();
  if (rows == 0) throw std::invalid_argument("mask values are empty");
  const size_t cols = values[0].size();
  RMatrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (values[i].size() != cols)
      throw std::invalid_argument("mask rows have unequal lengths");
    for (size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          values[i][c].get<double>();
  }
  return ReliabilityMask::per_entry(m);
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

LoadedConfig default_config() {
  LoadedConfig lc;
  SystemConfig& c = lc.scenario.config;
  c.n_tx = 10;
  c.n_rx = 10;
  c.n_users = 4;
  c.n_targets = 4;
  c.frame_len = 32;
  c.wavelength = 2.99792458e8 / 28e9;
  c.spacing = c.wavelength / 2.0;
  c.sigma2_c = 0.1;
  c.sigma2_r = 0.1;
  c.power_budget = 1.0;
  c.total_bandwidth = 28e9;
  c.bw_fraction_radar = 0.0148;
  c.bw_fractions_users = {0.2032, 0.2744, 0.2719, 0.2357};
  c.rate_min = {0.0176, 0.0130, 0.0131, 0.0152};
  c.rate_max.resize(4);
  for (int j = 0; j < 4; ++j)
    c.rate_max[static_cast<size_t>(j)] = 20e9 / c.user_bandwidth(j);
  c.sparsity_weight = 0.0;

  // fractions must sum to exactly 1 with rho_r; absorb rounding into rho_r
  double s = 0.0;
  for (double f : c.bw_fractions_users) s += f;
  c.bw_fraction_radar = 1.0 - s;

  lc.scenario.seed = 1;
  Rng mask_rng(2024);
  lc.scenario.mask = generate_mask(mask_rng, MaskKind::PerEntry, c.n_tx,
                                   c.n_users, 0.0, 0.52);
  return lc;
}

LoadedConfig default_selection_config() {
  LoadedConfig lc = default_config();
  RVector beta(10);
  beta << 0.95, 0.9, 0.2, 0.85, 0.1, 0.9, 0.3, 0.95, 0.05, 0.9;
  lc.scenario.mask = ReliabilityMask::per_antenna(beta);
  lc.scenario.gpgda_power = GpgdaPowerParams{0.4, 5.0, 100.0};
  lc.experiment.rho_s_values = {0.0,    0.0008, 0.0015, 0.0023,
                                0.0031, 0.0038, 0.0061, 0.0767};
  return lc;
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j = json::parse(in);

  LoadedConfig lc =
      j.value("kind", "pgda") == std::string("gpgda") ? default_selection_config()
                                                      : default_config();
  SystemConfig& c = lc.scenario.config;
  maybe(j, "n_tx", c.n_tx);
  maybe(j, "n_rx", c.n_rx);
  maybe(j, "n_users", c.n_users);
  maybe(j, "n_targets", c.n_targets);
  maybe(j, "frame_len", c.frame_len);
  maybe(j, "wavelength", c.wavelength);
  if (j.contains("wavelength") && !j.contains("spacing"))
    c.spacing = c.wavelength / 2.0;
  maybe(j, "spacing", c.spacing);
  maybe(j, "sigma2_c", c.sigma2_c);
  maybe(j, "sigma2_r", c.sigma2_r);
  maybe(j, "power_budget", c.power_budget);
  maybe(j, "total_bandwidth", c.total_bandwidth);
  maybe(j, "bw_fraction_radar", c.bw_fraction_radar);
  maybe(j, "bw_fractions_users", c.bw_fractions_users);
  maybe(j, "rate_min", c.rate_min);
  maybe(j, "rate_max", c.rate_max);
  maybe(j, "sparsity_weight", c.sparsity_weight);
  // Gbps bounds convert to spectral efficiency at load time
  if (j.contains("rate_min_gbps")) {
    auto v = j.at("rate_min_gbps").get<std::vector<double>>();
    c.rate_min.resize(v.size());
    for (size_t i = 0; i < v.size(); ++i)
      c.rate_min[i] = v[i] * 1e9 / c.user_bandwidth(static_cast<int>(i));
  }
  if (j.contains("rate_max_gbps")) {
    auto v = j.at("rate_max_gbps").get<std::vector<double>>();
    c.rate_max.resize(v.size());
    for (size_t i = 0; i < v.size(); ++i)
      c.rate_max[i] = v[i] * 1e9 / c.user_bandwidth(static_cast<int>(i));
  }

  std::uint64_t seed = lc.scenario.seed;
  maybe(j, "seed", seed);
  lc.scenario.seed = seed;

  if (j.contains("reliability_mask")) {
    const json& m = j.at("reliability_mask");
    if (m.is_string()) {
      std::ifstream mf(m.get<std::string>());
      if (!mf)
        throw std::runtime_error("cannot open mask file: " + m.get<std::string>());
      lc.scenario.mask = mask_from_json(json::parse(mf));
    } else if (m.contains("random")) {
      const json& r = m.at("random");
      Rng rng(r.value("seed", std::uint64_t{2024}));
      MaskKind kind = m.value("kind", "per_entry") == std::string("per_antenna")
                          ? MaskKind::PerAntenna
                          : MaskKind::PerEntry;
      lc.scenario.mask = generate_mask(
          rng, kind, c.n_tx, c.n_users, r.value("clamp_fraction", 0.0),
          r.value("target_mean", std::numeric_limits<double>::quiet_NaN()));
    } else {
      lc.scenario.mask = mask_from_json(m);
    }
  } else if (j.contains("n_tx") || j.contains("n_users")) {
    // dimensions changed without an explicit mask: regenerate to fit
    Rng rng(2024);
    lc.scenario.mask = generate_mask(
        rng,
        lc.scenario.mask.kind(), c.n_tx, c.n_users, 0.0,
        lc.scenario.mask.kind() == MaskKind::PerEntry ? 0.52
            : std::numeric_limits<double>::quiet_NaN());
  }

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    SolverOptions& o = lc.scenario.options;
    maybe(s, "dual_step", o.dual_step);
    maybe(s, "primal_step", o.primal_step);
    maybe(s, "backtrack_factor", o.backtrack_factor);
    maybe(s, "tol", o.tol);
    maybe(s, "max_iter", o.max_iter);
    maybe(s, "max_backtracks", o.max_backtracks);
    maybe(s, "eta_min", o.eta_min);
    maybe(s, "lambda1_init", o.lambda1_init);
    maybe(s, "lambda2_init", o.lambda2_init);
    maybe(s, "mu_init", o.mu_init);
  }

  if (j.contains("gpgda_power")) {
    const json& p = j.at("gpgda_power");
    maybe(p, "eta_pa", lc.scenario.gpgda_power.eta_pa);
    maybe(p, "p_antenna", lc.scenario.gpgda_power.p_antenna);
    maybe(p, "p_total", lc.scenario.gpgda_power.p_total);
  }

  if (j.contains("power_model")) {
    const json& p = j.at("power_model");
    maybe(p, "eta_pa", lc.power_model.eta_pa);
    maybe(p, "dac_resolution", lc.power_model.dac_resolution);
    maybe(p, "sampling_rate", lc.power_model.sampling_rate);
    maybe(p, "c1", lc.power_model.c1);
    maybe(p, "c2", lc.power_model.c2);
    maybe(p, "p_mixer", lc.power_model.p_mixer);
    maybe(p, "p_lpf", lc.power_model.p_lpf);
    maybe(p, "p_hybrid_buffer", lc.power_model.p_hybrid_buffer);
  }

  if (j.contains("experiment")) {
    const json& e = j.at("experiment");
    maybe(e, "rho_s_values", lc.experiment.rho_s_values);
    maybe(e, "n_runs", lc.experiment.n_runs);
    maybe(e, "n_stages", lc.experiment.n_stages);
    maybe(e, "increment", lc.experiment.increment);
  }

  lc.scenario.config.validate();
  return lc;
}

}  // namespace dfrc
