#include "uavsec/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace uavsec {

std::string axis_name(SweepAxis axis) {
  switch (axis) {
  case SweepAxis::Gamma0Db:
    return "gamma0_db";
  case SweepAxis::NNodes:
    return "n_nodes";
  case SweepAxis::GammaPDb:
    return "gamma_p_db";
  }
  return "?";
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "gamma0_db")
    return SweepAxis::Gamma0Db;
  if (name == "n_nodes")
    return SweepAxis::NNodes;
  if (name == "gamma_p_db")
    return SweepAxis::GammaPDb;
  throw std::invalid_argument("unknown sweep axis: " + name);
}

void ExperimentConfig::validate() const {
  if (n_nodes < 1)
    throw std::invalid_argument("config: n_nodes must be positive");
  if (n_subchannels < 1)
    throw std::invalid_argument("config: n_subchannels must be positive");
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("config: q must lie in [0, 1]");
  if (realizations < 1)
    throw std::invalid_argument("config: realizations must be positive");
  if (schemes.empty())
    throw std::invalid_argument("config: no schemes");
  if (!std::is_sorted(sweep_values.begin(), sweep_values.end()))
    throw std::invalid_argument("config: sweep_values must be sorted");
  for (const auto& s : schemes)
    (void)scheme_config(s);
  region.validate();
  env.validate();
  bca(schemes.front()).validate();
}

std::vector<double> ExperimentConfig::effective_sweep() const {
  if (!sweep_values.empty())
    return sweep_values;
  switch (axis) {
  case SweepAxis::Gamma0Db:
    return {gamma0_db};
  case SweepAxis::NNodes:
    return {static_cast<double>(n_nodes)};
  case SweepAxis::GammaPDb:
    return {gamma_p_db};
  }
  return {};
}

ExperimentConfig ExperimentConfig::at(double value) const {
  ExperimentConfig c = *this;
  switch (axis) {
  case SweepAxis::Gamma0Db:
    c.gamma0_db = value;
    break;
  case SweepAxis::NNodes:
    c.n_nodes = static_cast<int>(std::lround(value));
    break;
  case SweepAxis::GammaPDb:
    c.gamma_p_db = value;
    break;
  }
  return c;
}

SystemParams ExperimentConfig::system() const {
  return {n_subchannels, db_to_linear(gamma_p_db), env};
}

BcaConfig ExperimentConfig::bca(const std::string& scheme) const {
  BcaConfig b;
  b.n_it = n_it;
  b.association_max_rounds = association_max_rounds;
  b.altitude_max_rounds = altitude_max_rounds;
  b.altitude_update = altitude_update;
  b.kmeans_max_iters = kmeans_max_iters;
  b.power_config = {db_to_linear(gamma0_db), n_iter_pow, n_iter_bis, bisection_tol};
  b.power_each_iteration = power_each_iteration;
  return scheme_config(scheme, b);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (auto t = trim(item); !t.empty())
      out.push_back(t);
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(fmt::format("config: '{}' is not a number for {}", v, key));
  }
  if (used != v.size())
    throw std::invalid_argument(fmt::format("config: '{}' is not a number for {}", v, key));
  return d;
}

int to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d))
    throw std::invalid_argument(fmt::format("config: {} must be an integer", key));
  return static_cast<int>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes")
    return true;
  if (v == "false" || v == "0" || v == "no")
    return false;
  throw std::invalid_argument(fmt::format("config: {} must be true or false", key));
}

} // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(fmt::format("config line {}: expected key = value", lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));

    if (key == "n_nodes") c.n_nodes = to_int(key, v);
    else if (key == "n_subchannels") c.n_subchannels = to_int(key, v);
    else if (key == "n_it") c.n_it = to_int(key, v);
    else if (key == "gamma_p_db") c.gamma_p_db = to_double(key, v);
    else if (key == "gamma0_db") c.gamma0_db = to_double(key, v);
    else if (key == "q") c.q = to_double(key, v);
    else if (key == "psi") c.env.psi = to_double(key, v);
    else if (key == "omega") c.env.omega = to_double(key, v);
    else if (key == "eta_los") c.env.eta_los = to_double(key, v);
    else if (key == "eta_nlos") c.env.eta_nlos = to_double(key, v);
    else if (key == "alpha_j") c.env.alpha_j = to_double(key, v);
    else if (key == "alpha_g") c.env.alpha_g = to_double(key, v);
    else if (key == "x_min") c.region.x_min = to_double(key, v);
    else if (key == "x_max") c.region.x_max = to_double(key, v);
    else if (key == "y_min") c.region.y_min = to_double(key, v);
    else if (key == "y_max") c.region.y_max = to_double(key, v);
    else if (key == "z_min") c.region.z_min = to_double(key, v);
    else if (key == "z_max") c.region.z_max = to_double(key, v);
    else if (key == "n_z") c.region.n_altitude_levels = to_int(key, v);
    else if (key == "association_max_rounds") c.association_max_rounds = to_int(key, v);
    else if (key == "altitude_max_rounds") c.altitude_max_rounds = to_int(key, v);
    else if (key == "altitude_update") {
      if (v == "sequential") c.altitude_update = AltitudeUpdate::Sequential;
      else if (v == "simultaneous") c.altitude_update = AltitudeUpdate::Simultaneous;
      else throw std::invalid_argument("config: altitude_update must be sequential or simultaneous");
    }
    else if (key == "kmeans_max_iters") c.kmeans_max_iters = to_int(key, v);
    else if (key == "n_iter_pow") c.n_iter_pow = to_int(key, v);
    else if (key == "n_iter_bis") c.n_iter_bis = to_int(key, v);
    else if (key == "bisection_tol") c.bisection_tol = to_double(key, v);
    else if (key == "power_each_iteration") c.power_each_iteration = to_bool(key, v);
    else if (key == "sweep_axis") c.axis = parse_axis(v);
    else if (key == "sweep_values") {
      c.sweep_values.clear();
      for (const auto& item : split_list(v))
        c.sweep_values.push_back(to_double(key, item));
    }
    else if (key == "realizations") c.realizations = to_int(key, v);
    else if (key == "schemes") c.schemes = split_list(v);
    else if (key == "seed") c.seed = std::stoull(v);
    else if (key == "record_runtime") c.record_runtime = to_bool(key, v);
    else
      throw std::invalid_argument(fmt::format("config line {}: unknown key '{}'", lineno, key));
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open config " + path.string());
  return parse_config(in);
}

std::uint64_t realization_stream(std::uint64_t seed, double value, int realization) {
  return hash_combine(hash_combine(seed, std::bit_cast<std::uint64_t>(value)),
                      static_cast<std::uint64_t>(realization));
}

Scenario realization_scenario(const ExperimentConfig& config, double value, int realization,
                              std::uint64_t* stream_out) {
  const ExperimentConfig c = config.at(value);
  std::uint64_t stream = realization_stream(config.seed, value, realization);
  for (int attempt = 0; attempt < 1000; ++attempt, ++stream) {
    RandomStream rng(config.seed, stream);
    Scenario s = generate_scenario(c.region, c.n_nodes, c.q, rng);
    if (s.n_legitimate() > 0) {
      if (stream_out)
        *stream_out = stream;
      return s;
    }
  }
  throw EmptyInstanceError("no legitimate node after 1000 resamples (q too small?)");
}

RandomStream realization_rng(const ExperimentConfig& config, std::uint64_t stream) {
  return RandomStream(config.seed, stream).derive(0x5EED);
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, int workers) {
  config.validate();
  const auto values = config.effective_sweep();
  const std::size_t n_schemes = config.schemes.size();
  const std::size_t n_items = values.size() * static_cast<std::size_t>(config.realizations);
  std::vector<ResultRow> rows(n_items * n_schemes);

  auto run_item = [&](std::size_t item) {
    const std::size_t vi = item / static_cast<std::size_t>(config.realizations);
    const int r = static_cast<int>(item % static_cast<std::size_t>(config.realizations));
    const double value = values[vi];
    const ExperimentConfig c = config.at(value);
    std::uint64_t stream = 0;
    const Scenario scenario = realization_scenario(config, value, r, &stream);
    const RandomStream rng = realization_rng(config, stream);
    for (std::size_t s = 0; s < n_schemes; ++s) {
      const auto start = std::chrono::steady_clock::now();
      const auto rec = run_bca(scenario, c.system(), c.bca(config.schemes[s]), rng);
      const auto stop = std::chrono::steady_clock::now();
      ResultRow& row = rows[item * n_schemes + s];
      row.scheme = config.schemes[s];
      row.value = value;
      row.realization = r;
      row.sum_secrecy_rate = rec.sum_secrecy_rate();
      row.positive_secrecy_pct = rec.positive_secrecy_pct();
      row.association_rounds = rec.max_association_rounds();
      row.altitude_rounds = rec.max_altitude_rounds();
      row.runtime_ms = config.record_runtime
                           ? std::chrono::duration<double, std::milli>(stop - start).count()
                           : 0.0;
    }
  };

  workers = std::max(1, workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < n_items; ++i)
      run_item(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n_items;) {
        try {
          run_item(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure)
            failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
  return rows;
}

std::vector<SummaryRow> aggregate(const std::vector<ResultRow>& rows) {
  std::vector<std::string> scheme_order;
  std::map<std::pair<std::size_t, double>, std::vector<const ResultRow*>> groups;
  for (const auto& row : rows) {
    auto it = std::find(scheme_order.begin(), scheme_order.end(), row.scheme);
    if (it == scheme_order.end())
      it = scheme_order.insert(scheme_order.end(), row.scheme);
    groups[{static_cast<std::size_t>(it - scheme_order.begin()), row.value}].push_back(&row);
  }

  auto mean_stderr = [](const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs)
      mean += x;
    mean /= n;
    if (xs.size() < 2)
      return std::pair{mean, 0.0};
    double ss = 0.0;
    for (double x : xs)
      ss += (x - mean) * (x - mean);
    return std::pair{mean, std::sqrt(ss / (n - 1.0) / n)};
  };

  std::vector<SummaryRow> out;
  for (const auto& [key, members] : groups) {
    std::vector<double> rate, pct, ar, alt;
    for (const auto* r : members) {
      rate.push_back(r->sum_secrecy_rate);
      pct.push_back(r->positive_secrecy_pct);
      ar.push_back(r->association_rounds);
      alt.push_back(r->altitude_rounds);
    }
    SummaryRow s;
    s.scheme = scheme_order[key.first];
    s.value = key.second;
    s.realizations = static_cast<int>(members.size());
    std::tie(s.mean_rate, s.stderr_rate) = mean_stderr(rate);
    std::tie(s.mean_pct, s.stderr_pct) = mean_stderr(pct);
    s.mean_association_rounds = mean_stderr(ar).first;
    s.mean_altitude_rounds = mean_stderr(alt).first;
    out.push_back(std::move(s));
  }
  return out;
}

} // namespace uavsec
