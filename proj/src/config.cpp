#include "banditlab/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace banditlab {

namespace {

using nlohmann::json;

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw ConfigError(where.empty() ? it.key() : where + "." + it.key(),
                        "unknown key");
    }
  }
}

EnvironmentConfig parse_environment(const json& j) {
  if (!j.is_object()) throw ConfigError("environment", "must be an object");
  require_keys(j, "environment",
               {"type", "means", "mean_table", "context_weights"});
  EnvironmentConfig env;
  if (!j.contains("type") || !j["type"].is_string()) {
    throw ConfigError("environment.type", "required string");
  }
  env.type = j["type"].get<std::string>();
  if (env.type == "bernoulli") {
    if (!j.contains("means") || !j["means"].is_array() || j["means"].size() < 2) {
      throw ConfigError("environment.means", "need an array of >= 2 means");
    }
    for (const auto& v : j["means"]) {
      if (!v.is_number()) throw ConfigError("environment.means", "non-numeric mean");
      double m = v.get<double>();
      if (!(m > 0.0) || !(m < 1.0)) {
        throw ConfigError("environment.means", "means must be in (0,1)");
      }
      env.means.push_back(m);
    }
  } else if (env.type == "contextual") {
    if (!j.contains("mean_table") || !j["mean_table"].is_array() ||
        j["mean_table"].empty()) {
      throw ConfigError("environment.mean_table", "need an array of rows");
    }
    env.num_contexts = static_cast<int>(j["mean_table"].size());
    for (const auto& row : j["mean_table"]) {
      if (!row.is_array() || row.empty()) {
        throw ConfigError("environment.mean_table", "rows must be non-empty arrays");
      }
      if (env.num_arms == 0) env.num_arms = static_cast<int>(row.size());
      if (static_cast<int>(row.size()) != env.num_arms) {
        throw ConfigError("environment.mean_table", "ragged rows");
      }
      for (const auto& v : row) {
        if (!v.is_number()) {
          throw ConfigError("environment.mean_table", "non-numeric mean");
        }
        double m = v.get<double>();
        if (!(m >= 0.0) || !(m <= 1.0)) {
          throw ConfigError("environment.mean_table", "means must be in [0,1]");
        }
        env.mean_table.push_back(m);
      }
    }
    if (j.contains("context_weights")) {
      if (!j["context_weights"].is_array() ||
          static_cast<int>(j["context_weights"].size()) != env.num_contexts) {
        throw ConfigError("environment.context_weights",
                          "must match the number of contexts");
      }
      for (const auto& v : j["context_weights"]) {
        if (!v.is_number() || !(v.get<double>() >= 0.0)) {
          throw ConfigError("environment.context_weights",
                            "weights must be numbers >= 0");
        }
        env.context_weights.push_back(v.get<double>());
      }
    }
  } else {
    throw ConfigError("environment.type",
                      "unknown environment type '" + env.type + "'");
  }
  if (env.type == "bernoulli" && j.contains("mean_table")) {
    throw ConfigError("environment.mean_table",
                      "not valid for a bernoulli environment");
  }
  return env;
}

}  // namespace

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("(file)", "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("(file)", std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("(file)", "top level must be an object");

  require_keys(j, "",
               {"algorithms", "environment", "horizon", "seeds", "ids", "gts",
                "oracle", "prior", "output_dir"});

  ExperimentConfig cfg;
  cfg.config_hash = fnv1a_hex(j.dump());

  if (!j.contains("algorithms") || !j["algorithms"].is_array() ||
      j["algorithms"].empty()) {
    throw ConfigError("algorithms", "need a non-empty array");
  }
  for (std::size_t i = 0; i < j["algorithms"].size(); ++i) {
    const auto& v = j["algorithms"][i];
    std::string name = v.is_string() ? v.get<std::string>() : std::string();
    if (name != "ids" && name != "ts" && name != "gts") {
      throw ConfigError("algorithms[" + std::to_string(i) + "]",
                        "unknown algorithm '" + (v.is_string() ? name : v.dump()) +
                            "' (expected ids, ts, or gts)");
    }
    cfg.algorithms.push_back(name);
  }

  if (!j.contains("environment")) {
    throw ConfigError("environment", "required section");
  }
  cfg.environment = parse_environment(j["environment"]);

  if (!j.contains("horizon") || !j["horizon"].is_number_integer() ||
      j["horizon"].get<std::int64_t>() < 1) {
    throw ConfigError("horizon", "required integer >= 1");
  }
  cfg.horizon = j["horizon"].get<int>();

  if (!j.contains("seeds") || !j["seeds"].is_array() || j["seeds"].empty()) {
    throw ConfigError("seeds", "need a non-empty array of integers");
  }
  for (const auto& v : j["seeds"]) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      throw ConfigError("seeds", "seeds must be non-negative integers");
    }
    cfg.seeds.push_back(v.get<std::uint64_t>());
  }

  if (j.contains("ids")) {
    require_keys(j["ids"], "ids", {"grid_points"});
    if (j["ids"].contains("grid_points")) {
      if (!j["ids"]["grid_points"].is_number_integer() ||
          j["ids"]["grid_points"].get<int>() < 3) {
        throw ConfigError("ids.grid_points", "must be an integer >= 3");
      }
      cfg.ids_grid_points = j["ids"]["grid_points"].get<int>();
    }
  }

  if (j.contains("prior")) {
    require_keys(j["prior"], "prior", {"b1", "b2"});
    for (const char* key : {"b1", "b2"}) {
      if (j["prior"].contains(key)) {
        if (!j["prior"][key].is_number() || !(j["prior"][key].get<double>() > 0.0)) {
          throw ConfigError(std::string("prior.") + key, "must be > 0");
        }
      }
    }
    if (j["prior"].contains("b1")) cfg.prior_b1 = j["prior"]["b1"].get<double>();
    if (j["prior"].contains("b2")) cfg.prior_b2 = j["prior"]["b2"].get<double>();
  }

  bool wants_gts = false;
  for (const std::string& a : cfg.algorithms) wants_gts |= (a == "gts");
  bool wants_bandit = false;
  for (const std::string& a : cfg.algorithms) {
    wants_bandit |= (a == "ids" || a == "ts");
  }
  if (wants_bandit && cfg.environment.type != "bernoulli") {
    throw ConfigError("environment.type",
                      "ids/ts require a bernoulli environment");
  }
  if (wants_gts && cfg.environment.type != "contextual") {
    throw ConfigError("environment.type", "gts requires a contextual environment");
  }

  if (j.contains("gts")) {
    require_keys(j["gts"], "gts", {"eta", "gamma", "loss", "experts_file"});
    const auto& g = j["gts"];
    if (g.contains("eta")) {
      if (!g["eta"].is_number() || !(g["eta"].get<double>() > 0.0)) {
        throw ConfigError("gts.eta", "must be > 0");
      }
      cfg.gts.eta = g["eta"].get<double>();
    }
    if (g.contains("gamma")) {
      if (!g["gamma"].is_number()) throw ConfigError("gts.gamma", "must be a number");
      double gamma = g["gamma"].get<double>();
      if (!(gamma >= 0.0) || !(gamma <= 1.0)) {
        throw ConfigError("gts.gamma", "must be in [0,1]");
      }
      cfg.gts.gamma = gamma;
    }
    if (g.contains("loss")) {
      std::string l = g["loss"].is_string() ? g["loss"].get<std::string>()
                                            : std::string();
      if (l != "logarithmic" && l != "square") {
        throw ConfigError("gts.loss", "expected 'logarithmic' or 'square'");
      }
      cfg.gts.loss = l;
    }
    if (g.contains("experts_file")) {
      if (!g["experts_file"].is_string()) {
        throw ConfigError("gts.experts_file", "must be a path string");
      }
      std::filesystem::path p = g["experts_file"].get<std::string>();
      if (p.is_relative()) p = path.parent_path() / p;
      cfg.gts.experts_file = p;
    }
  }
  if (wants_gts && cfg.gts.experts_file.empty()) {
    throw ConfigError("gts.experts_file", "required when running gts");
  }

  if (j.contains("oracle")) {
    require_keys(j["oracle"], "oracle",
                 {"num_states", "samples", "tolerance", "gain_states",
                  "gain_samples", "gain_tolerance", "seed"});
    const auto& o = j["oracle"];
    auto get_pos_int = [&](const char* key, auto& field) {
      if (!o.contains(key)) return;
      if (!o[key].is_number_integer() || o[key].get<std::int64_t>() < 1) {
        throw ConfigError(std::string("oracle.") + key, "must be an integer >= 1");
      }
      field = o[key].get<std::decay_t<decltype(field)>>();
    };
    get_pos_int("num_states", cfg.oracle.num_states);
    get_pos_int("samples", cfg.oracle.samples);
    get_pos_int("gain_states", cfg.oracle.gain_states);
    get_pos_int("gain_samples", cfg.oracle.gain_samples);
    auto get_pos_real = [&](const char* key, double& field) {
      if (!o.contains(key)) return;
      if (!o[key].is_number() || !(o[key].get<double>() > 0.0)) {
        throw ConfigError(std::string("oracle.") + key, "must be > 0");
      }
      field = o[key].get<double>();
    };
    get_pos_real("tolerance", cfg.oracle.tolerance);
    get_pos_real("gain_tolerance", cfg.oracle.gain_tolerance);
    if (o.contains("seed")) {
      if (!o["seed"].is_number_integer() || o["seed"].get<std::int64_t>() < 0) {
        throw ConfigError("oracle.seed", "must be a non-negative integer");
      }
      cfg.oracle.seed = o["seed"].get<std::uint64_t>();
    }
  }

  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) {
      throw ConfigError("output_dir", "must be a path string");
    }
    cfg.output_dir = j["output_dir"].get<std::string>();
  }

  return cfg;
}

}  // namespace banditlab
