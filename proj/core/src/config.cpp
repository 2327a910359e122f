#include "metapeel/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace metapeel {

EvaluationSetup RunConfig::evaluation_setup() const {
  EvaluationSetup setup;
  setup.cell = cell;
  setup.endpoints = endpoints;
  setup.material = material;
  setup.protocol = protocol;
  setup.aspect_ratio_limit = aspect_ratio_limit;
  return setup;
}

OptimizationConfig RunConfig::optimization_config() const {
  OptimizationConfig cfg;
  cfg.n_points = n_points;
  cfg.population = population;
  cfg.generations = generations;
  cfg.variation = variation;
  cfg.seed = seed;
  cfg.jobs = jobs;
  cfg.setup = evaluation_setup();
  return cfg;
}

void RunConfig::validate() const {
  material.validate();
  if (!(cell.width > 0.0 && cell.height > 0.0)) throw ConfigError("geometry: cell must be positive");
  for (const Vec2& e : endpoints)
    if (!cell.contains(e)) throw ConfigError("geometry: endpoint outside the cell");
  if (!(aspect_ratio_limit > 1.0)) throw ConfigError("geometry: aspect ratio limit must be > 1");
  if (!(protocol.increment > 0.0)) throw ConfigError("peel: increment must be > 0");
  if (protocol.max_steps < 1) throw ConfigError("peel: max steps must be >= 1");
  if (!(protocol.resolution >= 1.0)) throw ConfigError("mesh: resolution must be >= 1 element/mm");
  if (!(refine_resolution >= 1.0)) throw ConfigError("mesh: refine resolution must be >= 1");
  if (n_points != 3 && n_points != 5 && n_points != 7)
    throw ConfigError("optimizer: n-points must be 3, 5 or 7");
  if (population < 2) throw ConfigError("optimizer: population must be >= 2");
  if (generations < 1) throw ConfigError("optimizer: generations must be >= 1");
  if (jobs < 1) throw ConfigError("optimizer: jobs must be >= 1");
}

namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& section_key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw ConfigError("config: trailing characters in " + section_key);
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError("config: invalid number for " + section_key + ": '" + v + "'");
  }
}

bool parse_bool(const std::string& section_key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("config: invalid boolean for " + section_key + ": '" + v + "'");
}

std::string objective_name(EnergyObjective o) {
  switch (o) {
    case EnergyObjective::mean_elastic: return "mean-elastic";
    case EnergyObjective::peak_elastic: return "peak-elastic";
    case EnergyObjective::external_work: return "external-work";
  }
  return "mean-elastic";
}

EnergyObjective parse_objective(const std::string& v) {
  if (v == "mean-elastic") return EnergyObjective::mean_elastic;
  if (v == "peak-elastic") return EnergyObjective::peak_elastic;
  if (v == "external-work") return EnergyObjective::external_work;
  throw ConfigError("config: unknown peel objective '" + v + "'");
}

std::string strip_quotes(const std::string& v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  return v;
}

void apply_kv(RunConfig& c, const std::string& section, const std::string& key,
              const std::string& raw) {
  const std::string sk = section + "." + key;
  const std::string v = strip_quotes(raw);
  auto num = [&]() { return parse_number(sk, v); };

  if (section == "geometry") {
    if (key == "cell-width") c.cell.width = num();
    else if (key == "cell-height") c.cell.height = num();
    else if (key == "endpoint-a-x") c.endpoints[0].x = num();
    else if (key == "endpoint-a-y") c.endpoints[0].y = num();
    else if (key == "endpoint-b-x") c.endpoints[1].x = num();
    else if (key == "endpoint-b-y") c.endpoints[1].y = num();
    else if (key == "aspect-ratio-limit") c.aspect_ratio_limit = num();
    else throw ConfigError("config: unknown key " + sk);
  } else if (section == "material") {
    if (key == "tensile-strength") c.material.tensile_strength = num();
    else if (key == "shear-strength") c.material.shear_strength = num();
    else if (key == "release-rate") c.material.release_rate = num();
    else if (key == "mixity-exponent") c.material.mixity_exponent = num();
    else if (key == "sheet-thickness") c.material.sheet_thickness = num();
    else if (key == "youngs-modulus") c.material.youngs_modulus = num();
    else if (key == "poissons-ratio") c.material.poissons_ratio = num();
    else if (key == "stiffness-factor") c.material.stiffness_factor = num();
    else if (key == "contact-factor") c.material.contact_factor = num();
    else throw ConfigError("config: unknown key " + sk);
  } else if (section == "mesh") {
    if (key == "resolution") c.protocol.resolution = num();
    else if (key == "refine-resolution") c.refine_resolution = num();
    else throw ConfigError("config: unknown key " + sk);
  } else if (section == "peel") {
    if (key == "increment") c.protocol.increment = num();
    else if (key == "max-steps") c.protocol.max_steps = static_cast<int>(num());
    else if (key == "objective") c.protocol.objective = parse_objective(v);
    else if (key == "forward-edge") {
      if (v == "hinge") c.protocol.forward_lifts_hinge_edge = true;
      else if (v == "far") c.protocol.forward_lifts_hinge_edge = false;
      else throw ConfigError("config: forward-edge must be 'hinge' or 'far'");
    } else throw ConfigError("config: unknown key " + sk);
  } else if (section == "optimizer") {
    if (key == "n-points") c.n_points = static_cast<int>(num());
    else if (key == "population") c.population = static_cast<int>(num());
    else if (key == "generations") c.generations = static_cast<int>(num());
    else if (key == "sbx-eta") c.variation.sbx_eta = num();
    else if (key == "sbx-prob") c.variation.sbx_prob = num();
    else if (key == "mutation-eta") c.variation.mutation_eta = num();
    else if (key == "mutation-prob") c.variation.mutation_prob = num();
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(num());
    else if (key == "jobs") c.jobs = static_cast<int>(num());
    else if (key == "refine-front") c.refine_front = parse_bool(sk, v);
    else throw ConfigError("config: unknown key " + sk);
  } else if (section == "references") {
    if (key == "square-height") c.reference_dims.square_height = num();
    else if (key == "triangle-apex-height") c.reference_dims.triangle_apex_height = num();
    else if (key == "hybrid-base-height") c.reference_dims.hybrid_base_height = num();
    else if (key == "hybrid-roof-height") c.reference_dims.hybrid_roof_height = num();
    else if (key == "with-uncut-control") c.with_uncut_control = parse_bool(sk, v);
    else throw ConfigError("config: unknown key " + sk);
  } else {
    throw ConfigError("config: unknown section [" + section + "]");
  }
}

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

} // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: malformed section header at line " + std::to_string(line_no));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value at line " + std::to_string(line_no));
    apply_kv(config, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[geometry]\n";
  out << "cell-width = " << fmt_num(c.cell.width) << "\n";
  out << "cell-height = " << fmt_num(c.cell.height) << "\n";
  out << "endpoint-a-x = " << fmt_num(c.endpoints[0].x) << "\n";
  out << "endpoint-a-y = " << fmt_num(c.endpoints[0].y) << "\n";
  out << "endpoint-b-x = " << fmt_num(c.endpoints[1].x) << "\n";
  out << "endpoint-b-y = " << fmt_num(c.endpoints[1].y) << "\n";
  out << "aspect-ratio-limit = " << fmt_num(c.aspect_ratio_limit) << "\n";
  out << "\n[material]\n";
  out << "tensile-strength = " << fmt_num(c.material.tensile_strength) << "\n";
  out << "shear-strength = " << fmt_num(c.material.shear_strength) << "\n";
  out << "release-rate = " << fmt_num(c.material.release_rate) << "\n";
  out << "mixity-exponent = " << fmt_num(c.material.mixity_exponent) << "\n";
  out << "sheet-thickness = " << fmt_num(c.material.sheet_thickness) << "\n";
  out << "youngs-modulus = " << fmt_num(c.material.youngs_modulus) << "\n";
  out << "poissons-ratio = " << fmt_num(c.material.poissons_ratio) << "\n";
  out << "stiffness-factor = " << fmt_num(c.material.stiffness_factor) << "\n";
  out << "contact-factor = " << fmt_num(c.material.contact_factor) << "\n";
  out << "\n[mesh]\n";
  out << "resolution = " << fmt_num(c.protocol.resolution) << "\n";
  out << "refine-resolution = " << fmt_num(c.refine_resolution) << "\n";
  out << "\n[peel]\n";
  out << "increment = " << fmt_num(c.protocol.increment) << "\n";
  out << "max-steps = " << c.protocol.max_steps << "\n";
  out << "objective = \"" << objective_name(c.protocol.objective) << "\"\n";
  out << "forward-edge = \"" << (c.protocol.forward_lifts_hinge_edge ? "hinge" : "far") << "\"\n";
  out << "\n[optimizer]\n";
  out << "n-points = " << c.n_points << "\n";
  out << "population = " << c.population << "\n";
  out << "generations = " << c.generations << "\n";
  out << "sbx-eta = " << fmt_num(c.variation.sbx_eta) << "\n";
  out << "sbx-prob = " << fmt_num(c.variation.sbx_prob) << "\n";
  out << "mutation-eta = " << fmt_num(c.variation.mutation_eta) << "\n";
  out << "mutation-prob = " << fmt_num(c.variation.mutation_prob) << "\n";
  out << "seed = " << c.seed << "\n";
  out << "jobs = " << c.jobs << "\n";
  out << "refine-front = " << (c.refine_front ? "true" : "false") << "\n";
  out << "\n[references]\n";
  out << "square-height = " << fmt_num(c.reference_dims.square_height) << "\n";
  out << "triangle-apex-height = " << fmt_num(c.reference_dims.triangle_apex_height) << "\n";
  out << "hybrid-base-height = " << fmt_num(c.reference_dims.hybrid_base_height) << "\n";
  out << "hybrid-roof-height = " << fmt_num(c.reference_dims.hybrid_roof_height) << "\n";
  out << "with-uncut-control = " << (c.with_uncut_control ? "true" : "false") << "\n";
  return out.str();
}

void apply_override(RunConfig& config, const std::string& dotted_key, const std::string& value) {
  const std::size_t dot = dotted_key.find('.');
  if (dot == std::string::npos)
    throw ConfigError("config: override key must be section.key, got '" + dotted_key + "'");
  apply_kv(config, dotted_key.substr(0, dot), dotted_key.substr(dot + 1), value);
}

} // namespace metapeel
