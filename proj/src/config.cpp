#include "orpar/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "orpar/families.hpp"

namespace orpar {

using nlohmann::json;

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

void require_positive(int v, const char* what) {
  if (v < 1) throw ConfigError(std::string(what) + " must be >= 1");
}

}  // namespace

void RunConfig::apply_seed(std::uint64_t s) {
  seed = s;
  verify.incidence.seed = s;
  verify.continuity.seed = s;
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig cfg;
  if (!doc.contains("seed")) throw ConfigError("config needs a 'seed'");
  std::uint64_t seed = 0;
  read(doc, "seed", seed);

  if (doc.contains("ruler")) {
    const json& r = doc.at("ruler");
    if (r.is_string()) {
      if (r.get<std::string>() != "standard") throw ConfigError("unknown ruler '" + r.get<std::string>() + "'");
    } else if (r.is_object() && r.contains("basis")) {
      std::vector<std::vector<double>> cols;
      read(r, "basis", cols);
      if (cols.size() != 4) throw ConfigError("ruler basis needs 4 vectors of length 6");
      cfg.ruler.standard = false;
      cfg.ruler.basis = Mat(6, 4);
      for (int c = 0; c < 4; ++c) {
        if (cols[static_cast<std::size_t>(c)].size() != 6) throw ConfigError("ruler basis vectors need 6 entries");
        for (int i = 0; i < 6; ++i) cfg.ruler.basis(i, c) = cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
      }
    } else {
      throw ConfigError("ruler must be \"standard\" or {\"basis\": [...]}");
    }
  }

  if (doc.contains("star")) {
    const json& s = doc.at("star");
    if (!s.is_object()) throw ConfigError("star must be an object");
    read(s, "type", cfg.star.type);
    read(s, "beta", cfg.star.beta);
    read(s, "beta1", cfg.star.beta1);
    read(s, "beta2", cfg.star.beta2);
    read(s, "alpha", cfg.star.alpha);
    read(s, "g", cfg.star.g_table);
    read(s, "n_lat", cfg.star.n_lat);
    read(s, "n_lon", cfg.star.n_lon);
    if (s.contains("values")) {
      std::vector<std::array<double, 3>> vals;
      read(s, "values", vals);
      for (const auto& v : vals) cfg.star.values.emplace_back(v[0], v[1], v[2]);
    }
    static const std::vector<std::string> kTypes = {"clifford",    "rotational",  "glued",       "cones_case1",
                                                    "cones_case2", "custom",      "pinched_band"};
    if (std::find(kTypes.begin(), kTypes.end(), cfg.star.type) == kTypes.end()) {
      throw ConfigError("unknown star type '" + cfg.star.type + "'");
    }
  }

  if (doc.contains("verify")) {
    const json& v = doc.at("verify");
    read(v, "exterior", cfg.verify.incidence.n_exterior);
    read(v, "quadric", cfg.verify.incidence.n_quadric);
    read(v, "ideal", cfg.verify.incidence.n_ideal);
    read(v, "entry_leave", cfg.verify.entry_leave);
    read(v, "continuity_pairs", cfg.verify.continuity.n_pairs);
    read(v, "delta_ladder", cfg.verify.continuity.ladder);
    read(v, "continuity_threshold", cfg.verify.continuity.threshold);
    read(v, "fold_samples", cfg.verify.fold_samples);
    read(v, "symmetry_samples", cfg.verify.symmetry_samples);
    read(v, "partition_samples", cfg.verify.partition_samples);
    read(v, "hfd_samples", cfg.verify.hfd_samples);
    read(v, "tol", cfg.verify.tol);
    if (v.contains("seams")) {
      std::vector<double> seams;
      read(v, "seams", seams);
      cfg.verify.seams = seams;
    }
  }
  if (doc.contains("export")) {
    const json& e = doc.at("export");
    read(e, "n", cfg.export_spec.n);
    read(e, "format", cfg.export_spec.format);
    read(e, "spreads", cfg.export_spec.spreads);
    read(e, "spread_lines", cfg.export_spec.spread_lines);
    if (cfg.export_spec.format != "csv" && cfg.export_spec.format != "json" &&
        cfg.export_spec.format != "both") {
      throw ConfigError("export format must be csv, json or both");
    }
  }

  const VerifySpec& v = cfg.verify;
  require_positive(v.incidence.n_exterior, "verify.exterior");
  require_positive(v.incidence.n_quadric, "verify.quadric");
  require_positive(v.incidence.n_ideal, "verify.ideal");
  require_positive(v.entry_leave, "verify.entry_leave");
  require_positive(v.continuity.n_pairs, "verify.continuity_pairs");
  require_positive(v.fold_samples, "verify.fold_samples");
  require_positive(v.symmetry_samples, "verify.symmetry_samples");
  require_positive(v.partition_samples, "verify.partition_samples");
  require_positive(v.hfd_samples, "verify.hfd_samples");
  require_positive(cfg.export_spec.n, "export.n");
  require_positive(cfg.export_spec.spreads, "export.spreads");
  require_positive(cfg.export_spec.spread_lines, "export.spread_lines");
  if (v.continuity.ladder.empty()) throw ConfigError("verify.delta_ladder must not be empty");
  for (double d : v.continuity.ladder) {
    if (!(d > 0.0)) throw ConfigError("delta ladder entries must be positive");
  }
  if (!(v.tol > 0.0) || !(v.continuity.threshold > 0.0)) throw ConfigError("tolerances must be positive");

  cfg.apply_seed(seed);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

Ruler make_ruler(const RunConfig& config) {
  if (config.ruler.standard) return Ruler::standard();
  try {
    return Ruler::from_basis(config.ruler.basis);
  } catch (const GeometryError& e) {
    throw ConfigError(std::string("ruler rejected: ") + e.what());
  }
}

GlCandidate make_star(const RunConfig& config) {
  const Ruler ruler = make_ruler(config);
  const StarSpec& s = config.star;
  IncidenceOptions options;
  options.tol = config.verify.tol;
  try {
    auto char_map = [&](std::string name, CharacteristicMap rho, std::vector<double> seams) {
      return GlCandidate::char_map_form(std::move(name), ruler, std::move(rho),
                                        config.verify.seams.value_or(std::move(seams)), options);
    };
    auto profile = [&] { return s.g_table.empty() ? ApexProfile::standard() : ApexProfile(s.g_table); };
    if (s.type == "clifford") return char_map("clifford", antipodal_map(), {});
    if (s.type == "rotational") return char_map("rotational", rotational_involution_map(s.beta), {});
    if (s.type == "glued") return char_map("glued", glued_map(s.beta1, s.beta2), {0.0});
    if (s.type == "pinched_band") return char_map("pinched_band", pinched_band_map(s.alpha), {0.0});
    if (s.type == "custom") return char_map("custom", grid_map(s.n_lat, s.n_lon, s.values), {});
    const bool case1 = s.type == "cones_case1";
    GlCandidate c = case1 ? combine_case1(ruler, profile()) : combine_case2(ruler, profile());
    if (config.verify.seams) {
      return GlCandidate::family_union(c.name(), ruler,
                                       {cone_family_G1(profile(), Tilt::Up),
                                        origin_star_G2(case1 ? Tilt::Down : Tilt::Up)},
                                       *config.verify.seams);
    }
    return c;
  } catch (const GeometryError& e) {
    throw ConfigError(std::string("star rejected: ") + e.what());
  }
}

}  // namespace orpar
