#include "hullmin/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hullmin/error.hpp"

namespace hullmin::io {

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::parse_error, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("field '") + key + "': " + e.what());
  }
}

json law_json(double a, double b, double c) { return {{"a", a}, {"b", b}, {"c", c}}; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

json to_json(const ConvexBody& body) {
  json j;
  j["dim"] = body.dim();
  if (body.has_vrep()) j["vertices"] = body.points();
  if (body.has_hrep()) {
    json hs = json::array();
    for (const auto& h : body.halfspaces()) {
      hs.push_back({{"normal", std::vector<double>(h.normal.coords().begin(), h.normal.coords().end())}, {"offset", h.offset}});
    }
    j["halfspaces"] = std::move(hs);
  }
  return j;
}

ConvexBody body_from_json(const json& j) {
  const auto dim = field<std::size_t>(j, "dim");
  std::vector<Point> pts;
  std::vector<HalfSpace> hs;
  if (j.contains("vertices")) pts = field<std::vector<Point>>(j, "vertices");
  if (j.contains("halfspaces")) {
    for (const auto& h : j.at("halfspaces")) hs.push_back({Direction(field<std::vector<double>>(h, "normal")), field<double>(h, "offset")});
  }
  for (const auto& p : pts) {
    if (p.size() != dim) throw Error(ErrorCode::parse_error, "vertex dimension differs from 'dim'");
  }
  if (pts.empty() && hs.empty()) throw Error(ErrorCode::parse_error, "body has neither vertices nor halfspaces");
  if (hs.empty()) return ConvexBody::from_points(std::move(pts));
  if (pts.empty()) return ConvexBody::from_halfspaces(dim, std::move(hs));
  return ConvexBody::from_both(std::move(pts), std::move(hs));
}

json to_json(const Quadrature& q) {
  json dirs = json::array();
  for (const auto& u : q.directions) dirs.push_back(std::vector<double>(u.coords().begin(), u.coords().end()));
  return {{"dim", q.dim},
          {"scheme", to_string(q.scheme)},
          {"directions", std::move(dirs)},
          {"weights", q.weights},
          {"eps_bound", q.eps_bound},
          {"dispersion_bound", q.dispersion_bound}};
}

Quadrature quadrature_from_json(const json& j) {
  Quadrature q;
  q.dim = field<std::size_t>(j, "dim");
  q.scheme = scheme_from_string(field<std::string>(j, "scheme"));
  for (auto& c : field<std::vector<std::vector<double>>>(j, "directions")) q.directions.emplace_back(std::move(c));
  q.weights = field<std::vector<double>>(j, "weights");
  q.eps_bound = field<double>(j, "eps_bound");
  q.dispersion_bound = field<double>(j, "dispersion_bound");
  try {
    q.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::parse_error, std::string("invalid quadrature: ") + e.what());
  }
  return q;
}

json to_json(const CertifiedBounds& b) {
  return {{"e_inflation", b.e_inflation},         {"beta", b.beta},
          {"gamma", b.gamma},                     {"R_bound", b.R_bound},
          {"vcp_vdp_gap_upper", b.vcp_vdp_gap_upper}, {"vdp_vcp_gap_upper", b.vdp_vcp_gap_upper}};
}

CertifiedBounds bounds_from_json(const json& j) {
  CertifiedBounds b;
  b.e_inflation = field<double>(j, "e_inflation");
  b.beta = field<double>(j, "beta");
  b.gamma = field<double>(j, "gamma");
  b.R_bound = field<double>(j, "R_bound");
  b.vcp_vdp_gap_upper = field<double>(j, "vcp_vdp_gap_upper");
  b.vdp_vcp_gap_upper = field<double>(j, "vdp_vcp_gap_upper");
  return b;
}

json to_json(const MonteCarloSpec& spec) {
  json model = json::array();
  for (const auto& v : spec.model) {
    if (const auto* w = std::get_if<Weibull3>(&v)) {
      model.push_back({{"kind", "weibull3"}, {"scale", w->scale}, {"shape", w->shape}, {"location", w->location}});
    } else if (const auto* ln = std::get_if<ConditionalLognormal>(&v)) {
      model.push_back({{"kind", "conditional_lognormal"},
                       {"parent", ln->parent},
                       {"log_mean", law_json(ln->log_mean.a, ln->log_mean.b, ln->log_mean.c)},
                       {"log_sd", law_json(ln->log_sd.a, ln->log_sd.b, ln->log_sd.c)}});
    } else if (const auto* w2 = std::get_if<ConditionalWeibull2>(&v)) {
      model.push_back({{"kind", "conditional_weibull2"},
                       {"parent", w2->parent},
                       {"scale", law_json(w2->scale.a, w2->scale.b, w2->scale.c)},
                       {"shape", law_json(w2->shape.a, w2->shape.b, w2->shape.c)}});
    }
  }
  return {{"model", std::move(model)}, {"n_samples", spec.n_samples}, {"exceedance", spec.exceedance}, {"seed", spec.seed}};
}

MonteCarloSpec montecarlo_from_json(const json& j) {
  MonteCarloSpec s;
  s.n_samples = field<std::size_t>(j, "n_samples");
  s.exceedance = field<double>(j, "exceedance");
  s.seed = field<std::uint64_t>(j, "seed");
  if (!j.contains("model") || !j.at("model").is_array()) throw Error(ErrorCode::parse_error, "missing 'model' array");
  auto power = [](const json& l) { return PowerLaw{field<double>(l, "a"), field<double>(l, "b"), field<double>(l, "c")}; };
  auto expo = [](const json& l) { return ExpLaw{field<double>(l, "a"), field<double>(l, "b"), field<double>(l, "c")}; };
  for (const auto& v : j.at("model")) {
    const auto kind = field<std::string>(v, "kind");
    if (kind == "weibull3") {
      s.model.push_back(Weibull3{field<double>(v, "scale"), field<double>(v, "shape"), field<double>(v, "location")});
    } else if (kind == "conditional_lognormal") {
      s.model.push_back(ConditionalLognormal{field<std::size_t>(v, "parent"), power(v.at("log_mean")), expo(v.at("log_sd"))});
    } else if (kind == "conditional_weibull2") {
      s.model.push_back(ConditionalWeibull2{field<std::size_t>(v, "parent"), power(v.at("scale")), power(v.at("shape"))});
    } else {
      throw Error(ErrorCode::parse_error, "unknown model kind '" + kind + "'");
    }
  }
  return s;
}

json to_json(const SolutionRecord& rec) {
  const auto& s = rec.solution;
  json j;
  j["dim"] = s.dim;
  j["formulation"] = to_string(s.formulation);
  j["quadrature_ref"] = to_json(rec.quadrature);
  j["B"] = s.B;
  if (!s.witness_points.empty()) j["witness_points"] = s.witness_points;
  j["body_prime"] = to_json(s.prime());
  if (s.body_star) j["body_star"] = to_json(*s.body_star);
  j["objective"] = s.objective;
  j["radius_bound"] = s.radius_bound;
  if (rec.bounds) j["bounds"] = to_json(*rec.bounds);
  if (!rec.hypotheses.empty()) j["hypotheses"] = rec.hypotheses;
  j["bound_inputs"] = {{"dim", rec.bound_inputs.dim},
                       {"eps", rec.bound_inputs.eps},
                       {"delta", rec.bound_inputs.delta},
                       {"lipschitz", rec.bound_inputs.lipschitz},
                       {"sup_norm", rec.bound_inputs.sup_norm}};
  j["stats"] = {{"iterations", s.stats.iterations}, {"rounds", s.stats.rounds},
                {"added_constraints", s.stats.added_constraints}, {"rows", s.stats.rows},
                {"columns", s.stats.columns}};
  return j;
}

SolutionRecord solution_from_json(const json& j) {
  SolutionRecord rec;
  if (!j.contains("quadrature_ref")) throw Error(ErrorCode::parse_error, "missing field 'quadrature_ref'");
  rec.quadrature = quadrature_from_json(j.at("quadrature_ref"));
  auto& s = rec.solution;
  s.dim = field<std::size_t>(j, "dim");
  s.formulation = formulation_from_string(field<std::string>(j, "formulation"));
  s.B = field<std::vector<double>>(j, "B");
  if (s.B.size() != rec.quadrature.size()) throw Error(ErrorCode::parse_error, "B does not match the quadrature size");
  if (j.contains("witness_points")) s.witness_points = field<std::vector<Point>>(j, "witness_points");
  if (!j.contains("body_prime")) throw Error(ErrorCode::parse_error, "missing field 'body_prime'");
  s.body_prime = body_from_json(j.at("body_prime"));
  if (j.contains("body_star")) s.body_star = body_from_json(j.at("body_star"));
  s.objective = field<double>(j, "objective");
  s.radius_bound = field<double>(j, "radius_bound");
  if (j.contains("bounds")) rec.bounds = bounds_from_json(j.at("bounds"));
  if (j.contains("hypotheses")) rec.hypotheses = field<std::string>(j, "hypotheses");
  if (j.contains("bound_inputs")) {
    const auto& b = j.at("bound_inputs");
    rec.bound_inputs = {field<std::size_t>(b, "dim"), field<double>(b, "eps"), field<double>(b, "delta"),
                        field<double>(b, "lipschitz"), field<double>(b, "sup_norm")};
  }
  if (j.contains("stats")) {
    const auto& st = j.at("stats");
    s.stats.iterations = st.value("iterations", std::size_t{0});
    s.stats.rounds = st.value("rounds", std::size_t{0});
    s.stats.added_constraints = st.value("added_constraints", std::size_t{0});
    s.stats.rows = st.value("rows", std::size_t{0});
    s.stats.columns = st.value("columns", std::size_t{0});
  }
  return rec;
}

json to_json(const RequirementMeta& m) {
  return {{"dim", m.dim},
          {"kind", m.kind},
          {"params", m.params},
          {"lipschitz", m.lipschitz},
          {"lipschitz_certified", m.lipschitz_certified},
          {"lipschitz_note", m.lipschitz_certified ? "declared" : "estimated, uncertified"},
          {"sup_norm", m.sup_norm}};
}

RequirementMeta requirement_meta_from_json(const json& j) {
  RequirementMeta m;
  m.dim = field<std::size_t>(j, "dim");
  m.kind = field<std::string>(j, "kind");
  if (j.contains("params")) m.params = j.at("params");
  m.lipschitz = field<double>(j, "lipschitz");
  m.lipschitz_certified = field<bool>(j, "lipschitz_certified");
  m.sup_norm = field<double>(j, "sup_norm");
  return m;
}

std::optional<Requirement> analytic_from_meta(const RequirementMeta& meta) {
  if (meta.kind == "circle") return analytic_circle(meta.params.value("r", 1.0), meta.dim);
  if (meta.kind == "triangle") return analytic_triangle();
  if (meta.kind == "spikes") {
    SpikeParams p;
    p.base = meta.params.value("base", p.base);
    p.height = meta.params.value("height", p.height);
    p.slope = meta.params.value("slope", p.slope);
    p.angles = meta.params.value("angles", p.angles);
    return analytic_spikes(p);
  }
  return std::nullopt;
}

void write_table_csv(const std::filesystem::path& path, const std::vector<TableRow>& rows) {
  if (rows.empty()) throw Error(ErrorCode::invalid_argument, "empty requirement table");
  std::ostringstream os;
  const std::size_t n = rows.front().direction.dim();
  for (std::size_t k = 0; k < n; ++k) os << "u_" << (k + 1) << ",";
  os << "C\n";
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < n; ++k) os << fmt(r.direction[k]) << ",";
    os << fmt(r.value) << "\n";
  }
  write_text_file(path, os.str());
}

std::vector<TableRow> read_table_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::parse_error, path.string() + ": empty file");
  std::size_t cols = 1;
  for (char c : line) cols += c == ',' ? 1 : 0;
  if (cols < 3 || line.rfind("u_1,", 0) != 0) throw Error(ErrorCode::parse_error, path.string() + ": expected header u_1,...,u_N,C");
  std::vector<TableRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw Error(ErrorCode::parse_error, path.string() + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    if (vals.size() != cols) throw Error(ErrorCode::parse_error, path.string() + ":" + std::to_string(lineno) + ": wrong column count");
    const double c = vals.back();
    vals.pop_back();
    rows.push_back({Direction(std::move(vals)), c});
  }
  if (rows.empty()) throw Error(ErrorCode::parse_error, path.string() + ": no rows");
  return rows;
}

std::filesystem::path meta_path(const std::filesystem::path& table) { return table.string() + ".meta.json"; }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) { write_text_file(path, j.dump(1) + "\n"); }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::invalid_argument, "write failed for " + path.string());
}

}  // namespace hullmin::io
