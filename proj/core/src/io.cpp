#include "nuds/io.hpp"

#include <iomanip>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nuds/error.hpp"

namespace nuds {

namespace {

using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& e) {
  if (e.is_number()) return Complex(e.get<double>(), 0.0);
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    throw ConfigError("complex entries must be [re, im] pairs");
  }
  return Complex(e[0].get<double>(), e[1].get<double>());
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v[i]));
  return out;
}

Vec vec_from(const json& j, Eigen::Index dim, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be an array of [re, im] pairs");
  if (static_cast<Eigen::Index>(j.size()) != dim) {
    throw DimensionError(what + " has length " + std::to_string(j.size()) + ", expected dim = " +
                         std::to_string(dim));
  }
  Vec v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = complex_from(j[static_cast<std::size_t>(i)]);
  require_finite(v, what);
  return v;
}

// Row-major list of rows.
json mat_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vec_json(m.row(r).transpose()));
  return rows;
}

Mat mat_from(const json& j, Eigen::Index rows, Eigen::Index cols, const std::string& what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw DimensionError(what + " must have " + std::to_string(rows) + " rows");
  }
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    m.row(r) = vec_from(j[static_cast<std::size_t>(r)], cols, what + " row").transpose();
  }
  return m;
}

// List of column vectors.
Mat columns_from(const json& j, Eigen::Index dim, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ConfigError(what + " must be a nonempty list of vectors");
  Mat m(dim, static_cast<Eigen::Index>(j.size()));
  for (std::size_t c = 0; c < j.size(); ++c) {
    m.col(static_cast<Eigen::Index>(c)) = vec_from(j[c], dim, what);
  }
  return m;
}

json columns_json(const Mat& m) {
  json out = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(vec_json(m.col(c)));
  return out;
}

Mat parse_A(const json& j, Eigen::Index dim) {
  if (j.is_array()) return mat_from(j, dim, dim, "A");
  if (!j.is_object()) throw ConfigError("A must be a matrix or a generator object");
  if (j.contains("matrix")) return mat_from(j.at("matrix"), dim, dim, "A");
  const std::string gen = j.value("generator", "");
  if (gen == "scaled_identity") {
    if (!j.contains("scale")) throw ConfigError("scaled_identity generator needs \"scale\"");
    return complex_from(j.at("scale")) * Mat::Identity(dim, dim);
  }
  if (gen == "diag") {
    if (!j.contains("values")) throw ConfigError("diag generator needs \"values\"");
    return vec_from(j.at("values"), dim, "A diagonal").asDiagonal();
  }
  throw ConfigError("unknown A generator \"" + gen + "\"");
}

VectorFamily parse_g(const json& j, Eigen::Index dim) {
  if (j.is_string()) {
    if (j.get<std::string>() == "onb") return VectorFamily::standard_basis(dim);
    throw ConfigError("unknown sampling family \"" + j.get<std::string>() + "\"");
  }
  const json& vs = j.is_object() ? j.at("vectors") : j;
  return VectorFamily::from_columns(columns_from(vs, dim, "g vector"));
}

Mat parse_W(const json& j, Eigen::Index dim) {
  if (j.is_string()) {
    if (j.get<std::string>() == "full") return Mat::Identity(dim, dim);
    throw ConfigError("unknown subspace \"" + j.get<std::string>() + "\"");
  }
  const json& cs = j.is_object() ? j.at("columns") : j;
  const Mat cols = columns_from(cs, dim, "W column");
  const Mat gram = cols.adjoint() * cols;
  if ((gram - Mat::Identity(gram.rows(), gram.cols())).norm() <= 1e-12) return cols;
  return orthonormal_basis(cols);
}

std::int64_t required_int(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer()) {
    throw ConfigError(std::string("config needs integer \"") + key + "\"");
  }
  return doc.at(key).get<std::int64_t>();
}

void check_schema(const json& doc) {
  if (doc.contains("schema") && doc.at("schema") != kSchemaVersion) {
    throw ConfigError("unsupported schema version " + doc.at("schema").dump());
  }
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return os.str();
}

}  // namespace

Config parse_config(const std::string& text) {
  const json doc = parse_json(text, "config");
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  check_schema(doc);
  try {
    Config cfg;
    if (!doc.contains("params")) throw ConfigError("config needs \"params\" {N, r}");
    const json& p = doc.at("params");
    cfg.spec.params = SpectralParams(required_int(p, "N"), required_int(p, "r"));
    cfg.spec.dim = required_int(doc, "dim");
    cfg.spec.K = required_int(doc, "K");
    if (cfg.spec.dim < 1) throw ConfigError("dim must be positive");
    if (cfg.spec.K < 1) throw ConfigError("K must be >= 1");
    const Eigen::Index d = cfg.spec.dim;
    for (const char* key : {"A", "g", "w", "x0", "xm2"}) {
      if (!doc.contains(key)) throw ConfigError(std::string("config needs \"") + key + "\"");
    }
    cfg.spec.A = parse_A(doc.at("A"), d);
    cfg.spec.g = parse_g(doc.at("g"), d);
    cfg.spec.W_basis = doc.contains("W") ? parse_W(doc.at("W"), d) : Mat::Identity(d, d);
    cfg.spec.w = vec_from(doc.at("w"), d, "w");
    cfg.spec.x0 = vec_from(doc.at("x0"), d, "x0");
    cfg.spec.xm2 = vec_from(doc.at("xm2"), d, "xm2");
    if (doc.contains("tolerances")) {
      for (const auto& [key, value] : doc.at("tolerances").items()) {
        if (!value.is_number()) throw ConfigError("tolerance " + key + " must be a number");
        cfg.tolerances.set(key, value.get<double>());
      }
    }
    if (doc.contains("stationary_map")) {
      const json& s = doc.at("stationary_map");
      cfg.stationary = mat_from(s.is_object() ? s.at("matrix") : s, d, cfg.spec.W_basis.cols(),
                                "stationary_map");
    }
    cfg.spec.validate(cfg.tolerances);
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

std::string serialize_config(const Config& config) {
  const SystemSpec& s = config.spec;
  const Tolerances& t = config.tolerances;
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["params"] = {{"N", s.params.N()}, {"r", s.params.r()}};
  doc["dim"] = s.dim;
  doc["K"] = s.K;
  doc["A"] = {{"matrix", mat_json(s.A)}};
  doc["g"] = {{"vectors", columns_json(s.g.as_columns())}};
  doc["W"] = {{"columns", columns_json(s.W_basis)}};
  doc["w"] = vec_json(s.w);
  doc["x0"] = vec_json(s.x0);
  doc["xm2"] = vec_json(s.xm2);
  doc["tolerances"] = {{"eig", t.eig},         {"solve", t.solve},
                       {"herm", t.herm},       {"pivot", t.pivot},
                       {"frame", t.frame},     {"dual", t.dual},
                       {"bs", t.bs},           {"rho_margin", t.rho_margin},
                       {"in_subspace", t.in_subspace}, {"residual", t.residual}};
  if (config.stationary) doc["stationary_map"] = {{"matrix", mat_json(*config.stationary)}};
  return doc.dump(2);
}

Config config_from_scenario(const Scenario& scenario) {
  Config cfg;
  cfg.spec = scenario.spec;
  cfg.stationary = scenario.stationary;
  return cfg;
}

std::string report_to_json(const RecoveryReport& report) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["w_hat"] = vec_json(report.w_hat);
  doc["abs_error"] = report.abs_error ? json(*report.abs_error) : json(nullptr);
  doc["residual"] = report.residual;
  const RecoveryDiagnostics& d = report.diagnostics;
  doc["diagnostics"] = {{"alpha", d.alpha},
                        {"beta", d.beta},
                        {"rho", d.rho ? json(*d.rho) : json(nullptr)},
                        {"tail_gap", d.tail_gap},
                        {"case", d.case_tag ? json(*d.case_tag) : json(nullptr)}};
  return doc.dump(2);
}

RecoveryReport report_from_json(const std::string& text) {
  const json doc = parse_json(text, "report");
  check_schema(doc);
  try {
    RecoveryReport r;
    const json& wh = doc.at("w_hat");
    r.w_hat = vec_from(wh, static_cast<Eigen::Index>(wh.size()), "w_hat");
    if (!doc.at("abs_error").is_null()) r.abs_error = doc.at("abs_error").get<double>();
    r.residual = doc.at("residual").get<double>();
    const json& d = doc.at("diagnostics");
    r.diagnostics.alpha = d.at("alpha").get<double>();
    r.diagnostics.beta = d.at("beta").get<double>();
    if (!d.at("rho").is_null()) r.diagnostics.rho = d.at("rho").get<double>();
    r.diagnostics.tail_gap = d.at("tail_gap").get<double>();
    if (!d.at("case").is_null()) r.diagnostics.case_tag = d.at("case").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

std::string data_matrix_csv(const DataMatrix& d, const SpectralParams& params) {
  std::ostringstream os;
  os << "lambda,j,re,im\n";
  for (Eigen::Index r = 0; r < d.rows(); ++r) {
    const std::string lam = label(d.row_index()[static_cast<std::size_t>(r)], params);
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      const Complex z = d.values()(r, j);
      os << lam << ',' << j << ',' << fmt(z.real()) << ',' << fmt(z.imag()) << '\n';
    }
  }
  return os.str();
}

std::string trajectory_csv(const StateTrajectory& traj, const SpectralParams& params) {
  std::ostringstream os;
  os << "lambda,m,eps";
  const Eigen::Index d = traj.states.empty() ? 0 : traj.states.begin()->second.size();
  for (Eigen::Index k = 0; k < d; ++k) os << ",re_" << k << ",im_" << k;
  os << '\n';
  for (const auto& [idx, x] : traj.states) {
    os << label(idx, params) << ',' << idx.m << ',' << idx.eps;
    for (Eigen::Index k = 0; k < d; ++k) os << ',' << fmt(x[k].real()) << ',' << fmt(x[k].imag());
    os << '\n';
  }
  return os.str();
}

}  // namespace nuds
