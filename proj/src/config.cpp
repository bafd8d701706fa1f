#include "msl/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace msl {
namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& a) {
  json out = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.push_back({a(i, j).real(), a(i, j).imag()});
  return out;
}

Matrix matrix_from_json(const json& j, int m, const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != m * m)
    throw ValidationError("config: field '" + field + "' must hold " + std::to_string(m * m) +
                          " [re, im] pairs (row-major)");
  Matrix a(m, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      const json& e = j[static_cast<size_t>(i) * m + k];
      if (!e.is_array() || e.size() != 2)
        throw ValidationError("config: field '" + field + "' entries must be [re, im] pairs");
      a(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  return a;
}

json potential_to_json(const PotentialSpec& q) {
  json out;
  switch (q.kind()) {
    case PotentialSpec::Kind::Zero:
      out["variant"] = "zero";
      break;
    case PotentialSpec::Kind::Constant:
      out["variant"] = "constant";
      out["matrix"] = matrix_to_json(q.coeffs()[0]);
      break;
    case PotentialSpec::Kind::Fourier: {
      out["variant"] = "fourier";
      json cs = json::array();
      for (const auto& c : q.coeffs()) cs.push_back(matrix_to_json(c));
      out["coeffs"] = cs;
      break;
    }
    case PotentialSpec::Kind::Sampled: {
      out["variant"] = "sampled";
      out["abscissae"] = q.abscissae();
      json vs = json::array();
      for (const auto& v : q.samples()) vs.push_back(matrix_to_json(v));
      out["samples"] = vs;
      break;
    }
  }
  return out;
}

PotentialSpec potential_from_json(const json& j, int m) {
  std::string variant = j.value("variant", "");
  if (variant == "zero") return PotentialSpec::zero(m);
  if (variant == "constant")
    return PotentialSpec::constant(matrix_from_json(j.at("matrix"), m, "potential.matrix"));
  if (variant == "fourier") {
    std::vector<Matrix> cs;
    for (const auto& c : j.at("coeffs")) cs.push_back(matrix_from_json(c, m, "potential.coeffs"));
    return PotentialSpec::fourier(std::move(cs));
  }
  if (variant == "sampled") {
    std::vector<double> xs = j.at("abscissae").get<std::vector<double>>();
    std::vector<Matrix> vs;
    for (const auto& v : j.at("samples")) vs.push_back(matrix_from_json(v, m, "potential.samples"));
    return PotentialSpec::sampled(std::move(xs), std::move(vs));
  }
  throw ValidationError("config: potential.variant must be zero|constant|fourier|sampled");
}

json scalar_potential_to_json(const PotentialSpec& q) {
  json out;
  switch (q.kind()) {
    case PotentialSpec::Kind::Zero:
      out["variant"] = "zero";
      break;
    case PotentialSpec::Kind::Constant:
      out["variant"] = "constant";
      out["value"] = q.coeffs()[0](0, 0).real();
      break;
    case PotentialSpec::Kind::Fourier: {
      out["variant"] = "fourier";
      std::vector<double> cs;
      for (const auto& c : q.coeffs()) cs.push_back(c(0, 0).real());
      out["coeffs"] = cs;
      break;
    }
    case PotentialSpec::Kind::Sampled: {
      out["variant"] = "sampled";
      out["abscissae"] = q.abscissae();
      std::vector<double> vs;
      for (const auto& v : q.samples()) vs.push_back(v(0, 0).real());
      out["values"] = vs;
      break;
    }
  }
  return out;
}

PotentialSpec scalar_potential_from_json(const json& j) {
  auto scalar = [](double v) { return Matrix::Constant(1, 1, Complex(v, 0.0)); };
  std::string variant = j.value("variant", "");
  if (variant == "zero") return PotentialSpec::zero(1);
  if (variant == "constant") return PotentialSpec::constant(scalar(j.at("value").get<double>()));
  if (variant == "fourier") {
    std::vector<Matrix> cs;
    for (double c : j.at("coeffs").get<std::vector<double>>()) cs.push_back(scalar(c));
    return PotentialSpec::fourier(std::move(cs));
  }
  if (variant == "sampled") {
    std::vector<double> xs = j.at("abscissae").get<std::vector<double>>();
    std::vector<Matrix> vs;
    for (double v : j.at("values").get<std::vector<double>>()) vs.push_back(scalar(v));
    return PotentialSpec::sampled(std::move(xs), std::move(vs));
  }
  throw ValidationError("config: edge variant must be zero|constant|fourier|sampled");
}

SelfAdjointProblem problem_from_json(const json& j) {
  int m = j.at("m").get<int>();
  if (m < 2) throw ValidationError("config: problem.m must be >= 2");
  Matrix T = matrix_from_json(j.at("T"), m, "problem.T");
  Matrix H = j.contains("H") ? matrix_from_json(j.at("H"), m, "problem.H")
                             : Matrix(Matrix::Zero(m, m));
  PotentialSpec Q =
      j.contains("potential") ? potential_from_json(j.at("potential"), m) : PotentialSpec::zero(m);
  return make_problem(std::move(T), std::move(H), std::move(Q));
}

json problem_to_json(const SelfAdjointProblem& p) {
  json out;
  out["m"] = p.m;
  out["T"] = matrix_to_json(p.T);
  out["H"] = matrix_to_json(p.H);
  out["potential"] = potential_to_json(p.Q);
  return out;
}

StarGraphSpec graph_from_json(const json& j) {
  StarGraphSpec g;
  g.m = j.at("m").get<int>();
  g.beta = j.value("beta", 0.0);
  std::string coupling = j.value("coupling", "delta");
  if (coupling == "delta")
    g.coupling = Coupling::Delta;
  else if (coupling == "delta-prime")
    g.coupling = Coupling::DeltaPrime;
  else
    throw ValidationError("config: graph.coupling must be delta|delta-prime");
  for (const auto& e : j.at("edges")) g.edges.push_back(scalar_potential_from_json(e));
  validate_graph(g);
  return g;
}

json graph_to_json(const StarGraphSpec& g) {
  json out;
  out["m"] = g.m;
  out["beta"] = g.beta;
  out["coupling"] = g.coupling == Coupling::Delta ? "delta" : "delta-prime";
  json es = json::array();
  for (const auto& e : g.edges) es.push_back(scalar_potential_to_json(e));
  out["edges"] = es;
  return out;
}

Matrix diag2(double a, double b) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = a;
  d(1, 1) = b;
  return d;
}

}  // namespace

SelfAdjointProblem RunConfig::resolveProblem() const {
  if (problem) return *problem;
  if (graph) return to_matrix_problem(*graph);
  throw ValidationError("config: neither a problem nor a graph is present");
}

RunConfig parse_config(const std::string& jsonText) {
  json j;
  try {
    j = json::parse(jsonText);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: JSON parse error: ") + e.what());
  }
  RunConfig cfg;
  try {
    cfg.schema = j.value("schema", 1);
    if (cfg.schema != 1)
      throw ValidationError("config: unsupported schema version " + std::to_string(cfg.schema));
    if (j.contains("problem") == j.contains("graph"))
      throw ValidationError("config: exactly one of 'problem' or 'graph' is required");
    if (j.contains("problem")) cfg.problem = problem_from_json(j.at("problem"));
    if (j.contains("graph")) cfg.graph = graph_from_json(j.at("graph"));
    if (j.contains("compare_problem")) cfg.compareProblem = problem_from_json(j.at("compare_problem"));
    cfg.maxBand = j.value("max_band", 10);
    if (cfg.maxBand < 1) throw ValidationError("config: max_band must be >= 1");
    if (j.contains("integrator")) {
      const json& ji = j.at("integrator");
      cfg.integ.steps = ji.value("steps", cfg.integ.steps);
      cfg.integ.tolerance = ji.value("tolerance", cfg.integ.tolerance);
      std::string method = ji.value("method", "rk8");
      if (method == "rk8")
        cfg.integ.order = OneStepMethod::Rk8;
      else if (method == "rk4")
        cfg.integ.order = OneStepMethod::Rk4;
      else
        throw ValidationError("config: integrator.method must be rk4|rk8");
    }
    if (j.contains("quadrature")) {
      const json& jq = j.at("quadrature");
      cfg.quad.startNodes = jq.value("start_nodes", cfg.quad.startNodes);
      cfg.quad.maxNodes = jq.value("max_nodes", cfg.quad.maxNodes);
      cfg.quad.tol = jq.value("tolerance", cfg.quad.tol);
    }
    cfg.quad.integ = cfg.integ;
    cfg.workers = j.value("workers", 0);
    cfg.format = j.value("format", "csv");
    if (cfg.format != "csv" && cfg.format != "json")
      throw ValidationError("config: format must be csv|json");
    cfg.outDir = j.value("out_dir", "out");
    cfg.presetName = j.value("preset", "");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  json j;
  j["schema"] = cfg.schema;
  if (cfg.problem) j["problem"] = problem_to_json(*cfg.problem);
  if (cfg.graph) j["graph"] = graph_to_json(*cfg.graph);
  if (cfg.compareProblem) j["compare_problem"] = problem_to_json(*cfg.compareProblem);
  j["max_band"] = cfg.maxBand;
  j["integrator"] = {{"steps", cfg.integ.steps},
                     {"tolerance", cfg.integ.tolerance},
                     {"method", cfg.integ.order == OneStepMethod::Rk8 ? "rk8" : "rk4"}};
  j["quadrature"] = {{"start_nodes", cfg.quad.startNodes},
                     {"max_nodes", cfg.quad.maxNodes},
                     {"tolerance", cfg.quad.tol}};
  j["workers"] = cfg.workers;
  j["format"] = cfg.format;
  j["out_dir"] = cfg.outDir;
  if (!cfg.presetName.empty()) j["preset"] = cfg.presetName;
  return j.dump(2);
}

std::vector<std::string> preset_names() {
  return {"q0", "diag2", "coupled3", "star-delta", "star-deltaprime", "negative-control"};
}

RunConfig preset(const std::string& name) {
  RunConfig cfg;
  cfg.presetName = name;
  auto scalarConst = [](double v) {
    return PotentialSpec::constant(Matrix::Constant(1, 1, Complex(v, 0.0)));
  };
  if (name == "q0") {
    Matrix T = Matrix::Zero(3, 3);
    T(0, 0) = 1;
    cfg.problem = make_problem(T, Matrix::Zero(3, 3), PotentialSpec::zero(3));
  } else if (name == "diag2") {
    Matrix T = Matrix::Zero(2, 2);
    T(0, 0) = 1;
    cfg.problem = make_problem(T, Matrix::Zero(2, 2), PotentialSpec::constant(diag2(0.6, -0.4)));
  } else if (name == "coupled3") {
    Matrix T = Matrix::Zero(3, 3);
    T(0, 0) = 1;
    Matrix a0 = Matrix::Zero(3, 3);
    a0(0, 0) = 0.4;
    a0(1, 1) = 0.1;
    a0(1, 2) = 0.25;
    a0(2, 1) = 0.25;
    a0(2, 2) = -0.3;
    Matrix a1 = Matrix::Zero(3, 3);
    Matrix a2 = Matrix::Zero(3, 3);
    a2(0, 1) = Complex(0.2, 0.1);
    a2(1, 0) = Complex(0.2, -0.1);
    a2(1, 2) = 0.15;
    a2(2, 1) = 0.15;
    cfg.problem = make_problem(T, Matrix::Zero(3, 3), PotentialSpec::fourier({a0, a1, a2}));
  } else if (name == "star-delta" || name == "star-deltaprime") {
    StarGraphSpec g;
    g.m = 3;
    g.edges = {scalarConst(0.2), scalarConst(0.5), scalarConst(0.9)};
    if (name == "star-delta") {
      g.beta = 1.5;
      g.coupling = Coupling::Delta;
    } else {
      g.beta = 0.0;
      g.coupling = Coupling::DeltaPrime;
    }
    cfg.graph = g;
  } else if (name == "negative-control") {
    Matrix T = Matrix::Zero(2, 2);
    T(0, 0) = 1;
    cfg.problem = make_problem(T, Matrix::Zero(2, 2), PotentialSpec::constant(diag2(0.6, -0.4)));
    // constant shift violates both block conditions of the comparison corollary
    cfg.compareProblem =
        make_problem(T, Matrix::Zero(2, 2), PotentialSpec::constant(diag2(1.1, 0.1)));
  } else {
    throw ValidationError("unknown preset '" + name + "'");
  }
  return cfg;
}

}  // namespace msl
