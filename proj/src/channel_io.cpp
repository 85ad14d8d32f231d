#include "qrd/channel_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qrd {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.what() carries the parser's line/column diagnostics.
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Complex parse_entry(const json& e, const std::string& where) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    throw InputError(where + ": each matrix entry must be an [re, im] pair");
  return Complex(e[0].get<double>(), e[1].get<double>());
}

// rows x cols complex matrix from nested row lists; cols == rows unless the
// caller allows rectangles (Kraus operators may be).
Matrix parse_matrix(const json& m, const std::string& where, int rows, int cols) {
  if (!m.is_array() || static_cast<int>(m.size()) != rows)
    throw InputError(where + ": expected " + std::to_string(rows) + " rows");
  Matrix out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = m[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw InputError(where + ": expected " + std::to_string(cols) + " entries per row");
    for (int j = 0; j < cols; ++j) out(i, j) = parse_entry(row[j], where);
  }
  return out;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

int require_dim(const json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw InputError("channel/state file: integer \"dim\" field required");
  int dim = j["dim"].get<int>();
  if (dim < 1) throw InputError("channel/state file: dim must be positive");
  return dim;
}

}  // namespace

DensityOperator parse_state_json(const std::string& text) {
  json j = parse_text(text);
  int dim = require_dim(j);
  if (!j.contains("matrix")) throw InputError("state file: \"matrix\" field required");
  return DensityOperator(parse_matrix(j["matrix"], "state matrix", dim, dim));
}

DensityOperator read_state_file(const std::string& path) {
  return parse_state_json(slurp(path));
}

std::string state_to_json(const DensityOperator& rho) {
  json j;
  j["dim"] = rho.dim();
  j["matrix"] = matrix_to_json(rho.mat());
  return j.dump(2) + "\n";
}

ChannelSpec parse_channel_json(const std::string& text) {
  json j = parse_text(text);
  int dim = require_dim(j);
  if (!j.contains("inputs") || !j["inputs"].is_array() || j["inputs"].empty())
    throw InputError("channel file: nonempty \"inputs\" list required");

  std::vector<std::string> labels;
  std::vector<DensityOperator> outputs;
  for (const json& in : j["inputs"]) {
    if (!in.contains("label") || !in["label"].is_string())
      throw InputError("channel file: every input needs a string \"label\"");
    if (!in.contains("matrix"))
      throw InputError("channel file: every input needs a \"matrix\"");
    labels.push_back(in["label"].get<std::string>());
    outputs.emplace_back(
        parse_matrix(in["matrix"], "output of " + labels.back(), dim, dim));
  }
  ChannelSpec spec{CqChannel(std::move(labels), std::move(outputs)), std::nullopt, std::nullopt};

  if (j.contains("kraus")) {
    const json& ks = j["kraus"];
    if (!ks.is_array() || ks.empty())
      throw InputError("channel file: \"kraus\" must be a nonempty list of matrices");
    // Kraus operators map an input space of any dimension into the channel's
    // output space; take the column count from the first operator.
    if (!ks[0].is_array() || ks[0].empty() || !ks[0][0].is_array())
      throw InputError("kraus operator: expected a nested row list");
    int cols = static_cast<int>(ks[0][0].size());
    std::vector<Matrix> mats;
    for (const json& k : ks) mats.push_back(parse_matrix(k, "kraus operator", dim, cols));
    spec.kraus = KrausChannel(std::move(mats));
  }

  if (j.contains("prior")) {
    const json& pr = j["prior"];
    if (!pr.is_object()) throw InputError("channel file: \"prior\" must be a label->weight map");
    std::vector<double> w(spec.channel.size(), 0.0);
    for (auto it = pr.begin(); it != pr.end(); ++it) {
      if (!it.value().is_number())
        throw InputError("channel file: prior weights must be numbers");
      w[spec.channel.index_of(it.key())] = it.value().get<double>();
    }
    spec.prior = InputDistribution(std::move(w));
  }
  return spec;
}

ChannelSpec read_channel_file(const std::string& path) {
  return parse_channel_json(slurp(path));
}

std::string channel_to_json(const CqChannel& W, const InputDistribution* prior,
                            const KrausChannel* kraus) {
  json j;
  j["dim"] = W.dim();
  json inputs = json::array();
  for (int x = 0; x < W.size(); ++x) {
    json in;
    in["label"] = W.labels()[x];
    in["matrix"] = matrix_to_json(W.output(x).mat());
    inputs.push_back(std::move(in));
  }
  j["inputs"] = std::move(inputs);
  if (kraus != nullptr) {
    json ks = json::array();
    for (const Matrix& k : kraus->kraus()) ks.push_back(matrix_to_json(k));
    j["kraus"] = std::move(ks);
  }
  if (prior != nullptr) {
    if (prior->size() != W.size())
      throw DimensionMismatch("channel writer: prior size does not match the alphabet");
    json pr = json::object();
    for (int x = 0; x < W.size(); ++x) pr[W.labels()[x]] = (*prior)[x];
    j["prior"] = std::move(pr);
  }
  return j.dump(2) + "\n";
}

void apply_config_json(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object()) throw InputError("config file: expected a flat JSON object");
  Tolerances& t = config();
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    if (!v.is_number()) throw InputError("config file: " + key + " must be a number");
    double x = v.get<double>();
    if (key == "herm") t.herm = x;
    else if (key == "psd") t.psd = x;
    else if (key == "trace") t.trace = x;
    else if (key == "meet") t.meet = x;
    else if (key == "support_cutoff") t.support_cutoff = x;
    else if (key == "cluster") t.cluster = x;
    else if (key == "dim_cap") t.dim_cap = v.get<int>();
    else if (key == "perm_work_cap") t.perm_work_cap = x;
    else if (key == "grad_tol") t.grad_tol = x;
    else if (key == "stall_tol") t.stall_tol = x;
    else if (key == "max_iters") t.max_iters = v.get<int>();
    else if (key == "minimax_gap") t.minimax_gap = x;
    else throw InputError("config file: unknown key \"" + key + "\"");
  }
}

void apply_config_file(const std::string& path) {
  apply_config_json(slurp(path));
}

}  // namespace qrd
