#include "decomp_mc/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace decomp_mc {

namespace {

Json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

Json vector_to_json(const Vector& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) fail(Errc::bad_input, "expected a JSON array of numbers");
  Vector v(static_cast<Index>(j.size()));
  Index i = 0;
  for (const auto& x : j) {
    if (!x.is_number()) fail(Errc::bad_input, "expected a number");
    v(i++) = x.get<double>();
  }
  return v;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail(Errc::bad_input, "expected a JSON array of rows");
  const Index rows = static_cast<Index>(j.size());
  Index cols = -1;
  Matrix m;
  Index r = 0;
  for (const auto& row : j) {
    Vector v = vector_from_json(row);
    if (cols < 0) {
      cols = v.size();
      m.resize(rows, cols);
    } else if (v.size() != cols) {
      fail(Errc::bad_input, "ragged matrix rows");
    }
    m.row(r++) = v;
  }
  return m;
}

Json chain_to_json(const ReversibleChain& chain) {
  Json j;
  if (!chain.labels.empty()) j["labels"] = chain.labels;
  j["P"] = matrix_to_json(chain.P);
  j["pi"] = vector_to_json(chain.pi);
  return j;
}

ReversibleChain chain_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("P")) {
    fail(Errc::bad_input, "chain JSON must be an object with a \"P\" matrix");
  }
  Matrix P = matrix_from_json(j.at("P"));
  std::optional<Vector> pi;
  if (j.contains("pi") && !j.at("pi").is_null()) pi = vector_from_json(j.at("pi"));
  std::vector<std::string> labels;
  if (j.contains("labels") && !j.at("labels").is_null()) {
    labels = j.at("labels").get<std::vector<std::string>>();
  }
  return build_chain(std::move(P), std::move(pi), std::move(labels));
}

Json partition_to_json(const Partition& part) {
  return Json{{"block_of", part.block_of}};
}

Partition partition_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("block_of")) {
    fail(Errc::bad_input, "partition JSON must be an object with \"block_of\"");
  }
  return make_partition(j.at("block_of").get<std::vector<int>>());
}

Json spectral_certificate_to_json(const SpectralCertificate& cert) {
  Json j;
  j["gap"] = cert.gap;
  j["second_eigenvalue"] = cert.second_eigenvalue;
  j["witness"] = vector_to_json(cert.witness);
  return j;
}

Json lsob_certificate_to_json(const LsobCertificate& cert) {
  Json j;
  j["alpha_estimate"] = cert.alpha_estimate;
  j["half_gap"] = cert.half_gap;
  j["witness"] = vector_to_json(cert.witness);
  j["estimate_flags"] = Json{{"alpha_is_upper_estimate", true}};
  return j;
}

Json bound_to_json(const BoundResult& res) {
  Json j;
  j["rule"] = rule_name(res.rule);
  j["inputs"] = Json{{"bar_constant", finite_or_null(res.bar_constant)},
                     {"min_constant", finite_or_null(res.min_constant)},
                     {"gamma_or_gamma_hat", res.gamma_or_gamma_hat}};
  j["value"] = finite_or_null(res.value);
  j["parse_notes"] = res.parse_notes;
  return j;
}

Json decomposition_to_json(const DecompositionReport& rep) {
  Json j;
  j["projection"] = chain_to_json(rep.projection);
  Json restr = Json::array();
  for (const auto& r : rep.restrictions) restr.push_back(chain_to_json(r));
  j["restrictions"] = std::move(restr);
  j["gamma"] = rep.gamma;
  j["eta"] = rep.eta;
  j["gamma_hat"] = rep.gamma_hat;
  return j;
}

Json zoo_instance_to_json(const ZooInstance& inst) {
  Json j;
  Json meta;
  meta["name"] = inst.metadata.name;
  meta["params"] = inst.metadata.params;
  if (inst.metadata.rank > 0) {
    meta["rank"] = inst.metadata.rank;
    meta["ground"] = inst.metadata.ground;
  }
  j["metadata"] = std::move(meta);
  j["chain"] = chain_to_json(inst.chain);
  j["partition"] = partition_to_json(inst.canonical_partition);
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::bad_input, "cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::bad_input, "invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(Errc::bad_input, "cannot write '" + path + "'");
  out << dump_json(j);
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    }
  } else if (j.is_array()) {
    int i = 0;
    for (const auto& v : j) {
      flatten(v, prefix + "[" + std::to_string(i++) + "]", out);
    }
  } else if (j.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
    out << prefix << "," << buf << "\n";
  } else if (j.is_number()) {
    out << prefix << "," << j.dump() << "\n";
  } else if (j.is_boolean()) {
    out << prefix << "," << (j.get<bool>() ? "true" : "false") << "\n";
  } else if (j.is_string()) {
    out << prefix << "," << j.get<std::string>() << "\n";
  } else {
    out << prefix << ",\n";
  }
}

}  // namespace

std::string flatten_csv(const Json& j) {
  std::ostringstream out;
  out << "key,value\n";
  flatten(j, "", out);
  return out.str();
}

}  // namespace decomp_mc
