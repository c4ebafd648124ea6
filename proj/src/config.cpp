#include "phwell/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "phwell/error.hpp"

namespace phwell {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::parse, msg, path);
}

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing key");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

Complex parse_entry(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array()) {
    if (v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      fail(path, "complex entries are [re, im] pairs");
    }
    return {v[0].get<double>(), v[1].get<double>()};
  }
  fail(path, "expected a number or [re, im]");
}

// `cols_if_empty` supplies the width of an empty matrix (zero rows).
CMatrix parse_matrix(const json& v, const std::string& path, Eigen::Index cols_if_empty = 0) {
  if (!v.is_array()) fail(path, "expected an array of rows");
  if (v.empty()) return CMatrix(0, cols_if_empty);
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  CMatrix m(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array()) fail(rp, "expected a row array");
    if (v[i].size() != cols) {
      throw Error(ErrorKind::shape, "row " + std::to_string(i) + " has " + std::to_string(v[i].size()) +
                                        " entries, expected " + std::to_string(cols), path);
    }
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_entry(v[i][j], rp + "[" + std::to_string(j) + "]");
    }
  }
  return m;
}

int parse_positive_int(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 1) fail(path, "expected a positive integer");
  return static_cast<int>(v.get<long long>());
}

double parse_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::string parse_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

HamiltonianDensity parse_H(const json& h) {
  const std::string kind = parse_string(member(h, "kind", "H"), "H.kind");
  const json& data = member(h, "data", "H");
  if (kind == "constant") return HamiltonianDensity::constant(parse_matrix(data, "H.data"));
  if (kind == "piecewise") {
    const json& bp = member(data, "breakpoints", "H.data");
    const json& cells = member(data, "cells", "H.data");
    if (!bp.is_array()) fail("H.data.breakpoints", "expected an array");
    if (!cells.is_array()) fail("H.data.cells", "expected an array");
    std::vector<double> breakpoints;
    for (std::size_t i = 0; i < bp.size(); ++i) {
      breakpoints.push_back(parse_number(bp[i], "H.data.breakpoints[" + std::to_string(i) + "]"));
    }
    std::vector<CMatrix> mats;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      mats.push_back(parse_matrix(cells[i], "H.data.cells[" + std::to_string(i) + "]"));
    }
    if (mats.size() != breakpoints.size() + 1) {
      throw Error(ErrorKind::shape, "piecewise H needs one more cell than breakpoints", "H.data.cells");
    }
    return HamiltonianDensity::piecewise(std::move(breakpoints), std::move(mats));
  }
  if (kind == "grid") {
    const double extent = parse_number(member(data, "extent", "H.data"), "H.data.extent");
    const json& samples = member(data, "samples", "H.data");
    if (!samples.is_array() || samples.empty()) fail("H.data.samples", "expected a nonempty array");
    std::vector<CMatrix> mats;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      mats.push_back(parse_matrix(samples[i], "H.data.samples[" + std::to_string(i) + "]"));
    }
    if (!(extent > 0.0)) fail("H.data.extent", "extent must be positive");
    return HamiltonianDensity::grid(extent, std::move(mats));
  }
  fail("H.kind", "unknown kind '" + kind + "' (constant, piecewise, grid)");
}

void parse_tolerances(const json& t, Tolerances& tol) {
  if (!t.is_object()) fail("tolerances", "expected an object");
  const std::pair<const char*, double*> fields[] = {{"structure", &tol.structure}, {"rank", &tol.rank},
                                                    {"psd", &tol.psd},             {"pd", &tol.pd},
                                                    {"v_slack", &tol.v_slack}};
  for (auto it = t.begin(); it != t.end(); ++it) {
    bool known = false;
    for (const auto& [name, target] : fields) {
      if (it.key() == name) {
        const double v = parse_number(it.value(), join("tolerances", name));
        if (!(v > 0.0 && v < 1.0)) fail(join("tolerances", name), "tolerance must lie in (0, 1)");
        *target = v;
        known = true;
      }
    }
    if (!known) fail(join("tolerances", it.key()), "unknown tolerance");
  }
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      if (z.imag() == 0.0) {
        row.push_back(z.real());
      } else {
        row.push_back(json::array({z.real(), z.imag()}));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

PortHamiltonianSystem parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("", "top level must be an object");

  SystemDescription raw;
  raw.tol = Tolerances::from_environment();
  raw.field = parse_field(parse_string(member(root, "field", ""), "field"));
  raw.interval = parse_interval(parse_string(member(root, "interval", ""), "interval"));
  raw.order_N = parse_positive_int(member(root, "N", ""), "N");
  raw.dim_d = parse_positive_int(member(root, "d", ""), "d");

  const json& P = member(root, "P", "");
  if (!P.is_array()) fail("P", "expected an array of matrices");
  for (std::size_t k = 0; k < P.size(); ++k) {
    raw.P.push_back(parse_matrix(P[k], "P[" + std::to_string(k) + "]"));
  }
  raw.H = parse_H(member(root, "H", ""));
  const Eigen::Index width =
      raw.interval == IntervalKind::unit_interval ? 2 * raw.order_N * raw.dim_d : raw.dim_d;
  raw.WB_hat = parse_matrix(member(root, "WB_hat", ""), "WB_hat", width);
  if (auto it = root.find("tolerances"); it != root.end()) parse_tolerances(*it, raw.tol);

  for (auto it = root.begin(); it != root.end(); ++it) {
    static const char* known[] = {"field", "interval", "N", "d", "P", "H", "WB_hat", "tolerances", "note"};
    if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known)) {
      fail(it.key(), "unknown key");
    }
  }
  return validate_system(raw);
}

PortHamiltonianSystem parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const PortHamiltonianSystem& sys, const std::string& note, int indent) {
  json root = json::object();
  root["field"] = std::string(to_string(sys.field()));
  root["interval"] = std::string(to_string(sys.interval()));
  root["N"] = sys.N();
  root["d"] = sys.d();
  json P = json::array();
  for (const auto& p : sys.P()) P.push_back(matrix_json(p));
  root["P"] = std::move(P);

  const HamiltonianDensity& H = sys.H();
  json h = {{"kind", std::string(to_string(H.kind()))}};
  switch (H.kind()) {
    case HamiltonianDensity::Kind::constant:
      h["data"] = matrix_json(H.samples().front());
      break;
    case HamiltonianDensity::Kind::piecewise: {
      json cells = json::array();
      for (const auto& c : H.samples()) cells.push_back(matrix_json(c));
      h["data"] = {{"breakpoints", H.breakpoints()}, {"cells", cells}};
      break;
    }
    case HamiltonianDensity::Kind::grid: {
      json samples = json::array();
      for (const auto& c : H.samples()) samples.push_back(matrix_json(c));
      h["data"] = {{"extent", H.extent()}, {"samples", samples}};
      break;
    }
  }
  root["H"] = std::move(h);
  root["WB_hat"] = matrix_json(sys.WB_hat());
  const Tolerances& t = sys.tol();
  root["tolerances"] = {{"structure", t.structure}, {"rank", t.rank}, {"psd", t.psd}, {"pd", t.pd},
                        {"v_slack", t.v_slack}};
  if (!note.empty()) root["note"] = note;
  return root.dump(indent);
}

}  // namespace phwell
