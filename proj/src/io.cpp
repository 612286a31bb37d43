#include "multiband/io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace multiband::io {

namespace {

const json& field(const json& obj, const char* name) {
  if (!obj.is_object()) throw ParseError("expected a JSON object");
  auto it = obj.find(name);
  if (it == obj.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

template <typename T>
T as(const json& v, const std::string& what) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ParseError("field " + what + " has the wrong type");
  }
}

double as_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ParseError("field " + what + " must be a number");
  return v.get<double>();
}

std::size_t as_index(const json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError("field " + what + " must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::vector<double> as_vector(const json& v, const std::string& what) {
  if (!v.is_array()) throw ParseError("field " + what + " must be an array");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(as_number(e, what));
  return out;
}

int band_key(const std::string& key) {
  std::size_t used = 0;
  int k = 0;
  try {
    k = std::stoi(key, &used);
  } catch (const std::exception&) {
    throw ParseError("band key \"" + key + "\" is not an integer");
  }
  if (used != key.size()) throw ParseError("band key \"" + key + "\" is not an integer");
  return k;
}

std::map<int, double> band_map(const json& v, const std::string& what) {
  if (!v.is_object()) throw ParseError("field " + what + " must be an object keyed by band");
  std::map<int, double> out;
  for (auto it = v.begin(); it != v.end(); ++it) out[band_key(it.key())] = as_number(it.value(), what);
  return out;
}

// Missing l entries are 0, missing u entries are `n`.
BandBounds bounds_from(const json& l, const json& u, int k_minus, int k_plus, int n,
                       const std::string& what) {
  BandBounds b;
  b.lower.assign(k_plus - k_minus + 1, 0);
  b.upper.assign(k_plus - k_minus + 1, n);
  auto fill = [&](const json& src, std::vector<int>& dst, const std::string& name) {
    for (const auto& [k, v] : band_map(src, what + "." + name)) {
      if (k < k_minus || k > k_plus) throw InvalidInstance(what + "." + name + " names band " + std::to_string(k) + " outside [K_minus, K_plus]");
      if (v != std::floor(v)) throw ParseError(what + "." + name + " entries must be integers");
      dst[k - k_minus] = static_cast<int>(v);
    }
  };
  fill(l, b.lower, "l");
  fill(u, b.upper, "u");
  return b;
}

json band_json(const std::vector<int>& values, int k_minus) {
  json out = json::object();
  for (std::size_t o = 0; o < values.size(); ++o) out[std::to_string(static_cast<int>(o) + k_minus)] = values[o];
  return out;
}

}  // namespace

json number(double v) {
  if (v == 0.0) return 0;
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) return static_cast<long long>(v);
  return v;
}

json numbers(const std::vector<double>& v) {
  json out = json::array();
  for (double e : v) out.push_back(number(e));
  return out;
}

double reported_value(const NominalProblem& prob, double internal_value) {
  return (prob.sense == Sense::kMinimize ? -internal_value : internal_value) + 0.0;
}

Instance parse_instance(const json& doc) {
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  Instance inst;
  NominalProblem& p = inst.problem;
  if (auto it = doc.find("sense"); it != doc.end()) {
    const auto s = as<std::string>(*it, "sense");
    if (s == "min") {
      p.sense = Sense::kMinimize;
    } else if (s != "max") {
      throw ParseError("sense must be \"max\" or \"min\"");
    }
  }
  p.c = as_vector(field(doc, "c"), "c");
  const json& A = field(doc, "A");
  if (!A.is_array()) throw ParseError("field A must be an array of rows");
  for (const auto& row : A) p.a.push_back(as_vector(row, "A"));
  p.b = as_vector(field(doc, "b"), "b");
  const std::size_t n = p.c.size();
  const std::size_t m = p.b.size();
  if (auto it = doc.find("n"); it != doc.end() && as_index(*it, "n") != n) {
    throw InvalidInstance("n = " + std::to_string(as_index(*it, "n")) + " but c has " + std::to_string(n) + " entries");
  }
  if (auto it = doc.find("m"); it != doc.end() && as_index(*it, "m") != m) {
    throw InvalidInstance("m = " + std::to_string(as_index(*it, "m")) + " but b has " + std::to_string(m) + " entries");
  }
  if (p.sense == Sense::kMinimize) {
    for (double& c : p.c) c = -c;
  }
  p.integer.assign(n, false);
  p.free.assign(n, false);
  auto mark = [&](const char* name, std::vector<bool>& mask) {
    auto it = doc.find(name);
    if (it == doc.end()) return;
    if (!it->is_array()) throw ParseError(std::string("field ") + name + " must be an array");
    for (const auto& e : *it) {
      const std::size_t j = as_index(e, name);
      if (j >= n) throw InvalidInstance(std::string(name) + " index " + std::to_string(j) + " out of range");
      mask[j] = true;
    }
  };
  mark("int_vars", p.integer);
  mark("free_vars", p.free);
  p.check_dimensions();

  const int nn = static_cast<int>(n);
  if (auto it = doc.find("bands"); it == doc.end()) {
    inst.scheme = BandScheme(0, 0, BandBounds{{0}, {nn}});
  } else {
    const json& bands = *it;
    const int km = as<int>(field(bands, "K_minus"), "K_minus");
    const int kp = as<int>(field(bands, "K_plus"), "K_plus");
    if (km > 0 || kp < 0) throw InvalidInstance("K_minus must be <= 0 and K_plus >= 0");
    const json empty = json::object();
    const json& l = bands.contains("l") ? bands["l"] : empty;
    const json& u = bands.contains("u") ? bands["u"] : empty;
    inst.scheme = BandScheme(km, kp, bounds_from(l, u, km, kp, nn, "bands"));
    if (auto dv = bands.find("dev"); dv != bands.end()) {
      if (!dv->is_array()) throw ParseError("bands.dev must be an array");
      for (const auto& e : *dv) {
        const std::size_t i = as_index(field(e, "i"), "dev.i");
        const std::size_t j = as_index(field(e, "j"), "dev.j");
        if (i >= m || j >= n) throw InvalidInstance("dev entry (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
        if (inst.scheme.is_uncertain(i, j)) throw InvalidInstance("duplicate dev entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
        const auto d = band_map(field(e, "d"), "dev.d");
        if (d.count(0)) throw InvalidInstance("dev entries must not list band 0 (d^0 = 0 is implicit)");
        for (const auto& [k, v] : d) {
          if (k < km || k > kp) throw InvalidInstance("dev entry names band " + std::to_string(k) + " outside [K_minus, K_plus]");
        }
        for (int k = km; k <= kp; ++k) {
          if (k != 0 && !d.count(k)) {
            throw InvalidInstance("dev entry (" + std::to_string(i) + "," + std::to_string(j) + ") lacks band " + std::to_string(k));
          }
        }
        inst.scheme.set_thresholds(i, j, d);
      }
    }
    if (auto rb = bands.find("row_bounds"); rb != bands.end()) {
      if (!rb->is_array()) throw ParseError("bands.row_bounds must be an array");
      for (const auto& e : *rb) {
        const std::size_t i = as_index(field(e, "i"), "row_bounds.i");
        if (i >= m) throw InvalidInstance("row_bounds row out of range");
        const json& rl = e.contains("l") ? e["l"] : empty;
        const json& ru = e.contains("u") ? e["u"] : empty;
        inst.scheme.set_row_bounds(i, bounds_from(rl, ru, km, kp, nn, "row_bounds"));
      }
    }
  }

  if (auto it = doc.find("samples"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("samples must be an array");
    for (const auto& e : *it) {
      const std::size_t i = as_index(field(e, "i"), "samples.i");
      const std::size_t j = as_index(field(e, "j"), "samples.j");
      if (i >= m || j >= n) throw InvalidInstance("samples entry out of range");
      auto values = as_vector(field(e, "values"), "samples.values");
      if (values.empty()) throw InvalidInstance("samples entry without values");
      inst.samples.values[{i, j}] = std::move(values);
      if (auto b = e.find("beta"); b != e.end()) inst.samples.beta[{i, j}] = as_number(*b, "samples.beta");
    }
  }
  return inst;
}

Instance parse_instance_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  return parse_instance(doc);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance_text(ss.str());
}

json to_json(const NominalProblem& prob, const BandScheme& scheme) {
  json doc;
  const bool minimize = prob.sense == Sense::kMinimize;
  doc["sense"] = minimize ? "min" : "max";
  doc["n"] = prob.num_vars();
  doc["m"] = prob.num_rows();
  std::vector<double> c = prob.c;
  if (minimize) {
    for (double& v : c) v = -v;
  }
  doc["c"] = numbers(c);
  doc["A"] = json::array();
  for (const auto& row : prob.a) doc["A"].push_back(numbers(row));
  doc["b"] = numbers(prob.b);
  json ints = json::array();
  json frees = json::array();
  for (std::size_t j = 0; j < prob.num_vars(); ++j) {
    if (prob.is_integer(j)) ints.push_back(j);
    if (prob.is_free(j)) frees.push_back(j);
  }
  doc["int_vars"] = ints;
  if (!frees.empty()) doc["free_vars"] = frees;

  json bands;
  bands["K_minus"] = scheme.k_minus();
  bands["K_plus"] = scheme.k_plus();
  bands["l"] = band_json(scheme.shared_bounds().lower, scheme.k_minus());
  bands["u"] = band_json(scheme.shared_bounds().upper, scheme.k_minus());
  json dev = json::array();
  for (const auto& [ij, d] : scheme.all_thresholds()) {
    json dd = json::object();
    for (std::size_t o = 0; o < d.size(); ++o) {
      const int k = scheme.band(o);
      if (k != 0) dd[std::to_string(k)] = number(d[o]);
    }
    dev.push_back({{"i", ij.first}, {"j", ij.second}, {"d", dd}});
  }
  bands["dev"] = dev;
  if (!scheme.row_overrides().empty()) {
    json rb = json::array();
    for (const auto& [i, bb] : scheme.row_overrides()) {
      rb.push_back({{"i", i}, {"l", band_json(bb.lower, scheme.k_minus())}, {"u", band_json(bb.upper, scheme.k_minus())}});
    }
    bands["row_bounds"] = rb;
  }
  doc["bands"] = bands;
  return doc;
}

json to_json(const Instance& inst) {
  json doc = to_json(inst.problem, inst.scheme);
  if (!inst.samples.values.empty()) {
    json s = json::array();
    for (const auto& [key, values] : inst.samples.values) {
      json e = {{"i", key.i}, {"j", key.j}, {"values", numbers(values)}};
      if (auto it = inst.samples.beta.find(key); it != inst.samples.beta.end()) e["beta"] = it->second;
      s.push_back(e);
    }
    doc["samples"] = s;
  }
  return doc;
}

BinaryInstance parse_binary_instance(const json& doc, OracleKind kind) {
  if (!doc.is_object()) throw ParseError("binary instance must be a JSON object");
  BinaryInstance out;
  auto& prob = out.problem;
  std::vector<std::map<int, double>> dev;
  if (kind == OracleKind::kExplicit) {
    prob.cost = as_vector(field(doc, "c"), "c");
    const json& d = field(doc, "d");
    if (!d.is_array()) throw ParseError("field d must be an array");
    for (const auto& e : d) dev.push_back(band_map(e, "d"));
    const json& pts = field(doc, "points");
    if (!pts.is_array()) throw ParseError("field points must be an array");
    for (const auto& p : pts) out.points.push_back(as_vector(p, "points"));
    if (dev.size() != prob.cost.size()) throw InvalidInstance("c and d differ in length");
  } else {
    out.graph.num_nodes = as_index(field(doc, "nodes"), "nodes");
    const json& edges = field(doc, "edges");
    if (!edges.is_array()) throw ParseError("field edges must be an array");
    for (const auto& e : edges) {
      out.graph.edges.push_back({as_index(field(e, "u"), "edges.u"), as_index(field(e, "v"), "edges.v")});
      prob.cost.push_back(as_number(field(e, "c"), "edges.c"));
      dev.push_back(e.contains("d") ? band_map(e["d"], "edges.d") : std::map<int, double>{});
    }
    if (kind == OracleKind::kShortestPath) {
      out.source = as_index(field(doc, "source"), "source");
      out.target = as_index(field(doc, "target"), "target");
    }
  }
  const std::size_t n = prob.cost.size();
  const json& bands = field(doc, "bands");
  const int kp = as<int>(field(bands, "K_plus"), "bands.K_plus");
  if (bands.contains("K_minus") && as<int>(bands["K_minus"], "bands.K_minus") != 0) {
    throw InvalidInstance("cost-uncertain binary programs use bands 0..K_plus only");
  }
  if (kp < 0) throw InvalidInstance("K_plus must be >= 0");
  const json empty = json::object();
  prob.bounds = bounds_from(bands.contains("l") ? bands["l"] : empty, bands.contains("u") ? bands["u"] : empty,
                            0, kp, static_cast<int>(n), "bands");
  prob.thresholds.assign(n, std::vector<double>(kp + 1, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [k, v] : dev[j]) {
      if (k <= 0 || k > kp) throw InvalidInstance("element " + std::to_string(j) + " names band " + std::to_string(k));
      prob.thresholds[j][k] = v;
    }
    for (int k = 1; k <= kp; ++k) {
      if (!dev[j].count(k)) throw InvalidInstance("element " + std::to_string(j) + " lacks band " + std::to_string(k));
    }
  }
  return out;
}

}  // namespace multiband::io
