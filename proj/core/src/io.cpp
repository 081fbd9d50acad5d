#include "qrecov/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qrecov/error.hpp"

namespace qrecov {

using nlohmann::json;

namespace {

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("JSON: missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("JSON: field '") + key + "' has the wrong type");
  }
}

json nats_json(const Nats& n) { return n.is_infinite() ? json("inf") : json(round12(n.value())); }

json number_json(double x) {
  if (std::isfinite(x)) return json(round12(x));
  return json(format_number(x));
}

json matrix_j(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

Matrix matrix_from_j(const json& j) {
  const auto rows = get<long long>(j, "rows");
  const auto cols = get<long long>(j, "cols");
  if (rows < 0 || cols < 0) throw ShapeError("matrix: negative dimension");
  const auto re = get<std::vector<double>>(j, "re");
  std::vector<double> im;
  if (j.contains("im")) {
    im = get<std::vector<double>>(j, "im");
  } else {
    im.assign(re.size(), 0.0);
  }
  const auto count = static_cast<std::size_t>(rows * cols);
  if (re.size() != count || im.size() != count) {
    throw ShapeError("ComplexMatrix: entry count = rows x cols violated (" + std::to_string(re.size()) + " entries for " +
                     std::to_string(rows) + "x" + std::to_string(cols) + ")");
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) {
      const auto idx = static_cast<std::size_t>(i * cols + k);
      m(i, k) = Complex(re[idx], im[idx]);
    }
  }
  if (!all_finite(m)) throw ValidationError("ComplexMatrix: all entries finite violated");
  return m;
}

json channel_j(const QuantumMap& map) {
  json ks = json::array();
  for (const auto& k : map.kraus()) ks.push_back(matrix_j(k));
  return json{{"in", map.in_dim()}, {"out", map.out_dim()}, {"kraus", ks}};
}

QuantumMap channel_from_j(const json& j) {
  const auto in = get<std::size_t>(j, "in");
  const auto out = get<std::size_t>(j, "out");
  const auto& arr = field(j, "kraus");
  if (!arr.is_array() || arr.empty()) throw ValidationError("channel: 'kraus' must be a non-empty array");
  std::vector<Matrix> ks;
  for (const auto& k : arr) ks.push_back(matrix_from_j(k));
  QuantumMap map(std::move(ks));
  if (map.in_dim() != in || map.out_dim() != out) throw ShapeError("channel: Kraus shapes disagree with in/out");
  return map;
}

CompositeLabels labels_for(const Matrix& m, const std::vector<std::size_t>& dims) {
  if (dims.empty()) return CompositeLabels::anonymous({static_cast<std::size_t>(m.rows())});
  return CompositeLabels::anonymous(dims);
}

json ensemble_j(const Ensemble& e) {
  json members = json::array();
  for (const auto& m : e.members) members.push_back(matrix_j(m));
  return json{{"probs", e.probs}, {"members", members}};
}

Ensemble ensemble_from_j(const json& j) {
  auto probs = get<std::vector<double>>(j, "probs");
  std::vector<Matrix> members;
  for (const auto& m : field(j, "members")) members.push_back(matrix_from_j(m));
  return Ensemble(std::move(probs), std::move(members));
}

json bound_j(const BoundCheck& b, bool include_trace) {
  json j{{"kind", to_string(b.kind)},
         {"bound", nats_json(b.bound)},
         {"witness_t", number_json(b.witness_t)},
         {"deficit", number_json(b.deficit)},
         {"verdict", to_string(b.verdict)},
         {"t0_witnesses", b.t0_witnesses},
         {"escalated", b.escalated}};
  if (include_trace) {
    json trace = json::array();
    for (const auto& s : b.trace) trace.push_back(json::array({number_json(s.t), number_json(s.value)}));
    j["t_trace"] = trace;
  }
  return j;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  std::string s(buf, res.ptr);
  // Trim trailing zeros of the mantissa so equal values print identically.
  const auto e = s.find_first_of("eE");
  std::string mant = s.substr(0, e);
  const std::string expo = e == std::string::npos ? "" : s.substr(e);
  if (mant.find('.') != std::string::npos) {
    while (!mant.empty() && mant.back() == '0') mant.pop_back();
    if (!mant.empty() && mant.back() == '.') mant.pop_back();
  }
  return mant + expo;
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  if (x == 0.0) return 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 11);
  double out = 0.0;
  std::from_chars(buf, res.ptr, out, std::chars_format::scientific);
  return out;
}

std::string matrix_to_json(const Matrix& m) { return matrix_j(m).dump(); }

Matrix matrix_from_json(std::string_view text) { return matrix_from_j(parse(text)); }

std::string channel_to_json(const QuantumMap& map) { return channel_j(map).dump(); }

QuantumMap channel_from_json(std::string_view text) { return channel_from_j(parse(text)); }

std::string recovery_to_json(const RecoveryMap& map) {
  json j = channel_j(map.base);
  j["provenance"] = to_string(map.provenance);
  j["t"] = map.t;
  return j.dump();
}

RecoveryMap recovery_from_json(std::string_view text) {
  const json j = parse(text);
  return RecoveryMap{channel_from_j(j), get<double>(j, "t"), provenance_from_string(get<std::string>(j, "provenance"))};
}

DensityOperator density_from_json(std::string_view text, const std::vector<std::size_t>& dims) {
  const Matrix m = matrix_from_json(text);
  return DensityOperator(labels_for(m, dims), m);
}

PsdOperator psd_from_json(std::string_view text, const std::vector<std::size_t>& dims) {
  const Matrix m = matrix_from_json(text);
  return PsdOperator(labels_for(m, dims), m);
}

std::string report_to_json(const CheckReport& r, bool include_trace) {
  json j{{"case", r.case_name},
         {"seed", r.seed},
         {"dims", r.dims},
         {"interpretation", r.interpretation},
         {"delta", nats_json(r.delta)},
         {"bound_kind", to_string(r.primary.kind)},
         {"bound", nats_json(r.primary.bound)},
         {"witness_t", number_json(r.primary.witness_t)},
         {"deficit", number_json(r.primary.deficit)},
         {"verdict", to_string(r.verdict)},
         {"t0_witnesses", r.primary.t0_witnesses},
         {"escalated", r.primary.escalated}};
  if (r.secondary) j["secondary"] = bound_j(*r.secondary, false);
  json audits = json::array();
  for (const auto& a : r.audits) {
    audits.push_back(json{{"name", a.name},
                          {"value", number_json(a.value)},
                          {"tolerance", number_json(a.tolerance)},
                          {"passed", a.passed}});
  }
  j["audits"] = audits;
  if (include_trace) {
    json trace = json::array();
    for (const auto& s : r.primary.trace) trace.push_back(json::array({number_json(s.t), number_json(s.value)}));
    j["t_trace"] = trace;
  }
  return j.dump(2);
}

std::string instance_to_json(const Instance& inst, std::uint64_t seed) {
  json j{{"case", to_string(inst.tag)},
         {"seed", seed},
         {"dims", inst.dims},
         {"labels", json{{"names", inst.rho.labels().names()}, {"dims", inst.rho.labels().dims()}}},
         {"interpretation", inst.interpretation},
         {"rho", matrix_j(inst.rho.matrix())}};
  if (inst.sigma) j["sigma"] = matrix_j(inst.sigma->matrix());
  if (inst.channel) j["channel"] = channel_j(*inst.channel);
  if (inst.ensemble) j["ensemble"] = ensemble_j(*inst.ensemble);
  if (inst.sigma_ensemble) j["sigma_ensemble"] = ensemble_j(*inst.sigma_ensemble);
  if (inst.measurement) {
    const auto& vs = inst.measurement->vectors();
    Matrix cols(inst.measurement->dim(), static_cast<Index>(vs.size()));
    for (std::size_t x = 0; x < vs.size(); ++x) cols.col(static_cast<Index>(x)) = vs[x];
    j["measurement"] = matrix_j(cols);
  }
  return j.dump(1);
}

Instance instance_from_json(std::string_view text, std::uint64_t* seed) {
  const json j = parse(text);
  const CaseTag tag = case_from_string(get<std::string>(j, "case"));
  if (seed) *seed = j.contains("seed") ? get<std::uint64_t>(j, "seed") : 0;
  const auto dims = j.contains("dims") ? get<std::vector<std::size_t>>(j, "dims") : std::vector<std::size_t>{};
  const Matrix rho_m = matrix_from_j(field(j, "rho"));
  CompositeLabels labels = labels_for(rho_m, {});
  if (j.contains("labels")) {
    const auto& l = j.at("labels");
    labels = CompositeLabels(get<std::vector<std::string>>(l, "names"), get<std::vector<std::size_t>>(l, "dims"));
  }
  Instance inst{tag, dims, DensityOperator(labels, rho_m), {}, {}, {}, {}, {}, {}, {}};
  if (j.contains("interpretation")) inst.interpretation = get<std::string>(j, "interpretation");
  if (j.contains("sigma")) inst.sigma = PsdOperator(labels, matrix_from_j(j.at("sigma")));
  if (j.contains("channel")) inst.channel = channel_from_j(j.at("channel"));
  if (j.contains("ensemble")) inst.ensemble = ensemble_from_j(j.at("ensemble"));
  if (j.contains("sigma_ensemble")) inst.sigma_ensemble = ensemble_from_j(j.at("sigma_ensemble"));
  if (j.contains("measurement")) {
    inst.measurement = RankOneMeasurement::from_columns(matrix_from_j(j.at("measurement")));
    inst.rho_a = inst.rho.marginal({0});
  }
  return inst;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace qrecov
