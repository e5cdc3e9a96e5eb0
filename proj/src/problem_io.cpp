#include "cvp/problem_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include "cvp/core_model.hpp"

namespace cvp::io {

namespace {

[[noreturn]] void fail(const YAML::Mark& m, const std::string& field, const std::string& what) {
  // yaml-cpp marks are 0-based and -1 for synthesized nodes.
  const int line = m.line < 0 ? 0 : m.line + 1;
  const int col = m.column < 0 ? 0 : m.column + 1;
  throw ParseError(line, col, field, fmt::format("{}:{}: {}: {}", line, col, field, what));
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

double number(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) fail(node.Mark(), field, "expected a number");
  auto v = to_double(node.Scalar());
  if (!v) fail(node.Mark(), field, fmt::format("'{}' is not a finite decimal number", node.Scalar()));
  return *v;
}

Vector number_list(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence()) fail(node.Mark(), field, "expected a list of numbers");
  Vector v(static_cast<Eigen::Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = number(node[i], fmt::format("{}[{}]", field, i));
  return v;
}

void expect_length(const YAML::Node& node, std::size_t n, const std::string& field) {
  if (node.size() != n)
    fail(node.Mark(), field, fmt::format("has {} entries, expected {} (one per label)", node.size(), n));
}

}  // namespace

ProblemInstance parse_problem(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    fail(e.mark, "<document>", e.msg);
  }
  if (!root.IsMap()) fail(root.Mark(), "<document>", "expected a mapping at top level");

  static const std::set<std::string> known{"labels", "lagrangian", "s", "potential", "initial_measure",
                                           "initial_set"};
  for (const auto& kv : root) {
    const auto key = kv.first.Scalar();
    if (!known.count(key)) fail(kv.first.Mark(), key, "unknown field");
  }

  const YAML::Node labels_node = root["labels"];
  if (!labels_node) fail(root.Mark(), "labels", "missing");
  if (!labels_node.IsSequence()) fail(labels_node.Mark(), "labels", "expected a list of strings");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < labels_node.size(); ++i) {
    if (!labels_node[i].IsScalar()) fail(labels_node[i].Mark(), fmt::format("labels[{}]", i), "expected a string");
    labels.push_back(labels_node[i].Scalar());
  }
  const std::size_t n = labels.size();

  const YAML::Node lag = root["lagrangian"];
  if (!lag) fail(root.Mark(), "lagrangian", "missing");
  if (!lag.IsSequence()) fail(lag.Mark(), "lagrangian", "expected a list of rows");
  expect_length(lag, n, "lagrangian");
  Matrix L(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string f = fmt::format("lagrangian[{}]", i);
    const Vector row = number_list(lag[i], f);
    expect_length(lag[i], n, f);
    L.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }

  double s = 1.0;
  if (const YAML::Node sn = root["s"]) s = number(sn, "s");

  std::optional<Potential> phi;
  if (const YAML::Node pn = root["potential"]) {
    expect_length(pn, n, "potential");
    phi = Potential(number_list(pn, "potential"));
  }

  std::optional<InitialData> init;
  const YAML::Node mn = root["initial_measure"];
  const YAML::Node in = root["initial_set"];
  if (mn || in) {
    InitialData d = InitialData::empty(n);
    if (mn) {
      expect_length(mn, n, "initial_measure");
      d.rho0 = Measure(number_list(mn, "initial_measure"));
    }
    if (in) {
      if (!in.IsSequence()) fail(in.Mark(), "initial_set", "expected a list of labels");
      for (std::size_t i = 0; i < in.size(); ++i) {
        const std::string f = fmt::format("initial_set[{}]", i);
        if (!in[i].IsScalar()) fail(in[i].Mark(), f, "expected a label");
        auto it = std::find(labels.begin(), labels.end(), in[i].Scalar());
        if (it == labels.end()) fail(in[i].Mark(), f, fmt::format("unknown label '{}'", in[i].Scalar()));
        d.I0.push_back(static_cast<std::size_t>(it - labels.begin()));
      }
      std::sort(d.I0.begin(), d.I0.end());
      d.I0.erase(std::unique(d.I0.begin(), d.I0.end()), d.I0.end());
    }
    init = std::move(d);
  }

  return make_instance(PointSpace(std::move(labels)), validate_lagrangian(L), s, std::move(phi), std::move(init));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_number(double x) {
  if (std::isnan(x)) return ".nan";
  if (std::isinf(x)) return x > 0 ? ".inf" : "-.inf";
  if (x == 0.0) return "0";
  return fmt::format("{:.17g}", x);
}

namespace {

std::string quoted(const std::string& s) {
  YAML::Emitter e;
  e << YAML::DoubleQuoted << s;
  return e.c_str();
}

std::string flow(const Vector& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_number(v(i));
  }
  return out + "]";
}

}  // namespace

std::string render_problem(const ProblemInstance& inst, std::string_view comment) {
  std::string out;
  if (!comment.empty()) out += fmt::format("# {}\n", comment);
  out += "labels: [";
  for (std::size_t i = 0; i < inst.n(); ++i) out += (i ? ", " : "") + quoted(inst.space.label(i));
  out += "]\nlagrangian:\n";
  for (Eigen::Index i = 0; i < inst.L().rows(); ++i) out += "  - " + flow(inst.L().row(i).transpose()) + "\n";
  out += "s: " + format_number(inst.s) + "\n";
  if (inst.potential) out += "potential: " + flow(inst.potential->values()) + "\n";
  if (inst.initial) {
    out += "initial_measure: " + flow(inst.initial->rho0.weights()) + "\n";
    out += "initial_set: [";
    for (std::size_t k = 0; k < inst.initial->I0.size(); ++k)
      out += (k ? ", " : "") + quoted(inst.space.label(inst.initial->I0[k]));
    out += "]\n";
  }
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::NumericalFailure, "SHA-256 failed");
  std::string out;
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", md[i]);
  return out;
}

Vector parse_weight_list(std::string_view text) {
  std::vector<double> vals;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view piece = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    auto v = to_double(piece);
    if (!v)
      throw ParseError(1, static_cast<int>(pos) + 1, fmt::format("measure[{}]", vals.size()),
                       fmt::format("'{}' is not a finite decimal number", piece));
    vals.push_back(*v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

}  // namespace cvp::io
