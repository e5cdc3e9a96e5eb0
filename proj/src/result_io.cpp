#include "cvp/result_io.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "cvp/problem_io.hpp"

namespace cvp::io {

std::string quote(std::string_view s) {
  YAML::Emitter e;
  e << YAML::DoubleQuoted << std::string(s);
  return e.c_str();
}

std::string flow_vector(const Vector& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_number(v(i));
  }
  return out + "]";
}

std::string flow_labels(const IndexSet& set, const PointSpace& space) {
  std::string out = "[";
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (k) out += ", ";
    out += quote(space.label(set[k]));
  }
  return out + "]";
}

ResultWriter::ResultWriter(std::string_view command, std::string_view digest) {
  field("solver", quote(fmt::format("{} {}", kSolverName, kSolverVersion)));
  field("command", quote(command));
  if (!digest.empty()) field("instance_sha256", quote(digest));
}

void ResultWriter::line(int indent, std::string_view body) {
  out_.append(static_cast<std::size_t>(indent) * 2, ' ');
  out_ += body;
  out_ += '\n';
}

void ResultWriter::field(std::string_view key, std::string_view raw, int indent) {
  line(indent, raw.empty() ? fmt::format("{}:", key) : fmt::format("{}: {}", key, raw));
}

void ResultWriter::number(std::string_view key, double x, int indent) { field(key, format_number(x), indent); }
void ResultWriter::flag(std::string_view key, bool b, int indent) { field(key, b ? "true" : "false", indent); }
void ResultWriter::count(std::string_view key, std::size_t k, int indent) { field(key, std::to_string(k), indent); }
void ResultWriter::text(std::string_view key, std::string_view s, int indent) { field(key, quote(s), indent); }
void ResultWriter::vector(std::string_view key, const Vector& v, int indent) { field(key, flow_vector(v), indent); }

void ResultWriter::labels(std::string_view key, const IndexSet& set, const PointSpace& space, int indent) {
  field(key, flow_labels(set, space), indent);
}

void ResultWriter::vector_list(std::string_view key, const std::vector<Vector>& rows, int indent) {
  if (rows.empty()) return field(key, "[]", indent);
  field(key, "", indent);
  for (const auto& r : rows) line(indent + 1, "- " + flow_vector(r));
}

void ResultWriter::text_list(std::string_view key, const std::vector<std::string>& items, int indent) {
  if (items.empty()) return field(key, "[]", indent);
  field(key, "", indent);
  for (const auto& s : items) line(indent + 1, "- " + quote(s));
}

void ResultWriter::solutions(const std::vector<SolutionRecord>& recs, const ProblemInstance& inst) {
  if (recs.empty()) return field("solutions", "[]");
  field("solutions", "");
  for (const auto& r : recs) {
    line(1, "- support: " + flow_labels(r.rho.support(), inst.space));
    vector("rho", r.rho.weights(), 2);
    vector("phi", r.phi.values(), 2);
    number("action", r.action, 2);
    number("el_sup_residual", r.el_sup_residual, 2);
    number("psd_min_eigenvalue", r.psd_min_eigenvalue, 2);
    count("degeneracy_dim", r.degeneracy_dim, 2);
    flag("certified", r.certified_global, 2);
    std::vector<Vector> cols;
    for (Eigen::Index c = 0; c < r.family_basis.cols(); ++c) cols.push_back(r.family_basis.col(c));
    vector_list("family_basis", cols, 2);
  }
}

void write_optimization(ResultWriter& w, const OptimizationResult& r, const ProblemInstance& inst, BScope scope) {
  w.field("problem", std::string(1, problem_tag(r.problem)));
  if (r.problem == OptProblem::B) w.field("b_scope", scope == BScope::Space ? "space" : "support");
  w.number("optimum", r.optimum);
  w.flag("unique", r.unique);
  w.field("family", "");
  w.count("dim", r.family_dim, 1);
  w.vector_list("vertices", r.family_vertices, 1);
  std::vector<Vector> cols;
  for (Eigen::Index c = 0; c < r.family_basis.cols(); ++c) cols.push_back(r.family_basis.col(c));
  w.vector_list("basis", cols, 1);
  if (r.free_potentials.empty()) {
    w.field("free_potentials", "[]");
  } else {
    w.field("free_potentials", "");
    for (const auto& p : r.free_potentials)
      w.line(1, fmt::format("- {{label: {}, lo: {}, hi: {}}}", quote(inst.space.label(p.index)),
                            format_number(p.lo), format_number(p.hi)));
  }
  w.count("dropped_unverified", r.dropped_unverified);
  w.text_list("notes", r.notes);
  w.solutions(r.solutions, inst);
}

void write_admissibility(ResultWriter& w, const AdmissibilityReport& r, const ProblemInstance& inst) {
  w.flag("admissible", r.admissible);
  w.number("lrho0_max", r.lrho0_max);
  w.number("psd_min_eigenvalue", r.psd_min_eig);
  if (r.violating_index) w.text("violating_point", inst.space.label(*r.violating_index));
}

void write_germs(ResultWriter& w, const std::vector<SolutionGerm>& germs, const ProblemInstance& inst) {
  if (germs.empty()) return w.field("germs", "[]");
  w.field("germs", "");
  for (const auto& g : germs) {
    w.field("- subset", flow_labels(g.subset, inst.space), 1);
    w.vector("rho", g.rho.weights(), 2);
    w.number("volume", g.volume, 2);
  }
}

}  // namespace cvp::io
