#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cvp/dependence.hpp"
#include "cvp/ivp.hpp"
#include "cvp/optimizer.hpp"
#include "cvp/types.hpp"

namespace cvp::io {

inline constexpr std::string_view kSolverName = "cvp";
inline constexpr std::string_view kSolverVersion = "1.0.0";

// Line-oriented YAML writer. Everything goes through format_number, and
// callers hand over data already in a fixed order, so equal inputs give
// equal bytes.
class ResultWriter {
 public:
  ResultWriter(std::string_view command, std::string_view digest);

  void field(std::string_view key, std::string_view raw, int indent = 0);
  void number(std::string_view key, double x, int indent = 0);
  void flag(std::string_view key, bool b, int indent = 0);
  void count(std::string_view key, std::size_t k, int indent = 0);
  void text(std::string_view key, std::string_view s, int indent = 0);
  void vector(std::string_view key, const Vector& v, int indent = 0);
  void labels(std::string_view key, const IndexSet& set, const PointSpace& space, int indent = 0);
  void vector_list(std::string_view key, const std::vector<Vector>& rows, int indent = 0);
  void text_list(std::string_view key, const std::vector<std::string>& items, int indent = 0);

  void solutions(const std::vector<SolutionRecord>& recs, const ProblemInstance& inst);

  void line(int indent, std::string_view body);
  const std::string& str() const { return out_; }

 private:
  std::string out_;
};

std::string flow_vector(const Vector& v);
std::string flow_labels(const IndexSet& set, const PointSpace& space);
std::string quote(std::string_view s);

void write_optimization(ResultWriter& w, const OptimizationResult& r, const ProblemInstance& inst, BScope scope);
void write_admissibility(ResultWriter& w, const AdmissibilityReport& r, const ProblemInstance& inst);
void write_germs(ResultWriter& w, const std::vector<SolutionGerm>& germs, const ProblemInstance& inst);

}  // namespace cvp::io
