#pragma once

#include <string>
#include <string_view>

#include "cvp/types.hpp"

namespace cvp::io {

// YAML mapping with keys labels, lagrangian, s, potential, initial_measure,
// initial_set. Syntax and type errors throw ParseError with a 1-based
// position; semantic ones come from validate_lagrangian / make_instance.
ProblemInstance parse_problem(std::string_view text);

std::string read_file(const std::string& path);

// Inverse of parse_problem up to formatting.
std::string render_problem(const ProblemInstance& inst, std::string_view comment = {});

// 17 significant digits, shortest form; -0 prints as 0, infinities as .inf.
std::string format_number(double x);

// Lower-case hex SHA-256 of the raw bytes.
std::string sha256_hex(std::string_view bytes);

// "0.5,0,1.25" -> vector; empty pieces or junk throw ParseError.
Vector parse_weight_list(std::string_view text);

}  // namespace cvp::io
