#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gbvlab/coeff.hpp"

namespace gbvlab {

/// A registered coefficient family: the two-sided series coefficients c(k)
/// used by evaluation and rate machinery, plus the one-sided sequence the
/// class membership tests run on (a_n for cosine families, b_n for sine
/// families, c(n) itself for general complex families).
struct Family {
  std::string name;                  // registry name
  std::vector<double> params;
  std::string label;                 // name(params) for reports
  CoeffSeq series;
  CoeffSeq classify;
  std::optional<double> theta_hint;  // natural sector half-angle, if any
};

/// Registry names accepted by make_family and the CLI.
std::vector<std::string> family_names();

/// Build a family from its registry name and numeric parameters.
/// Throws InputError for unknown names or invalid parameters.
Family make_family(const std::string& name, const std::vector<double>& params);

/// Parse "name" or "name(p1,p2,...)".
Family parse_family(const std::string& spec);

}  // namespace gbvlab
