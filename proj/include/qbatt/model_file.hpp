// model_file.hpp — plain-text model files with sections [H_S], [H_B], [V],
// [H_0], [params]; matrix rows are whitespace-separated "re,im" pairs. The
// loader validates Hermiticity, dimensions, and the equilibrium commutators
// before returning a ready-to-use model.

#pragma once

#include "qbatt/models.hpp"

#include <iosfwd>
#include <string>

namespace qbatt {

// Parse + validate. Errors carry the line number and offending field.
Model load_custom_model(std::istream& in, const std::string& origin = "<stream>");
Model load_custom_model(const std::string& path);

}  // namespace qbatt
