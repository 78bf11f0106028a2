#pragma once

#include <string>

#include "moments/distance.hpp"
#include "moments/linalg.hpp"
#include "moments/polynomials.hpp"

namespace moments {

// Standalone SVG: the polynomial on [0,1] with its sup-norm argmax marked.
std::string polynomial_svg(const MomentPolynomial& poly, const SupNormResult& norm);

// Standalone SVG: spectrum scatter with the minimal enclosing disc and center.
std::string spectrum_svg(const Spectrum& spec, const EnclosingDisc& disc);

void write_text_file(const std::string& path, const std::string& content);  // IoError

}  // namespace moments
