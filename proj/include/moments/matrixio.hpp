#pragma once

#include <string>

#include "moments/linalg.hpp"

namespace moments {

// {"n": int, "entries": [[re, im], ...]} row-major, entries length n*n.
ComplexMatrix parse_matrix_json(const std::string& text);
std::string matrix_to_json(const ComplexMatrix& a);

ComplexMatrix read_matrix_file(const std::string& path);  // IoError on unreadable path
void write_matrix_file(const std::string& path, const ComplexMatrix& a);

}  // namespace moments
