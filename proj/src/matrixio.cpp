#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "moments/matrixio.hpp"

namespace moments {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

ComplexMatrix parse_matrix_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("matrix file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw Error(ErrorCode::ParseError, "matrix file must be an object with fields n and entries");
    if (!j["n"].is_number_integer()) throw Error(ErrorCode::ParseError, "field n must be an integer");
    const auto& je = j["entries"];
    if (!je.is_array()) throw Error(ErrorCode::ParseError, "field entries must be an array of [re, im] pairs");

    int n = j["n"].get<int>();
    std::vector<cplx> entries;
    entries.reserve(je.size());
    for (const auto& pair : je) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            throw Error(ErrorCode::ParseError, "each entry must be a [re, im] pair of numbers");
        entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return ComplexMatrix(n, std::move(entries));  // NonSquare / NonFiniteEntry
}

std::string matrix_to_json(const ComplexMatrix& a) {
    std::ostringstream os;
    os << "{\n  \"n\": " << a.n() << ",\n  \"entries\": [\n";
    const int n = a.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx z = a.at(i, j);
            os << "    [" << fmt17(z.real()) << ", " << fmt17(z.imag()) << "]";
            if (i != n - 1 || j != n - 1) os << ",";
            os << "\n";
        }
    os << "  ]\n}\n";
    return os.str();
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open matrix file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix_json(buf.str());
}

void write_matrix_file(const std::string& path, const ComplexMatrix& a) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open output file: " + path);
    out << matrix_to_json(a);
    if (!out) throw Error(ErrorCode::IoError, "failed writing matrix file: " + path);
}

}  // namespace moments
