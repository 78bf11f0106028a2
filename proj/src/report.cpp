#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "moments/report.hpp"

namespace moments {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/* nlohmann's own dump() prints the shortest round-trip decimal; the documents
   promise 17 significant digits, so walk the tree and format reals here */
void dump(const ordered_json& j, std::string& out, int indent) {
    const std::string pad(static_cast<size_t>(indent) * 2, ' ');
    const std::string pad_in(static_cast<size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case ordered_json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                out += pad_in + ordered_json(it.key()).dump() + ": ";
                dump(it.value(), out, indent + 1);
                out += i + 1 < j.size() ? ",\n" : "\n";
            }
            out += pad + "}";
            return;
        }
        case ordered_json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            /* short numeric pairs inline; everything else one element a line */
            bool inline_ok = j.size() <= 2;
            for (const auto& v : j)
                if (!v.is_number()) inline_ok = false;
            if (inline_ok) {
                out += "[";
                for (size_t i = 0; i < j.size(); ++i) {
                    dump(j[i], out, indent);
                    if (i + 1 < j.size()) out += ", ";
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (size_t i = 0; i < j.size(); ++i) {
                out += pad_in;
                dump(j[i], out, indent + 1);
                out += i + 1 < j.size() ? ",\n" : "\n";
            }
            out += pad + "]";
            return;
        }
        case ordered_json::value_t::number_float: {
            double x = j.get<double>();
            if (!std::isfinite(x)) {
                out += "null";
                return;
            }
            out += fmt17(x);
            return;
        }
        default: out += j.dump(); return;
    }
}

std::string finish_document(const ordered_json& doc) {
    std::string out;
    dump(doc, out, 0);
    out += "\n";
    return out;
}

ordered_json complex_pair(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json witness_json(const MomentResult& r) {
    ordered_json w;
    if (r.discrete_witness) {
        const DiscreteState& st = *r.discrete_witness;
        w["type"] = "discrete";
        ordered_json support = ordered_json::array();
        for (cplx z : st.support) support.push_back(complex_pair(z));
        w["support"] = support;
        w["weights"] = st.weights;
    } else if (r.density_witness) {
        const ComplexMatrix& d = r.density_witness->d;
        w["type"] = "density";
        w["n"] = d.n();
        ordered_json entries = ordered_json::array();
        for (int i = 0; i < d.n(); ++i)
            for (int j = 0; j < d.n(); ++j) entries.push_back(complex_pair(d.at(i, j)));
        w["entries"] = entries;
    } else {
        w["type"] = "none";
    }
    return w;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string render_delta(const DeltaConfig& cfg, const DeltaOutcome& o) {
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "command,k,mode,matrix_class,value,upper,mean_re,mean_im,certificate,wall_time_s\n";
        os << "delta," << cfg.k << "," << (cfg.weak ? "weak" : "strong") << ","
           << matrix_class_name(o.matrix_class) << "," << fmt17(o.result.value) << ","
           << (o.upper ? fmt17(*o.upper) : std::string()) << "," << fmt17(o.result.mean.real()) << ","
           << fmt17(o.result.mean.imag()) << "," << certificate_name(o.result.certificate) << ","
           << fmt17(o.wall_time_s) << "\n";
        return os.str();
    }

    ordered_json doc;
    doc["command"] = "delta";
    ordered_json config;
    config["input"] = cfg.input;
    config["k"] = cfg.k;
    config["mode"] = cfg.weak ? "weak" : "strong";
    config["tolerance"] = cfg.tolerance;
    config["seed"] = cfg.seed;
    config["budget"] = cfg.budget;
    config["format"] = cfg.format;
    doc["config"] = config;

    ordered_json res;
    res["matrix_class"] = matrix_class_name(o.matrix_class);
    res["k"] = o.result.k;
    res["mode"] = moment_mode_name(o.result.mode);
    res["value"] = o.result.value;
    if (o.upper) {
        res["lower"] = o.result.value;
        res["upper"] = *o.upper;
    }
    res["mean"] = complex_pair(o.result.mean);
    res["raw_moment"] = complex_pair(o.result.raw_moment);
    res["witness"] = witness_json(o.result);
    res["certificate"] = certificate_name(o.result.certificate);
    res["cross_check_gap"] = o.result.cross_check_gap;
    res["flagged"] = o.result.flagged;
    res["wall_time_s"] = o.wall_time_s;
    doc["results"] = ordered_json::array({res});
    doc["version"] = kVersion;
    return finish_document(doc);
}

std::string render_dist(const DistConfig& cfg, const DistanceResult& r) {
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "command,lambda0_re,lambda0_im,distance,method\n";
        os << "dist," << fmt17(r.lambda0.real()) << "," << fmt17(r.lambda0.imag()) << ","
           << fmt17(r.distance) << ","
           << (r.method == DistanceMethod::EnclosingDisc ? "enclosing-disc" : "convex-descent") << "\n";
        return os.str();
    }

    ordered_json doc;
    doc["command"] = "dist";
    ordered_json config;
    config["input"] = cfg.input;
    config["tolerance"] = cfg.tolerance;
    config["format"] = cfg.format;
    doc["config"] = config;

    ordered_json res;
    res["lambda0"] = complex_pair(r.lambda0);
    res["distance"] = r.distance;
    res["method"] = r.method == DistanceMethod::EnclosingDisc ? "enclosing-disc" : "convex-descent";
    doc["results"] = ordered_json::array({res});
    doc["version"] = kVersion;
    return finish_document(doc);
}

std::string render_polynorm(const PolynormConfig& cfg, const MomentPolynomial& poly,
                            const SupNormResult& norm) {
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "command,k,kind,value,argmax\n";
        os << "polynorm," << cfg.k << "," << (cfg.kind == PolyKind::P ? "p" : "q") << ","
           << fmt17(norm.value) << "," << fmt17(norm.argmax) << "\n";
        return os.str();
    }

    ordered_json doc;
    doc["command"] = "polynorm";
    ordered_json config;
    config["k"] = cfg.k;
    config["kind"] = cfg.kind == PolyKind::P ? "p" : "q";
    config["format"] = cfg.format;
    doc["config"] = config;

    ordered_json res;
    res["value"] = norm.value;
    res["argmax"] = norm.argmax;
    res["coefficients"] = poly.coefficients;
    doc["results"] = ordered_json::array({res});
    doc["version"] = kVersion;
    return finish_document(doc);
}

std::string render_verify(const VerifyConfig& cfg, const std::vector<CheckReport>& reports) {
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "check_id,inputs_digest,lhs,rhs,relation,residual,tolerance,passed\n";
        for (const CheckReport& r : reports)
            os << csv_escape(r.check_id) << "," << csv_escape(r.inputs_digest) << "," << fmt17(r.lhs) << ","
               << fmt17(r.rhs) << "," << relation_name(r.relation) << "," << fmt17(r.residual) << ","
               << fmt17(r.tolerance) << "," << (r.passed ? "true" : "false") << "\n";
        return os.str();
    }

    ordered_json doc;
    doc["command"] = "verify";
    ordered_json config;
    config["suite"] = cfg.suite;
    config["seed"] = cfg.suite_config.seed;
    config["trials"] = cfg.suite_config.trials;
    config["k_list"] = cfg.suite_config.k_list;
    config["format"] = cfg.format;
    doc["config"] = config;

    ordered_json results = ordered_json::array();
    for (const CheckReport& r : reports) {
        ordered_json jr;
        jr["check_id"] = r.check_id;
        jr["inputs_digest"] = r.inputs_digest;
        jr["lhs"] = r.lhs;
        jr["rhs"] = r.rhs;
        jr["relation"] = relation_name(r.relation);
        jr["residual"] = r.residual;
        jr["tolerance"] = r.tolerance;
        jr["passed"] = r.passed;
        results.push_back(jr);
    }
    doc["results"] = results;
    doc["version"] = kVersion;
    return finish_document(doc);
}

}  // namespace moments
