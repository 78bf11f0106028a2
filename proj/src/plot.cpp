#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "moments/plot.hpp"

namespace moments {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

std::string polynomial_svg(const MomentPolynomial& poly, const SupNormResult& norm) {
    const int w = 640, h = 420;
    const double x0 = 60, x1 = 600, y0 = 370, y1 = 30;  // plot frame, y grows upward
    const int samples = 400;

    double lo = 0, hi = 0;
    std::vector<double> ys(samples + 1);
    for (int i = 0; i <= samples; ++i) {
        ys[i] = poly.eval(static_cast<double>(i) / samples);
        lo = std::min(lo, ys[i]);
        hi = std::max(hi, ys[i]);
    }
    if (hi - lo < 1e-12) hi = lo + 1;  // k=1 P-kind is identically zero
    double pad = 0.08 * (hi - lo);
    lo -= pad;
    hi += pad;

    auto px = [&](double x) { return x0 + (x1 - x0) * x; };
    auto py = [&](double y) { return y0 + (y1 - y0) * (y - lo) / (hi - lo); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    os << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << (x1 - x0) << "\" height=\""
       << (y0 - y1) << "\" fill=\"none\" stroke=\"#888\"/>\n";
    if (lo < 0 && hi > 0)
        os << "<line x1=\"" << x0 << "\" y1=\"" << num(py(0)) << "\" x2=\"" << x1 << "\" y2=\""
           << num(py(0)) << "\" stroke=\"#ccc\"/>\n";

    os << "<path fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" d=\"";
    for (int i = 0; i <= samples; ++i) {
        double x = static_cast<double>(i) / samples;
        os << (i == 0 ? "M" : "L") << num(px(x)) << " " << num(py(ys[i])) << " ";
    }
    os << "\"/>\n";

    double ax = norm.argmax, av = poly.eval(norm.argmax);
    os << "<line x1=\"" << num(px(ax)) << "\" y1=\"" << y0 << "\" x2=\"" << num(px(ax)) << "\" y2=\""
       << num(py(av)) << "\" stroke=\"#b23b1f\" stroke-dasharray=\"4 3\"/>\n";
    os << "<circle cx=\"" << num(px(ax)) << "\" cy=\"" << num(py(av))
       << "\" r=\"4\" fill=\"#b23b1f\"/>\n";

    const char* kind = poly.kind == PolyKind::P ? "p" : "q";
    os << "<text x=\"" << x0 << "\" y=\"20\" font-family=\"monospace\" font-size=\"14\">" << kind << "_"
       << poly.k << " on [0,1], sup|.| = " << num(norm.value) << " at x = " << num(norm.argmax)
       << "</text>\n";
    os << "<text x=\"" << num(x0 - 4) << "\" y=\"" << num(y0 + 14)
       << "\" font-family=\"monospace\" font-size=\"12\">0</text>\n";
    os << "<text x=\"" << num(x1 - 8) << "\" y=\"" << num(y0 + 14)
       << "\" font-family=\"monospace\" font-size=\"12\">1</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string spectrum_svg(const Spectrum& spec, const EnclosingDisc& disc) {
    const int w = 480, h = 480;
    double r = std::max(disc.radius, 1e-9);
    double span = 1.3 * r;
    for (cplx z : spec.eigenvalues) span = std::max(span, 1.15 * std::abs(z - disc.center));
    double cx = disc.center.real(), cy = disc.center.imag();

    auto px = [&](double x) { return 240 + 220 * (x - cx) / span; };
    auto py = [&](double y) { return 240 - 220 * (y - cy) / span; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    os << "<circle cx=\"" << num(px(cx)) << "\" cy=\"" << num(py(cy)) << "\" r=\""
       << num(220 * disc.radius / span) << "\" fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\"/>\n";
    os << "<path d=\"M" << num(px(cx) - 5) << " " << num(py(cy)) << " L" << num(px(cx) + 5) << " "
       << num(py(cy)) << " M" << num(px(cx)) << " " << num(py(cy) - 5) << " L" << num(px(cx)) << " "
       << num(py(cy) + 5) << "\" stroke=\"#b23b1f\"/>\n";
    for (cplx z : spec.eigenvalues)
        os << "<circle cx=\"" << num(px(z.real())) << "\" cy=\"" << num(py(z.imag()))
           << "\" r=\"3.5\" fill=\"#333\"/>\n";
    os << "<text x=\"12\" y=\"20\" font-family=\"monospace\" font-size=\"13\">center (" << num(cx) << ", "
       << num(cy) << "), radius " << num(disc.radius) << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open output file: " + path);
    out << content;
    if (!out) throw Error(ErrorCode::IoError, "failed writing: " + path);
}

}  // namespace moments
