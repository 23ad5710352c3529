#include "lcav/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lcav {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

SvgCanvas::SvgCanvas(double width, double height) : width_(width), height_(height) {}

void SvgCanvas::rect(double x, double y, double w, double h, const std::string& fill) {
    elements_.push_back("<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" +
                        num(w) + "\" height=\"" + num(h) + "\" fill=\"" + fill + "\"/>");
}

void SvgCanvas::circle(double cx, double cy, double r, const std::string& fill) {
    elements_.push_back("<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" +
                        num(r) + "\" fill=\"" + fill + "\"/>");
}

void SvgCanvas::polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& stroke, double width) {
    std::string d = "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
                    num(width) + "\" points=\"";
    for (const auto& [x, y] : pts) d += num(x) + "," + num(y) + " ";
    d += "\"/>";
    elements_.push_back(d);
}

void SvgCanvas::text(double x, double y, const std::string& s, double size) {
    elements_.push_back("<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" +
                        num(size) + "\" font-family=\"sans-serif\">" + s + "</text>");
}

void SvgCanvas::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_)
        << "\" height=\"" << num(height_) << "\" viewBox=\"0 0 " << num(width_) << " "
        << num(height_) << "\">\n";
    for (const auto& e : elements_) out << e << "\n";
    out << "</svg>\n";
}

std::string heat_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const auto channel = [](double v) {
        return std::to_string(static_cast<int>(std::lround(255.0 * std::clamp(v, 0.0, 1.0))));
    };
    // blue (0) -> white (1/2) -> red (1)
    const double r = t <= 0.5 ? 2.0 * t : 1.0;
    const double g = t <= 0.5 ? 2.0 * t : 2.0 * (1.0 - t);
    const double b = t <= 0.5 ? 1.0 : 2.0 * (1.0 - t);
    return "rgb(" + channel(r) + "," + channel(g) + "," + channel(b) + ")";
}

}  // namespace lcav
