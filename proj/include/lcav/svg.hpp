#pragma once

#include <string>
#include <vector>

namespace lcav {

// Minimal standalone SVG writer: heatmap cells, scatter circles, polylines.
class SvgCanvas {
public:
    SvgCanvas(double width, double height);

    void rect(double x, double y, double w, double h, const std::string& fill);
    void circle(double cx, double cy, double r, const std::string& fill);
    void polyline(const std::vector<std::pair<double, double>>& pts,
                  const std::string& stroke, double width = 1.0);
    void text(double x, double y, const std::string& s, double size = 12.0);

    void write(const std::string& path) const;

private:
    double width_, height_;
    std::vector<std::string> elements_;
};

// Two-ramp blue->white->red color for t in [0,1].
std::string heat_color(double t);

}  // namespace lcav
