#pragma once

#include <string>
#include <vector>

namespace hexlat::app {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

struct Panel {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<Series> series;
};

/// Renders panels side by side as a standalone SVG document. Output is a
/// pure function of the input.
std::string render_svg(const std::vector<Panel>& panels, const std::string& banner);

}  // namespace hexlat::app
