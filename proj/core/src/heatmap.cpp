#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "veribench/bench.hpp"
#include "veribench/eval.hpp"

namespace veribench::bench {

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace

std::string emit_heatmap(const Matrix& m, const std::array<bool, 2>& row_defined,
                         const std::string& title) {
    if (m.rows != 2 || m.cols != 2)
        throw std::invalid_argument("emit_heatmap: expected a 2x2 matrix, got " +
                                    std::to_string(m.rows) + "x" + std::to_string(m.cols));

    // Fixed geometry: labels on the top/left, 2x2 cell block, optional title
    // line underneath.
    const double x0 = 120.0, y0 = 72.0, cw = 120.0, ch = 96.0;
    const double width = x0 + 2 * cw + 24.0;
    const double height = y0 + 2 * ch + (title.empty() ? 24.0 : 48.0);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "viewBox=\"0 0 %.0f %.0f\">\n",
                  width, height, width, height);
    svg << buf;
    std::snprintf(buf, sizeof buf, "<rect width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n",
                  width, height);
    svg << buf;

    const char* font = " font-family=\"monospace\" font-size=\"14\"";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"20\" text-anchor=\"middle\"%s>predicted</text>\n",
                  x0 + cw, font);
    svg << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"18\" y=\"%.1f\" text-anchor=\"middle\" "
                  "transform=\"rotate(-90 18 %.1f)\"%s>true</text>\n",
                  y0 + ch, y0 + ch, font);
    svg << buf;

    for (int j = 0; j < 2; ++j) {
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\"%s>%s</text>\n",
                      x0 + cw * (j + 0.5), y0 - 12.0, font, eval::kClassNames[j]);
        svg << buf;
    }
    for (int i = 0; i < 2; ++i) {
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\"%s>%s</text>\n",
                      x0 - 10.0, y0 + ch * (i + 0.5) + 5.0, font, eval::kClassNames[i]);
        svg << buf;
    }

    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            double x = x0 + cw * j, y = y0 + ch * i;
            if (!row_defined[static_cast<std::size_t>(i)]) {
                std::snprintf(buf, sizeof buf,
                              "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                              "fill=\"#dddddd\" stroke=\"black\"/>\n",
                              x, y, cw, ch);
                svg << buf;
                std::snprintf(buf, sizeof buf,
                              "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\"%s "
                              "fill=\"#555555\">n/a</text>\n",
                              x + cw / 2, y + ch / 2 + 5.0, font);
                svg << buf;
                continue;
            }
            double v = std::clamp(m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)),
                                  0.0, 1.0);
            int g = static_cast<int>(std::lround(255.0 * (1.0 - v)));
            std::snprintf(buf, sizeof buf,
                          "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                          "fill=\"rgb(%d,%d,%d)\" stroke=\"black\"/>\n",
                          x, y, cw, ch, g, g, g);
            svg << buf;
            const char* ink = v > 0.5 ? "white" : "black";
            std::snprintf(buf, sizeof buf,
                          "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\"%s "
                          "fill=\"%s\">%.2f</text>\n",
                          x + cw / 2, y + ch / 2 + 5.0, font, ink, v);
            svg << buf;
        }
    }

    if (!title.empty()) {
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\"%s>",
                      x0 + cw, y0 + 2 * ch + 28.0, font);
        svg << buf << xml_escape(title) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace veribench::bench
