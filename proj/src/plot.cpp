#include "arclust/plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "arclust/io.hpp"

namespace arclust {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
constexpr int kPaletteSize = 10;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

void emit_marker(std::ostringstream& os, int shape, double x, double y, double r,
                 const std::string& fill) {
    switch (shape % 4) {
        case 0:
            os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(r)
               << "\" fill=\"" << fill << "\"/>\n";
            break;
        case 1:
            os << "<rect x=\"" << fmt(x - r) << "\" y=\"" << fmt(y - r) << "\" width=\""
               << fmt(2 * r) << "\" height=\"" << fmt(2 * r) << "\" fill=\"" << fill
               << "\"/>\n";
            break;
        case 2:
            os << "<polygon points=\"" << fmt(x) << "," << fmt(y - r) << " " << fmt(x - r)
               << "," << fmt(y + r) << " " << fmt(x + r) << "," << fmt(y + r)
               << "\" fill=\"" << fill << "\"/>\n";
            break;
        default:
            os << "<polygon points=\"" << fmt(x) << "," << fmt(y - r) << " " << fmt(x + r)
               << "," << fmt(y) << " " << fmt(x) << "," << fmt(y + r) << " " << fmt(x - r)
               << "," << fmt(y) << "\" fill=\"" << fill << "\"/>\n";
    }
}

}  // namespace

std::string scatter_svg(const Eigen::MatrixXd& coords, const std::vector<int>& labels,
                        int k, const std::vector<int>& class_of, int q,
                        const PlotOptions& options) {
    const Eigen::Index n = coords.rows();
    if (coords.cols() != 2) throw std::invalid_argument("scatter_svg: coordinates must be 2-d");
    if (n == 0 || labels.empty()) throw std::invalid_argument("scatter_svg: empty partition");
    if (static_cast<Eigen::Index>(labels.size()) != n ||
        static_cast<Eigen::Index>(class_of.size()) != n)
        throw std::invalid_argument("scatter_svg: labels/classes size mismatch");
    if (k < 1 || q < 1) throw std::invalid_argument("scatter_svg: k and q must be >= 1");
    for (int l : labels)
        if (l < 0 || l >= k) throw std::invalid_argument("scatter_svg: label out of range");
    for (int c : class_of)
        if (c < 0 || c >= q) throw std::invalid_argument("scatter_svg: class out of range");

    double xmin = coords.col(0).minCoeff(), xmax = coords.col(0).maxCoeff();
    double ymin = coords.col(1).minCoeff(), ymax = coords.col(1).maxCoeff();
    double xr = xmax - xmin, yr = ymax - ymin;
    if (xr <= 0.0) xr = 1.0;
    if (yr <= 0.0) yr = 1.0;

    const double m = options.margin;
    const double pw = options.width - 2 * m, ph = options.height - 2 * m;
    auto px = [&](double x) { return m + (x - xmin) / xr * pw; };
    auto py = [&](double y) { return m + (1.0 - (y - ymin) / yr) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
       << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << " "
       << options.height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<rect x=\"" << fmt(m) << "\" y=\"" << fmt(m) << "\" width=\"" << fmt(pw)
       << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";

    for (Eigen::Index i = 0; i < n; ++i)
        emit_marker(os, class_of[i], px(coords(i, 0)), py(coords(i, 1)),
                    options.marker_size, kPalette[labels[i] % kPaletteSize]);

    if (options.legend) {
        double ly = 16.0;
        for (int c = 0; c < k; ++c, ly += 16.0) {
            emit_marker(os, 0, options.width - 140.0, ly, 5.0, kPalette[c % kPaletteSize]);
            std::string name = c < static_cast<int>(options.cluster_names.size())
                                   ? options.cluster_names[c]
                                   : "cluster " + std::to_string(c);
            os << "<text x=\"" << fmt(options.width - 130.0) << "\" y=\"" << fmt(ly + 4.0)
               << "\" font-size=\"12\" font-family=\"sans-serif\">" << name << "</text>\n";
        }
        ly += 6.0;
        for (int c = 0; c < q; ++c, ly += 16.0) {
            emit_marker(os, c, options.width - 140.0, ly, 5.0, "#444444");
            std::string name = c < static_cast<int>(options.class_names.size())
                                   ? options.class_names[c]
                                   : "class " + std::to_string(c);
            os << "<text x=\"" << fmt(options.width - 130.0) << "\" y=\"" << fmt(ly + 4.0)
               << "\" font-size=\"12\" font-family=\"sans-serif\">" << name << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

void plot_scatter(const Eigen::MatrixXd& coords, const std::vector<int>& labels, int k,
                  const std::vector<int>& class_of, int q, const std::string& path,
                  const PlotOptions& options) {
    io::write_text_atomic(path, scatter_svg(coords, labels, k, class_of, q, options));
}

}  // namespace arclust
