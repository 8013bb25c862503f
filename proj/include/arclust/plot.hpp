#ifndef ARCLUST_PLOT_HPP
#define ARCLUST_PLOT_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

namespace arclust {

struct PlotOptions {
    int width = 720;
    int height = 560;
    double margin = 48.0;
    double marker_size = 4.5;
    bool legend = true;
    std::vector<std::string> class_names;    // legend labels per class
    std::vector<std::string> cluster_names;  // legend labels per cluster
};

/// Deterministic SVG scatter of 2-d coordinates. Marker shape encodes the
/// protected class (circle, square, triangle, diamond, cycling), fill colour
/// the cluster.
std::string scatter_svg(const Eigen::MatrixXd& coords, const std::vector<int>& labels,
                        int k, const std::vector<int>& class_of, int q,
                        const PlotOptions& options = {});

void plot_scatter(const Eigen::MatrixXd& coords, const std::vector<int>& labels, int k,
                  const std::vector<int>& class_of, int q, const std::string& path,
                  const PlotOptions& options = {});

}  // namespace arclust

#endif
