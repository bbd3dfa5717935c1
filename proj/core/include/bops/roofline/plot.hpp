#pragma once

#include <string>

#include "bops/roofline/model.hpp"

namespace bops::roofline {

struct PlotOptions {
    double oi_min = 0.0625;  // 2^-4
    double oi_max = 64.0;    // 2^6
    int points_per_decade = 64;
    int width = 880;
    int height = 640;

    void validate() const;
};

/// Pixel mapping used by the SVG emitter, exposed so tests can check where a
/// workload point lands relative to the roof polyline.
struct PlotTransform {
    double x0 = 0, x1 = 0;      // drawable x range (px)
    double y0 = 0, y1 = 0;      // drawable y range (px), y grows downward
    double log_oi_min = 0, log_oi_max = 0;
    double log_rate_min = 0, log_rate_max = 0;

    double x_of_oi(double oi) const;
    double y_of_rate(double rate) const;
};

PlotTransform plot_transform(const RooflineModel& model, const PlotOptions& options = {});

/// Sampled roof/ceiling polylines plus workload points.
/// Columns: series,oi,rate. Byte-deterministic for identical input.
std::string emit_csv(const RooflineModel& model, const PlotOptions& options = {});

/// Log-log SVG: bandwidth diagonal, peak roof, ceilings, labeled workload
/// points, annotated ridge. Byte-deterministic for identical input.
std::string emit_svg(const RooflineModel& model, const PlotOptions& options = {});

}  // namespace bops::roofline
