#include "bops/roofline/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "bops/errors.hpp"
#include "bops/kvfile.hpp"

namespace bops::roofline {

namespace {

/// Fixed two-decimal formatting for pixel coordinates; locale-free.
std::string px(double v) {
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

struct Series {
    std::string name;
    // bound at a given oi
    double cap_rate;   // horizontal component
    double bandwidth;  // diagonal component
    bool dashed;

    double at(double oi) const { return std::min(cap_rate, bandwidth * oi); }
    double break_oi() const { return cap_rate / bandwidth; }
};

std::vector<Series> model_series(const RooflineModel& model) {
    std::vector<Series> out;
    out.push_back({"roof", model.peak(), model.bandwidth(), false});
    for (const Ceiling& c : model.compute_ceilings)
        out.push_back({"ceiling:" + c.name, c.level, model.bandwidth(), true});
    for (const Ceiling& c : model.memory_ceilings)
        out.push_back({"ceiling:" + c.name, model.peak(), c.level, true});
    return out;
}

/// Log-spaced oi grid plus the exact break point of every series, so each
/// polyline bends precisely where its two bounds meet.
std::vector<double> sample_grid(const RooflineModel& model, const PlotOptions& opt) {
    std::set<double> grid;
    const double lo = std::log10(opt.oi_min);
    const double hi = std::log10(opt.oi_max);
    const int steps = static_cast<int>(std::ceil((hi - lo) * opt.points_per_decade));
    for (int k = 0; k <= steps; ++k) {
        double oi = std::pow(10.0, lo + (hi - lo) * k / steps);
        grid.insert(std::min(oi, opt.oi_max));
    }
    grid.insert(opt.oi_min);
    grid.insert(opt.oi_max);
    for (const Series& s : model_series(model)) {
        double b = s.break_oi();
        if (b >= opt.oi_min && b <= opt.oi_max) grid.insert(b);
    }
    return std::vector<double>(grid.begin(), grid.end());
}

}  // namespace

void PlotOptions::validate() const {
    if (!(oi_min > 0) || !(oi_max > oi_min))
        throw ConfigError("plot: need 0 < oi_min < oi_max");
    if (points_per_decade < 1) throw ConfigError("plot: points_per_decade must be >= 1");
    if (width < 200 || height < 160) throw ConfigError("plot: canvas too small");
}

double PlotTransform::x_of_oi(double oi) const {
    double t = (std::log10(oi) - log_oi_min) / (log_oi_max - log_oi_min);
    return x0 + t * (x1 - x0);
}

double PlotTransform::y_of_rate(double rate) const {
    double clamped = std::max(rate, std::pow(10.0, log_rate_min));
    double t = (std::log10(clamped) - log_rate_min) / (log_rate_max - log_rate_min);
    return y1 - t * (y1 - y0);
}

PlotTransform plot_transform(const RooflineModel& model, const PlotOptions& opt) {
    opt.validate();
    PlotTransform tr;
    tr.x0 = 70;
    tr.x1 = opt.width - 30;
    tr.y0 = 40;
    tr.y1 = opt.height - 50;
    tr.log_oi_min = std::log10(opt.oi_min);
    tr.log_oi_max = std::log10(opt.oi_max);

    double lo = model.bandwidth() * opt.oi_min;  // lowest line value on the canvas
    double hi = model.peak();
    for (const Series& s : model_series(model)) {
        lo = std::min(lo, s.at(opt.oi_min));
        hi = std::max(hi, s.at(opt.oi_max));
    }
    for (const WorkloadPoint& p : model.points) {
        if (p.rate > 0) {
            lo = std::min(lo, p.rate);
            hi = std::max(hi, p.rate);
        }
    }
    tr.log_rate_min = std::floor(std::log10(lo));
    tr.log_rate_max = std::ceil(std::log10(hi));
    if (tr.log_rate_max <= tr.log_rate_min) tr.log_rate_max = tr.log_rate_min + 1;
    return tr;
}

std::string emit_csv(const RooflineModel& model, const PlotOptions& opt) {
    opt.validate();
    std::string out;
    out += "# bops-roofline-csv schema_version=1\n";
    out += "series,oi,rate\n";
    const std::vector<double> grid = sample_grid(model, opt);
    for (const Series& s : model_series(model)) {
        for (double oi : grid)
            out += s.name + "," + format_double(oi) + "," + format_double(s.at(oi)) + "\n";
    }
    for (const WorkloadPoint& p : model.points)
        out += "point:" + p.name + "," + format_double(p.oi) + "," + format_double(p.rate) + "\n";
    return out;
}

namespace {

void svg_polyline(std::string& out, const PlotTransform& tr, const Series& s,
                  const std::vector<double>& grid, const std::string& color) {
    out += "  <polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"";
    if (s.dashed) out += " stroke-dasharray=\"6 3\"";
    out += " points=\"";
    bool first = true;
    for (double oi : grid) {
        if (!first) out += ' ';
        first = false;
        out += px(tr.x_of_oi(oi)) + "," + px(tr.y_of_rate(s.at(oi)));
    }
    out += "\"/>\n";
}

std::string rate_label(double rate) {
    // powers of ten as 1e<k>
    int exp = static_cast<int>(std::lround(std::log10(rate)));
    return "1e" + std::to_string(exp);
}

}  // namespace

std::string emit_svg(const RooflineModel& model, const PlotOptions& opt) {
    const PlotTransform tr = plot_transform(model, opt);
    const std::vector<double> grid = sample_grid(model, opt);
    const std::vector<Series> series = model_series(model);
    std::set<std::string> flagged;
    for (const std::string& name : model.inconsistent_points()) flagged.insert(name);

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) +
           "\" height=\"" + std::to_string(opt.height) + "\" viewBox=\"0 0 " +
           std::to_string(opt.width) + " " + std::to_string(opt.height) + "\">\n";
    out += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "  <text x=\"" + px((tr.x0 + tr.x1) / 2) +
           "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           model.spec.name + " roofline (BOPS)</text>\n";

    // y grid: decades
    for (double e = tr.log_rate_min; e <= tr.log_rate_max + 0.5; e += 1.0) {
        double rate = std::pow(10.0, e);
        double y = tr.y_of_rate(rate);
        out += "  <line x1=\"" + px(tr.x0) + "\" y1=\"" + px(y) + "\" x2=\"" + px(tr.x1) +
               "\" y2=\"" + px(y) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out += "  <text x=\"" + px(tr.x0 - 8) + "\" y=\"" + px(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               rate_label(rate) + "</text>\n";
    }
    // x grid: powers of two
    for (double oi = opt.oi_min; oi <= opt.oi_max * 1.0000001; oi *= 2) {
        double x = tr.x_of_oi(oi);
        out += "  <line x1=\"" + px(x) + "\" y1=\"" + px(tr.y0) + "\" x2=\"" + px(x) +
               "\" y2=\"" + px(tr.y1) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out += "  <text x=\"" + px(x) + "\" y=\"" + px(tr.y1 + 16) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               format_double(oi) + "</text>\n";
    }
    out += "  <rect x=\"" + px(tr.x0) + "\" y=\"" + px(tr.y0) + "\" width=\"" +
           px(tr.x1 - tr.x0) + "\" height=\"" + px(tr.y1 - tr.y0) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out += "  <text x=\"" + px((tr.x0 + tr.x1) / 2) + "\" y=\"" + px(tr.y1 + 38) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">operation "
           "intensity (BOPs/byte)</text>\n";
    out += "  <text x=\"16\" y=\"" + px((tr.y0 + tr.y1) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " +
           px((tr.y0 + tr.y1) / 2) + ")\">rate (BOPs/s)</text>\n";

    // roof first, then ceilings
    const char* colors[] = {"#1f3b8f", "#b0413e", "#3e7d3e", "#8a5b9f", "#b07b2e"};
    for (size_t i = 0; i < series.size(); ++i) {
        svg_polyline(out, tr, series[i], grid, colors[i % 5]);
        // label at the flat tail of the line
        double label_oi = opt.oi_max;
        double y = tr.y_of_rate(series[i].at(label_oi)) - 5;
        out += "  <text x=\"" + px(tr.x1 - 4) + "\" y=\"" + px(y) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" +
               colors[i % 5] + "\">" + series[i].name + "</text>\n";
    }

    // ridge point of the main roof
    const double ridge = model.ridge_oi();
    if (ridge >= opt.oi_min && ridge <= opt.oi_max) {
        double x = tr.x_of_oi(ridge);
        double y = tr.y_of_rate(model.peak());
        out += "  <circle cx=\"" + px(x) + "\" cy=\"" + px(y) +
               "\" r=\"3.5\" fill=\"#1f3b8f\"/>\n";
        out += "  <text x=\"" + px(x + 6) + "\" y=\"" + px(y + 14) +
               "\" font-family=\"sans-serif\" font-size=\"11\">ridge oi=" + format_double(ridge) +
               "</text>\n";
    }

    // workload points
    for (const WorkloadPoint& p : model.points) {
        bool bad = flagged.count(p.name) > 0;
        double x = tr.x_of_oi(std::clamp(p.oi, opt.oi_min, opt.oi_max));
        double y = tr.y_of_rate(p.rate);
        const char* fill = bad ? "#d42a2a" : "#111111";
        out += "  <circle cx=\"" + px(x) + "\" cy=\"" + px(y) + "\" r=\"4\" fill=\"" + fill +
               "\"/>\n";
        out += "  <text x=\"" + px(x + 7) + "\" y=\"" + px(y - 6) +
               "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" + fill + "\">" + p.name +
               (bad ? " (above roof!)" : "") + "</text>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace bops::roofline
