// bops: counting, measuring and roofline reporting for the BOPS metric.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bops/errors.hpp"
#include "bops/kernel/interpreter.hpp"
#include "bops/kernel/parser.hpp"
#include "bops/kernel/static_count.hpp"
#include "bops/kvfile.hpp"
#include "bops/machine_spec.hpp"
#include "bops/measurement.hpp"
#include "bops/metrics.hpp"
#include "bops/perfest/estimator.hpp"
#include "bops/report.hpp"
#include "bops/roofline/plot.hpp"
#include "bops/workloads/sort_tool.hpp"
#include "bops/workloads/stream_triad.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitInput = 2;

struct GlobalFlags {
    bool json = false;
    bool quiet = false;
};

void note(const GlobalFlags& g, const std::string& msg) {
    if (!g.quiet) std::cerr << msg << "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw bops::ConfigError(path + ": cannot open for writing");
    out << content;
    if (!out) throw bops::ConfigError(path + ": write failed");
}

// ---------------------------------------------------------------- count

int cmd_count(const GlobalFlags& g, const std::string& file) {
    bops::kernel::KernelProgram program = bops::kernel::parse_file(file);
    bops::kernel::StaticCount count = bops::kernel::count_static(program);
    if (g.json) {
        nlohmann::json j;
        j["arithmetic"] = count.tally.arithmetic;
        j["comparing"] = count.tally.comparing;
        j["addressing"] = count.tally.addressing;
        j["total"] = count.tally.total();
        j["exact"] = count.exact;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "arithmetic = " << count.tally.arithmetic << "\n";
        std::cout << "comparing = " << count.tally.comparing << "\n";
        std::cout << "addressing = " << count.tally.addressing << "\n";
        std::cout << "total = " << count.tally.total() << "\n";
        std::cout << "exact = " << (count.exact ? "true" : "false") << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- run

bops::kernel::Value parse_input_value(const std::string& text) {
    bool looks_float = text.find_first_of(".eE") != std::string::npos;
    try {
        if (looks_float) return std::stod(text);
        return static_cast<int64_t>(std::stoll(text));
    } catch (const std::exception&) {
        throw bops::ConfigError("bad input value '" + text + "'");
    }
}

int cmd_run(const GlobalFlags& g, const std::string& file,
            const std::vector<std::string>& bindings, uint64_t max_ops) {
    std::map<std::string, bops::kernel::Value> inputs;
    for (const std::string& b : bindings) {
        size_t eq = b.find('=');
        if (eq == std::string::npos)
            throw bops::ConfigError("--input expects name=value, got '" + b + "'");
        inputs[b.substr(0, eq)] = parse_input_value(b.substr(eq + 1));
    }

    bops::kernel::KernelProgram program = bops::kernel::parse_file(file);
    bops::kernel::InterpreterOptions options;
    options.max_ops = max_ops;
    bops::kernel::InterpretResult result = bops::kernel::interpret(program, inputs, options);

    if (g.json) {
        nlohmann::json j;
        j["arithmetic"] = result.tally.arithmetic;
        j["comparing"] = result.tally.comparing;
        j["addressing"] = result.tally.addressing;
        j["total"] = result.tally.total();
        nlohmann::json state = nlohmann::json::object();
        for (const auto& slot : result.state.slots) {
            if (slot.decl.is_array()) {
                nlohmann::json arr = nlohmann::json::array();
                if (slot.decl.type == bops::kernel::ScalarType::Int64)
                    for (int64_t v : slot.array_i) arr.push_back(v);
                else
                    for (double v : slot.array_f) arr.push_back(v);
                state[slot.decl.name] = arr;
            } else if (slot.defined) {
                if (std::holds_alternative<int64_t>(slot.scalar))
                    state[slot.decl.name] = std::get<int64_t>(slot.scalar);
                else
                    state[slot.decl.name] = std::get<double>(slot.scalar);
            }
        }
        j["state"] = state;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "arithmetic = " << result.tally.arithmetic << "\n";
        std::cout << "comparing = " << result.tally.comparing << "\n";
        std::cout << "addressing = " << result.tally.addressing << "\n";
        std::cout << "total = " << result.tally.total() << "\n";
        for (const auto& slot : result.state.slots) {
            if (slot.decl.is_array()) {
                std::cout << slot.decl.name << " =";
                if (slot.decl.type == bops::kernel::ScalarType::Int64)
                    for (int64_t v : slot.array_i) std::cout << " " << v;
                else
                    for (double v : slot.array_f) std::cout << " " << bops::format_double(v);
                std::cout << "\n";
            } else if (slot.defined) {
                std::cout << slot.decl.name << " = ";
                if (std::holds_alternative<int64_t>(slot.scalar))
                    std::cout << std::get<int64_t>(slot.scalar);
                else
                    std::cout << bops::format_double(std::get<double>(slot.scalar));
                std::cout << "\n";
            }
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------- measure

void print_measurement(const GlobalFlags& g, const bops::Measurement& m) {
    if (g.json)
        std::cout << bops::measurement_to_json(m);
    else
        std::cout << bops::serialize_measurement(m);
}

int cmd_measure_sort(const GlobalFlags& g, uint64_t n, uint64_t seed, uint32_t threads,
                     const std::string& mode, const std::string& tally_from,
                     const std::string& out_path) {
    bops::workloads::RunConfig cfg;
    cfg.workload = bops::workloads::WorkloadKind::Sort;
    cfg.n_elements = n;
    cfg.seed = seed;
    cfg.threads = threads;
    if (mode == "counting")
        cfg.mode = bops::workloads::RunMode::Counting;
    else if (mode == "timing")
        cfg.mode = bops::workloads::RunMode::Timing;
    else
        throw bops::ConfigError("--mode must be counting or timing");

    bops::workloads::SortRunResult result = bops::workloads::run_sort(cfg);
    bops::Measurement m = result.measurement;
    if (cfg.mode == bops::workloads::RunMode::Timing) {
        if (!tally_from.empty()) {
            bops::Measurement counting = bops::read_measurement(tally_from);
            m = bops::with_adopted_tally(m, counting);
        } else {
            note(g, "note: timing-mode measurement carries no tally; pass --tally-from "
                    "<counting measurement> to attach one");
        }
    }
    if (!out_path.empty()) bops::write_measurement(out_path, m);
    print_measurement(g, m);
    return kExitOk;
}

int cmd_measure_stream(const GlobalFlags& g, uint64_t n, uint64_t iters, uint32_t threads,
                       uint64_t llc_bytes, const std::string& out_path) {
    bops::workloads::RunConfig cfg;
    cfg.workload = bops::workloads::WorkloadKind::StreamTriad;
    cfg.n_elements = n;
    cfg.iterations = iters;
    cfg.threads = threads;
    cfg.llc_bytes = llc_bytes;
    if (llc_bytes == 0)
        note(g, "note: --llc-bytes not given; array-size-vs-cache check skipped");

    bops::workloads::StreamResult result = bops::workloads::run_stream_triad(cfg);
    if (!out_path.empty()) bops::write_measurement(out_path, result.measurement);
    if (g.json) {
        nlohmann::json j;
        j["best_bandwidth_bytes_per_s"] = result.best_bandwidth_bytes_per_s;
        j["pass_times_s"] = result.pass_times_s;
        j["measurement"] = nlohmann::json::parse(bops::measurement_to_json(result.measurement));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "best_bandwidth_bytes_per_s = "
                  << bops::format_double(result.best_bandwidth_bytes_per_s) << "\n";
        print_measurement(g, result.measurement);
    }
    return kExitOk;
}

// ---------------------------------------------------------------- estimate

int cmd_estimate(const GlobalFlags& g, const std::string& counters_path,
                 const std::string& mapping_path, const std::string& profile_path,
                 std::optional<uint64_t> source_level) {
    bops::perfest::EventMapping mapping = mapping_path.empty()
                                              ? bops::perfest::EventMapping::identity()
                                              : bops::perfest::EventMapping::load(mapping_path);
    bops::perfest::ParsedDump parsed = bops::perfest::load_counter_export(counters_path, mapping);
    for (const std::string& raw : parsed.unmapped_events)
        note(g, "warning: unmapped event '" + raw + "' ignored");

    bops::perfest::EstimatorProfile profile;
    if (!profile_path.empty()) profile = bops::perfest::EstimatorProfile::load(profile_path);

    uint64_t estimate = bops::perfest::estimate_bops(parsed.dump, profile);
    if (g.json) {
        nlohmann::json j;
        j["estimated_bops"] = estimate;
        j["approximate"] = true;
        j["unmapped_events"] = parsed.unmapped_events;
        if (source_level) {
            j["source_level_bops"] = *source_level;
            j["deviation"] = bops::perfest::deviation(estimate, *source_level);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "estimated_bops = " << estimate << " (approximate, instruction-level)\n";
        if (source_level) {
            std::cout << "source_level_bops = " << *source_level << "\n";
            std::cout << "deviation = "
                      << bops::format_double(bops::perfest::deviation(estimate, *source_level))
                      << "\n";
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------- peak

int cmd_peak(const GlobalFlags& g, const std::string& spec_path) {
    bops::MachineSpec spec = bops::load_machine_spec(spec_path);
    double peak = bops::peak_bops(spec);
    if (g.json) {
        nlohmann::json j;
        j["machine"] = spec.name;
        j["peak_bops"] = peak;
        if (spec.flops_per_cycle) j["peak_flops"] = bops::peak_flops(spec);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "machine = " << spec.name << "\n";
        std::cout << "peak_bops = " << bops::format_double(peak) << "\n";
        if (spec.flops_per_cycle)
            std::cout << "peak_flops = " << bops::format_double(bops::peak_flops(spec)) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- roofline / report

std::vector<bops::roofline::Ceiling> build_ceilings(const bops::MachineSpec& spec,
                                                    const std::string& list, double prefetch_bw) {
    std::vector<bops::roofline::Ceiling> out;
    if (list.empty()) return out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "ilp") {
            out.push_back(bops::roofline::ilp_ceiling(spec));
        } else if (item == "simd") {
            out.push_back(bops::roofline::simd_ceiling(spec));
        } else if (item == "prefetch") {
            if (!(prefetch_bw > 0))
                throw bops::ConfigError(
                    "--ceilings prefetch needs --prefetch-bw <bytes/s> (bandwidth measured "
                    "with prefetching off)");
            out.push_back(bops::roofline::prefetch_ceiling(prefetch_bw));
        } else {
            throw bops::ConfigError("unknown ceiling '" + item +
                                    "' (expected ilp, simd or prefetch)");
        }
    }
    return out;
}

std::vector<bops::Measurement> load_points(const std::vector<std::string>& files) {
    std::vector<bops::Measurement> out;
    for (const std::string& f : files) out.push_back(bops::read_measurement(f));
    return out;
}

int cmd_roofline(const GlobalFlags& g, const std::string& spec_path,
                 const std::vector<std::string>& point_files, const std::string& ceilings,
                 double prefetch_bw, const std::string& svg_path, const std::string& csv_path,
                 const bops::roofline::PlotOptions& plot_options) {
    bops::MachineSpec spec = bops::load_machine_spec(spec_path);
    std::vector<bops::roofline::WorkloadPoint> points;
    for (const bops::Measurement& m : load_points(point_files)) {
        bops::roofline::WorkloadPoint p;
        p.name = m.workload;
        p.oi = bops::operation_intensity(m);
        p.rate = bops::bops_rate(m);
        points.push_back(std::move(p));
    }
    bops::roofline::RooflineModel model = bops::roofline::RooflineModel::build(
        spec, build_ceilings(spec, ceilings, prefetch_bw), std::move(points));

    for (const std::string& name : model.inconsistent_points())
        note(g, "warning: point '" + name + "' sits above the roof; measurement and spec "
                "disagree");

    if (!svg_path.empty()) write_text_file(svg_path, bops::roofline::emit_svg(model, plot_options));
    if (!csv_path.empty()) write_text_file(csv_path, bops::roofline::emit_csv(model, plot_options));

    if (g.json) {
        nlohmann::json j;
        j["machine"] = spec.name;
        j["peak_bops"] = model.peak();
        j["bandwidth_bytes_per_s"] = model.bandwidth();
        j["ridge_oi"] = model.ridge_oi();
        j["inconsistent_points"] = model.inconsistent_points();
        std::cout << j.dump(2) << "\n";
    } else if (!g.quiet) {
        std::cout << "machine = " << spec.name << "\n";
        std::cout << "peak_bops = " << bops::format_double(model.peak()) << "\n";
        std::cout << "ridge_oi = " << bops::format_double(model.ridge_oi()) << "\n";
        if (!svg_path.empty()) std::cout << "svg = " << svg_path << "\n";
        if (!csv_path.empty()) std::cout << "csv = " << csv_path << "\n";
    }
    return kExitOk;
}

int cmd_report(const GlobalFlags& g, const std::string& spec_path,
               const std::vector<std::string>& point_files, const std::string& ceilings,
               double prefetch_bw, const std::string& out_path) {
    bops::MachineSpec spec = bops::load_machine_spec(spec_path);
    std::vector<bops::Measurement> measurements = load_points(point_files);
    bops::ReportBundle bundle =
        bops::build_report(spec, measurements, build_ceilings(spec, ceilings, prefetch_bw));
    std::string json = bops::report_to_json(bundle);
    if (!out_path.empty()) write_text_file(out_path, json);
    if (g.json)
        std::cout << json;
    else
        std::cout << bops::render_report_text(bundle);
    for (const bops::ReportRow& row : bundle.rows) {
        if (row.efficiency_above_unity)
            note(g, "warning: '" + row.measurement.workload +
                        "' exceeds the configured peak; measurement and spec disagree");
        if (row.above_roof)
            note(g, "warning: '" + row.measurement.workload + "' sits above the roof");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"BOPS metric tools: source-level counting, instrumented measuring tools, "
                 "instruction-level estimation and roofline reporting"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_flag("--json", g.json, "emit structured JSON on stdout");
    app.add_flag("--quiet", g.quiet, "suppress notes and warnings");

    // count
    std::string count_file;
    CLI::App* count = app.add_subcommand("count", "statically count a kernel program");
    count->add_option("file", count_file, "kernel source file")->required();

    // run
    std::string run_file;
    std::vector<std::string> run_inputs;
    uint64_t run_max_ops = 1'000'000'000;
    CLI::App* run = app.add_subcommand("run", "interpret a kernel program, tallying as it goes");
    run->add_option("file", run_file, "kernel source file")->required();
    run->add_option("--input", run_inputs, "bind a scalar input, name=value (repeatable)");
    run->add_option("--max-ops", run_max_ops, "operation budget before aborting");

    // measure
    CLI::App* measure = app.add_subcommand("measure", "run a native measuring tool");
    measure->require_subcommand(1);
    uint64_t ms_n = 0, ms_seed = 0;
    uint32_t ms_threads = 1;
    std::string ms_mode = "counting", ms_tally_from, ms_out;
    CLI::App* msort = measure->add_subcommand("sort", "instrumented parallel sort");
    msort->add_option("--n", ms_n, "number of 64-bit keys")->required();
    msort->add_option("--seed", ms_seed, "PRNG seed");
    msort->add_option("--threads", ms_threads, "worker threads");
    msort->add_option("--mode", ms_mode, "counting|timing");
    msort->add_option("--tally-from", ms_tally_from,
                      "counting-mode measurement file whose tally a timing run adopts");
    msort->add_option("--out", ms_out, "write the measurement record here (.json for JSON)");

    uint64_t st_n = 0, st_iters = 10, st_llc = 0;
    uint32_t st_threads = 1;
    std::string st_out;
    CLI::App* mstream = measure->add_subcommand("stream", "stream-triad bandwidth probe");
    mstream->add_option("--n", st_n, "elements per array")->required();
    mstream->add_option("--iters", st_iters, "triad passes");
    mstream->add_option("--threads", st_threads, "worker threads");
    mstream->add_option("--llc-bytes", st_llc,
                        "last-level cache size; arrays must exceed it 4x when given");
    mstream->add_option("--out", st_out, "write the measurement record here");

    // estimate
    std::string est_counters, est_mapping, est_profile;
    std::optional<uint64_t> est_source;
    CLI::App* estimate =
        app.add_subcommand("estimate", "instruction-level BOPs estimate from counter exports");
    estimate->add_option("--counters", est_counters, "counter export file")->required();
    estimate->add_option("--mapping", est_mapping,
                         "raw-event-to-logical-name mapping file (logical names pass through "
                         "when omitted)");
    estimate->add_option("--profile", est_profile, "estimator profile file");
    estimate->add_option("--source-level", est_source,
                         "source-level BOPs count to compute the deviation against");

    // peak
    std::string peak_spec;
    CLI::App* peak = app.add_subcommand("peak", "peak rates from a machine spec");
    peak->add_option("--spec", peak_spec, "machine spec file")->required();

    // roofline
    std::string rf_spec, rf_ceilings, rf_svg, rf_csv;
    std::vector<std::string> rf_points;
    double rf_prefetch_bw = 0;
    bops::roofline::PlotOptions rf_plot;
    CLI::App* roofline = app.add_subcommand("roofline", "evaluate and plot the roofline model");
    roofline->add_option("--spec", rf_spec, "machine spec file")->required();
    roofline->add_option("--points", rf_points, "measurement files to place on the plot");
    roofline->add_option("--ceilings", rf_ceilings, "comma list of ilp,simd,prefetch");
    roofline->add_option("--prefetch-bw", rf_prefetch_bw,
                         "bandwidth with prefetching off (bytes/s), for the prefetch ceiling");
    roofline->add_option("--out", rf_svg, "SVG output path");
    roofline->add_option("--csv", rf_csv, "CSV output path");
    roofline->add_option("--oi-min", rf_plot.oi_min, "left edge of the oi grid");
    roofline->add_option("--oi-max", rf_plot.oi_max, "right edge of the oi grid");
    roofline->add_option("--points-per-decade", rf_plot.points_per_decade,
                         "sampling density of the polylines");

    // report
    std::string rp_spec, rp_ceilings, rp_out;
    std::vector<std::string> rp_points;
    double rp_prefetch_bw = 0;
    CLI::App* report = app.add_subcommand("report", "derived-metrics table for measurements");
    report->add_option("--spec", rp_spec, "machine spec file")->required();
    report->add_option("--points", rp_points, "measurement files")->required();
    report->add_option("--ceilings", rp_ceilings, "comma list of ilp,simd,prefetch");
    report->add_option("--prefetch-bw", rp_prefetch_bw,
                       "bandwidth with prefetching off (bytes/s)");
    report->add_option("--out", rp_out, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (count->parsed()) return cmd_count(g, count_file);
        if (run->parsed()) return cmd_run(g, run_file, run_inputs, run_max_ops);
        if (measure->parsed()) {
            if (msort->parsed())
                return cmd_measure_sort(g, ms_n, ms_seed, ms_threads, ms_mode, ms_tally_from,
                                        ms_out);
            return cmd_measure_stream(g, st_n, st_iters, st_threads, st_llc, st_out);
        }
        if (estimate->parsed())
            return cmd_estimate(g, est_counters, est_mapping, est_profile, est_source);
        if (peak->parsed()) return cmd_peak(g, peak_spec);
        if (roofline->parsed())
            return cmd_roofline(g, rf_spec, rf_points, rf_ceilings, rf_prefetch_bw, rf_svg,
                                rf_csv, rf_plot);
        if (report->parsed())
            return cmd_report(g, rp_spec, rp_points, rp_ceilings, rp_prefetch_bw, rp_out);
    } catch (const bops::kernel::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const bops::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const bops::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
