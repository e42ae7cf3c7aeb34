#include "onnham/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "onnham/analysis.hpp"
#include "onnham/edge_pipeline.hpp"
#include "onnham/error.hpp"
#include "onnham/ham.hpp"
#include "onnham/image.hpp"

namespace onnham {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

// Shared option blocks --------------------------------------------------------

struct InputOptions {
  std::string path;
  std::optional<int> idx;  // image index when the input is an IDX3 file

  void add(CLI::App* app) {
    app->add_option("input", path, "Input image (PGM P2/P5, or IDX3 with --idx)")->required();
    app->add_option("--idx", idx, "Treat the input as an IDX3 file and take image K")->check(CLI::NonNegativeNumber);
  }

  [[nodiscard]] GrayImage load() const {
    if (!idx) return load_pgm(path);
    auto images = load_idx_images(path);
    if (static_cast<std::size_t>(*idx) >= images.size()) {
      throw std::invalid_argument("--idx " + std::to_string(*idx) + " out of range (file holds " +
                                  std::to_string(images.size()) + " images)");
    }
    return images[static_cast<std::size_t>(*idx)];
  }
};

struct DetectorOptions {
  std::string backend = "hnn";
  double gain = OnnConfig{}.gain;
  int max_cycles = OnnConfig{}.max_cycles;
  double f_sys = OnnConfig{}.f_sys;
  bool evolve_inputs = false;
  int max_sweeps = kDefaultMaxSweeps;
  double threshold = 0.5;
  double sigma = CannyParams{}.sigma;
  double low = CannyParams{}.low;
  double high = CannyParams{}.high;

  void add(CLI::App* app, bool onn_only = false) {
    auto* b = app->add_option("--backend", backend, "Detector backend");
    if (onn_only) {
      b->check(CLI::IsMember({"hnn", "phase"}));
    } else {
      b->check(CLI::IsMember({"hnn", "phase", "sobel", "canny"}));
    }
    b->capture_default_str();
    app->add_option("--gain", gain, "Phase ONN field gain")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--max-cycles", max_cycles, "Phase ONN cycle budget before Unstable")
        ->check(CLI::Range(2, 10000))
        ->capture_default_str();
    app->add_option("--f-sys", f_sys, "System clock frequency in Hz")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_flag("--evolve-inputs", evolve_inputs, "Let the phase ONN update input oscillators too");
    app->add_option("--max-sweeps", max_sweeps, "HNN sweep budget")->check(CLI::Range(2, 100000))->capture_default_str();
    if (onn_only) return;
    app->add_option("--threshold", threshold, "Sobel threshold as a fraction of full scale")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app->add_option("--sigma", sigma, "Canny gaussian sigma")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--low", low, "Canny low hysteresis fraction")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    app->add_option("--high", high, "Canny high hysteresis fraction")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  }

  [[nodiscard]] Detector detector() const {
    Detector d = Detector::of(*parse_detector(backend));
    d.backend.max_sweeps = max_sweeps;
    d.backend.onn.gain = gain;
    d.backend.onn.max_cycles = max_cycles;
    d.backend.onn.f_sys = f_sys;
    d.backend.onn.evolve_inputs = evolve_inputs;
    d.backend.onn.validate();
    if (!(threshold > 0.0)) throw CLI::ValidationError("--threshold", "must be greater than 0");
    d.sobel_threshold = threshold;
    d.canny = CannyParams{sigma, low, high};
    if (!(low > 0.0 && low < high)) throw CLI::ValidationError("--low/--high", "need 0 < low < high <= 1");
    return d;
  }
};

json counts_json(const ClassCounts& c) {
  return {{"edge_a", c.edge_a}, {"edge_b", c.edge_b}, {"no_edge", c.no_edge},
          {"unstable", c.unstable}, {"edges", c.edges()}};
}

json edge_windows_json(const MarkMap& marks) {
  json list = json::array();
  for (int r = 0; r < marks.height(); ++r) {
    for (int c = 0; c < marks.width(); ++c) {
      if (marks.at(r, c)) list.push_back({r, c});
    }
  }
  return list;
}

// Per-window traces for the network backends.
std::string trace_windows(const GrayImage& source, const Backend& backend) {
  const GrayImage image = to_levels9(source);
  std::ostringstream out;
  if (backend.kind == BackendKind::PhaseOnn) {
    out << "row,col,cycle";
    for (std::size_t i = 0; i < edge::kNeurons; ++i) out << ",stage_" << i;
    out << '\n';
  }
  for (int r = 0; r + 2 < image.height(); ++r) {
    for (int c = 0; c + 2 < image.width(); ++c) {
      Patch patch{};
      for (int k = 0; k < 9; ++k) patch[k] = image.at(r + k / 3, c + k % 3);
      const NetworkState init = encode_patch(patch, backend);
      if (backend.kind == BackendKind::HnnEmulator) {
        const HnnOutcome o = hnn_run(std::get<BipolarState>(init), backend.weights, backend.max_sweeps);
        json j{{"row", r},
               {"col", c},
               {"kind", to_string(o.kind)},
               {"sweeps", o.sweeps},
               {"final_state", std::vector<double>(o.final_state.values().begin(), o.final_state.values().end())},
               {"class", to_string(decode_class(o))}};
        out << j.dump() << '\n';
      } else {
        std::vector<PhaseState> trace;
        onn_run(std::get<PhaseState>(init), backend.weights, backend.onn, &trace);
        for (std::size_t cycle = 0; cycle < trace.size(); ++cycle) {
          out << r << ',' << c << ',' << cycle;
          for (int s : trace[cycle].stages()) out << ',' << s;
          out << '\n';
        }
      }
    }
  }
  return out.str();
}

// Subcommands -----------------------------------------------------------------

struct DetectCmd {
  InputOptions input;
  DetectorOptions det;
  bool use_lut = false;
  std::string out_path;
  std::string json_path;
  std::string trace_path;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("detect", "Edge detection on one image");
    input.add(cmd);
    det.add(cmd);
    cmd->add_flag("--lut", use_lut, "Use the 512-entry black/white lookup table (binary images only)");
    cmd->add_option("--out", out_path, "Write the edge image (PGM)");
    cmd->add_option("--json", json_path, "Write a JSON report");
    cmd->add_option("--trace", trace_path,
                    "Write per-window traces (hnn: JSON lines, phase: CSV row,col,cycle,stage_0..stage_10)");
    cmd->callback([this, cmd] { run_ = cmd; });
  }

  int run(std::ostream& out) const {
    const GrayImage image = input.load();
    const Detector d = det.detector();
    const bool network = d.kind == DetectorKind::Hnn || d.kind == DetectorKind::Phase;
    if (use_lut && !network) throw CLI::ValidationError("--lut", "only valid with --backend hnn or phase");
    if (!trace_path.empty() && !network) throw CLI::ValidationError("--trace", "only valid with --backend hnn or phase");
    if (image.width() < 3 || image.height() < 3) {
      throw std::invalid_argument("image too small: need at least 3x3, got " + std::to_string(image.width()) + "x" +
                                  std::to_string(image.height()));
    }

    MarkMap marks;
    std::optional<ClassCounts> counts;
    GrayImage rendered_image;
    if (network) {
      std::optional<BwLut> lut;
      if (use_lut) lut = build_bw_lut(d.backend);
      const EdgeMap map = scan_image(image, d.backend, lut ? &*lut : nullptr, d.scan);
      counts = count_classes(map);
      marks = edge_marks(map);
      rendered_image = render_edge_map(map);
      if (!trace_path.empty()) write_text(trace_path, trace_windows(image, d.backend));
    } else {
      marks = d.marks(image);
      rendered_image = GrayImage(marks.width(), marks.height(), Depth::Gray256, 255);
      for (int r = 0; r < marks.height(); ++r) {
        for (int c = 0; c < marks.width(); ++c) {
          if (marks.at(r, c)) rendered_image.set(r, c, 0);
        }
      }
    }

    long edges = 0;
    for (auto m : marks.data()) edges += m;
    out << "backend " << det.backend << ": " << marks.width() << "x" << marks.height() << " windows, " << edges
        << " edge";
    if (counts) out << " (EdgeA " << counts->edge_a << ", EdgeB " << counts->edge_b << ", unstable " << counts->unstable << ")";
    out << '\n';

    if (!out_path.empty()) save_pgm(rendered_image, out_path);
    if (!json_path.empty()) {
      json report{{"schema_version", kSchemaVersion},
                  {"input", input.path},
                  {"backend", det.backend},
                  {"lut", use_lut},
                  {"image", {{"width", image.width()}, {"height", image.height()}}},
                  {"map", {{"width", marks.width()}, {"height", marks.height()}}},
                  {"edge_window_count", edges},
                  {"edge_windows", edge_windows_json(marks)}};
      if (counts) {
        report["counts"] = counts_json(*counts);
        report["unstable_windows"] = counts->unstable;
      }
      write_text(json_path, report.dump(2) + "\n");
    }
    return kExitOk;
  }

  CLI::App* run_ = nullptr;
};

struct EvalMapCmd {
  EvalMapSpec spec;
  std::string out_path;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("evalmap", "Generate a gray-square evaluation map (9-level PGM)");
    cmd->add_option("--out", out_path, "Output PGM")->required();
    cmd->add_option("--square", spec.square_size, "Square side in pixels")->check(CLI::Range(1, 4096))->capture_default_str();
    cmd->add_option("--gap", spec.gap, "Gap between squares in pixels")->check(CLI::Range(0, 4096))->capture_default_str();
    cmd->add_option("--rows", spec.rows, "Square grid rows")->check(CLI::Range(1, 64))->capture_default_str();
    cmd->add_option("--cols", spec.cols, "Square grid columns")->check(CLI::Range(1, 64))->capture_default_str();
    cmd->add_option("--background", spec.background_level, "Background level")->check(CLI::Range(0, 8))->capture_default_str();
    cmd->add_option("--levels", spec.square_levels, "Square levels, row-major")->check(CLI::Range(0, 8))->delimiter(',');
    cmd->callback([this, cmd] { run_ = cmd; });
  }

  int run(std::ostream& out) const {
    const GrayImage map = gen_eval_map(spec);
    save_pgm(map, out_path);
    out << "wrote " << map.width() << "x" << map.height() << " evaluation map to " << out_path << '\n';
    return kExitOk;
  }

  CLI::App* run_ = nullptr;
};

struct ConvertCmd {
  InputOptions input;
  std::string out_path;
  bool do_binarize = false;
  bool do_quantize = false;
  bool do_expand = false;
  int threshold = 128;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("convert", "Change image depth");
    input.add(cmd);
    cmd->add_option("--out", out_path, "Output PGM")->required();
    auto* b = cmd->add_flag("--binarize", do_binarize, "256-level -> black/white");
    auto* q = cmd->add_flag("--quantize9", do_quantize, "256-level -> 9 gray levels");
    auto* e = cmd->add_flag("--expand", do_expand, "9-level or binary -> 256-level");
    b->excludes(q)->excludes(e);
    q->excludes(e);
    cmd->add_option("--threshold", threshold, "Binarization threshold")->check(CLI::Range(0, 256))->capture_default_str();
    cmd->callback([this, cmd] { run_ = cmd; });
  }

  int run(std::ostream& out) const {
    if (!do_binarize && !do_quantize && !do_expand) {
      throw CLI::ValidationError("convert", "one of --binarize, --quantize9, --expand is required");
    }
    const GrayImage image = input.load();
    GrayImage result;
    if (do_binarize) result = binarize(to_gray256(image), threshold);
    if (do_quantize) result = to_levels9(image);
    if (do_expand) result = to_gray256(image);
    save_pgm(result, out_path);
    out << "wrote " << out_path << '\n';
    return kExitOk;
  }

  CLI::App* run_ = nullptr;
};

struct LutCmd {
  DetectorOptions det;
  std::string out_path;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("lut", "Tabulate all 512 black/white 3x3 patches");
    det.add(cmd, true);
    cmd->add_option("--out", out_path, "Write the table as JSON (default: stdout)");
    cmd->callback([this, cmd] { run_ = cmd; });
  }

  int run(std::ostream& out) const {
    const BwLut lut = build_bw_lut(det.detector().backend);
    json entries = json::array();
    ClassCounts counts;
    for (EdgeClass c : lut.entries()) {
      entries.push_back(to_string(c));
      if (c == EdgeClass::EdgeA) ++counts.edge_a;
      if (c == EdgeClass::EdgeB) ++counts.edge_b;
      if (c == EdgeClass::NoEdge) ++counts.no_edge;
      if (c == EdgeClass::Unstable) ++counts.unstable;
    }
    json doc{{"schema_version", kSchemaVersion},
             {"backend", det.backend},
             {"encoding", "index bit i set iff patch pixel i (row-major) is white"},
             {"counts", counts_json(counts)},
             {"entries", entries}};
    if (out_path.empty()) {
      out << doc.dump(2) << '\n';
    } else {
      write_text(out_path, doc.dump(2) + "\n");
      out << "wrote " << out_path << '\n';
    }
    return kExitOk;
  }

  CLI::App* run_ = nullptr;
};

struct ProfileCmd {
  DetectorOptions det;
  bool as_json = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("profile", "Gray-level detection profile (square of each level on white)");
    det.add(cmd);
    cmd->add_flag("--json", as_json, "Print JSON instead of text");
    cmd->callback([this, cmd] { run_ = cmd; });
  }

  int run(std::ostream& out) const {
    const DetectionProfile p = gray_detection_profile(det.detector());
    if (as_json) {
      json doc{{"schema_version", kSchemaVersion},
               {"backend", det.backend},
               {"detected", std::vector<bool>(p.detected.begin(), p.detected.end())}};
      out << doc.dump(2) << '\n';
      return kExitOk;
    }
    out << "level  detected (" << det.backend << ")\n";
    for (int level = 0; level <= 8; ++level) out << "  " << level << "    " << (p.detected[level] ? "yes" : "no") << '\n';
    return kExitOk;
  }

  CLI::App* run_ = nullptr;
};

struct TimingCmd {
  int width = 28;
  int height = 28;
  TimingModel model;
  std::optional<double> fps;
  bool as_json = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("timing", "Sequential-scan processing time estimate");
    cmd->add_option("--width", width, "Image width")->check(CLI::Range(3, 1 << 20))->capture_default_str();
    cmd->add_option("--height", height, "Image height")->check(CLI::Range(3, 1 << 20))->capture_default_str();
    cmd->add_option("--parallel", model.parallel_onns, "Parallel ONN instances")
        ->check(CLI::Range(1, 1 << 20))
        ->capture_default_str();
    cmd->add_option("--fps", fps, "Frame rate for the real-time size bound")->check(CLI::PositiveNumber);
    cmd->add_option("--t-init", model.t_init, "Initialization time per window (s)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--t-compute", model.t_compute, "Computation time per window (s)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_flag("--json", as_json, "Print JSON instead of text");
    cmd->callback([this, cmd] { run_ = cmd; });
  }

  int run(std::ostream& out) const {
    const double seconds = estimate_processing_time(width, height, model);
    std::optional<int> side;
    if (fps) side = max_realtime_size(*fps, model);
    if (as_json) {
      json doc{{"schema_version", kSchemaVersion},
               {"width", width},
               {"height", height},
               {"windows", static_cast<long>(width - 2) * (height - 2)},
               {"parallel_onns", model.parallel_onns},
               {"seconds", seconds}};
      if (side) {
        doc["fps"] = *fps;
        doc["max_realtime_size"] = *side;
      }
      out << doc.dump(2) << '\n';
      return kExitOk;
    }
    out << width << "x" << height << ": " << fixed(seconds * 1e3, 1) << " ms (" << fixed(seconds * 1e3, 4) << " ms, "
        << model.parallel_onns << " ONN)\n";
    if (side) {
      if (*side >= 3) {
        out << "real-time at " << *fps << " fps up to " << *side << "x" << *side << '\n';
      } else {
        out << "real-time at " << *fps << " fps: none feasible\n";
      }
    }
    return kExitOk;
  }

  CLI::App* run_ = nullptr;
};

MarkMap marks_from_image(const GrayImage& image) {
  const GrayImage g = to_gray256(image);
  MarkMap m(g.width(), g.height());
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = g.pixels()[i] < 128 ? 1 : 0;
  return m;
}

struct CompareCmd {
  std::string candidate;
  std::string reference;
  bool as_json = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("compare", "Compare two edge images (dark pixels are edges)");
    cmd->add_option("candidate", candidate, "Candidate edge PGM")->required();
    cmd->add_option("reference", reference, "Reference edge PGM")->required();
    cmd->add_flag("--json", as_json, "Print JSON instead of text");
    cmd->callback([this, cmd] { run_ = cmd; });
  }

  int run(std::ostream& out) const {
    const MarkMap a = marks_from_image(load_pgm(candidate));
    const MarkMap b = marks_from_image(load_pgm(reference));
    const ComparisonReport rep = compare_maps(a, b);
    long ref_marks = rep.true_positive + rep.false_negative;
    std::optional<double> ratio;
    if (ref_marks > 0) ratio = double_detection_ratio(a, b);
    if (as_json) {
      json doc{{"schema_version", kSchemaVersion},
               {"precision", rep.precision},
               {"recall", rep.recall},
               {"f1", rep.f1},
               {"true_positive", rep.true_positive},
               {"false_positive", rep.false_positive},
               {"false_negative", rep.false_negative},
               {"detection_ratio", ratio ? json(*ratio) : json(nullptr)}};
      out << doc.dump(2) << '\n';
      return kExitOk;
    }
    out << "precision " << fixed(rep.precision, 4) << "  recall " << fixed(rep.recall, 4) << "  f1 "
        << fixed(rep.f1, 4) << '\n';
    if (ratio) out << "detection ratio " << fixed(*ratio, 4) << '\n';
    return kExitOk;
  }

  CLI::App* run_ = nullptr;
};

struct InspectCmd {
  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("inspect-weights", "Print the edge-detection weight matrix as JSON");
    cmd->callback([this, cmd] { run_ = cmd; });
  }

  int run(std::ostream& out) const {
    const WeightMatrix w = build_edge_ham();
    json doc{{"n", w.n()}, {"n_in", w.n_in()}, {"rows", w.rows()}};
    out << doc.dump(2) << '\n';
    return kExitOk;
  }

  CLI::App* run_ = nullptr;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oscillatory neural network edge detection"};
  app.name(args.empty() ? "onnham-cli" : args.front());
  app.require_subcommand(1);

  DetectCmd detect;
  EvalMapCmd evalmap;
  ConvertCmd convert;
  LutCmd lut;
  ProfileCmd profile;
  TimingCmd timing;
  CompareCmd compare;
  InspectCmd inspect;
  detect.add(app);
  evalmap.add(app);
  convert.add(app);
  lut.add(app);
  profile.add(app);
  timing.add(app);
  compare.add(app);
  inspect.add(app);

  try {
    std::vector<std::string> rest(args.empty() ? args.begin() : args.begin() + 1, args.end());
    std::reverse(rest.begin(), rest.end());  // CLI11 consumes a reversed vector
    app.parse(rest);

    if (detect.run_) return detect.run(out);
    if (evalmap.run_) return evalmap.run(out);
    if (convert.run_) return convert.run(out);
    if (lut.run_) return lut.run(out);
    if (profile.run_) return profile.run(out);
    if (timing.run_) return timing.run(out);
    if (compare.run_) return compare.run(out);
    if (inspect.run_) return inspect.run(out);
    return kExitUsage;
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace onnham
