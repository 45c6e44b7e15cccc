// Copyright 2026 The ROPE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rope/enhance.hpp"
#include "rope/errors.hpp"
#include "rope/image_io.hpp"
#include "rope/metrics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct PipelineConfig {
  std::string method = "rope";
  rope::RopeParams params;
};

struct DumpConfig {
  bool sidecar = false;
  bool illumination = false;
  bool reflectance = false;
  bool h2 = false;
  bool gray = false;

  bool any() const { return sidecar || illumination || reflectance || h2 || gray; }
};

struct MetricsRow {
  std::string file;
  rope::MetricsReport report;
};

void add_pipeline_flags(CLI::App *cmd, PipelineConfig &cfg) {
  cmd->add_option("--method", cfg.method, "Enhancement method")
      ->check(CLI::IsMember({"rope", "pe", "cvc", "cache", "he"}))
      ->capture_default_str();
  cmd->add_option("--window", cfg.params.window,
                  "Co-occurrence window side length (odd)")
      ->capture_default_str();
  cmd->add_option("--iterations", cfg.params.tau,
                  "Significance iterations (tau)")
      ->capture_default_str();
  cmd->add_option("--levels", cfg.params.k, "Intensity bin count")
      ->capture_default_str();
  cmd->add_option("--lambda", cfg.params.retinex.lambda,
                  "RTV smoothing strength")
      ->capture_default_str();
  cmd->add_option("--sigma", cfg.params.retinex.sigma,
                  "RTV local-variation Gaussian sigma")
      ->capture_default_str();
  cmd->add_option("--eps-rtv", cfg.params.retinex.eps_rtv,
                  "RTV weight stabilizer")
      ->capture_default_str();
  cmd->add_option("--rtv-iterations", cfg.params.retinex.iterations,
                  "RTV reweighting rounds")
      ->capture_default_str();
  cmd->add_option("--solver-tol", cfg.params.retinex.solver_tol,
                  "CG relative residual target")
      ->capture_default_str();
  cmd->add_option("--solver-max-steps", cfg.params.retinex.solver_max_steps,
                  "CG step budget per solve")
      ->capture_default_str();
  cmd->add_option("--eps-ref", cfg.params.eps_ref, "Reflectance stabilizer")
      ->capture_default_str();
}

void add_metric_flags(CLI::App *cmd, rope::MetricsParams &m) {
  cmd->add_option("--eme-block", m.eme_block, "EME tile side length")
      ->capture_default_str();
  cmd->add_option("--loe-grid", m.loe_grid, "LOE sampling lattice density")
      ->capture_default_str();
}

// -o wins; otherwise ROPE_OUTPUT_DIR; otherwise the working directory.
fs::path resolve_output_dir(const std::string &flag) {
  if (!flag.empty()) return flag;
  if (const char *env = std::getenv("ROPE_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

json report_to_json(const rope::MetricsReport &r) {
  return json{{"de", r.de}, {"eme", r.eme}, {"pd", r.pd}, {"loe", r.loe}};
}

void write_rows(std::ostream &out, std::vector<MetricsRow> rows,
                const std::string &format) {
  std::sort(rows.begin(), rows.end(),
            [](const MetricsRow &a, const MetricsRow &b) {
              return a.file < b.file;
            });
  rope::MetricsReport mean;
  for (const MetricsRow &row : rows) {
    mean.de += row.report.de;
    mean.eme += row.report.eme;
    mean.pd += row.report.pd;
    mean.loe += row.report.loe;
  }
  if (!rows.empty()) {
    const double n = static_cast<double>(rows.size());
    mean.de /= n;
    mean.eme /= n;
    mean.pd /= n;
    mean.loe /= n;
  }

  if (format == "json") {
    json doc;
    doc["images"] = json::array();
    for (const MetricsRow &row : rows) {
      json entry = report_to_json(row.report);
      entry["file"] = row.file;
      doc["images"].push_back(std::move(entry));
    }
    doc["mean"] = report_to_json(mean);
    out << doc.dump(2) << '\n';
    return;
  }

  out << "file,de,eme,pd,loe\n";
  for (const MetricsRow &row : rows) {
    out << row.file << ',' << format_value(row.report.de) << ','
        << format_value(row.report.eme) << ',' << format_value(row.report.pd)
        << ',' << format_value(row.report.loe) << '\n';
  }
  out << "mean," << format_value(mean.de) << ',' << format_value(mean.eme)
      << ',' << format_value(mean.pd) << ',' << format_value(mean.loe) << '\n';
}

int emit_report(const std::vector<MetricsRow> &rows, const std::string &format,
                const std::string &out_path) {
  if (out_path.empty()) {
    write_rows(std::cout, rows, format);
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "rope: cannot write report '" << out_path << "'\n";
    return 1;
  }
  write_rows(out, rows, format);
  return out.good() ? 0 : 1;
}

void write_sidecar(const fs::path &path, const std::string &input,
                   const PipelineConfig &cfg, const rope::EnhanceTrace &trace) {
  json doc;
  doc["file"] = input;
  doc["method"] = cfg.method;
  doc["levels"] = cfg.params.k;
  doc["window"] = cfg.params.window;
  doc["iterations"] = cfg.params.tau;
  doc["degenerate"] = trace.degenerate;
  doc["mapping"] = trace.mapping.table;
  if (trace.histogram) {
    doc["histogram"] = trace.histogram->p;
  } else {
    doc["histogram"] = nullptr;
  }
  if (!trace.solves.empty()) {
    doc["solves"] = json::array();
    for (const rope::SolveStats &st : trace.solves) {
      doc["solves"].push_back({{"steps", st.steps}, {"residual", st.residual}});
    }
  }
  std::ofstream out(path);
  out << doc.dump(2) << '\n';
  if (!out.good()) {
    throw rope::IoError(rope::IoError::Kind::kUnreadable,
                        "cannot write '" + path.string() + "'");
  }
}

void write_h2_csv(const fs::path &path, const rope::CoOccurrenceHistogram &h2) {
  std::ofstream out(path);
  out << "i,j,value\n";
  for (int i = 0; i < h2.k - 1; ++i) {
    for (int j = i + 1; j < h2.k; ++j) {
      const double v = h2.at(i, j);
      if (v != 0.0) out << i << ',' << j << ',' << format_value(v) << '\n';
    }
  }
  if (!out.good()) {
    throw rope::IoError(rope::IoError::Kind::kUnreadable,
                        "cannot write '" + path.string() + "'");
  }
}

void write_dumps(const fs::path &out_png, const std::string &input,
                 const PipelineConfig &cfg, const DumpConfig &dumps,
                 const rope::EnhanceTrace &trace) {
  fs::path base = out_png;
  base.replace_extension();
  if (dumps.sidecar) {
    write_sidecar(fs::path(out_png) += ".json", input, cfg, trace);
  }
  if (dumps.illumination && trace.illumination) {
    rope::save_pfm(*trace.illumination, fs::path(base) += ".illum.pfm");
  }
  if (dumps.reflectance && trace.reflectance) {
    rope::save_pfm(*trace.reflectance, fs::path(base) += ".refl.pfm");
  }
  if (dumps.h2 && trace.pair_histogram) {
    write_h2_csv(fs::path(base) += ".h2.csv", *trace.pair_histogram);
  }
  if (dumps.gray) {
    rope::save_pgm(trace.gray_in, fs::path(base) += ".gray-in.pgm");
    rope::save_pgm(trace.gray_out, fs::path(base) += ".gray-out.pgm");
  }
}

std::vector<std::string> sorted(std::vector<std::string> files) {
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_enhance(const std::vector<std::string> &inputs_raw,
                const std::string &out_flag, const PipelineConfig &cfg,
                const DumpConfig &dumps, int jobs) {
  const rope::Method method = *rope::parse_method(cfg.method);
  const std::vector<std::string> inputs = sorted(inputs_raw);

  // Single explicit .png target keeps `enhance in.png -o out.png` natural;
  // everything else lands in an output directory as <stem>.<method>.png.
  const bool single_file_mode =
      inputs.size() == 1 && !out_flag.empty() &&
      fs::path(out_flag).extension() == ".png" && !fs::is_directory(out_flag);

  fs::path out_dir;
  if (!single_file_mode) {
    out_dir = resolve_output_dir(out_flag);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::is_directory(out_dir)) {
      std::cerr << "rope: cannot create output directory '" << out_dir.string()
                << "'\n";
      return 1;
    }
  } else if (fs::path(out_flag).has_parent_path()) {
    std::error_code ec;
    fs::create_directories(fs::path(out_flag).parent_path(), ec);
  }

  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};
  std::mutex log_mutex;

  const auto worker = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) {
      const std::string &input = inputs[i];
      const fs::path out_path =
          single_file_mode
              ? fs::path(out_flag)
              : out_dir / (fs::path(input).stem().string() + "." + cfg.method +
                           ".png");
      try {
        const rope::ColorImage image = rope::load_image(input);
        rope::EnhanceTrace trace;
        const rope::ColorImage result = rope::enhance(
            image, cfg.params, method, dumps.any() ? &trace : nullptr);
        rope::save_image(result, out_path);
        if (dumps.any()) write_dumps(out_path, input, cfg, dumps, trace);
      } catch (const std::exception &e) {
        const std::scoped_lock lock(log_mutex);
        std::cerr << "rope: " << input << ": " << e.what() << '\n';
        ++failures;
      }
    }
  };

  const int thread_count =
      std::clamp<int>(jobs, 1, static_cast<int>(inputs.size()));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (std::thread &th : pool) th.join();
  }
  return failures == 0 ? 0 : 1;
}

int cmd_metrics(const std::vector<std::string> &inputs_raw,
                const std::string &enhanced_dir,
                const rope::MetricsParams &mparams, const std::string &format,
                const std::string &out_path) {
  std::vector<MetricsRow> rows;
  int failures = 0;
  for (const std::string &input : sorted(inputs_raw)) {
    try {
      const rope::ColorImage reference = rope::load_image(input);
      rope::ColorImage enhanced = reference;
      if (!enhanced_dir.empty()) {
        const fs::path pair = fs::path(enhanced_dir) / fs::path(input).filename();
        if (!fs::exists(pair)) {
          std::cerr << "rope: " << input << ": no enhanced pair at '"
                    << pair.string() << "', row skipped\n";
          ++failures;
          continue;
        }
        enhanced = rope::load_image(pair);
      }
      rows.push_back({fs::path(input).filename().string(),
                      rope::compute_metrics(reference, enhanced, mparams)});
    } catch (const std::exception &e) {
      std::cerr << "rope: " << input << ": " << e.what() << '\n';
      ++failures;
    }
  }
  const int emit_status = emit_report(rows, format, out_path);
  return failures == 0 && emit_status == 0 ? 0 : 1;
}

int cmd_compare(const std::string &input, const std::string &out_flag,
                PipelineConfig cfg, const rope::MetricsParams &mparams,
                const std::string &format, const std::string &report_path) {
  const fs::path out_dir = resolve_output_dir(out_flag);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir)) {
    std::cerr << "rope: cannot create output directory '" << out_dir.string()
              << "'\n";
    return 1;
  }

  rope::ColorImage image;
  try {
    image = rope::load_image(input);
  } catch (const std::exception &e) {
    std::cerr << "rope: " << input << ": " << e.what() << '\n';
    return 1;
  }

  std::vector<MetricsRow> rows;
  int failures = 0;
  for (const rope::Method method : rope::kAllMethods) {
    const std::string name(rope::method_name(method));
    const fs::path out_path =
        out_dir / (fs::path(input).stem().string() + "." + name + ".png");
    try {
      const rope::ColorImage result = rope::enhance(image, cfg.params, method);
      rope::save_image(result, out_path);
      rows.push_back({out_path.filename().string(),
                      rope::compute_metrics(image, result, mparams)});
    } catch (const std::exception &e) {
      std::cerr << "rope: " << name << ": " << e.what() << '\n';
      ++failures;
    }
  }
  const int emit_status = emit_report(rows, format, report_path);
  return failures == 0 && emit_status == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Adaptive image enhancement via reflectance-weighted histogram "
               "equalization"};
  app.require_subcommand(1);

  // enhance
  std::vector<std::string> enhance_inputs;
  std::string enhance_out;
  PipelineConfig enhance_cfg;
  DumpConfig dumps;
  int jobs = 1;
  CLI::App *enhance =
      app.add_subcommand("enhance", "Enhance one or more images");
  enhance->add_option("inputs", enhance_inputs, "Input images (PNG or JPEG)")
      ->required();
  enhance->add_option("-o,--output", enhance_out,
                      "Output file (single input) or directory");
  add_pipeline_flags(enhance, enhance_cfg);
  enhance->add_flag("--sidecar", dumps.sidecar,
                    "Write a JSON sidecar with the mapping and histogram");
  enhance->add_flag("--dump-illumination", dumps.illumination,
                    "Dump the illumination map as PFM (rope only)");
  enhance->add_flag("--dump-reflectance", dumps.reflectance,
                    "Dump the reflectance map as PFM (rope only)");
  enhance->add_flag("--dump-h2", dumps.h2,
                    "Dump the 2D pair histogram as CSV");
  enhance->add_flag("--dump-gray", dumps.gray,
                    "Dump the gray channel before/after as PGM");
  enhance->add_option("--jobs", jobs, "Parallel worker count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // metrics
  std::vector<std::string> metrics_inputs;
  std::string metrics_enhanced, metrics_out;
  std::string metrics_format = "csv";
  rope::MetricsParams metrics_params;
  CLI::App *metrics =
      app.add_subcommand("metrics", "Report DE/EME/PD/LOE per image");
  metrics->add_option("inputs", metrics_inputs, "Reference images")
      ->required();
  metrics->add_option("--enhanced", metrics_enhanced,
                      "Directory of enhanced images paired by filename");
  metrics->add_option("--format", metrics_format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  metrics->add_option("-o,--output", metrics_out,
                      "Report file (default stdout)");
  add_metric_flags(metrics, metrics_params);

  // compare
  std::string compare_input, compare_out, compare_report;
  std::string compare_format = "csv";
  PipelineConfig compare_cfg;
  rope::MetricsParams compare_params;
  CLI::App *compare = app.add_subcommand(
      "compare", "Run every method on one image and tabulate metrics");
  compare->add_option("input", compare_input, "Input image")->required();
  compare->add_option("-o,--output", compare_out, "Output directory");
  add_pipeline_flags(compare, compare_cfg);
  compare->get_option("--method")->group("");  // method list is fixed here
  add_metric_flags(compare, compare_params);
  compare->add_option("--format", compare_format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  compare->add_option("--report", compare_report,
                      "Metrics table file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (enhance->parsed()) {
      return cmd_enhance(enhance_inputs, enhance_out, enhance_cfg, dumps, jobs);
    }
    if (metrics->parsed()) {
      return cmd_metrics(metrics_inputs, metrics_enhanced, metrics_params,
                         metrics_format, metrics_out);
    }
    if (compare->parsed()) {
      return cmd_compare(compare_input, compare_out, compare_cfg,
                         compare_params, compare_format, compare_report);
    }
  } catch (const std::exception &e) {
    std::cerr << "rope: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
