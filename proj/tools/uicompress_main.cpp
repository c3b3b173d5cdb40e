// Copyright 2026 The uicompress Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// uicompress: visual token selection and repetition suppression tools.
//
// Exit codes: 0 success, 1 input error, 2 internal invariant violation.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uicompress/detect.hpp"
#include "uicompress/error.hpp"
#include "uicompress/io.hpp"
#include "uicompress/metrics.hpp"
#include "uicompress/mock_decoder.hpp"
#include "uicompress/penalty_engine.hpp"
#include "uicompress/pipeline.hpp"
#include "uicompress/raster.hpp"
#include "uicompress/repetition_tracker.hpp"

namespace fs = std::filesystem;
using namespace uicompress;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

struct ShapeOptions {
  std::uint64_t layers = ModelShape{}.layers;
  std::uint64_t hidden = ModelShape{}.hidden;
  std::uint64_t ffn = ModelShape{}.ffn;

  void attach(CLI::App* app) {
    app->add_option("--layers", layers, "Transformer layers (T)")->check(CLI::PositiveNumber);
    app->add_option("--hidden", hidden, "Hidden size (d)")->check(CLI::PositiveNumber);
    app->add_option("--ffn", ffn, "FFN intermediate size (m)")->check(CLI::PositiveNumber);
  }
  [[nodiscard]] ModelShape shape() const { return ModelShape{layers, hidden, ffn}; }
};

struct PenaltyOptions {
  double lambda = kDefaultDecay;
  std::size_t steps = kDefaultSuppressSteps;
  std::string sign_mode = "literal";
  std::size_t min_unit = kDefaultMinUnit;

  void attach(CLI::App* app) {
    app->add_option("--lambda", lambda, "Decay factor per repetition")->check(CLI::Range(0.0, 1.0));
    app->add_option("--steps", steps, "Decoding steps a penalty stays active")
        ->check(CLI::PositiveNumber);
    app->add_option("--sign-mode", sign_mode, "literal | sign-aware")
        ->check(CLI::IsMember({"literal", "sign-aware"}));
    app->add_option("--min-unit", min_unit, "Shortest repeated text unit in characters")
        ->check(CLI::PositiveNumber);
  }
  [[nodiscard]] PenaltyConfig penalty() const {
    PenaltyConfig c{lambda, steps, parse_sign_mode(sign_mode)};
    c.validate();
    return c;
  }
  [[nodiscard]] TrackerConfig tracker() const {
    TrackerConfig t;
    t.min_unit = min_unit;
    return t;
  }
};

// ---------------------------------------------------------------- detect

struct DetectCmd {
  std::string image;
  std::string output;
  DetectOptions options;

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("detect", "Detect element boxes in a PGM/PPM screenshot");
    app->add_option("image", image, "Binary PGM (P5) or PPM (P6)")->required();
    app->add_option("-o,--output", output, "Elements file (default: stdout)");
    app->add_option("--threshold", options.gradient_threshold, "Edge threshold, fraction of peak")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--min-area", options.min_area, "Minimum component box area (px^2)");
    app->callback([this] { run(); });
  }

  void run() const { emit(format_elements(naive_detect(read_pnm(fs::path(image)), options)), output); }
};

// ---------------------------------------------------------------- compress

struct CompressCmd {
  std::string elements;
  int width = 0;
  int height = 0;
  std::string attention;
  std::string scores;
  std::string output;
  std::string report_path;
  std::string manifest;
  std::string out_dir;
  std::size_t jobs = 1;
  std::size_t text_tokens = 0;
  std::string mode = "balanced";
  bool no_edges = false;
  CompressConfig config;
  ShapeOptions shape;

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("compress", "Select visual tokens for a page (or a corpus)");
    app->add_option("--elements", elements, "Elements file");
    app->add_option("--width", width, "Image width in pixels");
    app->add_option("--height", height, "Image height in pixels");
    auto* att = app->add_option("--attention", attention, "ATTN or QKAT binary attention file");
    app->add_option("--scores", scores, "CLS scores, one per grid token per line")->excludes(att);
    app->add_option("-o,--output", output, "Mask file (default: stdout)");
    app->add_option("--report", report_path, "Write the run report here (default: stderr)");
    app->add_option("--manifest", manifest, "Corpus manifest; compresses every page");
    app->add_option("--out-dir", out_dir, "Directory for per-page masks in manifest mode");
    app->add_option("-j,--jobs", jobs, "Worker threads in manifest mode")->check(CLI::PositiveNumber);
    app->add_option("--patch", config.patch, "Patch size in pixels")->check(CLI::PositiveNumber);
    app->add_option("--merge-factor", config.merge_factor, "Text merge gap / height")
        ->check(CLI::PositiveNumber);
    app->add_option("-r,--ratio", config.refine_ratio, "Refinement ratio r")->check(CLI::Range(0.0, 1.0));
    app->add_option("--mode", mode, "balanced | literal")->check(CLI::IsMember({"balanced", "literal"}));
    app->add_flag("--no-edges", no_edges, "Do not select patches under tree links");
    app->add_option("--cls-index", config.cls_index, "Position of the CLS token in the attention");
    app->add_option("--text-tokens", text_tokens, "Prompt text tokens for the cost report");
    shape.attach(app);
    app->callback([this] { run(); });
  }

  void finalize_config() {
    config.refine_mode = mode == "literal" ? RefineMode::Literal : RefineMode::Balanced;
    config.include_edges = !no_edges;
    config.validate();
  }

  [[nodiscard]] RunReport make_report(const CompressResult& r) const {
    ReportInputs in;
    in.shape = shape.shape();
    in.image_tokens = r.mask.size();
    in.kept_tokens = r.mask.count();
    in.text_tokens = text_tokens;
    return report(in);
  }

  void run() {
    finalize_config();
    if (!manifest.empty()) return run_manifest();
    if (elements.empty() || width < 1 || height < 1) {
      throw InputError("compress needs --elements, --width and --height (or --manifest)");
    }
    const PatchGrid grid = PatchGrid::make(width, height, config.patch);
    std::optional<std::vector<double>> importance;
    if (!scores.empty()) importance = parse_scores(read_text_file(scores));
    if (!attention.empty()) importance = visual_scores(read_attention(attention), grid, config.cls_index);

    const CompressResult r = compress(parse_elements(read_text_file(elements)), grid, importance, config);
    emit(format_mask(r.mask), output);
    const std::string rep = format_report(make_report(r));
    if (report_path.empty()) {
      std::cerr << rep;
    } else {
      write_text_file(report_path, rep);
    }
  }

  void run_manifest() const {
    const Manifest m = read_manifest(manifest);
    const auto results = compress_manifest(m, config, jobs);
    if (!out_dir.empty()) fs::create_directories(out_dir);
    double removed_sum = 0.0;
    std::ostringstream summary;
    summary << "page\tselected\ttotal\tcompression_ratio\n";
    for (const PageResult& p : results) {
      if (!out_dir.empty()) write_text_file(fs::path(out_dir) / (p.name + ".mask.json"), format_mask(p.result.mask));
      removed_sum += p.result.ratio.removed;
      summary << p.name << '\t' << p.result.mask.count() << '\t' << p.result.mask.size() << '\t'
              << p.result.ratio.removed << '\n';
    }
    if (!results.empty()) summary << "mean\t-\t-\t" << removed_sum / double(results.size()) << '\n';
    emit(summary.str(), report_path);
  }
};

// ---------------------------------------------------------------- track

struct TrackCmd {
  bool raw = false;
  std::size_t chunk = 0;
  std::string vocab_path;
  PenaltyOptions penalty;

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand(
        "track", "Track repetitions in generated text on stdin and emit penalty directives");
    app->add_flag("--raw", raw, "Read plain text instead of JSON token requests");
    app->add_option("--chunk", chunk, "Raw mode: characters per pseudo-token (0 = per line)");
    app->add_option("--vocab", vocab_path, "JSON array of token surfaces indexed by id");
    penalty.attach(app);
    app->callback([this] { run(); });
  }

  void run() const {
    const PenaltyConfig config = penalty.penalty();
    RepetitionTracker tracker(penalty.tracker());
    Vocabulary vocab;
    if (!vocab_path.empty()) {
      vocab = Vocabulary(parse_vocabulary(read_text_file(vocab_path)));
    }

    const auto respond = [&](const std::string& surface) {
      std::vector<WireDirective> out;
      for (const RepeatEvent& ev : tracker.feed(surface)) {
        if (auto d = on_repeat(ev, config, vocab)) {
          out.push_back(WireDirective{d->target_ids, d->scale, d->remaining_steps});
        }
      }
      std::cout << format_track_response(out) << '\n' << std::flush;
    };

    if (!raw) {
      std::string line;
      while (std::getline(std::cin, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const TrackRequest req = parse_track_request(line);
        if (vocab_path.empty()) {
          for (TokenId id : req.ids) vocab.add(id, req.surface);
        }
        respond(req.surface);
      }
      return;
    }

    std::ostringstream all;
    all << std::cin.rdbuf();
    const std::string text = all.str();
    std::vector<std::string> pieces;
    if (chunk == 0) {
      std::size_t start = 0;
      while (start < text.size()) {
        const std::size_t nl = text.find('\n', start);
        const std::size_t end = nl == std::string::npos ? text.size() : nl + 1;
        pieces.push_back(text.substr(start, end - start));
        start = end;
      }
    } else {
      for (std::size_t i = 0; i < text.size(); i += chunk) pieces.push_back(text.substr(i, chunk));
    }
    // Without a vocabulary each distinct piece becomes one token id.
    std::map<std::string, TokenId> ids;
    for (const std::string& piece : pieces) {
      if (vocab_path.empty() && !ids.contains(piece)) {
        const auto id = static_cast<TokenId>(ids.size());
        ids.emplace(piece, id);
        vocab.add(id, piece);
      }
      respond(piece);
    }
  }
};

// ---------------------------------------------------------------- simulate

struct SimulateCmd {
  std::string scenario;
  std::string adts = "on";
  std::string output;
  std::string report_path;
  PenaltyOptions penalty;

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("simulate", "Greedy-decode a mock scenario with or without repetition suppression");
    app->add_option("scenario", scenario, "Scenario file")->required();
    app->add_option("--adts", adts, "Repetition suppression: on | off")->check(CLI::IsMember({"on", "off"}));
    app->add_option("-o,--output", output, "Transcript file (default: stdout)");
    app->add_option("--report", report_path, "Write the run report here (default: stderr)");
    penalty.attach(app);
    app->callback([this] { run(); });
  }

  void run() const {
    const PenaltyConfig config = penalty.penalty();
    const MockScenario s = parse_scenario(read_text_file(scenario));
    const Transcript t = simulate(s, adts == "on", config, penalty.tracker());
    emit(format_transcript(t, config), output);

    std::ostringstream rep;
    rep << "{\n  \"generated_tokens\": " << t.token_count()
        << ",\n  \"hit_cap\": " << (t.hit_cap ? "true" : "false") << ",\n  \"escape_step\": "
        << (t.escape_step ? std::to_string(*t.escape_step) : "null")
        << ",\n  \"events\": " << t.events.size() << ",\n  \"directives\": " << t.directives.size()
        << "\n}\n";
    if (report_path.empty()) {
      std::cerr << rep.str();
    } else {
      write_text_file(report_path, rep.str());
    }
  }
};

// ---------------------------------------------------------------- flops

struct FlopsCmd {
  std::uint64_t seq = 1;
  ShapeOptions shape;

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("flops", "Prefill-equivalent FLOPs of one forward pass");
    app->add_option("--seq", seq, "Sequence length n")->required()->check(CLI::PositiveNumber);
    shape.attach(app);
    app->callback([this] { std::cout << flops(shape.shape(), seq) << '\n'; });
  }
};

// ---------------------------------------------------------------- viz

struct VizCmd {
  std::string mask;
  std::string output;
  std::string elements;
  double merge_factor = kDefaultMergeFactor;

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("viz", "Render a mask as a PGM image");
    app->add_option("mask", mask, "Mask file")->required();
    app->add_option("-o,--output", output, "Output PGM")->required();
    app->add_option("--elements", elements, "Overlay element boxes and tree links");
    app->add_option("--merge-factor", merge_factor, "Text merge factor used for the overlay")
        ->check(CLI::PositiveNumber);
    app->callback([this] { run(); });
  }

  void run() const {
    const TokenMask m = parse_mask(read_text_file(mask));
    VizOverlay overlay;
    if (!elements.empty()) {
      overlay.boxes = resolve_overlaps(
          merge_text_fragments(parse_elements(read_text_file(elements)), merge_factor));
      const ElementTree tree = kruskal_mst(build_graph(overlay.boxes));
      for (const Edge& e : tree.edges) overlay.edges.push_back(e.witness);
    }
    write_pgm(fs::path(output), render_mask(m, overlay));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uicompress: UI token compression toolkit"};
  app.require_subcommand(1);

  DetectCmd detect;
  CompressCmd compress_cmd;
  TrackCmd track;
  SimulateCmd simulate_cmd;
  FlopsCmd flops_cmd;
  VizCmd viz;
  detect.attach(app);
  compress_cmd.attach(app);
  track.attach(app);
  simulate_cmd.attach(app);
  flops_cmd.attach(app);
  viz.attach(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
