#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xdefect/cli/formats.hpp"
#include "xdefect/eval.hpp"

namespace xdefect::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2 };

enum class EvalMode { BBox, Mask, Both };

struct EvaluateOptions {
  std::filesystem::path gt;
  std::filesystem::path det;
  double iou_threshold = 0.5;
  Interpolation interpolation = Interpolation::AllPoints;
  EvalMode mode = EvalMode::Both;
  bool strict_iou = false;
  std::optional<std::filesystem::path> report;   // human-readable copy
  std::optional<std::filesystem::path> results;  // key=value file
};

struct IngestOptions {
  // A box file, or a directory searched recursively for *.txt box files.
  std::filesystem::path src;
  std::filesystem::path out;
  BoxOrdering ordering = BoxOrdering::Gdxray;
};

struct MasksToBoxesOptions {
  // Directory of *.png or *.rle masks.
  std::filesystem::path masks;
  std::filesystem::path out;
  int tiles = 8;
};

struct SynthOptions {
  int n = 25;
  std::uint64_t seed = 1;
  std::filesystem::path out;
};

struct SelfcheckOptions {
  std::uint64_t seed = 20240601;
  double perturb_smooth_l1_slope = 0.0;
};

/// Each command writes its normal output to `out` and diagnostics to `err`,
/// and returns an ExitCode. Input problems are reported, not thrown.
int cmd_evaluate(const EvaluateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_ingest_gdxray(const IngestOptions& opt, std::ostream& out, std::ostream& err);
int cmd_masks_to_boxes(const MasksToBoxesOptions& opt, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err);
int cmd_selfcheck(const SelfcheckOptions& opt, std::ostream& out, std::ostream& err);

/// Image id of a GDXray image: series name and zero-padded index,
/// e.g. ("C0001", 7) -> "C0001_0007".
std::string gdxray_image_id(const std::string& series, long index);

/// Parse `args` (program name first) and dispatch to a command.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xdefect::cli
