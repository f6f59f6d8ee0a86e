#pragma once

#include <cstdint>
#include <vector>

#include "xdefect/image.hpp"

namespace xdefect {

/// Parameters of the synthetic casting-radiograph generator.
struct SynthParams {
  int width = 256;
  int height = 256;
  int min_defects = 1;
  int max_defects = 4;
  // Defect bounding-box side is drawn uniformly from this range (pixels),
  // centred near 20 px.
  double min_side = 12.0;
  double max_side = 30.0;
  double background_level = 150.0;
  double background_amplitude = 25.0;
  // Defects are darker than the local background by this range.
  double min_depth = 25.0;
  double max_depth = 60.0;
  // Minimum gap between defects and to the image border, in pixels.
  int margin = 3;
  int class_id = 1;

  void validate() const;
};

/// One synthetic image: smooth low-frequency background with dark,
/// elliptical or lobed defects. Each ground-truth box is the tight box of
/// its mask, and every defect is a single 8-connected component.
AnnotatedImage synth_image(const SynthParams& p, std::uint64_t seed);

/// `n` images; image i uses a seed derived from (seed, i), so the result
/// does not depend on how the work is split.
std::vector<AnnotatedImage> synth_dataset(int n, const SynthParams& p, std::uint64_t seed);

/// The noise-free background the generator used for image `seed`.
GrayImage synth_background(const SynthParams& p, std::uint64_t seed);

/// SplitMix64 finalizer, used to derive per-item seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace xdefect
