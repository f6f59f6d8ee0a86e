#include "xdefect/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "xdefect/errors.hpp"
#include "xdefect/mask.hpp"
#include "xdefect/oracles/suites.hpp"
#include "xdefect/png_io.hpp"
#include "xdefect/synth.hpp"
#include "xdefect/tiles.hpp"

namespace xdefect::cli {

namespace fs = std::filesystem;

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError(path.string() + ": cannot open for writing");
  f << text;
}

BinaryMask load_mask(const fs::path& base, const std::string& rel, const std::string& owner) {
  const fs::path p = fs::path(rel).is_absolute() ? fs::path(rel) : base / rel;
  try {
    return read_rle_file(p.string());
  } catch (const std::exception& e) {
    throw InputError(owner + ": mask " + p.string() + ": " + e.what());
  }
}

std::vector<fs::path> sorted_files(const fs::path& dir, std::initializer_list<const char*> exts,
                                   bool recursive) {
  std::vector<fs::path> out;
  auto keep = [&](const fs::directory_entry& e) {
    if (!e.is_regular_file()) return;
    const std::string ext = e.path().extension().string();
    if (std::any_of(exts.begin(), exts.end(), [&](const char* x) { return ext == x; })) {
      out.push_back(e.path());
    }
  };
  if (recursive) {
    for (const auto& e : fs::recursive_directory_iterator(dir)) keep(e);
  } else {
    for (const auto& e : fs::directory_iterator(dir)) keep(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string gdxray_image_id(const std::string& series, long index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%04ld", index);
  return series + buf;
}

int cmd_evaluate(const EvaluateOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(opt.iou_threshold >= 0.0 && opt.iou_threshold <= 1.0)) {
      throw InputError("--iou-thresh must lie in [0, 1]");
    }
    const std::vector<GtRecord> gt_rows = read_gt_csv(opt.gt);
    const std::vector<DetRecord> det_rows = read_detections(opt.det);
    spdlog::debug("loaded {} ground-truth and {} detection records", gt_rows.size(), det_rows.size());

    const bool have_masks =
        std::all_of(gt_rows.begin(), gt_rows.end(), [](const GtRecord& r) { return !r.mask.empty(); }) &&
        std::all_of(det_rows.begin(), det_rows.end(), [](const DetRecord& r) { return !r.mask.empty(); });
    if (opt.mode == EvalMode::Mask && !have_masks) {
      throw InputError("--mode mask needs a mask on every ground-truth and detection record");
    }
    const bool use_masks = opt.mode != EvalMode::BBox && have_masks;
    if (opt.mode == EvalMode::Both && !have_masks) {
      err << "note: mask evaluation skipped, not every record has a mask\n";
    }

    const fs::path gt_base = opt.gt.parent_path(), det_base = opt.det.parent_path();
    std::vector<GroundTruth> gts;
    gts.reserve(gt_rows.size());
    for (const GtRecord& r : gt_rows) {
      GroundTruth g{r.image_id, r.class_id, r.box, std::nullopt};
      if (use_masks) g.mask = load_mask(gt_base, r.mask, opt.gt.string());
      gts.push_back(std::move(g));
    }
    std::vector<Detection> dets;
    dets.reserve(det_rows.size());
    for (const DetRecord& r : det_rows) {
      Detection d{r.image_id, r.class_id, r.score, r.box, std::nullopt};
      if (use_masks) d.mask = load_mask(det_base, r.mask, opt.det.string());
      dets.push_back(std::move(d));
    }

    EvalConfig cfg;
    cfg.iou_threshold = opt.iou_threshold;
    cfg.strict = opt.strict_iou;
    cfg.interpolation = opt.interpolation;
    cfg.bbox = opt.mode != EvalMode::Mask;
    cfg.mask = use_masks;
    const EvalReport rep = evaluate(dets, gts, cfg);

    if (!rep.unknown_images.empty()) {
      err << "warning: detections reference " << rep.unknown_images.size()
          << " image id(s) with no ground truth; their detections count as false positives:";
      for (const std::string& id : rep.unknown_images) err << ' ' << id;
      err << '\n';
    }
    const std::string text = format_report(rep);
    out << text;
    if (opt.report) write_text(*opt.report, text);
    if (opt.results) write_text(*opt.results, format_results(rep));
    return static_cast<int>(kOk);
  });
}

int cmd_ingest_gdxray(const IngestOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<fs::path> files;
    if (fs::is_directory(opt.src)) {
      files = sorted_files(opt.src, {".txt"}, true);
    } else if (fs::is_regular_file(opt.src)) {
      files.push_back(opt.src);
    } else {
      throw InputError(opt.src.string() + ": no such file or directory");
    }
    std::vector<GtRecord> rows;
    std::size_t rejected = 0;
    for (const fs::path& f : files) {
      std::ifstream in(f, std::ios::binary);
      if (!in) throw InputError(f.string() + ": cannot open");
      const GdxrayParse parsed = parse_gdxray(in, f.string(), opt.ordering);
      for (const std::string& msg : parsed.rejected) err << "warning: " << msg << '\n';
      rejected += parsed.rejected.size();
      std::string series = fs::absolute(f).parent_path().filename().string();
      if (series.empty()) series = "series";
      for (const GdxrayRow& r : parsed.rows) {
        rows.push_back({gdxray_image_id(series, r.index), 1, r.box, ""});
      }
    }
    write_gt_csv(opt.out, rows);
    out << "ingested " << rows.size() << " box(es) from " << files.size() << " file(s), " << rejected
        << " row(s) rejected\n";
    return static_cast<int>(kOk);
  });
}

int cmd_masks_to_boxes(const MasksToBoxesOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.tiles < 1) throw InputError("--tiles must be at least 1");
    if (!fs::is_directory(opt.masks)) throw InputError(opt.masks.string() + ": not a directory");
    const fs::path sidecars = opt.out.parent_path() / "masks";
    fs::create_directories(sidecars);
    std::vector<GtRecord> rows;
    const std::vector<fs::path> files = sorted_files(opt.masks, {".png", ".rle"}, false);
    for (const fs::path& f : files) {
      const BinaryMask m = f.extension() == ".png" ? read_png_mask(f.string()) : read_rle_file(f.string());
      if (m.width() < opt.tiles) {
        throw InputError(f.string() + ": width " + std::to_string(m.width()) + " is below --tiles " +
                         std::to_string(opt.tiles));
      }
      const std::string stem = f.stem().string();
      const std::vector<TileRegion> regions = tile_regions(m, opt.tiles);
      std::vector<int> per_tile(static_cast<std::size_t>(opt.tiles), 0);
      for (const TileRegion& r : regions) {
        const std::string image_id = opt.tiles > 1 ? stem + "_t" + std::to_string(r.tile) : stem;
        const std::string name = image_id + "_r" + std::to_string(per_tile[r.tile]++) + ".rle";
        write_rle_file((sidecars / name).string(), r.mask);
        rows.push_back({image_id, 1, r.box, "masks/" + name});
      }
      spdlog::debug("{}: {} region(s) over {} tile(s)", f.string(), regions.size(), opt.tiles);
    }
    write_gt_csv(opt.out, rows);
    out << "wrote " << rows.size() << " box(es) from " << files.size() << " mask file(s)\n";
    return static_cast<int>(kOk);
  });
}

int cmd_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.n < 1) throw InputError("--n must be at least 1");
    fs::create_directories(opt.out / "images");
    fs::create_directories(opt.out / "masks");
    const std::vector<AnnotatedImage> data = synth_dataset(opt.n, SynthParams{}, opt.seed);
    std::vector<GtRecord> rows;
    for (std::size_t i = 0; i < data.size(); ++i) {
      char id[32];
      std::snprintf(id, sizeof id, "synth_%04zu", i);
      write_png((opt.out / "images" / (std::string(id) + ".png")).string(), data[i].image, 8);
      for (std::size_t k = 0; k < data[i].boxes.size(); ++k) {
        const std::string name = std::string(id) + "_r" + std::to_string(k) + ".rle";
        write_rle_file((opt.out / "masks" / name).string(), data[i].masks[k]);
        rows.push_back({id, data[i].boxes[k].class_id, data[i].boxes[k].box, "masks/" + name});
      }
    }
    write_gt_csv(opt.out / "gt.csv", rows);
    out << "wrote " << data.size() << " image(s) with " << rows.size() << " defect(s) to "
        << opt.out.string() << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_selfcheck(const SelfcheckOptions& opt, std::ostream& out, std::ostream& err) {
  oracles::SuiteOptions so;
  so.seed = opt.seed;
  so.smooth_l1_slope_perturbation = opt.perturb_smooth_l1_slope;
  std::vector<std::string> failed;
  for (const oracles::SuiteResult& r : oracles::run_all_suites(so)) {
    out << oracles::format_suite(r) << '\n';
    if (!r.passed) failed.push_back(r.name);
  }
  if (!failed.empty()) {
    err << "selfcheck failed:";
    for (const std::string& name : failed) err << ' ' << name;
    err << '\n';
    return kCheckFailed;
  }
  out << "selfcheck passed\n";
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Casting-defect detection geometry, losses and evaluation", "xdefect"};
  app.require_subcommand(1);

  EvaluateOptions eval_opt;
  std::string gt, det, interp = "all", mode = "both", report, results;
  CLI::App* ev = app.add_subcommand("evaluate", "Score detections against ground truth");
  ev->add_option("--gt", gt, "Ground-truth CSV")->required();
  ev->add_option("--det", det, "Detections (JSON lines)")->required();
  ev->add_option("--iou-thresh", eval_opt.iou_threshold, "IoU needed for a match")
      ->capture_default_str();
  ev->add_option("--interp", interp, "PR interpolation")
      ->check(CLI::IsMember({"all", "11pt"}))
      ->capture_default_str();
  ev->add_option("--mode", mode, "Which tasks to score")
      ->check(CLI::IsMember({"bbox", "mask", "both"}))
      ->capture_default_str();
  ev->add_flag("--strict-iou", eval_opt.strict_iou, "Require IoU strictly above the threshold");
  ev->add_option("--report", report, "Also write the human-readable report here");
  ev->add_option("--results", results, "Write key=value results here");

  IngestOptions ingest_opt;
  std::string src, ingest_out, ordering;
  CLI::App* ig = app.add_subcommand("ingest-gdxray", "Convert GDXray box files to ground-truth CSV");
  ig->add_option("--src", src, "Box file or directory of box files")->required();
  ig->add_option("--out", ingest_out, "Output CSV")->required();
  ig->add_option("--ordering", ordering, "Column order after the image index")
      ->check(CLI::IsMember({"xyxy", "gdxray"}))
      ->required();

  MasksToBoxesOptions m2b_opt;
  std::string mask_dir, m2b_out;
  CLI::App* mb = app.add_subcommand("masks-to-boxes", "Trace masks into tight boxes");
  mb->add_option("--masks", mask_dir, "Directory of PNG or RLE masks")->required();
  mb->add_option("--out", m2b_out, "Output CSV; sidecar masks go to masks/ beside it")->required();
  mb->add_option("--tiles", m2b_opt.tiles, "Vertical strips per mask")->capture_default_str();

  SynthOptions synth_opt;
  std::string synth_out;
  CLI::App* sy = app.add_subcommand("synth", "Generate a synthetic defect dataset");
  sy->add_option("--n", synth_opt.n, "Number of images")->capture_default_str();
  sy->add_option("--seed", synth_opt.seed, "Generator seed")->capture_default_str();
  sy->add_option("--out", synth_out, "Output directory")->required();

  SelfcheckOptions check_opt;
  CLI::App* sc = app.add_subcommand("selfcheck", "Run gradient and oracle suites");
  sc->add_option("--seed", check_opt.seed, "Suite seed")->capture_default_str();
  sc->add_option("--perturb-smooth-l1-slope", check_opt.perturb_smooth_l1_slope)->group("");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  if (*ev) {
    eval_opt.gt = gt;
    eval_opt.det = det;
    eval_opt.interpolation = interp == "11pt" ? Interpolation::ElevenPoint : Interpolation::AllPoints;
    eval_opt.mode = mode == "bbox" ? EvalMode::BBox : mode == "mask" ? EvalMode::Mask : EvalMode::Both;
    if (!report.empty()) eval_opt.report = report;
    if (!results.empty()) eval_opt.results = results;
    return cmd_evaluate(eval_opt, out, err);
  }
  if (*ig) {
    ingest_opt.src = src;
    ingest_opt.out = ingest_out;
    ingest_opt.ordering = ordering == "gdxray" ? BoxOrdering::Gdxray : BoxOrdering::Xyxy;
    return cmd_ingest_gdxray(ingest_opt, out, err);
  }
  if (*mb) {
    m2b_opt.masks = mask_dir;
    m2b_opt.out = m2b_out;
    return cmd_masks_to_boxes(m2b_opt, out, err);
  }
  if (*sy) {
    synth_opt.out = synth_out;
    return cmd_synth(synth_opt, out, err);
  }
  return cmd_selfcheck(check_opt, out, err);
}

}  // namespace xdefect::cli
