#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "seizcnn/arch/analysis.hpp"
#include "seizcnn/arch/network_spec.hpp"
#include "seizcnn/eegio/model_io.hpp"
#include "seizcnn/eegio/recording.hpp"
#include "seizcnn/eegio/synth.hpp"
#include "seizcnn/error.hpp"
#include "seizcnn/eval/evaluate.hpp"
#include "seizcnn/eval/fusion.hpp"
#include "seizcnn/eval/loo.hpp"
#include "seizcnn/eval/metrics.hpp"
#include "seizcnn/eval/stats.hpp"
#include "seizcnn/random.hpp"

namespace seizcnn::cli {

namespace fs = std::filesystem;

namespace {

// Every knob a command can read, bound to flags and to the config file.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  fs::path out_dir = "out";
  std::size_t threads = 1;

  // data
  fs::path data_dir;
  std::vector<std::size_t> channels;
  std::size_t subjects = 0;
  double duration_s = 1200.0;
  std::size_t synth_channels = 8;
  double synth_fs = 256.0;
  std::size_t synth_events = 3;
  double event_min_s = 60.0;
  double event_max_s = 120.0;
  std::string prefix = "subject";

  // architecture and training
  std::string arch = "cnn11";
  std::size_t input_len = 256;
  bool csv = false;
  std::string model_name = "model";
  fs::path model_stem;
  std::size_t epochs = 100;
  double lr = 0.01;
  double momentum = 0.9;
  std::size_t batch = 2048;
  double train_fraction = 0.02;
  double l2 = 1e-3;

  // post-processing and metrics
  std::size_t ma_s = 60;
  std::size_t bg_window_s = 600;
  double beta = 1.0;
  std::size_t collar_s = 30;
  std::string combine = "max";
  double max_fdh = 0.25;
  bool raw = false;

  // files
  fs::path trace;
  fs::path labels;
  fs::path cnn_trace;
  fs::path svm_trace;
  fs::path cnn_dir;
  fs::path svm_dir;
  fs::path labels_dir;
  std::string output_name;

  // fusion
  double alpha = 0.5;
  std::string mode = "arithmetic";
  double step = 0.1;
};

std::string f6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

eval::ChannelCombine parse_combine(const std::string& s) {
  if (s == "max") return eval::ChannelCombine::max;
  if (s == "mean") return eval::ChannelCombine::mean;
  throw_usage_error("unknown channel combination '" + s + "' (max | mean)");
}

eval::PostProcessConfig post_config(const ExperimentConfig& c) {
  if (c.bg_window_s < 60) throw_usage_error("background window must be >= 60 s");
  if (c.beta < 0.0) throw_usage_error("beta must be >= 0");
  eval::PostProcessConfig p;
  p.moving_average_s = c.ma_s;
  p.background_window_s = c.bg_window_s;
  p.background_beta = c.beta;
  p.collar_s = c.collar_s;
  p.channel_combine = parse_combine(c.combine);
  return p;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw_data_error("cannot write " + path.string());
  return os;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw_data_error("cannot create output directory " + dir.string());
}

std::string synth_id(const std::string& prefix, std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02zu", i + 1);
  return prefix + buf;
}

std::pair<eegio::EegRecording, eegio::LabelTrack> synth_one(const ExperimentConfig& c,
                                                            std::size_t i) {
  eegio::SynthConfig sc;
  sc.subject_id = synth_id(c.prefix, i);
  sc.seed = derive_seed(c.seed, sc.subject_id);
  sc.duration_s = c.duration_s;
  sc.n_channels = c.synth_channels;
  sc.sample_rate_hz = c.synth_fs;
  sc.seizure_event_count = c.synth_events;
  sc.event_min_s = c.event_min_s;
  sc.event_max_s = c.event_max_s;
  return eegio::synth_subject(sc);
}

void write_subject(const eegio::EegRecording& rec, const eegio::LabelTrack& lab,
                   const fs::path& dir) {
  eegio::write_recording(rec, dir / (rec.subject_id + ".eeg"));
  eegio::write_labels(lab, dir / (rec.subject_id + ".csv"));
}

// Recordings of a data directory, by file name; labels are <stem>.csv.
std::vector<fs::path> list_recordings(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw_data_error("data directory " + dir.string() + " not found");
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".eeg") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw_data_error("no .eeg recordings in " + dir.string());
  return out;
}

eval::PreparedSubject load_prepared(const fs::path& eeg, const ExperimentConfig& c) {
  const auto rec = eegio::read_recording(eeg);
  auto label_path = eeg;
  label_path.replace_extension(".csv");
  const auto lab = eegio::read_labels(label_path, rec.subject_id);
  return eval::prepare_subject(rec, lab, {}, c.channels);
}

std::vector<eval::PreparedSubject> load_data_dir(const ExperimentConfig& c, std::size_t limit) {
  auto paths = list_recordings(c.data_dir);
  if (limit > 0) {
    if (limit > paths.size()) {
      throw_data_error("requested " + std::to_string(limit) + " subjects, " + c.data_dir.string() +
                       " holds " + std::to_string(paths.size()));
    }
    paths.resize(limit);
  }
  std::vector<eval::PreparedSubject> out;
  for (const auto& p : paths) out.push_back(load_prepared(p, c));
  return out;
}

std::vector<const eval::PreparedSubject*> pointers(const std::vector<eval::PreparedSubject>& v) {
  std::vector<const eval::PreparedSubject*> out;
  for (const auto& s : v) out.push_back(&s);
  return out;
}

eval::CnnTrainerConfig cnn_config(const ExperimentConfig& c) {
  eval::CnnTrainerConfig cc;
  cc.train.epochs = c.epochs;
  cc.train.optimizer.learning_rate = c.lr;
  cc.train.optimizer.momentum = c.momentum;
  cc.train.optimizer.batch_size = c.batch;
  cc.train.validate();
  cc.train_fraction = c.train_fraction;
  if (!(c.train_fraction > 0.0 && c.train_fraction <= 1.0)) {
    throw_usage_error("train-fraction must lie in (0, 1]");
  }
  cc.combine = parse_combine(c.combine);
  return cc;
}

shallow::TrainBaselineConfig baseline_config(const ExperimentConfig& c) {
  if (c.l2 < 0.0) throw_usage_error("l2 must be >= 0");
  shallow::TrainBaselineConfig bc;
  bc.l2 = c.l2;
  return bc;
}

bool is_baseline(const std::string& arch) { return arch == "baseline"; }

void check_arch(const std::string& arch) {
  if (arch != "cnn11" && arch != "cnn6" && !is_baseline(arch)) {
    throw_usage_error("unknown architecture '" + arch + "' (cnn11 | cnn6 | baseline)");
  }
}

void write_epoch_log(std::ostream& os, const std::vector<eval::EpochRecord>& log,
                     const std::string& subject) {
  for (const auto& e : log) {
    if (!subject.empty()) os << subject << ",";
    os << e.epoch << "," << f6(e.train_loss) << "," << f6(e.validation_auc) << "\n";
  }
}

std::vector<double> read_trace_file(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw_data_error("cannot open trace " + path.string());
  return eval::read_trace_csv(is, path.string());
}

void write_trace_file(const fs::path& path, std::span<const double> trace) {
  auto os = open_out(path);
  eval::write_trace_csv(os, trace);
}

// Labels aligned to a trace: entry k of both belongs to second k.
std::vector<std::uint8_t> aligned_labels(const fs::path& path, std::size_t n) {
  const auto track = eegio::read_labels(path);
  if (track.size() < n) {
    throw_data_error(path.string() + ": " + std::to_string(track.size()) +
                     " labelled seconds for a trace of " + std::to_string(n));
  }
  return {track.labels.begin(), track.labels.begin() + static_cast<std::ptrdiff_t>(n)};
}

std::string trace_stem(const fs::path& p) {
  auto name = p.filename().string();
  for (const std::string suffix : {".trace.csv", ".csv"}) {
    if (name.size() > suffix.size() && name.ends_with(suffix)) {
      return name.substr(0, name.size() - suffix.size());
    }
  }
  return name;
}

// ---------------------------------------------------------------------------

void cmd_synth(const ExperimentConfig& c, std::ostream& out) {
  if (c.subjects == 0) throw_usage_error("--subjects must be >= 1");
  ensure_dir(c.out_dir);
  out << "subject,recording,labels,seizure_seconds\n";
  for (std::size_t i = 0; i < c.subjects; ++i) {
    auto [rec, lab] = synth_one(c, i);
    write_subject(rec, lab, c.out_dir);
    out << rec.subject_id << "," << (c.out_dir / (rec.subject_id + ".eeg")).string() << ","
        << (c.out_dir / (rec.subject_id + ".csv")).string() << "," << lab.seizure_seconds()
        << "\n";
  }
}

void cmd_inspect(const ExperimentConfig& c, std::ostream& out) {
  const auto spec = arch::build_named(c.arch);
  const auto report = arch::analyze(spec, c.input_len);
  if (c.csv) {
    arch::write_report_csv(out, report);
  } else {
    arch::write_report_text(out, report);
  }
}

void cmd_train(const ExperimentConfig& c, std::ostream& out) {
  check_arch(c.arch);
  if (c.data_dir.empty()) throw_usage_error("train needs --data");
  const auto subjects = load_data_dir(c, 0);
  const auto ptrs = pointers(subjects);
  ensure_dir(c.out_dir);
  const auto stem = c.out_dir / c.model_name;
  if (is_baseline(c.arch)) {
    const auto fit = eval::fit_baseline(ptrs, baseline_config(c), c.seed);
    eegio::save_baseline(fit.model, stem);
    out << "baseline trained on " << fit.training_windows << " windows -> "
        << eegio::manifest_path(stem).string() << "\n";
    return;
  }
  const auto fit = eval::fit_cnn(ptrs, arch::build_named(c.arch), cnn_config(c), c.seed);
  eegio::save_model(fit.result.model, stem);
  auto log = open_out(c.out_dir / (c.model_name + "_epochs.csv"));
  log << "epoch,train_loss,validation_auc\n";
  write_epoch_log(log, fit.result.log, "");
  out << c.arch << " trained on " << fit.training_windows << " windows, best epoch "
      << fit.result.best_epoch << " (validation AUC " << f6(fit.result.best_validation_auc)
      << ") -> " << eegio::manifest_path(stem).string() << "\n";
}

void cmd_score(const ExperimentConfig& c, std::ostream& out) {
  if (c.model_stem.empty()) throw_usage_error("score needs --model");
  if (c.data_dir.empty()) throw_usage_error("score needs --data");
  const auto combine = parse_combine(c.combine);
  const auto kind = eegio::model_kind(c.model_stem);
  std::optional<arch::Model> cnn;
  std::optional<shallow::BaselineModel> baseline;
  if (kind == "cnn") {
    cnn = eegio::load_model(c.model_stem);
  } else {
    baseline = eegio::load_baseline(c.model_stem);
  }
  ensure_dir(c.out_dir);
  for (const auto& eeg : list_recordings(c.data_dir)) {
    const auto s = load_prepared(eeg, c);
    const auto trace = cnn ? eval::cnn_trace(*cnn, s, combine)
                           : eval::baseline_trace(*baseline, s, combine);
    const auto path = c.out_dir / (s.subject_id + ".trace.csv");
    write_trace_file(path, trace);
    out << s.subject_id << "," << path.string() << "\n";
  }
}

void cmd_eval(const ExperimentConfig& c, std::ostream& out) {
  if (c.trace.empty() || c.labels.empty()) throw_usage_error("eval needs --trace and --labels");
  const auto trace = read_trace_file(c.trace);
  const auto labels = aligned_labels(c.labels, trace.size());
  auto post = post_config(c);
  std::vector<double> scored;
  if (c.raw) {
    scored = trace;
  } else {
    scored = eval::smooth_trace(trace, post);
  }
  const auto curve = eval::roc(scored, labels);
  const auto at = eval::sensitivity_at_fdh(scored, labels, c.max_fdh, post.collar_s);
  const std::string name = c.output_name.empty() ? trace_stem(c.trace) : c.output_name;
  ensure_dir(c.out_dir);

  auto m = open_out(c.out_dir / (name + ".metrics.csv"));
  m << "metric,value\n"
    << "auc," << f6(eval::auc(curve)) << "\n"
    << "auc90," << f6(eval::auc90(curve)) << "\n"
    << "sens_at_fdh," << f6(at.sensitivity) << "\n"
    << "sens_at_fdh_threshold," << f6(at.threshold) << "\n"
    << "sens_at_fdh_constraint_met," << (at.constraint_met ? 1 : 0) << "\n";

  auto t = open_out(c.out_dir / (name + ".fdh.csv"));
  t << "threshold,fd_per_hour,sensitivity\n";
  for (double h : eval::kFdhThresholds) {
    const auto d = eval::detect(scored, h, post.collar_s);
    t << f6(h) << "," << f6(eval::fd_per_hour(d, labels)) << ","
      << f6(eval::sensitivity_pct(d, labels)) << "\n";
  }

  auto r = open_out(c.out_dir / (name + ".roc.csv"));
  eval::write_roc_csv(r, curve);
  out << "auc " << f6(eval::auc(curve)) << "  auc90 " << f6(eval::auc90(curve)) << "  sens@"
      << c.max_fdh << "FD/h " << f6(at.sensitivity) << "\n";
}

void cmd_fuse(const ExperimentConfig& c, std::ostream& out) {
  if (c.cnn_trace.empty() || c.svm_trace.empty()) throw_usage_error("fuse needs --cnn and --svm");
  const eval::FusionConfig cfg{c.alpha, eval::parse_fusion_mode(c.mode)};
  cfg.validate();
  const auto fused = eval::fuse(read_trace_file(c.cnn_trace), read_trace_file(c.svm_trace), cfg);
  ensure_dir(c.out_dir);
  const auto path =
      c.out_dir / (c.output_name.empty() ? std::string("fused.trace.csv") : c.output_name);
  write_trace_file(path, fused);
  out << path.string() << "\n";
}

void cmd_sweep(const ExperimentConfig& c, std::ostream& out) {
  if (c.cnn_dir.empty() || c.svm_dir.empty() || c.labels_dir.empty()) {
    throw_usage_error("sweep needs --cnn-dir, --svm-dir and --labels-dir");
  }
  if (!(c.step > 0.0 && c.step <= 1.0)) throw_usage_error("step must lie in (0, 1]");
  if (!fs::is_directory(c.cnn_dir)) throw_data_error(c.cnn_dir.string() + " not found");
  std::vector<fs::path> cnn_files;
  for (const auto& e : fs::directory_iterator(c.cnn_dir)) {
    if (e.is_regular_file() && e.path().filename().string().ends_with(".trace.csv")) {
      cnn_files.push_back(e.path());
    }
  }
  std::sort(cnn_files.begin(), cnn_files.end());
  std::vector<eval::SubjectTraces> subjects;
  for (const auto& f : cnn_files) {
    eval::SubjectTraces s;
    s.subject_id = trace_stem(f);
    s.cnn = read_trace_file(f);
    s.svm = read_trace_file(c.svm_dir / f.filename());
    if (s.svm.size() != s.cnn.size()) throw_data_error(s.subject_id + ": trace lengths differ");
    s.labels = aligned_labels(c.labels_dir / (s.subject_id + ".csv"), s.cnn.size());
    subjects.push_back(std::move(s));
  }
  std::vector<double> grid;
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / c.step));
  for (std::size_t i = 0; i <= steps; ++i) grid.push_back(std::min(1.0, static_cast<double>(i) / static_cast<double>(steps)));
  const auto rows = eval::alpha_sweep(subjects, grid, post_config(c));
  ensure_dir(c.out_dir);
  auto os = open_out(c.out_dir / "sweep.csv");
  os << "mode,alpha,auc_mean,auc_ci95,auc90_mean,auc90_ci95,sens_at_fdh_mean,sens_at_fdh_ci95\n";
  for (const auto& r : rows) {
    os << eval::to_string(r.mode) << "," << f6(r.alpha).substr(0, 3) << "," << f6(r.auc.mean) << ","
       << f6(r.auc.half_width) << "," << f6(r.auc90.mean) << "," << f6(r.auc90.half_width) << ","
       << f6(r.sensitivity_at_fdh.mean) << "," << f6(r.sensitivity_at_fdh.half_width) << "\n";
  }
  out << rows.size() << " sweep rows over " << subjects.size() << " subjects -> "
      << (c.out_dir / "sweep.csv").string() << "\n";
}

void cmd_loo(const ExperimentConfig& c, std::ostream& out) {
  check_arch(c.arch);
  if (c.threads == 0) throw_usage_error("--threads must be >= 1");
  ensure_dir(c.out_dir);
  std::vector<eval::PreparedSubject> subjects;
  if (!c.data_dir.empty()) {
    subjects = load_data_dir(c, c.subjects);
  } else {
    if (c.subjects < 2) throw_usage_error("loo needs --data or --subjects >= 2");
    const auto data = c.out_dir / "data";
    ensure_dir(data);
    for (std::size_t i = 0; i < c.subjects; ++i) {
      auto [rec, lab] = synth_one(c, i);
      write_subject(rec, lab, data);
      subjects.push_back(eval::prepare_subject(rec, lab, {}, c.channels));
    }
  }

  eval::LooConfig lc;
  lc.master_seed = c.seed;
  lc.threads = c.threads;
  lc.post = post_config(c);
  lc.max_fdh = c.max_fdh;
  const auto trainer = is_baseline(c.arch)
                           ? eval::baseline_trainer(baseline_config(c), parse_combine(c.combine))
                           : eval::cnn_trainer(arch::build_named(c.arch), cnn_config(c));
  const auto folds = eval::loo_harness(subjects, trainer, lc);

  for (const auto& f : folds) write_trace_file(c.out_dir / "traces" / (f.subject_id + ".trace.csv"), f.raw_trace);
  {
    auto os = open_out(c.out_dir / "folds.csv");
    eval::write_fold_csv(os, folds);
  }
  if (!is_baseline(c.arch)) {
    auto os = open_out(c.out_dir / "epochs.csv");
    os << "subject,epoch,train_loss,validation_auc\n";
    for (const auto& f : folds) write_epoch_log(os, f.epoch_log, f.subject_id);
  }
  std::vector<double> aucs;
  for (const auto& f : folds) {
    out << f.subject_id << "  auc " << f6(f.metrics.auc) << "  auc90 " << f6(f.metrics.auc90)
        << "\n";
    aucs.push_back(f.metrics.auc);
  }
  const auto ci = eval::mean_ci(aucs);
  out << "mean auc " << f6(ci.mean) << " +- " << f6(ci.half_width) << " -> "
      << (c.out_dir / "folds.csv").string() << "\n";
}

// ---------------------------------------------------------------------------

void add_post_options(CLI::App* app, ExperimentConfig& c) {
  app->add_option("--ma", c.ma_s, "moving-average length, s")->check(CLI::PositiveNumber);
  app->add_option("--bg-window", c.bg_window_s, "background window, s (>= 60)");
  app->add_option("--beta", c.beta, "background weight");
  app->add_option("--collar", c.collar_s, "collar per side, s");
  app->add_option("--combine", c.combine, "channel combination: max | mean");
  app->add_option("--max-fdh", c.max_fdh, "false-detection budget for sens_at_fdh");
}

void add_train_options(CLI::App* app, ExperimentConfig& c) {
  app->add_option("--arch", c.arch, "cnn11 | cnn6 | baseline");
  app->add_option("--epochs", c.epochs, "training epochs");
  app->add_option("--lr", c.lr, "learning rate");
  app->add_option("--momentum", c.momentum, "momentum");
  app->add_option("--batch", c.batch, "mini-batch size");
  app->add_option("--train-fraction", c.train_fraction,
                  "balanced training subset, fraction of the validation windows");
  app->add_option("--l2", c.l2, "baseline L2 penalty");
}

int exit_code(ErrorKind k) { return static_cast<int>(k); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ExperimentConfig c;
  CLI::App app{"seizcnn: neonatal EEG seizure detection experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "read options from an INI/TOML file");
  app.add_option("--seed", c.seed, "master seed");
  app.add_option("--out", c.out_dir, "output directory");
  app.add_option("--threads", c.threads, "worker threads (loo folds)");

  auto* synth = app.add_subcommand("synth", "write synthetic subjects");
  synth->add_option("--subjects", c.subjects, "number of subjects")->required();
  synth->add_option("--duration", c.duration_s, "seconds per subject");
  synth->add_option("--channels", c.synth_channels, "channels per subject");
  synth->add_option("--fs", c.synth_fs, "sample rate, Hz");
  synth->add_option("--events", c.synth_events, "seizure events per subject");
  synth->add_option("--event-min", c.event_min_s, "shortest event, s");
  synth->add_option("--event-max", c.event_max_s, "longest event, s");
  synth->add_option("--prefix", c.prefix, "subject id prefix");

  auto* inspect = app.add_subcommand("inspect", "layer table of an architecture");
  inspect->add_option("arch", c.arch, "cnn11 | cnn6")->required();
  inspect->add_option("--input-len", c.input_len, "input length, samples");
  inspect->add_flag("--csv", c.csv, "CSV instead of text");

  auto* train = app.add_subcommand("train", "train one model on every subject of a directory");
  train->add_option("--data", c.data_dir, "directory of .eeg/.json/.csv subjects")->required();
  train->add_option("--name", c.model_name, "model file stem inside --out");
  train->add_option("--channels", c.channels, "channel indices to use (default all)");
  train->add_option("--combine", c.combine, "channel combination: max | mean");
  add_train_options(train, c);

  auto* score = app.add_subcommand("score", "per-second probability trace for every subject");
  score->add_option("--model", c.model_stem, "model stem (without .manifest.json)")->required();
  score->add_option("--data", c.data_dir, "directory of subjects")->required();
  score->add_option("--channels", c.channels, "channel indices to use (default all)");
  score->add_option("--combine", c.combine, "channel combination: max | mean");

  auto* evalc = app.add_subcommand("eval", "metrics of one trace against its labels");
  evalc->add_option("--trace", c.trace, "trace CSV")->required();
  evalc->add_option("--labels", c.labels, "label CSV")->required();
  evalc->add_option("--name", c.output_name, "output stem (default: trace file stem)");
  evalc->add_flag("--raw", c.raw, "score the trace as given, without smoothing");
  add_post_options(evalc, c);

  auto* fusec = app.add_subcommand("fuse", "combine a CNN and a baseline trace");
  fusec->add_option("--cnn", c.cnn_trace, "CNN trace CSV")->required();
  fusec->add_option("--svm", c.svm_trace, "baseline trace CSV")->required();
  fusec->add_option("--alpha", c.alpha, "weight of the CNN, in [0, 1]");
  fusec->add_option("--mode", c.mode, "arithmetic | geometric");
  fusec->add_option("--name", c.output_name, "output file name inside --out");

  auto* sweep = app.add_subcommand("sweep", "fusion metrics over a grid of alpha");
  sweep->add_option("--cnn-dir", c.cnn_dir, "directory of CNN <id>.trace.csv")->required();
  sweep->add_option("--svm-dir", c.svm_dir, "directory of baseline <id>.trace.csv")->required();
  sweep->add_option("--labels-dir", c.labels_dir, "directory of <id>.csv labels")->required();
  sweep->add_option("--step", c.step, "alpha grid step");
  add_post_options(sweep, c);

  auto* loo = app.add_subcommand("loo", "leave-one-subject-out evaluation");
  loo->add_option("--data", c.data_dir, "directory of subjects (default: synthesize)");
  loo->add_option("--subjects", c.subjects, "use the first N subjects, or synthesize N");
  loo->add_option("--duration", c.duration_s, "seconds per synthesized subject");
  loo->add_option("--channels", c.channels, "channel indices to use (default all)");
  add_train_options(loo, c);
  add_post_options(loo, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*synth) cmd_synth(c, out);
    else if (*inspect) cmd_inspect(c, out);
    else if (*train) cmd_train(c, out);
    else if (*score) cmd_score(c, out);
    else if (*evalc) cmd_eval(c, out);
    else if (*fusec) cmd_fuse(c, out);
    else if (*sweep) cmd_sweep(c, out);
    else if (*loo) cmd_loo(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(ErrorKind::data);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code(ErrorKind::numeric);
  }
  return 0;
}

}  // namespace seizcnn::cli
