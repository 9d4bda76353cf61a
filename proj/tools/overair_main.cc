// tools/overair_main.cc

// Copyright 2026  Overair Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "overair/attack.h"
#include "overair/config.h"
#include "overair/error.h"
#include "overair/eval.h"
#include "overair/parallel.h"
#include "overair/plot.h"
#include "overair/report.h"
#include "overair/wav.h"

namespace fs = std::filesystem;
using namespace overair;

namespace {

struct GlobalOptions {
  std::string config_path;
  std::string workspace = ".";
  uint64_t seed = 0;
  bool seed_given = false;
  int jobs = 0;
};

RunConfig effective_config(const GlobalOptions& global) {
  if (!global.config_path.empty()) return load_run_config(global.config_path);
  return RunConfig{};
}

uint64_t resolve_seed(GlobalOptions* global) {
  if (!global->seed_given) {
    std::random_device rd;
    global->seed = (static_cast<uint64_t>(rd()) << 32) ^ rd();
  }
  std::cout << "seed: " << global->seed
            << (global->seed_given ? "" : " (chosen randomly; pass --seed to replay)")
            << "\n";
  return global->seed;
}

fs::path workspace_dir(const GlobalOptions& global, const std::string& sub) {
  const fs::path dir = fs::path(global.workspace) / sub;
  fs::create_directories(dir);
  return dir;
}

// Exclusive claim on a run directory. Two commands never write the same one.
class RunLock {
 public:
  explicit RunLock(const fs::path& dir) : lock_path_(dir / ".lock") {
    fs::create_directories(dir);
    if (fs::exists(lock_path_)) {
      throw Error(ErrorKind::kIo,
                  "run directory '" + dir.string() + "' is locked by another command");
    }
    if (fs::exists(dir / "run.json")) {
      throw Error(ErrorKind::kIo,
                  "run directory '" + dir.string() + "' already holds a run");
    }
    std::ofstream lock(lock_path_, std::ios::out | std::ios::trunc);
    if (!lock) {
      throw Error(ErrorKind::kIo, "cannot create lockfile in '" + dir.string() + "'");
    }
  }
  ~RunLock() {
    std::error_code ec;
    fs::remove(lock_path_, ec);
  }

 private:
  fs::path lock_path_;
};

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  }
  for (const std::string& line : lines) out << line << '\n';
}

void write_doubles(const fs::path& path, const std::vector<double>& values) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  }
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
}

std::vector<double> read_doubles(const fs::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) {
    throw Error(ErrorKind::kIo, "cannot read '" + path.string() + "'");
  }
  const auto bytes = static_cast<std::size_t>(in.tellg());
  std::vector<double> values(bytes / sizeof(double));
  in.seekg(0);
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(bytes));
  return values;
}

nlohmann::json attack_cfg_json(const AttackConfig& cfg) {
  nlohmann::json j;
  j["epsilon"] = cfg.epsilon;
  j["learning_rate"] = cfg.learning_rate;
  j["max_steps"] = cfg.max_steps;
  j["transforms_per_step"] = cfg.transforms_per_step;
  j["band"] = {cfg.band_low_hz, cfg.band_high_hz};
  j["band_taps"] = cfg.band_taps;
  j["noise_sigma"] = cfg.noise_sigma;
  j["bandpass"] = cfg.bandpass;
  j["impulse"] = cfg.impulse;
  j["noise"] = cfg.noise;
  j["clamp"] = cfg.clamp;
  j["checkpoint_every"] = cfg.checkpoint_every;
  j["success_streak"] = cfg.success_streak;
  return j;
}

AttackConfig attack_cfg_from_json(const nlohmann::json& j) {
  AttackConfig cfg;
  cfg.epsilon = j.at("epsilon").get<double>();
  cfg.learning_rate = j.at("learning_rate").get<double>();
  cfg.max_steps = j.at("max_steps").get<int>();
  cfg.transforms_per_step = j.at("transforms_per_step").get<int>();
  cfg.band_low_hz = j.at("band")[0].get<double>();
  cfg.band_high_hz = j.at("band")[1].get<double>();
  cfg.band_taps = j.at("band_taps").get<int>();
  cfg.noise_sigma = j.at("noise_sigma").get<double>();
  cfg.bandpass = j.at("bandpass").get<bool>();
  cfg.impulse = j.at("impulse").get<bool>();
  cfg.noise = j.at("noise").get<bool>();
  cfg.clamp = j.at("clamp").get<double>();
  cfg.checkpoint_every = j.at("checkpoint_every").get<int>();
  cfg.success_streak = j.at("success_streak").get<int>();
  return cfg;
}

ChannelConfig load_channel(const std::string& bank_dir, const RunConfig& cfg) {
  const IrBank bank = load_ir_bank(bank_dir, kCanonicalSampleRate);
  ChannelConfig channel = make_channel(bank, cfg.channel_noise_sigma,
                                       cfg.channel_gain_jitter_db);
  channel.device_band_enabled = cfg.channel_device_band;
  channel.device_band_low_hz = cfg.channel_device_low_hz;
  channel.device_band_high_hz = cfg.channel_device_high_hz;
  return channel;
}

void assert_disjoint_banks(const ChannelConfig& train, const ChannelConfig& eval) {
  for (uint64_t eval_seed : eval.ir_seeds) {
    for (uint64_t train_seed : train.ir_seeds) {
      if (eval_seed == train_seed) {
        throw Error(ErrorKind::kConfig,
                    "evaluation bank shares a synthesis seed with the training bank");
      }
    }
  }
}

int cmd_train(GlobalOptions* global, const std::string& out_name) {
  const RunConfig cfg = effective_config(*global);
  const uint64_t seed = resolve_seed(global);

  SyntheticCorpusConfig corpus_cfg = cfg.corpus;
  corpus_cfg.seed = derive_seed(seed, 10);
  const Alphabet alphabet = Alphabet::default_alphabet();
  const auto corpus = synth_corpus(corpus_cfg, alphabet);

  std::vector<LabeledClip> train_set, holdout;
  split_corpus(corpus, cfg.corpus_holdout_fraction, derive_seed(seed, 11),
               &train_set, &holdout);
  std::cout << "corpus: " << train_set.size() << " train / " << holdout.size()
            << " held-out clips\n";

  SurrogateModel model(cfg.mfcc, alphabet, cfg.model_hidden, derive_seed(seed, 12));
  TrainConfig train_cfg = cfg.train;
  train_cfg.seed = derive_seed(seed, 13);
  const TrainResult result = train(&model, train_set, train_cfg);

  const double accuracy =
      holdout.empty() ? decode_accuracy(model, train_set) : decode_accuracy(model, holdout);
  std::cout << "held-out decode accuracy: " << accuracy << "\n";

  const fs::path model_dir = workspace_dir(*global, "models");
  const fs::path model_path = model_dir / (out_name + ".json");
  model.save(model_path.string());

  std::vector<std::string> log_lines;
  for (std::size_t e = 0; e < result.epoch_loss.size(); ++e) {
    nlohmann::json j;
    j["epoch"] = e;
    j["mean_loss"] = result.epoch_loss[e];
    log_lines.push_back(j.dump());
  }
  {
    nlohmann::json j;
    j["held_out_accuracy"] = accuracy;
    j["seed"] = seed;
    log_lines.push_back(j.dump());
  }
  write_lines(model_dir / (out_name + ".train.jsonl"), log_lines);
  std::cout << "checkpoint: " << model_path.string() << "\n";
  return 0;
}

int cmd_irbank(GlobalOptions* global, const std::string& out_name) {
  const RunConfig cfg = effective_config(*global);
  const uint64_t seed = resolve_seed(global);
  const auto strata = config_ir_strata(cfg);

  const auto train_seeds =
      ir_seed_range(seed, cfg.channel_train_seed_base, cfg.channel_train_irs);
  const auto eval_seeds =
      ir_seed_range(seed, cfg.channel_eval_seed_base, cfg.channel_eval_irs);
  for (uint64_t es : eval_seeds) {
    for (uint64_t ts : train_seeds) {
      if (es == ts) {
        throw Error(ErrorKind::kConfig, "irbank: train/eval seed ranges collide");
      }
    }
  }

  const IrBank train_bank =
      synth_ir_bank(strata, train_seeds, kCanonicalSampleRate, "ir_train");
  const IrBank eval_bank =
      synth_ir_bank(strata, eval_seeds, kCanonicalSampleRate, "ir_eval");

  const fs::path base = workspace_dir(*global, "irbanks") / out_name;
  save_ir_bank(train_bank, (base / "train").string());
  save_ir_bank(eval_bank, (base / "eval").string());
  std::cout << "irbank: " << train_bank.irs.size() << " train + "
            << eval_bank.irs.size() << " eval responses under " << base.string()
            << "\n";
  return 0;
}

int cmd_generate(GlobalOptions* global, const std::string& model_path,
                 const std::string& input_path, double music_duration,
                 const std::string& target_text, const std::string& bank_dir,
                 const std::string& run_id, const AttackConfig& overrides) {
  const RunConfig cfg = effective_config(*global);
  const uint64_t seed = resolve_seed(global);

  const SurrogateModel model = SurrogateModel::load(model_path);
  const TargetPhrase target = make_target(target_text, model.alphabet());

  const fs::path run_dir = workspace_dir(*global, "runs") / run_id;
  RunLock lock(run_dir);

  AudioClip x;
  if (input_path.empty()) {
    // Synthesize, write, and reload so the attacked clip is exactly the
    // 16-bit material stored in the run directory.
    const AudioClip fresh =
        synth_music_clip(music_duration, kCanonicalSampleRate, derive_seed(seed, 20));
    save_wav(fresh, (run_dir / "input.wav").string());
    x = load_wav((run_dir / "input.wav").string(), kCanonicalSampleRate);
  } else {
    x = load_wav(input_path, kCanonicalSampleRate);
    save_wav(x, (run_dir / "input.wav").string());
  }

  AttackConfig attack_cfg = overrides;
  attack_cfg.seed = derive_seed(seed, 21);

  const ChannelConfig channel = load_channel(bank_dir, cfg);
  const AttackResult result = generate(model, x, target, channel, attack_cfg);

  // Final adversarial clip.
  AudioClip adv;
  adv.sample_rate = x.sample_rate;
  adv.samples.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    adv.samples[i] = x.samples[i] + result.effective[i];
  }
  const std::size_t clipped = save_wav(adv, (run_dir / "final.wav").string());
  if (clipped > 0) {
    std::cout << "warning: " << clipped << " samples clipped in final.wav\n";
  }

  const fs::path ckpt_dir = run_dir / "checkpoints";
  fs::create_directories(ckpt_dir);
  std::vector<std::string> log_lines;
  for (const AttackCheckpoint& ckpt : result.checkpoints) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "step_%06d", ckpt.step);
    write_doubles(ckpt_dir / (std::string(stem) + ".v.bin"), ckpt.v);

    const auto veff = attack_effective_perturbation(ckpt.v, attack_cfg, x.sample_rate);
    AudioClip snapshot;
    snapshot.sample_rate = x.sample_rate;
    snapshot.samples.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      snapshot.samples[i] = x.samples[i] + veff[i];
    }
    save_wav(snapshot, (ckpt_dir / (std::string(stem) + ".wav")).string());

    nlohmann::json j;
    j["step"] = ckpt.step;
    j["loss"] = ckpt.sampled_loss;
    j["snr_db"] = ckpt.snr_db;
    j["probe_decode"] = ckpt.probe_decode;
    j["probe_edit_distance"] = ckpt.probe_edit_distance;
    log_lines.push_back(j.dump());
  }
  write_lines(run_dir / "log.jsonl", log_lines);

  nlohmann::json run_meta;
  run_meta["seed"] = seed;
  run_meta["target"] = target.text;
  run_meta["model"] = model_path;
  run_meta["irbank"] = bank_dir;
  run_meta["attack"] = attack_cfg_json(attack_cfg);
  run_meta["status"] =
      result.status == AttackStatus::kSuccess ? "success" : "max-steps";
  run_meta["steps_run"] = result.steps_run;
  {
    std::ofstream out(run_dir / "run.json", std::ios::trunc);
    out << run_meta.dump(2) << '\n';
  }

  std::cout << "status: " << run_meta["status"].get<std::string>() << " after "
            << result.steps_run << " steps\n";
  if (!result.checkpoints.empty()) {
    std::cout << "final snr_db: " << result.checkpoints.back().snr_db << "\n";
  }
  std::cout << "direct decode: '" << model.decode_wav(adv.samples) << "'\n";
  std::cout << "run: " << run_dir.string() << "\n";
  return 0;
}

int cmd_evaluate_wav(GlobalOptions* global, const std::string& model_path,
                     const std::string& input_path, const std::string& target_text,
                     const std::string& bank_dir, int trials,
                     const std::string& original_path, const std::string& out_path) {
  const RunConfig cfg = effective_config(*global);
  const uint64_t seed = resolve_seed(global);

  const SurrogateModel model = SurrogateModel::load(model_path);
  const TargetPhrase target = make_target(target_text, model.alphabet());
  const AudioClip adv = load_wav(input_path, kCanonicalSampleRate);
  const ChannelConfig eval_channel = load_channel(bank_dir, cfg);

  EvalRecord record = evaluate(adv, target, model, eval_channel, trials, seed);
  record.input_label = input_path;
  if (!original_path.empty()) {
    const AudioClip original = load_wav(original_path, kCanonicalSampleRate);
    if (original.size() != adv.size()) {
      throw Error(ErrorKind::kDomain, "evaluate: original/adversarial length mismatch");
    }
    std::vector<double> perturbation(adv.size());
    for (std::size_t i = 0; i < adv.size(); ++i) {
      perturbation[i] = adv.samples[i] - original.samples[i];
    }
    record.snr_db = snr_db(original.samples, perturbation);
  }

  std::cout << "trials: " << record.trials << "\n"
            << "success rate: " << record.success_rate << "\n"
            << "mean edit distance: " << record.mean_edit_distance << "\n";
  if (!original_path.empty()) std::cout << "snr_db: " << record.snr_db << "\n";
  if (!out_path.empty()) {
    write_lines(out_path, {eval_record_json(record)});
    std::cout << "report: " << out_path << "\n";
  }
  return 0;
}

int cmd_evaluate_run(GlobalOptions* global, const std::string& model_path,
                     const std::string& run_dir_arg, const std::string& bank_dir,
                     int trials) {
  const RunConfig cfg = effective_config(*global);
  const uint64_t seed = resolve_seed(global);

  const fs::path run_dir(run_dir_arg);
  std::ifstream meta_in(run_dir / "run.json");
  if (!meta_in) {
    throw Error(ErrorKind::kIo, "evaluate: no run.json under '" + run_dir_arg + "'");
  }
  nlohmann::json meta;
  meta_in >> meta;

  const SurrogateModel model = SurrogateModel::load(model_path);
  const TargetPhrase target = make_target(meta.at("target").get<std::string>(),
                                          model.alphabet());
  const AudioClip x = load_wav((run_dir / "input.wav").string(), kCanonicalSampleRate);
  const AttackConfig attack_cfg = attack_cfg_from_json(meta.at("attack"));

  AttackResult result;
  result.steps_run = meta.at("steps_run").get<int>();
  std::ifstream log_in(run_dir / "log.jsonl");
  std::string line;
  while (std::getline(log_in, line)) {
    if (line.empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line);
    AttackCheckpoint ckpt;
    ckpt.step = j.at("step").get<int>();
    ckpt.sampled_loss = j.at("loss").get<double>();
    ckpt.snr_db = j.at("snr_db").get<double>();
    char stem[32];
    std::snprintf(stem, sizeof stem, "step_%06d", ckpt.step);
    ckpt.v = read_doubles(run_dir / "checkpoints" / (std::string(stem) + ".v.bin"));
    result.checkpoints.push_back(std::move(ckpt));
  }
  if (result.checkpoints.empty()) {
    throw Error(ErrorKind::kIo, "evaluate: run has no checkpoints");
  }

  const ChannelConfig eval_channel = load_channel(bank_dir, cfg);
  const auto curve = progress_report(result, x, target, model, eval_channel,
                                     attack_cfg, trials, derive_seed(seed, 30));

  std::vector<std::string> lines;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    // SNR recomputed from the stored perturbation must match the attack log.
    const double logged = result.checkpoints[i].snr_db;
    if (std::abs(curve[i].snr_db - logged) > 1e-9) {
      throw Error(ErrorKind::kDomain, "evaluate: snr mismatch against the attack log");
    }
    lines.push_back(progress_point_json(curve[i]));
  }
  write_lines(run_dir / "progress.jsonl", lines);
  write_progress_svg((run_dir / "progress.svg").string(), curve);

  const ProgressPoint& last = curve.back();
  std::cout << "checkpoints: " << curve.size() << "\n"
            << "final success rate: " << last.success_rate << "\n"
            << "final mean edit distance: " << last.mean_edit_distance << "\n"
            << "final snr_db: " << last.snr_db << "\n"
            << "report: " << (run_dir / "progress.jsonl").string() << "\n";
  return 0;
}

int cmd_ablate(GlobalOptions* global, const std::string& model_path,
               const std::string& input_path, double music_duration,
               const std::string& target_text, const std::string& bank_dir,
               const std::string& run_id, int trials, const AttackConfig& overrides) {
  const RunConfig cfg = effective_config(*global);
  const uint64_t seed = resolve_seed(global);

  const SurrogateModel model = SurrogateModel::load(model_path);
  const TargetPhrase target = make_target(target_text, model.alphabet());

  const fs::path run_dir = workspace_dir(*global, "runs") / run_id;
  RunLock lock(run_dir);

  AudioClip x;
  if (input_path.empty()) {
    const AudioClip fresh =
        synth_music_clip(music_duration, kCanonicalSampleRate, derive_seed(seed, 20));
    save_wav(fresh, (run_dir / "input.wav").string());
    x = load_wav((run_dir / "input.wav").string(), kCanonicalSampleRate);
  } else {
    x = load_wav(input_path, kCanonicalSampleRate);
    save_wav(x, (run_dir / "input.wav").string());
  }

  const ChannelConfig train_channel = load_channel(bank_dir + "/train", cfg);
  const ChannelConfig eval_channel = load_channel(bank_dir + "/eval", cfg);
  assert_disjoint_banks(train_channel, eval_channel);

  AttackConfig base_cfg = overrides;
  base_cfg.seed = derive_seed(seed, 21);

  const AblationReport report =
      ablate(model, x, target, train_channel, eval_channel, base_cfg, trials);

  std::vector<std::string> lines;
  PlotSeries snr_series{"best_snr_db", {}};
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    lines.push_back(ablation_row_json(report.rows[i]));
    if (report.rows[i].channel_success) {
      snr_series.points.emplace_back(static_cast<double>(i), report.rows[i].best_snr_db);
    }
  }
  write_lines(run_dir / "ablation.jsonl", lines);
  const std::string table = ablation_table(report);
  write_lines(run_dir / "ablation.txt", {table});
  write_svg_chart((run_dir / "ablation.svg").string(),
                  "technique switching: best SNR at half success",
                  "flag combination (bit 0 bandpass, 1 impulse, 2 noise)",
                  {snr_series});

  std::cout << table;
  std::cout << "run: " << run_dir.string() << "\n";
  return 0;
}

int cmd_inspect(GlobalOptions* global, const std::string& path,
                const std::string& model_path) {
  (void)global;
  const fs::path p(path);
  if (fs::is_directory(p) && fs::exists(p / "manifest.tsv")) {
    const IrBank bank = load_ir_bank(path, kCanonicalSampleRate);
    std::cout << "impulse response bank: " << bank.irs.size() << " responses\n";
    for (const IrBankRecord& rec : bank.records) {
      std::cout << "  " << rec.label << "  seed=" << rec.seed
                << "  rt60=" << rec.params.rt60 << "s  length=" << rec.params.length_s
                << "s\n";
    }
    return 0;
  }
  if (fs::is_directory(p) && fs::exists(p / "run.json")) {
    std::ifstream in(p / "run.json");
    nlohmann::json meta;
    in >> meta;
    std::cout << "run: target='" << meta.at("target").get<std::string>() << "' status="
              << meta.at("status").get<std::string>() << " steps="
              << meta.at("steps_run").get<int>() << "\n";
    return 0;
  }
  if (p.extension() == ".json") {
    const SurrogateModel model = SurrogateModel::load(path);
    std::cout << "model: version=" << model.version()
              << " hidden=" << model.params().hidden
              << " classes=" << model.params().num_classes << "\n"
              << "alphabet: '" << model.alphabet().characters() << "'\n"
              << "mfcc: frame=" << model.mfcc_config().frame_length
              << " hop=" << model.mfcc_config().hop
              << " coefficients=" << model.mfcc_config().num_coefficients << "\n";
    return 0;
  }
  if (p.extension() == ".wav") {
    const AudioClip clip = load_wav(path);
    std::cout << "wav: " << clip.size() << " samples at " << clip.sample_rate
              << " Hz (" << clip.duration_s() << " s), power " << power(clip.samples)
              << "\n";
    if (!model_path.empty()) {
      const SurrogateModel model = SurrogateModel::load(model_path);
      std::cout << "decode: '" << model.decode_wav(clip.samples) << "'\n";
    }
    return 0;
  }
  throw Error(ErrorKind::kIo, "inspect: unrecognized artifact '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"audio adversarial example toolkit for simulated playback channels"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--config", global.config_path, "JSON configuration file");
  app.add_option("--workspace", global.workspace, "workspace directory");
  app.add_option("--seed", global.seed, "master random seed")
      ->each([&](const std::string&) { global.seed_given = true; });
  app.add_option("--jobs", global.jobs, "worker threads (0 = runtime default)");

  // train
  auto* train_cmd = app.add_subcommand("train", "synthesize the corpus and train the recognizer");
  std::string train_out = "surrogate";
  train_cmd->add_option("--out", train_out, "model name under <workspace>/models");

  // irbank
  auto* irbank_cmd = app.add_subcommand("irbank", "synthesize train/eval impulse response banks");
  std::string irbank_out = "default";
  irbank_cmd->add_option("--out", irbank_out, "bank name under <workspace>/irbanks");

  // Shared attack options.
  std::string model_path, input_path, target_text, bank_dir, run_id, original_path,
      out_path, run_dir_arg;
  double music_duration = 2.0;
  int trials = 0;
  AttackConfig attack_overrides;
  bool no_bandpass = false, no_impulse = false, no_noise = false;

  auto* gen_cmd = app.add_subcommand("generate", "optimize an adversarial example");
  gen_cmd->add_option("--model", model_path, "model checkpoint")->required();
  gen_cmd->add_option("--input", input_path, "input WAV (omit for a synthetic clip)");
  gen_cmd->add_option("--music-duration", music_duration,
                      "synthetic clip length in seconds when --input is omitted");
  gen_cmd->add_option("--target", target_text, "target phrase")->required();
  gen_cmd->add_option("--irbank", bank_dir, "bank root holding train/ and eval/")->required();
  gen_cmd->add_option("--run-id", run_id, "run directory name")->required();
  gen_cmd->add_option("--steps", attack_overrides.max_steps, "optimization budget");
  gen_cmd->add_option("--epsilon", attack_overrides.epsilon, "norm penalty weight");
  gen_cmd->add_option("--learning-rate", attack_overrides.learning_rate, "Adam step size");
  gen_cmd->add_option("--transforms", attack_overrides.transforms_per_step,
                      "sampled channels per step");
  gen_cmd->add_option("--checkpoint-every", attack_overrides.checkpoint_every,
                      "checkpoint interval in steps");
  gen_cmd->add_flag("--no-bandpass", no_bandpass, "drop the perturbation band-pass");
  gen_cmd->add_flag("--no-impulse", no_impulse, "drop reverberation sampling");
  gen_cmd->add_flag("--no-noise", no_noise, "drop additive noise");

  auto* eval_cmd = app.add_subcommand("evaluate", "score a clip or a run over the held-out channel");
  eval_cmd->add_option("--model", model_path, "model checkpoint")->required();
  eval_cmd->add_option("--input", input_path, "adversarial WAV");
  eval_cmd->add_option("--run", run_dir_arg, "run directory from generate");
  eval_cmd->add_option("--target", target_text, "target phrase (with --input)");
  eval_cmd->add_option("--irbank", bank_dir, "bank root holding train/ and eval/")->required();
  eval_cmd->add_option("--trials", trials, "channel trials (default from config)");
  eval_cmd->add_option("--original", original_path, "clean input WAV for SNR");
  eval_cmd->add_option("--out", out_path, "write the JSONL report here");

  auto* ablate_cmd = app.add_subcommand("ablate", "switch each technique on and off");
  ablate_cmd->add_option("--model", model_path, "model checkpoint")->required();
  ablate_cmd->add_option("--input", input_path, "input WAV (omit for a synthetic clip)");
  ablate_cmd->add_option("--music-duration", music_duration,
                         "synthetic clip length in seconds when --input is omitted");
  ablate_cmd->add_option("--target", target_text, "target phrase")->required();
  ablate_cmd->add_option("--banks", bank_dir, "bank root holding train/ and eval/")->required();
  ablate_cmd->add_option("--run-id", run_id, "run directory name")->required();
  ablate_cmd->add_option("--steps", attack_overrides.max_steps, "shared step budget");
  ablate_cmd->add_option("--epsilon", attack_overrides.epsilon, "norm penalty weight");
  ablate_cmd->add_option("--learning-rate", attack_overrides.learning_rate, "Adam step size");
  ablate_cmd->add_option("--transforms", attack_overrides.transforms_per_step,
                         "sampled channels per step");
  ablate_cmd->add_option("--checkpoint-every", attack_overrides.checkpoint_every,
                         "checkpoint interval in steps");
  ablate_cmd->add_option("--trials", trials, "held-out trials per checkpoint");

  auto* inspect_cmd = app.add_subcommand("inspect", "describe a toolkit artifact");
  std::string inspect_path;
  inspect_cmd->add_option("path", inspect_path, "wav / model / bank / run")->required();
  inspect_cmd->add_option("--model", model_path, "decode WAVs with this model");

  CLI11_PARSE(app, argc, argv);

  try {
    set_jobs(global.jobs);

    if (*gen_cmd || *ablate_cmd) {
      // Start from configured attack values, then apply CLI overrides that
      // were actually given.
      const RunConfig cfg = effective_config(global);
      AttackConfig merged = cfg.attack;
      if (gen_cmd->count("--steps") || ablate_cmd->count("--steps"))
        merged.max_steps = attack_overrides.max_steps;
      if (gen_cmd->count("--epsilon") || ablate_cmd->count("--epsilon"))
        merged.epsilon = attack_overrides.epsilon;
      if (gen_cmd->count("--learning-rate") || ablate_cmd->count("--learning-rate"))
        merged.learning_rate = attack_overrides.learning_rate;
      if (gen_cmd->count("--transforms") || ablate_cmd->count("--transforms"))
        merged.transforms_per_step = attack_overrides.transforms_per_step;
      if (gen_cmd->count("--checkpoint-every") || ablate_cmd->count("--checkpoint-every"))
        merged.checkpoint_every = attack_overrides.checkpoint_every;
      if (no_bandpass) merged.bandpass = false;
      if (no_impulse) merged.impulse = false;
      if (no_noise) merged.noise = false;
      attack_overrides = merged;
    }

    if (*train_cmd) return cmd_train(&global, train_out);
    if (*irbank_cmd) return cmd_irbank(&global, irbank_out);
    if (*gen_cmd) {
      return cmd_generate(&global, model_path, input_path, music_duration,
                          target_text, bank_dir + "/train", run_id, attack_overrides);
    }
    if (*eval_cmd) {
      const RunConfig cfg = effective_config(global);
      const int n_trials = trials > 0 ? trials : cfg.eval_trials;
      const std::string eval_bank = bank_dir + "/eval";
      if (!run_dir_arg.empty()) {
        return cmd_evaluate_run(&global, model_path, run_dir_arg, eval_bank, n_trials);
      }
      if (input_path.empty() || target_text.empty()) {
        throw Error(ErrorKind::kConfig,
                    "evaluate needs either --run or both --input and --target");
      }
      return cmd_evaluate_wav(&global, model_path, input_path, target_text, eval_bank,
                              n_trials, original_path, out_path);
    }
    if (*ablate_cmd) {
      const RunConfig cfg = effective_config(global);
      const int n_trials = trials > 0 ? trials : 25;
      (void)cfg;
      return cmd_ablate(&global, model_path, input_path, music_duration, target_text,
                        bank_dir, run_id, n_trials, attack_overrides);
    }
    if (*inspect_cmd) return cmd_inspect(&global, inspect_path, model_path);
  } catch (const Error& e) {
    std::cerr << "error [" << e.kind_name() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
