// overair/report.cc

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

#include "overair/report.h"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "overair/plot.h"

namespace overair {

std::vector<ProgressPoint> progress_report(const AttackResult& result,
                                           const AudioClip& x,
                                           const TargetPhrase& target,
                                           const SurrogateModel& model,
                                           const ChannelConfig& eval_channel,
                                           const AttackConfig& cfg, int trials,
                                           uint64_t seed) {
  std::vector<ProgressPoint> curve;
  curve.reserve(result.checkpoints.size());
  for (const AttackCheckpoint& ckpt : result.checkpoints) {
    const std::vector<double> veff =
        attack_effective_perturbation(ckpt.v, cfg, x.sample_rate);
    AudioClip adv;
    adv.sample_rate = x.sample_rate;
    adv.samples.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) adv.samples[i] = x.samples[i] + veff[i];

    const EvalRecord record = evaluate(adv, target, model, eval_channel, trials, seed);
    ProgressPoint point;
    point.step = ckpt.step;
    point.snr_db = snr_db(x.samples, veff);
    point.sampled_loss = ckpt.sampled_loss;
    point.success_rate = record.success_rate;
    point.mean_edit_distance = record.mean_edit_distance;
    curve.push_back(point);
  }
  return curve;
}

void write_progress_svg(const std::string& path,
                        const std::vector<ProgressPoint>& curve) {
  PlotSeries snr{"snr_db", {}};
  PlotSeries success{"success_pct", {}};
  PlotSeries dist{"edit_distance", {}};
  for (const ProgressPoint& p : curve) {
    snr.points.emplace_back(p.step, p.snr_db);
    success.points.emplace_back(p.step, 100.0 * p.success_rate);
    dist.points.emplace_back(p.step, p.mean_edit_distance);
  }
  write_svg_chart(path, "attack progress", "step", {snr, success, dist});
}

std::string progress_point_json(const ProgressPoint& point) {
  nlohmann::json j;
  j["step"] = point.step;
  j["snr_db"] = point.snr_db;
  j["sampled_loss"] = point.sampled_loss;
  j["success_rate"] = point.success_rate;
  j["mean_edit_distance"] = point.mean_edit_distance;
  return j.dump();
}

std::string eval_record_json(const EvalRecord& record) {
  nlohmann::json j;
  j["input"] = record.input_label;
  j["target"] = record.target;
  j["snr_db"] = record.snr_db;
  j["trials"] = record.trials;
  j["success_rate"] = record.success_rate;
  j["mean_edit_distance"] = record.mean_edit_distance;
  j["decodes"] = record.decodes;
  return j.dump();
}

std::string ablation_row_json(const AblationRow& row) {
  nlohmann::json j;
  j["bandpass"] = row.bandpass;
  j["impulse"] = row.impulse;
  j["noise"] = row.noise;
  j["steps_run"] = row.steps_run;
  j["direct_success"] = row.direct_success;
  j["channel_success"] = row.channel_success;
  if (row.channel_success) j["best_snr_db"] = row.best_snr_db;
  j["final_success_rate"] = row.final_success_rate;
  j["final_snr_db"] = row.final_snr_db;
  return j.dump();
}

std::string ablation_table(const AblationReport& report) {
  std::ostringstream out;
  out << "bandpass  impulse  noise  | over-channel  best SNR (dB)  final rate\n";
  out << "----------------------------------------------------------------\n";
  for (const AblationRow& row : report.rows) {
    char line[160];
    if (row.channel_success) {
      std::snprintf(line, sizeof line, "%-9s %-8s %-6s | %-12s %13.2f  %9.2f\n",
                    row.bandpass ? "x" : "-", row.impulse ? "x" : "-",
                    row.noise ? "x" : "-", "yes", row.best_snr_db,
                    row.final_success_rate);
    } else {
      std::snprintf(line, sizeof line, "%-9s %-8s %-6s | %-12s %13s  %9.2f\n",
                    row.bandpass ? "x" : "-", row.impulse ? "x" : "-",
                    row.noise ? "x" : "-", "no", "--", row.final_success_rate);
    }
    out << line;
  }
  return out.str();
}

}  // namespace overair
