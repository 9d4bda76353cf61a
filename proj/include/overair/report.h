// overair/report.h

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

#ifndef OVERAIR_REPORT_H_
#define OVERAIR_REPORT_H_

#include <string>
#include <vector>

#include "overair/attack.h"
#include "overair/eval.h"

namespace overair {

// Held-out scores of one attack checkpoint.
struct ProgressPoint {
  int step = 0;
  double snr_db = 0.0;
  double sampled_loss = 0.0;
  double success_rate = 0.0;
  double mean_edit_distance = 0.0;
};

// Scores every checkpoint of a run against the held-out channel with a fixed
// trial seed set. SNR is recomputed from the stored perturbations and matches
// the attack's own figures exactly.
std::vector<ProgressPoint> progress_report(const AttackResult& result,
                                           const AudioClip& x,
                                           const TargetPhrase& target,
                                           const SurrogateModel& model,
                                           const ChannelConfig& eval_channel,
                                           const AttackConfig& cfg, int trials,
                                           uint64_t seed);

// SVG rendering of a progress curve (SNR, success rate, edit distance).
void write_progress_svg(const std::string& path,
                        const std::vector<ProgressPoint>& curve);

// Line-delimited structured records.
std::string progress_point_json(const ProgressPoint& point);
std::string eval_record_json(const EvalRecord& record);
std::string ablation_row_json(const AblationRow& row);

// Fixed-width human-readable table of the technique-switching study.
std::string ablation_table(const AblationReport& report);

}  // namespace overair

#endif  // OVERAIR_REPORT_H_
