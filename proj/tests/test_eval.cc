// tests/test_eval.cc

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

#include <doctest.h>

#include <string>

#include "overair/error.h"
#include "overair/eval.h"
#include "overair/parallel.h"
#include "overair/reference.h"
#include "overair/train.h"

using namespace overair;

namespace {

std::string random_string(Rng* rng, std::size_t max_len) {
  const std::size_t len = rng->uniform_int(max_len + 1);
  std::string out;
  for (std::size_t i = 0; i < len; ++i) {
    out += static_cast<char>('a' + rng->uniform_int(4));
  }
  return out;
}

}  // namespace

TEST_CASE("edit distance basics") {
  CHECK(edit_distance("hello world", "hello world") == 0);
  CHECK(edit_distance("", "abc") == 3);
  CHECK(edit_distance("abc", "") == 3);
  CHECK(edit_distance("kitten", "sitting") == reference::recursive_edit_distance("kitten", "sitting"));
  CHECK(edit_distance("kitten", "sitting") == 3);
}

TEST_CASE("edit distance is a metric") {
  Rng rng(15);
  for (int trial = 0; trial < 150; ++trial) {
    const std::string a = random_string(&rng, 12);
    const std::string b = random_string(&rng, 12);
    const std::string c = random_string(&rng, 12);

    CHECK(edit_distance(a, b) == edit_distance(b, a));
    CHECK((edit_distance(a, b) == 0) == (a == b));
    CHECK(edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c));
  }
  // Spot-check against the recursive oracle on short strings.
  for (int trial = 0; trial < 25; ++trial) {
    const std::string a = random_string(&rng, 6);
    const std::string b = random_string(&rng, 6);
    CHECK(edit_distance(a, b) == reference::recursive_edit_distance(a, b));
  }
}

TEST_CASE("evaluation over channels") {
  // A small recognizer good enough to decode its own corpus.
  const Alphabet alphabet("abc");
  SyntheticCorpusConfig ccfg;
  ccfg.phrases = {"a", "b", "c", "ab", "ba", "ca", "bc", "cb", "ac",
                  "abc", "cab", "bca", "aa", "bb", "cc", "aba"};
  ccfg.noise_sigma = 0.002;
  const auto corpus = synth_corpus(ccfg, alphabet);

  MfccConfig mfcc;
  SurrogateModel model(mfcc, alphabet, 24, 5);
  TrainConfig tcfg;
  tcfg.epochs = 12;
  tcfg.batch_size = 6;
  tcfg.learning_rate = 3e-3;
  tcfg.gain_jitter_db = 3.0;
  tcfg.noise_sigma = 0.005;
  tcfg.seed = 13;
  train(&model, corpus, tcfg);

  // Identity channel: delta response, no noise, no band, no jitter.
  ChannelConfig identity;
  ImpulseResponse delta;
  delta.taps = {1.0};
  delta.sample_rate = 16000;
  identity.ir_bank = {delta};
  identity.noise_sigma = 0.0;
  identity.device_band_enabled = false;
  identity.gain_jitter_db = 0.0;

  // Find a clip the model decodes exactly.
  int decodable = -1;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (model.decode_wav(corpus[i].clip.samples) == corpus[i].phrase.text) {
      decodable = static_cast<int>(i);
      break;
    }
  }
  REQUIRE(decodable >= 0);
  const LabeledClip& clip = corpus[decodable];

  SUBCASE("perfect decodes give rate one and distance zero") {
    const EvalRecord record = evaluate(clip.clip, clip.phrase, model, identity, 10, 1);
    CHECK(record.trials == 10);
    CHECK(record.success_rate == 1.0);
    CHECK(record.mean_edit_distance == 0.0);
    for (const std::string& d : record.decodes) CHECK(d == clip.phrase.text);
  }
  SUBCASE("a clean clip is no adversarial example") {
    const TargetPhrase other = make_target("cba", alphabet);
    REQUIRE(other.text != clip.phrase.text);
    const EvalRecord record = evaluate(clip.clip, other, model, identity, 10, 1);
    CHECK(record.success_rate == 0.0);
    CHECK(record.mean_edit_distance > 0.0);
  }
  SUBCASE("reports are reproducible and job-count independent") {
    ChannelConfig noisy = identity;
    noisy.noise_sigma = 0.02;
    noisy.gain_jitter_db = 3.0;
    const EvalRecord a = evaluate(clip.clip, clip.phrase, model, noisy, 8, 42);
    set_jobs(1);
    const EvalRecord b = evaluate(clip.clip, clip.phrase, model, noisy, 8, 42);
    set_jobs(4);
    const EvalRecord c = evaluate(clip.clip, clip.phrase, model, noisy, 8, 42);
    set_jobs(0);
    CHECK(a.decodes == b.decodes);
    CHECK(a.decodes == c.decodes);
    CHECK(a.success_rate == c.success_rate);
  }
  SUBCASE("trials must be positive") {
    CHECK_THROWS_AS(evaluate(clip.clip, clip.phrase, model, identity, 0, 1), Error);
  }
}
