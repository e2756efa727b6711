// Copyright 2026 The sampthresh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SAMPTHRESH_SAMPTHRESH_H_
#define SAMPTHRESH_SAMPTHRESH_H_

#include "sampthresh/baselines.h"
#include "sampthresh/calibration.h"
#include "sampthresh/datasets.h"
#include "sampthresh/errors.h"
#include "sampthresh/harness.h"
#include "sampthresh/histogram.h"
#include "sampthresh/mechanism.h"
#include "sampthresh/oracles.h"
#include "sampthresh/quantiles.h"
#include "sampthresh/random.h"
#include "sampthresh/sampling.h"
#include "sampthresh/trie_hh.h"
#include "sampthresh/verify.h"

#endif  // SAMPTHRESH_SAMPTHRESH_H_
