// Copyright 2026 The Noisy Choice Authors
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


#pragma once

#include "noisy_choice/accuracy.hpp"
#include "noisy_choice/analysis.hpp"
#include "noisy_choice/boolean_function.hpp"
#include "noisy_choice/corpus.hpp"
#include "noisy_choice/dp_memo.hpp"
#include "noisy_choice/error.hpp"
#include "noisy_choice/families.hpp"
#include "noisy_choice/fourier.hpp"
#include "noisy_choice/montecarlo.hpp"
#include "noisy_choice/noise.hpp"
#include "noisy_choice/privacy_audit.hpp"
#include "noisy_choice/records.hpp"
#include "noisy_choice/rng.hpp"
#include "noisy_choice/table_format.hpp"
#include "noisy_choice/verify.hpp"
