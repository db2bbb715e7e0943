// Copyright 2026 The tsjoin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "tsj/candidates.hpp"
#include "tsj/corpus_io.hpp"
#include "tsj/error.hpp"
#include "tsj/filters.hpp"
#include "tsj/oracle.hpp"
#include "tsj/pipeline.hpp"
#include "tsj/setdist.hpp"
#include "tsj/stage.hpp"
#include "tsj/strdist.hpp"
#include "tsj/synth.hpp"
#include "tsj/textnorm.hpp"
