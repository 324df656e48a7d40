// Copyright 2026 The steerlab Authors
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

#ifndef STEERLAB_STEERLAB_HPP
#define STEERLAB_STEERLAB_HPP

#include "steerlab/core.hpp"
#include "steerlab/io.hpp"
#include "steerlab/monogamy.hpp"
#include "steerlab/qss.hpp"
#include "steerlab/random.hpp"
#include "steerlab/states.hpp"
#include "steerlab/steering.hpp"
#include "steerlab/verify.hpp"

#endif  // STEERLAB_STEERLAB_HPP
