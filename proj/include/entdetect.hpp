// Copyright 2026 The entdetect Authors
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

#ifndef ENTDETECT_ENTDETECT_HPP
#define ENTDETECT_ENTDETECT_HPP

#include "entdetect/common.hpp"
#include "entdetect/linalg.hpp"
#include "entdetect/states.hpp"
#include "entdetect/transforms.hpp"
#include "entdetect/witness.hpp"
#include "entdetect/oracle.hpp"
#include "entdetect/detection.hpp"
#include "entdetect/montecarlo.hpp"
#include "entdetect/collective.hpp"
#include "entdetect/io.hpp"

#endif  // ENTDETECT_ENTDETECT_HPP
