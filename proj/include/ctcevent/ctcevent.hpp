/* Copyright 2026 The ctcevent Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef CTCEVENT_CTCEVENT_HPP_
#define CTCEVENT_CTCEVENT_HPP_

#include "ctcevent/baselines.hpp"
#include "ctcevent/core.hpp"
#include "ctcevent/ctc.hpp"
#include "ctcevent/decode.hpp"
#include "ctcevent/eval.hpp"
#include "ctcevent/logmath.hpp"
#include "ctcevent/sweep.hpp"
#include "ctcevent/synthetic.hpp"
#include "ctcevent/windowing.hpp"

#endif  // CTCEVENT_CTCEVENT_HPP_
