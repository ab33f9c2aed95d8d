// Copyright 2026 The lenswrt Authors
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

// Umbrella header.

#pragma once

#include "lenswrt/analysis.hpp"
#include "lenswrt/cyclotomic.hpp"
#include "lenswrt/errors.hpp"
#include "lenswrt/exact_linalg.hpp"
#include "lenswrt/gauss.hpp"
#include "lenswrt/laurent.hpp"
#include "lenswrt/modular.hpp"
#include "lenswrt/number_theory.hpp"
#include "lenswrt/numeric.hpp"
#include "lenswrt/serialization.hpp"
#include "lenswrt/skein.hpp"
#include "lenswrt/wrt.hpp"
