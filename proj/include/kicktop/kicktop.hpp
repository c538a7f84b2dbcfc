// Copyright 2026 The kicktop Project Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#pragma once

#define KICKTOP_VERSION "1.0.0"

#include "kicktop/spin_algebra.hpp"
#include "kicktop/floquet.hpp"
#include "kicktop/effective_model.hpp"
#include "kicktop/spectral_tools.hpp"
#include "kicktop/classical_dynamics.hpp"
#include "kicktop/parallel.hpp"
