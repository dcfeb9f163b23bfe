// Copyright 2026 The normfac Authors
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

// Everything except the command-line front end (normfac/cli.hpp).

#include "normfac/builders.hpp"
#include "normfac/density.hpp"
#include "normfac/factorization.hpp"
#include "normfac/gates.hpp"
#include "normfac/idempotent.hpp"
#include "normfac/io/matrix_file.hpp"
#include "normfac/io/report.hpp"
#include "normfac/numkit.hpp"
#include "normfac/roots.hpp"
