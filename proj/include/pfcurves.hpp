/*
 * Copyright 2026 The pfcurves Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "pfcurves/rational.hpp"
#include "pfcurves/poly.hpp"
#include "pfcurves/matrix.hpp"
#include "pfcurves/pfaffian.hpp"
#include "pfcurves/random.hpp"
#include "pfcurves/quadric.hpp"
#include "pfcurves/interp.hpp"
#include "pfcurves/quadric_fibre.hpp"
#include "pfcurves/moduli.hpp"
#include "pfcurves/experiments.hpp"
