// Copyright 2026 The qedge Authors
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

#ifndef QEDGE_QEDGE_HPP
#define QEDGE_QEDGE_HPP

#include "qedge/asymptotics.hpp"
#include "qedge/bignum.hpp"
#include "qedge/coefficients.hpp"
#include "qedge/combinatorics.hpp"
#include "qedge/discrimination.hpp"
#include "qedge/errors.hpp"
#include "qedge/gram.hpp"
#include "qedge/linalg.hpp"
#include "qedge/pade.hpp"
#include "qedge/parallel.hpp"
#include "qedge/range_spec.hpp"
#include "qedge/sdp.hpp"
#include "qedge/special_functions.hpp"
#include "qedge/verify.hpp"

#endif
