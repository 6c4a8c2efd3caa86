// Copyright 2026 The QCT Authors
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

#ifndef QCT_QCT_HPP
#define QCT_QCT_HPP

#include "qct/adversary.hpp"
#include "qct/analysis.hpp"
#include "qct/bell.hpp"
#include "qct/error.hpp"
#include "qct/format.hpp"
#include "qct/matching.hpp"
#include "qct/protocol.hpp"
#include "qct/report.hpp"
#include "qct/rng.hpp"
#include "qct/statevector.hpp"
#include "qct/stats.hpp"
#include "qct/transcript_io.hpp"
#include "qct/verify.hpp"

#endif
